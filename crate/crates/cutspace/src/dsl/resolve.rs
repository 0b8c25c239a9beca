use std::collections::BTreeMap;

use cutspace_core::convergence::{NetPresentation, Strand};
use cutspace_core::{
    Attachment, Carrier, DeltaConvention, ElementRef, Error, FinitePoset, OmegaPoset, SetExpr, Space, Topology,
    TopologySpec,
};

use super::{
    AttachKind, CheckKind, ConventionSetting, DslDocument, DslError, Item, PointLit, Pos, SetLit, SpaceDef,
    StrandDef, Target,
};

/// A space declaration; the cut convention is supplied per check.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceDecl {
    pub carrier_name: String,
    pub carrier: Carrier,
    pub topology: Topology,
}

impl SpaceDecl {
    pub fn space(&self, convention: DeltaConvention) -> cutspace_core::Result<Space> {
        Space::new(self.carrier.clone(), self.topology.clone(), convention)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedCheck {
    pub kind: CheckKind,
    pub target: String,
    pub args: Vec<SetExpr>,
    pub pos: Pos,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResolvedDocument {
    pub convention: ConventionSetting,
    pub carriers: BTreeMap<String, Carrier>,
    pub spaces: BTreeMap<String, SpaceDecl>,
    /// Net name to the space it runs in and its presentation.
    pub nets: BTreeMap<String, (String, NetPresentation)>,
    pub checks: Vec<ResolvedCheck>,
}

fn validation(pos: Pos) -> impl Fn(Error) -> DslError {
    move |source| DslError::Validation { pos, source }
}

fn index_names(names: &[String], pairs: &[(String, String)], pos: Pos) -> Result<Vec<(usize, usize)>, DslError> {
    let idx = |n: &String| {
        names
            .iter()
            .position(|m| m == n)
            .ok_or_else(|| DslError::Resolution { pos, name: n.clone() })
    };
    pairs.iter().map(|(a, b)| Ok((idx(a)?, idx(b)?))).collect()
}

fn point(carrier: &Carrier, p: &PointLit, pos: Pos) -> Result<ElementRef, DslError> {
    match p {
        PointLit::Name(n) => carrier.element(n).map_err(|_| DslError::Resolution { pos, name: n.clone() }),
        PointLit::Index(i) => {
            let x = ElementRef::Indexed(*i);
            carrier.validate(x).map_err(validation(pos))?;
            Ok(x)
        }
    }
}

pub(crate) fn set(carrier: &Carrier, s: &SetLit, pos: Pos) -> Result<SetExpr, DslError> {
    let mut out = SetExpr::points(s.points.iter().map(|p| point(carrier, p, pos)).collect::<Result<Vec<_>, _>>()?);
    if let Some(t) = s.tail {
        out = out.union(&SetExpr::tail_from(t));
    }
    out.validate(carrier).map_err(validation(pos))?;
    Ok(out)
}

fn attachment(k: AttachKind) -> Attachment {
    match k {
        AttachKind::AboveAll => Attachment::AboveAll,
        AttachKind::AbovePrefix(n) => Attachment::AbovePrefix(n),
        AttachKind::BelowIndex(n) => Attachment::BelowIndex(n),
        AttachKind::Incomparable => Attachment::Incomparable,
    }
}

/// Resolves names, builds carriers, spaces and nets, and validates them.
pub fn resolve(doc: &DslDocument) -> Result<ResolvedDocument, DslError> {
    let mut out = ResolvedDocument::default();
    let mut declared: Vec<String> = Vec::new();
    for (item, &pos) in doc.items.iter().zip(&doc.positions) {
        let mut declare = |name: &String| {
            if declared.contains(name) {
                Err(DslError::Validation {
                    pos,
                    source: Error::InvalidSet(format!("`{name}` is declared twice")),
                })
            } else {
                declared.push(name.clone());
                Ok(())
            }
        };
        match item {
            Item::Poset { name, elements, order } => {
                declare(name)?;
                let pairs = index_names(elements, order, pos)?;
                let p = FinitePoset::new(elements.clone(), &pairs).map_err(validation(pos))?;
                out.carriers.insert(name.clone(), Carrier::Finite(p));
            }
            Item::OmegaPoset { name, finite, order, attach } => {
                declare(name)?;
                let pairs = index_names(finite, order, pos)?;
                let mut at = vec![Attachment::Incomparable; finite.len()];
                for (n, k) in attach {
                    let i = finite
                        .iter()
                        .position(|m| m == n)
                        .ok_or_else(|| DslError::Resolution { pos, name: n.clone() })?;
                    at[i] = attachment(*k);
                }
                let o = OmegaPoset::new(finite.clone(), &pairs, at).map_err(validation(pos))?;
                out.carriers.insert(name.clone(), Carrier::OmegaGlued(o));
            }
            Item::Antichain { name } => {
                declare(name)?;
                out.carriers.insert(name.clone(), Carrier::CountableAntichain);
            }
            Item::Space { name, def } => {
                declare(name)?;
                let carrier_of = |c: &String| {
                    out.carriers.get(c).cloned().ok_or_else(|| DslError::Resolution { pos, name: c.clone() })
                };
                let decl = match def {
                    SpaceDef::Si2(s) => {
                        let base =
                            out.spaces.get(s).ok_or_else(|| DslError::Resolution { pos, name: s.clone() })?;
                        SpaceDecl { topology: Topology::si2(base.topology.clone()), ..base.clone() }
                    }
                    SpaceDef::Explicit { carrier, opens } => {
                        let c = carrier_of(carrier)?;
                        let masks = opens
                            .iter()
                            .map(|o| set(&c, o, pos).map(|s| s.named_mask()))
                            .collect::<Result<Vec<_>, _>>()?;
                        SpaceDecl {
                            carrier_name: carrier.clone(),
                            carrier: c,
                            topology: TopologySpec::Explicit(masks).into(),
                        }
                    }
                    SpaceDef::Alexandroff(c)
                    | SpaceDef::Upper(c)
                    | SpaceDef::WeakScott(c)
                    | SpaceDef::Scott(c)
                    | SpaceDef::Cofinite(c) => {
                        let spec = match def {
                            SpaceDef::Alexandroff(_) => TopologySpec::Alexandroff,
                            SpaceDef::Upper(_) => TopologySpec::Upper,
                            SpaceDef::WeakScott(_) => TopologySpec::WeakScott,
                            SpaceDef::Scott(_) => TopologySpec::Scott,
                            _ => TopologySpec::Cofinite,
                        };
                        SpaceDecl { carrier_name: c.clone(), carrier: carrier_of(c)?, topology: spec.into() }
                    }
                };
                decl.space(DeltaConvention::StandardCut).map_err(validation(pos))?;
                out.spaces.insert(name.clone(), decl);
            }
            Item::Net { name, over, strands } => {
                declare(name)?;
                let decl = out.spaces.get(over).ok_or_else(|| DslError::Resolution { pos, name: over.clone() })?;
                let strands = strands
                    .iter()
                    .map(|s| match s {
                        StrandDef::ChainCofinal(k) => Ok(Strand::ChainCofinal(*k)),
                        StrandDef::Constant(p) => Ok(Strand::Constant(point(&decl.carrier, p, pos)?)),
                    })
                    .collect::<Result<Vec<_>, DslError>>()?;
                let net = NetPresentation::new(&decl.carrier, strands).map_err(validation(pos))?;
                out.nets.insert(name.clone(), (over.clone(), net));
            }
            Item::Check { kind, target, args } => {
                let carrier = match kind.target() {
                    Target::Space => out.spaces.get(target).map(|d| &d.carrier),
                    Target::Net => out.nets.get(target).map(|(s, _)| &out.spaces[s].carrier),
                }
                .ok_or_else(|| DslError::Resolution { pos, name: target.clone() })?;
                let args = args.iter().map(|a| set(carrier, a, pos)).collect::<Result<Vec<_>, _>>()?;
                out.checks.push(ResolvedCheck { kind: *kind, target: target.clone(), args, pos });
            }
            Item::Convention(c) => out.convention = *c,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn resolve_text(t: &str) -> Result<ResolvedDocument, DslError> {
        resolve(&parse(t).unwrap())
    }

    #[test]
    fn glued_example_resolves() {
        let r = resolve_text(
            "omegaposet W { finite: top, z; order: z < top; attach: top aboveAll; }\n\
             space S = alexandroff(W);\n\
             net N over S { strands: chainCofinal(0), constant(z); }\n\
             check gd-limits N;",
        )
        .unwrap();
        let (space, net) = &r.nets["N"];
        assert_eq!(space, "S");
        assert_eq!(net.value(1), ElementRef::Named(1));
        assert_eq!(r.checks.len(), 1);
    }

    #[test]
    fn order_cycle_is_a_validation_error() {
        let err = resolve_text("poset P { elements: a, b; order: a < b, b < a; }").unwrap_err();
        assert!(matches!(err, DslError::Validation { source: Error::NotPartialOrder(_), .. }), "{err:?}");
    }

    #[test]
    fn dangling_names() {
        let err = resolve_text("space S = alexandroff(Q);").unwrap_err();
        assert_eq!(err, DslError::Resolution { pos: Pos { line: 1, col: 1 }, name: "Q".into() });
        let err = resolve_text("poset P { elements: a; }\nspace S = alexandroff(P);\ncheck waybelow S {b} {a};")
            .unwrap_err();
        assert_eq!(err, DslError::Resolution { pos: Pos { line: 3, col: 1 }, name: "b".into() });
    }

    #[test]
    fn explicit_family_validated() {
        let err = resolve_text("poset P { elements: a, b; }\nspace T = explicit(P) { opens: {}, {a}; }").unwrap_err();
        assert!(matches!(err, DslError::Validation { .. }));
    }

    #[test]
    fn empty_document_resolves() {
        assert_eq!(resolve_text("").unwrap(), ResolvedDocument::default());
    }
}
