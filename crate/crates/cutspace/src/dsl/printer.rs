use std::fmt::Write;

use super::{AttachKind, DslDocument, Item, PointLit, SetLit, SpaceDef, StrandDef};

fn point(p: &PointLit) -> String {
    match p {
        PointLit::Name(n) => n.clone(),
        PointLit::Index(i) => format!("@{i}"),
    }
}

fn set(s: &SetLit) -> String {
    let mut parts: Vec<String> = s.points.iter().map(point).collect();
    if let Some(t) = s.tail {
        parts.push(format!("@{t}.."));
    }
    format!("{{{}}}", parts.join(", "))
}

fn order(pairs: &[(String, String)]) -> String {
    pairs.iter().map(|(a, b)| format!("{a} < {b}")).collect::<Vec<_>>().join(", ")
}

fn attach(k: AttachKind) -> String {
    match k {
        AttachKind::AboveAll => "aboveAll".into(),
        AttachKind::AbovePrefix(n) => format!("abovePrefix({n})"),
        AttachKind::BelowIndex(n) => format!("belowIndex({n})"),
        AttachKind::Incomparable => "incomparable".into(),
    }
}

/// Canonical text of a document; parsing it gives the same document back.
pub fn print(doc: &DslDocument) -> String {
    let mut out = String::new();
    for item in &doc.items {
        match item {
            Item::Poset { name, elements, order: pairs } => {
                write!(out, "poset {name} {{ elements: {};", elements.join(", ")).unwrap();
                if !pairs.is_empty() {
                    write!(out, " order: {};", order(pairs)).unwrap();
                }
                out.push_str(" }");
            }
            Item::OmegaPoset { name, finite, order: pairs, attach: at } => {
                write!(out, "omegaposet {name} {{ finite: {};", finite.join(", ")).unwrap();
                if !pairs.is_empty() {
                    write!(out, " order: {};", order(pairs)).unwrap();
                }
                for (n, k) in at {
                    write!(out, " attach: {n} {};", attach(*k)).unwrap();
                }
                out.push_str(" }");
            }
            Item::Antichain { name } => write!(out, "antichain {name} omega;").unwrap(),
            Item::Space { name, def } => {
                let body = match def {
                    SpaceDef::Alexandroff(c) => format!("alexandroff({c});"),
                    SpaceDef::Upper(c) => format!("upper({c});"),
                    SpaceDef::WeakScott(c) => format!("weakscott({c});"),
                    SpaceDef::Scott(c) => format!("scott({c});"),
                    SpaceDef::Cofinite(c) => format!("cofinite({c});"),
                    SpaceDef::Si2(s) => format!("si2({s});"),
                    SpaceDef::Explicit { carrier, opens } => format!(
                        "explicit({carrier}) {{ opens: {}; }}",
                        opens.iter().map(set).collect::<Vec<_>>().join(", ")
                    ),
                };
                write!(out, "space {name} = {body}").unwrap();
            }
            Item::Net { name, over, strands } => {
                let s: Vec<String> = strands
                    .iter()
                    .map(|s| match s {
                        StrandDef::Constant(p) => format!("constant({})", point(p)),
                        StrandDef::ChainCofinal(k) => format!("chainCofinal({k})"),
                    })
                    .collect();
                write!(out, "net {name} over {over} {{ strands: {}; }}", s.join(", ")).unwrap();
            }
            Item::Check { kind, target, args } => {
                write!(out, "check {} {target}", kind.keyword()).unwrap();
                for a in args {
                    write!(out, " {}", set(a)).unwrap();
                }
                out.push(';');
            }
            Item::Convention(c) => write!(out, "convention {};", c.keyword()).unwrap(),
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn round_trip() {
        let text = "convention both;\n\
            poset P { elements: a, b; order: a < b; }\n\
            omegaposet W { finite: top, z; order: z < top; attach: top aboveAll; attach: z incomparable; }\n\
            antichain A omega;\n\
            space S = alexandroff(W);\n\
            space T = explicit(P) { opens: {}, {b}, {a, b}; }\n\
            space C = cofinite(A);\n\
            space D = si2(S);\n\
            net N over S { strands: chainCofinal(0), constant(z); }\n\
            check waybelow S {z, @0} {@3..};\n\
            check gd-limits N;\n";
        let doc = parse(text).unwrap();
        let printed = print(&doc);
        assert_eq!(printed, text);
        assert_eq!(parse(&printed).unwrap(), doc);
    }
}
