//! Order operations on every carrier: closures, bounds, cuts, directedness.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::carrier::{Carrier, ChainSpan, ElementRef, OmegaPoset};
use crate::error::{Error, Result};
use crate::finite::{bits, submasks_by_size, FinitePoset, Mask};
use crate::setexpr::SetExpr;

/// What `A^δ` is when `A` has no upper bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeltaConvention {
    /// `(A^↑)^↓` taken literally: the whole carrier.
    #[default]
    StandardCut,
    /// The empty set.
    EmptyCut,
}

impl DeltaConvention {
    pub const BOTH: [DeltaConvention; 2] = [DeltaConvention::StandardCut, DeltaConvention::EmptyCut];

    pub fn as_str(self) -> &'static str {
        match self {
            DeltaConvention::StandardCut => "standard",
            DeltaConvention::EmptyCut => "empty",
        }
    }
}

impl fmt::Display for DeltaConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn leq(carrier: &Carrier, x: ElementRef, y: ElementRef) -> Result<bool> {
    carrier.leq(x, y)
}

/// `↑x`.
pub fn principal_up(carrier: &Carrier, x: ElementRef) -> SetExpr {
    match (carrier, x) {
        (Carrier::Finite(p), ElementRef::Named(i)) => SetExpr::from_mask(p.up(i)),
        (Carrier::OmegaGlued(o), ElementRef::Named(f)) => {
            SetExpr::from_parts(o.finite_part().up(f), [], o.rise(f))
        }
        (Carrier::OmegaGlued(o), ElementRef::Indexed(i)) => {
            SetExpr::from_parts(o.above_index(i), [], Some(i))
        }
        _ => SetExpr::point(x),
    }
}

/// `↓x`.
pub fn principal_down(carrier: &Carrier, x: ElementRef) -> SetExpr {
    match (carrier, x) {
        (Carrier::Finite(p), ElementRef::Named(i)) => SetExpr::from_mask(p.down(i)),
        (Carrier::OmegaGlued(o), ElementRef::Named(f)) => span_set(o.finite_part().down(f), o.span(f)),
        (Carrier::OmegaGlued(o), ElementRef::Indexed(i)) => {
            SetExpr::from_parts(o.below_index(i), 0..=i, None)
        }
        _ => SetExpr::point(x),
    }
}

fn span_set(named: Mask, span: ChainSpan) -> SetExpr {
    match span {
        ChainSpan::Empty => SetExpr::from_mask(named),
        ChainSpan::Prefix(k) => SetExpr::from_parts(named, 0..=k, None),
        ChainSpan::All => SetExpr::from_parts(named, [], Some(0)),
    }
}

/// Smallest chain index in `a`, if any.
fn min_index(a: &SetExpr) -> Option<usize> {
    match (a.indexed().iter().next(), a.tail()) {
        (Some(&i), _) => Some(i),
        (None, t) => t,
    }
}

pub fn up_closure(carrier: &Carrier, a: &SetExpr) -> Result<SetExpr> {
    a.validate(carrier)?;
    Ok(match carrier {
        Carrier::Finite(p) => SetExpr::from_mask(p.up_closure(a.named_mask())),
        Carrier::CountableAntichain => a.clone(),
        Carrier::OmegaGlued(o) => {
            let fin = o.finite_part();
            let m = min_index(a);
            let mut named = fin.up_closure(a.named_mask());
            if let Some(m) = m {
                named |= o.above_index(m);
            }
            let rises = bits(a.named_mask()).filter_map(|f| o.rise(f));
            let tail = m.into_iter().chain(rises).min();
            SetExpr::from_parts(named, [], tail)
        }
    })
}

pub fn down_closure(carrier: &Carrier, a: &SetExpr) -> Result<SetExpr> {
    a.validate(carrier)?;
    Ok(match carrier {
        Carrier::Finite(p) => SetExpr::from_mask(p.down_closure(a.named_mask())),
        Carrier::CountableAntichain => a.clone(),
        Carrier::OmegaGlued(o) => {
            let fin = o.finite_part();
            let mut named = fin.down_closure(a.named_mask());
            let mut span = ChainSpan::Empty;
            if a.has_tail() {
                named |= o.below_chain();
                span = ChainSpan::All;
            } else if let Some(&top) = a.indexed().iter().next_back() {
                named |= o.below_index(top);
                span = ChainSpan::Prefix(top);
            }
            for f in bits(a.named_mask()) {
                span = span.max(o.span(f));
            }
            span_set(named, span)
        }
    })
}

pub fn is_upper(carrier: &Carrier, a: &SetExpr) -> Result<bool> {
    Ok(up_closure(carrier, a)? == *a)
}

pub fn is_lower(carrier: &Carrier, a: &SetExpr) -> Result<bool> {
    Ok(down_closure(carrier, a)? == *a)
}

/// `A^↑`.
pub fn upper_bounds(carrier: &Carrier, a: &SetExpr) -> Result<SetExpr> {
    a.validate(carrier)?;
    Ok(match carrier {
        Carrier::Finite(p) => SetExpr::from_mask(p.upper_bounds(a.named_mask())),
        Carrier::CountableAntichain => antichain_bounds(a),
        Carrier::OmegaGlued(o) => {
            let mut acc = SetExpr::whole(carrier);
            for x in a.points_upto(0) {
                if matches!(x, ElementRef::Indexed(i) if a.tail() == Some(i)) {
                    continue;
                }
                acc = acc.intersection(&principal_up(carrier, x));
            }
            if a.has_tail() {
                // Only points above every chain point bound a tail.
                acc = acc.intersection(&SetExpr::from_mask(o.above_chain()));
            }
            acc
        }
    })
}

/// `A^↓`.
pub fn lower_bounds(carrier: &Carrier, a: &SetExpr) -> Result<SetExpr> {
    a.validate(carrier)?;
    Ok(match carrier {
        Carrier::Finite(p) => SetExpr::from_mask(p.lower_bounds(a.named_mask())),
        Carrier::CountableAntichain => antichain_bounds(a),
        Carrier::OmegaGlued(_) => {
            // ↓c_i grows with i, so a tail from t contributes ↓c_t.
            let mut acc = SetExpr::whole(carrier);
            for x in a.points_upto(0) {
                acc = acc.intersection(&principal_down(carrier, x));
            }
            acc
        }
    })
}

fn antichain_bounds(a: &SetExpr) -> SetExpr {
    match a.len() {
        Some(0) => SetExpr::tail_from(0),
        Some(1) => a.clone(),
        _ => SetExpr::empty(),
    }
}

/// `A^δ`.
pub fn cut(carrier: &Carrier, a: &SetExpr, convention: DeltaConvention) -> Result<SetExpr> {
    let ub = upper_bounds(carrier, a)?;
    if ub.is_empty() && convention == DeltaConvention::EmptyCut {
        return Ok(SetExpr::empty());
    }
    lower_bounds(carrier, &ub)
}

pub fn is_directed(carrier: &Carrier, a: &SetExpr) -> Result<bool> {
    a.validate(carrier)?;
    if a.is_empty() {
        return Ok(false);
    }
    Ok(match carrier {
        Carrier::Finite(p) => p.is_directed(a.named_mask()),
        Carrier::CountableAntichain => a.len() == Some(1),
        Carrier::OmegaGlued(o) => match a.finite_points() {
            Some(pts) => pts.iter().all(|&x| {
                pts.iter()
                    .all(|&y| pts.iter().any(|&z| o.leq(x, z) && o.leq(y, z)))
            }),
            None => omega_tail_directed(o, a),
        },
    })
}

/// Directedness of a set containing a chain tail. Chain points are bounded by
/// later tail points; a named `f` needs a tail point above it or a point of
/// the set above `f` and the whole chain; two named points need a common
/// bound in the set.
fn omega_tail_directed(o: &OmegaPoset, a: &SetExpr) -> bool {
    let fin = o.finite_part();
    let named = a.named_mask();
    let top = named & o.above_chain();
    let with_chain = bits(named).all(|f| o.rise(f).is_some() || fin.up(f) & top != 0);
    with_chain
        && bits(named).all(|f| {
            bits(named).all(|g| {
                (o.rise(f).is_some() && o.rise(g).is_some()) || fin.up(f) & fin.up(g) & named != 0
            })
        })
}

/// Greatest element of `a`, if any.
pub fn greatest(carrier: &Carrier, a: &SetExpr) -> Result<Option<ElementRef>> {
    a.validate(carrier)?;
    if let Some(pts) = a.finite_points() {
        return Ok(pts
            .iter()
            .copied()
            .find(|&x| pts.iter().all(|&y| carrier.leq(y, x).unwrap_or(false))));
    }
    // A greatest element of an infinite set lies above the whole chain.
    Ok(match carrier {
        Carrier::OmegaGlued(o) => {
            let named = a.named_mask();
            bits(named & o.above_chain())
                .find(|&f| bits(named).all(|g| o.finite_part().leq(g, f)))
                .map(ElementRef::Named)
        }
        _ => None,
    })
}

/// Maximal points of `a` in canonical order (named points first, then
/// indices). Chain points of a set with a tail are never maximal.
pub fn maximal_points(carrier: &Carrier, a: &SetExpr) -> Result<Vec<ElementRef>> {
    a.validate(carrier)?;
    if let Some(pts) = a.finite_points() {
        return Ok(pts
            .iter()
            .copied()
            .filter(|&x| pts.iter().all(|&y| y == x || !carrier.leq(x, y).unwrap_or(false)))
            .collect());
    }
    Ok(match carrier {
        Carrier::OmegaGlued(o) => {
            let named = a.named_mask();
            bits(named)
                .filter(|&f| o.rise(f).is_none())
                .filter(|&f| bits(named).all(|g| g == f || !o.finite_part().leq(f, g)))
                .map(ElementRef::Named)
                .collect()
        }
        // Every point of the antichain is maximal; list the explicit ones.
        _ => a.points_upto(a.param_bound()),
    })
}

/// `G ⊆ ↑G1 ∩ ↑G2` has a solution in `fam` for every pair.
pub fn is_directed_family(carrier: &Carrier, fam: &[SetExpr]) -> Result<bool> {
    if fam.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let ups = fam
        .iter()
        .map(|f| up_closure(carrier, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(ups.iter().all(|u1| {
        ups.iter().all(|u2| {
            let both = u1.intersection(u2);
            fam.iter().any(|g| g.is_subset(&both))
        })
    }))
}

/// Directedness of a family of finite subsets of a finite poset.
pub fn is_directed_mask_family(p: &FinitePoset, fam: &[Mask]) -> bool {
    let ups: Vec<Mask> = fam.iter().map(|&f| p.up_closure(f)).collect();
    !fam.is_empty()
        && ups
            .iter()
            .all(|&a| ups.iter().all(|&b| fam.iter().any(|&g| g & !(a & b) == 0)))
}

/// Largest union a Rudin search will scan exhaustively.
pub const RUDIN_LIMIT: usize = 20;

/// A directed `D ⊆ ∪fam` meeting every member, smallest first.
pub fn rudin_witness(carrier: &Carrier, fam: &[SetExpr]) -> Result<SetExpr> {
    let p = carrier
        .as_finite()
        .ok_or_else(|| Error::UnsupportedComb(String::from("Rudin search needs a finite carrier")))?;
    if fam.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let masks: Vec<Mask> = fam.iter().map(|f| f.named_mask()).collect();
    for f in fam {
        f.validate(carrier)?;
    }
    if masks.contains(&0) || !is_directed_mask_family(p, &masks) {
        return Err(Error::NotDirectedFamily);
    }
    rudin_mask(p, &masks).map(SetExpr::from_mask)
}

/// Mask form of [`rudin_witness`]; the family is assumed directed.
pub fn rudin_mask(p: &FinitePoset, fam: &[Mask]) -> Result<Mask> {
    let union = fam.iter().fold(0, |a, &f| a | f);
    let size = union.count_ones() as usize;
    if size > RUDIN_LIMIT {
        return Err(Error::TooLarge { size, limit: RUDIN_LIMIT });
    }
    submasks_by_size(union)
        .into_iter()
        .find(|&d| fam.iter().all(|&f| f & d != 0) && p.is_directed(d))
        .ok_or_else(|| Error::InternalFailure(String::from("no directed set meets every member")))
}

/// The finite poset on the named points and `c_0, ..., c_{N-1}`, with the
/// order restricted from the glued carrier. Chain points are named `@i` and
/// follow the named points.
pub fn truncate(carrier: &Carrier, n: usize) -> Result<FinitePoset> {
    let o = match carrier {
        Carrier::OmegaGlued(o) => o,
        _ => return Err(Error::UnsupportedComb(String::from("truncation needs a glued chain"))),
    };
    if n == 0 {
        return Err(Error::OutOfRange(String::from("truncation length must be at least 1")));
    }
    let fin = o.finite_part();
    let mut names: Vec<String> = fin.names().to_vec();
    names.extend((0..n).map(|i| format!("@{i}")));
    let pts: Vec<ElementRef> = (0..fin.len())
        .map(ElementRef::Named)
        .chain((0..n).map(ElementRef::Indexed))
        .collect();
    let up = pts
        .iter()
        .map(|&x| {
            pts.iter()
                .enumerate()
                .filter(|&(_, &y)| o.leq(x, y))
                .fold(0, |acc, (k, _)| acc | 1 << k)
        })
        .collect();
    FinitePoset::from_up_sets(names, up)
}

/// Index of a point in [`truncate`]`(carrier, n)`, if it survives.
pub fn truncated_index(carrier: &Carrier, x: ElementRef, n: usize) -> Option<usize> {
    let nf = carrier.named_len();
    match x {
        ElementRef::Named(i) => Some(i),
        ElementRef::Indexed(i) if i < n => Some(nf + i),
        ElementRef::Indexed(_) => None,
    }
}

/// The trace of `a` on [`truncate`]`(carrier, n)`.
pub fn truncate_set(carrier: &Carrier, a: &SetExpr, n: usize) -> Mask {
    let nf = carrier.named_len();
    (0..n)
        .filter(|&i| a.contains_index(i))
        .fold(a.named_mask(), |acc, i| acc | 1 << (nf + i))
}
