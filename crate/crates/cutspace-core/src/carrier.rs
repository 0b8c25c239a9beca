//! Carriers: finite posets, an ω-chain glued to a finite poset, and the
//! countable antichain.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::finite::{bits, close_transitively, FinitePoset, Mask};

/// A point of a carrier.
///
/// `Named(i)` is the `i`-th point of the finite part; `Indexed(i)` is the
/// chain point `c_i` of an ω-glued carrier or the point `x_i` of the countable
/// antichain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementRef {
    Named(usize),
    Indexed(usize),
}

/// How a point of the finite part sits relative to the chain `c_0 < c_1 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Attachment {
    /// Above every chain point.
    AboveAll,
    /// Above `c_0, ..., c_k`.
    AbovePrefix(usize),
    /// Below `c_k, c_{k+1}, ...`.
    BelowIndex(usize),
    Incomparable,
}

/// Down-set of chain indices lying below a finite point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChainSpan {
    Empty,
    /// Indices `0..=k`.
    Prefix(usize),
    All,
}

impl ChainSpan {
    pub fn contains(self, i: usize) -> bool {
        match self {
            ChainSpan::Empty => false,
            ChainSpan::Prefix(k) => i <= k,
            ChainSpan::All => true,
        }
    }
}

/// A finite poset with one ω-chain glued in.
///
/// The stored finite order already contains every relation induced through
/// the chain, and `span`/`rise` are closed under it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaPoset {
    finite: FinitePoset,
    attachments: Vec<Attachment>,
    /// `span[f]`: chain indices `i` with `c_i <= f`.
    span: Vec<ChainSpan>,
    /// `rise[f] = Some(k)`: `f <= c_i` exactly for `i >= k`.
    rise: Vec<Option<usize>>,
}

impl OmegaPoset {
    /// `pairs` are order relations among the finite names; `attachments` has
    /// one entry per name.
    pub fn new(
        names: Vec<String>,
        pairs: &[(usize, usize)],
        attachments: Vec<Attachment>,
    ) -> Result<Self> {
        let n = names.len();
        if attachments.len() != n {
            return Err(Error::NotPartialOrder(String::from(
                "one attachment per finite point is required",
            )));
        }
        // Validate names/indices through the plain constructor first.
        FinitePoset::new(names.clone(), pairs)?;
        let mut up: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
        for &(a, b) in pairs {
            up[a] |= 1 << b;
        }
        let mut span: Vec<ChainSpan> = attachments
            .iter()
            .map(|a| match a {
                Attachment::AboveAll => ChainSpan::All,
                Attachment::AbovePrefix(k) => ChainSpan::Prefix(*k),
                _ => ChainSpan::Empty,
            })
            .collect();
        let mut rise: Vec<Option<usize>> = attachments
            .iter()
            .map(|a| match a {
                Attachment::BelowIndex(k) => Some(*k),
                _ => None,
            })
            .collect();
        loop {
            close_transitively(&mut up);
            let before = (up.clone(), span.clone(), rise.clone());
            for f in 0..n {
                for g in bits(up[f]) {
                    if span[f] > span[g] {
                        span[g] = span[f];
                    }
                    rise[f] = min_rise(rise[f], rise[g]);
                }
            }
            for f in 0..n {
                if let Some(k) = rise[f] {
                    for g in 0..n {
                        let reaches = match span[g] {
                            ChainSpan::All => true,
                            ChainSpan::Prefix(p) => p >= k,
                            ChainSpan::Empty => false,
                        };
                        if reaches {
                            up[f] |= 1 << g;
                        }
                    }
                }
            }
            if (up.clone(), span.clone(), rise.clone()) == before {
                break;
            }
        }
        for f in 0..n {
            if let Some(k) = rise[f] {
                let cyclic = match span[f] {
                    ChainSpan::All => true,
                    ChainSpan::Prefix(p) => p >= k,
                    ChainSpan::Empty => false,
                };
                if cyclic {
                    return Err(Error::NotPartialOrder(format!(
                        "`{}` would coincide with a chain point",
                        names[f]
                    )));
                }
            }
        }
        let finite = FinitePoset::from_up_sets(names, up)?;
        Ok(Self { finite, attachments, span, rise })
    }

    /// The induced order on the finite part.
    pub fn finite_part(&self) -> &FinitePoset {
        &self.finite
    }

    pub fn attachments(&self) -> &[Attachment] {
        &self.attachments
    }

    pub fn span(&self, f: usize) -> ChainSpan {
        self.span[f]
    }

    pub fn rise(&self, f: usize) -> Option<usize> {
        self.rise[f]
    }

    /// Finite points above the whole chain.
    pub fn above_chain(&self) -> Mask {
        (0..self.finite.len())
            .filter(|&f| self.span[f] == ChainSpan::All)
            .fold(0, |acc, f| acc | 1 << f)
    }

    /// Finite points with a chain point above them.
    pub fn below_chain(&self) -> Mask {
        (0..self.finite.len())
            .filter(|&f| self.rise[f].is_some())
            .fold(0, |acc, f| acc | 1 << f)
    }

    /// Finite points whose span contains `c_i`.
    pub fn above_index(&self, i: usize) -> Mask {
        (0..self.finite.len())
            .filter(|&f| self.span[f].contains(i))
            .fold(0, |acc, f| acc | 1 << f)
    }

    /// Finite points below `c_i`.
    pub fn below_index(&self, i: usize) -> Mask {
        (0..self.finite.len())
            .filter(|&f| self.rise[f].is_some_and(|k| k <= i))
            .fold(0, |acc, f| acc | 1 << f)
    }

    /// One more than the largest chain index mentioned by the order.
    pub fn param_bound(&self) -> usize {
        let s = self.span.iter().filter_map(|s| match s {
            ChainSpan::Prefix(k) => Some(*k + 1),
            _ => None,
        });
        let r = self.rise.iter().filter_map(|r| r.map(|k| k + 1));
        let a = self.attachments.iter().filter_map(|a| match a {
            Attachment::AbovePrefix(k) | Attachment::BelowIndex(k) => Some(*k + 1),
            _ => None,
        });
        s.chain(r).chain(a).max().unwrap_or(0)
    }

    pub fn leq(&self, x: ElementRef, y: ElementRef) -> bool {
        match (x, y) {
            (ElementRef::Named(f), ElementRef::Named(g)) => self.finite.leq(f, g),
            (ElementRef::Indexed(i), ElementRef::Indexed(j)) => i <= j,
            (ElementRef::Indexed(i), ElementRef::Named(g)) => self.span[g].contains(i),
            (ElementRef::Named(f), ElementRef::Indexed(j)) => self.rise[f].is_some_and(|k| k <= j),
        }
    }
}

fn min_rise(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// The universe of points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    Finite(FinitePoset),
    OmegaGlued(OmegaPoset),
    /// Countably many pairwise incomparable points `x_0, x_1, ...`.
    CountableAntichain,
}

impl Carrier {
    pub fn is_finite(&self) -> bool {
        matches!(self, Carrier::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&FinitePoset> {
        match self {
            Carrier::Finite(p) => Some(p),
            _ => None,
        }
    }

    /// Number of named points.
    pub fn named_len(&self) -> usize {
        match self {
            Carrier::Finite(p) => p.len(),
            Carrier::OmegaGlued(o) => o.finite_part().len(),
            Carrier::CountableAntichain => 0,
        }
    }

    pub fn has_indexed(&self) -> bool {
        !self.is_finite()
    }

    pub fn named(&self) -> Option<&FinitePoset> {
        match self {
            Carrier::Finite(p) => Some(p),
            Carrier::OmegaGlued(o) => Some(o.finite_part()),
            Carrier::CountableAntichain => None,
        }
    }

    /// Resolves a point name.
    pub fn element(&self, name: &str) -> Result<ElementRef> {
        self.named()
            .and_then(|p| p.index_of(name))
            .map(ElementRef::Named)
            .ok_or_else(|| Error::UnknownElement(String::from(name)))
    }

    pub fn validate(&self, x: ElementRef) -> Result<()> {
        match x {
            ElementRef::Named(i) if i < self.named_len() => Ok(()),
            ElementRef::Indexed(_) if self.has_indexed() => Ok(()),
            _ => Err(Error::UnknownElement(self.display(x).to_string_lossy())),
        }
    }

    /// One more than the largest chain index the carrier's order mentions.
    pub fn param_bound(&self) -> usize {
        match self {
            Carrier::OmegaGlued(o) => o.param_bound(),
            _ => 0,
        }
    }

    /// Truth of `x <= y`.
    pub fn leq(&self, x: ElementRef, y: ElementRef) -> Result<bool> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(match self {
            Carrier::Finite(p) => match (x, y) {
                (ElementRef::Named(i), ElementRef::Named(j)) => p.leq(i, j),
                _ => unreachable!(),
            },
            Carrier::OmegaGlued(o) => o.leq(x, y),
            Carrier::CountableAntichain => x == y,
        })
    }

    pub fn display(&self, x: ElementRef) -> PointName<'_> {
        PointName { carrier: self, point: x }
    }
}

/// Display adapter: finite names as written, indexed points as `@i`.
pub struct PointName<'a> {
    carrier: &'a Carrier,
    point: ElementRef,
}

impl PointName<'_> {
    fn to_string_lossy(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for PointName<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.point {
            ElementRef::Named(i) => match self.carrier.named() {
                Some(p) if i < p.len() => f.write_str(p.name(i)),
                _ => write!(f, "#{i}"),
            },
            ElementRef::Indexed(i) => write!(f, "@{i}"),
        }
    }
}
