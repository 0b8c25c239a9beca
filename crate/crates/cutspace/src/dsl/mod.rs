//! The description language: posets, glued carriers, spaces, nets and check
//! directives.
//!
//! ```text
//! # comment
//! convention both;
//! poset P { elements: a, b, c; order: a < b, a < c; }
//! omegaposet W { finite: top, z; order: z < top; attach: top aboveAll; attach: z incomparable; }
//! antichain A omega;
//! space S = alexandroff(W);
//! space T = explicit(P) { opens: {}, {b}, {a, b, c}; }
//! space D = si2(S);
//! net N over S { strands: chainCofinal(0), constant(z); }
//! check si2-quasicontinuous S;
//! check waybelow S {z, @0} {z};
//! check gd-limits N;
//! ```

mod lexer;
mod parser;
mod printer;
mod resolve;

pub use parser::parse;
pub use printer::print;
pub use resolve::{resolve, ResolvedCheck, ResolvedDocument, SpaceDecl};

use thiserror::Error;

/// Line and column, both from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum DslError {
    #[error("{}:{}: parse error: {msg}", pos.line, pos.col)]
    Parse { pos: Pos, msg: String },
    #[error("{}:{}: unresolved name `{name}`", pos.line, pos.col)]
    Resolution { pos: Pos, name: String },
    #[error("{}:{}: {source}", pos.line, pos.col)]
    Validation {
        pos: Pos,
        #[source]
        source: cutspace_core::Error,
    },
}

/// A parsed document. Equality ignores source positions.
#[derive(Clone, Debug, Default)]
pub struct DslDocument {
    pub items: Vec<Item>,
    /// Start of each item, parallel to `items`.
    pub positions: Vec<Pos>,
}

impl PartialEq for DslDocument {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

impl DslDocument {
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Poset { name: String, elements: Vec<String>, order: Vec<(String, String)> },
    OmegaPoset {
        name: String,
        finite: Vec<String>,
        order: Vec<(String, String)>,
        attach: Vec<(String, AttachKind)>,
    },
    Antichain { name: String },
    Space { name: String, def: SpaceDef },
    Net { name: String, over: String, strands: Vec<StrandDef> },
    Check { kind: CheckKind, target: String, args: Vec<SetLit> },
    Convention(ConventionSetting),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttachKind {
    AboveAll,
    AbovePrefix(usize),
    BelowIndex(usize),
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceDef {
    Alexandroff(String),
    Upper(String),
    WeakScott(String),
    Scott(String),
    Cofinite(String),
    Explicit { carrier: String, opens: Vec<SetLit> },
    Si2(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointLit {
    Name(String),
    Index(usize),
}

/// `{a, @3, @5..}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SetLit {
    pub points: Vec<PointLit>,
    pub tail: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrandDef {
    Constant(PointLit),
    ChainCofinal(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ConventionSetting {
    #[default]
    Standard,
    Empty,
    Both,
}

impl ConventionSetting {
    pub fn keyword(self) -> &'static str {
        match self {
            ConventionSetting::Standard => "standard",
            ConventionSetting::Empty => "empty",
            ConventionSetting::Both => "both",
        }
    }

    pub fn conventions(self) -> &'static [cutspace_core::DeltaConvention] {
        use cutspace_core::DeltaConvention::*;
        match self {
            ConventionSetting::Standard => &[StandardCut],
            ConventionSetting::Empty => &[EmptyCut],
            ConventionSetting::Both => &[StandardCut, EmptyCut],
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        [ConventionSetting::Standard, ConventionSetting::Empty, ConventionSetting::Both]
            .into_iter()
            .find(|c| c.keyword() == s)
    }
}

/// What a `check` directive asks for, and what it is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Si2Quasicontinuous,
    Si2Continuous,
    S2Continuous,
    S2Quasicontinuous,
    QuasicontinuityEquivalence,
    Si2Topology,
    Waybelow,
    DLimits,
    GdLimits,
    Si2Limits,
    ConvergenceAgreement,
}

/// Whether a check names a space or a net.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Space,
    Net,
}

impl CheckKind {
    pub const ALL: [CheckKind; 11] = [
        CheckKind::Si2Quasicontinuous,
        CheckKind::Si2Continuous,
        CheckKind::S2Continuous,
        CheckKind::S2Quasicontinuous,
        CheckKind::QuasicontinuityEquivalence,
        CheckKind::Si2Topology,
        CheckKind::Waybelow,
        CheckKind::DLimits,
        CheckKind::GdLimits,
        CheckKind::Si2Limits,
        CheckKind::ConvergenceAgreement,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            CheckKind::Si2Quasicontinuous => "si2-quasicontinuous",
            CheckKind::Si2Continuous => "si2-continuous",
            CheckKind::S2Continuous => "s2-continuous",
            CheckKind::S2Quasicontinuous => "s2-quasicontinuous",
            CheckKind::QuasicontinuityEquivalence => "quasicontinuity-equivalence",
            CheckKind::Si2Topology => "si2-topology",
            CheckKind::Waybelow => "waybelow",
            CheckKind::DLimits => "d-limits",
            CheckKind::GdLimits => "gd-limits",
            CheckKind::Si2Limits => "si2-limits",
            CheckKind::ConvergenceAgreement => "convergence-agreement",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == s)
    }

    pub fn target(self) -> Target {
        match self {
            CheckKind::DLimits | CheckKind::GdLimits | CheckKind::Si2Limits | CheckKind::ConvergenceAgreement => {
                Target::Net
            }
            _ => Target::Space,
        }
    }

    /// Number of set arguments after the target.
    pub fn arity(self) -> usize {
        match self {
            CheckKind::Waybelow => 2,
            _ => 0,
        }
    }
}
