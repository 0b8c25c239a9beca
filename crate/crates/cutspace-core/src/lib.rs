#![no_std]
//! Order and topology over finite posets, an ω-chain glued to a finite poset,
//! and the countable antichain: cuts, irreducible sets, the way-below
//! relations ≪, ≪_SI and ≪_r, the weakly irreducible topology, continuity
//! verdicts and net convergence.

extern crate alloc;

pub mod carrier;
pub mod continuity;
pub mod convergence;
pub mod enumerate;
pub mod error;
pub mod finite;
pub mod lattice;
pub mod order;
pub mod setexpr;
pub mod si2;
pub mod space;
pub mod waybelow;

pub use carrier::{Attachment, Carrier, ChainSpan, ElementRef, OmegaPoset};
pub use error::{Error, Result};
pub use finite::{FinitePoset, Mask};
pub use order::DeltaConvention;
pub use setexpr::SetExpr;
pub use space::{Space, Topology, TopologySpec};
