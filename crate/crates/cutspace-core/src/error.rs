use alloc::string::String;
use core::fmt;

/// Errors raised while validating presentations or evaluating predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A name or index does not denote a point of the carrier.
    UnknownElement(String),
    /// A set expression uses fields the carrier does not have.
    InvalidSet(String),
    /// The presented relation is not a partial order.
    NotPartialOrder(String),
    /// An explicit open family is not a topology.
    NotTopology(String),
    /// The topology does not separate points.
    NotT0(String),
    /// A declared order disagrees with the specialization order of the topology.
    OrderMismatch(String),
    /// The (carrier, topology) pair or the query is outside the decidable table.
    UnsupportedComb(String),
    EmptySet,
    EmptyFamily,
    NotDirectedFamily,
    /// A theorem's hypothesis does not hold for the given input.
    NotApplicable(String),
    /// A theorem's conclusion failed although its hypotheses were verified.
    InternalFailure(String),
    NotLattice(String),
    OutOfRange(String),
    /// The finite carrier is too large for an exhaustive procedure.
    TooLarge { size: usize, limit: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownElement(e) => write!(f, "unknown element `{e}`"),
            Error::InvalidSet(m) => write!(f, "invalid set expression: {m}"),
            Error::NotPartialOrder(m) => write!(f, "not a partial order: {m}"),
            Error::NotTopology(m) => write!(f, "not a topology: {m}"),
            Error::NotT0(m) => write!(f, "space is not T0: {m}"),
            Error::OrderMismatch(m) => write!(f, "order disagrees with the topology: {m}"),
            Error::UnsupportedComb(m) => write!(f, "unsupported combination: {m}"),
            Error::EmptySet => f.write_str("set must be nonempty"),
            Error::EmptyFamily => f.write_str("family must be nonempty"),
            Error::NotDirectedFamily => f.write_str("family is not directed"),
            Error::NotApplicable(m) => write!(f, "not applicable: {m}"),
            Error::InternalFailure(m) => write!(f, "internal failure: {m}"),
            Error::NotLattice(m) => write!(f, "not a lattice: {m}"),
            Error::OutOfRange(m) => write!(f, "out of range: {m}"),
            Error::TooLarge { size, limit } => {
                write!(f, "carrier has {size} points, exhaustive limit is {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
