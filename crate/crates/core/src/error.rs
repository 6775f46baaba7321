use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised when constructing instances or starting runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Fewer than two clusters, or an empty instance.
    TooFewClusters(usize),
    /// A generator parameter is below its documented minimum.
    ParameterTooSmall { name: &'static str, value: u64, min: u64 },
    /// Cluster ids do not cover `0..m` contiguously.
    EmptyCluster(usize),
    /// The cost matrix does not have `n * n` entries.
    MatrixShape { expected: usize, found: usize },
    /// A diagonal entry is finite.
    FiniteSelfLoop(usize),
    /// Finite costs are large enough that a sum over `n^2` edges could overflow.
    CostOverflow,
    /// The cluster graph is disconnected, so no finite spanning structure exists.
    Disconnected,
    /// The algorithm needs a symmetric cost matrix.
    Asymmetric,
    /// A genotype does not fit the instance.
    InvalidGenotype(&'static str),
    /// An exhaustive oracle would exceed its enumeration guard.
    GuardExceeded { work: u128, limit: u128 },
    /// The run budget must be at least one evaluation.
    ZeroBudget,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooFewClusters(m) => write!(f, "need at least 2 clusters, got {m}"),
            Error::ParameterTooSmall { name, value, min } => {
                write!(f, "parameter {name}={value} is below the minimum {min}")
            }
            Error::EmptyCluster(c) => write!(f, "cluster {c} has no nodes"),
            Error::MatrixShape { expected, found } => {
                write!(f, "cost matrix has {found} entries, expected {expected}")
            }
            Error::FiniteSelfLoop(v) => write!(f, "node {v} has a finite self-loop cost"),
            Error::CostOverflow => f.write_str("edge costs too large: solution sums may overflow"),
            Error::Disconnected => f.write_str("cluster graph is disconnected"),
            Error::Asymmetric => f.write_str("algorithm requires a symmetric cost matrix"),
            Error::InvalidGenotype(why) => write!(f, "invalid genotype: {why}"),
            Error::GuardExceeded { work, limit } => {
                write!(f, "enumeration of {work} cases exceeds the guard {limit}")
            }
            Error::ZeroBudget => f.write_str("evaluation budget must be at least 1"),
        }
    }
}

impl core::error::Error for Error {}
