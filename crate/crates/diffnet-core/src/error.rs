//! Crate-wide error type.

use core::fmt;

/// Errors shared by all analysis entry points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A node id is outside `[0, num_nodes)`.
    OutOfRangeNode { node: usize, num_nodes: usize },
    /// An edge `(u, u)` was supplied.
    SelfLoop { node: usize },
    /// An edge of the graph has no assigned weight.
    MissingWeight { u: usize, v: usize },
    /// A weight lies outside the declared `[w_min, w_max]` interval,
    /// or the interval itself is invalid.
    WeightOutOfBounds,
    /// The graph is not connected (required by the requested analysis).
    Disconnected,
    /// `w_min` must be strictly positive.
    NonpositiveWmin,
    /// The random weight interval is empty or not strictly positive.
    NonpositiveRange,
    /// The subchain bound requires `k > 2`.
    KTooSmall { k: usize },
    /// Clique-chain leader bounds require diameter `D > 2`.
    DiameterTooSmall { d: usize },
    /// A PMI sequence does not structurally match its DL matrix.
    IndexMismatch,
    /// An exhaustive search exceeded its node/subset budget.
    BudgetExceeded,
    /// A clique chain was given a clique of size zero.
    EmptyClique,
    /// A clique chain needs at least two cliques.
    TooFewCliques,
    /// The trim target is not reachable while keeping `k` and `D`.
    InfeasibleTarget { requested: usize },
    /// No clique chain with the requested `N` and `D` exists.
    InfeasibleNDCombination { n: usize, d: usize },
    /// The composition search would enumerate too many candidates.
    SearchSpaceTooLarge { candidates: u128 },
    /// Euler-Maruyama step size violates the stability bound.
    UnstableStep,
    /// A leader set must be nonempty with distinct members.
    BadLeaderSet,
    /// Catch-all for out-of-domain scalar parameters.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRangeNode { node, num_nodes } => {
                write!(
                    f,
                    "node id {node} out of range for graph with {num_nodes} nodes"
                )
            }
            Error::SelfLoop { node } => write!(f, "self loop at node {node}"),
            Error::MissingWeight { u, v } => write!(f, "no weight assigned to edge ({u}, {v})"),
            Error::WeightOutOfBounds => write!(f, "edge weight outside [w_min, w_max]"),
            Error::Disconnected => write!(f, "graph is disconnected"),
            Error::NonpositiveWmin => write!(f, "w_min must be > 0"),
            Error::NonpositiveRange => write!(f, "weight interval must satisfy 0 < w_min <= w_max"),
            Error::KTooSmall { k } => write!(f, "bound requires k > 2, got {k}"),
            Error::DiameterTooSmall { d } => write!(f, "bound requires diameter > 2, got {d}"),
            Error::IndexMismatch => write!(f, "sequence indices do not match the DL matrix"),
            Error::BudgetExceeded => write!(f, "search budget exceeded"),
            Error::EmptyClique => write!(f, "clique sizes must be >= 1"),
            Error::TooFewCliques => write!(f, "a clique chain needs at least two cliques"),
            Error::InfeasibleTarget { requested } => {
                write!(
                    f,
                    "cannot trim to {requested} nodes without changing k or the diameter"
                )
            }
            Error::InfeasibleNDCombination { n, d } => {
                write!(f, "no clique chain with N={n} and D={d}")
            }
            Error::SearchSpaceTooLarge { candidates } => {
                write!(
                    f,
                    "search space of {candidates} candidates exceeds the guard"
                )
            }
            Error::UnstableStep => write!(f, "dt violates the stability bound 2/lambda_max"),
            Error::BadLeaderSet => {
                write!(f, "leader set must be nonempty with distinct in-range ids")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
