//! Combinatorial analysis of minimal aperiodic subshifts.
//!
//! The crate is built around [`language::FactorOracle`], an exact,
//! depth-certified index of the factor language of a subshift given by a
//! primitive substitution, a Sturmian continued-fraction expansion, or a
//! sample word. On top of it:
//!
//! - [`combinatorics`] — right-special and privileged word structure:
//!   complete first returns, orders, the `phi` maps, balance, palindromes,
//!   repulsiveness and integer powers;
//! - [`graph`] — the tree of words, horizontal edges, choice functions and
//!   approximation graphs with exact-rational shortest paths;
//! - [`metrics`] — weight functions, the two ultrametrics, the per-choice
//!   metrics with their explicit formulas, the inf/sup extremal metrics and
//!   the Lipschitz test for bounded powers;
//! - [`zeta`] — Dirichlet-type partial sums over the tree of words and
//!   complexity-exponent estimation.
//!
//! All results are deterministic: alphabet order is fixed at oracle
//! construction and drives every enumeration and tie-break.

pub mod combinatorics;
pub mod graph;
pub mod language;
pub mod metrics;
pub mod zeta;


pub use graph::{ApproxGraph, ChoiceFunction, ChoiceStrategy, EdgeKind, LazyPoint};
pub use language::{Alphabet, FactorOracle, SturmianSpec, Symbol, Word};
pub use metrics::WeightFunction;


/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("no fixed point constructible from the given rules")]
    NoFixedPoint,
    #[error("language is periodic: p({n}) = {count} <= {n}")]
    Periodic { n: usize, count: usize },
    #[error("insufficient continued-fraction coefficients: need a standard word of length >= {required}")]
    InsufficientCoefficients { required: usize },
    #[error("sample text too short: {len} symbols for depth {depth}")]
    TextTooShort { len: usize, depth: usize },
    #[error("factor window did not stabilize below {cap} symbols")]
    StabilizationFailed { cap: usize },
    #[error("uncertified length {requested} (certified depth is {certified})")]
    UncertifiedLength { requested: usize, certified: usize },
    #[error("word is not a factor: {word}")]
    NotAFactor { word: String },
    #[error("word is not privileged: {word}")]
    NotPrivileged { word: String },
    #[error("return budget {budget} exceeded; open branch: {branch}")]
    ReturnBudgetExceeded { budget: usize, branch: String },
    #[error("no right-special extension of {word} within certified depth")]
    NoRightSpecialExtension { word: String },
    #[error("words are not distinct complete first returns of one privileged word")]
    NotSiblingReturns,
    #[error("points are indistinguishable at depth {depth}")]
    IndistinguishableAtDepth { depth: usize },
    #[error("graph is disconnected: no path between the requested vertices")]
    DisconnectedGraph,
    #[error("vertex not found in graph")]
    VertexNotFound,
    #[error("degenerate fit window")]
    DegenerateWindow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
