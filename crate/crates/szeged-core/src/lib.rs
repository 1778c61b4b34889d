//! Exact computation of the (weighted) Szeged index on trees and graphs,
//! construction of minimum weighted Szeged index trees, and the
//! minimal-ending-branch machinery behind them.
//!
//! All index arithmetic is exact. The algorithms are generic over the
//! integer scalar through [`num::Int`]; the crate-level aliases fix the
//! default working types. Swap in `i128` through the generic entry points
//! if you need more headroom than [`Cost`] provides.

pub mod branch;
pub mod conjecture;
pub mod envelope;
pub mod error;
pub mod graph;
pub mod num;
pub mod optimizer;
pub mod oracle;
pub mod partition;

/// Default scalar for costs and index values.
pub type Cost = i64;
/// Exact rational type for envelope breakpoints and crossings.
pub type Rational = num_rational::Ratio<Cost>;

pub use branch::{AffineCost, BranchShape, HalfEdgeDecomposition};
pub use error::{Error, Result};
pub use graph::{EdgeSplit, Graph, RootedTree};
pub use optimizer::{DpTable, Report326, ThresholdRow, TreeOptimum};
