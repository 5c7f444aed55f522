//! Dynamic set cover with bounded worst-case recourse.
//!
//! The crate is organised bottom-up:
//!
//! * [`system`], [`universe`], [`cover`], [`io`]: the fixed set family, the
//!   adversary's view of the element universe, cover solutions, and the
//!   instance file format.
//! * [`static_solvers`]: greedy with dual-fitting charges, primal-dual, an
//!   exact branch-and-bound oracle and the robustness checker.
//! * [`dynamic`]: background algorithms behind the [`dynamic::DynamicCover`]
//!   trait (level-based greedy, lazy primal-dual, recompute-from-scratch).
//! * [`transform`]: the interval scheduler that turns any background
//!   algorithm into one with low worst-case recourse.
//! * [`harness`]: workload generators and the experiment runner.

pub mod cover;
pub mod dynamic;
pub mod error;
pub mod harness;
pub mod io;
pub mod static_solvers;
pub mod system;
pub mod transform;
pub mod universe;

pub use cover::{is_cover, solution_cost, CoverSolution};
pub use error::{Error, Result};
pub use system::{ElementId, SetId, SetSystem};
pub use universe::{UniverseState, UpdateKind, UpdateStep};

/// Relative tolerance used for every cost comparison.
pub const COST_TOL: f64 = 1e-9;
