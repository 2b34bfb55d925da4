//! Partner units problem (PUP).
//!
//! An instance is a bipartite graph of indicators and sensors plus two
//! capacities: every unit holds at most `ucap` indicators and at most
//! `ucap` sensors, and has at most `iucap` partner units. A solution places
//! every element on a unit so that the endpoints of each edge share a unit
//! or sit on partnered units.
//!
//! - [`parse_instance`] / [`Instance`]: the input graph.
//! - [`solve`]: backtracking search from every indicator with time slicing
//!   and optional unit merging.
//! - [`verify_solution`]: checks a [`SolutionGraph`] against an instance.
//! - [`oracle`]: exhaustive deciders for small instances.
//! - [`reductions`]: transformations from bin packing and between
//!   inter-unit capacities.

pub mod binpack;
pub mod error;
pub mod fixtures;
pub mod instance;
pub mod oracle;
pub mod reductions;
pub mod solution;
pub mod solver;
pub mod verify;

pub use binpack::BinPackingInstance;
pub use error::{
    BinPackingError, ConfigError, GuardExceeded, InduceError, InstanceError, ReductionError, SolutionError,
};
pub use instance::{parse_instance, ElemId, Instance, InstanceBuilder, Side};
pub use oracle::{binpack_decide, oracle_decide, oracle_min_units, Decision};
pub use reductions::{binpack_to_pup_iucap2, double_binpack, lift_iucap0_to_1};
pub use solution::{induce_from_instance, induce_input_graph, parse_solution, SolutionGraph};
pub use solver::{solve, SolveConfig, SolveOutcome, SolveResult, SolveStats, UnsatReason};
pub use verify::{count_units, verify_solution, ReferenceKind, Violation, ViolationKind};
