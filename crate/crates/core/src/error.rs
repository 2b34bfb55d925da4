use thiserror::Error;

/// Errors raised while building or parsing an [`Instance`](crate::Instance).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: `{id}` is declared more than once")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: `{id}` is not declared")]
    UndeclaredId { line: usize, id: String },
    #[error("line {line}: edge `{a}`-`{b}` must join an indicator and a sensor")]
    NotBipartite { line: usize, a: String, b: String },
    #[error("line {line}: duplicate edge `{indicator}`-`{sensor}`")]
    DuplicateEdge {
        line: usize,
        indicator: String,
        sensor: String,
    },
    #[error("line {line}: `{directive}` given more than once")]
    DuplicateDirective { line: usize, directive: &'static str },
    #[error("missing `{0}` directive")]
    MissingDirective(&'static str),
    #[error("ucap must be at least 1")]
    ZeroUcap,
}

/// Errors raised while building or parsing a [`SolutionGraph`](crate::SolutionGraph).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unit `{unit}` declared more than once")]
    DuplicateUnit { line: usize, unit: String },
    #[error("line {line}: unit `{unit}` is not declared")]
    UndeclaredUnit { line: usize, unit: String },
    #[error("line {line}: element `{element}` assigned to both `{first}` and `{second}`")]
    DuplicateAssignment {
        line: usize,
        element: String,
        first: String,
        second: String,
    },
    #[error("line {line}: unit `{unit}` cannot be its own partner")]
    SelfPartner { line: usize, unit: String },
    #[error("line {line}: partner pair `{a}`-`{b}` listed twice")]
    DuplicatePartner { line: usize, a: String, b: String },
}

/// Errors raised by the bin-packing side of the reductions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinPackingError {
    #[error("{0}")]
    Syntax(String),
    #[error("item sizes must be at least 1")]
    ZeroItem,
    #[error("bin size must be at least 1")]
    ZeroBinSize,
    #[error("bin count must be at least 1")]
    ZeroBins,
}

/// Refusal of an exhaustive procedure to run on an oversized input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("input has {size} {what}, exhaustive search is limited to {limit}")]
pub struct GuardExceeded {
    pub size: usize,
    pub limit: usize,
    pub what: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("lifting requires iucap 0, instance has iucap {0}")]
    NonZeroIucap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("max_time_ms must be at least 1")]
    ZeroTime,
    #[error("max_units must be at least 1")]
    ZeroUnits,
}

/// A solution graph that cannot induce an input graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InduceError {
    #[error("element `{0}` is not assigned to a unit")]
    Unassigned(String),
    #[error("unit `{unit}` hosts {count} {what}, capacity is {cap}")]
    OverCapacity {
        unit: String,
        what: &'static str,
        count: usize,
        cap: usize,
    },
    #[error("partner link `{0}`-`{1}` is not symmetric")]
    Asymmetric(String, String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}
