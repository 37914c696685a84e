use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the formula it feeds.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("frame mismatch: expected {expected} frame, got {found}")]
    FrameMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("grid too small: need at least {needed} nodes, got {got}")]
    GridTooSmall { needed: usize, got: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("NodeSingularity: density {density:e} at x={x} is below the node tolerance {tolerance:e}")]
    NodeSingularity { x: f64, density: f64, tolerance: f64 },

    #[error(
        "NoCollision: co-moving wavenumber {k_bar} <= 0; the packet never reaches the wall \
         (a collision needs v < hbar*k0/m = {threshold})"
    )]
    NoCollision { k_bar: f64, threshold: f64 },

    #[error("packet not clear of the boundaries: {0}")]
    Clearance(String),

    #[error("singular tridiagonal system at row {0}")]
    SingularSystem(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("region too small: need at least {needed} nodes, got {got}")]
    RegionTooSmall { needed: usize, got: usize },

    #[error("NoSignal: field magnitude vanishes on the analysis region")]
    NoSignal,

    #[error("AliasedShift: correlation peak sits on the search edge (|shift| >= {limit})")]
    AliasedShift { limit: f64 },

    #[error("FlatPattern: k_bar = 0 gives an identically vanishing density")]
    FlatPattern,

    #[error("ContaminatedRun: {fraction:e} of the norm sits at the far boundary")]
    ContaminatedRun { fraction: f64 },

    #[error("reflection incomplete: only {fraction} of the norm reversed momentum")]
    IncompleteReflection { fraction: f64 },
}

impl Error {
    /// Short machine-friendly tag, used for skipped sweep rows.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "Domain",
            Error::FrameMismatch { .. } => "FrameMismatch",
            Error::GridTooSmall { .. } => "GridTooSmall",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::NodeSingularity { .. } => "NodeSingularity",
            Error::NoCollision { .. } => "NoCollision",
            Error::Clearance(_) => "Clearance",
            Error::SingularSystem(_) => "SingularSystem",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::RegionTooSmall { .. } => "RegionTooSmall",
            Error::NoSignal => "NoSignal",
            Error::AliasedShift { .. } => "AliasedShift",
            Error::FlatPattern => "FlatPattern",
            Error::ContaminatedRun { .. } => "ContaminatedRun",
            Error::IncompleteReflection { .. } => "IncompleteReflection",
        }
    }
}
