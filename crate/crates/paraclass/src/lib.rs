//! Reports, scans and named verification scenarios on top of
//! [`paraclass_core`].

pub mod cache;
pub mod json;
pub mod report;
pub mod scan;
pub mod verify;

pub use cache::Cache;
pub use report::{group_report, quad_report, ClassificationReport, Flag, Representative, Subject};
pub use scan::{run_scan, ScanReport, PAPER_LAURENT, PAPER_PID};
pub use verify::{verify_example, Check, Verification, EXAMPLES};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] paraclass_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown example {0:?}; expected one of {list}", list = EXAMPLES.join(", "))]
    UnknownExample(String),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl Error {
    /// Errors caused by the caller's input rather than by a computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownExample(_)
                | Error::Usage(_)
                | Error::Core(
                    paraclass_core::Error::InvalidInput(_)
                        | paraclass_core::Error::UnknownPreset(_)
                )
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
