use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the physical or mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("mode sum did not reach 1 - {eps:e} of the initial energy before s_max cap {cap} (reached {reached})")]
    Truncation { eps: f64, cap: usize, reached: f64 },

    #[error("grid of {n_z} points undersamples modes up to s_max = {s_max} (need at least {needed})")]
    Undersampled {
        n_z: usize,
        s_max: usize,
        needed: usize,
    },

    #[error("no stop band: no sample reaches reflectivity {threshold}")]
    NoBand { threshold: f64 },

    #[error("stop band resolved by only {samples} samples (need at least {needed})")]
    UnresolvedBand { samples: usize, needed: usize },

    /// `step` is the 1-based protocol step when raised inside a protocol run.
    #[error("photon number {photons} exceeds cap {cap}{}", step_suffix(.step))]
    PhotonCap {
        step: Option<usize>,
        photons: u32,
        cap: u32,
    },

    #[error("state is not normalized: norm^2 = {0}")]
    NotNormalized(f64),

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn step_suffix(step: &Option<usize>) -> String {
    step.map(|s| format!(" at protocol step {s}")).unwrap_or_default()
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_owned(),
            reason: reason.into(),
        }
    }
}
