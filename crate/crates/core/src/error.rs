use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("mode index {index} out of range for n = {n}")]
    Index { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("decomposition error: {0}")]
    Decomposition(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("integrator accuracy: {0}")]
    Accuracy(String),

    #[error("no peak: start state is orthogonal to the target")]
    NoPeak,

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn check_index(index: usize, n: usize) -> Result<()> {
        if index == 0 || index > n {
            Err(Error::Index { index, n })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::Dimension { expected, found })
        }
    }
}
