use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested at (or numerically too close to) a pole.
    #[error("pole at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    /// A numerical procedure failed its own convergence check.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// A table or buffer could not be allocated.
    #[error("resource error: {0}")]
    Resource(String),

    /// An envelope fit had too few usable points.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

impl Error {
    pub(crate) fn pole<T: crate::Real>(s: num_complex::Complex<T>) -> Self {
        Error::Pole {
            re: s.re.as_f64(),
            im: s.im.as_f64(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
