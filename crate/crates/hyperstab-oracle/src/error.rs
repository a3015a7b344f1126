use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("degenerate radius a = {0}; need 0 < a <= 1 away from the pole")]
    DegenerateRadius(f64),

    #[error("grid size {0} is too small or odd; need an even n >= 16")]
    BadGridSize(usize),

    #[error("input section is not tangent to the ambient sphere (max defect {0:.3e})")]
    NonTangentInput(f64),

    #[error("variation step {0} is not positive")]
    BadStep(f64),

    #[error("curve speed degenerates (min |phi'| = {0:.3e}); refusing to differentiate")]
    DegenerateSpeed(f64),

    #[error("grid self-check failed: {quantity} off by {defect:.3e}")]
    GridInstability { quantity: String, defect: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
