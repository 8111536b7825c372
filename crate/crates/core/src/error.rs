use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("series mismatch: {0}")]
    SeriesMismatch(&'static str),

    #[error("constant term must be {expected} (got {got_re}+{got_im}i)")]
    ConstantTerm {
        expected: f64,
        got_re: f64,
        got_im: f64,
    },

    #[error("grid is not Hermitian at ({row},{col}), degree {degree}")]
    NotHermitian {
        row: usize,
        col: usize,
        degree: usize,
    },

    #[error("degree {degree} is outside the truncation 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("no Satake tuple at p={p} for {id}: place is ramified")]
    Ramified { id: String, p: u64 },

    #[error("no local data at p={p} for {id}")]
    MissingLocalData { id: String, p: u64 },

    #[error("exponent {exponent} of p={p} exceeds truncation degree {max}")]
    Truncation { p: u64, exponent: u32, max: usize },

    #[error("inconsistent segment data: {0}")]
    Segments(String),

    #[error("invalid family: {0}")]
    Family(String),

    #[error("sampler: {0}")]
    Sampler(String),

    #[error("pole of Gamma near {re}+{im}i")]
    Pole { re: f64, im: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("quadrature did not meet tolerance: estimated relative error {estimate:e}")]
    Quadrature { estimate: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}
