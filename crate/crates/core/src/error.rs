use std::fmt;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("all monomials cancel; the zero expression is not admissible")]
    ZeroExpression,
    #[error("sum of the leading coefficients over J vanishes ({sum_re:e} + {sum_im:e}i)")]
    AssumptionViolated { sum_re: f64, sum_im: f64 },
    #[error("coefficients of `{lfunc}` available up to {available}, needed up to {needed}")]
    OracleRange { lfunc: String, needed: usize, available: usize },
    #[error("leading Laurent coefficient at s = 1 is numerically ambiguous (pole order at most {upper_bound})")]
    NumericallyAmbiguous { upper_bound: u32 },
    #[error("evaluation point is at the pole s = 1")]
    PoleAt1,
    #[error("cannot reach error {target:e} at s = {s} (best bound {achieved:e})")]
    AccuracyUnreachable { s: Point, target: f64, achieved: f64 },
    #[error("derivative circle radius {radius:e} too small at s = {s}")]
    PoleTooClose { s: Point, radius: f64 },
    #[error("s = {s} is too close to a logarithm branch point")]
    DomainError { s: Point },
    #[error("s = {s} lies outside the functional-equation region")]
    RegionViolation { s: Point },
    #[error("character {label} mod {modulus} is not primitive")]
    NotPrimitive { modulus: u64, label: u64 },
    #[error("function too small on the boundary near s = {s}")]
    BoundaryTooClose { s: Point },
    #[error("phase tracking did not resolve within {samples} samples")]
    PhaseUnresolved { samples: usize },
    #[error("zero isolation did not converge in [{sigma_lo}, {sigma_hi}] x [{t_lo}, {t_hi}]")]
    NonConvergence { sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64 },
    #[error("left zero-free abscissa scan failed")]
    ScanFailed,
    #[error("b = {b} must not exceed {bound}")]
    BOutOfRange { b: f64, bound: f64 },
    #[error("unknown L-function id `{0}`")]
    UnknownLFunction(String),
    #[error("`{id}` is only valid for Re(s) > {abscissa}")]
    OutsideValidity { id: String, abscissa: f64 },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Complex point carried in error payloads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub re: f64,
    pub im: f64,
}

impl From<num_complex::Complex64> for Point {
    fn from(z: num_complex::Complex64) -> Self {
        Point { re: z.re, im: z.im }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}
