use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series must have at least one coefficient")]
    EmptySeries,
    #[error("series coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },
    #[error("exponential needs a zero constant term")]
    NonzeroConstantTerm,
    #[error("logarithm needs a unit constant term")]
    NonunitConstantTerm,
    #[error("power needs a nonzero constant term")]
    ZeroConstantTerm,
    #[error("series is zero to working precision")]
    ZeroSeries,

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("degree {n} out of range (maximum {max})")]
    DegreeOutOfRange { n: usize, max: usize },

    #[error("B = p1^2/2 - p2 vanishes to working precision; the Hermite expansion point is degenerate")]
    DegenerateB,
    #[error("truncation {up_to} exceeds degree {n} or stored coefficients")]
    TruncationOutOfRange { n: usize, up_to: usize },

    #[error("B vanishes to working precision; xi = A/B is undefined")]
    ZeroB,
    #[error("leading coefficient of the B-quadratic vanishes")]
    DegenerateQuadratic,
    #[error("no admissible root of the B-quadratic")]
    QuadraticNoRoot,
    #[error("closed form disagrees with the generic solve: {0}")]
    ClosedFormMismatch(String),
    #[error("printed recursion disagrees with the series engine first at c_{k}: recursion {recursion}, series {series}")]
    RecursionMismatch { k: usize, recursion: String, series: String },
    #[error("sin(phi) vanishes")]
    SinPhiZero,

    #[error("grid needs at least 4 points, got {0}")]
    GridTooSmall(usize),
    #[error("grid is not geometric within 1%: {0}")]
    GridNotGeometric(String),
    #[error("error function returned a negative or non-finite value {value} at parameter {param}")]
    NonpositiveError { param: f64, value: f64 },
}
