use core::fmt;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The characteristic is not an odd prime.
    CompositeModulus(u32),
    /// The defining polynomial factors over `Z_p`.
    ReduciblePolynomial,
    /// The inverse Planck constant is zero.
    ZeroPlanck,
    /// Elements or polynomials built for different fields were combined.
    ContextMismatch,
    /// Inversion of the zero element.
    DivisionByZero,
    /// The operation assumes a prime extension degree.
    NonPrimeEll(u32),
    /// Dimension too small for the requested construction.
    InvalidDimension(usize),
    /// The symmetric displacement phase needs 2 to be invertible mod `d`.
    EvenDimension(usize),
    /// A basis index or label is out of range.
    IndexOutOfRange { index: usize, len: usize },
    /// A state does not lie in the required subspace.
    StateOutsideSubspace { residual: f64 },
    /// A state has weight outside `H_A`.
    StateOutsideHA { residual: f64 },
    /// Orbit representatives must pick one element from each full-length
    /// orbit.
    InvalidRepresentatives,
    /// Copy subspaces need at least two orbits of full length.
    SubspaceTooSmall(usize),
    /// The analytic representation only covers odd subspace dimension.
    EvenS(usize),
    /// The point lies on a cut between two sheets.
    OnCut,
    /// The point is a branch point (0 or infinity).
    BranchPoint,
    /// Two successive quadrature refinements disagree.
    QuadratureNotConverged { difference: f64, tolerance: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CompositeModulus(p) => write!(f, "{p} is not an odd prime"),
            Error::ReduciblePolynomial => f.write_str("polynomial is reducible"),
            Error::ZeroPlanck => f.write_str("inverse Planck constant must be nonzero"),
            Error::ContextMismatch => f.write_str("operands belong to different fields"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::NonPrimeEll(l) => write!(f, "extension degree {l} is not prime"),
            Error::InvalidDimension(d) => write!(f, "invalid dimension {d}"),
            Error::EvenDimension(d) => write!(f, "dimension {d} is even; 2 is not invertible"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
            Error::StateOutsideSubspace { residual } => {
                write!(f, "state lies outside the subspace (residual {residual:e})")
            }
            Error::StateOutsideHA { residual } => {
                write!(f, "state has weight outside H_A (residual {residual:e})")
            }
            Error::InvalidRepresentatives => {
                f.write_str("representatives must cover each full-length orbit exactly once")
            }
            Error::SubspaceTooSmall(s) => write!(f, "copy subspaces need s >= 2, got {s}"),
            Error::EvenS(s) => write!(f, "subspace dimension {s} is even (unsupported)"),
            Error::OnCut => f.write_str("point lies on a cut"),
            Error::BranchPoint => f.write_str("point is a branch point"),
            Error::QuadratureNotConverged {
                difference,
                tolerance,
            } => write!(
                f,
                "quadrature not converged: refinement changed result by {difference:e} (tol {tolerance:e})"
            ),
        }
    }
}

impl core::error::Error for Error {}
