//! Error type shared by every module.

use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different ambient rings.
    ContextMismatch,
    /// Requested characteristic is neither 0 nor prime.
    NotPrime(u64),
    BadVariableList,
    UnknownVariable(String),
    PointDimensionMismatch { expected: usize, got: usize },
    DivisionByZero,
    /// The zero polynomial has no initial form or order witness.
    ZeroPolynomial,
    /// divide_out needs a nonconstant, nonzero divisor.
    ConstantDivisor,
    /// gcd of two zero polynomials.
    GcdOfZeros,
    EmptyGeneratorList,
    /// resultant needs positive degree in the eliminated variable.
    ConstantInVariable(String),
    SingularMatrix,
    /// Division was expected to be exact but left a remainder.
    InexactDivision,
    /// Weights must be positive.
    NonPositiveWeight,
    /// The operation needs integer-normalized weights.
    NonIntegerWeights,
    /// The point is not in the singular locus.
    NotSingular,
    /// The point is not simple (order ≠ 1).
    NotSimple,
    /// No monic transversal generator exists in the requested variable; a
    /// linear coordinate change may produce one.
    NoTransversal { stage: usize, var: String },
    /// The algebra is not a relative-differential-closure fixed point for
    /// the projection variable.
    NotRelativelyClosed(String),
    /// The operation needs a differentially closed algebra.
    NotDifferentiallyClosed,
    /// The center fails the order-along-center test for some generator.
    ImpermissibleCenter,
    /// The chart variable must be one of the center variables.
    ChartNotInCenter,
    /// A τ computation met an initial form that is not a linear combination
    /// of p^e-th powers of variables; τ is undetermined by this procedure.
    NonAdditiveInitialForm(String),
    /// Characteristic-polynomial dimension cap (n ≤ 16) exceeded.
    CharPolyTooLarge(usize),
    /// Power-membership search in nested determinants exceeded its bound.
    MembershipBoundExceeded(u32),
    /// A weak transform met a generator not divisible by the required power
    /// of the exceptional variable: an impermissible center slipped through.
    NotDivisible { generator: usize },
    /// Center and elimination chain are incompatible.
    CenterChainMismatch(String),
    /// The internal contract of a twisted-algebra construction failed.
    TildeContract(String),
    /// The γ recursion failed below the top level; carries the partial value.
    GammaIncomplete { partial: String, reason: String },
    Parse(String),
    Unsupported(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ContextMismatch => write!(f, "operands live in different rings"),
            Error::NotPrime(c) => write!(f, "characteristic {} is neither 0 nor prime", c),
            Error::BadVariableList => write!(f, "variable names must be distinct and nonempty"),
            Error::UnknownVariable(v) => write!(f, "unknown variable `{}`", v),
            Error::PointDimensionMismatch { expected, got } => {
                write!(f, "point has {} coordinates, ring has {}", got, expected)
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroPolynomial => write!(f, "the zero polynomial is not allowed here"),
            Error::ConstantDivisor => write!(f, "divisor must be nonzero and nonconstant"),
            Error::GcdOfZeros => write!(f, "gcd of two zero polynomials"),
            Error::EmptyGeneratorList => write!(f, "empty generator list"),
            Error::ConstantInVariable(v) => {
                write!(f, "polynomial has degree 0 in `{}`", v)
            }
            Error::SingularMatrix => write!(f, "matrix is not invertible"),
            Error::InexactDivision => write!(f, "division left a remainder"),
            Error::NonPositiveWeight => write!(f, "weights must be positive"),
            Error::NonIntegerWeights => {
                write!(f, "operation requires integer weights; normalize first")
            }
            Error::NotSingular => write!(f, "point is not in the singular locus"),
            Error::NotSimple => write!(f, "point is not simple"),
            Error::NoTransversal { stage, var } => write!(
                f,
                "no monic transversal generator in `{}` at stage {}; try a linear change",
                var, stage
            ),
            Error::NotRelativelyClosed(v) => write!(
                f,
                "algebra is not relatively differentially closed in `{}`",
                v
            ),
            Error::NotDifferentiallyClosed => {
                write!(f, "operation needs a differentially closed algebra")
            }
            Error::ImpermissibleCenter => write!(f, "center is not permissible"),
            Error::ChartNotInCenter => write!(f, "chart variable is not a center variable"),
            Error::NonAdditiveInitialForm(g) => write!(
                f,
                "initial form of `{}` is not additive; tau undetermined",
                g
            ),
            Error::CharPolyTooLarge(n) => {
                write!(f, "characteristic polynomial dimension {} exceeds cap 16", n)
            }
            Error::MembershipBoundExceeded(b) => {
                write!(f, "membership power search exceeded bound {}", b)
            }
            Error::NotDivisible { generator } => write!(
                f,
                "generator #{} is not divisible by the required exceptional power",
                generator
            ),
            Error::CenterChainMismatch(m) => write!(f, "center/chain incompatibility: {}", m),
            Error::TildeContract(m) => write!(f, "twisted-algebra contract failed: {}", m),
            Error::GammaIncomplete { partial, reason } => {
                write!(f, "gamma incomplete at {}: {}", partial, reason)
            }
            Error::Parse(m) => write!(f, "parse error: {}", m),
            Error::Unsupported(m) => write!(f, "{}", m),
        }
    }
}

impl core::error::Error for Error {}
