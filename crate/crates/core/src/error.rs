use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at offset {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("invalid number `{0}`")]
    InvalidNumber(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("substitution denominator is the zero polynomial")]
    ZeroPolynomialDenominator,
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(char),
    #[error("relation for `{0}` has no term in its own symbol")]
    DegenerateRelation(char),
    #[error("relation for `{0}` has a leading coefficient that cannot be rescaled to 1")]
    NonMonicRelation(char),
    #[error("relation for `{symbol}` mentions later tower symbol `{other}`")]
    RelationOrder { symbol: char, other: char },
    #[error("quaternion algebra parameters must be nonzero")]
    DegenerateAlgebra,
    #[error("operands belong to different quaternion algebras")]
    AlgebraMismatch,
    #[error("element has zero norm and is not invertible")]
    ZeroNorm,
    #[error("square class of zero is undefined")]
    ZeroSquareClass,
    #[error("factorization of {0} exceeded the configured budget")]
    FactorBudget(String),
    #[error("p-adic search modulus {0} exceeds the configured budget")]
    ModulusBudget(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("conic z^2 = ({a})x^2 + ({b})y^2 has no rational points (division algebra)")]
    NoRationalPoint { a: String, b: String },
    #[error("point ({0}) does not lie on the conic")]
    PointNotOnConic(String),
    #[error("{0} polynomial must be nonconstant")]
    ConstantPolynomial(&'static str),
    #[error("{0} polynomial has a zero root; parameters must be nonzero")]
    ZeroRoot(&'static str),
    #[error("{0} polynomial is reducible over the rationals")]
    Reducible(&'static str),
    #[error("unknown output format `{0}` (expected text, json or ideal)")]
    UnknownFormat(String),
    #[error("malformed record: {0}")]
    Record(String),
}

impl Error {
    /// Stable machine-readable tag used in structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::InvalidNumber(_) => "invalid_number",
            Error::ZeroDenominator => "zero_denominator",
            Error::ZeroPolynomialDenominator => "zero_polynomial_denominator",
            Error::NotUnivariate(_) => "not_univariate",
            Error::DegenerateRelation(_) => "degenerate_relation",
            Error::NonMonicRelation(_) => "non_monic_relation",
            Error::RelationOrder { .. } => "relation_order",
            Error::DegenerateAlgebra => "degenerate_algebra",
            Error::AlgebraMismatch => "algebra_mismatch",
            Error::ZeroNorm => "zero_norm",
            Error::ZeroSquareClass => "zero_square_class",
            Error::FactorBudget(_) => "factor_budget",
            Error::ModulusBudget(_) => "modulus_budget",
            Error::NotPrime(_) => "not_prime",
            Error::NoRationalPoint { .. } => "no_rational_point",
            Error::PointNotOnConic(_) => "point_not_on_conic",
            Error::ConstantPolynomial(_) => "constant_polynomial",
            Error::ZeroRoot(_) => "zero_root",
            Error::Reducible(_) => "reducible",
            Error::UnknownFormat(_) => "unknown_format",
            Error::Record(_) => "record",
        }
    }

    /// Errors caused by malformed user input rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownVariable { .. }
                | Error::InvalidNumber(_)
                | Error::ZeroDenominator
                | Error::NotUnivariate(_)
                | Error::UnknownFormat(_)
                | Error::Record(_)
        )
    }
}
