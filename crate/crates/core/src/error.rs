use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("mixed fields: {0}")]
    MixedFields(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("zero polynomial: {0}")]
    ZeroPolynomial(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not isotropic: {0}")]
    NotIsotropic(String),
    #[error("point not on variety: {0}")]
    NotOnVariety(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("common root of g1 and g2 at ({0})")]
    CommonRoot(String),
    #[error("g1 and g2 both vanish identically; the divisor is a double cone")]
    DoubleCone,
    #[error("nonfinite intersection: {0}")]
    Nonfinite(String),
    #[error("non-generic subspace: {0}")]
    NonGeneric(String),
    #[error("reducible divisor: {0}")]
    Reducible(String),
    #[error("enumeration budget exceeded: need {needed} points, budget {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// Machine-readable code used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MixedFields(_) => "mixed_fields",
            Error::UnsupportedField(_) => "unsupported_field",
            Error::DivisionByZero => "division_by_zero",
            Error::Dimension(_) => "dimension",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::ZeroPolynomial(_) => "zero_polynomial",
            Error::Invalid(_) => "invalid_input",
            Error::Parse(_) => "parse",
            Error::NotIsotropic(_) => "not_isotropic",
            Error::NotOnVariety(_) => "not_on_variety",
            Error::UnknownBuiltin(_) => "unknown_builtin",
            Error::CommonRoot(_) => "common_root",
            Error::DoubleCone => "double_cone",
            Error::Nonfinite(_) => "nonfinite",
            Error::NonGeneric(_) => "non_generic",
            Error::Reducible(_) => "reducible",
            Error::Budget { .. } => "budget",
            Error::Unsupported(_) => "unsupported",
            Error::Internal(_) => "internal",
        }
    }

    /// Process exit code: 2 input error, 3 nonfinite/non-generic, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Nonfinite(_) | Error::NonGeneric(_) => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}
