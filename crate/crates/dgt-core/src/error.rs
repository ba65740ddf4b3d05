use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgtError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial {0} is not irreducible over Q")]
    NotIrreducible(String),
    #[error("lattices live in different ambient dimensions ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("singular input: {0}")]
    SingularInput(String),
    #[error("no cyclic vector found after {0} attempts")]
    CyclicVectorNotFound(usize),
    #[error("size limit exceeded: {what} = {size} > {limit}")]
    TooLarge {
        what: String,
        size: usize,
        limit: usize,
    },
    #[error("unsupported constant field: {0}")]
    UnsupportedConstantField(String),
    #[error("matrix is not in the group: {0}")]
    NotInGroup(String),
    #[error("specialization not well defined: parameter {param} annihilates a denominator in {location}")]
    NotWellDefined { param: String, location: String },
    #[error("specialized matrix is not invertible")]
    NotInvertible,
    #[error("syntax error at offset {offset} (line {line}, column {column}): {message}")]
    SyntaxError {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier '{0}'")]
    UnknownIdentifier(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl DgtError {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            DgtError::UnsupportedConstantField(_) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DgtError::DivisionByZero => "DivisionByZero",
            DgtError::NotIrreducible(_) => "NotIrreducible",
            DgtError::AmbientMismatch(..) => "AmbientMismatch",
            DgtError::SingularInput(_) => "SingularInput",
            DgtError::CyclicVectorNotFound(_) => "CyclicVectorNotFound",
            DgtError::TooLarge { .. } => "TooLarge",
            DgtError::UnsupportedConstantField(_) => "UnsupportedConstantField",
            DgtError::NotInGroup(_) => "NotInGroup",
            DgtError::NotWellDefined { .. } => "NotWellDefined",
            DgtError::NotInvertible => "NotInvertible",
            DgtError::SyntaxError { .. } => "SyntaxError",
            DgtError::UnknownIdentifier(_) => "UnknownIdentifier",
            DgtError::Invalid(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, DgtError>;
