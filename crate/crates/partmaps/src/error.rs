use thiserror::Error;

/// Errors raised by partition construction, maps and harness helpers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid part {0}: parts must be positive integers")]
    InvalidPart(i64),

    #[error("cannot parse {token:?} as a part")]
    Parse { token: String },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),

    #[error("residue {residue} out of range for modulus {modulus}")]
    InvalidResidue { residue: u32, modulus: u32 },

    #[error("r must be at least 1, got {0}")]
    InvalidR(u32),

    #[error("partition {partition} is not {modulus}-regular")]
    NotRegular { partition: String, modulus: u32 },

    #[error(
        "partition {partition} has a part repeated {multiplicity} times (must be below {bound})"
    )]
    MultiplicityTooLarge {
        partition: String,
        multiplicity: u32,
        bound: u32,
    },

    #[error("{partition} is outside the {family} family: {rule}")]
    FamilyViolation {
        family: String,
        partition: String,
        rule: String,
    },

    #[error("{what} = {value} exceeds the limit {limit}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("type vector {got} has the wrong length (expected {expected} entries)")]
    TypeLength { got: String, expected: usize },

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("invalid colored part {0:?}")]
    InvalidColoredPart(String),
}

pub type Result<T> = std::result::Result<T, Error>;
