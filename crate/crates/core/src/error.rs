use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("cannot embed modulus {from} into modulus {to}: {from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },
    #[error("{s} is not a unit modulo {modulus}")]
    NotAUnit { s: i64, modulus: u64 },
    #[error("{d} does not divide the modulus {modulus}")]
    NotADivisor { d: u64, modulus: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid field degree {0}")]
    InvalidDegree(u32),
    #[error("field of order {0} exceeds the size cap")]
    FieldTooLarge(u128),
    #[error("Gauss sums need an odd characteristic, got {0}")]
    EvenCharacteristic(u64),
    #[error("invalid q = {q} for {group}")]
    InvalidQ { group: &'static str, q: u64 },
    #[error("invalid character parameters: {0}")]
    InvalidCharacter(String),
    #[error("term count {0} outside the supported range 2..=7")]
    TermCountOutOfRange(usize),
    #[error("the signed roots do not sum to zero")]
    NotVanishing,
    #[error("vanishing part with {size} terms is outside the classified range")]
    Unclassified { size: usize },
    #[error("minimal vanishing sum with {size} terms matches no table row")]
    UnmatchedRow { size: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
