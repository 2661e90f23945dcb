use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Partition input that is empty, has a zero part or is not nonincreasing.
    InvalidPartition(String),
    /// An argument outside the range an operation accepts.
    OutOfRange {
        what: &'static str,
        value: i64,
        bound: String,
    },
    /// The problem size is above the configured bound for this operation.
    BoundExceeded {
        what: &'static str,
        value: usize,
        max: usize,
    },
    NotPrime(u64),
    /// A stated precondition does not hold for the given input.
    Precondition(String),
    NonHomogeneous,
    ExponentOverflow,
    /// Degree-sliced elimination did not terminate within the given bound.
    DegreeBoundTooSmall {
        bound: usize,
    },
    /// An internal consistency check failed; indicates a bug, not bad input.
    InvariantViolation(String),
    /// The operation needs characteristic zero (or characteristic above n).
    WrongCharacteristic {
        needed: &'static str,
        got: u64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPartition(s) => write!(f, "invalid partition: {s}"),
            Error::OutOfRange { what, value, bound } => {
                write!(f, "{what} = {value} is out of range ({bound})")
            }
            Error::BoundExceeded { what, value, max } => {
                write!(f, "{what} = {value} exceeds the supported bound {max}")
            }
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
            Error::NonHomogeneous => f.write_str("polynomial is not homogeneous in the chosen grading"),
            Error::ExponentOverflow => f.write_str("exponent overflow"),
            Error::DegreeBoundTooSmall { bound } => {
                write!(f, "quotient is still nonzero at the degree bound {bound}")
            }
            Error::InvariantViolation(s) => write!(f, "internal invariant violated: {s}"),
            Error::WrongCharacteristic { needed, got } => {
                write!(f, "operation needs {needed}, field has characteristic {got}")
            }
        }
    }
}

impl core::error::Error for Error {}
