use alloc::string::String;
use core::fmt;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A group needs at least one cyclic factor, each of order at least 2.
    InvalidGroup(String),
    /// An element does not belong to the group it is used with.
    SpecMismatch(String),
    /// The connection set contains the identity.
    Loop,
    /// The connection set is not closed under negation; `element` has no inverse in it.
    Asymmetric { element: String },
    /// The connection set is empty.
    EmptyConnectionSet,
    /// The element is not of order two.
    NotInvolution { element: String, order: usize },
    /// The identity was given where a non-trivial partner offset is required.
    ZeroOffset,
    /// Cyclotomic values at different levels were combined.
    LevelMismatch { left: usize, right: usize },
    /// A level (root-of-unity order) that is zero or does not divide the target.
    InvalidLevel(String),
    /// Integer overflow in exact arithmetic.
    Overflow,
    /// An exact integrality test failed: the difference for this pair is not an integer.
    NonIntegerDifference { x: String, y: String },
    /// Matrix shape problem.
    Shape(String),
    /// Walk vertices `u` and `v` coincide.
    SameVertex,
    /// Bad numeric argument.
    InvalidArgument(String),
    /// |α|² + |β|² is not 1.
    NormViolation(f64),
    /// The analytic and numeric paths disagree.
    Inconsistency(String),
    /// Text input could not be parsed.
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGroup(msg) => write!(f, "invalid group: {msg}"),
            Error::SpecMismatch(msg) => write!(f, "element does not match group: {msg}"),
            Error::Loop => write!(f, "connection set contains 0 (the graph would have a loop)"),
            Error::Asymmetric { element } => {
                write!(f, "connection set is not symmetric: {element} is in S but its negative is not")
            }
            Error::EmptyConnectionSet => write!(f, "connection set is empty"),
            Error::NotInvolution { element, order } => {
                write!(f, "{element} has order {order}, not 2")
            }
            Error::ZeroOffset => write!(f, "offset a must be nonzero"),
            Error::LevelMismatch { left, right } => {
                write!(f, "cyclotomic level mismatch: {left} vs {right}")
            }
            Error::InvalidLevel(msg) => write!(f, "invalid cyclotomic level: {msg}"),
            Error::Overflow => write!(f, "integer overflow in exact arithmetic"),
            Error::NonIntegerDifference { x, y } => {
                write!(f, "eigenvalue difference for pair ({x}, {y}) is not an integer")
            }
            Error::Shape(msg) => write!(f, "matrix shape: {msg}"),
            Error::SameVertex => write!(f, "u and v must be distinct"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NormViolation(n) => write!(f, "|alpha|^2 + |beta|^2 = {n}, expected 1"),
            Error::Inconsistency(msg) => write!(f, "engine inconsistency: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
