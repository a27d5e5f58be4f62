use alloc::string::String;

/// A literal that could not be read.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid {expected}: {found:?}")]
pub struct ParseError {
    pub expected: &'static str,
    pub found: String,
}

impl ParseError {
    pub fn new(expected: &'static str, found: &str) -> Self {
        ParseError { expected, found: found.into() }
    }
}
