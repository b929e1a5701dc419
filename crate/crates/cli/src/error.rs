use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    Shape,
    Scope,
    Arity,
    Runtime,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Syntax => "syntax error",
            ErrorKind::Shape => "shape error",
            ErrorKind::Scope => "unknown identifier",
            ErrorKind::Arity => "arity mismatch",
            ErrorKind::Runtime => "runtime error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: {kind}: {message}")]
pub struct ScriptError {
    pub kind: ErrorKind,
    pub span: Span,
    pub message: String,
}

impl ScriptError {
    pub fn new(kind: ErrorKind, span: Span, message: impl Into<String>) -> Self {
        ScriptError {
            kind,
            span,
            message: message.into(),
        }
    }

    pub fn syntax(span: Span, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Syntax, span, message)
    }

    pub fn runtime(span: Span, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Runtime, span, message)
    }
}
