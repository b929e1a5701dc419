//! Script language, REPL and verification suite on top of `sgk-core`.

pub mod builtins;
pub mod error;
pub mod interp;
pub mod lexer;
pub mod parser;
pub mod report;
pub mod value;
pub mod verify;

pub use error::{ErrorKind, ScriptError, Span};
pub use interp::{Event, Interpreter};
pub use parser::{parse, parse_in_scope, Script, Statement};
pub use report::{Record, Report, Status};
pub use value::Value;

/// Parse and run `src` with `n` generators. Syntax and scope errors come back
/// as `Err`; everything after parsing lands in the report.
pub fn run_source(src: &str, n: usize) -> Result<Report, ScriptError> {
    let script = parse(src)?;
    Ok(Interpreter::new(n).run(&script))
}

/// Evaluate a single expression and return its value.
pub fn eval_str(src: &str, n: usize) -> Result<Value, ScriptError> {
    let script = parse(src)?;
    let [st] = script.as_slice() else {
        return Err(ScriptError::syntax(Span::default(), "expected exactly one expression"));
    };
    let parser::StmtKind::Expr(e) = &st.kind else {
        return Err(ScriptError::syntax(st.span, "expected an expression"));
    };
    Interpreter::new(n).eval(e)
}
