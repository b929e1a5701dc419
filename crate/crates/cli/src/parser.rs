//! Recursive descent over the token stream, with scope and arity checks done
//! while parsing so a script is rejected before anything runs.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::builtins;
use crate::error::{ErrorKind, ScriptError, Span};
use crate::lexer::{lex, Tok, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeFields {
    pub degrees: Expr,
    pub edges: Expr,
    pub marks: Expr,
    pub nodal: Expr,
    pub marked: Expr,
    pub curves: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Number { num: BigInt, den: BigInt, imaginary: bool },
    Var(String),
    Const(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    Point(Box<[Expr; 3]>),
    List(Vec<Expr>),
    Sc(Vec<Vec<Expr>>),
    Sl2(Vec<Vec<Expr>>),
    Chart(u8, Box<Expr>, Box<Expr>),
    Sec(Box<Expr>, Vec<Expr>),
    Curve { degree: Box<Expr>, phi: Box<Expr>, psi: Box<Expr> },
    Cfg { points: Box<Expr>, curve: Box<Expr> },
    Tree(Box<TreeFields>),
    Target(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StmtKind {
    Let(String, Expr),
    SetGenerators(usize),
    AssertEq(Expr, Expr),
    AssertZero(Expr),
    AssertError(Expr),
    Expr(Expr),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Statement {
    pub kind: StmtKind,
    pub span: Span,
    /// Source text of the statement, trimmed.
    pub text: String,
}

pub type Script = Vec<Statement>;

pub fn parse(src: &str) -> Result<Script, ScriptError> {
    parse_in_scope(src, &mut HashSet::new())
}

/// Parse with names already bound by earlier input; new `let`s are added to
/// `scope` only when the whole input parses.
pub fn parse_in_scope(src: &str, scope: &mut HashSet<String>) -> Result<Script, ScriptError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        i: 0,
        src: src.chars().collect(),
        scope: scope.clone(),
    };
    let script = p.script()?;
    *scope = p.scope;
    Ok(script)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    src: Vec<char>,
    scope: HashSet<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.i].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Span, ScriptError> {
        if self.peek() == &tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("'{tok}'")))
        }
    }

    fn unexpected(&self, wanted: &str) -> ScriptError {
        let found = match self.peek() {
            Tok::Newline | Tok::Eof => self.peek().to_string(),
            t => format!("'{t}'"),
        };
        ScriptError::syntax(self.span(), format!("expected {wanted}, found {found}"))
    }

    fn ident(&mut self) -> Result<(String, Span), ScriptError> {
        match self.peek().clone() {
            Tok::Ident(name) => Ok((name, self.bump().span)),
            _ => Err(self.unexpected("an identifier")),
        }
    }

    /// `name =` inside a literal form.
    fn field(&mut self, name: &str) -> Result<(), ScriptError> {
        match self.peek() {
            Tok::Ident(s) if s == name => {
                self.bump();
                self.expect(Tok::Eq)?;
                Ok(())
            }
            _ => Err(self.unexpected(&format!("'{name} ='"))),
        }
    }

    fn script(&mut self) -> Result<Script, ScriptError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek(), Tok::Newline | Tok::Semi) {
                self.bump();
            }
            if self.peek() == &Tok::Eof {
                return Ok(out);
            }
            let start = self.toks[self.i].pos;
            let span = self.span();
            let kind = self.statement()?;
            let end = self.toks[self.i].pos;
            match self.peek() {
                Tok::Newline | Tok::Semi | Tok::Eof => {}
                _ => return Err(self.unexpected("end of statement")),
            }
            let text: String = self.src[start..end].iter().collect();
            out.push(Statement {
                kind,
                span,
                text: text.trim().to_string(),
            });
        }
    }

    fn statement(&mut self) -> Result<StmtKind, ScriptError> {
        let Tok::Ident(word) = self.peek().clone() else {
            return Ok(StmtKind::Expr(self.expr()?));
        };
        match word.as_str() {
            "let" => {
                self.bump();
                let (name, span) = self.ident()?;
                if builtins::is_reserved(&name) {
                    return Err(ScriptError::syntax(span, format!("'{name}' is reserved")));
                }
                self.expect(Tok::Eq)?;
                let e = self.expr()?;
                self.scope.insert(name.clone());
                Ok(StmtKind::Let(name, e))
            }
            "set" => {
                self.bump();
                match self.ident()? {
                    (w, _) if w == "generators" => {}
                    (_, span) => return Err(ScriptError::syntax(span, "expected 'generators'")),
                }
                let span = self.span();
                match self.bump().tok {
                    Tok::Number { num, den, imaginary: false } if den == BigInt::from(1) => {
                        let n = usize::try_from(&num)
                            .ok()
                            .filter(|n| *n <= 8)
                            .ok_or_else(|| ScriptError::syntax(span, "generator count must be 0..=8"))?;
                        Ok(StmtKind::SetGenerators(n))
                    }
                    _ => Err(ScriptError::syntax(span, "expected a generator count")),
                }
            }
            "assert_eq" | "assert_zero" | "assert_error" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let a = self.expr()?;
                let kind = if word == "assert_eq" {
                    self.expect(Tok::Comma)?;
                    StmtKind::AssertEq(a, self.expr()?)
                } else if word == "assert_zero" {
                    StmtKind::AssertZero(a)
                } else {
                    StmtKind::AssertError(a)
                };
                self.expect(Tok::RParen)?;
                Ok(kind)
            }
            _ => Ok(StmtKind::Expr(self.expr()?)),
        }
    }

    fn expr(&mut self) -> Result<Expr, ScriptError> {
        let mut left = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(left),
            };
            let span = self.bump().span;
            let right = self.term()?;
            left = binary(op, left, right, span);
        }
    }

    fn term(&mut self) -> Result<Expr, ScriptError> {
        let mut left = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(left),
            };
            let span = self.bump().span;
            let right = self.unary()?;
            left = binary(op, left, right, span);
        }
    }

    fn unary(&mut self) -> Result<Expr, ScriptError> {
        if self.peek() == &Tok::Minus {
            let span = self.bump().span;
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ScriptError> {
        let base = self.primary()?;
        if self.peek() == &Tok::Caret {
            let span = self.bump().span;
            let exp = self.unary()?;
            return Ok(binary(BinOp::Pow, base, exp, span));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ScriptError> {
        let span = self.span();
        let kind = match self.peek().clone() {
            Tok::Number { num, den, imaginary } => {
                self.bump();
                if den == BigInt::from(0) {
                    return Err(ScriptError::syntax(span, "zero denominator"));
                }
                ExprKind::Number { num, den, imaginary }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(e);
            }
            Tok::LBracket => self.bracket()?,
            Tok::Ident(name) => {
                self.bump();
                self.named(&name, span)?
            }
            _ => return Err(self.unexpected("an expression")),
        };
        Ok(Expr { kind, span })
    }

    /// `[]`, `[a, b, ...]` or `[z1 : z2 : theta]`.
    fn bracket(&mut self) -> Result<ExprKind, ScriptError> {
        self.expect(Tok::LBracket)?;
        if self.eat(&Tok::RBracket) {
            return Ok(ExprKind::List(vec![]));
        }
        let first = self.expr()?;
        if self.eat(&Tok::Colon) {
            let second = self.expr()?;
            self.expect(Tok::Colon)?;
            let third = self.expr()?;
            self.expect(Tok::RBracket)?;
            return Ok(ExprKind::Point(Box::new([first, second, third])));
        }
        let mut items = vec![first];
        while self.eat(&Tok::Comma) {
            items.push(self.expr()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(ExprKind::List(items))
    }

    fn named(&mut self, name: &str, span: Span) -> Result<ExprKind, ScriptError> {
        match name {
            "sc" => return Ok(ExprKind::Sc(self.matrix(3, span)?)),
            "sl2" => return Ok(ExprKind::Sl2(self.matrix(2, span)?)),
            "chart1" | "chart2" => {
                self.expect(Tok::LParen)?;
                let p = self.expr()?;
                self.expect(Tok::Semi)?;
                let pi = self.expr()?;
                self.expect(Tok::RParen)?;
                let chart = if name == "chart1" { 1 } else { 2 };
                return Ok(ExprKind::Chart(chart, Box::new(p), Box::new(pi)));
            }
            "sec" => {
                self.expect(Tok::LParen)?;
                let k = self.expr()?;
                self.expect(Tok::Semi)?;
                let mut coeffs = Vec::new();
                if self.peek() != &Tok::RParen {
                    coeffs.push(self.expr()?);
                    while self.eat(&Tok::Comma) {
                        coeffs.push(self.expr()?);
                    }
                }
                self.expect(Tok::RParen)?;
                return Ok(ExprKind::Sec(Box::new(k), coeffs));
            }
            "curve" => {
                self.expect(Tok::LParen)?;
                let degree = self.expr()?;
                self.expect(Tok::Semi)?;
                self.field("phi")?;
                let phi = self.expr()?;
                self.expect(Tok::Semi)?;
                self.field("psi")?;
                let psi = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(ExprKind::Curve {
                    degree: Box::new(degree),
                    phi: Box::new(phi),
                    psi: Box::new(psi),
                });
            }
            "cfg" => {
                self.expect(Tok::LParen)?;
                self.field("points")?;
                let points = self.expr()?;
                self.expect(Tok::Semi)?;
                self.field("curve")?;
                let curve = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(ExprKind::Cfg {
                    points: Box::new(points),
                    curve: Box::new(curve),
                });
            }
            "tree" => {
                self.expect(Tok::LParen)?;
                let mut fields = Vec::with_capacity(6);
                for (i, f) in ["degrees", "edges", "marks", "nodal", "marked", "curves"].iter().enumerate() {
                    if i > 0 {
                        self.expect(Tok::Semi)?;
                    }
                    self.field(f)?;
                    fields.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                let mut it = fields.into_iter();
                let mut next = || it.next().unwrap();
                return Ok(ExprKind::Tree(Box::new(TreeFields {
                    degrees: next(),
                    edges: next(),
                    marks: next(),
                    nodal: next(),
                    marked: next(),
                    curves: next(),
                })));
            }
            "target" => {
                self.expect(Tok::LParen)?;
                let x = self.expr()?;
                self.expect(Tok::Semi)?;
                let y = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(ExprKind::Target(Box::new(x), Box::new(y)));
            }
            _ => {}
        }
        if let Some((lo, hi)) = builtins::arity(name) {
            if self.peek() != &Tok::LParen {
                return Err(ScriptError::syntax(span, format!("'{name}' is a function and needs arguments")));
            }
            let args = self.call_args()?;
            if args.len() < lo || args.len() > hi {
                let want = if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") };
                return Err(ScriptError::new(
                    ErrorKind::Arity,
                    span,
                    format!("'{name}' takes {want} argument(s), got {}", args.len()),
                ));
            }
            return Ok(ExprKind::Call(name.to_string(), args));
        }
        if builtins::KEYWORDS.contains(&name) {
            return Err(ScriptError::syntax(span, format!("'{name}' cannot start an expression")));
        }
        if self.peek() == &Tok::LParen {
            return Err(ScriptError::new(ErrorKind::Scope, span, format!("no function named '{name}'")));
        }
        if builtins::is_constant(name) {
            return Ok(ExprKind::Const(name.to_string()));
        }
        if self.scope.contains(name) {
            return Ok(ExprKind::Var(name.to_string()));
        }
        Err(ScriptError::new(ErrorKind::Scope, span, format!("'{name}' is not bound")))
    }

    fn call_args(&mut self) -> Result<Vec<Expr>, ScriptError> {
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(args);
        }
        args.push(self.expr()?);
        while self.eat(&Tok::Comma) {
            args.push(self.expr()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    /// `[[..], [..]]` with exactly `size` rows of `size` entries.
    fn matrix(&mut self, size: usize, span: Span) -> Result<Vec<Vec<Expr>>, ScriptError> {
        let shape = |what: String| ScriptError::new(ErrorKind::Shape, span, what);
        self.expect(Tok::LBracket)?;
        let mut rows = Vec::new();
        loop {
            self.expect(Tok::LBracket)?;
            let mut row = vec![self.expr()?];
            while self.eat(&Tok::Comma) {
                row.push(self.expr()?);
            }
            self.expect(Tok::RBracket)?;
            if row.len() != size {
                return Err(shape(format!(
                    "row {} has {} entries, a {size}x{size} matrix needs {size}",
                    rows.len() + 1,
                    row.len()
                )));
            }
            rows.push(row);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        if rows.len() != size {
            return Err(shape(format!("{} rows given, a {size}x{size} matrix needs {size}", rows.len())));
        }
        Ok(rows)
    }
}

fn binary(op: BinOp, l: Expr, r: Expr, span: Span) -> Expr {
    Expr {
        kind: ExprKind::Binary(op, Box::new(l), Box::new(r)),
        span,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(src: &str) -> ErrorKind {
        parse(src).unwrap_err().kind
    }

    #[test]
    fn statements_and_separators() {
        let s = parse("let m = susy(g1, g2); assert_zero(check(m))").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].text, "let m = susy(g1, g2)");
        assert!(matches!(s[1].kind, StmtKind::AssertZero(_)));
        assert_eq!(parse("\n# only a comment\n\n").unwrap().len(), 0);
    }

    #[test]
    fn literals_span_lines_inside_brackets() {
        let s = parse("sc[[1,0,0],\n  [0,1,0],\n  [0,0,1]]").unwrap();
        assert!(matches!(s[0].kind, StmtKind::Expr(Expr { kind: ExprKind::Sc(_), .. })));
    }

    #[test]
    fn shape_errors() {
        assert_eq!(kind("sc[[1,0],[0,1]]"), ErrorKind::Shape);
        assert_eq!(kind("sl2[[1,0,0],[0,1,0]]"), ErrorKind::Shape);
        assert_eq!(kind("sl2[[1,0]]"), ErrorKind::Shape);
    }

    #[test]
    fn scope_and_arity() {
        assert_eq!(kind("x + 1"), ErrorKind::Scope);
        assert_eq!(kind("let x = x"), ErrorKind::Scope);
        assert_eq!(kind("frobnicate(1)"), ErrorKind::Scope);
        assert_eq!(kind("mul(identity)"), ErrorKind::Arity);
        assert_eq!(kind("let mul = 2"), ErrorKind::Syntax);
        assert!(parse("let x = 1\nx + g9").is_err());
    }

    #[test]
    fn error_positions() {
        let e = parse("let a = 1\nlet b = (a + ]").unwrap_err();
        assert_eq!(e.span, Span { line: 2, col: 14 });
        assert_eq!(e.kind, ErrorKind::Syntax);
    }

    #[test]
    fn precedence() {
        // -z^2 is -(z^2), and 2^3^2 nests to the right
        let s = parse("-z^2").unwrap();
        let StmtKind::Expr(e) = &s[0].kind else { panic!() };
        assert!(matches!(&e.kind, ExprKind::Neg(inner) if matches!(inner.kind, ExprKind::Binary(BinOp::Pow, _, _))));
        let s = parse("1 - 2 * 3").unwrap();
        let StmtKind::Expr(e) = &s[0].kind else { panic!() };
        assert!(matches!(&e.kind, ExprKind::Binary(BinOp::Sub, _, r) if matches!(r.kind, ExprKind::Binary(BinOp::Mul, _, _))));
    }

    #[test]
    fn rational_and_imaginary_tokens() {
        let s = parse("3/4i").unwrap();
        let StmtKind::Expr(e) = &s[0].kind else { panic!() };
        assert!(matches!(&e.kind, ExprKind::Number { imaginary: true, .. }));
        assert!(parse("1/0").is_err());
    }
}
