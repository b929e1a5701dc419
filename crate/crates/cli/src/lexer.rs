//! Tokens for the script language. Newlines are significant only outside
//! brackets so literals may span lines.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{ScriptError, Span};

#[derive(Clone, PartialEq, Debug)]
pub enum Tok {
    /// `p`, `p/q`, optionally with an `i` suffix (`3/4i` is `(3/4)·i`).
    Number { num: BigInt, den: BigInt, imaginary: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Eq,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number { num, den, imaginary } => {
                write!(f, "{num}")?;
                if *den != BigInt::from(1) {
                    write!(f, "/{den}")?;
                }
                if *imaginary {
                    f.write_str("i")?;
                }
                Ok(())
            }
            Tok::Ident(s) => f.write_str(s),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Slash => f.write_str("/"),
            Tok::Caret => f.write_str("^"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::LBracket => f.write_str("["),
            Tok::RBracket => f.write_str("]"),
            Tok::Comma => f.write_str(","),
            Tok::Colon => f.write_str(":"),
            Tok::Semi => f.write_str(";"),
            Tok::Eq => f.write_str("="),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
    /// Char offset of the first character.
    pub pos: usize,
}

pub fn lex(src: &str) -> Result<Vec<Token>, ScriptError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut depth = 0i32;
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let mut advance = 1;
        match c {
            '\n' => {
                if depth == 0 {
                    out.push(Token { tok: Tok::Newline, span, pos: i });
                }
                line += 1;
                col = 0;
            }
            '#' => {
                while i + advance < chars.len() && chars[i + advance] != '\n' {
                    advance += 1;
                }
            }
            c if c.is_whitespace() => {}
            c if c.is_ascii_digit() => {
                let (tok, used) = number(&chars[i..]);
                out.push(Token { tok, span, pos: i });
                advance = used;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i + advance < chars.len() && (chars[i + advance].is_alphanumeric() || chars[i + advance] == '_') {
                    advance += 1;
                }
                let word: String = chars[i..i + advance].iter().collect();
                out.push(Token { tok: Tok::Ident(word), span, pos: i });
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    '=' => Tok::Eq,
                    other => return Err(ScriptError::syntax(span, format!("unexpected character '{other}'"))),
                };
                match tok {
                    Tok::LParen | Tok::LBracket => depth += 1,
                    Tok::RParen | Tok::RBracket => depth -= 1,
                    _ => {}
                }
                out.push(Token { tok, span, pos: i });
            }
        }
        i += advance;
        col += advance;
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, col },
        pos: chars.len(),
    });
    Ok(out)
}

fn digits(chars: &[char], from: usize) -> usize {
    chars[from..].iter().take_while(|c| c.is_ascii_digit()).count()
}

/// `p`, `p/q` (no spaces), then an optional `i` not followed by a word
/// character.
fn number(chars: &[char]) -> (Tok, usize) {
    let parse = |a: usize, b: usize| chars[a..b].iter().collect::<String>().parse::<BigInt>().unwrap();
    let n1 = digits(chars, 0);
    let num = parse(0, n1);
    let mut used = n1;
    let mut den = BigInt::from(1);
    if chars.get(used) == Some(&'/') {
        let n2 = digits(chars, used + 1);
        if n2 > 0 {
            den = parse(used + 1, used + 1 + n2);
            used += 1 + n2;
        }
    }
    let word_char = |c: Option<&char>| c.is_some_and(|c| c.is_alphanumeric() || *c == '_');
    let imaginary = chars.get(used) == Some(&'i') && !word_char(chars.get(used + 1));
    if imaginary {
        used += 1;
    }
    (Tok::Number { num, den, imaginary }, used)
}
