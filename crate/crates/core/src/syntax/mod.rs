//! ASCII concrete syntax for terms, equations and conditional formulas.
//!
//! Precedence, tightest first: postfix `^-1`, `^~`, `^2`; prefix `-`;
//! `*`, `/`; `+`, `-`. Binary operators associate to the left. `p - q`,
//! `p / q` and `p^2` are abbreviations and are expanded while parsing, as are
//! decimal literals above `1`, which become numerals. Conditional formulas are
//! written `x != 0, y = 0 ==> lhs = rhs`.
//!
//! Formula files hold one formula per line, optionally prefixed by
//! `label:`. Blank lines and text after `#` are ignored.

mod lexer;
mod parser;
mod printer;

use thiserror::Error;

use crate::terms::{ConditionalFormula, Equation, Signature, Term};
use lexer::Token;
use parser::Parser;

pub use parser::MAX_NUMERAL;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("lexical error at {pos}: {message}")]
    Lex { pos: usize, message: String },
    #[error("parse error at {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("`{symbol}` at {pos} is not part of signature {signature}")]
    IllegalSymbol {
        pos: usize,
        symbol: String,
        signature: Signature,
    },
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<SyntaxError>,
    },
}

/// Result of [`parse`], which decides the category from the text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Term(Term),
    Equation(Equation),
    Formula(ConditionalFormula),
}

pub fn parse_term(text: &str, sig: Signature) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.expr()?;
    p.expect_end()?;
    Ok(t)
}

pub fn parse_equation(text: &str, sig: Signature) -> Result<Equation, SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let eq = p.equation()?;
    p.expect_end()?;
    Ok(eq)
}

/// Parses a conditional formula. A bare equation or inequation is accepted
/// and yields a formula without antecedents.
pub fn parse_formula(text: &str, sig: Signature) -> Result<ConditionalFormula, SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses a term, an equation, or a conditional formula, whichever the text
/// is.
pub fn parse(text: &str, sig: Signature) -> Result<Parsed, SyntaxError> {
    let mut p = Parser::new(text, sig)?;
    let conditional = p.has_token(|t| matches!(t, Token::Implies | Token::Ne | Token::Comma));
    let equational = p.has_token(|t| matches!(t, Token::Eq));
    let parsed = if conditional {
        Parsed::Formula(p.formula()?)
    } else if equational {
        Parsed::Equation(p.equation()?)
    } else {
        Parsed::Term(p.expr()?)
    };
    p.expect_end()?;
    Ok(parsed)
}

/// One entry of a formula file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileEntry {
    pub line: usize,
    pub label: Option<String>,
    pub formula: ConditionalFormula,
}

pub fn parse_formula_file(text: &str, sig: Signature) -> Result<Vec<FileEntry>, SyntaxError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (label, body) = match content.split_once(':') {
            Some((l, b)) => (Some(l.trim().to_string()), b),
            None => (None, content),
        };
        let formula = parse_formula(body, sig).map_err(|e| SyntaxError::Line {
            line,
            source: Box::new(e),
        })?;
        out.push(FileEntry {
            line,
            label,
            formula,
        });
    }
    Ok(out)
}
