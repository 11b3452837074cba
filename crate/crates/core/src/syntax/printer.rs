use std::fmt::{self, Display, Formatter, Write};

use crate::terms::{ConditionalFormula, Equation, Literal, Term};

// Binding strength, loosest first.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const PREFIX: u8 = 3;
const POSTFIX: u8 = 4;
const ATOM: u8 = 5;

fn level(t: &Term) -> u8 {
    match t {
        Term::Add(..) => SUM,
        Term::Mul(..) => PRODUCT,
        Term::Neg(_) => PREFIX,
        Term::InvMd(_) | Term::InvNimd(_) => POSTFIX,
        Term::Zero | Term::One | Term::Var(_) => ATOM,
    }
}

fn write_wrapped(f: &mut Formatter<'_>, t: &Term, parens: bool) -> fmt::Result {
    if parens {
        f.write_char('(')?;
        write_term(f, t)?;
        f.write_char(')')
    } else {
        write_term(f, t)
    }
}

/// Operand of a binary operator at `op_level`. Operands of the same or looser
/// level are parenthesized on either side, so nested sums and products keep
/// their grouping visible.
fn write_operand(f: &mut Formatter<'_>, t: &Term, op_level: u8) -> fmt::Result {
    write_wrapped(f, t, level(t) <= op_level)
}

pub(crate) fn write_term(f: &mut Formatter<'_>, t: &Term) -> fmt::Result {
    match t {
        Term::Zero => f.write_char('0'),
        Term::One => f.write_char('1'),
        Term::Var(v) => f.write_str(v),
        Term::Add(a, b) => {
            write_operand(f, a, SUM)?;
            match b.as_ref() {
                Term::Neg(c) => {
                    f.write_str(" - ")?;
                    write_operand(f, c, SUM)
                }
                _ => {
                    f.write_str(" + ")?;
                    write_operand(f, b, SUM)
                }
            }
        }
        Term::Mul(a, b) => {
            write_operand(f, a, PRODUCT)?;
            f.write_str(" * ")?;
            write_operand(f, b, PRODUCT)
        }
        Term::Neg(a) => {
            f.write_char('-')?;
            write_wrapped(f, a, level(a) <= PREFIX)
        }
        Term::InvMd(a) | Term::InvNimd(a) => {
            write_wrapped(f, a, level(a) < ATOM)?;
            f.write_str(if matches!(t, Term::InvMd(_)) { "^-1" } else { "^~" })
        }
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_term(f, self)
    }
}

impl Display for Equation {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl Display for Literal {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.relation.token(), self.rhs)
    }
}

impl Display for ConditionalFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for (i, a) in self.antecedents.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.antecedents.is_empty() {
            f.write_str(" ==> ")?;
        }
        write!(f, "{}", self.conclusion)
    }
}
