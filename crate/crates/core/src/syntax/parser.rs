use super::lexer::{tokenize, Spanned, Token};
use super::SyntaxError;
use crate::terms::{
    ConditionalFormula, Equation, InverseSymbol, Literal, Relation, Signature, Term,
};

/// Decimal literals above this are rejected rather than expanded into huge
/// numerals.
pub const MAX_NUMERAL: u64 = 10_000;

pub(crate) struct Parser {
    tokens: Vec<Spanned>,
    idx: usize,
    end: usize,
    sig: Signature,
}

impl Parser {
    pub(crate) fn new(text: &str, sig: Signature) -> Result<Self, SyntaxError> {
        Ok(Parser {
            tokens: tokenize(text)?,
            idx: 0,
            end: text.len(),
            sig,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx).map(|s| &s.token)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.idx).map_or(self.end, |s| s.pos)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.idx).cloned();
        self.idx += 1;
        t
    }

    fn unexpected(&self, expected: &str) -> SyntaxError {
        let found = self
            .peek()
            .map_or_else(|| "end of input".to_string(), |t| format!("`{}`", t.describe()));
        SyntaxError::Parse {
            pos: self.pos(),
            message: format!("expected {expected}, found {found}"),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.idx >= self.tokens.len()
    }

    pub(crate) fn expect_end(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    pub(crate) fn has_token(&self, pred: impl Fn(&Token) -> bool) -> bool {
        self.tokens.iter().any(|s| pred(&s.token))
    }

    fn inverse(&self, sym: InverseSymbol, pos: usize, arg: Term) -> Result<Term, SyntaxError> {
        if self.sig.admits_symbol(sym) {
            Ok(Term::inv(sym, arg))
        } else {
            Err(SyntaxError::IllegalSymbol {
                pos,
                symbol: sym.token().to_string(),
                signature: self.sig,
            })
        }
    }

    pub(crate) fn formula(&mut self) -> Result<ConditionalFormula, SyntaxError> {
        let mut literals = vec![self.literal()?];
        while self.peek() == Some(&Token::Comma) {
            self.bump();
            literals.push(self.literal()?);
        }
        if self.peek() == Some(&Token::Implies) {
            self.bump();
            let conclusion = self.literal()?;
            return Ok(ConditionalFormula::new(literals, conclusion));
        }
        if literals.len() > 1 {
            return Err(self.unexpected("`==>` after antecedents"));
        }
        let conclusion = literals.pop().expect("one literal");
        Ok(ConditionalFormula::new(Vec::new(), conclusion))
    }

    pub(crate) fn literal(&mut self) -> Result<Literal, SyntaxError> {
        let lhs = self.expr()?;
        let relation = match self.peek() {
            Some(Token::Eq) => Relation::Eq,
            Some(Token::Ne) => Relation::Ne,
            _ => return Err(self.unexpected("`=` or `!=`")),
        };
        self.bump();
        let rhs = self.expr()?;
        Ok(Literal::new(lhs, relation, rhs))
    }

    pub(crate) fn equation(&mut self) -> Result<Equation, SyntaxError> {
        let lhs = self.expr()?;
        if self.peek() != Some(&Token::Eq) {
            return Err(self.unexpected("`=`"));
        }
        self.bump();
        let rhs = self.expr()?;
        Ok(Equation::new(lhs, rhs))
    }

    pub(crate) fn expr(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = Term::add(lhs, self.product()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = Term::sub(lhs, self.product()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    lhs = Term::mul(lhs, self.unary()?);
                }
                Some(Token::Slash) => {
                    let pos = self.pos();
                    self.bump();
                    let rhs = self.unary()?;
                    let sym = self.sig.division_symbol().ok_or(SyntaxError::IllegalSymbol {
                        pos,
                        symbol: "/".into(),
                        signature: self.sig,
                    })?;
                    lhs = Term::mul(lhs, self.inverse(sym, pos, rhs)?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Term, SyntaxError> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            return Ok(Term::neg(self.unary()?));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Term, SyntaxError> {
        let mut t = self.atom()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Token::InvMd) => {
                    self.bump();
                    t = self.inverse(InverseSymbol::Md, pos, t)?;
                }
                Some(Token::InvNimd) => {
                    self.bump();
                    t = self.inverse(InverseSymbol::Nimd, pos, t)?;
                }
                Some(Token::Square) => {
                    self.bump();
                    t = Term::mul(t.clone(), t);
                }
                _ => return Ok(t),
            }
        }
    }

    fn atom(&mut self) -> Result<Term, SyntaxError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.bump();
                match n {
                    0 => Ok(Term::Zero),
                    1 => Ok(Term::One),
                    n if n <= MAX_NUMERAL => Ok(Term::numeral(n)),
                    _ => Err(SyntaxError::Parse {
                        pos,
                        message: format!("numeral {n} exceeds {MAX_NUMERAL}"),
                    }),
                }
            }
            Some(Token::Ident(name)) => {
                self.bump();
                Ok(Term::var(&name))
            }
            Some(Token::LParen) => {
                self.bump();
                let t = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}
