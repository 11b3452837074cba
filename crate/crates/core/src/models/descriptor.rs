//! Model descriptors: a small textual language naming models.
//!
//! ```text
//! desc := rat:N | gf:P:K | prod(desc,desc) | reto(desc,N) | invo(desc)
//!       | mix(desc,N) | mixmd(desc)
//! ```
//!
//! `rat:0` and `gf:P:0` are read over the meadow signature, other bases over
//! the non-involutive one. `reto` and `invo` check that their argument is a
//! meadow (resp. non-involutive meadow) before transforming it.

use super::model::{
    expand_with_md, expand_with_nimd, gf_totalized, involutize, product, rational_totalized,
    retotalize, Model, Precondition,
};
use super::ModelError;
use crate::terms::Signature;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> ModelError {
        ModelError::Descriptor {
            text: self.text.to_string(),
            pos: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ModelError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn number(&mut self) -> Result<u64, ModelError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err("expected a number"));
        }
        let n = rest[..len].parse().map_err(|_| self.err("number too large"))?;
        self.pos += len;
        Ok(n)
    }

    fn desc(&mut self) -> Result<Model, ModelError> {
        let default_sig = |k: u64| if k == 0 { Signature::Md } else { Signature::Nimd };
        if self.eat("rat:") {
            let n = self.number()?;
            Ok(rational_totalized(default_sig(n), n))
        } else if self.eat("gf:") {
            let p = self.number()?;
            self.expect(":")?;
            let k = self.number()?;
            gf_totalized(p, k, default_sig(k))
        } else if self.eat("prod(") {
            let a = self.desc()?;
            self.expect(",")?;
            let b = self.desc()?;
            self.expect(")")?;
            product(&a, &b.read_as(a.signature())?)
        } else if self.eat("reto(") {
            let a = self.desc()?;
            self.expect(",")?;
            let n = self.number()?;
            self.expect(")")?;
            retotalize(&a, n, Precondition::Check)
        } else if self.eat("invo(") {
            let a = self.desc()?;
            self.expect(")")?;
            involutize(&a, Precondition::Check)
        } else if self.eat("mixmd(") {
            let a = self.desc()?;
            self.expect(")")?;
            expand_with_md(&a, Precondition::Check)
        } else if self.eat("mix(") {
            let a = self.desc()?;
            self.expect(",")?;
            let n = self.number()?;
            self.expect(")")?;
            expand_with_nimd(&a, n, Precondition::Check)
        } else {
            Err(self.err("expected rat:, gf:, prod(, reto(, invo(, mix( or mixmd("))
        }
    }
}

/// Builds the model a descriptor names.
pub fn parse_descriptor(text: &str) -> Result<Model, ModelError> {
    let mut c = Cursor { text, pos: 0 };
    let m = c.desc()?;
    c.skip_ws();
    if c.pos != text.len() {
        return Err(c.err("trailing input"));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Element;
    use crate::terms::InverseSymbol;

    #[test]
    fn base_descriptors() {
        let m = parse_descriptor("rat:0").unwrap();
        assert_eq!(m.signature(), Signature::Md);
        let m = parse_descriptor("rat:3").unwrap();
        assert_eq!(m.signature(), Signature::Nimd);
        assert_eq!(m.invert(InverseSymbol::Nimd, &Element::integer(0)), Some(Element::integer(3)));
        let m = parse_descriptor("gf:7:2").unwrap();
        assert_eq!(m.size(), Some(7));
        assert_eq!(m.descriptor(), "gf:7:2");
    }

    #[test]
    fn composite_descriptors() {
        let m = parse_descriptor("reto(prod(gf:2:0, gf:3:0), 1)").unwrap();
        assert_eq!(m.size(), Some(6));
        assert_eq!(m.signature(), Signature::Nimd);
        assert_eq!(m.descriptor(), "reto(prod(gf:2:0,gf:3:0),1)");
        let m = parse_descriptor("invo(gf:5:1)").unwrap();
        assert_eq!(m.signature(), Signature::Md);
        let m = parse_descriptor("mix(gf:5:0,1)").unwrap();
        assert_eq!(m.signature(), Signature::Mixed);
        let m = parse_descriptor("mixmd(gf:5:1)").unwrap();
        assert_eq!(m.signature(), Signature::Mixed);
        assert!(!parse_descriptor("prod(rat:0,gf:2:0)").unwrap().is_finite());
    }

    #[test]
    fn descriptor_errors() {
        for bad in ["", "rat", "gf:4:0", "gf:5", "prod(gf:2:0)", "rat:0 x", "reto(gf:3:1,1)", "foo:1"] {
            assert!(parse_descriptor(bad).is_err(), "{bad}");
        }
        assert!(matches!(
            parse_descriptor("gf:5:x"),
            Err(ModelError::Descriptor { pos: 5, .. })
        ));
    }
}
