use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// A carrier element of one of the concrete models.
///
/// Ring operations are determined by the element shape alone: rationals use
/// exact field arithmetic, residues arithmetic modulo their modulus, and pairs
/// act componentwise. Only the inverses vary between models.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Always in lowest terms with a positive denominator.
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn rational(num: i64, den: i64) -> Element {
        Element::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn integer(n: i64) -> Element {
        Element::rational(n, 1)
    }

    pub fn residue(value: i64, modulus: u64) -> Element {
        Element::Residue {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Box::new(a), Box::new(b))
    }

    /// The additive identity of the same shape.
    pub fn zero_like(&self) -> Element {
        match self {
            Element::Rational(_) => Element::Rational(BigRational::zero()),
            Element::Residue { modulus, .. } => Element::Residue {
                value: 0,
                modulus: *modulus,
            },
            Element::Pair(a, b) => Element::pair(a.zero_like(), b.zero_like()),
        }
    }

    pub fn one_like(&self) -> Element {
        match self {
            Element::Rational(_) => Element::Rational(BigRational::one()),
            Element::Residue { modulus, .. } => Element::Residue {
                value: 1 % modulus,
                modulus: *modulus,
            },
            Element::Pair(a, b) => Element::pair(a.one_like(), b.one_like()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Rational(q) => q.is_zero(),
            Element::Residue { value, .. } => *value == 0,
            Element::Pair(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    /// # Panics
    /// If the operands come from different carriers.
    pub fn add(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a + b),
            (
                Element::Residue { value: a, modulus },
                Element::Residue { value: b, modulus: m2 },
            ) if modulus == m2 => Element::Residue {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            (Element::Pair(a1, b1), Element::Pair(a2, b2)) => {
                Element::pair(a1.add(a2), b1.add(b2))
            }
            _ => incompatible(self, other),
        }
    }

    /// # Panics
    /// If the operands come from different carriers.
    pub fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Rational(a), Element::Rational(b)) => Element::Rational(a * b),
            (
                Element::Residue { value: a, modulus },
                Element::Residue { value: b, modulus: m2 },
            ) if modulus == m2 => Element::Residue {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            (Element::Pair(a1, b1), Element::Pair(a2, b2)) => {
                Element::pair(a1.mul(a2), b1.mul(b2))
            }
            _ => incompatible(self, other),
        }
    }

    pub fn neg(&self) -> Element {
        match self {
            Element::Rational(a) => Element::Rational(-a),
            Element::Residue { value, modulus } => Element::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Element::Pair(a, b) => Element::pair(a.neg(), b.neg()),
        }
    }

    /// Field inverse of a nonzero rational or residue. `None` for zero and
    /// for pairs, which are not field elements.
    pub fn field_inverse(&self) -> Option<Element> {
        match self {
            Element::Rational(q) if !q.is_zero() => Some(Element::Rational(q.recip())),
            Element::Residue { value, modulus } if *value != 0 => Some(Element::Residue {
                value: residue_inverse(*value, *modulus)?,
                modulus: *modulus,
            }),
            _ => None,
        }
    }

    /// Parses an element with the same shape as `self`: `p/q` or `p` for
    /// rationals, an integer (reduced modulo the modulus) for residues, and
    /// `(a, b)` for pairs.
    pub fn parse_like(&self, text: &str) -> Result<Element, String> {
        let text = text.trim();
        match self {
            Element::Rational(_) => {
                let q = if text.contains('/') {
                    BigRational::from_str(text).map_err(|e| e.to_string())?
                } else {
                    BigRational::from_integer(BigInt::from_str(text).map_err(|e| e.to_string())?)
                };
                Ok(Element::Rational(q))
            }
            Element::Residue { modulus, .. } => {
                let v = BigInt::from_str(text).map_err(|e| e.to_string())?;
                let m = BigInt::from(*modulus);
                let r = ((v % &m) + &m) % &m;
                let value = u64::try_from(r).map_err(|e| e.to_string())?;
                Ok(Element::Residue {
                    value,
                    modulus: *modulus,
                })
            }
            Element::Pair(a, b) => {
                let inner = text
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| format!("expected a pair `(a, b)`, found `{text}`"))?;
                let split = top_level_comma(inner)
                    .ok_or_else(|| format!("expected a pair `(a, b)`, found `{text}`"))?;
                Ok(Element::pair(
                    a.parse_like(&inner[..split])?,
                    b.parse_like(&inner[split + 1..])?,
                ))
            }
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

#[cold]
fn incompatible(a: &Element, b: &Element) -> ! {
    panic!("elements {a} and {b} belong to different carriers")
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `x` modulo the prime `p` via `x^(p-2)`. `None` when
/// `x ≡ 0 (mod p)`.
pub fn residue_inverse(x: u64, p: u64) -> Option<u64> {
    let x = x % p;
    (x != 0).then(|| pow_mod(x, p - 2, p))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Element::Residue { value, .. } => write!(f, "{value}"),
            Element::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    /// Exhaustive search for `y` with `x * y ≡ 1 (mod p)`.
    fn inverse_by_search(x: u64, p: u64) -> Option<u64> {
        (1..p).find(|y| (x * y) % p == 1)
    }

    #[test]
    fn exponentiation_matches_search_for_small_primes() {
        for p in (2..=31).filter(|&p| is_prime(p)) {
            assert_eq!(residue_inverse(0, p), None);
            for x in 1..p {
                assert_eq!(residue_inverse(x, p), inverse_by_search(x, p), "{x} mod {p}");
            }
        }
        // frozen from the search oracle
        assert_eq!(residue_inverse(2, 5), Some(3));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..32).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]);
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = Element::rational(2, 4);
        let b = Element::rational(-3, 9);
        let check = |e: &Element| match e {
            Element::Rational(q) => {
                assert!(q.denom() > &BigInt::zero());
                assert!(q.numer().gcd(q.denom()).is_one());
            }
            _ => unreachable!(),
        };
        for e in [a.add(&b), a.mul(&b), b.neg(), a.field_inverse().unwrap(), b.field_inverse().unwrap()] {
            check(&e);
        }
        assert_eq!(Element::rational(2, 3).field_inverse(), Some(Element::rational(3, 2)));
        assert_eq!(a.to_string(), "1/2");
        assert_eq!(b.field_inverse().unwrap().to_string(), "-3");
    }

    #[test]
    fn residue_arithmetic() {
        let two = Element::residue(2, 5);
        let four = Element::residue(4, 5);
        assert_eq!(two.add(&four), Element::residue(1, 5));
        assert_eq!(two.mul(&four), Element::residue(3, 5));
        assert_eq!(two.neg(), Element::residue(3, 5));
        assert_eq!(Element::residue(0, 5).neg(), Element::residue(0, 5));
        assert_eq!(Element::residue(-1, 7), Element::residue(6, 7));
    }

    #[test]
    fn pairs_act_componentwise() {
        let p = Element::pair(Element::residue(1, 2), Element::residue(2, 3));
        assert_eq!(p.mul(&p), Element::pair(Element::residue(1, 2), Element::residue(1, 3)));
        assert_eq!(p.to_string(), "(1, 2)");
        assert!(!p.is_zero());
        assert!(p.zero_like().is_zero());
        assert_eq!(p.field_inverse(), None);
    }

    #[test]
    fn parsing_follows_the_template() {
        let q = Element::integer(0);
        assert_eq!(q.parse_like("3/6").unwrap(), Element::rational(1, 2));
        assert_eq!(q.parse_like("-4").unwrap(), Element::integer(-4));
        assert!(q.parse_like("1/0").is_err());
        let r = Element::residue(0, 5);
        assert_eq!(r.parse_like("7").unwrap(), Element::residue(2, 5));
        assert_eq!(r.parse_like("-1").unwrap(), Element::residue(4, 5));
        let p = Element::pair(Element::residue(0, 2), Element::pair(Element::residue(0, 3), q));
        assert_eq!(
            p.parse_like("(1, (2, 1/3))").unwrap(),
            Element::pair(Element::residue(1, 2), Element::pair(Element::residue(2, 3), Element::rational(1, 3)))
        );
        assert!(p.parse_like("1").is_err());
    }

    #[test]
    #[should_panic(expected = "different carriers")]
    fn mixing_carriers_panics() {
        Element::residue(1, 3).add(&Element::residue(1, 5));
    }
}
