//! Sparse integer polynomials in the sixteen factorization parameters `a`..`p`.
//!
//! Terms live in a `BTreeMap` keyed by dense exponent vectors, so the zero
//! coefficient is never stored and structural equality is mathematical
//! equality. Text output lists terms in descending lexicographic order of
//! exponent vectors, e.g. `a^2 + 2*a*b + b^2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::arith::Rational;
use crate::error::{Error, Result};

pub const NVARS: usize = 16;
pub const VAR_NAMES: [char; NVARS] = [
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p',
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u8; NVARS]);

impl Monomial {
    pub fn var(idx: usize) -> Self {
        let mut e = [0; NVARS];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0u8; NVARS];
        for (k, slot) in e.iter_mut().enumerate() {
            *slot = self.0[k]
                .checked_add(other.0[k])
                .expect("exponent overflow");
        }
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn eval(&self, v: &[Rational; NVARS]) -> Rational {
        let mut acc = Rational::one();
        for (k, &e) in self.0.iter().enumerate() {
            if e > 0 {
                acc *= num_traits::pow(v[k].clone(), e as usize);
            }
        }
        acc
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", VAR_NAMES[k])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly16 {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly16 {
    pub fn zero() -> Self {
        Poly16::default()
    }

    pub fn one() -> Self {
        Poly16::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly16::monomial(c, Monomial::default())
    }

    pub fn monomial(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly16 { terms }
    }

    /// The variable with the given letter (`'a'..='p'`).
    pub fn var(name: char) -> Self {
        let idx = var_index(name).unwrap_or_else(|| panic!("unknown variable {name:?}"));
        Poly16::monomial(1, Monomial::var(idx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Poly16::zero();
        }
        Poly16 {
            terms: self.terms.iter().map(|(m, x)| (*m, x * &c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Poly16::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, v: &[Rational; NVARS]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| m.eval(v) * Rational::from_integer(c.clone()))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// True if every coefficient is positive.
    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    /// SHA-256 of the canonical text form, hex encoded.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_string().as_bytes()))
    }
}

pub fn var_index(name: char) -> Option<usize> {
    VAR_NAMES.iter().position(|&c| c == name)
}

pub fn poly_add(p: &Poly16, q: &Poly16) -> Poly16 {
    p + q
}

pub fn poly_mul(p: &Poly16, q: &Poly16) -> Poly16 {
    p * q
}

pub fn poly_eval(p: &Poly16, v: &[Rational; NVARS]) -> Rational {
    p.eval(v)
}

/// Returns whether `p == q`, together with `p - q`.
pub fn poly_equal(p: &Poly16, q: &Poly16) -> (bool, Poly16) {
    let diff = p - q;
    (diff.is_zero(), diff)
}

impl Add for &Poly16 {
    type Output = Poly16;
    fn add(self, rhs: &Poly16) -> Poly16 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly16 {
    type Output = Poly16;
    fn sub(self, rhs: &Poly16) -> Poly16 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &Poly16 {
    type Output = Poly16;
    fn neg(self) -> Poly16 {
        Poly16 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Poly16 {
    type Output = Poly16;
    fn mul(self, rhs: &Poly16) -> Poly16 {
        let mut out = Poly16::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly16 {
            type Output = Poly16;
            fn $f(self, rhs: Poly16) -> Poly16 {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = m.degree() == 0;
            if constant {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly16 {
    type Err = Error;

    /// Parses the text form written by `Display`; also accepts `·` as the
    /// product sign and repeated variables within a term.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '·' { '*' } else { c })
            .collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // split into signed terms
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(i > 0 && cur.ends_with('^')) {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if i > 0 {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {s:?}")));
        }
        pieces.push((neg, cur));

        let mut out = Poly16::zero();
        for (neg, term) in pieces {
            let mut coeff = BigInt::one();
            let mut mono = Monomial::default();
            for factor in term.split('*') {
                let bad = || Error::Parse(format!("bad factor {factor:?} in {term:?}"));
                let mut chars = factor.chars();
                let first = chars.next().ok_or_else(bad)?;
                if first.is_ascii_digit() {
                    coeff *= BigInt::from_str(factor).map_err(|_| bad())?;
                    continue;
                }
                let idx = var_index(first).ok_or_else(bad)?;
                let rest = chars.as_str();
                let exp: u8 = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(bad)?
                };
                mono.0[idx] = mono.0[idx].checked_add(exp).ok_or_else(bad)?;
            }
            out.add_term(mono, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl Serialize for Poly16 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Poly16 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
