use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{parse_rational, rational_sqrt, to_f64, Rational};
use super::Scalar;
use crate::error::{Error, Result};

/// `a + b*sqrt(d)` in Q(sqrt d).
///
/// The radicand is not reduced to square-free form, so equality is
/// componentwise and only meaningful between values sharing `d`. When `d`
/// is a rational square the ring is not a field; producers in this crate
/// fold such values to `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: Rational,
    b: Rational,
    d: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn quad_arith(op: QuadOp, u: &QuadNum, v: &QuadNum) -> Result<QuadNum> {
    match op {
        QuadOp::Add => u.try_add(v),
        QuadOp::Sub => u.try_sub(v),
        QuadOp::Mul => u.try_mul(v),
        QuadOp::Div => u.try_div(v),
    }
}

impl QuadNum {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::Domain(format!("negative radicand {d}")));
        }
        Ok(QuadNum { a, b, d })
    }

    /// Embeds a rational into Q(sqrt d).
    pub fn from_rational(a: Rational, d: &Rational) -> Self {
        QuadNum {
            a,
            b: Rational::zero(),
            d: d.clone(),
        }
    }

    pub fn sqrt_of(d: &Rational) -> Result<Self> {
        QuadNum::new(Rational::zero(), Rational::one(), d.clone())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadNum {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// `(a + b√d)(a − b√d) = a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.d * &self.b * &self.b
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::RadicandMismatch {
                left: self.d.to_string(),
                right: other.d.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(QuadNum {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d.clone(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(QuadNum {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d: self.d.clone(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(QuadNum {
            a: &self.a * &other.a + &self.d * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d.clone(),
        })
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.vanishes() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroDivisor(self.to_string()));
        }
        Ok(QuadNum {
            a: &self.a / &n,
            b: -&self.b / &n,
            d: self.d.clone(),
        })
    }

    /// Division rationalizes the denominator by its conjugate.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        self.try_mul(&other.try_inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadNum {
            a: &self.a * r,
            b: &self.b * r,
            d: self.d.clone(),
        }
    }

    /// Re-expresses the value over radicand `new_d`, which works when
    /// `d / new_d` is a rational square (or when `b = 0`).
    pub fn rebase(&self, new_d: &Rational) -> Option<Self> {
        if self.b.is_zero() {
            return Some(QuadNum::from_rational(self.a.clone(), new_d));
        }
        if new_d.is_zero() {
            return None;
        }
        let ratio = rational_sqrt(&(&self.d / new_d))?;
        Some(QuadNum {
            a: self.a.clone(),
            b: &self.b * ratio,
            d: new_d.clone(),
        })
    }

    /// Display approximation only.
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * to_f64(&self.d).sqrt()
    }

    /// Sign of the real number `a + b√d`, decided exactly.
    pub fn signum(&self) -> i8 {
        fn sgn(x: &Rational) -> i8 {
            if x.is_zero() {
                0
            } else if x.is_positive() {
                1
            } else {
                -1
            }
        }
        let sa = sgn(&self.a);
        let sb = if self.d.is_zero() { 0 } else { sgn(&self.b) };
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with d·b²
        let diff = &self.a * &self.a - &self.d * &self.b * &self.b;
        match sgn(&diff) {
            0 => 0,
            1 => sa,
            _ => sb,
        }
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Scalar for QuadNum {
    fn zero_like(&self) -> Self {
        QuadNum::from_rational(Rational::zero(), &self.d)
    }
    fn one_like(&self) -> Self {
        QuadNum::from_rational(Rational::one(), &self.d)
    }
    fn vanishes(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    // The infallible ring operations assume a shared radicand; mixing
    // contexts inside one matrix is a programming error.
    fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("radicand mismatch")
    }
    fn minus(&self, other: &Self) -> Self {
        self.try_sub(other).expect("radicand mismatch")
    }
    fn times(&self, other: &Self) -> Self {
        self.try_mul(other).expect("radicand mismatch")
    }
    fn negated(&self) -> Self {
        QuadNum {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    a: String,
    b: String,
    d: String,
}

impl Serialize for QuadNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadRepr {
            a: self.a.to_string(),
            b: self.b.to_string(),
            d: self.d.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadNum {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = QuadRepr::deserialize(de)?;
        let p = |s: &str| parse_rational(s).map_err(D::Error::custom);
        QuadNum::new(p(&r.a)?, p(&r.b)?, p(&r.d)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    fn qn(a: Rational, b: Rational, d: i64) -> QuadNum {
        QuadNum::new(a, b, qi(d)).unwrap()
    }

    #[test]
    fn conjugate_product() {
        let u = qn(qi(1), qi(1), 2);
        let v = qn(qi(1), qi(-1), 2);
        assert_eq!(
            quad_arith(QuadOp::Mul, &u, &v).unwrap(),
            qn(qi(-1), qi(0), 2)
        );
        assert_eq!(u.norm(), qi(-1));
    }

    #[test]
    fn rationalized_inverse() {
        let u = qn(qi(3), qi(1), 5);
        let one = u.one_like();
        let inv = quad_arith(QuadOp::Div, &one, &u).unwrap();
        assert_eq!(inv, qn(q(3, 4), q(-1, 4), 5));
        assert_eq!(inv.try_mul(&u).unwrap(), one);
    }

    #[test]
    fn errors() {
        let u = qn(qi(1), qi(1), 2);
        let v = qn(qi(1), qi(1), 5);
        assert!(matches!(
            quad_arith(QuadOp::Add, &u, &v),
            Err(Error::RadicandMismatch { .. })
        ));
        assert_eq!(
            quad_arith(QuadOp::Div, &u, &u.zero_like()),
            Err(Error::DivisionByZero)
        );
        // 2 - sqrt(4) is a zero divisor
        let z = qn(qi(2), qi(-1), 4);
        assert!(matches!(z.try_inv(), Err(Error::ZeroDivisor(_))));
        assert!(QuadNum::new(qi(0), qi(1), qi(-3)).is_err());
    }

    #[test]
    fn rational_embedding() {
        let d = qi(7);
        let (x, y) = (q(2, 3), q(-5, 4));
        let (u, v) = (
            QuadNum::from_rational(x.clone(), &d),
            QuadNum::from_rational(y.clone(), &d),
        );
        let emb = |r: Rational| QuadNum::from_rational(r, &d);
        assert_eq!(u.try_add(&v).unwrap(), emb(&x + &y));
        assert_eq!(u.try_sub(&v).unwrap(), emb(&x - &y));
        assert_eq!(u.try_mul(&v).unwrap(), emb(&x * &y));
        assert_eq!(u.try_div(&v).unwrap(), emb(&x / &y));
    }

    #[test]
    fn rebase_and_sign() {
        // sqrt(320) = 8 sqrt(5)
        let r = QuadNum::sqrt_of(&qi(320)).unwrap();
        assert_eq!(r.rebase(&qi(5)).unwrap(), qn(qi(0), qi(8), 5));
        assert!(r.rebase(&qi(3)).is_none());
        assert_eq!(qn(qi(-3), qi(1), 5).signum(), -1);
        assert_eq!(qn(qi(-2), qi(1), 5).signum(), 1);
        assert_eq!(qn(qi(2), qi(-1), 4).signum(), 0);
        assert_eq!(qn(qi(0), qi(-1), 4).signum(), -1);
    }

    #[test]
    fn serde_shape() {
        let u = qn(q(-5, 2), q(1, 16), 320);
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"a":"-5/2","b":"1/16","d":"320"}"#);
        assert_eq!(serde_json::from_str::<QuadNum>(&s).unwrap(), u);
    }

    mod field_axioms {
        use super::*;
        use proptest::prelude::*;

        fn elem() -> impl Strategy<Value = QuadNum> {
            (
                prop::sample::select(vec![2i64, 5, 320]),
                -20i64..=20,
                1i64..=6,
                -20i64..=20,
                1i64..=6,
            )
                .prop_map(|(d, an, ad, bn, bd)| qn(q(an, ad), q(bn, bd), d))
        }

        fn triple() -> impl Strategy<Value = (QuadNum, QuadNum, QuadNum)> {
            (elem(), elem(), elem()).prop_map(|(u, v, w)| {
                let d = u.d().clone();
                let re =
                    |x: QuadNum| QuadNum::new(x.a().clone(), x.b().clone(), d.clone()).unwrap();
                (u, re(v), re(w))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn associative_distributive_invertible((u, v, w) in triple()) {
                let m = |x: &QuadNum, y: &QuadNum| x.try_mul(y).unwrap();
                let a = |x: &QuadNum, y: &QuadNum| x.try_add(y).unwrap();
                prop_assert_eq!(m(&m(&u, &v), &w), m(&u, &m(&v, &w)));
                prop_assert_eq!(a(&a(&u, &v), &w), a(&u, &a(&v, &w)));
                prop_assert_eq!(m(&u, &a(&v, &w)), a(&m(&u, &v), &m(&u, &w)));
                // none of 2, 5, 320 is a rational square, so nonzero means invertible
                if !u.vanishes() {
                    prop_assert_eq!(m(&u, &u.try_inv().unwrap()), u.one_like());
                }
                prop_assert_eq!(m(&u, &u.conj()), QuadNum::from_rational(u.norm(), u.d()));
            }
        }
    }
}
