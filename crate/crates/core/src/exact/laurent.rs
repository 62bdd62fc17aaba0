//! Integer Laurent polynomials in `u = v^2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finitely supported map `exponent -> coefficient`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `u^e`.
    pub fn u_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds `sum_i coeffs[i] * u^(min_exp + i)`.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(min_exp: i32, coeffs: &[T]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(min_exp + i as i32, c.clone().into());
        }
        p
    }

    /// Ascending ordinary polynomial coefficients, `[1, 2, 2, 1]` for `1 + 2u + 2u^2 + u^3`.
    pub fn from_poly<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        Self::from_coeffs(0, coeffs)
    }

    fn add_term(&mut self, exp: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// True when no negative exponent occurs.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// `(min_exp, dense coefficients)`; the zero polynomial is `(0, [])`.
    pub fn to_dense(&self) -> (i32, Vec<BigInt>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, (lo..=hi).map(|e| self.coeff(e)).collect()),
            _ => (0, Vec::new()),
        }
    }

    /// Ascending ordinary-polynomial coefficients; `None` if a negative power occurs.
    pub fn to_poly_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.is_polynomial() {
            return None;
        }
        let hi = match self.max_exp() {
            Some(h) => h,
            None => return Some(Vec::new()),
        };
        Some((0..=hi).map(|e| self.coeff(e)).collect())
    }

    pub fn eval(&self, u: &BigRational) -> Result<BigRational> {
        if u.is_zero() && !self.is_polynomial() {
            return Err(Error::PoleAtSpecialization(self.to_string()));
        }
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            let pow = if e >= 0 {
                num_traits::pow(u.clone(), e as usize)
            } else {
                num_traits::pow(u.recip(), (-e) as usize)
            };
            acc += pow * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    pub fn eval_int(&self, u: i64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(BigInt::from(u)))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        laurent_mul(self, rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Exact product; negative exponents allowed.
pub fn laurent_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (&ea, ca) in &a.terms {
        for (&eb, cb) in &b.terms {
            out.add_term(ea + eb, ca * cb);
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match e {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "u")?,
                1 => write!(f, "{abs}u")?,
                _ if unit => write!(f, "u^{e}")?,
                _ => write!(f, "{abs}u^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Wire form: `[min_exp, [c0, c1, ...]]`.
impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (lo, coeffs) = self.to_dense();
        let small: Vec<i64> = coeffs
            .iter()
            .map(|c| c.to_i64().ok_or_else(|| serde::ser::Error::custom("coefficient exceeds i64")))
            .collect::<std::result::Result<_, _>>()?;
        (lo, small).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (lo, coeffs): (i32, Vec<i64>) = Deserialize::deserialize(d)?;
        Ok(LaurentPoly::from_coeffs(lo, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(lo: i32, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(lo, c)
    }

    #[test]
    fn product_examples() {
        // (1 + u)(1 - u^-1) = u - u^-1
        assert_eq!(laurent_mul(&lp(0, &[1, 1]), &lp(-1, &[-1, 1])), lp(-1, &[-1, 0, 1]));
        assert_eq!(lp(0, &[-1, 1]).pow(2), lp(0, &[1, -2, 1]));
        // (1+u)^2 (1+u^2)
        let b2 = laurent_mul(&lp(0, &[1, 1]).pow(2), &lp(0, &[1, 0, 1]));
        assert_eq!(b2.to_poly_coeffs().unwrap(), [1, 2, 2, 2, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn display_and_wire_format() {
        assert_eq!(lp(-1, &[-1, 0, 1]).to_string(), "u - u^-1");
        assert_eq!(lp(0, &[1, 2, 2, 1]).to_string(), "u^3 + 2u^2 + 2u + 1");
        let json = serde_json::to_string(&lp(-1, &[-1, 0, 1])).unwrap();
        assert_eq!(json, "[-1,[-1,0,1]]");
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, lp(-1, &[-1, 0, 1]));
        assert_eq!(serde_json::to_string(&LaurentPoly::zero()).unwrap(), "[0,[]]");
    }

    #[test]
    fn eval_and_pole() {
        let p = lp(-1, &[1, 0, 1]);
        assert_eq!(p.eval_int(2).unwrap(), BigRational::new(5.into(), 2.into()));
        assert!(p.eval_int(0).is_err());
    }

    fn arb_lp() -> impl Strategy<Value = LaurentPoly> {
        (-3i32..3, proptest::collection::vec(-4i64..5, 0..5)).prop_map(|(lo, c)| lp(lo, &c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_lp(), b in arb_lp(), c in arb_lp()) {
            prop_assert_eq!(&a * &(&b * &c), &(&a * &b) * &c);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }
    }
}
