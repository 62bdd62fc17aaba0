//! Exact polynomial interpolation with an overdetermined consistency check.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense polynomial with rational coefficients in ascending degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn to_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Least common denominator of the coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})q"),
                _ => format!("({c})q^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Fits the unique polynomial of degree `<= degree_bound` through the first
/// `degree_bound + 1` samples, then requires every further sample to lie on it.
pub fn interpolate_poly(samples: &[(BigRational, BigRational)], degree_bound: usize) -> Result<RationalPoly> {
    let needed = degree_bound + 1;
    if samples.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: samples.len() });
    }
    for (i, (qi, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(qj, _)| qj == qi) {
            return Err(Error::DuplicateAbscissa(qi.to_string()));
        }
    }
    let fit = &samples[..needed];
    // Newton divided differences.
    let xs: Vec<&BigRational> = fit.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<BigRational> = fit.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..needed {
        for i in (level..needed).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // Expand the Newton form into monomial coefficients (Horner from the top).
    let mut coeffs = vec![BigRational::zero(); needed];
    for k in (0..needed).rev() {
        // coeffs <- coeffs * (x - xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); needed];
        for (d, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d + 1 < needed {
                next[d + 1] += c;
            }
            next[d] -= c * xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    let poly = RationalPoly::new(coeffs);
    for (x, y) in &samples[needed..] {
        if &poly.eval(x) != y {
            return Err(Error::OverdeterminedMismatch { q: x.to_string() });
        }
    }
    Ok(poly)
}

/// Convenience wrapper for integer samples.
pub fn interpolate_int(samples: &[(i64, i64)], degree_bound: usize) -> Result<RationalPoly> {
    let s: Vec<(BigRational, BigRational)> = samples
        .iter()
        .map(|&(x, y)| (BigRational::from_integer(x.into()), BigRational::from_integer(y.into())))
        .collect();
    interpolate_poly(&s, degree_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn interpolation_examples() {
        let p = interpolate_int(&[(2, 21), (3, 52), (5, 186), (7, 456)], 3).unwrap();
        assert_eq!(p, RationalPoly::from_ints(&[1, 2, 2, 1]));
        let p = interpolate_int(&[(2, 4), (3, 9), (5, 25)], 2).unwrap();
        assert_eq!(p, RationalPoly::from_ints(&[0, 0, 1]));
        let p = interpolate_int(&[(2, 1), (3, 1)], 0).unwrap();
        assert_eq!(p, RationalPoly::from_ints(&[1]));
    }

    #[test]
    fn interpolation_errors() {
        assert!(matches!(
            interpolate_int(&[(2, 4), (3, 9), (5, 26)], 1),
            Err(Error::OverdeterminedMismatch { .. })
        ));
        assert!(matches!(interpolate_int(&[(2, 4), (2, 4)], 1), Err(Error::DuplicateAbscissa(_))));
        assert!(matches!(interpolate_int(&[(2, 4)], 1), Err(Error::InsufficientSamples { .. })));
        // sqrt-like growth is not a polynomial of low degree
        assert!(interpolate_int(&[(4, 2), (9, 3), (16, 4), (25, 5)], 2).is_err());
    }

    #[test]
    fn zero_samples_give_zero_poly() {
        let p = interpolate_int(&[(3, 0), (5, 0), (7, 0)], 2).unwrap();
        assert!(p.is_zero());
    }

    proptest! {
        #[test]
        fn fit_reproduces_samples(c in proptest::collection::vec(-20i64..20, 1..5)) {
            let poly = RationalPoly::from_ints(&c);
            let xs = [2i64, 3, 5, 7, 11, 13];
            let samples: Vec<(BigRational, BigRational)> = xs
                .iter()
                .map(|&x| {
                    let x = BigRational::from_integer(x.into());
                    (x.clone(), poly.eval(&x))
                })
                .collect();
            let fit = interpolate_poly(&samples, c.len() - 1).unwrap();
            prop_assert_eq!(&fit, &poly);
            for (x, y) in &samples {
                prop_assert_eq!(&fit.eval(x), y);
            }
        }
    }
}
