//! Prime fields `F_p` with elements stored as canonical residues.

use crate::error::{Error, Result};

/// The field of residues modulo a prime `p`.
///
/// Elements are plain `u32` values in `[0, p)`. The modulus is kept below
/// `2^16` so products fit in `u32` and short dot products fit in `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 16 {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.pow(a, (self.p as u64 - 1) / 2) == 1
    }

    /// Some `s` with `s^2 = a`, found by search (fields here are tiny).
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        (0..self.p).find(|&s| self.mul(s, s) == a)
    }

    /// The least quadratic non-residue; `None` in characteristic 2.
    pub fn least_nonsquare(&self) -> Option<u32> {
        (2..self.p).find(|&a| !self.is_square(a))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn every_unit_has_an_inverse() {
        for p in [2u64, 3, 5, 7, 11, 13, 31] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..f.p() {
                let b = f.inv(a).unwrap();
                assert_eq!(f.mul(a, b), 1);
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn nonsquares() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.least_nonsquare(), Some(3));
        assert!(f.is_square(2));
        assert_eq!(PrimeField::new(5).unwrap().least_nonsquare(), Some(2));
        assert_eq!(PrimeField::new(2).unwrap().least_nonsquare(), None);
    }
}
