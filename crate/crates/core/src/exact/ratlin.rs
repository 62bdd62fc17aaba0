//! Dense linear algebra over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn identity(n: usize) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let (n, m, k) = (a.len(), b.first().map_or(0, Vec::len), b.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(BigRational::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn trace(a: &RatMatrix) -> BigRational {
    (0..a.len()).fold(BigRational::zero(), |acc, i| acc + &a[i][i])
}

/// Solves the square system `a x = b`; `None` if `a` is singular.
pub fn solve(a: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: RatMatrix = a.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

pub fn determinant(a: &RatMatrix) -> BigRational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for c in col..n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn solve_and_determinant() {
        let a = m(&[&[1, 3], &[1, -1]]);
        assert_eq!(determinant(&a), rat(-4));
        // transpose system of the A1 example: x_t + x_s = 4, 3 x_t - x_s = 0
        let at = m(&[&[1, 1], &[3, -1]]);
        assert_eq!(solve(&at, &[rat(4), rat(0)]).unwrap(), vec![rat(1), rat(3)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[rat(1), rat(1)]).is_none());
        assert_eq!(determinant(&identity(3)), rat(1));
        assert_eq!(mat_mul(&a, &identity(2)), a);
        assert_eq!(trace(&a), rat(0));
    }
}
