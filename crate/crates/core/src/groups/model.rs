//! Matrix models of `GL_n`, `Sp_2n` and `SO_2n+1` over a prime field.

use crate::coxeter::{CoxeterGroup, Family, TypeLabel, WeylElement};
use crate::error::{Error, Result};
use crate::exact::{mat_rank, MatrixFq, PrimeField};
use crate::partition::Partition;

/// A classical group realized on `F_p^N`, with an antidiagonal Gram matrix for types B and C.
///
/// With this Gram matrix the upper-triangular form-preserving matrices form a
/// Borel subgroup and the coordinate flag is its fixed point.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupModel {
    label: TypeLabel,
    field: PrimeField,
    size: usize,
    gram: Option<MatrixFq>,
}

impl GroupModel {
    pub fn new(label: TypeLabel, p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let n = label.rank;
        let (size, gram) = match label.family {
            Family::A => (n + 1, None),
            Family::C => {
                if p == 2 {
                    return Err(Error::BadCharacteristic { p, label: label.to_string() });
                }
                let size = 2 * n;
                let mut j = MatrixFq::zeros(field, size, size);
                for i in 0..size {
                    j.set(i, size - 1 - i, if i < n { 1 } else { field.neg(1) });
                }
                (size, Some(j))
            }
            Family::B => {
                if p == 2 {
                    return Err(Error::BadCharacteristic { p, label: label.to_string() });
                }
                let size = 2 * n + 1;
                let mut j = MatrixFq::zeros(field, size, size);
                for i in 0..size {
                    j.set(i, size - 1 - i, 1);
                }
                (size, Some(j))
            }
            Family::G => return Err(Error::UnsupportedType(format!("{label}: no matrix model"))),
        };
        Ok(Self { label, field, size, gram })
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }
    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn p(&self) -> u64 {
        self.field.p() as u64
    }
    /// Matrix size `N`.
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn gram(&self) -> Option<&MatrixFq> {
        self.gram.as_ref()
    }
    /// `+1` for a symmetric form, `-1` for an alternating one.
    pub fn symmetry(&self) -> i64 {
        if self.label.family == Family::C {
            -1
        } else {
            1
        }
    }

    /// `x^T J y`.
    pub fn pair(&self, x: &[u32], y: &[u32]) -> u32 {
        let j = self.gram.as_ref().expect("model has a form");
        let f = self.field;
        let jy = j.mul_vec(y);
        x.iter().zip(&jy).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    pub fn preserves_form(&self, m: &MatrixFq) -> bool {
        match &self.gram {
            Some(j) => m.transpose().mul(j).mul(m) == *j,
            None => mat_rank(m) == self.size,
        }
    }

    /// A signed permutation matrix representing `w`: `ẇ e_j = ± e_{w(j)}`.
    pub fn weyl_rep(&self, group: &CoxeterGroup, w: WeylElement) -> MatrixFq {
        group.word(w).iter().fold(MatrixFq::identity(self.field, self.size), |acc, &s| {
            acc.mul(&self.generator_rep(s as usize))
        })
    }

    fn generator_rep(&self, i: usize) -> MatrixFq {
        let n = self.label.rank;
        let size = self.size;
        let f = self.field;
        let mut m = MatrixFq::zeros(f, size, size);
        let mut img: Vec<(usize, u32)> = (0..size).map(|j| (j, 1)).collect();
        match self.label.family {
            Family::A => img.swap(i - 1, i),
            _ if i < n => {
                img.swap(i - 1, i);
                img.swap(size - i, size - 1 - i);
            }
            Family::C => {
                img[n - 1] = (n, 1);
                img[n] = (n - 1, f.neg(1));
            }
            _ => {
                img[n - 1] = (n + 1, 1);
                img[n + 1] = (n - 1, 1);
                img[n] = (n, f.neg(1));
            }
        }
        for (j, (r, v)) in img.into_iter().enumerate() {
            m.set(r, j, v);
        }
        m
    }

    /// A random Lie algebra element from free entries: `J^-1 S` with `S`
    /// symmetric (type C) or alternating (type B); any matrix in type A.
    pub fn lie_element(&self, entries: &[i64]) -> MatrixFq {
        let f = self.field;
        let n = self.size;
        let mut s = MatrixFq::zeros(f, n, n);
        let mut k = 0;
        let mut next = || {
            let v = entries.get(k).copied().unwrap_or(0);
            k += 1;
            f.reduce(v)
        };
        match &self.gram {
            None => {
                for i in 0..n {
                    for j in 0..n {
                        s.set(i, j, next());
                    }
                }
                s
            }
            Some(j) => {
                let sym = self.label.family == Family::C;
                for a in 0..n {
                    for b in a..n {
                        if a == b {
                            if sym {
                                s.set(a, a, next());
                            }
                            continue;
                        }
                        let v = next();
                        s.set(a, b, v);
                        s.set(b, a, if sym { v } else { f.neg(v) });
                    }
                }
                j.inverse().expect("nondegenerate").mul(&s)
            }
        }
    }
}

/// Cayley transform `(I + X/2)(I - X/2)^-1`; maps the Lie algebra of the form
/// into the group and nilpotents to unipotents of the same Jordan type (p odd).
pub fn cayley(x: &MatrixFq) -> Option<MatrixFq> {
    let f = x.field();
    let half = f.inv(2)?;
    let id = MatrixFq::identity(f, x.rows());
    let hx = x.scale(half);
    Some(id.add(&hx).mul(&id.sub(&hx).inverse()?))
}

/// Where a group element came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Unipotent { partition: Partition, variant: Variant },
    RegularSemisimple { eigenvalues: Vec<u64> },
    Other(String),
}

/// Rational form of a unipotent class: the standard representative or the
/// one with a form parameter rescaled by a non-square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Variant {
    #[serde(rename = "std")]
    Standard,
    #[serde(rename = "tw")]
    Twisted,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Standard => "std",
            Variant::Twisted => "tw",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "std" | "standard" => Ok(Variant::Standard),
            "tw" | "twisted" => Ok(Variant::Twisted),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub matrix: MatrixFq,
    pub provenance: Provenance,
}

/// Diagonal matrix with the given pairwise distinct nonzero eigenvalues.
pub fn regular_ss_rep(p: u64, eigenvalues: &[u64]) -> Result<GroupElement> {
    let f = PrimeField::new(p)?;
    let reduced: Vec<u32> = eigenvalues.iter().map(|&e| (e % p) as u32).collect();
    let distinct = reduced.iter().enumerate().all(|(i, a)| !reduced[..i].contains(a));
    if !distinct || reduced.contains(&0) {
        return Err(Error::RepeatedEigenvalue(eigenvalues.to_vec()));
    }
    let mut m = MatrixFq::zeros(f, reduced.len(), reduced.len());
    for (i, &e) in reduced.iter().enumerate() {
        m.set(i, i, e);
    }
    Ok(GroupElement { matrix: m, provenance: Provenance::RegularSemisimple { eigenvalues: eigenvalues.to_vec() } })
}

/// Jordan type of a unipotent matrix, from the ranks of `(M - I)^k`.
pub fn jordan_type(m: &MatrixFq) -> Option<Partition> {
    let n = m.rows();
    let x = m.sub(&MatrixFq::identity(m.field(), n));
    let mut ranks = vec![n];
    let mut pw = MatrixFq::identity(m.field(), n);
    for _ in 0..n {
        pw = pw.mul(&x);
        ranks.push(mat_rank(&pw));
    }
    if ranks[n] != 0 {
        return None;
    }
    // number of blocks of size >= k is ranks[k-1] - ranks[k]
    let at_least: Vec<usize> = (1..=n).map(|k| ranks[k - 1] - ranks[k]).collect();
    let parts: Vec<usize> = (1..=n)
        .flat_map(|k| {
            let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            std::iter::repeat_n(k, exact)
        })
        .collect();
    Some(Partition::new(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_weyl;

    #[test]
    fn forms_and_weyl_reps() {
        for t in ["A2", "C2", "B2", "C3", "B3"] {
            let label: TypeLabel = t.parse().unwrap();
            let model = GroupModel::new(label, 5).unwrap();
            let w = build_weyl(label).unwrap();
            for x in w.elements() {
                let m = model.weyl_rep(&w, x);
                assert!(model.preserves_form(&m), "{t} {}", w.word_label(x));
            }
            if let Some(j) = model.gram() {
                let sym = j.transpose() == *j;
                assert_eq!(sym, model.symmetry() == 1);
            }
        }
        assert!(matches!(GroupModel::new("C2".parse().unwrap(), 2), Err(Error::BadCharacteristic { .. })));
        assert!(GroupModel::new("A2".parse().unwrap(), 2).is_ok());
    }

    #[test]
    fn cayley_lands_in_group() {
        for t in ["C2", "B2", "C3"] {
            let model = GroupModel::new(t.parse().unwrap(), 7).unwrap();
            let x = model.lie_element(&(1..60).collect::<Vec<i64>>());
            if let Some(g) = cayley(&x) {
                assert!(model.preserves_form(&g), "{t}");
            }
        }
    }

    #[test]
    fn regular_semisimple() {
        let g = regular_ss_rep(5, &[1, 2, 3]).unwrap();
        assert_eq!(g.matrix, MatrixFq::from_rows(PrimeField::new(5).unwrap(), &[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]));
        assert!(regular_ss_rep(7, &[1, 2, 4]).is_ok());
        assert!(matches!(regular_ss_rep(5, &[1, 6]), Err(Error::RepeatedEigenvalue(_))));
    }

    #[test]
    fn jordan_types() {
        let f = PrimeField::new(3).unwrap();
        let j = MatrixFq::from_rows(f, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(jordan_type(&j).unwrap().parts(), &[2, 1]);
        assert_eq!(jordan_type(&MatrixFq::identity(f, 3)).unwrap().parts(), &[1, 1, 1]);
        assert!(jordan_type(&MatrixFq::zeros(f, 2, 2)).is_none());
    }
}
