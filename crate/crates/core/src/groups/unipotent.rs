//! Unipotent classes of the classical models: labels, Springer-fiber
//! dimensions, closure order and matrix representatives.

use std::fmt;

use super::model::{cayley, jordan_type, GroupElement, GroupModel, Provenance, Variant};
use crate::coxeter::{Family, TypeLabel};
use crate::error::{Error, Result};
use crate::exact::{MatrixFq, PrimeField};
use crate::partition::Partition;

/// A geometric unipotent class, labelled `u_n` with `n = dim B_u`; classes
/// sharing `n` get primes, the lexicographically smallest partition first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnipotentClass {
    pub label: TypeLabel,
    pub partition: Partition,
    pub fiber_dim: usize,
    pub primes: usize,
}

impl UnipotentClass {
    /// `"u4"`, `"u2'"`, `"u2''"`.
    pub fn name(&self) -> String {
        format!("u{}{}", self.fiber_dim, "'".repeat(self.primes))
    }

    /// Order of the component group of the centralizer in the adjoint group.
    pub fn component_order(&self) -> usize {
        component_group_order(self.label, &self.partition)
    }
}

impl fmt::Display for UnipotentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name(), self.partition)
    }
}

fn invalid(label: TypeLabel, p: &Partition, reason: &str) -> Error {
    Error::InvalidPartition { label: label.to_string(), partition: p.parts().to_vec(), reason: reason.into() }
}

/// Size of the natural representation.
fn natural_dim(label: TypeLabel) -> Result<usize> {
    match label.family {
        Family::A => Ok(label.rank + 1),
        Family::B => Ok(2 * label.rank + 1),
        Family::C => Ok(2 * label.rank),
        Family::G => Err(Error::UnsupportedType(format!("{label}: no classical model"))),
    }
}

pub fn validate_partition(label: TypeLabel, p: &Partition) -> Result<()> {
    let n = natural_dim(label)?;
    if p.size() != n {
        return Err(invalid(label, p, &format!("must be a partition of {n}")));
    }
    let bad_parity = match label.family {
        Family::C => 1,
        Family::B => 0,
        _ => return Ok(()),
    };
    for &k in p.parts() {
        if k % 2 == bad_parity && p.multiplicity(k) % 2 == 1 {
            let which = if bad_parity == 1 { "odd" } else { "even" };
            return Err(invalid(label, p, &format!("{which} parts need even multiplicity")));
        }
    }
    Ok(())
}

/// `dim B_u`, computed as `(dim Z(u) - rank) / 2`.
pub fn springer_fiber_dim(label: TypeLabel, p: &Partition) -> Result<usize> {
    validate_partition(label, p)?;
    let sq: usize = p.conjugate().parts().iter().map(|c| c * c).sum();
    let odd = p.parts().iter().filter(|&&k| k % 2 == 1).count();
    let (centralizer, rank) = match label.family {
        Family::A => (sq, label.rank + 1),
        Family::C => ((sq + odd) / 2, label.rank),
        Family::B => ((sq - odd) / 2, label.rank),
        Family::G => unreachable!("rejected by validate_partition"),
    };
    Ok((centralizer - rank) / 2)
}

/// Whether the class of `lambda` lies in the closure of the class of `mu` (dominance order).
pub fn closure_leq(label: TypeLabel, lambda: &Partition, mu: &Partition) -> Result<bool> {
    validate_partition(label, lambda)?;
    validate_partition(label, mu)?;
    Ok(lambda.dominated_by(mu))
}

/// All unipotent classes, by increasing `dim B_u`.
pub fn unipotent_partitions(label: TypeLabel) -> Result<Vec<UnipotentClass>> {
    let n = natural_dim(label)?;
    let mut classes: Vec<UnipotentClass> = Partition::all(n)
        .into_iter()
        .filter(|p| validate_partition(label, p).is_ok())
        .map(|p| {
            let fiber_dim = springer_fiber_dim(label, &p).expect("validated");
            UnipotentClass { label, partition: p, fiber_dim, primes: 0 }
        })
        .collect();
    classes.sort_by(|a, b| a.fiber_dim.cmp(&b.fiber_dim).then_with(|| b.partition.cmp(&a.partition)));
    let dims: Vec<usize> = classes.iter().map(|c| c.fiber_dim).collect();
    for d in dims.iter().copied() {
        let mut tied: Vec<&mut UnipotentClass> = classes.iter_mut().filter(|c| c.fiber_dim == d).collect();
        if tied.len() > 1 {
            tied.sort_by(|a, b| a.partition.cmp(&b.partition));
            for (i, c) in tied.into_iter().enumerate() {
                c.primes = i + 1;
            }
        }
    }
    Ok(classes)
}

/// Looks a class up by name (`"u2'"`) or by partition (`"4,1,1"`).
pub fn find_class(label: TypeLabel, spec: &str) -> Result<UnipotentClass> {
    let classes = unipotent_partitions(label)?;
    let spec = spec.trim();
    if let Some(c) = classes.iter().find(|c| c.name() == spec) {
        return Ok(c.clone());
    }
    let p: Partition = spec.parse()?;
    validate_partition(label, &p)?;
    Ok(classes.into_iter().find(|c| c.partition == p).expect("valid partitions are listed"))
}

/// Number of rational classes inside the geometric class in the adjoint group
/// (the order of the component group, which is elementary abelian here).
///
/// Rational forms are classified by the discriminants of the quadratic forms
/// on the multiplicity spaces of the even parts (type C) or odd parts (type B),
/// up to rescaling the whole form, which flips those with odd multiplicity.
pub fn component_group_order(label: TypeLabel, p: &Partition) -> usize {
    let parity = match label.family {
        Family::C => 0,
        Family::B => 1,
        _ => return 1,
    };
    let mut relevant: Vec<usize> = p.parts().iter().copied().filter(|k| k % 2 == parity).collect();
    relevant.dedup();
    if relevant.is_empty() {
        return 1;
    }
    let odd_mult = relevant.iter().any(|&k| p.multiplicity(k) % 2 == 1);
    (1usize << relevant.len()) >> usize::from(odd_mult)
}

/// One indecomposable piece of the nilpotent normal form.
#[derive(Debug, Clone)]
enum Block {
    /// `v_1 .. v_m`, `X v_i = v_{i+1}`, `B(v_i, v_{m+1-i}) = (-1)^i c`.
    Single { size: usize, coeff: u32 },
    /// `W + W'` with `W, W'` isotropic and in duality, `X = N` on `W`, `-N^T` on `W'`.
    Pair { size: usize },
}

fn blocks(model: &GroupModel, p: &Partition, variant: Variant) -> Vec<Block> {
    let f = model.field();
    let single_parity = if model.label().family == Family::C { 0 } else { 1 };
    let mut out = Vec::new();
    let mut parts = p.parts().to_vec();
    parts.dedup();
    for k in parts {
        let mult = p.multiplicity(k);
        if k % 2 == single_parity {
            out.extend((0..mult).map(|j| Block::Single { size: k, coeff: if j % 2 == 0 { 1 } else { f.neg(1) } }));
        } else {
            out.extend((0..mult / 2).map(|_| Block::Pair { size: k }));
        }
    }
    if variant == Variant::Twisted {
        let singles: Vec<usize> = out
            .iter()
            .enumerate()
            .filter_map(|(i, b)| matches!(b, Block::Single { .. }).then_some(i))
            .collect();
        let preferred = if model.label().family == Family::B {
            singles
                .iter()
                .copied()
                .find(|&i| matches!(out[i], Block::Single { size, .. } if p.multiplicity(size) >= 2))
                .or(singles.first().copied())
        } else {
            singles.first().copied()
        };
        if let Some(i) = preferred {
            let eps = f.least_nonsquare().expect("odd characteristic");
            if let Block::Single { coeff, .. } = &mut out[i] {
                *coeff = f.mul(*coeff, eps);
            }
        }
    }
    out
}

/// Gram matrix and nilpotent operator of the block normal form.
fn normal_form(model: &GroupModel, blocks: &[Block]) -> (MatrixFq, MatrixFq) {
    let f = model.field();
    let n = model.size();
    let sigma = f.reduce(model.symmetry());
    let mut g = MatrixFq::zeros(f, n, n);
    let mut x = MatrixFq::zeros(f, n, n);
    let mut o = 0;
    for b in blocks {
        match *b {
            Block::Single { size, coeff } => {
                for a in 0..size {
                    let sign = if a % 2 == 0 { f.neg(1) } else { 1 };
                    g.set(o + a, o + size - 1 - a, f.mul(sign, coeff));
                    if a + 1 < size {
                        x.set(o + a + 1, o + a, 1);
                    }
                }
                o += size;
            }
            Block::Pair { size } => {
                for a in 0..size {
                    g.set(o + a, o + size + a, 1);
                    g.set(o + size + a, o + a, sigma);
                    if a + 1 < size {
                        x.set(o + a + 1, o + a, 1);
                    }
                    if a >= 1 {
                        x.set(o + size + a - 1, o + size + a, f.neg(1));
                    }
                }
                o += 2 * size;
            }
        }
    }
    (g, x)
}

fn bilinear(g: &MatrixFq, x: &[u32], y: &[u32]) -> u32 {
    let f = g.field();
    let gy = g.mul_vec(y);
    x.iter().zip(&gy).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

fn axpy(f: PrimeField, a: u32, x: &[u32], y: &[u32]) -> Vec<u32> {
    y.iter().zip(x).map(|(&yi, &xi)| f.add(yi, f.mul(a, xi))).collect()
}

fn find_isotropic(g: &MatrixFq, space: &[Vec<u32>], alternating: bool) -> Option<Vec<u32>> {
    if alternating {
        return space.first().cloned();
    }
    if let Some(v) = space.iter().find(|v| bilinear(g, v, v) == 0) {
        return Some(v.clone());
    }
    let f = g.field();
    let k = space.len().min(3);
    let p = f.p();
    let total = (p as usize).pow(k as u32);
    (1..total).find_map(|mut code| {
        let mut v = vec![0u32; g.rows()];
        for s in space.iter().take(k) {
            v = axpy(f, (code % p as usize) as u32, s, &v);
            code /= p as usize;
        }
        (bilinear(g, &v, &v) == 0 && v.iter().any(|&c| c != 0)).then_some(v)
    })
}

/// Change of basis `P` with `P^T g P` equal to the model's Gram matrix.
fn standardize(model: &GroupModel, g: &MatrixFq) -> Result<MatrixFq> {
    let f = model.field();
    let n = model.label().rank;
    let size = model.size();
    let alternating = model.symmetry() == -1;
    let sigma = f.reduce(model.symmetry());
    let mut space: Vec<Vec<u32>> = (0..size).map(|i| (0..size).map(|j| u32::from(i == j)).collect()).collect();
    let (mut fs, mut hs) = (Vec::new(), Vec::new());
    for _ in 0..n {
        let x = find_isotropic(g, &space, alternating).ok_or_else(|| Error::FormMismatch("no isotropic vector".into()))?;
        let w = space
            .iter()
            .find(|w| bilinear(g, &x, w) != 0)
            .ok_or_else(|| Error::FormMismatch("degenerate form".into()))?;
        let mut y: Vec<u32> = w.iter().map(|&c| f.mul(c, f.inv(bilinear(g, &x, w)).expect("nonzero"))).collect();
        if !alternating {
            let c = f.div(bilinear(g, &y, &y), 2).expect("odd characteristic");
            y = axpy(f, f.neg(c), &x, &y);
        }
        let projected: Vec<Vec<u32>> = space
            .iter()
            .map(|w| {
                let a = bilinear(g, w, &y);
                let b = f.mul(sigma, bilinear(g, w, &x));
                axpy(f, f.neg(b), &y, &axpy(f, f.neg(a), &x, w))
            })
            .collect();
        let stacked = MatrixFq::from_columns(f, size, &projected).transpose();
        let (red, piv) = stacked.rref();
        space = (0..piv.len()).map(|r| red.row(r).to_vec()).collect();
        fs.push(x);
        hs.push(y);
    }
    let mut cols = fs;
    if size % 2 == 1 {
        let m = space.first().ok_or_else(|| Error::FormMismatch("missing anisotropic line".into()))?;
        let d = bilinear(g, m, m);
        let s = f.sqrt(d).filter(|&s| s != 0).ok_or_else(|| Error::FormMismatch("discriminant differs".into()))?;
        let s_inv = f.inv(s).expect("nonzero");
        cols.push(m.iter().map(|&c| f.mul(c, s_inv)).collect());
    }
    cols.extend(hs.into_iter().rev());
    let pm = MatrixFq::from_columns(f, size, &cols);
    debug_assert_eq!(&pm.transpose().mul(g).mul(&pm), model.gram().expect("form"));
    Ok(pm)
}

/// A unipotent element of the model with Jordan type `partition`.
///
/// Types B and C: built from a nilpotent normal form through the Cayley
/// transform. The twisted variant multiplies the form on one block by the least
/// non-square: an even part in type C, an odd part (of multiplicity at least two
/// when available) in type B. Where no such block exists, and in type A, the
/// twisted variant equals the standard one.
pub fn unipotent_rep(model: &GroupModel, partition: &Partition, variant: Variant) -> Result<GroupElement> {
    let label = model.label();
    validate_partition(label, partition)?;
    let f = model.field();
    let matrix = if label.family == Family::A {
        let n = model.size();
        let mut m = MatrixFq::identity(f, n);
        let mut o = 0;
        for &k in partition.parts() {
            for a in 0..k - 1 {
                m.set(o + a, o + a + 1, 1);
            }
            o += k;
        }
        m
    } else {
        let (g, x) = normal_form(model, &blocks(model, partition, variant));
        let p = match standardize(model, &g) {
            Ok(p) => p,
            Err(Error::FormMismatch(_)) if model.size() % 2 == 1 => {
                let eps = f.least_nonsquare().expect("odd characteristic");
                standardize(model, &g.scale(eps))?
            }
            Err(e) => return Err(e),
        };
        let xj = p.inverse().expect("change of basis").mul(&x).mul(&p);
        cayley(&xj).ok_or_else(|| Error::BadCharacteristic { p: model.p(), label: label.to_string() })?
    };
    if !model.preserves_form(&matrix) || jordan_type(&matrix).as_ref() != Some(partition) {
        return Err(Error::FormMismatch(format!("representative for {partition} failed its checks")));
    }
    Ok(GroupElement { matrix, provenance: Provenance::Unipotent { partition: partition.clone(), variant } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(s: &str) -> TypeLabel {
        s.parse().unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn names(t: &str) -> Vec<String> {
        unipotent_partitions(lab(t)).unwrap().iter().map(|c| format!("{}={}", c.partition, c.name())).collect()
    }

    #[test]
    fn labels_match_fiber_dimensions() {
        assert_eq!(
            names("C3"),
            ["6=u0", "4,2=u1", "4,1,1=u2''", "3,3=u2'", "2,2,2=u3", "2,2,1,1=u4", "2,1,1,1,1=u6", "1,1,1,1,1,1=u9"]
        );
        assert_eq!(names("B2"), ["5=u0", "3,1,1=u1", "2,2,1=u2", "1,1,1,1,1=u4"]);
        assert_eq!(names("C2"), ["4=u0", "2,2=u1", "2,1,1=u2", "1,1,1,1=u4"]);
        assert_eq!(names("A2"), ["3=u0", "2,1=u1", "1,1,1=u3"]);
        assert_eq!(
            names("B3"),
            ["7=u0", "5,1,1=u1", "3,3,1=u2", "3,2,2=u3", "3,1,1,1,1=u4", "2,2,1,1,1=u5", "1,1,1,1,1,1,1=u9"]
        );
    }

    #[test]
    fn fiber_dimension_oracle_in_type_a() {
        for n in 1..=5 {
            let label = TypeLabel::new(Family::A, n);
            for p in Partition::all(n + 1) {
                assert_eq!(springer_fiber_dim(label, &p).unwrap(), p.n_statistic());
            }
        }
        assert_eq!(springer_fiber_dim(lab("C3"), &part("2,1,1,1,1")).unwrap(), 6);
        assert!(springer_fiber_dim(lab("C3"), &part("3,2,1")).is_err());
        assert!(springer_fiber_dim(lab("B2"), &part("2,1,1,1")).is_err());
    }

    #[test]
    fn closure_order() {
        assert!(closure_leq(lab("C2"), &part("2,2"), &part("4")).unwrap());
        assert!(!closure_leq(lab("C3"), &part("4,1,1"), &part("3,3")).unwrap());
        assert!(!closure_leq(lab("C3"), &part("3,3"), &part("4,1,1")).unwrap());
        assert!(closure_leq(lab("C3"), &part("3,3"), &part("3,3")).unwrap());
        for t in ["B3", "C3"] {
            let classes = unipotent_partitions(lab(t)).unwrap();
            let regular = &classes[0].partition;
            for c in &classes {
                assert!(closure_leq(lab(t), &c.partition, regular).unwrap());
            }
        }
    }

    #[test]
    fn component_orders() {
        let two: Vec<(&str, Vec<String>)> = ["B2", "C2", "B3", "C3"]
            .iter()
            .map(|&t| {
                let classes = unipotent_partitions(lab(t)).unwrap();
                (t, classes.iter().filter(|c| c.component_order() == 2).map(|c| c.name()).collect())
            })
            .collect();
        assert_eq!(two[0].1, ["u1"]);
        assert_eq!(two[1].1, ["u1"]);
        assert_eq!(two[2].1, ["u1", "u2", "u4"]);
        assert_eq!(two[3].1, ["u1", "u4"]);
    }

    #[test]
    fn representatives_have_requested_jordan_type() {
        for (t, ps) in [("A2", vec![3usize, 5]), ("B2", vec![3, 5, 7]), ("C2", vec![3, 5, 7]), ("B3", vec![3, 5, 7]), ("C3", vec![3, 5, 7])] {
            for p in ps {
                let model = GroupModel::new(lab(t), p as u64).unwrap();
                for c in unipotent_partitions(lab(t)).unwrap() {
                    for v in [Variant::Standard, Variant::Twisted] {
                        let g = unipotent_rep(&model, &c.partition, v).unwrap();
                        assert!(model.preserves_form(&g.matrix));
                        assert_eq!(jordan_type(&g.matrix).unwrap(), c.partition);
                    }
                }
            }
        }
    }

    #[test]
    fn normal_forms_are_invariant() {
        for (t, ps) in [("C3", ["2,2,1,1", "4,2", "3,3"]), ("B3", ["5,1,1", "3,2,2", "3,3,1"])] {
            let model = GroupModel::new(lab(t), 5).unwrap();
            for s in ps {
                for v in [Variant::Standard, Variant::Twisted] {
                    let (g, x) = normal_form(&model, &blocks(&model, &part(s), v));
                    assert!(x.transpose().mul(&g).add(&g.mul(&x)).is_zero(), "{t} {s}");
                    let expected = if model.symmetry() == 1 { g.clone() } else { g.scale(model.field().neg(1)) };
                    assert_eq!(g.transpose(), expected);
                }
            }
        }
    }

    #[test]
    fn type_a_single_block() {
        let model = GroupModel::new(lab("A1"), 3).unwrap();
        let g = unipotent_rep(&model, &part("2"), Variant::Standard).unwrap();
        assert_eq!(g.matrix, MatrixFq::from_rows(model.field(), &[vec![1, 1], vec![0, 1]]));
    }

    #[test]
    fn lookup_by_name_or_partition() {
        assert_eq!(find_class(lab("C3"), "u2''").unwrap().partition, part("4,1,1"));
        assert_eq!(find_class(lab("C3"), "3,3").unwrap().name(), "u2'");
        assert!(find_class(lab("C3"), "3,2,1").is_err());
    }
}
