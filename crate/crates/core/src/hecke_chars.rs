//! Character values of the irreducible modules of the generic Hecke algebra
//! (types A and B/C, equal parameters) from seminormal matrices, and the
//! linear solve expressing flag-piece counts through them.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coxeter::{CoxeterGroup, Family, WeylElement};
use crate::error::{Error, Result};
use crate::exact::ratlin::{self, RatMatrix};
use crate::partition::Partition;

/// Irreducible representation label: a partition of `n + 1` in type `A_n`,
/// a bipartition of `n` in types `B_n` and `C_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrLabel {
    Partition(Partition),
    Bipartition(Partition, Partition),
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |p: &Partition| if p.is_empty() { "-".to_string() } else { p.to_string() };
        match self {
            IrrLabel::Partition(p) => write!(f, "[{p}]"),
            IrrLabel::Bipartition(a, b) => write!(f, "[{};{}]", side(a), side(b)),
        }
    }
}

impl IrrLabel {
    fn shapes(&self) -> Vec<&Partition> {
        match self {
            IrrLabel::Partition(p) => vec![p],
            IrrLabel::Bipartition(a, b) => vec![a, b],
        }
    }
}

/// All irreducible labels of the type, trivial representation first.
pub fn irr_labels(group: &CoxeterGroup) -> Result<Vec<IrrLabel>> {
    let n = group.rank();
    match group.label().family {
        Family::A => Ok(Partition::all(n + 1).into_iter().map(IrrLabel::Partition).collect()),
        Family::B | Family::C => Ok((0..=n)
            .rev()
            .flat_map(|k| {
                Partition::all(k).into_iter().flat_map(move |a| {
                    Partition::all(n - k).into_iter().map(move |b| IrrLabel::Bipartition(a.clone(), b))
                })
            })
            .collect()),
        Family::G => Err(Error::UnsupportedType(format!("{}: no seminormal model", group.label()))),
    }
}

/// Box of a (multi)tableau: component, row, column.
type Cell = (usize, usize, usize);

fn standard_tableaux(shapes: &[&Partition]) -> Vec<Vec<Cell>> {
    let n: usize = shapes.iter().map(|p| p.size()).sum();
    let mut out = Vec::new();
    let mut filled: Vec<Vec<usize>> = shapes.iter().map(|p| vec![0; p.len()]).collect();
    fn rec(shapes: &[&Partition], filled: &mut [Vec<usize>], cur: &mut Vec<Cell>, n: usize, out: &mut Vec<Vec<Cell>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for comp in 0..shapes.len() {
            for row in 0..shapes[comp].len() {
                let len = filled[comp][row];
                let fits = len < shapes[comp].parts()[row] && (row == 0 || filled[comp][row - 1] > len);
                if fits {
                    filled[comp][row] += 1;
                    cur.push((comp, row, len));
                    rec(shapes, filled, cur, n, out);
                    cur.pop();
                    filled[comp][row] -= 1;
                }
            }
        }
    }
    rec(shapes, &mut filled, &mut Vec::new(), n, &mut out);
    out
}

fn pow(u0: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(u0.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// `[m]_u = 1 + u + ... + u^(m-1)`.
fn qint(u0: &BigRational, m: i64) -> BigRational {
    (0..m).fold(BigRational::zero(), |acc, k| acc + pow(u0, k))
}

/// Diagonal coefficient `(u - 1) / (1 - r)` where `r = sign * u^e` is the
/// ratio of the residues of `i` and `i + 1`, written so that `u0 = 1` is allowed.
fn diagonal(u0: &BigRational, sign: i64, e: i64) -> Result<BigRational> {
    if sign == 1 {
        return Ok(match e.cmp(&0) {
            std::cmp::Ordering::Greater => -qint(u0, e).recip(),
            std::cmp::Ordering::Less => pow(u0, -e) / qint(u0, -e),
            std::cmp::Ordering::Equal => return Err(Error::SingularAtPoint("equal residues".into())),
        });
    }
    let den = BigRational::one() + pow(u0, e);
    if den.is_zero() {
        return Err(Error::SingularAtPoint(format!("u = {u0}")));
    }
    Ok((u0 - BigRational::one()) / den)
}

/// Generator matrices of one irreducible module at `u = u0`, indexed by the
/// group's own generator numbering.
pub fn seminormal_generators(group: &CoxeterGroup, label: &IrrLabel, u0: &BigRational) -> Result<Vec<RatMatrix>> {
    let family = group.label().family;
    let n = group.rank();
    let shapes = label.shapes();
    let tabs = standard_tableaux(&shapes);
    let index: HashMap<&Vec<Cell>, usize> = tabs.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let dim = tabs.len();
    // residue of a cell: sign * u^exp
    let residue = |(comp, row, col): Cell| -> (i64, i64) {
        let content = col as i64 - row as i64;
        match (family, comp) {
            (Family::A, _) => (1, content),
            (_, 0) => (1, content + 1),
            _ => (-1, content),
        }
    };

    // Matrix of T_i (i >= 1, swapping entries i and i+1) or of T_0.
    let generator = |i: usize| -> Result<RatMatrix> {
        let mut m = vec![vec![BigRational::zero(); dim]; dim];
        for (a, t) in tabs.iter().enumerate() {
            if i == 0 {
                let (s, e) = residue(t[0]);
                m[a][a] = BigRational::from_integer(s.into()) * pow(u0, e);
                continue;
            }
            let (x, y) = (t[i - 1], t[i]);
            let diag_of = |x: Cell, y: Cell| {
                let (sx, ex) = residue(x);
                let (sy, ey) = residue(y);
                diagonal(u0, sx * sy, ex - ey)
            };
            m[a][a] = diag_of(x, y)?;
            let mut partner = t.clone();
            partner.swap(i - 1, i);
            if let Some(&b) = index.get(&partner) {
                let later = (y.0, y.1) > (x.0, x.1);
                m[b][a] = if later { BigRational::one() } else { diag_of(x, y)? * diag_of(y, x)? + u0 };
            }
        }
        Ok(m)
    };

    (1..=n)
        .map(|k| match family {
            Family::A => generator(k),
            _ if k == n => generator(0),
            _ => generator(n - k),
        })
        .collect()
}

/// Traces of `T_w` on every irreducible module, for every `w`, at one `u0`.
#[derive(Debug, Clone)]
pub struct HeckeCharacters {
    pub labels: Vec<IrrLabel>,
    pub u0: BigRational,
    /// `values[e][w]`
    values: Vec<Vec<BigRational>>,
}

impl HeckeCharacters {
    pub fn new(group: &CoxeterGroup, u0: &BigRational) -> Result<Self> {
        if *u0 <= BigRational::zero() {
            return Err(Error::SingularAtPoint(format!("u = {u0}")));
        }
        let labels = irr_labels(group)?;
        let values = labels
            .iter()
            .map(|label| {
                let gens = seminormal_generators(group, label, u0)?;
                let dim = gens[0].len();
                // T_w = T_s T_{sw} where s is the first letter of the canonical word
                let mut mats: Vec<RatMatrix> = Vec::with_capacity(group.order());
                mats.push(ratlin::identity(dim));
                for w in group.elements().skip(1) {
                    let s = group.word(w)[0] as usize;
                    let rest = group.left_mul_gen(s, w);
                    mats.push(ratlin::mat_mul(&gens[s - 1], &mats[rest.0]));
                }
                Ok(mats.iter().map(ratlin::trace).collect())
            })
            .collect::<Result<_>>()?;
        Ok(Self { labels, u0: u0.clone(), values })
    }

    pub fn value(&self, e: usize, w: WeylElement) -> &BigRational {
        &self.values[e][w.0]
    }

    pub fn dims(&self) -> Vec<BigRational> {
        self.values.iter().map(|v| v[0].clone()).collect()
    }
}

/// `tr(T_w, E)` at `u = u0`.
pub fn char_value(group: &CoxeterGroup, label: &IrrLabel, w: WeylElement, u0: &BigRational) -> Result<BigRational> {
    let gens = seminormal_generators(group, label, u0)?;
    let dim = gens[0].len();
    let m = group
        .word(w)
        .iter()
        .fold(ratlin::identity(dim), |acc, &s| ratlin::mat_mul(&acc, &gens[s as usize - 1]));
    Ok(ratlin::trace(&m))
}

/// Character values at class representatives: rows are irreducibles, columns classes.
#[derive(Debug, Clone)]
pub struct CharMatrix {
    pub labels: Vec<IrrLabel>,
    pub reps: Vec<WeylElement>,
    pub u0: BigRational,
    pub entries: RatMatrix,
}

pub fn char_matrix(group: &CoxeterGroup, u0: &BigRational) -> Result<CharMatrix> {
    let chars = HeckeCharacters::new(group, u0)?;
    char_matrix_from(group, &chars)
}

fn char_matrix_from(group: &CoxeterGroup, chars: &HeckeCharacters) -> Result<CharMatrix> {
    let reps: Vec<WeylElement> = group.classes().iter().map(|c| c.representative()).collect();
    let entries: RatMatrix =
        (0..chars.labels.len()).map(|e| reps.iter().map(|&w| chars.value(e, w).clone()).collect()).collect();
    if entries.len() != reps.len() || ratlin::determinant(&entries).is_zero() {
        return Err(Error::SingularAtPoint(format!("{} at u = {}", group.label(), chars.u0)));
    }
    Ok(CharMatrix { labels: chars.labels.clone(), reps, u0: chars.u0.clone(), entries })
}

/// Solves `N_w = sum_E x_E tr(T_w, E_q)` on class representatives, then checks
/// the equation for every `w`.
pub fn solve_unipotent_traces(group: &CoxeterGroup, counts: &[BigInt], q: u64) -> Result<Vec<(IrrLabel, BigRational)>> {
    let u0 = BigRational::from_integer(q.into());
    let chars = HeckeCharacters::new(group, &u0)?;
    let cm = char_matrix_from(group, &chars)?;
    let k = cm.labels.len();
    let transposed: RatMatrix = (0..k).map(|c| (0..k).map(|e| cm.entries[e][c].clone()).collect()).collect();
    let rhs: Vec<BigRational> = cm.reps.iter().map(|w| BigRational::from_integer(counts[w.0].clone())).collect();
    let x = ratlin::solve(&transposed, &rhs).ok_or_else(|| Error::SingularAtPoint(format!("u = {q}")))?;
    for w in group.elements() {
        let lhs = (0..k).fold(BigRational::zero(), |acc, e| acc + &x[e] * chars.value(e, w));
        let expected = BigRational::from_integer(counts[w.0].clone());
        if lhs != expected {
            return Err(Error::FullSystemMismatch {
                word: group.word_label(w),
                expected: expected.to_string(),
                actual: lhs.to_string(),
            });
        }
    }
    Ok(cm.labels.into_iter().zip(x).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_weyl;
    use crate::exact::rat;

    fn grp(s: &str) -> CoxeterGroup {
        build_weyl(s.parse().unwrap()).unwrap()
    }

    fn is_zero_mat(m: &RatMatrix) -> bool {
        m.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    fn sub(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
        a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
    }

    /// Quadratic and braid relations of the generator matrices.
    fn check_relations(t: &str, u0: i64) {
        let w = grp(t);
        let u0 = rat(u0);
        for label in irr_labels(&w).unwrap() {
            let g = seminormal_generators(&w, &label, &u0).unwrap();
            let dim = g[0].len();
            let id = ratlin::identity(dim);
            for (i, m) in g.iter().enumerate() {
                // (T - u)(T + 1) = 0
                let a: RatMatrix = sub(m, &id.iter().map(|r| r.iter().map(|x| x * &u0).collect()).collect());
                let b: RatMatrix = m.iter().zip(&id).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect();
                assert!(is_zero_mat(&ratlin::mat_mul(&a, &b)), "{t} {label} quadratic s{}", i + 1);
                for (j, mj) in g.iter().enumerate().skip(i + 1) {
                    let order = w.coxeter_matrix()[i][j];
                    let (mut lhs, mut rhs) = (id.clone(), id.clone());
                    for k in 0..order {
                        lhs = ratlin::mat_mul(&lhs, if k % 2 == 0 { m } else { mj });
                        rhs = ratlin::mat_mul(&rhs, if k % 2 == 0 { mj } else { m });
                    }
                    assert_eq!(lhs, rhs, "{t} {label} braid s{} s{}", i + 1, j + 1);
                }
            }
        }
    }

    #[test]
    fn seminormal_relations_hold() {
        for t in ["A1", "A2", "A3", "B2", "B3", "C3"] {
            check_relations(t, 3);
            check_relations(t, 1);
        }
        check_relations("A4", 2);
    }

    #[test]
    fn one_dimensional_values() {
        let a1 = grp("A1");
        let triv = IrrLabel::Partition(Partition::new(vec![2]));
        let sign = IrrLabel::Partition(Partition::new(vec![1, 1]));
        assert_eq!(char_value(&a1, &triv, a1.generator(1), &rat(5)).unwrap(), rat(5));
        assert_eq!(char_value(&a1, &sign, a1.generator(1), &rat(5)).unwrap(), rat(-1));
        let a2 = grp("A2");
        let std = IrrLabel::Partition(Partition::new(vec![2, 1]));
        assert_eq!(char_value(&a2, &std, a2.identity(), &rat(7)).unwrap(), rat(2));
    }

    #[test]
    fn linear_characters_are_multiplicative() {
        let w = grp("B3");
        let chars = HeckeCharacters::new(&w, &rat(3)).unwrap();
        for (e, label) in chars.labels.iter().enumerate() {
            if chars.value(e, w.identity()) != &rat(1) {
                continue;
            }
            for x in w.elements() {
                let prod = w.word(x).iter().fold(rat(1), |acc, &s| acc * chars.value(e, w.generator(s as usize)));
                assert_eq!(chars.value(e, x), &prod, "{label}");
            }
        }
    }

    #[test]
    fn trace_is_independent_of_reduced_word() {
        let w = grp("C3");
        let u0 = rat(5);
        let chars = HeckeCharacters::new(&w, &u0).unwrap();
        for (e, label) in chars.labels.iter().enumerate() {
            let gens = seminormal_generators(&w, label, &u0).unwrap();
            for x in w.elements() {
                // the lexicographically greatest reduced word, built from right descents
                let mut word = Vec::new();
                let mut y = x;
                while w.length(y) > 0 {
                    let s = (1..=w.rank()).rev().find(|&s| w.length(w.right_mul_gen(y, s)) < w.length(y)).unwrap();
                    word.push(s);
                    y = w.right_mul_gen(y, s);
                }
                word.reverse();
                let m = word.iter().fold(ratlin::identity(gens[0].len()), |acc, &s| ratlin::mat_mul(&acc, &gens[s - 1]));
                assert_eq!(&ratlin::trace(&m), chars.value(e, x));
            }
        }
    }

    #[test]
    fn tits_specialization_gives_orthonormal_characters() {
        for t in ["A1", "A2", "A3", "B2", "B3", "C3"] {
            let w = grp(t);
            let chars = HeckeCharacters::new(&w, &rat(1)).unwrap();
            assert_eq!(chars.labels.len(), w.classes().len());
            let k = chars.labels.len();
            for a in 0..k {
                for b in 0..k {
                    let ip = w.elements().fold(rat(0), |acc, x| acc + chars.value(a, x) * chars.value(b, w.inverse(x)));
                    let expected = if a == b { rat(w.order() as i64) } else { rat(0) };
                    assert_eq!(ip, expected, "{t} {} {}", chars.labels[a], chars.labels[b]);
                }
            }
        }
        // S3 table at class reps (1), (s1), (s1s2)
        let a2 = grp("A2");
        let cm = char_matrix(&a2, &rat(1)).unwrap();
        assert_eq!(cm.entries, vec![vec![rat(1), rat(1), rat(1)], vec![rat(2), rat(0), rat(-1)], vec![rat(1), rat(-1), rat(1)]]);
    }

    #[test]
    fn char_matrices() {
        let a1 = grp("A1");
        let cm = char_matrix(&a1, &rat(3)).unwrap();
        assert_eq!(cm.entries, vec![vec![rat(1), rat(3)], vec![rat(1), rat(-1)]]);
        for q in [2, 3, 5] {
            assert!(char_matrix(&grp("A2"), &rat(q)).is_ok());
        }
        let b2 = char_matrix(&grp("B2"), &rat(3)).unwrap();
        assert_eq!(b2.entries.len(), 5);
        assert!(matches!(irr_labels(&grp("G2")), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn solves_small_cases() {
        let a1 = grp("A1");
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let x = solve_unipotent_traces(&a1, &big(&[1, 3]), 3).unwrap();
        assert_eq!(x.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(), vec![rat(1), rat(0)]);
        let x = solve_unipotent_traces(&a1, &big(&[4, 0]), 3).unwrap();
        assert_eq!(x.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(), vec![rat(1), rat(3)]);

        let a2 = grp("A2");
        let x = solve_unipotent_traces(&a2, &big(&[21, 0, 0, 0, 0, 0]), 2).unwrap();
        assert_eq!(x.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(), vec![rat(1), rat(6), rat(8)]);

        let bad = solve_unipotent_traces(&a2, &big(&[21, 1, 0, 0, 0, 0]), 2);
        assert!(matches!(bad, Err(Error::FullSystemMismatch { .. })));
    }
}
