//! Relative position from intersection dimensions, and self-dual completion.
//!
//! Much slower than the counting engine; used as an independent check of it.

use crate::coxeter::{CoxeterGroup, Family, WeylElement};
use crate::error::{Error, Result};
use crate::exact::{mat_rank, MatrixFq};
use crate::groups::GroupModel;

use super::engine::{combine, hyperbolic_split, normalized_vectors};
use super::FlagChain;

fn check_self_dual(model: &GroupModel, flag: &FlagChain) -> Result<()> {
    let n = model.size();
    if flag.dim() != n {
        return Err(Error::NotSelfDual);
    }
    if model.gram().is_none() {
        return Ok(());
    }
    for a in 0..n {
        for c in 0..n - 1 - a {
            if model.pair(&flag.basis[a], &flag.basis[c]) != 0 {
                return Err(Error::NotSelfDual);
            }
        }
    }
    Ok(())
}

/// The `w` with `dim(V_i ∩ V'_j) = #{k < j : w(k) < i}`, so that
/// `relative_position(F, ẇ F) = w` for the coordinate flag `F`.
pub fn relative_position(
    model: &GroupModel,
    group: &CoxeterGroup,
    first: &FlagChain,
    second: &FlagChain,
) -> Result<WeylElement> {
    check_self_dual(model, first)?;
    check_self_dual(model, second)?;
    let n = model.size();
    let f = model.field();
    let r = |i: usize, j: usize| -> usize {
        if i == 0 || j == 0 {
            return 0;
        }
        let cols: Vec<Vec<u32>> = first.basis[..i].iter().chain(&second.basis[..j]).cloned().collect();
        i + j - mat_rank(&MatrixFq::from_columns(f, n, &cols))
    };
    let table: Vec<Vec<usize>> = (0..=n).map(|i| (0..=n).map(|j| r(i, j)).collect()).collect();
    let mut coords = vec![usize::MAX; n];
    for j in 1..=n {
        for i in 1..=n {
            if table[i][j] + table[i - 1][j - 1] == table[i - 1][j] + table[i][j - 1] + 1 {
                coords[j - 1] = i - 1;
            }
        }
    }
    let rank = model.label().rank;
    let points: Option<Vec<u8>> = if model.label().family == Family::B {
        if coords[rank] != rank {
            None
        } else {
            coords
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != rank)
                .map(|(_, &c)| Some(if c < rank { c as u8 } else { (c - 1) as u8 }))
                .collect()
        }
    } else {
        Some(coords.iter().map(|&c| c as u8).collect())
    };
    points
        .and_then(|p| group.from_perm(&p))
        .ok_or(Error::PermutationOutsideSubgroup(coords))
}

/// Extends an isotropic chain `v_1, ..., v_k` (with `V_i` spanned by the first
/// `i` vectors) to a self-dual complete flag, choosing further isotropic lines if `k < n`.
pub fn complete_isotropic_flag(model: &GroupModel, chain: &[Vec<u32>]) -> Result<FlagChain> {
    if model.gram().is_none() {
        return Err(Error::TypeMismatch(format!("{} has no form", model.label())));
    }
    let f = model.field();
    let size = model.size();
    let sigma = f.reduce(model.symmetry());
    for (a, x) in chain.iter().enumerate() {
        if chain[..=a].iter().any(|y| model.pair(x, y) != 0) {
            return Err(Error::NotIsotropic);
        }
    }
    let mut mid: Vec<Vec<u32>> = (0..size).map(|k| (0..size).map(|i| u32::from(i == k)).collect()).collect();
    let mut fs: Vec<Vec<u32>> = Vec::new();
    let mut hs: Vec<Vec<u32>> = Vec::new();
    for v in chain {
        // v is orthogonal to the earlier f's, so removing its f-components lands in mid
        let mut x = v.clone();
        for (fk, hk) in fs.iter().zip(&hs) {
            let c = model.pair(&x, hk);
            x = x.iter().zip(fk).map(|(&a, &b)| f.sub(a, f.mul(c, b))).collect();
        }
        let (h, next) = hyperbolic_split(f, sigma, |a, b| model.pair(a, b), &mid, &x).ok_or(Error::NotIsotropic)?;
        fs.push(x);
        hs.push(h);
        mid = next;
    }
    while fs.len() < model.label().rank {
        let x = normalized_vectors(f.p(), mid.len())
            .into_iter()
            .map(|c| combine(f, &c, &mid))
            .find(|y| model.pair(y, y) == 0)
            .ok_or(Error::NotIsotropic)?;
        let (h, next) = hyperbolic_split(f, sigma, |a, b| model.pair(a, b), &mid, &x).ok_or(Error::NotIsotropic)?;
        fs.push(x);
        hs.push(h);
        mid = next;
    }
    let mut basis = fs;
    basis.extend(mid);
    basis.extend(hs.into_iter().rev());
    if basis.len() != size || mat_rank(&MatrixFq::from_columns(f, size, &basis)) != size {
        return Err(Error::NotIsotropic);
    }
    Ok(FlagChain { basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_weyl, TypeLabel};
    use crate::flags::for_each_flag;
    use crate::groups::{unipotent_partitions, unipotent_rep, Variant};

    fn setup(label: &str, p: u64) -> (GroupModel, CoxeterGroup) {
        let t: TypeLabel = label.parse().unwrap();
        (GroupModel::new(t, p).unwrap(), build_weyl(t).unwrap())
    }

    #[test]
    fn orientation_is_pinned_by_weyl_representatives() {
        for label in ["A1", "A2", "A3", "B2", "C2", "B3", "C3"] {
            let (m, w) = setup(label, 5);
            let std = FlagChain::standard(m.size());
            for e in w.elements() {
                let moved = std.apply(&m.weyl_rep(&w, e));
                assert_eq!(relative_position(&m, &w, &std, &moved).unwrap(), e, "{label} {}", w.word_label(e));
            }
        }
    }

    #[test]
    fn bruhat_histogram_a2() {
        let (m, w) = setup("A2", 3);
        let std = FlagChain::standard(3);
        let mut hist = vec![0u64; w.order()];
        for_each_flag(&m, |fl| hist[relative_position(&m, &w, &std, fl).unwrap().0] += 1);
        for e in w.elements() {
            assert_eq!(hist[e.0], 3u64.pow(w.length(e) as u32));
        }
    }

    #[test]
    fn inversion_symmetry() {
        let (m, w) = setup("C2", 3);
        let flags = crate::flags::enumerate_flags(&m);
        for a in flags.iter().step_by(7) {
            for b in flags.iter().step_by(11) {
                let ab = relative_position(&m, &w, a, b).unwrap();
                let ba = relative_position(&m, &w, b, a).unwrap();
                assert_eq!(w.inverse(ab), ba);
            }
        }
    }

    #[test]
    fn engine_agrees_with_oracle() {
        for (label, p, step) in [("A2", 3, 1), ("B2", 3, 1), ("C2", 3, 1), ("A3", 2, 2), ("B3", 3, 5), ("C3", 3, 5)] {
            let (m, w) = setup(label, p);
            for class in unipotent_partitions(m.label()).unwrap().into_iter().step_by(step) {
                let variants: &[Variant] = if w.rank() < 3 { &[Variant::Standard, Variant::Twisted] } else { &[Variant::Twisted] };
                for &variant in variants {
                    let g = unipotent_rep(&m, &class.partition, variant).unwrap().matrix;
                    let mut slow = vec![0u64; w.order()];
                    for_each_flag(&m, |fl| slow[relative_position(&m, &w, fl, &fl.apply(&g)).unwrap().0] += 1);
                    let fast = crate::flags::count_partition(&m, &w, &g, 1).unwrap();
                    assert_eq!(fast, slow, "{label} {}", class.partition);
                }
            }
        }
    }

    #[test]
    fn completion_of_coordinate_chains() {
        let (m, _) = setup("C3", 3);
        let std = FlagChain::standard(6);
        assert_eq!(complete_isotropic_flag(&m, &std.basis[..3]).unwrap(), std);
        let (m, _) = setup("B2", 5);
        let std = FlagChain::standard(5);
        assert_eq!(complete_isotropic_flag(&m, &std.basis[..2]).unwrap(), std);
        let (m, _) = setup("C2", 3);
        let line = vec![vec![1, 0, 0, 0]];
        let full = complete_isotropic_flag(&m, &line).unwrap();
        assert_eq!(full.dim(), 4);
        assert!(check_self_dual(&m, &full).is_ok());
        assert!(complete_isotropic_flag(&m, &[vec![1, 0, 0, 1]]).is_ok());
        let (m, _) = setup("B2", 3);
        assert!(matches!(complete_isotropic_flag(&m, &[vec![0, 0, 1, 0, 0]]), Err(Error::NotIsotropic)));
    }
}
