//! Class sets attached to unipotent classes: `S_u`, `ss_u`, the fibers of `phi`,
//! special-piece unions, and the type A Springer characters.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::xi::XiTable;
use crate::coxeter::{to_s2n_cycle_type, CoxeterGroup, Family, TypeLabel, WeylElement};
use crate::error::{Error, Result};
use crate::groups::{closure_leq, validate_partition, UnipotentClass};
use crate::partition::Partition;

/// For each row `g` of `nonzero`, the classes nonzero at `g` and zero at every
/// row strictly below `g`.
pub fn minimal_support_sets(nonzero: &[Vec<bool>], strictly_below: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    (0..nonzero.len())
        .map(|g| {
            (0..nonzero[g].len())
                .filter(|&c| nonzero[g][c] && (0..nonzero.len()).all(|h| !strictly_below(h, g) || !nonzero[h][c]))
                .collect()
        })
        .collect()
}

fn strictly_below(label: TypeLabel, classes: &[UnipotentClass]) -> impl Fn(usize, usize) -> bool + '_ {
    move |h, g| {
        h != g && closure_leq(label, &classes[h].partition, &classes[g].partition).expect("validated classes")
    }
}

/// `S_u` from the `z = 1` polynomials, by class name.
pub fn s_sets(classes: &[UnipotentClass], xi: &XiTable) -> Result<BTreeMap<String, Vec<usize>>> {
    let rows = classes
        .iter()
        .map(|c| {
            let e = xi
                .get(&c.name(), crate::groups::Variant::Standard)
                .filter(|e| !e.per_class.is_empty())
                .ok_or_else(|| Error::IncompleteTable(format!("{} {}", xi.label, c.name())))?;
            Ok(e.per_class.iter().map(|p| !p.is_zero()).collect())
        })
        .collect::<Result<Vec<Vec<bool>>>>()?;
    let sets = minimal_support_sets(&rows, strictly_below(xi.label, classes));
    Ok(classes.iter().map(|c| c.name()).zip(sets).collect())
}

/// `ss_u` from the `u = 1` values of every rational form.
pub fn ss_sets(classes: &[UnipotentClass], xi: &XiTable) -> Result<BTreeMap<String, Vec<usize>>> {
    let rows = classes
        .iter()
        .map(|c| {
            let entries: Vec<_> = xi.entries.iter().filter(|e| e.unipotent == c.name()).collect();
            if entries.is_empty() || entries.iter().any(|e| e.per_class.is_empty()) {
                return Err(Error::IncompleteTable(format!("{} {}", xi.label, c.name())));
            }
            let values = entries.iter().map(|e| e.at_one()).collect::<Result<Vec<_>>>()?;
            Ok((0..values[0].len()).map(|k| values.iter().any(|v| !v[k].is_zero())).collect())
        })
        .collect::<Result<Vec<Vec<bool>>>>()?;
    let sets = minimal_support_sets(&rows, strictly_below(xi.label, classes));
    Ok(classes.iter().map(|c| c.name()).zip(sets).collect())
}

/// Whether the sets are pairwise disjoint and cover `0..total`.
pub fn is_set_partition<'a>(sets: impl IntoIterator<Item = &'a Vec<usize>>, total: usize) -> bool {
    let mut seen = vec![false; total];
    for s in sets {
        for &c in s {
            if c >= total || seen[c] {
                return false;
            }
            seen[c] = true;
        }
    }
    seen.into_iter().all(|x| x)
}

/// `phi`: class of `W(C_n)` to the cycle type of its image in `S_{2n}`, grouped into fibers.
pub fn phi_map(group: &CoxeterGroup) -> Result<BTreeMap<Partition, Vec<usize>>> {
    let n = group.rank();
    let target = TypeLabel::new(Family::C, n);
    let mut fibers: BTreeMap<Partition, Vec<usize>> = BTreeMap::new();
    for class in group.classes() {
        let p = Partition::new(to_s2n_cycle_type(group, class.representative())?);
        validate_partition(target, &p)?;
        fibers.entry(p).or_default().push(class.id);
    }
    Ok(fibers)
}

/// `S_sigma` for each piece: the union of the member classes' sets.
pub fn special_piece_sets(pieces: &[Vec<String>], sets: &BTreeMap<String, Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    pieces
        .iter()
        .map(|members| {
            let mut union = BTreeSet::new();
            for m in members {
                let s = sets.get(m).ok_or_else(|| Error::IncompleteTable(format!("no set for {m}")))?;
                union.extend(s.iter().copied());
            }
            Ok(union.into_iter().collect())
        })
        .collect()
}

fn cycle_type(perm: &[u8]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts)
}

fn require_type_a(group: &CoxeterGroup) -> Result<()> {
    if group.label().family != Family::A {
        return Err(Error::TypeMismatch(format!("{} is not of type A", group.label())));
    }
    Ok(())
}

/// The class of permutations with cycle type `lambda`.
pub fn cycle_type_class(group: &CoxeterGroup, lambda: &Partition) -> Result<usize> {
    require_type_a(group)?;
    group
        .classes()
        .iter()
        .find(|c| &cycle_type(group.perm(c.representative())) == lambda)
        .map(|c| c.id)
        .ok_or_else(|| Error::InvalidPartition {
            label: group.label().to_string(),
            partition: lambda.parts().to_vec(),
            reason: "no class with this cycle type".into(),
        })
}

/// Trace of `w` on the permutation module of the cosets of the Young subgroup
/// `S_lambda`: the number of block assignments with sizes `lambda` fixed by `w`.
pub fn springer_char_a(group: &CoxeterGroup, lambda: &Partition, w: WeylElement) -> Result<u64> {
    require_type_a(group)?;
    let perm = group.perm(w);
    if lambda.size() != perm.len() {
        return Err(Error::InvalidPartition {
            label: group.label().to_string(),
            partition: lambda.parts().to_vec(),
            reason: format!("must be a partition of {}", perm.len()),
        });
    }
    fn place(i: usize, remaining: &mut [usize], labels: &mut Vec<usize>, perm: &[u8]) -> u64 {
        if i == perm.len() {
            return u64::from((0..perm.len()).all(|x| labels[perm[x] as usize] == labels[x]));
        }
        let mut total = 0;
        for b in 0..remaining.len() {
            if remaining[b] > 0 {
                remaining[b] -= 1;
                labels.push(b);
                total += place(i + 1, remaining, labels, perm);
                labels.pop();
                remaining[b] += 1;
            }
        }
        total
    }
    let mut remaining = lambda.parts().to_vec();
    Ok(place(0, &mut remaining, &mut Vec::new(), perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_weyl;

    fn grp(s: &str) -> CoxeterGroup {
        build_weyl(s.parse().unwrap()).unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn springer_characters_in_type_a() {
        let g = grp("A2");
        assert_eq!(springer_char_a(&g, &part("1,1,1"), g.identity()).unwrap(), 6);
        assert_eq!(springer_char_a(&g, &part("2,1"), g.generator(1)).unwrap(), 1);
        for w in g.elements() {
            assert_eq!(springer_char_a(&g, &part("3"), w).unwrap(), 1);
        }
        let a3 = grp("A3");
        // the permutation module on 2-subsets of 4 points: 6 at e, 2 at a transposition
        assert_eq!(springer_char_a(&a3, &part("2,2"), a3.identity()).unwrap(), 6);
        assert_eq!(springer_char_a(&a3, &part("2,2"), a3.generator(2)).unwrap(), 2);
        assert!(springer_char_a(&grp("B2"), &part("2,2"), g.identity()).is_err());
    }

    #[test]
    fn phi_fibers() {
        let c2 = grp("C2");
        let f = phi_map(&c2).unwrap();
        let labels = |p: &str| f[&part(p)].iter().map(|&c| c2.class_label(c)).collect::<Vec<_>>();
        // s1 swaps coordinates: a positive 2-cycle, parts 2,2
        assert_eq!(labels("2,2"), ["(s1)", "(w0)"]);
        assert_eq!(labels("2,1,1"), ["(s2)"]);
        assert_eq!(labels("4"), ["(s1s2)"]);
        let c3 = grp("C3");
        let f3 = phi_map(&c3).unwrap();
        assert_eq!(f3.len(), 8);
        assert!(is_set_partition(f3.values(), c3.classes().len()));
    }

    #[test]
    fn minimal_supports() {
        // rows ordered 0 < 1 < 2
        let rows = vec![vec![true, false, false], vec![true, true, false], vec![true, true, true]];
        let sets = minimal_support_sets(&rows, |h, g| h < g);
        assert_eq!(sets, vec![vec![0], vec![1], vec![2]]);
        assert!(is_set_partition(&sets, 3));
        assert!(!is_set_partition(&vec![vec![0], vec![0, 1]], 2));
    }

    #[test]
    fn piece_unions() {
        let sets: BTreeMap<String, Vec<usize>> = [("a".to_string(), vec![2]), ("b".to_string(), vec![0, 1])].into();
        let got = special_piece_sets(&[vec!["a".into(), "b".into()], vec!["a".into()]], &sets).unwrap();
        assert_eq!(got, vec![vec![0, 1, 2], vec![2]]);
        assert!(special_piece_sets(&[vec!["c".into()]], &sets).is_err());
    }

    #[test]
    fn cycle_type_classes() {
        let g = grp("A2");
        assert_eq!(g.class_label(cycle_type_class(&g, &part("2,1")).unwrap()), "(s1)");
        assert_eq!(g.class_label(cycle_type_class(&g, &part("3")).unwrap()), "(s1s2)");
    }
}
