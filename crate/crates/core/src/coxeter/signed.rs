//! Signed-cycle combinatorics for the hyperoctahedral groups `W(B_n) = W(C_n)`.

use super::group::{CoxeterGroup, WeylElement};
use crate::error::{Error, Result};

/// A bipartition `(positive cycle lengths; negative cycle lengths)`, both descending.
pub type Bipartition = (Vec<usize>, Vec<usize>);

/// Signed cycle type of `w`, viewing it as a permutation of `{1..n, n'..1'}`
/// commuting with `i <-> i'`.
pub fn signed_cycle_type(group: &CoxeterGroup, w: WeylElement) -> Result<Bipartition> {
    if !group.label().is_signed() {
        return Err(Error::TypeMismatch(format!("{} is not of type B or C", group.label())));
    }
    let perm = group.perm(w);
    let deg = perm.len();
    let n = deg / 2;
    let mirror = |x: usize| deg - 1 - x;
    let mut visited = vec![false; n];
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut x = start;
        let mut len = 0;
        let mut negative = false;
        loop {
            visited[x.min(mirror(x))] = true;
            x = perm[x] as usize;
            len += 1;
            if x == mirror(start) {
                negative = true;
            }
            if x == start {
                break;
            }
        }
        if negative {
            neg.push(len / 2);
        } else {
            pos.push(len);
        }
    }
    pos.sort_unstable_by(|a, b| b.cmp(a));
    neg.sort_unstable_by(|a, b| b.cmp(a));
    Ok((pos, neg))
}

/// The cycle type of `w` inside `S_{2n}`: a positive `j`-cycle gives parts `j, j`,
/// a negative `j`-cycle gives one part `2j`.
pub fn to_s2n_cycle_type(group: &CoxeterGroup, w: WeylElement) -> Result<Vec<usize>> {
    let (pos, neg) = signed_cycle_type(group, w)?;
    Ok(bipartition_to_s2n(&pos, &neg))
}

pub fn bipartition_to_s2n(pos: &[usize], neg: &[usize]) -> Vec<usize> {
    let mut parts: Vec<usize> = pos.iter().flat_map(|&j| [j, j]).chain(neg.iter().map(|&j| 2 * j)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Human-readable bipartition, e.g. `"(2;-)"` or `"(-;1,1)"`.
pub fn format_bipartition((pos, neg): &Bipartition) -> String {
    let side = |v: &[usize]| {
        if v.is_empty() {
            "-".to_string()
        } else {
            v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        }
    };
    format!("({};{})", side(pos), side(neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_weyl;

    #[test]
    fn rank_two_examples() {
        let c2 = build_weyl("C2".parse().unwrap()).unwrap();
        assert_eq!(signed_cycle_type(&c2, c2.longest()).unwrap(), (vec![], vec![1, 1]));
        // s1 permutes the two coordinates; it is the short simple reflection of C2
        assert_eq!(signed_cycle_type(&c2, c2.generator(1)).unwrap(), (vec![2], vec![]));
        assert_eq!(to_s2n_cycle_type(&c2, c2.generator(1)).unwrap(), vec![2, 2]);
        let cox = c2.parse_element("s1s2").unwrap();
        assert_eq!(signed_cycle_type(&c2, cox).unwrap(), (vec![], vec![2]));
        assert_eq!(to_s2n_cycle_type(&c2, cox).unwrap(), vec![4]);
        assert_eq!(to_s2n_cycle_type(&c2, c2.longest()).unwrap(), vec![2, 2]);
        assert_eq!(format_bipartition(&(vec![], vec![1, 1])), "(-;1,1)");
    }

    #[test]
    fn identity_and_type_mismatch() {
        let c3 = build_weyl("C3".parse().unwrap()).unwrap();
        assert_eq!(signed_cycle_type(&c3, c3.identity()).unwrap(), (vec![1, 1, 1], vec![]));
        let a2 = build_weyl("A2".parse().unwrap()).unwrap();
        assert!(matches!(signed_cycle_type(&a2, a2.identity()), Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn odd_parts_have_even_multiplicity() {
        for t in ["C2", "C3", "B3", "C4"] {
            let w = build_weyl(t.parse().unwrap()).unwrap();
            for x in w.elements() {
                let (pos, neg) = signed_cycle_type(&w, x).unwrap();
                assert_eq!(pos.iter().sum::<usize>() + neg.iter().sum::<usize>(), w.rank());
                let parts = to_s2n_cycle_type(&w, x).unwrap();
                // equals the honest cycle type in S_2n
                let perm = w.perm(x);
                let mut seen = vec![false; perm.len()];
                let mut direct = Vec::new();
                for s in 0..perm.len() {
                    if seen[s] {
                        continue;
                    }
                    let (mut y, mut len) = (s, 0);
                    while !seen[y] {
                        seen[y] = true;
                        y = perm[y] as usize;
                        len += 1;
                    }
                    direct.push(len);
                }
                direct.sort_unstable_by(|a, b| b.cmp(a));
                assert_eq!(parts, direct);
                for j in parts.iter().filter(|&&j| j % 2 == 1) {
                    assert_eq!(parts.iter().filter(|&&k| k == *j).count() % 2, 0);
                }
            }
        }
    }

    #[test]
    fn signed_cycle_type_is_a_class_invariant() {
        let w = build_weyl("C3".parse().unwrap()).unwrap();
        let mut labels = std::collections::HashSet::new();
        for c in w.classes() {
            let l0 = signed_cycle_type(&w, c.members[0]).unwrap();
            for &m in &c.members {
                assert_eq!(signed_cycle_type(&w, m).unwrap(), l0);
            }
            labels.insert(l0);
        }
        // classes of the hyperoctahedral group are exactly the bipartitions
        assert_eq!(labels.len(), w.classes().len());
    }
}
