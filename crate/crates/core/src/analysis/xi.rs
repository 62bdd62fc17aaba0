//! The polynomials `Xi^C_{g,z}` from count vectors at several primes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::coxeter::{CoxeterGroup, TypeLabel};
use crate::error::{Error, Result};
use crate::exact::{interpolate_poly, LaurentPoly};
use crate::flags::CountVector;
use crate::groups::Variant;
use crate::hecke::{GroupAlgebraElement, HeckeVec, NumericHecke, Params};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XiProvenance {
    Interpolated,
    Tabulated,
    SampledOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// Needs `l(w0) + 1` primes; yields polynomials.
    Full,
    /// Any number of primes; keeps the certified counts only.
    Sampled,
}

/// Data for one unipotent class and rational form.
#[derive(Debug, Clone, PartialEq)]
pub struct XiEntry {
    pub unipotent: String,
    pub variant: Variant,
    pub provenance: XiProvenance,
    /// `Xi^w` for every `w` (interpolated entries only).
    pub per_element: Vec<LaurentPoly>,
    /// `Xi^C` indexed by class id (interpolated entries only).
    pub per_class: Vec<LaurentPoly>,
    /// `q -> N_{w_C}(q)` by class id.
    pub samples: BTreeMap<u64, Vec<BigInt>>,
}

impl XiEntry {
    /// `xi^C = Xi^C(1)` by class id.
    pub fn at_one(&self) -> Result<Vec<BigInt>> {
        self.per_class.iter().map(|p| Ok(p.eval(&BigRational::one())?.to_integer())).collect()
    }

    /// `pi = sum_w Xi^w(1) w` in the group ring.
    pub fn pi_at_one(&self, label: TypeLabel) -> Result<GroupAlgebraElement> {
        let coeffs = self.per_element.iter().map(|p| Ok(p.eval(&BigRational::one())?.to_integer())).collect::<Result<_>>()?;
        Ok(GroupAlgebraElement { label, coeffs })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct XiTable {
    pub label: TypeLabel,
    pub entries: Vec<XiEntry>,
}

impl XiTable {
    pub fn get(&self, unipotent: &str, variant: Variant) -> Option<&XiEntry> {
        self.entries.iter().find(|e| e.unipotent == unipotent && e.variant == variant)
    }
}

/// `Pi_q = sum_w N_w T̂_w` at `u = q`.
pub fn pi_at_q(group: &CoxeterGroup, cv: &CountVector) -> NumericHecke {
    HeckeVec::from_coeffs(group, group.elements().map(|w| (w, BigRational::from_integer(cv.get(w).into()))))
}

/// Checks that `Pi_q` is central and constant on `C ∩ W_min`; returns the class profile.
pub fn certify(group: &CoxeterGroup, cv: &CountVector) -> Result<Vec<BigInt>> {
    if cv.label != group.label() {
        return Err(Error::GroupMismatch(cv.label.to_string(), group.label().to_string()));
    }
    let h = pi_at_q(group, cv);
    let params = Params::at(&BigRational::from_integer(cv.q.into()))?;
    if !h.centrality(group, &params).is_central() {
        return Err(Error::NotCentral(format!("{} q={} {} {}", cv.label, cv.q, cv.class, cv.variant.as_str())));
    }
    Ok(h.min_coeff_profile(group)?.into_iter().map(|c| c.to_integer()).collect())
}

fn fit(group: &CoxeterGroup, points: &[(u64, BigInt)]) -> Result<LaurentPoly> {
    let samples: Vec<(BigRational, BigRational)> = points
        .iter()
        .map(|(q, n)| (BigRational::from_integer((*q).into()), BigRational::from_integer(n.clone())))
        .collect();
    let poly = interpolate_poly(&samples, group.length(group.longest()))?;
    let ints = poly.to_integer_coeffs().ok_or_else(|| Error::NonIntegerCoefficients(poly.to_string()))?;
    let lp = LaurentPoly::from_poly(&ints);
    for (q, n) in points {
        if lp.eval_int(*q as i64)? != BigRational::from_integer(n.clone()) {
            return Err(Error::OverdeterminedMismatch { q: q.to_string() });
        }
    }
    Ok(lp)
}

/// Certifies each vector, then (in full mode) interpolates `N_w(q)` in `u` with
/// degree bound `l(w0)` for every `w`.
pub fn xi_from_samples(
    group: &CoxeterGroup,
    unipotent: &str,
    counts: &[CountVector],
    mode: SampleMode,
) -> Result<XiEntry> {
    let first = counts.first().ok_or(Error::InsufficientSamples { needed: 1, got: 0 })?;
    if let Some(other) = counts.iter().find(|c| c.class != first.class || c.variant != first.variant) {
        return Err(Error::TypeMismatch(format!("mixed samples {} and {}", first.class, other.class)));
    }
    let mut samples = BTreeMap::new();
    for cv in counts {
        if samples.insert(cv.q, certify(group, cv)?).is_some() {
            return Err(Error::DuplicateAbscissa(cv.q.to_string()));
        }
    }
    let mut entry = XiEntry {
        unipotent: unipotent.to_string(),
        variant: first.variant,
        provenance: XiProvenance::SampledOnly,
        per_element: Vec::new(),
        per_class: Vec::new(),
        samples,
    };
    if mode == SampleMode::Full {
        let needed = group.length(group.longest()) + 1;
        if counts.len() < needed {
            return Err(Error::InsufficientSamples { needed, got: counts.len() });
        }
        entry.per_element = group
            .elements()
            .map(|w| fit(group, &counts.iter().map(|c| (c.q, BigInt::from(c.get(w)))).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        entry.per_class = group.classes().iter().map(|c| entry.per_element[c.representative().0].clone()).collect();
        entry.provenance = XiProvenance::Interpolated;
    }
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::counts::Counter;
    use crate::coxeter::build_weyl;
    use crate::groups::find_class;

    fn entry(t: &str, class: &str, qs: &[u64], variant: Variant) -> (CoxeterGroup, XiEntry) {
        let g = build_weyl(t.parse().unwrap()).unwrap();
        let c = find_class(g.label(), class).unwrap();
        let mut counter = Counter::new(1);
        let cvs: Vec<CountVector> =
            qs.iter().map(|&q| counter.unipotent(&g, q, &[(&c, variant)]).unwrap().remove(0)).collect();
        let e = xi_from_samples(&g, &c.name(), &cvs, SampleMode::Full).unwrap();
        (g, e)
    }

    #[test]
    fn identity_of_a2_gives_the_flag_polynomial() {
        let (g, e) = entry("A2", "1,1,1", &[2, 3, 5, 7], Variant::Standard);
        assert_eq!(e.per_class[g.class_of(g.identity())], LaurentPoly::from_poly(&[1, 2, 2, 1]));
        assert!(e.per_class[1..].iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn b2_subregular_longest_element() {
        let (g, e) = entry("B2", "3,1,1", &[3, 5, 7, 11, 13], Variant::Standard);
        assert_eq!(e.per_class[g.class_of(g.longest())], LaurentPoly::from_coeffs(3, &[-1, 1]));
        let (g, t) = entry("B2", "3,1,1", &[3, 5, 7, 11, 13], Variant::Twisted);
        let s2 = g.class_of(g.generator(2));
        let at_one = t.at_one().unwrap();
        assert_eq!(at_one[s2], BigInt::from(0));
        assert_eq!(at_one[g.class_of(g.longest())], BigInt::from(2));
    }

    #[test]
    fn too_few_samples_and_inconsistent_samples_are_rejected() {
        let g = build_weyl("A1".parse().unwrap()).unwrap();
        let cv = |q: u64, counts: Vec<u64>| CountVector {
            label: g.label(),
            q,
            class: "2".into(),
            variant: Variant::Standard,
            counts,
        };
        assert!(matches!(
            xi_from_samples(&g, "u0", &[cv(3, vec![1, 3])], SampleMode::Full),
            Err(Error::InsufficientSamples { .. })
        ));
        let bad = [cv(2, vec![1, 2]), cv(3, vec![1, 3]), cv(5, vec![1, 6])];
        assert!(matches!(
            xi_from_samples(&g, "u0", &bad, SampleMode::Full),
            Err(Error::OverdeterminedMismatch { .. })
        ));
        let sampled = xi_from_samples(&g, "u0", &bad[..1], SampleMode::Sampled).unwrap();
        assert_eq!(sampled.provenance, XiProvenance::SampledOnly);
        assert_eq!(sampled.samples[&2], vec![BigInt::from(1), BigInt::from(2)]);
    }
}
