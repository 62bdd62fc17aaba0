//! The Iwahori-Hecke algebra with equal parameters `u = v^2`, in the
//! normalized basis `T̂_w = u^{-l(w)} T_w`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::coxeter::{CoxeterGroup, TypeLabel, WeylElement};
use crate::error::{Error, Result};
use crate::exact::LaurentPoly;

/// Coefficient rings the algebra can be built over.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
}

impl Scalar for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

/// The structure constants `u^{-1}` and `1 - u^{-1}` in a given coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Params<C> {
    u_inv: C,
    one_minus_u_inv: C,
}

impl Params<LaurentPoly> {
    pub fn generic() -> Self {
        Self { u_inv: LaurentPoly::u_pow(-1), one_minus_u_inv: LaurentPoly::one() - LaurentPoly::u_pow(-1) }
    }
}

impl Params<BigRational> {
    pub fn at(u0: &BigRational) -> Result<Self> {
        if Zero::is_zero(u0) {
            return Err(Error::PoleAtSpecialization("u = 0".into()));
        }
        let u_inv = u0.recip();
        Ok(Self { one_minus_u_inv: BigRational::one() - &u_inv, u_inv })
    }
}

/// A finitely supported combination `sum_w c_w T̂_w`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeVec<C> {
    label: TypeLabel,
    coeffs: BTreeMap<WeylElement, C>,
}

/// Coefficients in `Z[u, u^-1]`.
pub type HeckeElement = HeckeVec<LaurentPoly>;
/// Coefficients specialized to exact rationals.
pub type NumericHecke = HeckeVec<BigRational>;

impl<C: Scalar> HeckeVec<C> {
    pub fn zero(label: TypeLabel) -> Self {
        Self { label, coeffs: BTreeMap::new() }
    }

    pub fn basis(group: &CoxeterGroup, w: WeylElement, one: C) -> Self {
        let mut h = Self::zero(group.label());
        h.add_term(w, one);
        h
    }

    pub fn from_coeffs(group: &CoxeterGroup, coeffs: impl IntoIterator<Item = (WeylElement, C)>) -> Self {
        let mut h = Self::zero(group.label());
        for (w, c) in coeffs {
            h.add_term(w, c);
        }
        h
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn coeff(&self, w: WeylElement) -> C {
        self.coeffs.get(&w).cloned().unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (WeylElement, &C)> {
        self.coeffs.iter().map(|(w, c)| (*w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, w: WeylElement, c: C) {
        if c.is_zero() {
            return;
        }
        let next = match self.coeffs.get(&w) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if next.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, next);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.label != other.label {
            return Err(Error::GroupMismatch(self.label.to_string(), other.label.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(*w, C::zero().minus(c));
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.label);
        for (w, x) in &self.coeffs {
            out.add_term(*w, x.times(c));
        }
        out
    }

    /// `T̂_{s_i} * self`.
    pub fn left_gen(&self, group: &CoxeterGroup, i: usize, p: &Params<C>) -> Self {
        let mut out = Self::zero(self.label);
        for (&w, c) in &self.coeffs {
            let sw = group.left_mul_gen(i, w);
            if group.length(sw) > group.length(w) {
                out.add_term(sw, c.clone());
            } else {
                out.add_term(w, c.times(&p.one_minus_u_inv));
                out.add_term(sw, c.times(&p.u_inv));
            }
        }
        out
    }

    /// `self * T̂_{s_i}`.
    pub fn right_gen(&self, group: &CoxeterGroup, i: usize, p: &Params<C>) -> Self {
        let mut out = Self::zero(self.label);
        for (&w, c) in &self.coeffs {
            let ws = group.right_mul_gen(w, i);
            if group.length(ws) > group.length(w) {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(w, c.times(&p.one_minus_u_inv));
                out.add_term(ws, c.times(&p.u_inv));
            }
        }
        out
    }

    /// Specialization of [`hat_t_mul`] to any coefficient ring.
    pub fn mul(&self, other: &Self, group: &CoxeterGroup, p: &Params<C>) -> Result<Self> {
        self.check(other)?;
        if group.label() != self.label {
            return Err(Error::GroupMismatch(self.label.to_string(), group.label().to_string()));
        }
        let mut out = Self::zero(self.label);
        for (&x, c) in &self.coeffs {
            let mut term = other.scale(c);
            for &s in group.word(x).iter().rev() {
                term = term.left_gen(group, s as usize, p);
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Checks `T̂_s h = h T̂_s` for every generator.
    pub fn centrality(&self, group: &CoxeterGroup, p: &Params<C>) -> Centrality<C> {
        for s in 1..=group.rank() {
            let diff = self
                .left_gen(group, s, p)
                .sub(&self.right_gen(group, s, p))
                .expect("same algebra");
            if !diff.is_zero() {
                return Centrality::NotCentral { generator: s, difference: diff };
            }
        }
        Centrality::Central
    }

    /// The common coefficient on `C ∩ W_min` for every class `C`, indexed by class id.
    pub fn min_coeff_profile(&self, group: &CoxeterGroup) -> Result<Vec<C>> {
        group
            .classes()
            .iter()
            .map(|class| {
                let first = class.min_members[0];
                let c = self.coeff(first);
                for &w in &class.min_members[1..] {
                    let d = self.coeff(w);
                    if d != c {
                        return Err(Error::MinCoeffMismatch {
                            first: format!("{}: {c}", group.word_label(first)),
                            second: format!("{}: {d}", group.word_label(w)),
                        });
                    }
                }
                Ok(c)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Centrality<C> {
    Central,
    NotCentral { generator: usize, difference: HeckeVec<C> },
}

impl<C> Centrality<C> {
    pub fn is_central(&self) -> bool {
        matches!(self, Centrality::Central)
    }
}

/// Product in the generic algebra over `Z[u, u^-1]`.
pub fn hat_t_mul(a: &HeckeElement, b: &HeckeElement, group: &CoxeterGroup) -> Result<HeckeElement> {
    a.mul(b, group, &Params::generic())
}

pub fn is_central(h: &HeckeElement, group: &CoxeterGroup) -> Centrality<LaurentPoly> {
    h.centrality(group, &Params::generic())
}

pub fn min_coeff_profile(h: &HeckeElement, group: &CoxeterGroup) -> Result<Vec<LaurentPoly>> {
    h.min_coeff_profile(group)
}

/// `T̂_w` in the generic algebra.
pub fn hat_t(group: &CoxeterGroup, w: WeylElement) -> HeckeElement {
    HeckeElement::basis(group, w, LaurentPoly::one())
}

/// Coefficientwise evaluation at `u = u0`.
pub fn specialize(h: &HeckeElement, u0: &BigRational) -> Result<NumericHecke> {
    let mut out = NumericHecke::zero(h.label());
    for (w, c) in h.support() {
        out.add_term(w, c.eval(u0)?);
    }
    Ok(out)
}

/// An element `sum_w a_w w` of the integral group ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub label: TypeLabel,
    pub coeffs: Vec<BigInt>,
}

impl GroupAlgebraElement {
    pub fn coeff(&self, w: WeylElement) -> &BigInt {
        &self.coeffs[w.0]
    }

    /// Central iff `a_{sw} = a_{ws}` for every generator `s` and every `w`.
    pub fn is_central(&self, group: &CoxeterGroup) -> bool {
        (1..=group.rank()).all(|s| {
            group.elements().all(|w| self.coeffs[group.left_mul_gen(s, w).0] == self.coeffs[group.right_mul_gen(w, s).0])
        })
    }

    /// Value on each class (valid for central elements), indexed by class id.
    pub fn class_values(&self, group: &CoxeterGroup) -> Vec<BigInt> {
        group.classes().iter().map(|c| self.coeffs[c.representative().0].clone()).collect()
    }
}

/// The `u = 1` image in `Z[W]`.
pub fn at_one(h: &HeckeElement, group: &CoxeterGroup) -> Result<GroupAlgebraElement> {
    let mut coeffs = vec![BigInt::zero(); group.order()];
    for (w, c) in h.support() {
        let v = c.eval(&BigRational::one())?;
        coeffs[w.0] = v.to_integer();
    }
    Ok(GroupAlgebraElement { label: h.label(), coeffs })
}

impl HeckeElement {
    /// `{"type": "C3", "coeffs": {"<word>": [min_exp, [c...]]}}`.
    pub fn to_json(&self, group: &CoxeterGroup) -> Value {
        let mut coeffs = Map::new();
        for (w, c) in self.support() {
            coeffs.insert(group.serialize_word(w), serde_json::to_value(c).expect("laurent serializes"));
        }
        json!({ "type": self.label().to_string(), "coeffs": coeffs })
    }

    pub fn from_json(group: &CoxeterGroup, value: &Value) -> Result<Self> {
        let label: TypeLabel = value["type"]
            .as_str()
            .ok_or_else(|| Error::Parse("missing \"type\"".into()))?
            .parse()?;
        if label != group.label() {
            return Err(Error::GroupMismatch(label.to_string(), group.label().to_string()));
        }
        let coeffs = value["coeffs"].as_object().ok_or_else(|| Error::Parse("missing \"coeffs\"".into()))?;
        let mut h = Self::zero(label);
        for (word, c) in coeffs {
            let w = group.parse_element(word)?;
            h.add_term(w, serde_json::from_value(c.clone())?);
        }
        Ok(h)
    }
}
