//! Rational flags of the matrix models and the counts `N_w = #{F : pos(F, gF) = w}`.

mod cache;
mod engine;
mod oracle;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterGroup, TypeLabel, WeylElement};
use crate::error::{Error, Result};
use crate::exact::{MatrixFq, PrimeField};
use crate::groups::{GroupModel, Variant};

pub use cache::{cache_key, CountCache, CODE_VERSION};
pub use oracle::{complete_isotropic_flag, relative_position};

/// A complete flag given by an adapted basis: `V_i` is spanned by the first `i` vectors.
///
/// Flags produced for the isotropic models are self-dual, and their basis pairs
/// `b_i` with `b_{N-1-i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagChain {
    pub basis: Vec<Vec<u32>>,
}

impl FlagChain {
    /// The coordinate flag `e_0, e_1, ...`.
    pub fn standard(size: usize) -> Self {
        Self { basis: (0..size).map(|k| (0..size).map(|i| u32::from(i == k)).collect()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduced row-echelon basis of `V_i`.
    pub fn subspace(&self, field: PrimeField, i: usize) -> MatrixFq {
        let size = self.basis.first().map_or(0, Vec::len);
        let (r, _) = MatrixFq::from_columns(field, size, &self.basis[..i]).transpose().rref();
        r
    }

    pub fn apply(&self, g: &MatrixFq) -> Self {
        Self { basis: self.basis.iter().map(|b| g.mul_vec(b)).collect() }
    }
}

/// Calls `sink` on every rational flag of the model exactly once.
pub fn for_each_flag(model: &GroupModel, mut sink: impl FnMut(&FlagChain)) {
    let e = engine::Enumerator::new(model);
    e.visit(0..e.first_level_len(), &mut sink);
}

/// All rational flags; only sensible for small models.
pub fn enumerate_flags(model: &GroupModel) -> Vec<FlagChain> {
    let mut out = Vec::new();
    for_each_flag(model, |f| out.push(f.clone()));
    out
}

/// `sum_w q^{l(w)}`.
pub fn flag_total(group: &CoxeterGroup, q: u64) -> u64 {
    group.elements().map(|w| q.pow(group.length(w) as u32)).sum()
}

/// Number of independent work slices the flag stream is cut into.
pub fn slice_count(model: &GroupModel) -> usize {
    engine::Enumerator::new(model).first_level_len()
}

/// Counts for several elements in one pass over the flags, on `jobs` worker threads.
pub fn count_many(model: &GroupModel, group: &CoxeterGroup, gs: &[MatrixFq], jobs: usize) -> Result<Vec<Vec<u64>>> {
    check_group(model, group)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    pool.install(|| engine::count_all(model, group, gs, 64 * jobs.max(1)))
}

/// Counts for one element.
pub fn count_partition(model: &GroupModel, group: &CoxeterGroup, g: &MatrixFq, jobs: usize) -> Result<Vec<u64>> {
    Ok(count_many(model, group, std::slice::from_ref(g), jobs)?.remove(0))
}

/// Counts restricted to the flags in slice range `range` (see [`slice_count`]).
pub fn count_slice(
    model: &GroupModel,
    group: &CoxeterGroup,
    g: &MatrixFq,
    range: std::ops::Range<usize>,
) -> Result<Vec<u64>> {
    check_group(model, group)?;
    let table = engine::PositionTable::new(model, group);
    let e = engine::Enumerator::new(model);
    Ok(engine::count_range(model, group, &table, std::slice::from_ref(g), &e, range)?.remove(0))
}

fn check_group(model: &GroupModel, group: &CoxeterGroup) -> Result<()> {
    if model.label() != group.label() {
        return Err(Error::GroupMismatch(model.label().to_string(), group.label().to_string()));
    }
    Ok(())
}

/// Exact counts `N_w` for one group element, indexed by [`WeylElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountVector {
    pub label: TypeLabel,
    pub q: u64,
    /// The unipotent partition ("4,1,1") or another element descriptor.
    pub class: String,
    pub variant: Variant,
    pub counts: Vec<u64>,
}

impl CountVector {
    pub fn get(&self, w: WeylElement) -> u64 {
        self.counts[w.0]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}
