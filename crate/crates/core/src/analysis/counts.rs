//! Count vectors on demand: memoized, then the disk cache, then the flag engine.

use std::collections::BTreeMap;

use crate::coxeter::{CoxeterGroup, TypeLabel};
use crate::error::Result;
use crate::exact::MatrixFq;
use crate::flags::{count_many, CountCache, CountVector};
use crate::groups::{unipotent_rep, GroupModel, UnipotentClass, Variant};

type Key = (TypeLabel, u64, String, Variant);

/// The rational forms worth computing: the twisted representative only differs
/// from the standard one when the component group is nontrivial.
pub fn variants_of(class: &UnipotentClass) -> &'static [Variant] {
    if class.component_order() > 1 {
        &[Variant::Standard, Variant::Twisted]
    } else {
        &[Variant::Standard]
    }
}

#[derive(Debug)]
pub struct Counter {
    jobs: usize,
    cache: Option<CountCache>,
    memo: BTreeMap<Key, CountVector>,
}

impl Counter {
    pub fn new(jobs: usize) -> Self {
        Self { jobs: jobs.max(1), cache: None, memo: BTreeMap::new() }
    }

    pub fn with_cache(mut self, cache: CountCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    /// Counts for unipotent classes at one `q`; all misses share one pass over the flags.
    pub fn unipotent(
        &mut self,
        group: &CoxeterGroup,
        q: u64,
        wanted: &[(&UnipotentClass, Variant)],
    ) -> Result<Vec<CountVector>> {
        let label = group.label();
        let mut model: Option<GroupModel> = None;
        let mut missing: Vec<(String, Variant, MatrixFq)> = Vec::new();
        for &(class, variant) in wanted {
            let name = class.partition.to_string();
            let key = (label, q, name.clone(), variant);
            if self.memo.contains_key(&key) || missing.iter().any(|(n, v, _)| *n == name && *v == variant) {
                continue;
            }
            if let Some(cv) = self.load(group, q, &name, variant)? {
                self.memo.insert(key, cv);
                continue;
            }
            let m = match &model {
                Some(m) => m,
                None => model.insert(GroupModel::new(label, q)?),
            };
            missing.push((name, variant, unipotent_rep(m, &class.partition, variant)?.matrix));
        }
        if let Some(m) = &model {
            let gs: Vec<MatrixFq> = missing.iter().map(|(_, _, g)| g.clone()).collect();
            let counts = count_many(m, group, &gs, self.jobs)?;
            for ((name, variant, _), counts) in missing.into_iter().zip(counts) {
                self.insert(group, CountVector { label, q, class: name, variant, counts })?;
            }
        }
        Ok(wanted
            .iter()
            .map(|(c, v)| self.memo[&(label, q, c.partition.to_string(), *v)].clone())
            .collect())
    }

    /// Counts for an arbitrary element, recorded under `descriptor`.
    pub fn element(&mut self, group: &CoxeterGroup, q: u64, descriptor: &str, g: &MatrixFq) -> Result<CountVector> {
        let key = (group.label(), q, descriptor.to_string(), Variant::Standard);
        if let Some(cv) = self.memo.get(&key) {
            return Ok(cv.clone());
        }
        let cv = match self.load(group, q, descriptor, Variant::Standard)? {
            Some(cv) => cv,
            None => {
                let model = GroupModel::new(group.label(), q)?;
                let counts = count_many(&model, group, std::slice::from_ref(g), self.jobs)?.remove(0);
                CountVector { label: group.label(), q, class: descriptor.to_string(), variant: Variant::Standard, counts }
            }
        };
        self.insert(group, cv.clone())?;
        Ok(cv)
    }

    /// Every vector produced so far, in key order.
    pub fn vectors(&self) -> impl Iterator<Item = &CountVector> {
        self.memo.values()
    }

    fn load(&self, group: &CoxeterGroup, q: u64, class: &str, variant: Variant) -> Result<Option<CountVector>> {
        match &self.cache {
            Some(c) => c.load(group, q, class, variant),
            None => Ok(None),
        }
    }

    fn insert(&mut self, group: &CoxeterGroup, cv: CountVector) -> Result<()> {
        if let Some(c) = &self.cache {
            if c.load(group, cv.q, &cv.class, cv.variant)?.is_none() {
                c.store(group, &cv)?;
            }
        }
        self.memo.insert((cv.label, cv.q, cv.class.clone(), cv.variant), cv);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_weyl;
    use crate::groups::unipotent_partitions;

    #[test]
    fn warm_cache_matches_cold_run() {
        let dir = tempfile::tempdir().unwrap();
        let g = build_weyl("B2".parse().unwrap()).unwrap();
        let classes = unipotent_partitions(g.label()).unwrap();
        let wanted: Vec<_> = classes.iter().flat_map(|c| variants_of(c).iter().map(move |&v| (c, v))).collect();
        assert_eq!(wanted.len(), 5);
        let cold = Counter::new(1).with_cache(CountCache::new(dir.path())).unipotent(&g, 3, &wanted).unwrap();
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 5);
        let warm = Counter::new(2).with_cache(CountCache::new(dir.path())).unipotent(&g, 3, &wanted).unwrap();
        assert_eq!(cold, warm);
        let plain = Counter::new(1).unipotent(&g, 3, &wanted).unwrap();
        assert_eq!(plain, cold);
    }
}
