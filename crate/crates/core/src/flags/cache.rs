//! On-disk cache of count vectors, one JSON file per (type, q, class, variant).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coxeter::{CoxeterGroup, TypeLabel};
use crate::error::{Error, Result};
use crate::groups::Variant;

use super::CountVector;

/// Bumped whenever a change could alter stored counts.
pub const CODE_VERSION: &str = "flag-engine-1";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    #[serde(rename = "type")]
    label: TypeLabel,
    q: u64,
    class: String,
    variant: String,
    counts: BTreeMap<String, u64>,
    #[serde(default)]
    code_version: String,
}

/// Content hash of the inputs that determine a count vector.
pub fn cache_key(label: TypeLabel, q: u64, class: &str, variant: Variant) -> String {
    let text = format!("{label}|{q}|{class}|{}|{CODE_VERSION}", variant.as_str());
    Sha256::digest(text.as_bytes()).iter().take(10).map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone)]
pub struct CountCache {
    dir: PathBuf,
}

impl CountCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, label: TypeLabel, q: u64, class: &str, variant: Variant) -> PathBuf {
        self.dir.join(format!("{label}-q{q}-{}.json", cache_key(label, q, class, variant)))
    }

    /// A cached vector, or `None` if absent or written by another code version.
    pub fn load(
        &self,
        group: &CoxeterGroup,
        q: u64,
        class: &str,
        variant: Variant,
    ) -> Result<Option<CountVector>> {
        let path = self.path(group.label(), q, class, variant);
        if !path.exists() {
            return Ok(None);
        }
        let file: CacheFile = serde_json::from_str(&fs::read_to_string(&path)?)?;
        if file.code_version != CODE_VERSION {
            return Ok(None);
        }
        from_file(group, file).map(Some)
    }

    pub fn store(&self, group: &CoxeterGroup, cv: &CountVector) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(cv.label, cv.q, &cv.class, cv.variant);
        fs::write(&path, to_json(group, cv)?)?;
        Ok(path)
    }
}

/// The cache-file JSON for a count vector; words use the canonical serialization.
pub(crate) fn to_json(group: &CoxeterGroup, cv: &CountVector) -> Result<String> {
    let counts = group.elements().map(|w| (group.serialize_word(w), cv.counts[w.0])).collect();
    let file = CacheFile {
        label: cv.label,
        q: cv.q,
        class: cv.class.clone(),
        variant: cv.variant.as_str().to_string(),
        counts,
        code_version: CODE_VERSION.to_string(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

fn from_file(group: &CoxeterGroup, file: CacheFile) -> Result<CountVector> {
    if file.label != group.label() {
        return Err(Error::GroupMismatch(file.label.to_string(), group.label().to_string()));
    }
    let mut counts = vec![0u64; group.order()];
    let mut seen = 0;
    for (word, n) in &file.counts {
        counts[group.parse_serialized(word)?.0] = *n;
        seen += 1;
    }
    if seen != group.order() {
        return Err(Error::Parse(format!("cache file has {seen} of {} entries", group.order())));
    }
    Ok(CountVector { label: file.label, q: file.q, class: file.class, variant: file.variant.parse()?, counts })
}

impl CountVector {
    pub fn to_json(&self, group: &CoxeterGroup) -> Result<String> {
        to_json(group, self)
    }

    pub fn from_json(group: &CoxeterGroup, text: &str) -> Result<Self> {
        from_file(group, serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_weyl;

    #[test]
    fn store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CountCache::new(dir.path());
        let g = build_weyl("A1".parse().unwrap()).unwrap();
        let cv = CountVector { label: g.label(), q: 3, class: "2".into(), variant: Variant::Standard, counts: vec![1, 3] };
        assert!(cache.load(&g, 3, "2", Variant::Standard).unwrap().is_none());
        let path = cache.store(&g, &cv).unwrap();
        let text = fs::read_to_string(path).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["counts"]["1"], 3);
        assert_eq!(v["counts"]["e"], 1);
        assert_eq!(v["type"], "A1");
        assert_eq!(cache.load(&g, 3, "2", Variant::Standard).unwrap(), Some(cv));
        assert_ne!(cache_key(g.label(), 3, "2", Variant::Standard), cache_key(g.label(), 3, "2", Variant::Twisted));
    }
}
