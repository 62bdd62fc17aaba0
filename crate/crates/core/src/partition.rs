//! Integer partitions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition, stored with parts in descending order and no zero parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }

    /// The transposed partition.
    pub fn conjugate(&self) -> Self {
        let first = self.0.first().copied().unwrap_or(0);
        Self((1..=first).map(|i| self.0.iter().filter(|&&p| p >= i).count()).collect())
    }

    /// `self <= other` in dominance order; partitions of different sizes are incomparable.
    pub fn dominated_by(&self, other: &Self) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }

    /// `sum_i (i - 1) * lambda_i`.
    pub fn n_statistic(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// All partitions of `n`, in reverse lexicographic order (`(n)` first).
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `"4,1,1"` or `"(4,1,1)"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(parts))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Ok(Self::new(v))
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let counts: Vec<usize> = (1..=7).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15]);
        let p3: Vec<String> = Partition::all(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(p3, ["3", "2,1", "1,1,1"]);
    }

    #[test]
    fn dominance() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert!(p("2,2").dominated_by(&p("4")));
        assert!(!p("4,1,1").dominated_by(&p("3,3")));
        assert!(!p("3,3").dominated_by(&p("4,1,1")));
        assert!(p("3,3").dominated_by(&p("3,3")));
        assert!(!p("2").dominated_by(&p("1,1,1")));
    }

    #[test]
    fn conjugate_and_statistics() {
        let p: Partition = "4,1,1".parse().unwrap();
        assert_eq!(p.conjugate().parts(), &[3, 1, 1, 1]);
        assert_eq!(p.conjugate().conjugate(), p);
        assert_eq!(Partition::new(vec![1, 1, 1]).n_statistic(), 3);
        assert_eq!(p.multiplicity(1), 2);
    }
}
