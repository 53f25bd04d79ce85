//! Elements of the free commutative monoid `ℕ[S]` on a finite set.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{FinFunction, FinSetOb};

/// A formal sum of elements of `over`, e.g. `2H + O`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    counts: Vec<u32>,
}

impl Multiset {
    pub fn zero(over: FinSetOb) -> Self {
        Multiset { counts: vec![0; over.size] }
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        Multiset { counts }
    }

    /// Builds a multiset from `(element, count)` pairs; repeated elements accumulate.
    pub fn from_pairs(over: FinSetOb, pairs: impl IntoIterator<Item = (usize, u32)>) -> Result<Self> {
        let mut m = Multiset::zero(over);
        for (x, k) in pairs {
            if x >= over.size {
                return Err(Error::InvalidSystem(format!(
                    "multiset element {x} outside a set of size {}",
                    over.size
                )));
            }
            m.counts[x] += k;
        }
        Ok(m)
    }

    pub fn singleton(over: FinSetOb, x: usize) -> Result<Self> {
        Multiset::from_pairs(over, [(x, 1)])
    }

    pub fn over(&self) -> FinSetOb {
        FinSetOb::new(self.counts.len())
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, x: usize) -> u32 {
        self.counts[x]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    /// Nonzero entries in ascending element order.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(x, &c)| (x, c))
    }

    /// `ℕ[f]`: counts of merged elements add up.
    pub fn pushforward(&self, f: &FinFunction) -> Multiset {
        debug_assert_eq!(f.dom(), self.over());
        let mut counts = vec![0; f.cod().size];
        for (x, c) in self.support() {
            counts[f.apply(x)] += c;
        }
        Multiset { counts }
    }

    /// As a sparse map, the JSON shape.
    pub fn to_sparse(&self) -> BTreeMap<usize, u32> {
        self.support().collect()
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, c) in self.support() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c == 1 {
                write!(f, "[{x}]")?;
            } else {
                write!(f, "{c}[{x}]")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
