//! Index sets and the combinatorics on them.
//!
//! All indices are 1-based. An [`IndexSet`] is always strictly ascending.

use std::fmt;

use crate::error::{Error, Result};

/// A strictly ascending list of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        let ascending = indices.windows(2).all(|w| w[0] < w[1]);
        if !ascending || indices.first() == Some(&0) {
            return Err(Error::BadIndexSet(indices));
        }
        Ok(IndexSet(indices))
    }

    /// Builds a set from arbitrary (possibly unsorted) indices; duplicates are an error.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        Self::new(indices)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{1, ..., n}`.
    pub fn range(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn largest(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// The first `k` elements.
    pub fn prefix(&self, k: usize) -> IndexSet {
        IndexSet(self.0[..k].to_vec())
    }

    /// Checks every index lies in `1..=bound`.
    pub fn check_bound(&self, bound: usize) -> Result<()> {
        match self.largest() {
            Some(index) if index > bound => Err(Error::OutOfRange { index, bound }),
            _ => Ok(()),
        }
    }

    /// Adds `i`, keeping the set sorted. Returns `None` if `i` is already present.
    pub fn with(&self, i: usize) -> Option<IndexSet> {
        match self.0.binary_search(&i) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, i);
                Some(IndexSet(v))
            }
        }
    }

    pub fn without(&self, i: usize) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&x| x != i).collect())
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| !other.contains(i))
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// Disjoint union; errors when the sets overlap.
    pub fn disjoint_union(&self, other: &IndexSet) -> Result<IndexSet> {
        if !self.is_disjoint(other) {
            return Err(Error::NotDisjoint(self.clone(), other.clone()));
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Ok(IndexSet(v))
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&i| !other.contains(i)).collect())
    }

    /// The componentwise partial order on equal-size index sets.
    pub fn leq(&self, other: &IndexSet) -> Result<bool> {
        indexset_leq(self, other)
    }

    /// All `k`-element subsets of `self`, in lexicographic order.
    pub fn subsets(&self, k: usize) -> Subsets {
        Subsets::new(self.0.clone(), k)
    }

    /// All `k`-element subsets of `{1..n}`, in lexicographic order.
    pub fn combinations(n: usize, k: usize) -> Subsets {
        Subsets::new((1..=n).collect(), k)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSet::new(v)
    }
}

impl<const N: usize> TryFrom<[usize; N]> for IndexSet {
    type Error = Error;

    fn try_from(v: [usize; N]) -> Result<Self> {
        IndexSet::new(v.to_vec())
    }
}

/// Lexicographic enumeration of fixed-size subsets of a sorted slice.
pub struct Subsets {
    items: Vec<usize>,
    pos: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(items: Vec<usize>, k: usize) -> Self {
        let done = k > items.len();
        Subsets {
            items,
            pos: (0..k).collect(),
            done,
        }
    }
}

impl Iterator for Subsets {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        if self.done {
            return None;
        }
        let out = IndexSet(self.pos.iter().map(|&p| self.items[p]).collect());
        let n = self.items.len();
        let k = self.pos.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.pos[i] < n - k + i {
                self.pos[i] += 1;
                for j in i + 1..k {
                    self.pos[j] = self.pos[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// `I <= J` iff `i_k <= j_k` for every position `k`.
pub fn indexset_leq(i: &IndexSet, j: &IndexSet) -> Result<bool> {
    if i.len() != j.len() {
        return Err(Error::Cardinality {
            left: i.len(),
            right: j.len(),
        });
    }
    Ok(i.0.iter().zip(&j.0).all(|(a, b)| a <= b))
}

/// Number of pairs `(i, j)` in `I x J` with `i > j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct InversionCount(pub usize);

impl InversionCount {
    pub fn value(self) -> usize {
        self.0
    }

    /// `(-1)^count`.
    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }
}

pub fn inversion_count(i: &IndexSet, j: &IndexSet) -> InversionCount {
    InversionCount(i.iter().map(|a| j.iter().filter(|&b| a > b).count()).sum())
}
