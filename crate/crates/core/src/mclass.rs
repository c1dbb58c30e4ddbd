//! The classes `M_{r,c}`: membership by exhaustive minor enumeration, and
//! detection of the (unique) class of a matrix.

use std::fmt;

use crate::det::{minor_nonzero, rank};
use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::matrix::Mat;

/// Default bound on `min(m, n)` for checks that enumerate every minor.
pub const DEFAULT_BRUTEFORCE_LIMIT: usize = 8;

/// A pair of leader sets `(r, c)` of equal size naming the class `M_{r,c}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassDesc {
    pub r: IndexSet,
    pub c: IndexSet,
}

impl ClassDesc {
    pub fn new(r: IndexSet, c: IndexSet) -> Result<Self> {
        if r.len() != c.len() {
            return Err(Error::BadClass(format!(
                "|r| = {} but |c| = {}",
                r.len(),
                c.len()
            )));
        }
        Ok(ClassDesc { r, c })
    }

    /// The class of a zero matrix.
    pub fn empty() -> Self {
        ClassDesc {
            r: IndexSet::empty(),
            c: IndexSet::empty(),
        }
    }

    pub fn rank(&self) -> usize {
        self.r.len()
    }

    /// Checks the descriptor fits an `m x n` matrix.
    pub fn check_shape(&self, m: usize, n: usize) -> Result<()> {
        if self.r.len() != self.c.len() {
            return Err(Error::BadClass(format!(
                "|r| = {} but |c| = {}",
                self.r.len(),
                self.c.len()
            )));
        }
        if self.r.largest().is_some_and(|i| i > m) || self.c.largest().is_some_and(|j| j > n) {
            return Err(Error::BadClass(format!("{self} does not fit a {m}x{n} matrix")));
        }
        Ok(())
    }
}

impl fmt::Display for ClassDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={}, c={}", self.r, self.c)
    }
}

fn guard(a: &Mat, limit: usize) -> Result<()> {
    let size = a.rows().min(a.cols());
    if size > limit {
        return Err(Error::TooLarge { size, limit });
    }
    Ok(())
}

pub fn in_class_m(a: &Mat, d: &ClassDesc) -> Result<bool> {
    in_class_m_with_limit(a, d, DEFAULT_BRUTEFORCE_LIMIT)
}

/// Membership in `M_{r,c}`:
/// 1. `rank(A) = t`;
/// 2. every leading minor `[r_1..r_s | c_1..c_s]` is nonzero;
/// 3. `[I|J] = 0` whenever `|I| = |J| = s <= t` and `I` is not above
///    `{r_1..r_s}` or `J` is not above `{c_1..c_s}` in the componentwise order.
pub fn in_class_m_with_limit(a: &Mat, d: &ClassDesc, limit: usize) -> Result<bool> {
    d.check_shape(a.rows(), a.cols())?;
    guard(a, limit)?;
    let t = d.rank();
    if rank(a) != t {
        return Ok(false);
    }
    let (r, c) = (d.r.as_slice(), d.c.as_slice());
    if (1..=t).any(|s| !minor_nonzero(a, &r[..s], &c[..s])) {
        return Ok(false);
    }
    for s in 1..=t {
        let (rs, cs) = (d.r.prefix(s), d.c.prefix(s));
        let cols: Vec<IndexSet> = IndexSet::combinations(a.cols(), s).collect();
        for i in IndexSet::combinations(a.rows(), s) {
            let rows_above = dominates(&i, &rs);
            for j in &cols {
                if rows_above && dominates(j, &cs) {
                    continue;
                }
                if minor_nonzero(a, i.as_slice(), j.as_slice()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `x >= lower` componentwise; both have the same size here.
fn dominates(x: &IndexSet, lower: &IndexSet) -> bool {
    lower.iter().zip(x.iter()).all(|(a, b)| a <= b)
}

pub fn detect_class(a: &Mat) -> Result<Option<ClassDesc>> {
    detect_class_with_limit(a, DEFAULT_BRUTEFORCE_LIMIT)
}

/// Finds the class of `A` by greedy leader growth, then verifies it.
///
/// At step `s` the pair `(r_s, c_s)` is the lexicographically first pair
/// beyond the previous leaders whose leading minor is nonzero. Returns
/// `None` when no class fits.
pub fn detect_class_with_limit(a: &Mat, limit: usize) -> Result<Option<ClassDesc>> {
    guard(a, limit)?;
    let t = rank(a);
    let mut r: Vec<usize> = Vec::with_capacity(t);
    let mut c: Vec<usize> = Vec::with_capacity(t);
    for _ in 0..t {
        let r_from = r.last().map_or(1, |&x| x + 1);
        let c_from = c.last().map_or(1, |&x| x + 1);
        let mut found = None;
        'scan: for ri in r_from..=a.rows() {
            for ci in c_from..=a.cols() {
                r.push(ri);
                c.push(ci);
                let nonzero = minor_nonzero(a, &r, &c);
                r.pop();
                c.pop();
                if nonzero {
                    found = Some((ri, ci));
                    break 'scan;
                }
            }
        }
        match found {
            Some((ri, ci)) => {
                r.push(ri);
                c.push(ci);
            }
            None => return Ok(None),
        }
    }
    let d = ClassDesc {
        r: IndexSet::new(r).expect("ascending"),
        c: IndexSet::new(c).expect("ascending"),
    };
    Ok(in_class_m_with_limit(a, &d, limit)?.then_some(d))
}

/// Every descriptor, over all sizes `t`, for which `A` is in `M_{r,c}`.
/// Enumerates all candidate pairs; intended for small matrices.
pub fn all_classes(a: &Mat, limit: usize) -> Result<Vec<ClassDesc>> {
    guard(a, limit)?;
    let mut out = Vec::new();
    for t in 0..=a.rows().min(a.cols()) {
        for r in IndexSet::combinations(a.rows(), t) {
            for c in IndexSet::combinations(a.cols(), t) {
                let d = ClassDesc { r: r.clone(), c };
                if in_class_m_with_limit(a, &d, limit)? {
                    out.push(d);
                }
            }
        }
    }
    Ok(out)
}
