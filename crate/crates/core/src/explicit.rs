//! Closed-form LU factors from minors, and the forward-substitution
//! reconstruction that pins them down uniquely.

use std::collections::HashMap;

use num::{One, Zero};

use crate::det::minor_unchecked;
use crate::echelon::{in_class_l, in_class_u};
use crate::error::{Error, Result};
use crate::matrix::{Mat, Scalar};
use crate::mclass::{in_class_m_with_limit, ClassDesc, DEFAULT_BRUTEFORCE_LIMIT};

/// `A = L U` with `L` in `L_r^*` (m x t) and `U` in `U_c` (t x n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LUPair {
    pub l: Mat,
    pub u: Mat,
    pub class: ClassDesc,
}

impl LUPair {
    /// Checks the factor classes and that `L U` reproduces `a`.
    pub fn verify(&self, a: &Mat) -> Result<()> {
        if !in_class_l(&self.l, &self.class.r, true)? {
            return Err(Error::NotInClass(format!("L is not in L*_{}", self.class.r)));
        }
        if !in_class_u(&self.u, &self.class.c)? {
            return Err(Error::NotInClass(format!("U is not in U_{}", self.class.c)));
        }
        if &self.l.matmul(&self.u)? != a {
            return Err(Error::NotInClass("L U does not reproduce A".into()));
        }
        Ok(())
    }
}

/// Whether to verify `A in M_{r,c}` before decomposing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    /// Exhaustive membership check, bounded by the given `min(m, n)` limit.
    Check(usize),
    /// Skip the membership check. A vanishing pivot minor is still a hard error.
    Skip,
}

impl Default for Precondition {
    fn default() -> Self {
        Precondition::Check(DEFAULT_BRUTEFORCE_LIMIT)
    }
}

fn precheck(a: &Mat, d: &ClassDesc, pre: Precondition) -> Result<()> {
    d.check_shape(a.rows(), a.cols())?;
    if let Precondition::Check(limit) = pre {
        if !in_class_m_with_limit(a, d, limit)? {
            return Err(Error::NotInClass(format!("matrix is not in M_{{{d}}}")));
        }
    }
    Ok(())
}

/// Minors of one matrix, memoised by index lists.
struct MinorCache<'a> {
    a: &'a Mat,
    seen: HashMap<(Vec<usize>, Vec<usize>), Scalar>,
}

impl<'a> MinorCache<'a> {
    fn new(a: &'a Mat) -> Self {
        MinorCache {
            a,
            seen: HashMap::new(),
        }
    }

    fn get(&mut self, rows: Vec<usize>, cols: Vec<usize>) -> Scalar {
        let a = self.a;
        self.seen
            .entry((rows, cols))
            .or_insert_with_key(|(r, c)| minor_unchecked(a, r, c))
            .clone()
    }
}

pub fn explicit_decompose(a: &Mat, d: &ClassDesc) -> Result<LUPair> {
    explicit_decompose_with(a, d, Precondition::default())
}

/// Every entry of `L` and `U` is a ratio of two minors of `A`:
///
/// - `l_ij = [r_1..r_{j-1}, i | c_1..c_j] / [r_1..r_j | c_1..c_j]` for `i >= r_j`;
/// - `u_ij = [r_1..r_i | c_1..c_{i-1}, j] / [r_1..r_{i-1} | c_1..c_{i-1}]` for `j >= c_i`;
///
/// and zero otherwise.
pub fn explicit_decompose_with(a: &Mat, d: &ClassDesc, pre: Precondition) -> Result<LUPair> {
    precheck(a, d, pre)?;
    let (m, n, t) = (a.rows(), a.cols(), d.rank());
    let (r, c) = (d.r.as_slice(), d.c.as_slice());
    let mut cache = MinorCache::new(a);

    // leading[s] = [r_1..r_s | c_1..c_s]
    let leading: Vec<Scalar> = (0..=t).map(|s| cache.get(r[..s].to_vec(), c[..s].to_vec())).collect();
    if let Some(s) = leading.iter().position(Zero::is_zero) {
        return Err(Error::NotInClass(format!("leading minor of order {s} vanishes")));
    }

    let mut l = Mat::zeros(m, t);
    for j in 1..=t {
        let cols = c[..j].to_vec();
        for i in r[j - 1]..=m {
            let mut rows = r[..j - 1].to_vec();
            rows.push(i);
            *l.at_mut(i - 1, j - 1) = cache.get(rows, cols.clone()) / &leading[j];
        }
    }

    let mut u = Mat::zeros(t, n);
    for i in 1..=t {
        let rows = r[..i].to_vec();
        for j in c[i - 1]..=n {
            let mut cols = c[..i - 1].to_vec();
            cols.push(j);
            *u.at_mut(i - 1, j - 1) = cache.get(rows.clone(), cols) / &leading[i - 1];
        }
    }

    let pair = LUPair {
        l,
        u,
        class: d.clone(),
    };
    pair.verify(a)?;
    Ok(pair)
}

pub fn reconstruct_lu(a: &Mat, d: &ClassDesc) -> Result<LUPair> {
    reconstruct_lu_with(a, d, Precondition::default())
}

/// Solves `A = L U` for `L in L_r^*`, `U in U_c` one row of `U` and one
/// column of `L` at a time:
///
/// - `u_{s+1,j} = a_{r_{s+1},j} - sum_{k<=s} l_{r_{s+1},k} u_{kj}`
/// - `l_{i,s+1} = (a_{i,c_{s+1}} - sum_{k<=s} l_{ik} u_{k,c_{s+1}}) / u_{s+1,c_{s+1}}`
pub fn reconstruct_lu_with(a: &Mat, d: &ClassDesc, pre: Precondition) -> Result<LUPair> {
    precheck(a, d, pre)?;
    let (m, n, t) = (a.rows(), a.cols(), d.rank());
    let (r, c) = (d.r.as_slice(), d.c.as_slice());
    let mut l = Mat::zeros(m, t);
    let mut u = Mat::zeros(t, n);

    for s in 0..t {
        let row = r[s] - 1;
        for j in 0..n {
            let mut v = a.at(row, j).clone();
            for k in 0..s {
                v -= l.at(row, k) * u.at(k, j);
            }
            *u.at_mut(s, j) = v;
        }
        let col = c[s] - 1;
        let pivot = u.at(s, col).clone();
        if pivot.is_zero() {
            return Err(Error::NotInClass(format!("zero pivot u[{},{}]", s + 1, c[s])));
        }
        for i in 0..m {
            let mut v = a.at(i, col).clone();
            for k in 0..s {
                v -= l.at(i, k) * u.at(k, col);
            }
            *l.at_mut(i, s) = v / &pivot;
        }
        debug_assert!(l.at(row, s).is_one());
    }

    let pair = LUPair {
        l,
        u,
        class: d.clone(),
    };
    pair.verify(a)?;
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::IndexSet;
    use crate::matrix::int;

    fn desc(r: &[usize], c: &[usize]) -> ClassDesc {
        ClassDesc::new(IndexSet::new(r.to_vec()).unwrap(), IndexSet::new(c.to_vec()).unwrap()).unwrap()
    }

    fn cryer() -> Mat {
        Mat::from_rows(&[[0, 0, 0], [1, 0, 1], [1, 0, 1]])
    }

    fn four() -> Mat {
        Mat::from_rows(&[[0, 1, 2, 1], [0, 2, 4, 2], [0, 1, 2, 3], [0, 3, 6, 11]])
    }

    #[test]
    fn cryer_both_paths() {
        let d = desc(&[2], &[1]);
        let e = explicit_decompose(&cryer(), &d).unwrap();
        assert_eq!(e.l, Mat::column(&[0, 1, 1]));
        assert_eq!(e.u, Mat::from_rows(&[[1, 0, 1]]));
        assert_eq!(reconstruct_lu(&cryer(), &d).unwrap(), e);
    }

    #[test]
    fn four_by_four_both_paths() {
        let d = desc(&[1, 3], &[2, 4]);
        let e = explicit_decompose(&four(), &d).unwrap();
        assert_eq!(e.l, Mat::from_rows(&[[1, 0], [2, 0], [1, 1], [3, 4]]));
        assert_eq!(e.u, Mat::from_rows(&[[0, 1, 2, 1], [0, 0, 0, 2]]));
        // l_42 = [1,4|2,4] / [1,3|2,4] = 8 / 2
        assert_eq!(e.l[(4, 2)], int(4));
        assert_eq!(reconstruct_lu(&four(), &d).unwrap(), e);
    }

    #[test]
    fn identity_and_zero() {
        let d = desc(&[1, 2, 3], &[1, 2, 3]);
        let p = reconstruct_lu(&Mat::identity(3), &d).unwrap();
        assert_eq!(p.l, Mat::identity(3));
        assert_eq!(p.u, Mat::identity(3));
        let z = explicit_decompose(&Mat::zeros(3, 2), &ClassDesc::empty()).unwrap();
        assert_eq!(z.l.shape(), (3, 0));
        assert_eq!(z.u.shape(), (0, 2));
    }

    #[test]
    fn wrong_class_is_rejected() {
        let d = desc(&[3], &[1]);
        assert!(matches!(explicit_decompose(&cryer(), &d), Err(Error::NotInClass(_))));
        assert!(matches!(reconstruct_lu(&cryer(), &d), Err(Error::NotInClass(_))));
        // unchecked: the vanishing leading minor is the hard error
        let d = desc(&[1], &[1]);
        assert!(matches!(
            explicit_decompose_with(&cryer(), &d, Precondition::Skip),
            Err(Error::NotInClass(_))
        ));
        assert!(matches!(
            reconstruct_lu_with(&cryer(), &d, Precondition::Skip),
            Err(Error::NotInClass(_))
        ));
    }

    #[test]
    fn non_tnn_class_member() {
        // in M_{{1,2},{1,2}} but has a negative minor
        let a = Mat::from_rows(&[[1, 2], [3, 4]]);
        let d = desc(&[1, 2], &[1, 2]);
        let e = explicit_decompose(&a, &d).unwrap();
        assert_eq!(e, reconstruct_lu(&a, &d).unwrap());
        assert_eq!(e.u, Mat::from_rows(&[[1, 2], [0, -2]]));
    }
}
