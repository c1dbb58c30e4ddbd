//! Echelon-form predicates and the leader classes `L_r`, `L_r^*` and `U_c`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::matrix::Mat;

/// Outcome of an echelon-form test.
///
/// `pivots` holds the leading positions (columns for the upper form, rows for
/// the lower form) and is empty unless `is_echelon` holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonReport {
    pub is_echelon: bool,
    pub is_strict: bool,
    pub pivots: IndexSet,
}

fn leading_col(u: &Mat, i: usize) -> Option<usize> {
    u.row(i).iter().position(|x| !x.is_zero()).map(|c| c + 1)
}

pub fn is_upper_echelon(u: &Mat) -> EchelonReport {
    let mut pivots = Vec::new();
    let mut seen_zero_row = false;
    let mut echelon = true;
    for i in 1..=u.rows() {
        match leading_col(u, i) {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row || pivots.last().is_some_and(|&p| p >= c) {
                    echelon = false;
                    break;
                }
                pivots.push(c);
            }
        }
    }
    if !echelon {
        return EchelonReport {
            is_echelon: false,
            is_strict: false,
            pivots: IndexSet::empty(),
        };
    }
    EchelonReport {
        is_echelon: true,
        is_strict: !seen_zero_row,
        pivots: IndexSet::new(pivots).expect("pivots ascend"),
    }
}

/// Lower echelon form: the transpose is in upper echelon form.
pub fn is_lower_echelon(l: &Mat) -> EchelonReport {
    is_upper_echelon(&l.transpose())
}

/// Upper echelon test restricted to the first `t` columns.
pub(crate) fn prefix_is_upper_echelon(u: &Mat, t: usize) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 1..=u.rows() {
        match u.row(i)[..t].iter().position(|x| !x.is_zero()) {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row || last.is_some_and(|p| p >= c) {
                    return false;
                }
                last = Some(c);
            }
        }
    }
    true
}

/// Membership in `L_r` (or `L_r^*` when `starred`): column `j` has its
/// uppermost nonzero entry in row `r_j`, equal to 1 when starred.
pub fn in_class_l(l: &Mat, r: &IndexSet, starred: bool) -> Result<bool> {
    if l.cols() != r.len() {
        return Err(Error::Shape(format!(
            "L has {} columns but r has {} leaders",
            l.cols(),
            r.len()
        )));
    }
    r.check_bound(l.rows())?;
    for (j, rj) in r.iter().enumerate() {
        let col = j + 1;
        let lead = &l[(rj, col)];
        if lead.is_zero() || (starred && !lead.is_one()) {
            return Ok(false);
        }
        if (1..rj).any(|i| !l[(i, col)].is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in `U_c`: row `i` has its leftmost nonzero entry in column `c_i`.
pub fn in_class_u(u: &Mat, c: &IndexSet) -> Result<bool> {
    if u.rows() != c.len() {
        return Err(Error::Shape(format!(
            "U has {} rows but c has {} leaders",
            u.rows(),
            c.len()
        )));
    }
    c.check_bound(u.cols())?;
    for (i, ci) in c.iter().enumerate() {
        let row = u.row(i + 1);
        if row[ci - 1].is_zero() || row[..ci - 1].iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}
