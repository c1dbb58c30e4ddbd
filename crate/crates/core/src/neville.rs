//! Modified Neville elimination.
//!
//! Starting from `L = I`, `U = A`, the algorithm repeats until `U` is in
//! strictly upper echelon form:
//!
//! - if `U` has a zero row, delete the largest-index one from `U` together
//!   with the matching column of `L`;
//! - otherwise take the first column `t` at which the leading columns of
//!   `U` stop being in echelon form, the largest `s` with `u_st` and
//!   `u_{s+1,t}` both nonzero, subtract `λ = u_{s+1,t} / u_st` times row
//!   `s` from row `s+1` of `U`, and add `λ` times column `s+1` of `L` to
//!   column `s`.
//!
//! `A = L U` holds after every move. For a totally nonnegative input both
//! factors stay totally nonnegative and the result is the unique
//! decomposition of `A` in its class.

use std::fmt;

use num::{Signed, Zero};

use crate::echelon::{is_lower_echelon, is_upper_echelon, prefix_is_upper_echelon};
use crate::error::{Error, Result};
use crate::explicit::LUPair;
use crate::matrix::{format_scalar, parse_scalar, Mat, Scalar};
use crate::mclass::{ClassDesc, DEFAULT_BRUTEFORCE_LIMIT};
use crate::tnn::is_tnn_with_limit;

/// One step of the algorithm. Indices refer to the matrices at the time of the move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Row `i` of `U` (and column `i` of `L`) was deleted.
    DeleteRow { i: usize },
    /// Row `s+1` of `U` lost `multiplier` times row `s`, clearing `u_{s+1,t}`.
    Eliminate { s: usize, t: usize, multiplier: Scalar },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::DeleteRow { i } => write!(f, "D {i}"),
            Move::Eliminate { s, t, multiplier } => {
                write!(f, "E {s} {t} {}", format_scalar(multiplier))
            }
        }
    }
}

impl Move {
    /// Parses `D i` or `E s t p/q`.
    pub fn parse(line: &str) -> std::result::Result<Move, String> {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let index = |s: &str| {
            s.parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| format!("bad index {s:?}"))
        };
        match tokens.as_slice() {
            ["D", i] => Ok(Move::DeleteRow { i: index(i)? }),
            ["E", s, t, p] => Ok(Move::Eliminate {
                s: index(s)?,
                t: index(t)?,
                multiplier: parse_scalar(p)?,
            }),
            _ => Err(format!("unrecognised move {line:?}")),
        }
    }
}

/// The moves of one run and, optionally, the `(L, U)` pair after each move.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NevilleTrace {
    pub moves: Vec<Move>,
    pub stages: Option<Vec<(Mat, Mat)>>,
}

impl NevilleTrace {
    /// One move per line.
    pub fn to_text(&self) -> String {
        self.moves.iter().map(|m| format!("{m}\n")).collect()
    }

    /// Parses the line format of [`NevilleTrace::to_text`]. Blank lines are skipped.
    pub fn parse(text: &str) -> Result<NevilleTrace> {
        let moves = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(k, l)| Move::parse(l).map_err(|msg| Error::Parse { line: k + 1, msg }))
            .collect::<Result<Vec<_>>>()?;
        Ok(NevilleTrace { moves, stages: None })
    }
}

/// Validates a Neville move at `(s, t)` and returns its multiplier.
fn move_multiplier(u: &Mat, s: usize, t: usize) -> Result<Scalar> {
    let fail = |msg: String| Err(Error::MovePrecondition(msg));
    if s == 0 || s >= u.rows() || t == 0 || t > u.cols() {
        return fail(format!("(s, t) = ({s}, {t}) out of range for {}x{}", u.rows(), u.cols()));
    }
    let pivot = &u[(s, t)];
    let target = &u[(s + 1, t)];
    if pivot.is_zero() {
        return fail(format!("u[{s},{t}] is zero"));
    }
    if target.is_zero() {
        return fail(format!("u[{},{t}] is zero", s + 1));
    }
    for i in s..=u.rows() {
        if let Some(j) = (1..t).find(|&j| !u[(i, j)].is_zero()) {
            return fail(format!("u[{i},{j}] is nonzero left of column {t}"));
        }
    }
    if let Some(i) = (s + 2..=u.rows()).find(|&i| !u[(i, t)].is_zero()) {
        return fail(format!("u[{i},{t}] is nonzero below row {}", s + 1));
    }
    Ok(target / pivot)
}

fn apply_move(u: &mut Mat, s: usize, lambda: &Scalar) {
    for c in 0..u.cols() {
        let v = u.at(s - 1, c) * lambda;
        *u.at_mut(s, c) -= v;
    }
}

/// Undo of the row operation on the `L` side: `L <- L (I + λE(s+1,s))`,
/// i.e. column `s` gains `λ` times column `s+1`.
fn absorb_into_l(l: &mut Mat, s: usize, lambda: &Scalar) {
    for r in 0..l.rows() {
        let v = l.at(r, s) * lambda;
        *l.at_mut(r, s - 1) += v;
    }
}

/// One Neville elimination move on `U`: row `s+1` becomes
/// `u_{s+1,j} - u_{s+1,t} u_st^{-1} u_sj`. Requires `u_st, u_{s+1,t} != 0`,
/// `u_ij = 0` for `i >= s, j < t`, and `u_{s+w,t} = 0` for `w > 1`.
pub fn neville_move(u: &Mat, s: usize, t: usize) -> Result<Mat> {
    let lambda = move_multiplier(u, s, t)?;
    let mut b = u.clone();
    apply_move(&mut b, s, &lambda);
    Ok(b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NevilleOptions {
    pub record_stages: bool,
    /// Brute-force total nonnegativity check before running, applied when
    /// `min(m, n)` is at most this bound. `None` relies on the checks made
    /// during elimination only.
    pub tnn_precheck_limit: Option<usize>,
}

impl Default for NevilleOptions {
    fn default() -> Self {
        NevilleOptions {
            record_stages: false,
            tnn_precheck_limit: Some(DEFAULT_BRUTEFORCE_LIMIT),
        }
    }
}

pub fn neville_decompose(a: &Mat, record_stages: bool) -> Result<(LUPair, NevilleTrace)> {
    neville_decompose_with(
        a,
        &NevilleOptions {
            record_stages,
            ..NevilleOptions::default()
        },
    )
}

fn not_tnn(msg: impl Into<String>) -> Error {
    Error::NotTnn(msg.into())
}

/// Selects the next elimination `(s, t)` for a `U` without zero rows that
/// is not in echelon form.
fn next_elimination(u: &Mat) -> Result<(usize, usize)> {
    let leftmost = (1..=u.cols())
        .find(|&j| !u.is_col_zero(j))
        .ok_or_else(|| not_tnn("no nonzero column"))?;
    if u[(1, leftmost)].is_zero() {
        return Err(not_tnn(format!(
            "leftmost nonzero column {leftmost} has a zero uppermost entry"
        )));
    }
    let t = (1..=u.cols())
        .find(|&t| !prefix_is_upper_echelon(u, t))
        .ok_or_else(|| not_tnn("echelon failure not located"))?;
    let s = (1..u.rows())
        .rev()
        .find(|&s| !u[(s, t)].is_zero() && !u[(s + 1, t)].is_zero())
        .ok_or_else(|| not_tnn(format!("column {t} has no adjacent nonzero pair")))?;
    Ok((s, t))
}

pub fn neville_decompose_with(a: &Mat, opts: &NevilleOptions) -> Result<(LUPair, NevilleTrace)> {
    let (m, n) = a.shape();
    if let Some(limit) = opts.tnn_precheck_limit {
        if m.min(n) <= limit {
            let report = is_tnn_with_limit(a, limit)?;
            if let Some(w) = report.witness {
                return Err(not_tnn(format!("[{}|{}] = {}", w.rows, w.cols, w.value)));
            }
        }
    }
    if a.has_negative_entry() {
        return Err(not_tnn("negative entry"));
    }

    let mut l = Mat::identity(m);
    let mut u = a.clone();
    let mut trace = NevilleTrace {
        moves: Vec::new(),
        stages: opts.record_stages.then(Vec::new),
    };
    // every elimination clears an entry of the finite staircase region and
    // every deletion drops a row; this bound is never reached on valid input
    let max_moves = m + m * m * n.max(1) + 1;

    loop {
        let report = is_upper_echelon(&u);
        if report.is_strict {
            break;
        }
        if trace.moves.len() >= max_moves {
            return Err(not_tnn("elimination did not terminate"));
        }
        let mv = match (1..=u.rows()).rev().find(|&i| u.is_row_zero(i)) {
            Some(i) => {
                u = u.delete_row(i)?;
                l = l.delete_col(i)?;
                Move::DeleteRow { i }
            }
            None => {
                let (s, t) = next_elimination(&u)?;
                let lambda = move_multiplier(&u, s, t).map_err(|e| not_tnn(e.to_string()))?;
                if lambda.is_negative() {
                    return Err(not_tnn(format!("negative multiplier {lambda}")));
                }
                apply_move(&mut u, s, &lambda);
                if u.row(s + 1).iter().any(Signed::is_negative) {
                    return Err(not_tnn(format!("row {} went negative", s + 1)));
                }
                absorb_into_l(&mut l, s, &lambda);
                Move::Eliminate {
                    s,
                    t,
                    multiplier: lambda,
                }
            }
        };
        debug_assert_eq!(l.matmul(&u).as_ref(), Ok(a), "A = LU broken after {mv}");
        trace.moves.push(mv);
        if let Some(stages) = trace.stages.as_mut() {
            stages.push((l.clone(), u.clone()));
        }
    }

    let pair = finish(l, u)?;
    pair.verify(a).map_err(|e| not_tnn(e.to_string()))?;
    Ok((pair, trace))
}

/// Reads the class off the pivots of the final factors.
fn finish(l: Mat, u: Mat) -> Result<LUPair> {
    let upper = is_upper_echelon(&u);
    let lower = is_lower_echelon(&l);
    if !upper.is_strict || !lower.is_strict {
        return Err(not_tnn("factors are not in strict echelon form"));
    }
    let class = ClassDesc::new(lower.pivots, upper.pivots)?;
    Ok(LUPair { l, u, class })
}

/// Re-applies `trace` to `(I, A)` and returns the resulting factors.
pub fn replay(a: &Mat, trace: &NevilleTrace) -> Result<LUPair> {
    let mut l = Mat::identity(a.rows());
    let mut u = a.clone();
    for (step, mv) in trace.moves.iter().enumerate() {
        let err = |msg: String| Error::Replay { step: step + 1, msg };
        match mv {
            Move::DeleteRow { i } => {
                if *i == 0 || *i > u.rows() || !u.is_row_zero(*i) {
                    return Err(err(format!("row {i} of U is not a zero row")));
                }
                u = u.delete_row(*i)?;
                l = l.delete_col(*i)?;
            }
            Move::Eliminate { s, t, multiplier } => {
                let lambda = move_multiplier(&u, *s, *t).map_err(|e| err(e.to_string()))?;
                if &lambda != multiplier {
                    return Err(err(format!("multiplier {multiplier} recorded, {lambda} found")));
                }
                apply_move(&mut u, *s, &lambda);
                absorb_into_l(&mut l, *s, &lambda);
            }
        }
    }
    let pair = finish(l, u).map_err(|e| Error::Replay {
        step: trace.moves.len(),
        msg: e.to_string(),
    })?;
    pair.verify(a).map_err(|e| Error::Replay {
        step: trace.moves.len(),
        msg: e.to_string(),
    })?;
    Ok(pair)
}
