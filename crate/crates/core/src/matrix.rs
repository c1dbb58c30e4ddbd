//! Dense exact matrices over the rationals.
//!
//! Public indexing is 1-based throughout. Zero-row and zero-column matrices
//! are ordinary values: an `m x 0` times a `0 x n` product is the `m x n`
//! zero matrix.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::index::IndexSet;

/// An exact rational number in canonical form.
pub type Scalar = BigRational;

/// Shorthand for an integer-valued [`Scalar`].
pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `p / q` as a [`Scalar`]. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses an integer or a `p/q` token with `q > 0`.
pub fn parse_scalar(token: &str) -> std::result::Result<Scalar, String> {
    let (num, den) = match token.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (token, None),
    };
    let numer = parse_int(num).ok_or_else(|| format!("not a rational: {token:?}"))?;
    let denom = match den {
        None => BigInt::one(),
        Some(q) => {
            if !q.bytes().all(|b| b.is_ascii_digit()) || q.is_empty() {
                return Err(format!("denominator must be a positive integer: {token:?}"));
            }
            let d = BigInt::from_str(q).map_err(|_| format!("bad denominator: {token:?}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator: {token:?}"));
            }
            d
        }
    };
    Ok(Scalar::new(numer, denom))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Formats a scalar as `p` or `p/q`.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

/// A dense `rows x cols` matrix of exact rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    /// Builds a matrix from a 1-based entry function.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Integer rows; all rows must have equal length. An empty slice gives `0 x 0`.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| int(v)));
        }
        Mat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_scalar_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Mat {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Column vector.
    pub fn column(values: &[i64]) -> Self {
        Mat::from_fn(values.len(), 1, |i, _| int(values[i - 1]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> Option<&Scalar> {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            return None;
        }
        Some(&self.data[(i - 1) * self.cols + (j - 1)])
    }

    pub(crate) fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub(crate) fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    /// Row `i` (1-based) as a slice.
    pub fn row(&self, i: usize) -> &[Scalar] {
        assert!(i >= 1 && i <= self.rows, "row {i} out of range");
        &self.data[(i - 1) * self.cols..i * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (1..=self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_row_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn is_col_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|r| self.at(r, j - 1).is_zero())
    }

    pub fn has_negative_entry(&self) -> bool {
        self.data.iter().any(Signed::is_negative)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// The submatrix on rows `I` and columns `J`.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Mat> {
        rows.check_bound(self.rows)?;
        cols.check_bound(self.cols)?;
        Ok(self.submatrix_unchecked(rows.as_slice(), cols.as_slice()))
    }

    pub(crate) fn submatrix_unchecked(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.at(i - 1, j - 1).clone());
            }
        }
        Mat {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn delete_row(&self, i: usize) -> Result<Mat> {
        if i == 0 || i > self.rows {
            return Err(Error::OutOfRange {
                index: i,
                bound: self.rows,
            });
        }
        let mut data = self.data.clone();
        data.drain((i - 1) * self.cols..i * self.cols);
        Ok(Mat {
            rows: self.rows - 1,
            cols: self.cols,
            data,
        })
    }

    pub fn delete_col(&self, j: usize) -> Result<Mat> {
        if j == 0 || j > self.cols {
            return Err(Error::OutOfRange {
                index: j,
                bound: self.cols,
            });
        }
        let data = self
            .data
            .iter()
            .enumerate()
            .filter(|(k, _)| k % self.cols != j - 1)
            .map(|(_, x)| x.clone())
            .collect();
        Ok(Mat {
            rows: self.rows,
            cols: self.cols - 1,
            data,
        })
    }

    /// Exact product. A zero inner dimension yields the zero matrix.
    pub fn matmul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Least common multiple of the denominators in row `r` (0-based).
    pub(crate) fn row_denominator_lcm(&self, r: usize) -> BigInt {
        use num::Integer;
        self.data[r * self.cols..(r + 1) * self.cols]
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Parses the matrix text format: a header line `m n` followed by `m`
    /// lines of `n` whitespace-separated integers or `p/q` rationals.
    /// Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Mat> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: hline,
                msg: format!("bad dimension {s:?}"),
            })
        };
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                msg: "header must be \"m n\"".into(),
            });
        }
        let (rows, cols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (line, content) = match lines.next() {
                Some(x) => x,
                None if cols == 0 => (0, ""),
                None => {
                    return Err(Error::Parse {
                        line: hline + r + 1,
                        msg: format!("expected {rows} rows, found {r}"),
                    })
                }
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.len() != cols {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {cols} entries, found {}", tokens.len()),
                });
            }
            for t in tokens {
                data.push(parse_scalar(t).map_err(|msg| Error::Parse { line, msg })?);
            }
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                msg: "trailing content after matrix".into(),
            });
        }
        Ok(Mat { rows, cols, data })
    }

    /// Inverse of [`Mat::parse`]; rows are single-space separated.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 1..=self.rows {
            let line: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Sign of every entry is >= 0.
    pub fn is_entrywise_nonnegative(&self) -> bool {
        self.data.iter().all(|x| x.numer().sign() != Sign::Minus)
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;

    /// 1-based `(row, col)`; panics out of range.
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
            .unwrap_or_else(|| panic!("index ({i},{j}) out of range for {}x{}", self.rows, self.cols))
    }
}

impl FromStr for Mat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mat::parse(s)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Free-function form of [`Mat::matmul`].
pub fn matmul(a: &Mat, b: &Mat) -> Result<Mat> {
    a.matmul(b)
}

/// Free-function form of [`Mat::submatrix`].
pub fn submatrix(a: &Mat, rows: &IndexSet, cols: &IndexSet) -> Result<Mat> {
    a.submatrix(rows, cols)
}

pub fn delete_row(a: &Mat, i: usize) -> Result<Mat> {
    a.delete_row(i)
}

pub fn delete_col(a: &Mat, j: usize) -> Result<Mat> {
    a.delete_col(j)
}
