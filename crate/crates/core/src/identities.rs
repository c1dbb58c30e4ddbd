//! Determinantal identities as exact evaluators: Laplace relations, the
//! vanishing lemma, Cauchy-Binet, Sylvester's identity, and Muir's law of
//! extensible minors acting on explicit two-factor identities.
//!
//! Signs always come from [`inversion_count`].

use num::{One, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::det::{determinant, minor};
use crate::error::{Error, Result};
use crate::index::{inversion_count, IndexSet};
use crate::matrix::{ratio, Mat, Scalar};

fn signed(x: Scalar, odd: bool) -> Scalar {
    if odd {
        -x
    } else {
        x
    }
}

fn cardinality(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::Cardinality { left, right });
    }
    Ok(())
}

/// `sum over I1 ⊔ I2 = I, |I1| = |J1|` of `(-1)^l(I1;I2) [I1|J1] [I2|J2]`.
pub fn laplace_sum_rows(a: &Mat, rows: &IndexSet, j1: &IndexSet, j2: &IndexSet) -> Result<Scalar> {
    cardinality(j1.len() + j2.len(), rows.len())?;
    rows.check_bound(a.rows())?;
    j1.check_bound(a.cols())?;
    j2.check_bound(a.cols())?;
    let mut acc = Scalar::zero();
    for i1 in rows.subsets(j1.len()) {
        let i2 = rows.difference(&i1);
        let term = minor(a, &i1, j1)? * minor(a, &i2, j2)?;
        acc += signed(term, inversion_count(&i1, &i2).is_odd());
    }
    Ok(acc)
}

/// Closed form of [`laplace_sum_rows`]: `(-1)^l(J1;J2) [I | J1 ⊔ J2]`, or 0
/// when `J1` and `J2` overlap.
pub fn laplace_rows_rhs(a: &Mat, rows: &IndexSet, j1: &IndexSet, j2: &IndexSet) -> Result<Scalar> {
    cardinality(j1.len() + j2.len(), rows.len())?;
    match j1.disjoint_union(j2) {
        Ok(j) => Ok(signed(minor(a, rows, &j)?, inversion_count(j1, j2).is_odd())),
        Err(_) => Ok(Scalar::zero()),
    }
}

/// Column dual: `sum over J1 ⊔ J2 = J, |J1| = |I1|` of `(-1)^l(J1;J2) [I1|J1] [I2|J2]`.
pub fn laplace_sum_cols(a: &Mat, cols: &IndexSet, i1: &IndexSet, i2: &IndexSet) -> Result<Scalar> {
    cardinality(i1.len() + i2.len(), cols.len())?;
    cols.check_bound(a.cols())?;
    i1.check_bound(a.rows())?;
    i2.check_bound(a.rows())?;
    let mut acc = Scalar::zero();
    for j1 in cols.subsets(i1.len()) {
        let j2 = cols.difference(&j1);
        let term = minor(a, i1, &j1)? * minor(a, i2, &j2)?;
        acc += signed(term, inversion_count(&j1, &j2).is_odd());
    }
    Ok(acc)
}

pub fn laplace_cols_rhs(a: &Mat, cols: &IndexSet, i1: &IndexSet, i2: &IndexSet) -> Result<Scalar> {
    cardinality(i1.len() + i2.len(), cols.len())?;
    match i1.disjoint_union(i2) {
        Ok(i) => Ok(signed(minor(a, &i, cols)?, inversion_count(i1, i2).is_odd())),
        Err(_) => Ok(Scalar::zero()),
    }
}

/// If `[I1|J1] = 0` for every `I1 ⊆ I` with `|I1| = |J1|`, then `[I|J] = 0`.
/// Returns whether the implication holds on this instance.
pub fn vanishing_check(a: &Mat, rows: &IndexSet, cols: &IndexSet, j1: &IndexSet) -> Result<bool> {
    cardinality(rows.len(), cols.len())?;
    if !j1.is_subset(cols) {
        return Err(Error::Shape(format!("{j1} is not contained in {cols}")));
    }
    let mut hypothesis = true;
    for i1 in rows.subsets(j1.len()) {
        if !minor(a, &i1, j1)?.is_zero() {
            hypothesis = false;
            break;
        }
    }
    Ok(!hypothesis || minor(a, rows, cols)?.is_zero())
}

/// Row dual of [`vanishing_check`], fixing `I1 ⊆ I`.
pub fn vanishing_check_rows(a: &Mat, rows: &IndexSet, cols: &IndexSet, i1: &IndexSet) -> Result<bool> {
    cardinality(rows.len(), cols.len())?;
    if !i1.is_subset(rows) {
        return Err(Error::Shape(format!("{i1} is not contained in {rows}")));
    }
    let mut hypothesis = true;
    for j1 in cols.subsets(i1.len()) {
        if !minor(a, i1, &j1)?.is_zero() {
            hypothesis = false;
            break;
        }
    }
    Ok(!hypothesis || minor(a, rows, cols)?.is_zero())
}

/// `sum over k-subsets K of {1..t}` of `[I|K]_A [K|J]_B`.
pub fn cauchy_binet_sum(a: &Mat, b: &Mat, rows: &IndexSet, cols: &IndexSet) -> Result<Scalar> {
    if a.cols() != b.rows() {
        return Err(Error::Shape(format!(
            "inner dimensions differ: {} vs {}",
            a.cols(),
            b.rows()
        )));
    }
    cardinality(rows.len(), cols.len())?;
    let t = a.cols();
    if rows.len() > t {
        return Err(Error::Shape(format!("minor order {} exceeds inner dimension {t}", rows.len())));
    }
    rows.check_bound(a.rows())?;
    cols.check_bound(b.cols())?;
    let mut acc = Scalar::zero();
    for k in IndexSet::combinations(t, rows.len()) {
        acc += minor(a, rows, &k)? * minor(b, &k, cols)?;
    }
    Ok(acc)
}

/// `[I|J]_{AB} = sum_K [I|K]_A [K|J]_B`.
pub fn cauchy_binet_check(a: &Mat, b: &Mat, rows: &IndexSet, cols: &IndexSet) -> Result<bool> {
    let rhs = cauchy_binet_sum(a, b, rows, cols)?;
    let ab = a.matmul(b)?;
    Ok(minor(&ab, rows, cols)? == rhs)
}

/// The bordered-minor matrix `b_ij = [1..m, m+i | 1..m, m+j]` of an `n x n` matrix.
pub fn sylvester_matrix(a: &Mat, m: usize) -> Result<Mat> {
    if !a.is_square() {
        return Err(Error::Shape(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    let n = a.rows();
    if m >= n {
        return Err(Error::Shape(format!("border size {m} must be below {n}")));
    }
    let core = IndexSet::range(m);
    let mut entries = Vec::with_capacity((n - m) * (n - m));
    for i in 1..=n - m {
        let rows = core.with(m + i).expect("outside the border");
        for j in 1..=n - m {
            let cols = core.with(m + j).expect("outside the border");
            entries.push(minor(a, &rows, &cols)?);
        }
    }
    Mat::from_vec(n - m, n - m, entries)
}

/// `det(B) = det(A) [1..m|1..m]^(n-m-1)` with `B` from [`sylvester_matrix`].
/// Only the multiplicative form is checked, so a vanishing border minor is fine.
pub fn sylvester_check(a: &Mat, m: usize) -> Result<bool> {
    let b = sylvester_matrix(a, m)?;
    let n = a.rows();
    let border = minor(a, &IndexSet::range(m), &IndexSet::range(m))?;
    let mut rhs = determinant(a)?;
    for _ in 0..n - m - 1 {
        rhs *= &border;
    }
    Ok(determinant(&b)? == rhs)
}

/// `coefficient * [first] * [second]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MinorTerm {
    pub coefficient: Scalar,
    pub first: (IndexSet, IndexSet),
    pub second: (IndexSet, IndexSet),
}

impl MinorTerm {
    pub fn new(coefficient: Scalar, first: (IndexSet, IndexSet), second: (IndexSet, IndexSet)) -> Result<Self> {
        cardinality(first.0.len(), first.1.len())?;
        cardinality(second.0.len(), second.1.len())?;
        Ok(MinorTerm {
            coefficient,
            first,
            second,
        })
    }

    pub fn evaluate(&self, a: &Mat) -> Result<Scalar> {
        Ok(&self.coefficient * minor(a, &self.first.0, &self.first.1)? * minor(a, &self.second.0, &self.second.1)?)
    }
}

/// A homogeneous two-factor identity `sum_s c_s [I_s|J_s][K_s|L_s] = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermIdentity {
    pub terms: Vec<MinorTerm>,
}

impl TermIdentity {
    pub fn new(terms: Vec<MinorTerm>) -> Self {
        TermIdentity { terms }
    }

    /// The exact value of the left side on `a`; zero for a true identity.
    pub fn evaluate(&self, a: &Mat) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for t in &self.terms {
            acc += t.evaluate(a)?;
        }
        Ok(acc)
    }

    /// Largest row and column index mentioned.
    pub fn extent(&self) -> (usize, usize) {
        let mut rows = 0;
        let mut cols = 0;
        for t in &self.terms {
            for (r, c) in [&t.first, &t.second] {
                rows = rows.max(r.largest().unwrap_or(0));
                cols = cols.max(c.largest().unwrap_or(0));
            }
        }
        (rows, cols)
    }

    /// Terms with the factors of each product ordered and like terms merged.
    pub fn normalized(&self) -> Vec<MinorTerm> {
        let mut terms: Vec<MinorTerm> = self
            .terms
            .iter()
            .map(|t| {
                let mut t = t.clone();
                if t.second < t.first {
                    std::mem::swap(&mut t.first, &mut t.second);
                }
                t
            })
            .collect();
        terms.sort_by(|a, b| (&a.first, &a.second).cmp(&(&b.first, &b.second)));
        let mut out: Vec<MinorTerm> = Vec::new();
        for t in terms {
            match out.last_mut() {
                Some(last) if last.first == t.first && last.second == t.second => {
                    last.coefficient += t.coefficient;
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coefficient.is_zero());
        out
    }

    /// Laplace relation (rows) written as an identity:
    /// `sum (-1)^l(I1;I2) [I1|J1][I2|J2] - (-1)^l(J1;J2) [I|J1 ⊔ J2][∅|∅] = 0`,
    /// the last term dropped when `J1` and `J2` overlap.
    pub fn laplace_rows(rows: &IndexSet, j1: &IndexSet, j2: &IndexSet) -> Result<TermIdentity> {
        cardinality(j1.len() + j2.len(), rows.len())?;
        let mut terms = Vec::new();
        for i1 in rows.subsets(j1.len()) {
            let i2 = rows.difference(&i1);
            let c = signed(Scalar::one(), inversion_count(&i1, &i2).is_odd());
            terms.push(MinorTerm::new(c, (i1, j1.clone()), (i2, j2.clone()))?);
        }
        if let Ok(j) = j1.disjoint_union(j2) {
            let c = signed(-Scalar::one(), inversion_count(j1, j2).is_odd());
            terms.push(MinorTerm::new(
                c,
                (rows.clone(), j),
                (IndexSet::empty(), IndexSet::empty()),
            )?);
        }
        Ok(TermIdentity { terms })
    }

    /// Column dual of [`TermIdentity::laplace_rows`].
    pub fn laplace_cols(cols: &IndexSet, i1: &IndexSet, i2: &IndexSet) -> Result<TermIdentity> {
        cardinality(i1.len() + i2.len(), cols.len())?;
        let mut terms = Vec::new();
        for j1 in cols.subsets(i1.len()) {
            let j2 = cols.difference(&j1);
            let c = signed(Scalar::one(), inversion_count(&j1, &j2).is_odd());
            terms.push(MinorTerm::new(c, (i1.clone(), j1), (i2.clone(), j2))?);
        }
        if let Ok(i) = i1.disjoint_union(i2) {
            let c = signed(-Scalar::one(), inversion_count(i1, i2).is_odd());
            terms.push(MinorTerm::new(
                c,
                (i, cols.clone()),
                (IndexSet::empty(), IndexSet::empty()),
            )?);
        }
        Ok(TermIdentity { terms })
    }

    /// `[i|j][s,s+1|j,k] - [s|j][i,s+1|j,k] + [s+1|j][i,s|j,k] = 0` for
    /// `i < s` and `j < k`: the overlapping Laplace relation on rows
    /// `{i, s, s+1}` with column sets `{j}` and `{j, k}`.
    pub fn three_term(i: usize, s: usize, j: usize, k: usize) -> Result<TermIdentity> {
        let rows = IndexSet::new(vec![i, s, s + 1])?;
        TermIdentity::laplace_rows(&rows, &IndexSet::new(vec![j])?, &IndexSet::new(vec![j, k])?)
    }
}

/// Muir's law: adjoins rows `P` and columns `Q` to every minor of `id`.
/// `P` must avoid every row set of `id` and `Q` every column set.
pub fn muir_extend(id: &TermIdentity, p: &IndexSet, q: &IndexSet) -> Result<TermIdentity> {
    cardinality(p.len(), q.len())?;
    let extend = |(rows, cols): &(IndexSet, IndexSet)| -> Result<(IndexSet, IndexSet)> {
        Ok((rows.disjoint_union(p)?, cols.disjoint_union(q)?))
    };
    let terms = id
        .terms
        .iter()
        .map(|t| {
            Ok(MinorTerm {
                coefficient: t.coefficient.clone(),
                first: extend(&t.first)?,
                second: extend(&t.second)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TermIdentity { terms })
}

/// Seeded random-instance verification of every identity above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    pub instances: usize,
    pub max_dim: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 0,
            instances: 100,
            max_dim: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityTally {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub tallies: Vec<IdentityTally>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.tallies.iter().all(|t| t.failed == 0 && t.passed > 0)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityTally> {
        self.tallies.iter().find(|t| t.name == name)
    }
}

/// A random rational matrix with small entries.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |_, _| {
        if rng.random_ratio(1, 5) {
            Scalar::zero()
        } else {
            ratio(rng.random_range(-4..=4), rng.random_range(1..=3))
        }
    })
}

fn random_subset(rng: &mut impl Rng, n: usize, k: usize) -> IndexSet {
    let all: Vec<usize> = (1..=n).collect();
    let picked: Vec<usize> = all.choose_multiple(rng, k).copied().collect();
    IndexSet::from_unsorted(picked).expect("distinct")
}

/// Two column sets of sizes `a` and `b` from `{1..n}`, forced to overlap
/// when `overlap` is set and both are nonempty.
fn split_pair(rng: &mut impl Rng, n: usize, a: usize, b: usize, overlap: bool) -> (IndexSet, IndexSet) {
    let first = random_subset(rng, n, a);
    if overlap && a > 0 && b > 0 {
        let shared = *first.as_slice().choose(rng).expect("nonempty");
        let rest: Vec<usize> = (1..=n).filter(|&x| x != shared).collect();
        let mut second: Vec<usize> = rest.choose_multiple(rng, b - 1).copied().collect();
        second.push(shared);
        return (first, IndexSet::from_unsorted(second).expect("distinct"));
    }
    (first, random_subset(rng, n, b))
}

struct Tallies(Vec<IdentityTally>);

impl Tallies {
    fn record(&mut self, name: &'static str, ok: bool) {
        let idx = match self.0.iter().position(|t| t.name == name) {
            Some(i) => i,
            None => {
                self.0.push(IdentityTally {
                    name,
                    passed: 0,
                    failed: 0,
                });
                self.0.len() - 1
            }
        };
        if ok {
            self.0[idx].passed += 1;
        } else {
            self.0[idx].failed += 1;
        }
    }
}

pub const LAPLACE_ROWS: &str = "laplace-rows";
pub const LAPLACE_COLS: &str = "laplace-cols";
pub const LAPLACE_OVERLAP_ZERO: &str = "laplace-overlap-zero";
pub const VANISHING: &str = "vanishing";
pub const CAUCHY_BINET: &str = "cauchy-binet";
pub const SYLVESTER: &str = "sylvester";
pub const MUIR: &str = "muir";

/// Runs `instances` random cases of each identity.
pub fn selftest(cfg: &SelftestConfig) -> Result<SelftestReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let max = cfg.max_dim.max(2);
    let mut tallies = Tallies(Vec::new());
    for inst in 0..cfg.instances {
        let overlap = inst % 2 == 0;

        // Laplace (a)
        let (m, n) = (rng.random_range(1..=max), rng.random_range(1..=max));
        let a = random_matrix(&mut rng, m, n);
        let k = rng.random_range(1..=m.min(2 * n));
        let lo = k.saturating_sub(n);
        let s1 = rng.random_range(lo..=k.min(n));
        let rows = random_subset(&mut rng, m, k);
        let (j1, j2) = split_pair(&mut rng, n, s1, k - s1, overlap);
        let lhs = laplace_sum_rows(&a, &rows, &j1, &j2)?;
        tallies.record(LAPLACE_ROWS, lhs == laplace_rows_rhs(&a, &rows, &j1, &j2)?);
        if !j1.is_disjoint(&j2) {
            tallies.record(LAPLACE_OVERLAP_ZERO, lhs.is_zero());
        }

        // Laplace (b)
        let (m, n) = (rng.random_range(1..=max), rng.random_range(1..=max));
        let a = random_matrix(&mut rng, m, n);
        let k = rng.random_range(1..=n.min(2 * m));
        let lo = k.saturating_sub(m);
        let s1 = rng.random_range(lo..=k.min(m));
        let cols = random_subset(&mut rng, n, k);
        let (i1, i2) = split_pair(&mut rng, m, s1, k - s1, overlap);
        let lhs = laplace_sum_cols(&a, &cols, &i1, &i2)?;
        tallies.record(LAPLACE_COLS, lhs == laplace_cols_rhs(&a, &cols, &i1, &i2)?);
        if !i1.is_disjoint(&i2) {
            tallies.record(LAPLACE_OVERLAP_ZERO, lhs.is_zero());
        }

        // vanishing lemma; every other instance gets a zero block so the
        // hypothesis holds
        let n = rng.random_range(1..=max);
        let mut a = random_matrix(&mut rng, n, n);
        let size = rng.random_range(1..=n);
        let rows = random_subset(&mut rng, n, size);
        let cols = random_subset(&mut rng, n, rows.len());
        let size = rng.random_range(1..=cols.len());
        let j1 = random_subset(&mut rng, cols.len(), size);
        let j1 = IndexSet::new(j1.iter().map(|p| cols.as_slice()[p - 1]).collect())?;
        if overlap {
            for i in rows.iter() {
                for j in j1.iter() {
                    *a.at_mut(i - 1, j - 1) = Scalar::zero();
                }
            }
        }
        tallies.record(VANISHING, vanishing_check(&a, &rows, &cols, &j1)?);

        // Cauchy-Binet
        let (m, t, n) = (
            rng.random_range(1..=max),
            rng.random_range(1..=max),
            rng.random_range(1..=max),
        );
        let a = random_matrix(&mut rng, m, t);
        let b = random_matrix(&mut rng, t, n);
        let k = rng.random_range(0..=m.min(n).min(t));
        let rows = random_subset(&mut rng, m, k);
        let cols = random_subset(&mut rng, n, k);
        tallies.record(CAUCHY_BINET, cauchy_binet_check(&a, &b, &rows, &cols)?);

        // Sylvester
        let n = rng.random_range(2..=max);
        let m = rng.random_range(1..n);
        let a = random_matrix(&mut rng, n, n);
        tallies.record(SYLVESTER, sylvester_check(&a, m)?);

        // Muir: a random Laplace identity extended by disjoint P, Q
        let dim = max.max(3);
        let k = rng.random_range(2..=dim - 1);
        let rows = random_subset(&mut rng, dim, k);
        let s1 = rng.random_range(1..k);
        let (j1, j2) = split_pair(&mut rng, dim - 1, s1, k - s1, overlap);
        let base = TermIdentity::laplace_rows(&rows, &j1, &j2)?;
        let free_rows: Vec<usize> = (1..=dim).filter(|r| !rows.contains(*r)).collect();
        let used_cols = j1.disjoint_union(&j2).unwrap_or_else(|_| {
            IndexSet::from_unsorted(
                j1.iter()
                    .chain(j2.iter())
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect(),
            )
            .expect("set")
        });
        let free_cols: Vec<usize> = (1..=dim).filter(|c| !used_cols.contains(*c)).collect();
        let ext = rng.random_range(0..=free_rows.len().min(free_cols.len()));
        let p = IndexSet::from_unsorted(free_rows.choose_multiple(&mut rng, ext).copied().collect())?;
        let q = IndexSet::from_unsorted(free_cols.choose_multiple(&mut rng, ext).copied().collect())?;
        let extended = muir_extend(&base, &p, &q)?;
        let a = random_matrix(&mut rng, dim, dim);
        tallies.record(MUIR, extended.evaluate(&a)?.is_zero());
    }
    Ok(SelftestReport { tallies: tallies.0 })
}
