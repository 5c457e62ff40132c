//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision values. The root-system code
//! only needs small matrices (rank at most 8, at most a few hundred rows), so
//! the algorithms are the plain textbook ones.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point set")]
    EmptyInput,
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is needed so that a
    /// matrix with zero rows still knows its width.
    pub fn from_rows<R, T>(cols: usize, rows: R) -> Result<Self, LinalgError>
    where
        R: IntoIterator,
        R::Item: AsRef<[T]>,
        T: Clone + Into<BigInt>,
    {
        let mut data = Vec::new();
        let mut n = 0;
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned().map(Into::into));
            n += 1;
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = -std::mem::take(x);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let d = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] -= d;
        }
    }

    /// Replaces rows (r1, r2) by (a·r1 + b·r2, c·r1 + d·r2).
    fn combine_rows(&mut self, r1: usize, r2: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        for j in 0..self.cols {
            let x = self.data[r1 * self.cols + j].clone();
            let y = self.data[r2 * self.cols + j].clone();
            self.data[r1 * self.cols + j] = a * &x + b * &y;
            self.data[r2 * self.cols + j] = c * &x + d * &y;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.iter_rows().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()))
            .finish()
    }
}

/// Result of [`hermite_normal_form`].
#[derive(Debug, Clone)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column of the leading entry of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-style Hermite normal form with a unimodular transform `u` such that
/// `u · m = h`.
///
/// Nonzero rows come first, pivots are positive and strictly move right,
/// and entries above each pivot lie in `[0, pivot)`. The form is unique
/// for a given row lattice, so two matrices span the same lattice iff their
/// forms agree.
pub fn hermite_normal_form(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut pr = 0;

    for col in 0..h.cols() {
        if pr == h.rows() {
            break;
        }
        for r in pr + 1..h.rows() {
            if h[(r, col)].is_zero() {
                continue;
            }
            if h[(pr, col)].is_zero() {
                h.swap_rows(pr, r);
                u.swap_rows(pr, r);
                continue;
            }
            let a = h[(pr, col)].clone();
            let b = h[(r, col)].clone();
            let eg = a.extended_gcd(&b);
            // [x y; -b/g a/g] has determinant 1
            let c = -(&b / &eg.gcd);
            let d = &a / &eg.gcd;
            h.combine_rows(pr, r, &eg.x, &eg.y, &c, &d);
            u.combine_rows(pr, r, &eg.x, &eg.y, &c, &d);
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let p = h[(pr, col)].clone();
        for r in 0..pr {
            let q = h[(r, col)].div_floor(&p);
            h.sub_row_multiple(r, pr, &q);
            u.sub_row_multiple(r, pr, &q);
        }
        pivots.push(col);
        pr += 1;
    }
    Hnf { h, u, pivots }
}

/// Rank over ℚ, which is also the rank of the row lattice.
pub fn integer_rank(m: &IntMatrix) -> usize {
    hermite_normal_form(m).rank()
}

/// Row lattice in Hermite form, for repeated membership queries.
#[derive(Debug, Clone)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn new(generators: &IntMatrix) -> Self {
        let hnf = hermite_normal_form(generators);
        let basis = (0..hnf.rank()).map(|i| hnf.h.row(i).to_vec()).collect();
        Self {
            dim: generators.cols(),
            basis,
            pivots: hnf.pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool, LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut rest: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let mut col = 0;
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            // everything left of the pivot must already be cleared
            if rest[col..pc].iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
            let (q, r) = rest[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (x, b) in rest.iter_mut().zip(row).skip(pc) {
                    *x -= &q * b;
                }
            }
            col = pc + 1;
        }
        Ok(rest[col..].iter().all(Zero::is_zero))
    }
}

/// Decides whether `v` is an integer combination of the rows of `basis`.
pub fn lattice_contains(basis: &IntMatrix, v: &[i64]) -> Result<bool, LinalgError> {
    if v.len() != basis.cols() {
        return Err(LinalgError::DimensionMismatch {
            expected: basis.cols(),
            found: v.len(),
        });
    }
    Lattice::new(basis).contains(v)
}

/// True iff 0 lies in the relative interior of the convex hull of `points`,
/// that is, iff some strictly positive weights summing to one put the
/// barycenter at the origin.
///
/// Scaling such weights so that the smallest is 1 turns the question into a
/// single feasibility problem: find `μ ≥ 0` with `Σ μ_p p = −Σ p`.
pub fn zero_in_relative_interior(points: &[Vec<i64>]) -> Result<bool, LinalgError> {
    let Some(first) = points.first() else {
        return Err(LinalgError::EmptyInput);
    };
    let dim = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != dim) {
        return Err(LinalgError::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let a: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| points.iter().map(|p| rational(p[i])).collect())
        .collect();
    let b: Vec<BigRational> = (0..dim)
        .map(|i| rational(-points.iter().map(|p| p[i]).sum::<i64>()))
        .collect();
    Ok(nonnegative_solution_exists(&a, &b))
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Phase-one simplex: does `A x = b` have a solution with `x ≥ 0`?
///
/// Bland's rule guarantees termination; all pivots are exact.
pub fn nonnegative_solution_exists(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let width = n + m + 1;
    // tableau rows: [A | I | b] with b made nonnegative
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = Vec::with_capacity(width);
        for x in &a[i] {
            row.push(if flip { -x.clone() } else { x.clone() });
        }
        for k in 0..m {
            row.push(if k == i { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // objective: minimize the sum of artificials, stored as reduced costs
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((pr, _)) = leave else {
            // unbounded below cannot happen for a sum of nonnegative artificials
            unreachable!("phase-one objective is bounded below by zero");
        };
        pivot(&mut t, pr, enter);
        basis[pr] = enter;
    }
    t[m][width - 1].is_zero()
}

fn pivot(t: &mut [Vec<BigRational>], pr: usize, pc: usize) {
    let p = t[pr][pc].clone();
    for x in t[pr].iter_mut() {
        *x /= &p;
    }
    let prow = t[pr].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}
