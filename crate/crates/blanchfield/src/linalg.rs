//! Exact dense linear algebra over the rational function field.
//!
//! Plain Gaussian elimination over reduced fractions, with the pivot chosen
//! as the least-complex (fewest terms) nonzero entry of the current column,
//! ties broken in row-major order. Rank, solving, inversion, determinants,
//! kernels, and exhaustive k×k minor gcd enumeration.

use itertools::Itertools;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gcd;
use crate::laurent::LaurentPoly;
use crate::ratfunc::RatFunc;

/// Row-major dense matrix of rational functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RfMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<RatFunc>,
}

/// Size guard for the combinatorial minor enumeration.
pub const MINORS_MAX_SIZE: usize = 10;

impl RfMatrix {
    pub fn new(rows: usize, cols: usize, nvars: usize, entries: Vec<RatFunc>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        assert!(entries.iter().all(|e| e.nvars() == nvars));
        RfMatrix {
            rows,
            cols,
            nvars,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, nvars, entries)
    }

    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        Self::from_fn(rows, cols, nvars, |_, _| RatFunc::zero(nvars))
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::from_fn(n, n, nvars, |i, j| {
            if i == j {
                RatFunc::one(nvars)
            } else {
                RatFunc::zero(nvars)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        assert_eq!(v.nvars(), self.nvars);
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFunc> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> RfMatrix {
        Self::from_fn(self.cols, self.rows, self.nvars, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> RfMatrix {
        Self::from_fn(self.rows, self.cols, self.nvars, |i, j| self.get(i, j).conj())
    }

    pub fn conj_transpose(&self) -> RfMatrix {
        Self::from_fn(self.cols, self.rows, self.nvars, |i, j| self.get(j, i).conj())
    }

    pub fn neg(&self) -> RfMatrix {
        Self::from_fn(self.rows, self.cols, self.nvars, |i, j| -self.get(i, j))
    }

    pub fn add(&self, other: &RfMatrix) -> RfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, self.nvars, |i, j| {
            self.get(i, j) + other.get(i, j)
        })
    }

    pub fn scale(&self, s: &RatFunc) -> RfMatrix {
        Self::from_fn(self.rows, self.cols, self.nvars, |i, j| self.get(i, j) * s)
    }

    pub fn matmul(&self, other: &RfMatrix) -> RfMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Self::from_fn(self.rows, other.cols, self.nvars, |i, j| {
            let mut acc = RatFunc::zero(self.nvars);
            for k in 0..self.cols {
                let p = self.get(i, k) * other.get(k, j);
                acc = &acc + &p;
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = RatFunc::zero(self.nvars);
                for (j, x) in v.iter().enumerate() {
                    acc = &acc + &(self.get(i, j) * x);
                }
                acc
            })
            .collect()
    }

    /// Direct sum, placing `other` in the lower-right corner.
    pub fn direct_sum(&self, other: &RfMatrix) -> RfMatrix {
        assert_eq!(self.nvars, other.nvars);
        Self::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            self.nvars,
            |i, j| {
                if i < self.rows && j < self.cols {
                    self.get(i, j).clone()
                } else if i >= self.rows && j >= self.cols {
                    other.get(i - self.rows, j - self.cols).clone()
                } else {
                    RatFunc::zero(self.nvars)
                }
            },
        )
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> RfMatrix {
        Self::from_fn(row_idx.len(), col_idx.len(), self.nvars, |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }

    fn augment(&self, right: &RfMatrix) -> RfMatrix {
        assert_eq!(self.rows, right.rows);
        Self::from_fn(self.rows, self.cols + right.cols, self.nvars, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                right.get(i, j - self.cols).clone()
            }
        })
    }

    /// Rank over the fraction field.
    pub fn rank_q(&self) -> usize {
        self.clone().forward_eliminate(self.cols).pivots.len()
    }

    /// Determinant by elimination: product of pivots with the row-swap sign.
    pub fn det_q(&self) -> Result<RatFunc> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                context: format!("determinant of a {}x{} matrix", self.rows, self.cols),
            });
        }
        if self.rows == 0 {
            return Ok(RatFunc::one(self.nvars)); // empty determinant convention
        }
        let ech = self.clone().forward_eliminate(self.cols);
        if ech.pivots.len() < self.rows {
            return Ok(RatFunc::zero(self.nvars));
        }
        let mut det = if ech.swaps.is_multiple_of(2) {
            RatFunc::one(self.nvars)
        } else {
            -RatFunc::one(self.nvars)
        };
        for &(r, c) in &ech.pivots {
            det = &det * ech.mat.get(r, c);
        }
        Ok(det)
    }

    /// Any particular solution of `M x = b` over the field, or `None` when
    /// the system is inconsistent. A returned solution is re-verified exactly.
    pub fn solve_q(&self, b: &[RatFunc]) -> Option<Vec<RatFunc>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let rhs = RfMatrix::from_fn(self.rows, 1, self.nvars, |i, _| b[i].clone());
        let aug = self.augment(&rhs);
        // Eliminate across the augmented column too: a pivot landing there is
        // exactly an inconsistent row.
        let red = aug.reduced_echelon(self.cols + 1);
        if red.pivots.iter().any(|&(_, c)| c >= self.cols) {
            return None;
        }
        let mut x = vec![RatFunc::zero(self.nvars); self.cols];
        for &(r, c) in &red.pivots {
            x[c] = red.mat.get(r, self.cols).clone();
        }
        debug_assert!(
            self.mul_vec(&x)
                .iter()
                .zip(b)
                .all(|(lhs, rhs)| lhs == rhs),
            "solution failed exact verification"
        );
        Some(x)
    }

    /// Exact inverse; rejects singular input with a rank report.
    pub fn inverse_q(&self) -> Result<RfMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                context: format!("inverse of a {}x{} matrix", self.rows, self.cols),
            });
        }
        let n = self.rows;
        let aug = self.augment(&RfMatrix::identity(n, self.nvars));
        let red = aug.reduced_echelon(n);
        if red.pivots.len() < n || red.pivots.iter().any(|&(_, c)| c >= n) {
            return Err(Error::SingularMatrix {
                rank: red.pivots.iter().filter(|&&(_, c)| c < n).count(),
                size: n,
            });
        }
        let inv = RfMatrix::from_fn(n, n, self.nvars, |i, j| red.mat.get(i, n + j).clone());
        debug_assert_eq!(self.matmul(&inv), RfMatrix::identity(n, self.nvars));
        Ok(inv)
    }

    /// Basis of the right kernel over the fraction field.
    pub fn kernel_basis_q(&self) -> Vec<Vec<RatFunc>> {
        let red = self.reduced_echelon(self.cols);
        let pivot_cols: Vec<usize> = red.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![RatFunc::zero(self.nvars); self.cols];
            v[free] = RatFunc::one(self.nvars);
            for &(r, c) in &red.pivots {
                v[c] = -red.mat.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Gcd over Λ of all k×k minors, after clearing the Λ_S-unit
    /// denominators of the entries; normalized to a canonical core.
    /// `k = 0` returns 1 by the empty-determinant convention.
    pub fn minors_gcd(&self, k: usize) -> Result<LaurentPoly> {
        if k == 0 {
            return Ok(LaurentPoly::one(self.nvars));
        }
        if k > self.rows.min(self.cols) {
            return Err(Error::DimensionMismatch {
                context: format!("{}x{} minors of a {}x{} matrix", k, k, self.rows, self.cols),
            });
        }
        let size = self.rows.max(self.cols);
        if size > MINORS_MAX_SIZE {
            return Err(Error::MinorsTooLarge {
                size,
                max: MINORS_MAX_SIZE,
            });
        }
        let cleared = self.cleared_lambda_entries()?;
        let as_rf =
            RfMatrix::from_fn(self.rows, self.cols, self.nvars, |i, j| {
                RatFunc::poly(cleared[i * self.cols + j].clone())
            });
        let mut g = LaurentPoly::zero(self.nvars);
        'outer: for rows in (0..self.rows).combinations(k) {
            for cols in (0..self.cols).combinations(k) {
                let minor = as_rf.submatrix(&rows, &cols).det_q()?;
                let minor_poly = minor
                    .as_poly()
                    .expect("minor of a Λ matrix is a polynomial")
                    .clone();
                g = gcd::gcd(&g, &minor_poly);
                if g.is_one() {
                    break 'outer;
                }
            }
        }
        Ok(g)
    }

    /// Entries as Laurent polynomials after multiplying the whole matrix by
    /// one common Λ_S unit that clears every denominator. Requires all
    /// entries in Λ_S.
    fn cleared_lambda_entries(&self) -> Result<Vec<LaurentPoly>> {
        let nv = self.nvars;
        let mut max_clasps = vec![0i32; nv];
        for (idx, e) in self.entries.iter().enumerate() {
            if !e.in_lambda_s() {
                return Err(Error::NotLambdaS {
                    context: format!("matrix entry ({},{})", idx / self.cols, idx % self.cols),
                });
            }
            if !e.den().is_one() {
                let (_, unit) = e.den().strip_units().expect("nonzero denominator");
                for (m, &k) in max_clasps.iter_mut().zip(&unit.clasps) {
                    *m = (*m).max(k);
                }
            }
        }
        let mut scale = LaurentPoly::one(nv);
        for (i, &k) in max_clasps.iter().enumerate() {
            if k > 0 {
                scale = &scale * &LaurentPoly::one_minus_t(nv, i).pow(k as u32);
            }
        }
        let scale_rf = RatFunc::poly(scale);
        Ok(self
            .entries
            .iter()
            .map(|e| {
                (e * &scale_rf)
                    .as_poly()
                    .expect("scaling clears the denominator")
                    .clone()
            })
            .collect())
    }

    /// Forward elimination up to column `col_limit` (exclusive); pivots are
    /// not normalized, so the determinant is the signed pivot product.
    fn forward_eliminate(mut self, col_limit: usize) -> Echelon {
        let mut pivots = Vec::new();
        let mut swaps = 0usize;
        let mut next_row = 0usize;
        for col in 0..col_limit.min(self.cols) {
            if next_row >= self.rows {
                break;
            }
            // Least-complex nonzero entry in this column; ties to the
            // smallest row index.
            let pivot = (next_row..self.rows)
                .filter(|&r| !self.get(r, col).is_zero())
                .min_by_key(|&r| (self.get(r, col).complexity(), r));
            let Some(p) = pivot else { continue };
            if p != next_row {
                self.swap_rows(p, next_row);
                swaps += 1;
            }
            let pivot_val = self.get(next_row, col).clone();
            for r in next_row + 1..self.rows {
                if self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col) / &pivot_val;
                for c in col..self.cols {
                    let v = self.get(r, c) - &(&factor * self.get(next_row, c));
                    self.set(r, c, v);
                }
            }
            pivots.push((next_row, col));
            next_row += 1;
        }
        Echelon {
            mat: self,
            pivots,
            swaps,
        }
    }

    /// Reduced row echelon form (pivots normalized to 1, cleared above),
    /// with pivot search limited to the first `col_limit` columns.
    fn reduced_echelon(&self, col_limit: usize) -> Echelon {
        let mut ech = self.clone().forward_eliminate(col_limit);
        for idx in (0..ech.pivots.len()).rev() {
            let (r, c) = ech.pivots[idx];
            let inv = ech.mat.get(r, c).inv().expect("pivot is nonzero");
            for j in c..ech.mat.cols {
                let v = ech.mat.get(r, j) * &inv;
                ech.mat.set(r, j, v);
            }
            for above in 0..r {
                if ech.mat.get(above, c).is_zero() {
                    continue;
                }
                let factor = ech.mat.get(above, c).clone();
                for j in c..ech.mat.cols {
                    let v = ech.mat.get(above, j) - &(&factor * ech.mat.get(r, j));
                    ech.mat.set(above, j, v);
                }
            }
        }
        ech
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

struct Echelon {
    mat: RfMatrix,
    pivots: Vec<(usize, usize)>,
    swaps: usize,
}

/// Integer matrix promoted entrywise into the fraction field.
pub fn from_int_rows(rows: &[Vec<BigInt>], nvars: usize) -> RfMatrix {
    let r = rows.len();
    let c = rows.first().map(|x| x.len()).unwrap_or(0);
    RfMatrix::from_fn(r, c, nvars, |i, j| RatFunc::constant(nvars, rows[i][j].clone()))
}
