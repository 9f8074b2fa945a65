//! Generalized Seifert matrices and the C-complex matrices they assemble to.
//!
//! A family holds one integer matrix `A^ε` per sign vector
//! `ε ∈ {±1}^mu`; the assembled matrix is
//! `H = Σ_ε Π_i (1 - t_i^{ε_i}) A^ε`, which must come out hermitian.
//! Boundary links are handled by the closed formula
//! `H = u·conj(u)·(I - τ)^{-1}(A - τ A^T)` with `u = Π_j (1 - t_j)` and `τ`
//! the block-diagonal variable matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::linalg::RfMatrix;
use crate::ratfunc::{QmodLs, RatFunc};

/// A sign vector `ε ∈ {±1}^mu`, keying one generalized Seifert matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SignVec(Vec<i8>);

impl SignVec {
    pub fn new(signs: Vec<i8>) -> Result<SignVec> {
        if signs.is_empty() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument {
                context: format!("sign vector must be a nonempty ±1 tuple, got {:?}", signs),
            });
        }
        Ok(SignVec(signs))
    }

    /// All `2^mu` sign vectors, in lexicographic order with `-` before `+`.
    pub fn all(mu: usize) -> Vec<SignVec> {
        assert!(mu >= 1);
        (0..1usize << mu)
            .map(|bits| {
                SignVec(
                    (0..mu)
                        .map(|i| if bits >> i & 1 == 1 { 1 } else { -1 })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn parse(s: &str) -> Result<SignVec> {
        let signs: Result<Vec<i8>> = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Parse(format!(
                    "sign vector may only contain '+' and '-', got {:?}",
                    other
                ))),
            })
            .collect();
        SignVec::new(signs?)
    }

    /// The coefficient `Π_i (1 - t_i^{ε_i})` attached to this sign vector.
    pub fn clasp_coefficient(&self) -> LaurentPoly {
        let mu = self.len();
        let mut p = LaurentPoly::one(mu);
        for (i, &s) in self.0.iter().enumerate() {
            let mut factor = LaurentPoly::one(mu);
            let mut e = ExpVec::zero(mu);
            e.0[i] = s as i32;
            factor = &factor - &LaurentPoly::monomial(mu, e, BigInt::from(1));
            p = &p * &factor;
        }
        p
    }
}

impl fmt::Display for SignVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            write!(f, "{}", if s == 1 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// Dense integer matrix (the raw linking-number data).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                context: "ragged integer matrix".into(),
            });
        }
        Ok(IntMatrix::new(r, c, rows.into_iter().flatten().collect()))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn zero(n: usize) -> Self {
        IntMatrix::new(n, n, vec![BigInt::zero(); n * n])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).clone());
            }
        }
        IntMatrix::new(self.cols, self.rows, out)
    }

    pub fn block(&self, r0: usize, c0: usize, r: usize, c: usize) -> IntMatrix {
        let mut out = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                out.push(self.get(r0 + i, c0 + j).clone());
            }
        }
        IntMatrix::new(r, c, out)
    }

    pub fn to_rf(&self, nvars: usize) -> RfMatrix {
        RfMatrix::from_fn(self.rows, self.cols, nvars, |i, j| {
            RatFunc::constant(nvars, self.get(i, j).clone())
        })
    }
}

/// The `2^mu` generalized Seifert matrices of a colored link, keyed by sign
/// vector.
#[derive(Clone, Debug)]
pub struct SeifertFamily {
    mu: usize,
    n: usize,
    mats: BTreeMap<SignVec, IntMatrix>,
}

impl SeifertFamily {
    pub fn new(mu: usize, n: usize, mats: BTreeMap<SignVec, IntMatrix>) -> Result<Self> {
        if mu == 0 {
            return Err(Error::BadFamily {
                context: "color count mu must be at least 1".into(),
            });
        }
        for key in SignVec::all(mu) {
            match mats.get(&key) {
                None => {
                    return Err(Error::BadFamily {
                        context: format!("missing sign-vector key {}", key),
                    })
                }
                Some(m) if m.rows() != n || m.cols() != n => {
                    return Err(Error::BadFamily {
                        context: format!(
                            "matrix for {} has size {}x{}, expected {}x{}",
                            key,
                            m.rows(),
                            m.cols(),
                            n,
                            n
                        ),
                    })
                }
                _ => {}
            }
        }
        let expected = 1usize << mu;
        if mats.len() != expected {
            return Err(Error::BadFamily {
                context: format!(
                    "expected {} sign-vector keys for mu = {}, got {}",
                    expected,
                    mu,
                    mats.len()
                ),
            });
        }
        Ok(SeifertFamily { mu, n, mats })
    }

    /// The one-variable family `{A^- = A, A^+ = A^T}` of a knot Seifert
    /// matrix.
    pub fn knot(a: IntMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                context: format!("Seifert matrix must be square, got {}x{}", a.rows(), a.cols()),
            });
        }
        let n = a.rows();
        let mut mats = BTreeMap::new();
        mats.insert(SignVec::new(vec![1])?, a.transpose());
        mats.insert(SignVec::new(vec![-1])?, a);
        SeifertFamily::new(1, n, mats)
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &BTreeMap<SignVec, IntMatrix> {
        &self.mats
    }

    /// Assemble `H = Σ_ε Π_i (1 - t_i^{ε_i}) A^ε` and verify it is hermitian.
    pub fn assemble(&self) -> Result<CMatrix> {
        let mu = self.mu;
        let mut acc = vec![LaurentPoly::zero(mu); self.n * self.n];
        for (eps, a) in &self.mats {
            let coeff = eps.clasp_coefficient();
            for i in 0..self.n {
                for j in 0..self.n {
                    let c = a.get(i, j);
                    if !c.is_zero() {
                        acc[i * self.n + j] =
                            &acc[i * self.n + j] + &coeff.mul_scalar(c);
                    }
                }
            }
        }
        let entries = RfMatrix::from_fn(self.n, self.n, mu, |i, j| {
            RatFunc::poly(acc[i * self.n + j].clone())
        });
        CMatrix::new(mu, entries)
    }
}

/// The C-complex matrix `H`: square, hermitian, entries in Λ_S.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMatrix {
    mu: usize,
    entries: RfMatrix,
}

impl CMatrix {
    /// Validate squareness, Λ_S membership of every entry, and
    /// hermitian-ness (`conj-transpose = H`), reporting the offending entry
    /// pair on failure.
    pub fn new(mu: usize, entries: RfMatrix) -> Result<CMatrix> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "C-complex matrix must be square, got {}x{}",
                    entries.rows(),
                    entries.cols()
                ),
            });
        }
        if entries.nvars() != mu {
            return Err(Error::NvarsMismatch {
                expected: mu,
                got: entries.nvars(),
            });
        }
        for i in 0..entries.rows() {
            for j in 0..entries.cols() {
                if !entries.get(i, j).in_lambda_s() {
                    return Err(Error::NotLambdaS {
                        context: format!("C-complex matrix entry ({},{})", i, j),
                    });
                }
            }
        }
        for i in 0..entries.rows() {
            for j in i..entries.cols() {
                if &entries.get(j, i).conj() != entries.get(i, j) {
                    return Err(Error::NonHermitian { row: i, col: j });
                }
            }
        }
        Ok(CMatrix { mu, entries })
    }

    pub fn empty(mu: usize) -> CMatrix {
        CMatrix {
            mu,
            entries: RfMatrix::zero(0, 0, mu),
        }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &RfMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        self.entries.get(i, j)
    }

    /// `H^T`, the presentation matrix of the module (equal to `conj(H)`
    /// entrywise since `H` is hermitian).
    pub fn presentation(&self) -> RfMatrix {
        self.entries.transpose()
    }
}

/// `(1 - t) A^T + (1 - t^{-1}) A`, the one-variable C-complex matrix of a
/// knot with Seifert matrix `A`.
pub fn knot_c_matrix(a: &IntMatrix) -> Result<CMatrix> {
    SeifertFamily::knot(a.clone())?.assemble()
}

/// Block-diagonal variable matrix `τ = diag(t_1 I_{2g_1}, …, t_n I_{2g_n})`.
pub fn tau(genera: &[u32]) -> RfMatrix {
    let mu = genera.len();
    assert!(mu >= 1);
    let size: usize = genera.iter().map(|&g| 2 * g as usize).sum();
    let mut diag = Vec::with_capacity(size);
    for (color, &g) in genera.iter().enumerate() {
        for _ in 0..2 * g {
            diag.push(color);
        }
    }
    RfMatrix::from_fn(size, size, mu, |i, j| {
        if i == j {
            RatFunc::poly(LaurentPoly::var(mu, diag[i]))
        } else {
            RatFunc::zero(mu)
        }
    })
}

/// Boundary Seifert data: per-component genera and the full `2g × 2g`
/// linking matrix, with off-diagonal blocks transposes of each other.
#[derive(Clone, Debug)]
pub struct BoundarySeifert {
    genera: Vec<u32>,
    a: IntMatrix,
}

impl BoundarySeifert {
    pub fn new(genera: Vec<u32>, a: IntMatrix) -> Result<Self> {
        if genera.is_empty() {
            return Err(Error::InvalidArgument {
                context: "boundary link needs at least one component".into(),
            });
        }
        let g2: usize = genera.iter().map(|&g| 2 * g as usize).sum();
        if a.rows() != g2 || a.cols() != g2 {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "boundary Seifert matrix must be {}x{} for genera {:?}, got {}x{}",
                    g2,
                    g2,
                    genera,
                    a.rows(),
                    a.cols()
                ),
            });
        }
        let offsets = block_offsets(&genera);
        let n = genera.len();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let bi = a.block(offsets[i], offsets[j], 2 * genera[i] as usize, 2 * genera[j] as usize);
                let bj = a.block(offsets[j], offsets[i], 2 * genera[j] as usize, 2 * genera[i] as usize);
                if bi != bj.transpose() {
                    return Err(Error::BlockSymmetry { i, j });
                }
            }
        }
        Ok(BoundarySeifert { genera, a })
    }

    pub fn n_components(&self) -> usize {
        self.genera.len()
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn total_size(&self) -> usize {
        self.genera.iter().map(|&g| 2 * g as usize).sum()
    }

    /// `u = Π_j (1 - t_j)` as a rational function.
    pub fn u_unit(&self) -> RatFunc {
        let mu = self.n_components();
        let mut p = LaurentPoly::one(mu);
        for i in 0..mu {
            p = &p * &LaurentPoly::one_minus_t(mu, i);
        }
        RatFunc::poly(p)
    }

    /// `A - τ A^T` over the fraction field.
    pub fn torsion_presentation(&self) -> RfMatrix {
        let mu = self.n_components();
        let t = tau(&self.genera);
        let a = self.a.to_rf(mu);
        let at = self.a.transpose().to_rf(mu);
        a.add(&t.matmul(&at).neg())
    }

    /// The C-complex matrix `H = u·conj(u)·(I - τ)^{-1}(A - τ A^T)`.
    pub fn boundary_matrix(&self) -> Result<CMatrix> {
        let mu = self.n_components();
        let size = self.total_size();
        let u = self.u_unit();
        let uu = &u * &u.conj();
        // (I - τ)^{-1} is diagonal with entries 1/(1 - t_color).
        let mut diag = Vec::with_capacity(size);
        for (color, &g) in self.genera.iter().enumerate() {
            for _ in 0..2 * g {
                diag.push(color);
            }
        }
        let core = self.torsion_presentation();
        let entries = RfMatrix::from_fn(size, size, mu, |i, j| {
            let inv_factor = RatFunc::new(
                LaurentPoly::one(mu),
                LaurentPoly::one_minus_t(mu, diag[i]),
            )
            .expect("1 - t_i is nonzero");
            &(&uu * &inv_factor) * core.get(i, j)
        });
        CMatrix::new(mu, entries)
    }

    /// The closed-form boundary pairing
    /// `(a, c) ↦ [a^T (A - τA^T)^{-1} (τ - I) conj(c)]` on torsion classes of
    /// `Λ_S^{2g} / (Aτ - A^T) Λ_S^{2g}`. Requires `A - τA^T` nonsingular.
    pub fn pairing_value(&self, a: &[RatFunc], c: &[RatFunc]) -> Result<QmodLs> {
        let mu = self.n_components();
        let size = self.total_size();
        if a.len() != size || c.len() != size {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "pairing vectors must have length {}, got {} and {}",
                    size,
                    a.len(),
                    c.len()
                ),
            });
        }
        for (label, v) in [("a", a), ("c", c)] {
            for (k, entry) in v.iter().enumerate() {
                if !entry.in_lambda_s() {
                    return Err(Error::NotLambdaS {
                        context: format!("boundary pairing vector {}[{}]", label, k),
                    });
                }
            }
        }
        let m = self.torsion_presentation();
        let rank = m.rank_q();
        if rank < size {
            return Err(Error::SingularMatrix { rank, size });
        }
        let t = tau(&self.genera);
        let tau_minus_i = t.add(&RfMatrix::identity(size, mu).neg());
        let c_conj: Vec<RatFunc> = c.iter().map(|x| x.conj()).collect();
        let rhs = tau_minus_i.mul_vec(&c_conj);
        let x = m.solve_q(&rhs).expect("nonsingular system is consistent");
        let mut value = RatFunc::zero(mu);
        for (ai, xi) in a.iter().zip(&x) {
            value = &value + &(ai * xi);
        }
        Ok(QmodLs::class(value))
    }
}

fn block_offsets(genera: &[u32]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(genera.len());
    let mut acc = 0usize;
    for &g in genera {
        offsets.push(acc);
        acc += 2 * g as usize;
    }
    offsets
}
