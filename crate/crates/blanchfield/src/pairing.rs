//! Torsion order and the Blanchfield-type pairing of a C-complex matrix.
//!
//! For a hermitian `H` of size n presenting the module `Λ_S^n / H^T Λ_S^n`,
//! the torsion order is `Δ = gcd` of all `ρ×ρ` minors (`ρ = rank H` over Q),
//! symmetrized by Λ_S-units so that `conj(Δ) = Δ` exactly. On torsion classes
//! the pairing is `λ_H(v, w) = Δ^{-2} · v_0^T H conj(w_0)` where
//! `H^T v_0 = Δ v`; the Blanchfield pairing is `-λ_H`. Although the defining
//! solution is over Λ_S, any fraction-field solution yields the same value:
//! two Q-solutions differ by a kernel vector `k` of `H^T`, and
//! `k^T H conj(w_0) = (H^T k)^T conj(w_0) = 0`. When `det H ≠ 0` the pairing
//! collapses to the closed form `v^T H^{-1} conj(w)`.

use crate::error::{Error, Result};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::linalg::RfMatrix;
use crate::ratfunc::{QmodLs, RatFunc};
use crate::seifert::CMatrix;

/// Torsion data of a C-complex matrix: rank over Q, symmetrized torsion
/// order Δ, and the free rank of the presented module.
#[derive(Clone, Debug)]
pub struct TorsionData {
    h: CMatrix,
    rho: usize,
    delta: LaurentPoly,
    free_rank: usize,
}

/// Compute rank, torsion order, and free rank. The minors gcd is symmetrized
/// to `conj(Δ) = Δ`; a sign obstruction in that procedure is surfaced as an
/// error (it cannot arise from the minors of a hermitian matrix).
pub fn torsion_order(h: &CMatrix) -> Result<TorsionData> {
    let n = h.n();
    let rho = h.entries().rank_q();
    let raw = h.entries().minors_gcd(rho)?;
    assert!(!raw.is_zero(), "some rho x rho minor is nonzero by definition of rho");
    let delta = symmetrize(&raw)?;
    debug_assert_eq!(delta.conj(), delta);
    Ok(TorsionData {
        h: h.clone(),
        rho,
        delta,
        free_rank: n - rho,
    })
}

/// The first non-vanishing Alexander polynomial over Λ_S: the order of the
/// torsion submodule presented by `H^T`.
pub fn alexander_tor(h: &CMatrix) -> Result<LaurentPoly> {
    Ok(torsion_order(h)?.delta)
}

/// Scale a unit-free core `d` by a Λ_S-unit so that `conj(d) = d` exactly.
///
/// Since `conj(d) = σ · t^a · d` for a sign σ and exponent vector a, multiply
/// by `(1 - t_i)` for every odd `a_i` (each flips σ and shifts `a_i` by one)
/// and then by the monomial halving the remaining even defect. A final sign
/// of -1 is an obstruction and is reported as an error.
fn symmetrize(core: &LaurentPoly) -> Result<LaurentPoly> {
    let nv = core.nvars();
    if core.is_constant() {
        return Ok(core.clone());
    }
    let conj = core.conj();
    let (lm, lc) = core.leading().expect("nonzero core");
    let (clm, clc) = conj.leading().expect("nonzero conj");
    if lc.magnitude() != clc.magnitude() {
        return Err(Error::SymmetrizationFailed {
            detail: format!("conj({}) is not a unit multiple of it", core),
        });
    }
    let mut sigma_negative = (clc.sign() == num_bigint::Sign::Minus) != (lc.sign() == num_bigint::Sign::Minus);
    let mut defect = clm - lm;
    // verify conj(core) == sigma * t^defect * core before correcting
    let sigma_int = if sigma_negative { -1 } else { 1 };
    let check = core.mul_monomial(&defect, &num_bigint::BigInt::from(sigma_int));
    if check != conj {
        return Err(Error::SymmetrizationFailed {
            detail: format!("conj({}) is not a unit multiple of it", core),
        });
    }
    let mut result = core.clone();
    for i in 0..nv {
        if defect.0[i].rem_euclid(2) == 1 {
            result = &result * &LaurentPoly::one_minus_t(nv, i);
            // conj(1 - t_i) = -t_i^{-1} (1 - t_i): flips the sign, shifts a_i.
            sigma_negative = !sigma_negative;
            defect.0[i] -= 1;
        }
    }
    if sigma_negative {
        return Err(Error::SymmetrizationFailed {
            detail: format!(
                "sign obstruction: conj differs from {} by a negative hermitian unit",
                core
            ),
        });
    }
    let half = ExpVec(defect.0.iter().map(|&a| a / 2).collect());
    let result = result.mul_monomial(&half, &num_bigint::BigInt::from(1));
    if result.conj() != result {
        return Err(Error::SymmetrizationFailed {
            detail: format!("internal: symmetrization of {} did not converge", core),
        });
    }
    Ok(result)
}

impl TorsionData {
    pub fn matrix(&self) -> &CMatrix {
        &self.h
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn delta(&self) -> &LaurentPoly {
        &self.delta
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn mu(&self) -> usize {
        self.h.mu()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rho == self.n()
    }

    /// Torsion test: `[v]` is torsion in `Λ_S^n / H^T Λ_S^n` exactly when `v`
    /// lies in the Q-column span of `H^T`. Entries must lie in Λ_S.
    pub fn is_torsion(&self, v: &[RatFunc]) -> Result<bool> {
        self.validate_vector("v", v)?;
        Ok(self.h.presentation().solve_q(v).is_some())
    }

    fn validate_vector(&self, label: &str, v: &[RatFunc]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "vector {} has length {}, expected {}",
                    label,
                    v.len(),
                    self.n()
                ),
            });
        }
        for (k, entry) in v.iter().enumerate() {
            if !entry.in_lambda_s() {
                return Err(Error::NotLambdaS {
                    context: format!("vector {}[{}]", label, k),
                });
            }
        }
        Ok(())
    }

    fn non_torsion_certificate(&self, v: &[RatFunc]) -> Error {
        let p = self.h.presentation();
        let rank_h = p.rank_q();
        let augmented = RfMatrix::from_fn(self.n(), self.n() + 1, self.mu(), |i, j| {
            if j < self.n() {
                p.get(i, j).clone()
            } else {
                v[i].clone()
            }
        });
        Error::NonTorsion {
            rank_h,
            rank_augmented: augmented.rank_q(),
        }
    }

    /// Solve `H^T v_0 = Δ·v` over the fraction field.
    pub fn solve_scaled(&self, v: &[RatFunc]) -> Result<Vec<RatFunc>> {
        self.validate_vector("v", v)?;
        let delta = RatFunc::poly(self.delta.clone());
        let rhs: Vec<RatFunc> = v.iter().map(|x| x * &delta).collect();
        self.h
            .presentation()
            .solve_q(&rhs)
            .ok_or_else(|| self.non_torsion_certificate(v))
    }

    /// The raw fraction-field value `Δ^{-2} · v_0^T H conj(w_0)` from two
    /// already-solved lifts.
    pub fn raw_value(&self, v0: &[RatFunc], w0: &[RatFunc]) -> RatFunc {
        let mu = self.mu();
        let w0_conj: Vec<RatFunc> = w0.iter().map(|x| x.conj()).collect();
        let hw = self.h.entries().mul_vec(&w0_conj);
        let mut acc = RatFunc::zero(mu);
        for (a, b) in v0.iter().zip(&hw) {
            acc = &acc + &(a * b);
        }
        let delta = RatFunc::poly(self.delta.clone());
        let delta_sq = &delta * &delta;
        &acc / &delta_sq
    }

    /// The pairing `λ_H([v], [w])` as a class in `Q/Λ_S`. Inputs must be
    /// torsion; a failed input is rejected with a rank certificate.
    pub fn pair(&self, v: &[RatFunc], w: &[RatFunc]) -> Result<QmodLs> {
        let v0 = self.solve_scaled(v)?;
        let w0 = self.solve_scaled(w)?;
        Ok(QmodLs::class(self.raw_value(&v0, &w0)))
    }

    /// `-λ_H`, the Blanchfield sign convention.
    pub fn pair_bl(&self, v: &[RatFunc], w: &[RatFunc]) -> Result<QmodLs> {
        Ok(self.pair(v, w)?.neg())
    }

    /// The full matrix of Blanchfield values `-(H^{-1})_{ij}` as `Q/Λ_S`
    /// classes. Requires `det H ≠ 0`; otherwise the module has a free part
    /// and only `pair` on explicit torsion vectors makes sense.
    pub fn blanchfield_matrix(&self) -> Result<BlForm> {
        if !self.is_nonsingular() {
            return Err(Error::SingularMatrix {
                rank: self.rho,
                size: self.n(),
            });
        }
        let inv = self.h.entries().inverse_q()?;
        let values: Vec<Vec<QmodLs>> = (0..self.n())
            .map(|i| {
                (0..self.n())
                    .map(|j| QmodLs::class(-inv.get(i, j)))
                    .collect()
            })
            .collect();
        BlForm::full(self.clone(), values)
    }
}

/// Computed Blanchfield data: either the full value matrix (torsion module)
/// or a sampled list of pairing values.
#[derive(Clone, Debug)]
pub enum BlValues {
    Full(Vec<Vec<QmodLs>>),
    Sampled(Vec<(Vec<RatFunc>, Vec<RatFunc>, QmodLs)>),
}

#[derive(Clone, Debug)]
pub struct BlForm {
    source: TorsionData,
    values: BlValues,
}

impl BlForm {
    pub fn full(source: TorsionData, values: Vec<Vec<QmodLs>>) -> Result<BlForm> {
        let form = BlForm {
            source,
            values: BlValues::Full(values),
        };
        form.check_containment()?;
        Ok(form)
    }

    pub fn sampled(
        source: TorsionData,
        values: Vec<(Vec<RatFunc>, Vec<RatFunc>, QmodLs)>,
    ) -> Result<BlForm> {
        let form = BlForm {
            source,
            values: BlValues::Sampled(values),
        };
        form.check_containment()?;
        Ok(form)
    }

    pub fn source(&self) -> &TorsionData {
        &self.source
    }

    pub fn values(&self) -> &BlValues {
        &self.values
    }

    pub fn full_values(&self) -> Option<&Vec<Vec<QmodLs>>> {
        match &self.values {
            BlValues::Full(v) => Some(v),
            _ => None,
        }
    }

    /// Every stored value must satisfy the containment `Δ·f ∈ Λ_S`.
    fn check_containment(&self) -> Result<()> {
        let delta = RatFunc::poly(self.source.delta.clone());
        let check = |q: &QmodLs, what: String| -> Result<()> {
            if (q.rep() * &delta).in_lambda_s() {
                Ok(())
            } else {
                Err(Error::InvalidArgument {
                    context: format!("{} violates the Δ-containment", what),
                })
            }
        };
        match &self.values {
            BlValues::Full(rows) => {
                for (i, row) in rows.iter().enumerate() {
                    for (j, q) in row.iter().enumerate() {
                        check(q, format!("Blanchfield value ({},{})", i, j))?;
                    }
                }
            }
            BlValues::Sampled(list) => {
                for (k, (_, _, q)) in list.iter().enumerate() {
                    check(q, format!("sampled Blanchfield value #{}", k))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::{knot_c_matrix, IntMatrix};
    use crate::text::{parse_poly, parse_ratfunc, parse_vector};

    fn trefoil_h() -> CMatrix {
        knot_c_matrix(&IntMatrix::from_i64(&[&[-1, 1], &[0, -1]])).unwrap()
    }

    fn figure_eight_h() -> CMatrix {
        knot_c_matrix(&IntMatrix::from_i64(&[&[1, 1], &[0, -1]])).unwrap()
    }

    fn diag_cm(entries: &[&str]) -> CMatrix {
        let n = entries.len();
        let m = RfMatrix::from_fn(n, n, 1, |i, j| {
            if i == j {
                parse_ratfunc(entries[i], 1).unwrap()
            } else {
                RatFunc::zero(1)
            }
        });
        CMatrix::new(1, m).unwrap()
    }

    #[test]
    fn zero_matrix_torsion_data() {
        let h = CMatrix::new(1, RfMatrix::zero(3, 3, 1)).unwrap();
        let td = torsion_order(&h).unwrap();
        assert_eq!(td.rho(), 0);
        assert!(td.delta().is_one());
        assert_eq!(td.free_rank(), 3);
    }

    #[test]
    fn trefoil_delta_is_symmetrized_alexander() {
        let td = torsion_order(&trefoil_h()).unwrap();
        assert_eq!(td.rho(), 2);
        assert_eq!(td.free_rank(), 0);
        assert_eq!(td.delta(), &parse_poly("t - 1 + t^-1", 1).unwrap());
        assert_eq!(
            alexander_tor(&trefoil_h()).unwrap(),
            parse_poly("t - 1 + t^-1", 1).unwrap()
        );
    }

    #[test]
    fn figure_eight_delta() {
        let td = torsion_order(&figure_eight_h()).unwrap();
        assert_eq!(td.delta(), &parse_poly("t - 3 + t^-1", 1).unwrap());
    }

    #[test]
    fn rank_deficient_diag() {
        let h = diag_cm(&["t - 1 + t^-1", "0"]);
        let td = torsion_order(&h).unwrap();
        assert_eq!(td.rho(), 1);
        assert_eq!(td.free_rank(), 1);
        assert_eq!(td.delta(), &parse_poly("t - 1 + t^-1", 1).unwrap());
    }

    #[test]
    fn symmetrize_cases() {
        // already symmetric
        let p = parse_poly("t - 1 + t^-1", 1).unwrap();
        assert_eq!(symmetrize(&p).unwrap(), p);
        // core form of the trefoil polynomial
        let q = parse_poly("t^2 - t + 1", 1).unwrap();
        assert_eq!(symmetrize(&q).unwrap(), p);
        // odd-defect case: t - 1 needs a clasp factor
        let r = parse_poly("t - 1", 1).unwrap();
        let s = symmetrize(&r).unwrap();
        assert_eq!(s.conj(), s);
        // constants stay put
        let c = parse_poly("5", 1).unwrap();
        assert_eq!(symmetrize(&c).unwrap(), c);
        // two variables
        let m = parse_poly("t1^2*t2^2 - t1*t2 + 1", 2).unwrap();
        let sm = symmetrize(&m).unwrap();
        assert_eq!(sm.conj(), sm);
        assert_eq!(sm, parse_poly("t1*t2 - 1 + t1^-1*t2^-1", 2).unwrap());
        // t1*t2 - 1 has no hermitian associate: the parity correction by
        // (1-t1)(1-t2) lands on sign -1, which must surface as an error.
        let obstructed = parse_poly("t1*t2 - 1", 2).unwrap();
        assert!(matches!(
            symmetrize(&obstructed),
            Err(Error::SymmetrizationFailed { .. })
        ));
    }

    #[test]
    fn is_torsion_examples() {
        let h = diag_cm(&["t - 1 + t^-1", "0"]);
        let td = torsion_order(&h).unwrap();
        let zero = parse_vector("0,0", 1).unwrap();
        assert!(td.is_torsion(&zero).unwrap());
        let e1 = parse_vector("1,0", 1).unwrap();
        assert!(td.is_torsion(&e1).unwrap());
        let e2 = parse_vector("0,1", 1).unwrap();
        assert!(!td.is_torsion(&e2).unwrap());
        // nonsingular: everything is torsion
        let td3 = torsion_order(&trefoil_h()).unwrap();
        let any = parse_vector("t^2 - 5, 7*t^-1", 1).unwrap();
        assert!(td3.is_torsion(&any).unwrap());
        // non-Λ_S entries rejected
        let bad = parse_vector("1 / t^2 - t + 1, 0", 1).unwrap();
        assert!(matches!(td.is_torsion(&bad), Err(Error::NotLambdaS { .. })));
    }

    #[test]
    fn pair_one_by_one() {
        let h = diag_cm(&["t - 1 + t^-1"]);
        let td = torsion_order(&h).unwrap();
        let e1 = parse_vector("1", 1).unwrap();
        let lam = td.pair(&e1, &e1).unwrap();
        let expect = QmodLs::class(parse_ratfunc("1 / t - 1 + t^-1", 1).unwrap());
        assert_eq!(lam, expect);
    }

    #[test]
    fn pair_ignores_free_summand() {
        let h = diag_cm(&["t - 1 + t^-1", "0"]);
        let td = torsion_order(&h).unwrap();
        let v = parse_vector("1,0", 1).unwrap();
        let lam = td.pair(&v, &v).unwrap();
        let expect = QmodLs::class(parse_ratfunc("1 / t - 1 + t^-1", 1).unwrap());
        assert_eq!(lam, expect);
    }

    #[test]
    fn pair_rejects_non_torsion_with_certificate() {
        let h = diag_cm(&["t - 1 + t^-1", "0"]);
        let td = torsion_order(&h).unwrap();
        let e2 = parse_vector("0,1", 1).unwrap();
        match td.pair(&e2, &e2) {
            Err(Error::NonTorsion {
                rank_h,
                rank_augmented,
            }) => {
                assert_eq!(rank_h, 1);
                assert_eq!(rank_augmented, 2);
            }
            other => panic!("expected non-torsion error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn trefoil_pair_matches_inverse_entry() {
        let td = torsion_order(&trefoil_h()).unwrap();
        let e1 = parse_vector("1,0", 1).unwrap();
        let lam = td.pair(&e1, &e1).unwrap();
        let inv = trefoil_h().entries().inverse_q().unwrap();
        assert_eq!(lam, QmodLs::class(inv.get(0, 0).clone()));
        // denominator core divides t^2 - t + 1
        let den_core = lam.rep().den().strip_units().unwrap().0;
        assert!(parse_poly("t^2 - t + 1", 1)
            .unwrap()
            .div_exact(&den_core)
            .is_some());
    }

    #[test]
    fn blanchfield_matrix_unit_case_is_zero() {
        // H = [2 - t - t^-1] presents the trivial module: its only entry is a unit.
        let h = diag_cm(&["2 - t - t^-1"]);
        let td = torsion_order(&h).unwrap();
        assert!(td.delta().is_one());
        let form = td.blanchfield_matrix().unwrap();
        let vals = form.full_values().unwrap();
        assert!(vals[0][0].is_zero_class());
    }

    #[test]
    fn blanchfield_matrix_agrees_with_pair_and_is_hermitian() {
        let td = torsion_order(&trefoil_h()).unwrap();
        let form = td.blanchfield_matrix().unwrap();
        let vals = form.full_values().unwrap();
        let basis: Vec<Vec<RatFunc>> = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        if i == j {
                            RatFunc::one(1)
                        } else {
                            RatFunc::zero(1)
                        }
                    })
                    .collect()
            })
            .collect();
        for i in 0..2 {
            for j in 0..2 {
                let lam = td.pair(&basis[i], &basis[j]).unwrap();
                assert_eq!(vals[i][j], lam.neg(), "entry ({},{})", i, j);
                assert_eq!(vals[j][i], vals[i][j].conj(), "hermitian ({},{})", i, j);
            }
        }
    }

    #[test]
    fn pair_is_sesquilinear_and_vanishes_on_zero() {
        let td = torsion_order(&trefoil_h()).unwrap();
        let v = parse_vector("1, t", 1).unwrap();
        let w = parse_vector("t^-1, 2", 1).unwrap();
        let p = parse_ratfunc("1 - t^2", 1).unwrap();
        let q = parse_ratfunc("3*t^-1", 1).unwrap();
        let pv: Vec<RatFunc> = v.iter().map(|x| x * &p).collect();
        let qw: Vec<RatFunc> = w.iter().map(|x| x * &q).collect();
        let base = td.pair(&v, &w).unwrap();
        let scaled = td.pair(&pv, &qw).unwrap();
        let expect = base.scale(&(&p * &q.conj()));
        assert_eq!(scaled, expect, "pair(p v, q w) = p conj(q) pair(v, w)");
        let zero = parse_vector("0, 0", 1).unwrap();
        assert!(td.pair(&zero, &w).unwrap().is_zero_class());
    }

    #[test]
    fn blanchfield_matrix_rejects_singular() {
        let h = diag_cm(&["t - 1 + t^-1", "0"]);
        let td = torsion_order(&h).unwrap();
        assert!(matches!(
            td.blanchfield_matrix(),
            Err(Error::SingularMatrix { rank: 1, size: 2 })
        ));
    }

    #[test]
    fn empty_matrix_is_the_unit_object() {
        let h = CMatrix::empty(1);
        let td = torsion_order(&h).unwrap();
        assert_eq!(td.n(), 0);
        assert!(td.delta().is_one());
        let empty: Vec<RatFunc> = Vec::new();
        assert!(td.is_torsion(&empty).unwrap());
        assert!(td.pair(&empty, &empty).unwrap().is_zero_class());
        assert!(td.blanchfield_matrix().is_ok());
    }
}
