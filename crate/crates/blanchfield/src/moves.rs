//! The transform calculus on C-complex matrices: stabilization moves, block
//! sums, unit scalings, mirrors, orientation reversal, connected sums, and
//! sample-based verification of the witness isometries.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, LsUnit};
use crate::linalg::RfMatrix;
use crate::pairing::torsion_order;
use crate::ratfunc::RatFunc;
use crate::seifert::CMatrix;

/// A witness map between two forms: `map` acts on column vectors of class
/// representatives, sending torsion classes of `source` to torsion classes
/// of `target` while preserving pairing values.
#[derive(Clone, Debug)]
pub struct FormIsometry {
    pub source: CMatrix,
    pub target: CMatrix,
    pub map: RfMatrix,
}

impl FormIsometry {
    pub fn identity(h: &CMatrix) -> FormIsometry {
        FormIsometry {
            source: h.clone(),
            target: h.clone(),
            map: RfMatrix::identity(h.n(), h.mu()),
        }
    }

    pub fn apply(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        self.map.mul_vec(v)
    }
}

/// `H ↦ H ⊕ (0)`: adds a free rank-1 factor; the torsion submodule and the
/// pairing are untouched, witnessed by the coordinate inclusion.
pub fn stabilize0(h: &CMatrix) -> (CMatrix, FormIsometry) {
    let n = h.n();
    let mu = h.mu();
    let target_entries = h.entries().direct_sum(&RfMatrix::zero(1, 1, mu));
    let target = CMatrix::new(mu, target_entries).expect("H ⊕ (0) stays hermitian");
    let map = RfMatrix::from_fn(n + 1, n, mu, |i, j| {
        if i == j {
            RatFunc::one(mu)
        } else {
            RatFunc::zero(mu)
        }
    });
    let iso = FormIsometry {
        source: h.clone(),
        target: target.clone(),
        map,
    };
    (target, iso)
}

/// The second stabilization move:
///
/// ```text
///        ( H   ξ   0 )
/// H  ↦   ( ξ*  λ   α )
///        ( 0   ᾱ   0 )
/// ```
///
/// with `α` a unit of Λ_S and `conj(λ) = λ`. The witness realizes the base
/// change taking the block matrix to `H ⊕ [[0,1],[1,0]]` (the unit α clears
/// ξ and λ), composed with the coordinate inclusion.
pub fn stabilize2(
    h: &CMatrix,
    xi: &[RatFunc],
    lam: &RatFunc,
    alpha: &LsUnit,
) -> Result<(CMatrix, FormIsometry)> {
    let n = h.n();
    let mu = h.mu();
    if xi.len() != n {
        return Err(Error::DimensionMismatch {
            context: format!("xi has length {}, expected {}", xi.len(), n),
        });
    }
    for (k, entry) in xi.iter().enumerate() {
        if !entry.in_lambda_s() {
            return Err(Error::NotLambdaS {
                context: format!("xi[{}]", k),
            });
        }
    }
    if !lam.in_lambda_s() {
        return Err(Error::NotLambdaS {
            context: "lambda".into(),
        });
    }
    if lam.conj() != *lam {
        return Err(Error::InvalidArgument {
            context: "lambda must satisfy conj(lambda) = lambda".into(),
        });
    }
    if alpha.nvars() != mu {
        return Err(Error::NvarsMismatch {
            expected: mu,
            got: alpha.nvars(),
        });
    }
    let alpha_rf = RatFunc::from_ls_unit(alpha);
    let alpha_conj = alpha_rf.conj();

    let target_entries = RfMatrix::from_fn(n + 2, n + 2, mu, |i, j| {
        if i < n && j < n {
            h.get(i, j).clone()
        } else if i < n && j == n {
            xi[i].clone()
        } else if i == n && j < n {
            xi[j].conj()
        } else if i == n && j == n {
            lam.clone()
        } else if i == n && j == n + 1 {
            alpha_rf.clone()
        } else if i == n + 1 && j == n {
            alpha_conj.clone()
        } else {
            RatFunc::zero(mu)
        }
    });
    let target = CMatrix::new(mu, target_entries)?;

    // Base change: e_i' = e_i + a_i g, f' = f + c g, g' = b g, with
    // a_i = -ξ_i conj(α)^{-1}, c chosen so that c·conj(α) + conj(c·conj(α))
    // kills λ, and b = conj(α)^{-1}. In the new basis the gram matrix is
    // exactly H ⊕ [[0,1],[1,0]].
    let alpha_conj_inv = alpha_conj.inv().expect("unit is nonzero");
    let z = hermitian_half(&-lam)?;
    let c = &z * &alpha_conj_inv;
    let p = RfMatrix::from_fn(n + 2, n + 2, mu, |i, j| {
        if i == j && i < n + 1 {
            RatFunc::one(mu)
        } else if i == n + 1 && j < n {
            -&(&xi[j] * &alpha_conj_inv)
        } else if i == n + 1 && j == n {
            c.clone()
        } else if i == n + 1 && j == n + 1 {
            alpha_conj_inv.clone()
        } else {
            RatFunc::zero(mu)
        }
    });
    // The congruence must land exactly on H ⊕ [[0,1],[1,0]].
    let hyperbolic = {
        let mut m = RfMatrix::zero(2, 2, mu);
        m.set(0, 1, RatFunc::one(mu));
        m.set(1, 0, RatFunc::one(mu));
        m
    };
    let expected = h.entries().direct_sum(&hyperbolic);
    let congruence = p
        .transpose()
        .matmul(target.entries())
        .matmul(&p.conj());
    assert_eq!(
        congruence, expected,
        "base change failed to reach H ⊕ [[0,1],[1,0]]"
    );

    // Classes transport along M = conj(P)^{-T}; torsion lifts along P.
    let m = p.conj().inverse_q()?.transpose();
    for i in 0..n + 2 {
        for j in 0..n + 2 {
            debug_assert!(m.get(i, j).in_lambda_s(), "witness map stays over Λ_S");
        }
    }
    let map = RfMatrix::from_fn(n + 2, n, mu, |i, j| m.get(i, j).clone());
    let iso = FormIsometry {
        source: h.clone(),
        target: target.clone(),
        map,
    };
    Ok((target, iso))
}

/// Solve `z + conj(z) = lam` in Λ_S for hermitian `lam`.
///
/// After clearing clasp denominators by a norm `u·conj(u)`, the constant
/// term is produced by `1/(1 - t_1)` (whose hermitian trace is 1) and each
/// `±e` exponent pair by the positive-side monomial alone.
pub fn hermitian_half(lam: &RatFunc) -> Result<RatFunc> {
    let mu = lam.nvars();
    if !lam.in_lambda_s() {
        return Err(Error::NotLambdaS {
            context: "hermitian_half argument".into(),
        });
    }
    if lam.conj() != *lam {
        return Err(Error::InvalidArgument {
            context: "hermitian_half needs conj(lam) = lam".into(),
        });
    }
    if lam.is_zero() {
        return Ok(RatFunc::zero(mu));
    }
    let (_, den_unit) = lam.den().strip_units().expect("nonzero denominator");
    let mut clear = LsUnit::one(mu);
    for (i, &k) in den_unit.clasps.iter().enumerate() {
        if k > 0 {
            clear.clasps[i] = (k + 1) / 2;
        }
    }
    let norm = RatFunc::from_ls_unit(&clear.norm());
    let cleared = &norm * lam;
    let poly = cleared
        .as_poly()
        .expect("norm clears the denominator")
        .clone();
    debug_assert_eq!(poly.conj(), poly);

    let zero_exp = crate::laurent::ExpVec::zero(mu);
    let mut positive_part = LaurentPoly::zero(mu);
    let mut constant = BigInt::from(0);
    for (e, c) in poly.terms() {
        if e.is_zero() {
            constant = c.clone();
        } else if *e > zero_exp {
            positive_part = &positive_part + &LaurentPoly::monomial(mu, e.clone(), c.clone());
        }
    }
    let mut z = RatFunc::poly(positive_part);
    if !constant.is_zero() {
        let c_over = RatFunc::new(
            LaurentPoly::constant(mu, constant),
            LaurentPoly::one_minus_t(mu, 0),
        )?;
        z = &z + &c_over;
    }
    let z = &z / &norm;
    debug_assert_eq!(&z + &z.conj(), *lam);
    Ok(z)
}

/// Direct sum of C-complex matrices over the same variable ring.
pub fn block_sum(parts: &[&CMatrix]) -> Result<CMatrix> {
    let first = parts.first().ok_or_else(|| Error::InvalidArgument {
        context: "block_sum needs at least one summand".into(),
    })?;
    let mu = first.mu();
    let mut acc = RfMatrix::zero(0, 0, mu);
    for part in parts {
        if part.mu() != mu {
            return Err(Error::NvarsMismatch {
                expected: mu,
                got: part.mu(),
            });
        }
        acc = acc.direct_sum(part.entries());
    }
    CMatrix::new(mu, acc)
}

/// `H ↦ u·conj(u)·H` for a unit `u` of Λ_S. The witness isometry sends a
/// class `x` of the scaled form to `u^{-1} x` in the original form.
pub fn unit_scale(h: &CMatrix, u: &LsUnit) -> (CMatrix, FormIsometry) {
    let mu = h.mu();
    assert_eq!(u.nvars(), mu, "unit variable count mismatch");
    let norm = RatFunc::from_ls_unit(&u.norm());
    let scaled = CMatrix::new(mu, h.entries().scale(&norm)).expect("u·conj(u)·H stays hermitian");
    let u_inv = RatFunc::from_ls_unit(&u.inv());
    let map = RfMatrix::identity(h.n(), mu).scale(&u_inv);
    let iso = FormIsometry {
        source: scaled.clone(),
        target: h.clone(),
        map,
    };
    (scaled, iso)
}

/// Mirror image: `H ↦ -H` (pairing values negate under `x ↦ -x`).
pub fn mirror(h: &CMatrix) -> CMatrix {
    CMatrix::new(h.mu(), h.entries().neg()).expect("-H stays hermitian")
}

/// Orientation reversal: `H ↦ conj(H)` entrywise, which is `H^T` for
/// hermitian `H`.
pub fn reverse(h: &CMatrix) -> CMatrix {
    CMatrix::new(h.mu(), h.entries().conj()).expect("conj(H) stays hermitian")
}

/// Glue two C-complex matrices into the joint `mu`-variable ring, sharing
/// `shared ∈ {0, 1}` colors (the last of `h1` with the first of `h2`), and
/// scale each block by the norm of the clasp units of the colors it misses:
/// connected sum for `shared = 1`, disjoint union or trivial band clasp for
/// `shared = 0`.
pub fn connected_sum(h1: &CMatrix, h2: &CMatrix, shared: usize) -> Result<CMatrix> {
    if shared > 1 || shared > h1.mu() || shared > h2.mu() {
        return Err(Error::InvalidArgument {
            context: format!(
                "shared color count must be 0 or 1 (and at most each mu), got {}",
                shared
            ),
        });
    }
    let nu = h1.mu();
    let mu = h1.mu() + h2.mu() - shared;
    let map1: Vec<usize> = (0..h1.mu()).collect();
    let map2: Vec<usize> = (0..h2.mu()).map(|j| nu - shared + j).collect();

    let scale_for = |missing: std::ops::Range<usize>| -> RatFunc {
        let mut u = LsUnit::one(mu);
        for i in missing {
            u.clasps[i] = 1;
        }
        RatFunc::from_ls_unit(&u.norm())
    };
    let u1 = scale_for(nu..mu); // colors only in h2
    let u2 = scale_for(0..nu - shared); // colors only in h1

    let embed = |h: &CMatrix, var_map: &[usize], scale: &RatFunc| -> RfMatrix {
        RfMatrix::from_fn(h.n(), h.n(), mu, |i, j| {
            let e = h.get(i, j);
            let num = e.num().embed(mu, var_map);
            let den = e.den().embed(mu, var_map);
            let embedded = RatFunc::new(num, den).expect("denominator stays nonzero");
            &embedded * scale
        })
    };
    let top = embed(h1, &map1, &u1);
    let bottom = embed(h2, &map2, &u2);
    CMatrix::new(mu, top.direct_sum(&bottom))
}

/// A single discrepancy found by [`check_isometry`].
#[derive(Clone, Debug)]
pub enum IsometryViolation {
    ImageNotTorsion { sample: usize },
    ValueMismatch { left: usize, right: usize },
}

/// Outcome of an empirical isometry check over a sample set.
#[derive(Clone, Debug, Default)]
pub struct IsometryReport {
    pub samples: usize,
    pub pairs_checked: usize,
    pub violations: Vec<IsometryViolation>,
}

impl IsometryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify on the given torsion samples that the witness map sends torsion to
/// torsion and preserves all pairwise pairing values as `Q/Λ_S` classes.
/// Violations are report content, not errors; non-torsion *samples* violate
/// the precondition and are errors.
pub fn check_isometry(iso: &FormIsometry, samples: &[Vec<RatFunc>]) -> Result<IsometryReport> {
    let td_src = torsion_order(&iso.source)?;
    let td_tgt = torsion_order(&iso.target)?;
    let mut report = IsometryReport {
        samples: samples.len(),
        ..Default::default()
    };
    let mut images: Vec<Option<Vec<RatFunc>>> = Vec::with_capacity(samples.len());
    for (idx, sample) in samples.iter().enumerate() {
        if !td_src.is_torsion(sample)? {
            return Err(Error::InvalidArgument {
                context: format!("sample #{} is not torsion in the source form", idx),
            });
        }
        let image = iso.apply(sample);
        if td_tgt.is_torsion(&image)? {
            images.push(Some(image));
        } else {
            report
                .violations
                .push(IsometryViolation::ImageNotTorsion { sample: idx });
            images.push(None);
        }
    }
    for i in 0..samples.len() {
        for j in 0..samples.len() {
            let (Some(im_i), Some(im_j)) = (&images[i], &images[j]) else {
                continue;
            };
            let lhs = td_src.pair(&samples[i], &samples[j])?;
            let rhs = td_tgt.pair(im_i, im_j)?;
            report.pairs_checked += 1;
            if lhs != rhs {
                report
                    .violations
                    .push(IsometryViolation::ValueMismatch { left: i, right: j });
            }
        }
    }
    Ok(report)
}

/// Random torsion class representatives for the module presented by `H^T`.
/// For nonsingular `H` every Λ_S vector is torsion, so small random Laurent
/// vectors are used; otherwise random combinations of the torsion coordinate
/// vectors, padded with image vectors when none exist.
pub fn random_torsion_samples(
    h: &CMatrix,
    count: usize,
    rng: &mut impl Rng,
) -> Vec<Vec<RatFunc>> {
    let n = h.n();
    let mu = h.mu();
    if n == 0 {
        return vec![Vec::new(); count];
    }
    let presentation = h.presentation();
    let nonsingular = presentation.rank_q() == n;

    let random_poly = |rng: &mut dyn rand::RngCore| -> RatFunc {
        let terms = rng.gen_range(0..=2);
        let mut p = LaurentPoly::zero(mu);
        for _ in 0..terms {
            let mut exp = crate::laurent::ExpVec::zero(mu);
            for k in 0..mu {
                exp.0[k] = rng.gen_range(-1..=1);
            }
            let c = loop {
                let c = rng.gen_range(-2..=2i64);
                if c != 0 {
                    break c;
                }
            };
            p = &p + &LaurentPoly::monomial(mu, exp, BigInt::from(c));
        }
        RatFunc::poly(p)
    };

    if nonsingular {
        return (0..count)
            .map(|_| (0..n).map(|_| random_poly(rng)).collect())
            .collect();
    }

    let torsion_coords: Vec<usize> = (0..n)
        .filter(|&i| {
            let e: Vec<RatFunc> = (0..n)
                .map(|j| if i == j { RatFunc::one(mu) } else { RatFunc::zero(mu) })
                .collect();
            presentation.solve_q(&e).is_some()
        })
        .collect();

    (0..count)
        .map(|_| {
            let mut v = vec![RatFunc::zero(mu); n];
            if torsion_coords.is_empty() {
                // Only image classes are available: push a random vector
                // through the presentation.
                let w: Vec<RatFunc> = (0..n).map(|_| random_poly(rng)).collect();
                v = presentation.mul_vec(&w);
            } else {
                for &i in &torsion_coords {
                    let c = rng.gen_range(-2..=2i64);
                    if c != 0 {
                        v[i] = &v[i] + &RatFunc::constant(mu, c);
                    }
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::ExpVec;
    use crate::seifert::{knot_c_matrix, IntMatrix};
    use crate::text::{parse_poly, parse_ratfunc, parse_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trefoil_h() -> CMatrix {
        knot_c_matrix(&IntMatrix::from_i64(&[&[-1, 1], &[0, -1]])).unwrap()
    }

    fn delta_core(h: &CMatrix) -> LaurentPoly {
        torsion_order(h)
            .unwrap()
            .delta()
            .strip_units()
            .map(|(core, _)| core)
            .unwrap_or_else(|_| LaurentPoly::one(h.mu()))
    }

    #[test]
    fn stabilize0_from_empty() {
        let empty = CMatrix::empty(1);
        let (s, iso) = stabilize0(&empty);
        assert_eq!(s.n(), 1);
        assert!(s.get(0, 0).is_zero());
        assert_eq!(iso.map.rows(), 1);
        assert_eq!(iso.map.cols(), 0);
    }

    #[test]
    fn stabilize0_preserves_delta_and_values() {
        let h = trefoil_h();
        let (s, iso) = stabilize0(&h);
        assert_eq!(s.n(), 3);
        assert_eq!(delta_core(&h), delta_core(&s));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let samples = random_torsion_samples(&h, 6, &mut rng);
        let report = check_isometry(&iso, &samples).unwrap();
        assert!(report.passed(), "violations: {:?}", report.violations);
    }

    #[test]
    fn stabilize2_minimal_block() {
        let empty = CMatrix::empty(1);
        let (s, _) = stabilize2(&empty, &[], &RatFunc::zero(1), &LsUnit::one(1)).unwrap();
        assert_eq!(s.n(), 2);
        assert!(s.get(0, 0).is_zero());
        assert!(s.get(0, 1).is_one());
        assert!(s.get(1, 0).is_one());
        assert!(s.get(1, 1).is_zero());
        let td = torsion_order(&s).unwrap();
        assert!(td.delta().is_one());
    }

    #[test]
    fn stabilize2_preserves_delta_and_values() {
        let h = trefoil_h();
        let xi = parse_vector("1 - t, t^-1", 1).unwrap();
        let lam = parse_ratfunc("t + 2 + t^-1", 1).unwrap();
        let alpha = LsUnit {
            negative: true,
            monomial: ExpVec(vec![1]),
            clasps: vec![1],
        };
        let (s, iso) = stabilize2(&h, &xi, &lam, &alpha).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(delta_core(&h), delta_core(&s));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let samples = random_torsion_samples(&h, 5, &mut rng);
        let report = check_isometry(&iso, &samples).unwrap();
        assert!(report.passed(), "violations: {:?}", report.violations);
    }

    #[test]
    fn stabilize2_rejects_non_hermitian_lambda() {
        let h = trefoil_h();
        let xi = parse_vector("0, 0", 1).unwrap();
        let lam = parse_ratfunc("t", 1).unwrap();
        assert!(stabilize2(&h, &xi, &lam, &LsUnit::one(1)).is_err());
    }

    #[test]
    fn hermitian_half_solves_trace_equation() {
        let cases = [
            parse_ratfunc("1", 1).unwrap(),
            parse_ratfunc("t + 2 + t^-1", 1).unwrap(),
            parse_ratfunc("2 - t - t^-1", 1).unwrap(),
            parse_ratfunc("3 / 2 - t - t^-1", 1).unwrap(),
            parse_ratfunc("t1*t2 + 5 + t1^-1*t2^-1", 2).unwrap(),
        ];
        for lam in cases {
            let z = hermitian_half(&lam).unwrap();
            assert!(z.in_lambda_s(), "z stays in Lambda_S for {}", lam);
            assert_eq!(&z + &z.conj(), lam);
        }
    }

    #[test]
    fn block_sum_with_empty_is_identity() {
        let h = trefoil_h();
        let empty = CMatrix::empty(1);
        let s = block_sum(&[&h, &empty]).unwrap();
        assert_eq!(&s, &h);
    }

    #[test]
    fn block_sum_deltas_multiply() {
        let h = trefoil_h();
        let s = block_sum(&[&h, &h]).unwrap();
        let expect = {
            let t = parse_poly("t^2 - t + 1", 1).unwrap();
            &t * &t
        };
        assert_eq!(delta_core(&s), expect);
    }

    #[test]
    fn block_sum_pairing_is_block_diagonal() {
        let h = trefoil_h();
        let s = block_sum(&[&h, &h]).unwrap();
        let td_h = torsion_order(&h).unwrap();
        let td_s = torsion_order(&s).unwrap();
        let v = parse_vector("1, t", 1).unwrap();
        let w = parse_vector("t^-1, 2", 1).unwrap();
        let embedded_v = parse_vector("1, t, 0, 0", 1).unwrap();
        let embedded_w = parse_vector("t^-1, 2, 0, 0", 1).unwrap();
        assert_eq!(
            td_s.pair(&embedded_v, &embedded_w).unwrap(),
            td_h.pair(&v, &w).unwrap()
        );
        // cross-block pairing vanishes
        let other = parse_vector("0, 0, 1, 0", 1).unwrap();
        assert!(td_s.pair(&embedded_v, &other).unwrap().is_zero_class());
    }

    #[test]
    fn block_sum_rejects_mu_mismatch() {
        let h = trefoil_h();
        let two_var = CMatrix::empty(2);
        assert!(matches!(
            block_sum(&[&h, &two_var]),
            Err(Error::NvarsMismatch { .. })
        ));
    }

    #[test]
    fn unit_scale_trivial_units() {
        let h = trefoil_h();
        let (s, _) = unit_scale(&h, &LsUnit::one(1));
        assert_eq!(&s, &h);
        // u = -t: norm is 1, matrix unchanged
        let u = LsUnit {
            negative: true,
            monomial: ExpVec(vec![1]),
            clasps: vec![0],
        };
        let (s2, _) = unit_scale(&h, &u);
        assert_eq!(&s2, &h);
    }

    #[test]
    fn unit_scale_isometry_checks_out() {
        let h = trefoil_h();
        let u = LsUnit::clasp(1, 0, 1); // u = 1 - t
        let (scaled, iso) = unit_scale(&h, &u);
        // λ_{uūH}(x, y) = (uū)^{-1-fold} scaling of λ_H representatives
        let td_h = torsion_order(&h).unwrap();
        let td_s = torsion_order(&scaled).unwrap();
        let v = parse_vector("1, 0", 1).unwrap();
        let norm_inv = RatFunc::from_ls_unit(&u.norm().inv());
        let lhs = td_s.pair(&v, &v).unwrap();
        let rhs = td_h.pair(&v, &v).unwrap().scale(&norm_inv);
        assert_eq!(lhs, rhs);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let samples = random_torsion_samples(&scaled, 6, &mut rng);
        let report = check_isometry(&iso, &samples).unwrap();
        assert!(report.passed(), "violations: {:?}", report.violations);
    }

    #[test]
    fn mirror_involution_and_negation() {
        let h = trefoil_h();
        assert_eq!(mirror(&mirror(&h)), h);
        assert_eq!(delta_core(&h), delta_core(&mirror(&h)));
        let td = torsion_order(&h).unwrap();
        let td_m = torsion_order(&mirror(&h)).unwrap();
        let v = parse_vector("1, 0", 1).unwrap();
        let w = parse_vector("0, 1", 1).unwrap();
        let neg_v = parse_vector("-1, 0", 1).unwrap();
        let neg_w = parse_vector("0, -1", 1).unwrap();
        // λ_{-H}(-x, -y) = -λ_H(x, y)
        assert_eq!(
            td_m.pair(&neg_v, &neg_w).unwrap(),
            td.pair(&v, &w).unwrap().neg()
        );
    }

    #[test]
    fn reverse_involution_and_hermitian_transport() {
        let h = trefoil_h();
        assert_eq!(reverse(&reverse(&h)), h);
        assert_eq!(delta_core(&h), delta_core(&reverse(&h)));
        let td = torsion_order(&h).unwrap();
        let td_r = torsion_order(&reverse(&h)).unwrap();
        let v = parse_vector("1, t", 1).unwrap();
        let w = parse_vector("0, 1", 1).unwrap();
        // conj(H) = H^T presents the conjugate form: values conjugate under
        // the entrywise-conjugate identification of representatives.
        let v_c: Vec<RatFunc> = v.iter().map(|x| x.conj()).collect();
        let w_c: Vec<RatFunc> = w.iter().map(|x| x.conj()).collect();
        assert_eq!(
            td_r.pair(&v_c, &w_c).unwrap(),
            td.pair(&v, &w).unwrap().conj()
        );
    }

    #[test]
    fn connected_sum_of_knots_is_block_sum() {
        let h = trefoil_h();
        let s = connected_sum(&h, &h, 1).unwrap();
        assert_eq!(s.mu(), 1);
        assert_eq!(&s, &block_sum(&[&h, &h]).unwrap());
        let expect = {
            let t = parse_poly("t^2 - t + 1", 1).unwrap();
            &t * &t
        };
        assert_eq!(delta_core(&s), expect);
    }

    #[test]
    fn disjoint_union_scales_blocks() {
        let h = trefoil_h();
        let s = connected_sum(&h, &h, 0).unwrap();
        assert_eq!(s.mu(), 2);
        assert_eq!(s.n(), 4);
        // top block carries the norm of (1 - t2), bottom of (1 - t1)
        let norm2 = RatFunc::from_ls_unit(&LsUnit::clasp(2, 1, 1).norm());
        let h00 = h.get(0, 0).num().embed(2, &[0]);
        let expect = &RatFunc::poly(h00) * &norm2;
        assert_eq!(s.get(0, 0), &expect);
        let norm1 = RatFunc::from_ls_unit(&LsUnit::clasp(2, 0, 1).norm());
        let h00b = h.get(0, 0).num().embed(2, &[1]);
        let expect_b = &RatFunc::poly(h00b) * &norm1;
        assert_eq!(s.get(2, 2), &expect_b);
        // cross blocks vanish
        assert!(s.get(0, 3).is_zero());
    }

    #[test]
    fn connected_sum_pairing_matches_components() {
        let h = trefoil_h();
        let s = connected_sum(&h, &h, 1).unwrap();
        let td_h = torsion_order(&h).unwrap();
        let td_s = torsion_order(&s).unwrap();
        let v = parse_vector("1, 0, 0, 0", 1).unwrap();
        let v_small = parse_vector("1, 0", 1).unwrap();
        assert_eq!(td_s.pair(&v, &v).unwrap(), td_h.pair(&v_small, &v_small).unwrap());
    }

    #[test]
    fn check_isometry_flags_bad_map() {
        // doubling is not an isometry of the trefoil form
        let h = CMatrix::new(
            1,
            RfMatrix::from_fn(1, 1, 1, |_, _| parse_ratfunc("t - 1 + t^-1", 1).unwrap()),
        )
        .unwrap();
        let bad = FormIsometry {
            source: h.clone(),
            target: h.clone(),
            map: RfMatrix::from_fn(1, 1, 1, |_, _| RatFunc::constant(1, 2)),
        };
        let samples = vec![parse_vector("1", 1).unwrap()];
        let report = check_isometry(&bad, &samples).unwrap();
        assert!(!report.passed());
        assert!(matches!(
            report.violations[0],
            IsometryViolation::ValueMismatch { .. }
        ));
        // and the identity passes
        let good = FormIsometry::identity(&h);
        assert!(check_isometry(&good, &samples).unwrap().passed());
    }

    #[test]
    fn random_samples_are_torsion() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let diag = CMatrix::new(
            1,
            RfMatrix::from_fn(2, 2, 1, |i, j| {
                if i == 0 && j == 0 {
                    parse_ratfunc("t - 1 + t^-1", 1).unwrap()
                } else {
                    RatFunc::zero(1)
                }
            }),
        )
        .unwrap();
        let td = torsion_order(&diag).unwrap();
        for v in random_torsion_samples(&diag, 8, &mut rng) {
            assert!(td.is_torsion(&v).unwrap());
        }
        let h = trefoil_h();
        let td_h = torsion_order(&h).unwrap();
        for v in random_torsion_samples(&h, 8, &mut rng) {
            assert!(td_h.is_torsion(&v).unwrap());
        }
    }
}
