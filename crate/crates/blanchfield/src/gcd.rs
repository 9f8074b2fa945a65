//! Exact multivariate gcd over the Laurent ring.
//!
//! The computation shifts every input to ordinary polynomial support and runs
//! a primitive pseudo-remainder sequence, recursing on the variables; integer
//! content is extracted at the base. Two normalizations are offered:
//! [`gcd_raw`] keeps `(1 - t_i)` factors and integer content, canonical up to
//! units of the Laurent ring only, and is what fraction reduction needs;
//! [`gcd`] additionally strips all Λ_S-unit factors, matching the canonical
//! form used for torsion orders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::laurent::LaurentPoly;

/// Gcd in Λ, canonical up to units of Λ (support min 0, positive leading
/// coefficient). Keeps `(1 - t_i)` factors and integer content.
/// `gcd_raw(p, 0) = normalize(p)`, `gcd_raw(0, 0) = 0`.
pub fn gcd_raw(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.nvars(), b.nvars(), "variable count mismatch");
    if a.is_zero() {
        return b.normalize_monic_shift();
    }
    if b.is_zero() {
        return a.normalize_monic_shift();
    }
    let p = a.normalize_monic_shift();
    let q = b.normalize_monic_shift();
    if p == q {
        return p;
    }
    if p.is_one() || q.is_one() {
        return LaurentPoly::one(a.nvars());
    }
    // Constant against constant or constant against content.
    if p.is_constant() || q.is_constant() {
        let g = p.int_content().gcd(&q.int_content());
        return LaurentPoly::constant(a.nvars(), g);
    }
    poly_gcd(&p, &q).normalize_monic_shift()
}

/// The public gcd: `gcd_raw` with every Λ_S-unit factor stripped, so the
/// result is a canonical core. `gcd(p, 0)` is the core of `p`.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let g = gcd_raw(a, b);
    if g.is_zero() {
        return g;
    }
    g.strip_units().expect("nonzero gcd").0
}

/// Recursive gcd of polynomials with nonnegative support.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let nv = a.nvars();
    // Main variable: the highest-index variable occurring in either operand.
    let var = match (0..nv).rev().find(|&v| a.depends_on(v) || b.depends_on(v)) {
        Some(v) => v,
        None => {
            let g = a.int_content().gcd(&b.int_content());
            return LaurentPoly::constant(nv, g);
        }
    };
    let ua = UniPoly::split(a, var);
    let ub = UniPoly::split(b, var);

    let ca = ua.content();
    let cb = ub.content();
    let cont = gcd_raw(&ca, &cb);

    // Modular degree test: if a univariate image over F_p (remaining
    // variables evaluated at integers) has gcd of degree 0 in the main
    // variable while a leading coefficient survives, the true gcd is free of
    // that variable and only the contents matter.
    if modp_gcd_degree_is_zero(a, b, var) {
        return cont;
    }

    let mut f = ua.div_coeffs(&ca);
    let mut g = ub.div_coeffs(&cb);
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    // Primitive PRS: replace each pseudo-remainder by its primitive part.
    loop {
        if g.is_zero() {
            break;
        }
        let r = f.pseudo_rem(&g);
        f = g;
        g = match r {
            Some(r) if !r.is_zero() => {
                let rc = r.content();
                r.div_coeffs(&rc)
            }
            _ => UniPoly::zero(nv),
        };
    }
    let prim = f.assemble(var);
    &cont * &prim
}

// 2^61 - 1, a Mersenne prime; small enough that sums never overflow u64,
// large enough that small-coefficient images almost never all vanish.
const MOD_P: u64 = 0x1FFF_FFFF_FFFF_FFFF;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= MOD_P;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64) -> u64 {
    powmod(a, MOD_P - 2)
}

fn bigint_modp(c: &BigInt) -> u64 {
    use num_traits::ToPrimitive;
    num_integer::Integer::mod_floor(c, &BigInt::from(MOD_P))
        .to_u64()
        .expect("reduced residue fits in u64")
}

/// Dense coefficients in `var` of the image of `p` under `t_j ↦ point[j]`
/// (j ≠ var) with coefficients reduced mod `MOD_P`. Requires nonnegative
/// support.
fn modp_image(p: &LaurentPoly, var: usize, point: &[u64]) -> Vec<u64> {
    let deg = p.degree_in(var).max(0) as usize;
    let mut out = vec![0u64; deg + 1];
    for (e, c) in p.terms() {
        let mut factor = bigint_modp(c);
        for (j, &pt) in point.iter().enumerate() {
            if j != var && e.0[j] != 0 {
                debug_assert!(e.0[j] >= 0);
                factor = mulmod(factor, powmod(pt, e.0[j] as u64));
            }
        }
        let idx = e.0[var] as usize;
        out[idx] = (out[idx] + factor) % MOD_P;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn modp_degree(p: &[u64]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

/// Degree of the univariate gcd over F_p.
fn modp_gcd_degree(a: &[u64], b: &[u64]) -> Option<usize> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_empty() {
        // r0 mod r1
        let lead_inv = invmod(*r1.last().unwrap());
        let d = r1.len() - 1;
        while r0.len() >= r1.len() {
            let k = r0.len() - 1 - d;
            let q = mulmod(*r0.last().unwrap(), lead_inv);
            for j in 0..=d {
                let sub = mulmod(q, r1[j]);
                let idx = k + j;
                r0[idx] = (r0[idx] + MOD_P - sub) % MOD_P;
            }
            while r0.last() == Some(&0) {
                r0.pop();
            }
            if r0.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    modp_degree(&r0)
}

/// Sound one-sided test: `true` means the gcd of `a` and `b` certainly has
/// degree 0 in `var`. The image gcd degree bounds the true gcd degree from
/// above whenever one leading coefficient survives the evaluation.
fn modp_gcd_degree_is_zero(a: &LaurentPoly, b: &LaurentPoly, var: usize) -> bool {
    let nv = a.nvars();
    for attempt in 0..2u64 {
        let point: Vec<u64> = (0..nv)
            .map(|j| 2 + attempt * 37 + j as u64 * 5)
            .collect();
        let ia = modp_image(a, var, &point);
        let ib = modp_image(b, var, &point);
        let preserved = modp_degree(&ia) == Some(a.degree_in(var).max(0) as usize)
            || modp_degree(&ib) == Some(b.degree_in(var).max(0) as usize);
        if !preserved || ia.is_empty() || ib.is_empty() {
            continue;
        }
        match modp_gcd_degree(&ia, &ib) {
            Some(0) => return true,
            _ => return false,
        }
    }
    false
}

/// Dense univariate view of a polynomial in one chosen main variable, with
/// multivariate coefficients.
struct UniPoly {
    nvars: usize,
    coeffs: Vec<LaurentPoly>, // index = exponent of the main variable
}

impl UniPoly {
    fn zero(nvars: usize) -> Self {
        UniPoly {
            nvars,
            coeffs: Vec::new(),
        }
    }

    fn split(p: &LaurentPoly, var: usize) -> Self {
        let deg = p.degree_in(var);
        debug_assert!(p.min_degree_in(var) >= 0);
        let mut coeffs = vec![LaurentPoly::zero(p.nvars()); (deg + 1) as usize];
        for (e, c) in p.terms() {
            let k = e.0[var] as usize;
            let mut e2 = e.clone();
            e2.0[var] = 0;
            coeffs[k] = &coeffs[k] + &LaurentPoly::monomial(p.nvars(), e2, c.clone());
        }
        let mut u = UniPoly {
            nvars: p.nvars(),
            coeffs,
        };
        u.trim();
        u
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    fn lead(&self) -> &LaurentPoly {
        self.coeffs.last().expect("nonzero")
    }

    fn content(&self) -> LaurentPoly {
        let mut g = LaurentPoly::zero(self.nvars);
        for c in &self.coeffs {
            g = gcd_raw(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_coeffs(&self, d: &LaurentPoly) -> UniPoly {
        UniPoly {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.div_exact(d).expect("content divides"))
                .collect(),
        }
    }

    fn mul_coeffs(&self, m: &LaurentPoly) -> UniPoly {
        let mut u = UniPoly {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|c| c * m).collect(),
        };
        u.trim();
        u
    }

    fn assemble(&self, var: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.nvars);
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut tk = crate::laurent::ExpVec::zero(self.nvars);
            tk.0[var] = k as i32;
            p = &p + &c.mul_monomial(&tk, &BigInt::one());
        }
        p
    }

    /// Pseudo-remainder of `self` by `d`: the remainder of
    /// `lc(d)^{deg self - deg d + 1} · self` under univariate division.
    /// `None` when `deg self < deg d`.
    fn pseudo_rem(&self, d: &UniPoly) -> Option<UniPoly> {
        let m = self.degree();
        let n = d.degree();
        if m < n {
            return None;
        }
        let lc = d.lead().clone();
        let mut r = UniPoly {
            nvars: self.nvars,
            coeffs: self.coeffs.clone(),
        };
        let mut steps = (m - n + 1) as i32;
        while !r.is_zero() && r.degree() >= n {
            let k = (r.degree() - n) as usize;
            let rl = r.lead().clone();
            // r <- lc(d) * r - rl * x^k * d
            let mut new = r.mul_coeffs(&lc);
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = j + k;
                while new.coeffs.len() <= idx {
                    new.coeffs.push(LaurentPoly::zero(self.nvars));
                }
                new.coeffs[idx] = &new.coeffs[idx] - &(dc * &rl);
            }
            new.trim();
            r = new;
            steps -= 1;
        }
        // Pad with the remaining lc powers so the full multiplier is applied.
        for _ in 0..steps {
            r = r.mul_coeffs(&lc);
        }
        Some(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, nv: usize) -> LaurentPoly {
        crate::text::parse_poly(s, nv).unwrap()
    }

    #[test]
    fn gcd_with_zero_is_normalized_core() {
        let p = parse("-3*t1^2 + 3*t1^3", 1); // -3 t1^2 (1 - t1)
        assert_eq!(gcd(&p, &LaurentPoly::zero(1)), parse("3", 1));
        assert!(gcd(&LaurentPoly::zero(1), &LaurentPoly::zero(1)).is_zero());
    }

    #[test]
    fn common_clasp_factor_strips_to_one() {
        // gcd(t - 1, t^2 - 1): the common factor (t - 1) is a Λ_S unit.
        let g = gcd(&parse("t1 - 1", 1), &parse("t1^2 - 1", 1));
        assert!(g.is_one());
        // but the raw gcd keeps it
        let raw = gcd_raw(&parse("t1 - 1", 1), &parse("t1^2 - 1", 1));
        assert_eq!(raw, parse("t1 - 1", 1));
    }

    #[test]
    fn coprime_quadratics() {
        let g = gcd(&parse("t1^2 - t1 + 1", 1), &parse("t1^2 - 3*t1 + 1", 1));
        assert!(g.is_one());
    }

    #[test]
    fn gcd_divides_both_and_ignores_units() {
        let cases: [(&str, &str, usize); 5] = [
            ("t1^2 - t1 + 1", "t1^2 - 3*t1 + 1", 1),
            ("6*t1^2 - 6", "4*t1 + 4", 1),
            ("t1*t2 - t1 - t2 + 1", "t1^2*t2 - t2", 2),
            ("2*t1^2*t2^2 - 2", "2*t1*t2 - 2", 2),
            ("t1^3 - t2^3", "t1^2 - t2^2", 2),
        ];
        for (a, b, nv) in cases {
            let p = parse(a, nv);
            let q = parse(b, nv);
            let g = gcd_raw(&p, &q);
            assert!(p.div_exact(&g).is_some(), "g | p for {a}, {b}");
            assert!(q.div_exact(&g).is_some(), "g | q for {a}, {b}");
            // unit invariance of the stripped gcd
            let u = crate::laurent::LsUnit {
                negative: true,
                monomial: crate::laurent::ExpVec(vec![1; nv]),
                clasps: vec![1; nv],
            };
            let pu = u.apply(&p).unwrap();
            assert_eq!(gcd(&pu, &q), gcd(&p, &q), "unit scaling for {a}, {b}");
        }
    }

    #[test]
    fn gcd_finds_built_common_factor() {
        let f = parse("t1^2 + t1 + 2", 1);
        let a = &f * &parse("t1^3 - 5", 1);
        let b = &f * &parse("2*t1 + 7", 1);
        let g = gcd(&a, &b);
        assert_eq!(g, f);
        // multivariate
        let f2 = parse("t1*t2 + 3", 2);
        let a2 = &f2 * &parse("t1^2 - t2", 2);
        let b2 = &f2 * &parse("t2^2 + t1 + 1", 2);
        assert_eq!(gcd(&a2, &b2), f2);
    }

    #[test]
    fn integer_content_participates() {
        let g = gcd(&parse("6*t1 + 6", 1), &parse("10*t1 + 10", 1));
        // common factor 2(t1 + 1); (t1+1) is not a Λ_S unit so it survives
        assert_eq!(g, parse("2*t1 + 2", 1));
    }
}
