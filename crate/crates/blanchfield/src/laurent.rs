//! Sparse multivariate Laurent polynomials over arbitrary-precision integers.
//!
//! The ring is `Z[t_1^{±1}, …, t_mu^{±1}]` with the involution `t_i ↦ t_i^{-1}`.
//! Monomials are totally ordered by graded lexicographic comparison, which is
//! invariant under uniform exponent shifts, so it orders Laurent monomials as
//! well as ordinary ones. All canonical forms (leading coefficients, unit
//! decompositions, gcd normalization) are stated against this order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial; one signed entry per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpVec(pub Vec<i32>);

impl ExpVec {
    pub fn zero(nvars: usize) -> Self {
        ExpVec(vec![0; nvars])
    }

    /// Exponent vector of the single variable `t_{var+1}`.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        ExpVec(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn componentwise_min(&self, other: &ExpVec) -> ExpVec {
        ExpVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    /// True when `self - other` is componentwise nonnegative.
    pub fn divides(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }
}

impl Neg for &ExpVec {
    type Output = ExpVec;
    fn neg(self) -> ExpVec {
        ExpVec(self.0.iter().map(|&e| -e).collect())
    }
}

impl Add for &ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.len(), rhs.len());
        ExpVec(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
    }
}

impl Sub for &ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.len(), rhs.len());
        ExpVec(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a - b).collect())
    }
}

/// Graded lexicographic order: total degree first, then lexicographic on the
/// exponents with `t_1` most significant. Shift-invariant, hence well-defined
/// on Laurent monomials.
impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.len(), other.len());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial: a term map with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExpVec, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "variable count must be at least 1");
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(ExpVec::zero(nvars), c);
        }
        p
    }

    /// The variable `t_{var+1}`.
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(nvars, ExpVec::unit(nvars, var), BigInt::one())
    }

    pub fn monomial(nvars: usize, exp: ExpVec, coeff: impl Into<BigInt>) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Self::zero(nvars);
        let c = coeff.into();
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// `1 - t_{var+1}`.
    pub fn one_minus_t(nvars: usize, var: usize) -> Self {
        let mut p = Self::one(nvars);
        p.add_term(ExpVec::unit(nvars, var), -BigInt::one());
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (ExpVec, BigInt)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| e.is_zero() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExpVec) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, e: ExpVec, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Leading term under the fixed monomial order; `None` for zero.
    pub fn leading(&self) -> Option<(&ExpVec, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero)
    }

    /// Componentwise minimum of the support; `None` for zero.
    pub fn min_exponents(&self) -> Option<ExpVec> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.componentwise_min(e)))
    }

    /// Largest exponent of `var` appearing in the support (0 for zero poly).
    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|e| e.0[var]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> i32 {
        self.terms.keys().map(|e| e.0[var]).min().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e.0[var] != 0)
    }

    /// The involution `t_i ↦ t_i^{-1}`, applied termwise.
    pub fn conj(&self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiply by the single Laurent monomial `c · t^e`.
    pub fn mul_monomial(&self, e: &ExpVec, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(te, tc)| (te + e, tc * c))
                .collect(),
        }
    }

    pub fn mul_scalar(&self, c: &BigInt) -> LaurentPoly {
        self.mul_monomial(&ExpVec::zero(self.nvars), c)
    }

    /// Substitute `t_{var+1} = 1`: drop that variable's exponents and combine.
    pub fn eval_at_one(&self, var: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.0[var] = 0;
            out.add_term(e2, c.clone());
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Re-embed into a ring with `new_nvars` variables, sending variable `i`
    /// to variable `var_map[i]`.
    pub fn embed(&self, new_nvars: usize, var_map: &[usize]) -> LaurentPoly {
        assert_eq!(var_map.len(), self.nvars);
        assert!(var_map.iter().all(|&v| v < new_nvars));
        let mut out = LaurentPoly::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0i32; new_nvars];
            for (i, &exp) in e.0.iter().enumerate() {
                e2[var_map[i]] += exp;
            }
            out.add_term(ExpVec(e2), c.clone());
        }
        out
    }

    /// Exact division in the Laurent ring; `None` when `d` does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert_eq!(self.nvars, d.nvars);
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero(self.nvars));
        }
        // Shift both to ordinary polynomial support; the monomial defect is a
        // unit of the Laurent ring and is restored on the quotient.
        let sa = self.min_exponents().unwrap();
        let sb = d.min_exponents().unwrap();
        let p = self.mul_monomial(&-&sa, &BigInt::one());
        let q = d.mul_monomial(&-&sb, &BigInt::one());

        let (qlm, qlc) = q.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = p;
        let mut quo = LaurentPoly::zero(self.nvars);
        while !rem.is_zero() {
            let (rlm, rlc) = rem.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            if !qlm.divides(&rlm) {
                return None;
            }
            let (c, r) = num_integer::Integer::div_rem(&rlc, &qlc);
            if !r.is_zero() {
                return None;
            }
            let e = &rlm - &qlm;
            rem = &rem - &q.mul_monomial(&e, &c);
            quo.add_term(e, c);
        }
        Some(quo.mul_monomial(&(&sa - &sb), &BigInt::one()))
    }

    /// Integer content: gcd of all coefficients (nonnegative; 0 for zero).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Canonical form up to units of the Laurent ring itself (±monomials):
    /// support shifted to componentwise minimum 0 and positive leading
    /// coefficient. Keeps `(1 - t_i)` factors and integer content.
    pub fn normalize_monic_shift(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let m = self.min_exponents().unwrap();
        let mut p = self.mul_monomial(&-&m, &BigInt::one());
        if p.leading_coeff().is_negative() {
            p = -&p;
        }
        p
    }

    /// Decompose `self = unit · core` with `unit` a unit of Λ_S and `core`
    /// free of `(1 - t_i)` factors, support minimum 0 and positive leading
    /// coefficient. Deterministic; rejects the zero polynomial.
    pub fn strip_units(&self) -> Result<(LaurentPoly, LsUnit)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let nv = self.nvars;
        let mut core = self.clone();
        let mut clasps = vec![0i32; nv];
        for i in 0..nv {
            let omt = LaurentPoly::one_minus_t(nv, i);
            // (1 - t_i) divides exactly when substitution t_i = 1 kills the poly.
            while core.eval_at_one(i).is_zero() {
                core = core
                    .div_exact(&omt)
                    .expect("division by (1 - t_i) after successful t_i = 1 test");
                clasps[i] += 1;
            }
        }
        let monomial = core.min_exponents().unwrap();
        core = core.mul_monomial(&-&monomial, &BigInt::one());
        let mut negative = false;
        if core.leading_coeff().is_negative() {
            core = -&core;
            negative = true;
        }
        Ok((
            core,
            LsUnit {
                negative,
                monomial,
                clasps,
            },
        ))
    }

    /// Membership in the unit group of Λ_S: `±t^a · Π (1 - t_i)^{k_i}`, k_i ≥ 0.
    pub fn is_ls_unit(&self) -> bool {
        !self.is_zero() && self.strip_units().map(|(core, _)| core.is_one()).unwrap_or(false)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        // Iterate the smaller operand outside.
        let (small, large) = if self.term_count() <= rhs.term_count() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (e1, c1) in &small.terms {
            for (e2, c2) in &large.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

/// A unit of Λ_S in factored form: `±t^a · Π (1 - t_i)^{k_i}`.
///
/// The clasp exponents may be negative; such units are only expressible as
/// fractions, see [`LsUnit::to_poly`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LsUnit {
    pub negative: bool,
    pub monomial: ExpVec,
    pub clasps: Vec<i32>,
}

impl LsUnit {
    pub fn one(nvars: usize) -> Self {
        LsUnit {
            negative: false,
            monomial: ExpVec::zero(nvars),
            clasps: vec![0; nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.monomial.len()
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.monomial.is_zero() && self.clasps.iter().all(|&k| k == 0)
    }

    pub fn minus_one(nvars: usize) -> Self {
        LsUnit {
            negative: true,
            ..Self::one(nvars)
        }
    }

    pub fn monomial_unit(exp: ExpVec) -> Self {
        let clasps = vec![0; exp.len()];
        LsUnit {
            negative: false,
            monomial: exp,
            clasps,
        }
    }

    /// Single clasp factor `(1 - t_{var+1})^k`.
    pub fn clasp(nvars: usize, var: usize, k: i32) -> Self {
        let mut u = Self::one(nvars);
        u.clasps[var] = k;
        u
    }

    pub fn mul(&self, other: &LsUnit) -> LsUnit {
        assert_eq!(self.nvars(), other.nvars());
        LsUnit {
            negative: self.negative != other.negative,
            monomial: &self.monomial + &other.monomial,
            clasps: self
                .clasps
                .iter()
                .zip(&other.clasps)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn inv(&self) -> LsUnit {
        LsUnit {
            negative: self.negative,
            monomial: -&self.monomial,
            clasps: self.clasps.iter().map(|&k| -k).collect(),
        }
    }

    /// Involution: `conj(±t^a Π(1-t_i)^{k_i}) = ±(-1)^{Σk} t^{-a-k} Π(1-t_i)^{k_i}`.
    pub fn conj(&self) -> LsUnit {
        let ksum: i32 = self.clasps.iter().sum();
        let mut monomial = -&self.monomial;
        for (m, &k) in monomial.0.iter_mut().zip(&self.clasps) {
            *m -= k;
        }
        LsUnit {
            negative: self.negative != (ksum.rem_euclid(2) == 1),
            monomial,
            clasps: self.clasps.clone(),
        }
    }

    /// The hermitian norm `u · conj(u)`.
    pub fn norm(&self) -> LsUnit {
        self.mul(&self.conj())
    }

    /// Expanded polynomial form; `None` if any clasp exponent is negative.
    pub fn to_poly(&self) -> Option<LaurentPoly> {
        if self.clasps.iter().any(|&k| k < 0) {
            return None;
        }
        let nv = self.nvars();
        let sign = if self.negative { -BigInt::one() } else { BigInt::one() };
        let mut p = LaurentPoly::monomial(nv, self.monomial.clone(), sign);
        for (i, &k) in self.clasps.iter().enumerate() {
            if k > 0 {
                p = &p * &LaurentPoly::one_minus_t(nv, i).pow(k as u32);
            }
        }
        Some(p)
    }

    /// Numerator/denominator pair of Laurent polynomials; denominator collects
    /// the negative clasp powers.
    pub fn to_num_den(&self) -> (LaurentPoly, LaurentPoly) {
        let nv = self.nvars();
        let sign = if self.negative { -BigInt::one() } else { BigInt::one() };
        let mut num = LaurentPoly::monomial(nv, self.monomial.clone(), sign);
        let mut den = LaurentPoly::one(nv);
        for (i, &k) in self.clasps.iter().enumerate() {
            if k > 0 {
                num = &num * &LaurentPoly::one_minus_t(nv, i).pow(k as u32);
            } else if k < 0 {
                den = &den * &LaurentPoly::one_minus_t(nv, i).pow((-k) as u32);
            }
        }
        (num, den)
    }

    /// Multiply a polynomial by this unit; `None` if the unit has negative
    /// clasp exponents that do not cancel (use `to_num_den` then).
    pub fn apply(&self, p: &LaurentPoly) -> Option<LaurentPoly> {
        let (num, den) = self.to_num_den();
        let q = p * &num;
        q.div_exact(&den)
    }
}

impl fmt::Display for LsUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nv = self.nvars();
        let mut parts: Vec<String> = Vec::new();
        if !self.monomial.is_zero() {
            for (i, &e) in self.monomial.0.iter().enumerate() {
                if e != 0 {
                    let v = crate::text::var_name(nv, i);
                    if e == 1 {
                        parts.push(v);
                    } else {
                        parts.push(format!("{}^{}", v, e));
                    }
                }
            }
        }
        for (i, &k) in self.clasps.iter().enumerate() {
            if k != 0 {
                let v = crate::text::var_name(nv, i);
                if k == 1 {
                    parts.push(format!("(1 - {})", v));
                } else {
                    parts.push(format!("(1 - {})^{}", v, k));
                }
            }
        }
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        };
        if self.negative {
            write!(f, "-{}", body)
        } else {
            write!(f, "{}", body)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, nv: usize) -> LaurentPoly {
        crate::text::parse_poly(s, nv).unwrap()
    }

    #[test]
    fn grlex_order_is_degree_then_lex() {
        let a = ExpVec(vec![2, 0]);
        let b = ExpVec(vec![1, 1]);
        let c = ExpVec(vec![0, 1]);
        assert!(a > b); // same degree, lex on t1
        assert!(b > c); // higher degree wins
        assert!(ExpVec(vec![-1, 0]) < ExpVec(vec![0, 0]));
    }

    #[test]
    fn conj_negates_exponents() {
        let p = parse("t1", 1);
        assert_eq!(p.conj(), parse("t1^-1", 1));
        let q = parse("3 + 2*t1*t2^-1", 2);
        assert_eq!(q.conj(), parse("3 + 2*t1^-1*t2", 2));
        let r = parse("1 - t1", 1);
        assert_eq!(r.conj(), parse("1 - t1^-1", 1));
    }

    #[test]
    fn conj_is_a_ring_involution() {
        let p = parse("2*t1^2 - t1*t2 + 5*t2^-3", 2);
        let q = parse("t1^-1 + 7 - t2", 2);
        assert_eq!(p.conj().conj(), p);
        assert_eq!((&p * &q).conj(), &p.conj() * &q.conj());
        assert_eq!((&p + &q).conj(), &p.conj() + &q.conj());
    }

    #[test]
    fn div_exact_roundtrip_and_failure() {
        let p = parse("t1^2 - 1", 1);
        let d = parse("t1 - 1", 1);
        assert_eq!(p.div_exact(&d).unwrap(), parse("t1 + 1", 1));
        assert!(parse("t1 + 1", 1).div_exact(&parse("t1 - 1", 1)).is_none());
        assert!(parse("t1", 1).div_exact(&parse("2", 1)).is_none());
        // Laurent shift: (t^-1 - t) / (1 - t) = t^-1 (1 - t^2)/(1 - t) = t^-1 (1 + t)
        let q = parse("t1^-1 - t1", 1);
        assert_eq!(
            q.div_exact(&parse("1 - t1", 1)).unwrap(),
            parse("t1^-1 + 1", 1)
        );
    }

    #[test]
    fn strip_units_examples() {
        // -t1^2 (1 - t1) * 5
        let p = parse("-5*t1^2 + 5*t1^3", 1);
        let (core, unit) = p.strip_units().unwrap();
        assert_eq!(core, parse("5", 1));
        assert!(unit.negative);
        assert_eq!(unit.monomial, ExpVec(vec![2]));
        assert_eq!(unit.clasps, vec![1]);
        // re-multiplication is exact
        assert_eq!(unit.apply(&core).unwrap(), p);

        let q = parse("t1 - 1 + t1^-1", 1);
        let (core, unit) = q.strip_units().unwrap();
        assert_eq!(core, parse("t1^2 - t1 + 1", 1));
        assert_eq!(unit.monomial, ExpVec(vec![-1]));
        assert_eq!(unit.clasps, vec![0]);
        assert!(!unit.negative);

        let one = parse("1", 1);
        let (core, unit) = one.strip_units().unwrap();
        assert!(core.is_one());
        assert!(unit.is_one());

        assert!(parse("0", 1).strip_units().is_err());
    }

    #[test]
    fn strip_units_roundtrip_multivariate() {
        let cases = [
            "3*t1^2*t2^-1 - 3*t1*t2^-1",
            "-2 + 2*t1 + 2*t2 - 2*t1*t2",
            "7*t1^-3",
            "t1^2*t2 - t1*t2 + t2",
        ];
        for s in cases {
            let p = parse(s, 2);
            let (core, unit) = p.strip_units().unwrap();
            assert_eq!(unit.apply(&core).unwrap(), p, "case {}", s);
            // core has no clasp factor and support min 0
            for i in 0..2 {
                assert!(!core.eval_at_one(i).is_zero());
            }
            assert!(core.min_exponents().unwrap().is_zero());
            assert!(core.leading_coeff().is_positive());
        }
    }

    #[test]
    fn ls_unit_recognition() {
        assert!(parse("1", 1).is_ls_unit());
        // -t1^2 t2^-1 (1 - t1)^3
        let u = LsUnit {
            negative: true,
            monomial: ExpVec(vec![2, -1]),
            clasps: vec![3, 0],
        };
        assert!(u.to_poly().unwrap().is_ls_unit());
        assert!(!parse("1 + t1", 1).is_ls_unit());
        assert!(!parse("2", 1).is_ls_unit());
        assert!(!parse("0", 1).is_ls_unit());
    }

    #[test]
    fn ls_unit_conj_matches_poly_conj() {
        let units = [
            LsUnit {
                negative: false,
                monomial: ExpVec(vec![1, -2]),
                clasps: vec![2, 1],
            },
            LsUnit {
                negative: true,
                monomial: ExpVec(vec![0, 3]),
                clasps: vec![0, 2],
            },
        ];
        for u in units {
            let p = u.to_poly().unwrap();
            assert_eq!(u.conj().to_poly().unwrap(), p.conj());
            let n = u.norm().to_poly().unwrap();
            assert_eq!(n.conj(), n, "norm is hermitian");
        }
    }

    #[test]
    fn eval_at_one_collapses_variable() {
        let p = parse("t1^2*t2 - t1*t2 + t2 - 1", 2);
        assert_eq!(p.eval_at_one(0), parse("t2 - 1", 2));
    }
}
