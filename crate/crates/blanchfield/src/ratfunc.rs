//! The fraction field `Q = Q(t_1, …, t_mu)`, the subring Λ_S, and classes in
//! the quotient `Q/Λ_S`.
//!
//! A fraction is stored fully reduced (the raw gcd of numerator and
//! denominator is a unit of Λ), with the denominator normalized to support
//! minimum 0 and positive leading coefficient. Units of Λ (signs and
//! monomials) are absorbed into the numerator; `(1 - t_i)` factors cannot be
//! absorbed and stay in the denominator, so membership in Λ_S is exactly
//! "the reduced denominator is a Λ_S-unit".

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gcd::gcd_raw;
use crate::laurent::{LaurentPoly, LsUnit};

/// Reduced fraction of Laurent polynomials; an element of `Q(t_1,…,t_mu)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Construct and reduce `num / den`. Rejects a zero denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc {
                num,
                den: LaurentPoly::one(den.nvars()),
            };
        }
        let g = gcd_raw(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        // Normalize the denominator by units of Λ: shift support to min 0 and
        // make the leading coefficient positive; the compensating unit moves
        // into the numerator.
        let shift = den.min_exponents().expect("nonzero denominator");
        if !shift.is_zero() {
            num = num.mul_monomial(&-&shift, &BigInt::one());
            den = den.mul_monomial(&-&shift, &BigInt::one());
        }
        if num_traits::Signed::is_negative(&den.leading_coeff()) {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Result<RatFunc> {
        let nv = p.nvars();
        RatFunc::new(p, LaurentPoly::one(nv))
    }

    pub fn poly(p: LaurentPoly) -> RatFunc {
        let den = LaurentPoly::one(p.nvars());
        RatFunc { num: p, den }
    }

    pub fn zero(nvars: usize) -> RatFunc {
        Self::poly(LaurentPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> RatFunc {
        Self::poly(LaurentPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> RatFunc {
        Self::poly(LaurentPoly::constant(nvars, c))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Term-count complexity used for pivot selection.
    pub fn complexity(&self) -> usize {
        self.num.term_count() + self.den.term_count()
    }

    /// The underlying Laurent polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Membership in `Λ_S = Λ[(1-t_1)^{-1}, …, (1-t_mu)^{-1}]`.
    pub fn in_lambda_s(&self) -> bool {
        self.den.is_ls_unit()
    }

    /// Membership in the unit group of Λ_S.
    pub fn is_ls_unit(&self) -> bool {
        self.num.is_ls_unit() && self.den.is_ls_unit()
    }

    /// Factored Λ_S-unit form, when this element is one.
    pub fn as_ls_unit(&self) -> Option<LsUnit> {
        if self.is_zero() {
            return None;
        }
        let (ncore, nunit) = self.num.strip_units().ok()?;
        let (dcore, dunit) = self.den.strip_units().ok()?;
        if ncore.is_one() && dcore.is_one() {
            Some(nunit.mul(&dunit.inv()))
        } else {
            None
        }
    }

    pub fn from_ls_unit(u: &LsUnit) -> RatFunc {
        let (num, den) = u.to_num_den();
        Self::reduced(num, den)
    }

    pub fn conj(&self) -> RatFunc {
        Self::reduced(self.num.conj(), self.den.conj())
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // a/b + c/d = (a·(d/g) + c·(b/g)) / (b·(d/g)) with g = gcd(b, d).
        let g = gcd_raw(&self.den, &rhs.den);
        let db = self.den.div_exact(&g).expect("gcd divides");
        let dd = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &dd) + &(&rhs.num * &db);
        let den = &self.den * &dd;
        RatFunc::reduced(num, den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        // Cross-reduce before multiplying to limit swell.
        let g1 = gcd_raw(&self.num, &rhs.den);
        let g2 = gcd_raw(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc::reduced(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        self * &RatFunc::reduced(rhs.den.clone(), rhs.num.clone())
    }
}

macro_rules! forward_rf_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
        impl $trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$method(&rhs)
            }
        }
    };
}

forward_rf_binop!(Add, add);
forward_rf_binop!(Sub, sub);
forward_rf_binop!(Mul, mul);
forward_rf_binop!(Div, div);

/// A class in `Q/Λ_S`, held by an arbitrary representative.
///
/// Equality is class equality: two values are equal exactly when the
/// difference of representatives lies in Λ_S. This is the contract every
/// theorem-level statement uses; [`QmodLs::canonical`] is display-only.
#[derive(Clone, Debug)]
pub struct QmodLs {
    rep: RatFunc,
}

impl QmodLs {
    pub fn class(rep: RatFunc) -> QmodLs {
        QmodLs { rep }
    }

    pub fn zero(nvars: usize) -> QmodLs {
        QmodLs {
            rep: RatFunc::zero(nvars),
        }
    }

    pub fn rep(&self) -> &RatFunc {
        &self.rep
    }

    pub fn nvars(&self) -> usize {
        self.rep.nvars()
    }

    pub fn is_zero_class(&self) -> bool {
        self.rep.in_lambda_s()
    }

    /// The involuted class; well-defined since conjugation preserves Λ_S.
    pub fn conj(&self) -> QmodLs {
        QmodLs {
            rep: self.rep.conj(),
        }
    }

    pub fn add(&self, other: &QmodLs) -> QmodLs {
        QmodLs {
            rep: &self.rep + &other.rep,
        }
    }

    pub fn neg(&self) -> QmodLs {
        QmodLs { rep: -&self.rep }
    }

    /// Multiply the class by a Λ_S scalar (sesquilinear moves only scale by
    /// ring elements, never by general fractions).
    pub fn scale(&self, s: &RatFunc) -> QmodLs {
        QmodLs {
            rep: &self.rep * s,
        }
    }

    /// Deterministic best-effort representative: Λ_S classes collapse to 0;
    /// otherwise the numerator is reduced modulo the denominator by
    /// multivariate division under the fixed monomial order, iterated until
    /// stable. Idempotent.
    pub fn canonical(&self) -> RatFunc {
        let nv = self.nvars();
        let mut f = self.rep.clone();
        loop {
            if f.in_lambda_s() {
                return RatFunc::zero(nv);
            }
            // Shift numerator to polynomial support; the shift is a unit of Λ
            // and scales the discarded integral part only.
            let shift = f.num.min_exponents().expect("nonzero numerator");
            let num0 = f.num.mul_monomial(&-&shift, &BigInt::one());
            let (_, rem) = poly_div_rem(&num0, &f.den);
            let new_num = rem.mul_monomial(&shift, &BigInt::one());
            let next = RatFunc::reduced(new_num, f.den.clone());
            if next == f {
                return f;
            }
            f = next;
        }
    }
}

impl PartialEq for QmodLs {
    fn eq(&self, other: &Self) -> bool {
        (&self.rep - &other.rep).in_lambda_s()
    }
}

impl Eq for QmodLs {}

impl std::fmt::Display for QmodLs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.canonical())
    }
}

/// Division with remainder of `p` by `d` (both with nonnegative support) by
/// leading-term reduction: terms whose monomial or coefficient is not
/// divisible move to the remainder.
fn poly_div_rem(p: &LaurentPoly, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let nv = p.nvars();
    let (dlm, dlc) = d
        .leading()
        .map(|(e, c)| (e.clone(), c.clone()))
        .expect("nonzero divisor");
    let mut work = p.clone();
    let mut quo = LaurentPoly::zero(nv);
    let mut rem = LaurentPoly::zero(nv);
    while !work.is_zero() {
        let (wlm, wlc) = work.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut reduced = false;
        if dlm.divides(&wlm) {
            let (q, r) = num_integer::Integer::div_rem(&wlc, &dlc);
            if num_traits::Zero::is_zero(&r) {
                let e = &wlm - &dlm;
                work = &work - &d.mul_monomial(&e, &q);
                quo = &quo + &LaurentPoly::monomial(nv, e, q);
                reduced = true;
            }
        }
        if !reduced {
            let t = LaurentPoly::monomial(nv, wlm, wlc);
            work = &work - &t;
            rem = &rem + &t;
        }
    }
    (quo, rem)
}
