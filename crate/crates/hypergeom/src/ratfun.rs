//! Exact rational functions: quotients of [`Poly`] with reduced fraction
//! and monic denominator.
//!
//! `RatFun<Rat>` is the coefficient field of the differential operators;
//! `RatFun<RatFun<Rat>>` (rational functions of the shift variable over
//! the rational functions of `lambda`) carries the contiguous-relation
//! recursion.

use crate::poly::{Coeff, Poly};
use crate::scalar::{Rat, C64};

#[derive(Clone, Debug)]
pub struct RatFun<F: Coeff> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Coeff> PartialEq for RatFun<F> {
    fn eq(&self, other: &Self) -> bool {
        if F::gcd_reduce_fractions() {
            // reduced + monic denominator is canonical
            self.num == other.num && self.den == other.den
        } else {
            self.num.mul(&other.den) == other.num.mul(&self.den)
        }
    }
}

impl<F: Coeff> RatFun<F> {
    /// Build and reduce. Panics on a zero denominator.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut r = Self { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    /// The coordinate function `x`.
    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if F::gcd_reduce_fractions() {
            let g = self.num.gcd(&self.den);
            if g.degree().is_some_and(|d| d > 0) {
                self.num = self.num.div_rem(&g).0;
                self.den = self.den.div_rem(&g).0;
            }
        }
        // monic denominator
        let lead = self.den.leading().expect("nonzero denominator").clone();
        if lead != F::one() {
            self.num = Poly::new(self.num.coeffs().iter().map(|c| c.div(&lead)).collect());
            self.den = self.den.monic();
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero rational function");
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Quotient-rule derivative, reduced.
    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den))
    }

    pub fn to_string_var(&self, var: &str) -> String
    where
        F: std::fmt::Display,
    {
        if self.den == Poly::one() {
            self.num.to_string_var(var)
        } else {
            format!(
                "({}) / ({})",
                self.num.to_string_var(var),
                self.den.to_string_var(var)
            )
        }
    }
}

impl<F: Coeff> Coeff for RatFun<F> {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFun::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFun::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFun::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        RatFun::div(self, o)
    }
    fn neg(&self) -> Self {
        RatFun::neg(self)
    }
    fn gcd_reduce_fractions() -> bool {
        // fractions whose coefficients are themselves rational functions
        // skip gcd reduction (see the trait documentation)
        false
    }
}

impl<F: Coeff + std::fmt::Display> std::fmt::Display for RatFun<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

/// Rational functions of `lambda` over the exact rationals.
pub type RatLam = RatFun<Rat>;

/// A `RatLam` with coefficients lowered to f64 once, for hot loops.
#[derive(Clone, Debug)]
pub struct RatLamF64 {
    num: Vec<f64>,
    den: Vec<f64>,
}

impl RatLamF64 {
    pub fn eval(&self, lam: C64) -> C64 {
        let horner = |cs: &[f64]| {
            let mut acc = C64::new(0.0, 0.0);
            for c in cs.iter().rev() {
                acc = acc * lam + c;
            }
            acc
        };
        horner(&self.num) / horner(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl RatLam {
    /// Evaluate at a complex point; the caller keeps `lam` away from the
    /// poles.
    pub fn eval_c64(&self, lam: C64) -> C64 {
        self.num.eval_c64(lam) / self.den.eval_c64(lam)
    }

    /// Lower the coefficients to f64 once for repeated evaluation.
    pub fn to_f64(&self) -> RatLamF64 {
        let conv = |p: &Poly<Rat>| {
            p.coeffs()
                .iter()
                .map(|c| crate::scalar::rat_to_f64(c).expect("desk-scale coefficient"))
                .collect()
        };
        RatLamF64 {
            num: conv(&self.num),
            den: conv(&self.den),
        }
    }

    /// True when every denominator root sits at `lambda = 0` or
    /// `lambda = 1`, i.e. the denominator divides `lambda^a (lambda-1)^b`.
    pub fn poles_only_at_zero_one(&self) -> bool {
        use crate::scalar::rat_int;
        let mut d = self.den.clone();
        let x = Poly::x();
        let xm1 = Poly::new(vec![rat_int(-1), rat_int(1)]);
        loop {
            if d.degree() == Some(0) || d.is_zero() {
                return !d.is_zero();
            }
            let (q, r) = d.div_rem(&x);
            if r.is_zero() {
                d = q;
                continue;
            }
            let (q, r) = d.div_rem(&xm1);
            if r.is_zero() {
                d = q;
                continue;
            }
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn reduction_and_monic_denominator() {
        // (2x^2 - 2) / (4x - 4) = (x+1)/2
        let r = RatLam::new(p(&[-2, 0, 2]), p(&[-4, 4]));
        assert_eq!(r.num(), &Poly::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(r.den(), &Poly::one());
    }

    #[test]
    fn field_axioms_spot_check() {
        let a = RatLam::new(p(&[1, 2]), p(&[0, 0, 1]));
        let b = RatLam::new(p(&[3]), p(&[-1, 1]));
        let lhs = a.add(&b).mul(&a.sub(&b));
        let rhs = a.mul(&a).sub(&b.mul(&b));
        assert_eq!(lhs, rhs);
        assert_eq!(a.div(&a), RatLam::one());
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx (1/x) = -1/x^2
        let r = RatLam::new(Poly::one(), p(&[0, 1]));
        assert_eq!(r.derivative(), RatLam::new(p(&[-1]), p(&[0, 0, 1])));
    }

    #[test]
    fn pole_location_check() {
        let good = RatLam::new(p(&[7]), p(&[0, -1, 1])); // 7/(x^2 - x) = 7/(x(x-1))
        assert!(good.poles_only_at_zero_one());
        let bad = RatLam::new(p(&[1]), p(&[-2, 1])); // 1/(x-2)
        assert!(!bad.poles_only_at_zero_one());
    }

    #[test]
    fn bivariate_layer_equality_by_cross_multiplication() {
        // rational functions of s over Q(lambda) skip gcd reduction;
        // ((s + lam)(s - lam)) / (s - lam) still equals s + lam
        type BiRat = RatFun<RatLam>;
        let lam = RatLam::x();
        let s_plus = Poly::<RatLam>::new(vec![lam.clone(), RatLam::one()]);
        let s_minus = Poly::<RatLam>::new(vec![lam.neg(), RatLam::one()]);
        let r = BiRat::new(s_plus.mul(&s_minus), s_minus.clone());
        assert_eq!(r, BiRat::from_poly(s_plus.clone()));
        assert_ne!(r, BiRat::from_poly(s_minus));
    }
}
