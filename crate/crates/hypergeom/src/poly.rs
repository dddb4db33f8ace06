//! Dense univariate polynomials over an exact coefficient field.
//!
//! Generic over [`Coeff`] so the same arithmetic serves polynomials in
//! `lambda` over the rationals and polynomials in the shift variable `s`
//! over the field of rational functions of `lambda`.

use crate::scalar::{rat_to_c64, Rat, C64};
use num::traits::{One, Zero};

/// Exact field operations required of a polynomial coefficient.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Whether fractions of polynomials over this field should run gcd
    /// reduction. Over the rationals the Euclidean gcd is cheap and keeps
    /// representations canonical; over a rational-function field the
    /// remainder sequences blow up, degrees stay small anyway, and
    /// equality falls back to cross-multiplication.
    fn gcd_reduce_fractions() -> bool {
        true
    }
}

impl Coeff for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Polynomial with ascending coefficients; the empty vector is zero.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Coeff> {
    coeffs: Vec<F>,
}

impl<F: Coeff> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self { coeffs: v }
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports degree 0 for display purposes via
    /// `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k).add(&o.coeff(k)));
        }
        Self::new(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k).sub(&o.coeff(k)));
        }
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    ///
    /// Panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap().div(&lead);
            let t = Self::monomial(c, rd - dd);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(d));
        }
        (quot, rem)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.clone();
                Self::new(self.coeffs.iter().map(|c| c.div(&inv)).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut kk = F::zero();
            for _ in 0..k {
                kk = kk.add(&F::one());
            }
            v.push(c.mul(&kk));
        }
        Self::new(v)
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation of `p(x + a)`, used for shifting the variable.
    pub fn compose_linear_shift(&self, a: &F) -> Self {
        // p(x + a) by Horner: acc = acc*(x + a) + c_k
        let shift = Self::new(vec![a.clone(), F::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn to_string_var(&self, var: &str) -> String
    where
        F: std::fmt::Display,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{c}");
            let p = match k {
                0 => cs,
                1 if cs == "1" => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if cs == "1" => format!("{var}^{k}"),
                _ => format!("{cs}*{var}^{k}"),
            };
            parts.push(p);
        }
        parts.join(" + ")
    }
}

impl Poly<Rat> {
    /// Evaluate at a complex point.
    pub fn eval_c64(&self, x: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_c64(c).expect("coefficient fits in f64");
        }
        acc
    }
}

impl<F: Coeff + std::fmt::Display> std::fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
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
    fn arithmetic_round_trip() {
        let a = p(&[1, 0, 2, 5]);
        let b = p(&[3, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = p(&[0, 1]); // x
        let g = p(&[-1, 1]); // x - 1
        let a = f.mul(&g);
        let b = f.mul(&p(&[2, 0, 1]));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn derivative_and_shift() {
        let f = p(&[1, -3, 0, 2]); // 1 - 3x + 2x^3
        assert_eq!(f.derivative(), p(&[-3, 0, 6]));
        // p(x+1) at x=0 equals p(1)
        let shifted = f.compose_linear_shift(&rat_int(1));
        assert_eq!(shifted.coeff(0), f.eval(&rat_int(1)));
        assert_eq!(shifted.eval(&rat(1, 2)), f.eval(&rat(3, 2)));
    }

    #[test]
    fn eval_matches_complex() {
        let f = p(&[2, -1, 4]);
        let x = C64::new(0.3, -0.7);
        let direct = C64::new(2.0, 0.0) - x + 4.0 * x * x;
        assert!((f.eval_c64(x) - direct).norm() < 1e-14);
    }
}
