//! Input data for the first-order operator `theta = p0(t) + p1(t) d/dt`
//! and the derived coefficient families `a_i(lambda)`, `b_i(lambda)`.
//!
//! The families are the Taylor-style rewriting
//!
//! ```text
//! a_i(lambda) = (-1)^i / i! * p0^(i)(lambda),
//! p0(t) = sum_{i=0}^N a_i(lambda) (lambda - t)^i        (same for p1, b_i)
//! ```
//!
//! which is exact once `N >= max(deg p0, deg p1)`.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{rat_int, Rat, C64};

/// `p0`, `p1` together with the derived `a_i`, `b_i` (polynomials in
/// `lambda` here; rational functions only arise after operator division).
#[derive(Clone, Debug)]
pub struct ThetaData {
    p0: Poly<Rat>,
    p1: Poly<Rat>,
    a: Vec<Poly<Rat>>,
    b: Vec<Poly<Rat>>,
    n: usize,
}

impl ThetaData {
    /// Derive the coefficient families, enforcing the divisibility
    /// condition `t(1-t) | p1`.
    pub fn derive(p0: Poly<Rat>, p1: Poly<Rat>) -> Result<Self> {
        // t(1-t) = t - t^2
        let t_one_minus_t = Poly::new(vec![rat_int(0), rat_int(1), rat_int(-1)]);
        if !p1.is_zero() {
            let (_, rem) = p1.div_rem(&t_one_minus_t);
            if !rem.is_zero() {
                return Err(Error::P1Violation(format!(
                    "t(1-t) must divide p1; remainder is {}",
                    rem.to_string_var("t")
                )));
            }
        }
        let n = p0.degree().unwrap_or(0).max(p1.degree().unwrap_or(0));
        let a = taylor_family(&p0, n);
        let b = taylor_family(&p1, n);
        Ok(Self { p0, p1, a, b, n })
    }

    /// Smallest exhaustive truncation order `N = max(deg p0, deg p1)`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p0(&self) -> &Poly<Rat> {
        &self.p0
    }

    pub fn p1(&self) -> &Poly<Rat> {
        &self.p1
    }

    /// `a_i(lambda)`; zero polynomial beyond the stored range.
    pub fn a(&self, i: usize) -> Poly<Rat> {
        self.a.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn b(&self, i: usize) -> Poly<Rat> {
        self.b.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn a_eval(&self, i: usize, lam: C64) -> C64 {
        self.a(i).eval_c64(lam)
    }

    pub fn b_eval(&self, i: usize, lam: C64) -> C64 {
        self.b(i).eval_c64(lam)
    }

    /// Exact reconstruction check: `sum_i a_i(lambda) (lambda - t0)^i` must
    /// be the constant polynomial `p0(t0)` for deg+1 rational probes `t0`,
    /// which pins the bivariate identity.
    pub fn reconstruction_is_exact(&self) -> bool {
        reconstructs(&self.a, &self.p0) && reconstructs(&self.b, &self.p1)
    }
}

fn taylor_family(p: &Poly<Rat>, n: usize) -> Vec<Poly<Rat>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut deriv = p.clone();
    let mut factorial = rat_int(1);
    let mut sign = rat_int(1);
    for i in 0..=n {
        if i > 0 {
            deriv = deriv.derivative();
            factorial *= rat_int(i as i64);
            sign = -sign;
        }
        out.push(deriv.scale(&(&sign / &factorial)));
    }
    out
}

fn reconstructs(family: &[Poly<Rat>], p: &Poly<Rat>) -> bool {
    let probes = family.len() + 1;
    for j in 0..probes {
        let t0 = rat_int(j as i64 + 2); // any distinct rationals work
                                        // (lambda - t0)^i accumulated incrementally
        let linear = Poly::new(vec![-t0.clone(), rat_int(1)]);
        let mut pow = Poly::one();
        let mut sum = Poly::zero();
        for ai in family {
            sum = sum.add(&ai.mul(&pow));
            pow = pow.mul(&linear);
        }
        if sum != Poly::constant(p.eval(&t0)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn poly(cs: &[i64]) -> Poly<Rat> {
        Poly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    /// p0 = 1, p1 = t(1-t): the reference operator data.
    pub fn reference() -> ThetaData {
        ThetaData::derive(poly(&[1]), poly(&[0, 1, -1])).unwrap()
    }

    #[test]
    fn reference_families() {
        let td = reference();
        assert_eq!(td.n(), 2);
        assert_eq!(td.a(0), poly(&[1]));
        assert!(td.a(1).is_zero() && td.a(2).is_zero() && td.a(3).is_zero());
        // b0 = lambda(1-lambda), b1 = 2 lambda - 1, b2 = -1
        assert_eq!(td.b(0), poly(&[0, 1, -1]));
        assert_eq!(td.b(1), poly(&[-1, 2]));
        assert_eq!(td.b(2), poly(&[-1]));
        assert!(td.b(3).is_zero());
    }

    #[test]
    fn reconstruction_identity() {
        assert!(reference().reconstruction_is_exact());
        let td = ThetaData::derive(poly(&[3, -2, 0, 5]), poly(&[0, 2, -1, -2, 1])).unwrap();
        assert!(td.reconstruction_is_exact());
    }

    #[test]
    fn p1_gate() {
        // p1 = t^2 is not divisible by 1 - t
        let e = ThetaData::derive(poly(&[1]), poly(&[0, 0, 1])).unwrap_err();
        assert!(matches!(e, Error::P1Violation(_)));
        // p1 = 0 is divisible by anything
        assert!(ThetaData::derive(poly(&[1]), Poly::zero()).is_ok());
    }

    #[test]
    fn rational_coefficients_flow_through() {
        let p0 = Poly::new(vec![rat(1, 2), rat(-1, 3)]);
        let td = ThetaData::derive(p0, poly(&[0, 1, -1])).unwrap();
        assert_eq!(td.a(1), Poly::constant(rat(1, 3)));
        assert!(td.reconstruction_is_exact());
    }
}
