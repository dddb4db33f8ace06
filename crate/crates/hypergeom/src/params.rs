//! The exact rational parameter bundle shared by every analytic function
//! in the crate, with its structural hypotheses enforced at construction.

use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat_int, rat_to_string, Rat, C64};

/// Parameter bundle `(alpha, beta, mu, q = k/l)`.
///
/// All mod-Z hypotheses are checked exactly on construction, so an
/// `HGParams` value is always admissible:
///
/// - `alpha, beta` rationals in `[0, 1)`,
/// - `mu > 1` with `mu = m/l` congruent to `q = k/l` mod Z and `k != 0`,
/// - `mu` not congruent to `0`, `alpha`, `beta` or `alpha + beta` mod Z,
/// - `alpha0 = 0` (recorded for completeness; any other value is rejected).
#[derive(Clone, PartialEq, Debug)]
pub struct HGParams {
    alpha: Rat,
    beta: Rat,
    mu: Rat,
    q_chi: Rat,
    k: i64,
    l: i64,
    alpha0: Rat,
}

fn frac_part(r: &Rat) -> Rat {
    r - r.floor()
}

impl HGParams {
    /// Build from `alpha`, `beta`, `mu` and the covering degree `l`;
    /// `m = mu * l`, `k = m mod l` and `q = k/l` are derived.
    pub fn new(alpha: Rat, beta: Rat, mu: Rat, l: i64) -> Result<Self> {
        if l < 1 {
            return Err(Error::Hypothesis("l must be a positive integer".into()));
        }
        for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
            if v.is_negative() || *v >= rat_int(1) {
                return Err(Error::Hypothesis(format!(
                    "{name} = {} must be a rational in [0, 1)",
                    rat_to_string(v)
                )));
            }
        }
        let m_rat = &mu * rat_int(l);
        if !m_rat.denom().is_one() {
            return Err(Error::Hypothesis(format!(
                "mu = {} must have the form m/l for the given l = {l}",
                rat_to_string(&mu)
            )));
        }
        let m = m_rat
            .numer()
            .to_i64()
            .ok_or_else(|| Error::Hypothesis("m = mu*l is out of integer range".into()))?;
        if mu <= rat_int(1) {
            return Err(Error::Hypothesis(format!(
                "mu = {} violates mu > 1",
                rat_to_string(&mu)
            )));
        }
        let k = m.rem_euclid(l);
        if k == 0 {
            return Err(Error::Hypothesis(
                "q = k/l must not be congruent to 0 (mod Z), i.e. l must not divide m".into(),
            ));
        }
        let q_chi = Rat::new(k.into(), l.into());
        let fm = frac_part(&mu);
        if fm == frac_part(&alpha) {
            return Err(Error::Hypothesis(format!(
                "mu = {} must not be congruent to alpha (mod Z)",
                rat_to_string(&mu)
            )));
        }
        if fm == frac_part(&beta) {
            return Err(Error::Hypothesis(format!(
                "mu = {} must not be congruent to beta (mod Z)",
                rat_to_string(&mu)
            )));
        }
        if fm == frac_part(&(&alpha + &beta)) {
            return Err(Error::Hypothesis(format!(
                "mu = {} must not be congruent to alpha + beta (mod Z)",
                rat_to_string(&mu)
            )));
        }
        Ok(Self {
            alpha,
            beta,
            mu,
            q_chi,
            k,
            l,
            alpha0: Rat::zero(),
        })
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn beta(&self) -> &Rat {
        &self.beta
    }

    pub fn mu(&self) -> &Rat {
        &self.mu
    }

    pub fn q_chi(&self) -> &Rat {
        &self.q_chi
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn alpha0(&self) -> &Rat {
        &self.alpha0
    }

    /// `m = mu * l` as an integer.
    pub fn m(&self) -> i64 {
        (&self.mu * rat_int(self.l))
            .numer()
            .to_i64()
            .expect("checked at construction")
    }

    /// `mu + shift` as an exact rational; shifts never mutate `mu`, so the
    /// congruence `mu = q (mod Z)` stays checkable.
    pub fn mu_shifted(&self, shift: i64) -> Rat {
        &self.mu + rat_int(shift)
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha.to_f64().expect("alpha in [0,1)")
    }

    pub fn beta_f64(&self) -> f64 {
        self.beta.to_f64().expect("beta in [0,1)")
    }

    pub fn mu_f64(&self) -> f64 {
        self.mu.to_f64().expect("mu is desk-scale")
    }

    /// `xi = exp(2 pi i (mu - alpha - beta))`, computed from the exact
    /// rational exponent before exponentiating.
    pub fn xi(&self) -> C64 {
        let e = &self.mu - &self.alpha - &self.beta;
        unit_root_pow(&e)
    }

    /// Fixed primitive `l`-th root of unity `zeta = exp(2 pi i / l)`.
    pub fn zeta(&self) -> C64 {
        unit_root_pow(&Rat::new(1.into(), self.l.into()))
    }
}

/// `exp(2 pi i r)` for an exact rational `r`, reduced mod 1 first so large
/// numerators cost no accuracy.
pub fn unit_root_pow(r: &Rat) -> C64 {
    let f = r - r.floor();
    let theta = 2.0 * std::f64::consts::PI * f.to_f64().expect("reduced fraction in [0,1)");
    C64::new(theta.cos(), theta.sin())
}

impl std::fmt::Display for HGParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "alpha={}, beta={}, mu={}, q={} (k={}, l={})",
            rat_to_string(&self.alpha),
            rat_to_string(&self.beta),
            rat_to_string(&self.mu),
            rat_to_string(&self.q_chi),
            self.k,
            self.l
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn reference_parameters_admissible() {
        let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2).unwrap();
        assert_eq!(p.m(), 7);
        assert_eq!(p.k(), 1);
        assert_eq!(p.q_chi(), &rat(1, 2));
    }

    #[test]
    fn violated_hypotheses_are_named() {
        // l | m means q = 0
        let e = HGParams::new(rat(1, 3), rat(1, 5), rat_int(3), 1).unwrap_err();
        assert!(e.to_string().contains("congruent to 0"));
        // mu = alpha (mod Z)
        let e = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 3), 3).unwrap_err();
        assert!(e.to_string().contains("alpha"));
        // mu <= 1
        let e = HGParams::new(rat(1, 3), rat(1, 5), rat(1, 2), 2).unwrap_err();
        assert!(e.to_string().contains("mu > 1"));
        // alpha outside [0,1)
        let e = HGParams::new(rat(4, 3), rat(1, 5), rat(7, 2), 2).unwrap_err();
        assert!(e.to_string().contains("[0, 1)"));
    }

    #[test]
    fn xi_from_exact_exponent() {
        let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2).unwrap();
        // mu - alpha - beta = 7/2 - 1/3 - 1/5 = 89/30
        let expect = unit_root_pow(&rat(89, 30));
        assert!((p.xi() - expect).norm() < 1e-15);
        // xi depends only on mu mod Z
        let p2 = HGParams::new(rat(1, 3), rat(1, 5), rat(9, 2), 2).unwrap();
        assert!((p.xi() - p2.xi()).norm() < 1e-15);
    }
}
