//! The named analytic functions of the period and regulator formulas.
//!
//! Local solutions of the Gauss equation in the fiber variable `t`:
//!
//! ```text
//! f1(t) = 2F1(alpha, beta; alpha+beta; t)
//! f2(t) = 2F1(alpha, beta; 1; 1-t)
//! f3(t) = t^(1-alpha-beta) 2F1(1-alpha, 1-beta; 2-alpha-beta; t)
//! ```
//!
//! and the three one-parameter families in the deformation variable
//! `lambda`:
//!
//! ```text
//! F_mu = (1/mu) (lam-1)^mu  2F1(alpha, beta; mu+1; 1-lam)         |1-lam| < 1
//! G_mu = (-1)^mu G(mu, mu+1-alpha-beta; mu+1-alpha, mu+1-beta)
//!           * 2F1(alpha-mu, beta-mu; alpha+beta-mu; lam)          |lam| < 1
//! H_mu = (lam-1)^(mu-1) / ((1-alpha)(1-beta))
//!           * 3F2(1, 1, 1-mu; 2-alpha, 2-beta; 1/(1-lam))         |1-lam| > 1
//! ```
//!
//! All fractional powers are principal-branch. Every family satisfies the
//! same first-order derivative recurrence `d/dlam X_mu = (mu-1) X_{mu-1}`,
//! which is how operator applications obtain exact derivative stacks.

use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::gamma::{beta as beta_fn, gamma_product};
use crate::params::{unit_root_pow, HGParams};
use crate::scalar::{is_nonpositive_integer, pow_principal_rat, rat_int, rat_to_c64, Rat, C64};
use crate::series::{eval_2f1, eval_3f2, TruncationPolicy};

fn c64(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `f1(t)`; needs `|t| < 1` and `alpha + beta` off the series poles.
pub fn eval_f1(alpha: &Rat, beta: &Rat, t: C64, policy: &TruncationPolicy) -> Result<C64> {
    if t.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "f1 needs |t| < 1, got |t| = {}",
            t.norm()
        )));
    }
    let ab = alpha + beta;
    if is_nonpositive_integer(&ab) {
        return Err(Error::Pole(
            "f1 lower parameter alpha+beta is a non-positive integer".into(),
        ));
    }
    let v = eval_2f1(
        rat_to_c64(alpha)?,
        rat_to_c64(beta)?,
        rat_to_c64(&ab)?,
        t,
        policy,
    )?;
    Ok(v.value)
}

/// `f2(t)`; needs `|1 - t| < 1`.
pub fn eval_f2(alpha: &Rat, beta: &Rat, t: C64, policy: &TruncationPolicy) -> Result<C64> {
    let x = c64(1.0) - t;
    if x.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "f2 needs |1-t| < 1, got {}",
            x.norm()
        )));
    }
    let v = eval_2f1(rat_to_c64(alpha)?, rat_to_c64(beta)?, c64(1.0), x, policy)?;
    Ok(v.value)
}

/// `f3(t)` including the principal-branch `t^(1-alpha-beta)` prefactor;
/// needs `|t| < 1`.
pub fn eval_f3(alpha: &Rat, beta: &Rat, t: C64, policy: &TruncationPolicy) -> Result<C64> {
    if t.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "f3 needs |t| < 1, got |t| = {}",
            t.norm()
        )));
    }
    let two_m_ab = rat_int(2) - alpha - beta;
    if is_nonpositive_integer(&two_m_ab) {
        return Err(Error::Pole(
            "f3 lower parameter 2-alpha-beta is a non-positive integer".into(),
        ));
    }
    let exponent = rat_int(1) - alpha - beta;
    let pref = pow_principal_rat(t, &exponent)?;
    let v = eval_2f1(
        rat_to_c64(&(rat_int(1) - alpha))?,
        rat_to_c64(&(rat_int(1) - beta))?,
        rat_to_c64(&two_m_ab)?,
        t,
        policy,
    )?;
    Ok(pref * v.value)
}

/// Residual of the linear relation between the three Kummer solutions,
///
/// ```text
/// B(alpha,beta) f1 + 2 pi i (1 - e^{2 pi i(alpha+beta)})
///   / ((1 - e^{2 pi i alpha})(1 - e^{2 pi i beta})) f2
///   - B(1-alpha, 1-beta) f3  =  0,
/// ```
///
/// normalized by the largest of the three term magnitudes. Valid in the
/// lens `|t| < 1` and `|1-t| < 1` off the branch cut `t <= 0`; the complex
/// branch convention (principal everywhere) was validated on both half
/// planes.
pub fn kummer_residual(alpha: &Rat, beta: &Rat, t: C64, policy: &TruncationPolicy) -> Result<f64> {
    if t.norm() >= 1.0 || (c64(1.0) - t).norm() >= 1.0 {
        return Err(Error::Domain(
            "kummer relation needs t in the lens around (0,1)".into(),
        ));
    }
    if t.im == 0.0 && t.re <= 0.0 {
        return Err(Error::Domain(
            "kummer relation excludes the branch cut t <= 0".into(),
        ));
    }
    let ab = alpha + beta;
    if ab.denom() == &num::BigInt::from(1) {
        return Err(Error::Degenerate(
            "alpha + beta integral: the f2 coefficient degenerates (there f1 = f3)".into(),
        ));
    }
    if is_nonpositive_integer(alpha) || is_nonpositive_integer(beta) {
        return Err(Error::Degenerate(
            "alpha or beta integral degenerates the relation".into(),
        ));
    }
    let e = |r: &Rat| unit_root_pow(r);
    let coef = C64::new(0.0, 2.0 * std::f64::consts::PI) * (c64(1.0) - e(&ab))
        / ((c64(1.0) - e(alpha)) * (c64(1.0) - e(beta)));
    let t1 = beta_fn(rat_to_c64(alpha)?, rat_to_c64(beta)?)? * eval_f1(alpha, beta, t, policy)?;
    let t2 = coef * eval_f2(alpha, beta, t, policy)?;
    let t3 = beta_fn(
        rat_to_c64(&(rat_int(1) - alpha))?,
        rat_to_c64(&(rat_int(1) - beta))?,
    )? * eval_f3(alpha, beta, t, policy)?;
    let scale = t1.norm().max(t2.norm()).max(t3.norm()).max(1e-300);
    Ok((t1 + t2 - t3).norm() / scale)
}

/// A value together with its series truncation data.
#[derive(Clone, Copy, Debug)]
pub struct EvalDetail {
    pub value: C64,
    pub est_error: f64,
    pub terms_used: usize,
}

impl EvalDetail {
    fn scaled(pref: C64, v: crate::series::SeriesValue) -> Self {
        Self {
            value: pref * v.value,
            est_error: pref.norm() * v.est_error,
            terms_used: v.terms_used,
        }
    }
}

/// `F_{mu+shift}(lam)`.
pub fn eval_f_mu(p: &HGParams, shift: i64, lam: C64, policy: &TruncationPolicy) -> Result<C64> {
    Ok(eval_f_mu_detailed(p, shift, lam, policy)?.value)
}

/// `F_{mu+shift}(lam)` with the truncation bound and term count.
pub fn eval_f_mu_detailed(
    p: &HGParams,
    shift: i64,
    lam: C64,
    policy: &TruncationPolicy,
) -> Result<EvalDetail> {
    let x = c64(1.0) - lam;
    if x.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "F_mu needs |1-lam| < 1, got {} at lam = {lam}",
            x.norm()
        )));
    }
    let mu = p.mu_shifted(shift);
    if mu == rat_int(0) {
        return Err(Error::Degenerate("F_mu prefactor 1/mu with mu = 0".into()));
    }
    let pref = pow_principal_rat(lam - c64(1.0), &mu)? / rat_to_c64(&mu)?;
    if pref == c64(0.0) {
        return Ok(EvalDetail {
            value: c64(0.0),
            est_error: 0.0,
            terms_used: 0,
        });
    }
    let v = eval_2f1(
        rat_to_c64(p.alpha())?,
        rat_to_c64(p.beta())?,
        rat_to_c64(&(&mu + rat_int(1)))?,
        x,
        policy,
    )?;
    Ok(EvalDetail::scaled(pref, v))
}

/// The gamma-product prefactor of `G_mu` without the `(-1)^mu` phase.
pub fn g_mu_gamma_prefactor(p: &HGParams, shift: i64) -> Result<C64> {
    let mu = p.mu_shifted(shift);
    let (alpha, beta) = (p.alpha(), p.beta());
    let one = rat_int(1);
    for (what, z) in [
        ("mu", mu.clone()),
        ("mu+1-alpha-beta", &mu + &one - alpha - beta),
        ("mu+1-alpha", &mu + &one - alpha),
        ("mu+1-beta", &mu + &one - beta),
    ] {
        if is_nonpositive_integer(&z) {
            return Err(Error::Pole(format!(
                "G_mu gamma factor {what} is a non-positive integer"
            )));
        }
    }
    gamma_product(
        &[rat_to_c64(&mu)?, rat_to_c64(&(&mu + &one - alpha - beta))?],
        &[
            rat_to_c64(&(&mu + &one - alpha))?,
            rat_to_c64(&(&mu + &one - beta))?,
        ],
    )
}

/// `G_{mu+shift}(lam)`.
pub fn eval_g_mu(p: &HGParams, shift: i64, lam: C64, policy: &TruncationPolicy) -> Result<C64> {
    Ok(eval_g_mu_detailed(p, shift, lam, policy)?.value)
}

/// `G_{mu+shift}(lam)` with the truncation bound and term count.
pub fn eval_g_mu_detailed(
    p: &HGParams,
    shift: i64,
    lam: C64,
    policy: &TruncationPolicy,
) -> Result<EvalDetail> {
    if lam.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "G_mu needs |lam| < 1, got {} at lam = {lam}",
            lam.norm()
        )));
    }
    let mu = p.mu_shifted(shift);
    let (alpha, beta) = (p.alpha(), p.beta());
    let lower = alpha + beta - &mu;
    if is_nonpositive_integer(&lower) {
        return Err(Error::Degenerate(
            "G_mu lower parameter alpha+beta-mu is a non-positive integer".into(),
        ));
    }
    let phase = pow_principal_rat(c64(-1.0), &mu)?;
    let pref = phase * g_mu_gamma_prefactor(p, shift)?;
    let v = eval_2f1(
        rat_to_c64(&(alpha - &mu))?,
        rat_to_c64(&(beta - &mu))?,
        rat_to_c64(&lower)?,
        lam,
        policy,
    )?;
    Ok(EvalDetail::scaled(pref, v))
}

/// `H_{mu+shift}(lam)`.
pub fn eval_h_mu(p: &HGParams, shift: i64, lam: C64, policy: &TruncationPolicy) -> Result<C64> {
    Ok(eval_h_mu_detailed(p, shift, lam, policy)?.value)
}

/// `H_{mu+shift}(lam)` with the truncation bound and term count.
pub fn eval_h_mu_detailed(
    p: &HGParams,
    shift: i64,
    lam: C64,
    policy: &TruncationPolicy,
) -> Result<EvalDetail> {
    let om = c64(1.0) - lam;
    if om.norm() <= 1.0 {
        return Err(Error::Domain(format!(
            "H_mu needs |1-lam| > 1, got {} at lam = {lam}",
            om.norm()
        )));
    }
    let mu = p.mu_shifted(shift);
    let (alpha, beta) = (p.alpha(), p.beta());
    let pref = pow_principal_rat(lam - c64(1.0), &(&mu - rat_int(1)))?
        / (rat_to_c64(&(rat_int(1) - alpha))? * rat_to_c64(&(rat_int(1) - beta))?);
    let v = eval_3f2(
        [c64(1.0), c64(1.0), rat_to_c64(&(rat_int(1) - &mu))?],
        [
            rat_to_c64(&(rat_int(2) - alpha))?,
            rat_to_c64(&(rat_int(2) - beta))?,
        ],
        c64(1.0) / om,
        policy,
    )?;
    Ok(EvalDetail::scaled(pref, v))
}

/// Falling product `(mu-1)(mu-2)...(mu-k)` so that the k-th derivative of
/// any of the families is `fall * X_{mu-k}`.
pub fn falling(mu: &Rat, k: usize) -> Rat {
    let mut acc = rat_int(1);
    for j in 1..=k {
        acc *= mu - rat_int(j as i64);
    }
    acc
}

/// Which of the three lambda-families a derivative stack refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    FMu,
    GMu,
    HMu,
}

impl Family {
    pub fn eval(
        self,
        p: &HGParams,
        shift: i64,
        lam: C64,
        policy: &TruncationPolicy,
    ) -> Result<C64> {
        match self {
            Family::FMu => eval_f_mu(p, shift, lam, policy),
            Family::GMu => eval_g_mu(p, shift, lam, policy),
            Family::HMu => eval_h_mu(p, shift, lam, policy),
        }
    }
}

/// Exact derivative stack `[X, X', ..., X^(k)]` of the family member at
/// level `mu + shift`, obtained from the recurrence rather than numerical
/// differentiation.
pub fn deriv_stack(
    fam: Family,
    p: &HGParams,
    shift: i64,
    lam: C64,
    k: usize,
    policy: &TruncationPolicy,
) -> Result<Vec<C64>> {
    let mu = p.mu_shifted(shift);
    let mut out = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let fall = rat_to_c64(&falling(&mu, j))?;
        out.push(fall * fam.eval(p, shift - j as i64, lam, policy)?);
    }
    Ok(out)
}

/// Apply a `d/dlambda`-basis operator to a family member using the exact
/// derivative stack.
pub fn apply_op(
    op: &DiffOperator,
    fam: Family,
    p: &HGParams,
    shift: i64,
    lam: C64,
    policy: &TruncationPolicy,
) -> Result<C64> {
    let k = op.order().unwrap_or(0);
    let stack = deriv_stack(fam, p, shift, lam, k, policy)?;
    op.apply_with_derivatives(lam, &stack)
}

/// Residual of the second-order annihilator on a family member, relative
/// to the largest contributing term. For `F` and `G` this should vanish;
/// for `H` the caller compares against the explicit inhomogeneity.
pub fn annihilator_residual(
    fam: Family,
    p: &HGParams,
    lam: C64,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let op = crate::diffop::build_d(p);
    let stack = deriv_stack(fam, p, 0, lam, 2, policy)?;
    let value = op.apply_with_derivatives(lam, &stack)?;
    let scale = op_term_scale(&op, lam, &stack);
    Ok(value.norm() / scale)
}

/// Largest single term magnitude of an operator application, the honest
/// normalization for cancellation residuals.
pub fn op_term_scale(op: &DiffOperator, lam: C64, stack: &[C64]) -> f64 {
    let mut scale = 1e-300f64;
    for (k, s) in stack.iter().enumerate().take(op.order().unwrap_or(0) + 1) {
        let c = op.coeff(k);
        if !c.is_zero() {
            scale = scale.max((c.eval_c64(lam) * s).norm());
        }
    }
    scale
}

/// Spectrally accurate Cauchy-integral derivative: trapezoid rule on a
/// circle of radius `r` with `m` nodes.
pub fn cauchy_derivative<F>(f: F, lam: C64, r: f64, m: usize) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    cauchy_derivative_branchful(f, lam, r, m, C64::new(1.0, 0.0))
}

/// Cauchy derivative of a function whose principal-branch evaluator jumps
/// across the half-line `lam < 1` (the cut of `(lam-1)^p`). Samples on the
/// opposite side of the real axis from the expansion point are rescaled by
/// `cut_phase = e^{2 pi i p}` so the whole circle sees one function
/// element (the one continued from the side of `lam`; a real `lam` counts
/// as the upper edge).
pub fn cauchy_derivative_branchful<F>(
    f: F,
    lam: C64,
    r: f64,
    m: usize,
    cut_phase: C64,
) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    let crossing = cut_phase != C64::new(1.0, 0.0) && lam.im.abs() < r && lam.re < 1.0 + r;
    let from_above = lam.im >= 0.0;
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..m {
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (m as f64);
        let e = C64::new(theta.cos(), theta.sin());
        let z = lam + r * e;
        let mut v = f(z)?;
        if crossing && z.re < 1.0 {
            if from_above && z.im < 0.0 {
                v *= cut_phase;
            } else if !from_above && z.im > 0.0 {
                v /= cut_phase;
            }
        }
        acc += v / e;
    }
    Ok(acc / (m as f64 * r))
}

/// The continuation phase `e^{2 pi i mu}` picked up by the
/// `(lam-1)^power` prefactor of a family across its principal cut
/// (trivial for `G`, whose prefactor does not involve `lam`).
pub fn family_cut_phase(fam: Family, p: &HGParams) -> C64 {
    match fam {
        Family::GMu => C64::new(1.0, 0.0),
        // F carries (lam-1)^mu, H carries (lam-1)^(mu-1); the phases agree
        Family::FMu | Family::HMu => unit_root_pow(p.mu()),
    }
}

/// Derivative of a family member, branch-aware: circle differentiation
/// with the cut-phase correction wherever the circle would straddle the
/// principal cut.
pub fn family_derivative(
    fam: Family,
    p: &HGParams,
    shift: i64,
    lam: C64,
    r: f64,
    m: usize,
    policy: &TruncationPolicy,
) -> Result<C64> {
    let phase = family_cut_phase(fam, p);
    cauchy_derivative_branchful(|z| fam.eval(p, shift, z, policy), lam, r, m, phase)
}

/// Default differentiation radius: min(0.05, half distance to the domain
/// boundary).
pub fn default_radius(boundary_distance: f64) -> f64 {
    (0.05f64).min(boundary_distance / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn pol() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    fn params() -> HGParams {
        HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2).unwrap()
    }

    #[test]
    fn f1_f2_normalizations() {
        let (a, b) = (rat(1, 4), rat(1, 3));
        assert_eq!(eval_f1(&a, &b, c64(0.0), &pol()).unwrap(), c64(1.0));
        assert_eq!(eval_f2(&a, &b, c64(1.0), &pol()).unwrap(), c64(1.0));
    }

    #[test]
    fn f3_characteristic_exponent() {
        let (a, b) = (rat(1, 4), rat(1, 3));
        // f3(t) t^(alpha+beta-1) -> 1 as t -> 0+
        for &t in &[0.1, 0.01] {
            let v = eval_f3(&a, &b, c64(t), &pol()).unwrap();
            let norm = v * c64(t.powf(1.0 / 4.0 + 1.0 / 3.0 - 1.0));
            assert!((norm - c64(1.0)).norm() < 0.05);
        }
        // log-log slope between t = 1e-2 and 1e-3 pins the exponent; the
        // linear series term contributes ~ c * 1e-2 / ln 10 to the slope,
        // so the 1e-3 window needs c = (1-a)(1-b)/(2-a-b) small enough
        let (a, b) = (rat(3, 4), rat(2, 3));
        let v2 = eval_f3(&a, &b, c64(1e-2), &pol()).unwrap().norm();
        let v3 = eval_f3(&a, &b, c64(1e-3), &pol()).unwrap().norm();
        let slope = (v2.ln() - v3.ln()) / ((1e-2f64).ln() - (1e-3f64).ln());
        assert!(
            (slope - (1.0 - 0.75 - 2.0 / 3.0)).abs() < 1e-3,
            "slope {slope}"
        );
        // and for the first pair on a smaller window
        let (a, b) = (rat(1, 4), rat(1, 3));
        let v2 = eval_f3(&a, &b, c64(1e-3), &pol()).unwrap().norm();
        let v3 = eval_f3(&a, &b, c64(1e-4), &pol()).unwrap().norm();
        let slope = (v2.ln() - v3.ln()) / ((1e-3f64).ln() - (1e-4f64).ln());
        assert!(
            (slope - (1.0 - 0.25 - 1.0 / 3.0)).abs() < 1e-3,
            "slope {slope}"
        );
    }

    #[test]
    fn kummer_relation_residuals() {
        let r = kummer_residual(&rat(1, 4), &rat(1, 3), c64(0.5), &pol()).unwrap();
        assert!(r < 1e-10, "residual {r}");
        let r = kummer_residual(&rat(1, 5), &rat(2, 5), C64::new(0.3, 0.1), &pol()).unwrap();
        assert!(r < 1e-10, "residual {r}");
    }

    #[test]
    fn kummer_degenerate_sum_rejected_and_f1_equals_f3() {
        let (a, b) = (rat(1, 4), rat(3, 4)); // alpha + beta = 1
        assert!(matches!(
            kummer_residual(&a, &b, c64(0.5), &pol()),
            Err(Error::Degenerate(_))
        ));
        // at alpha+beta = 1 the f1 and f3 series coincide
        let t = c64(0.37);
        let v1 = eval_f1(&a, &b, t, &pol()).unwrap();
        let v3 = eval_f3(&a, &b, t, &pol()).unwrap();
        assert!((v1 - v3).norm() < 1e-12);
    }

    #[test]
    fn f_mu_values() {
        let p = params();
        // vanishes at lam = 1 through the (lam-1)^mu factor
        assert_eq!(eval_f_mu(&p, 0, c64(1.0), &pol()).unwrap(), c64(0.0));
        // frozen from the Euler-integral quadrature oracle
        let v = eval_f_mu(&p, 0, c64(0.5), &pol()).unwrap();
        let expect = C64::new(0.0, -0.02545668372495648);
        assert!((v - expect).norm() < 1e-14, "got {v}");
    }

    #[test]
    fn g_mu_prefactor_fixture() {
        let p = params();
        let g = g_mu_gamma_prefactor(&p, 0).unwrap();
        assert!((g - c64(0.2908363818054714)).norm() < 1e-13, "got {g}");
    }

    #[test]
    fn derivative_recurrences_via_cauchy() {
        let p = params();
        let mu = p.mu_f64();
        for (fam, lam) in [
            (Family::FMu, c64(0.6)),
            (Family::GMu, c64(0.4)),
            (Family::HMu, c64(-1.3)),
            (Family::HMu, C64::new(2.4, 0.3)),
        ] {
            let d = family_derivative(fam, &p, 0, lam, 0.05, 32, &pol()).unwrap();
            let want = c64(mu - 1.0) * fam.eval(&p, -1, lam, &pol()).unwrap();
            assert!(
                (d - want).norm() / want.norm() < 1e-9,
                "{fam:?} at {lam}: {d} vs {want}"
            );
        }
    }

    #[test]
    fn branchful_derivative_matches_plain_off_the_cut() {
        // away from the real axis the correction must be inert
        let p = params();
        let lam = C64::new(-1.3, 0.6);
        let plain = cauchy_derivative(|z| eval_h_mu(&p, 0, z, &pol()), lam, 0.05, 32).unwrap();
        let branchful = family_derivative(Family::HMu, &p, 0, lam, 0.05, 32, &pol()).unwrap();
        assert!((plain - branchful).norm() < 1e-13);
    }

    #[test]
    fn cauchy_derivative_polynomials() {
        let d = cauchy_derivative(|_| Ok(c64(1.0)), c64(0.3), 0.05, 32).unwrap();
        assert!(d.norm() < 1e-13);
        let d = cauchy_derivative(|z| Ok(z * z), c64(3.0), 0.05, 32).unwrap();
        assert!((d - c64(6.0)).norm() < 1e-12);
    }

    #[test]
    fn annihilator_kills_f_and_g() {
        let p = params();
        assert!(annihilator_residual(Family::FMu, &p, c64(0.5), &pol()).unwrap() < 1e-11);
        assert!(annihilator_residual(Family::GMu, &p, c64(0.4), &pol()).unwrap() < 1e-11);
    }

    #[test]
    fn annihilator_on_h_gives_inhomogeneity() {
        // D H_mu = -(lam-1)^(mu-1)
        let p = params();
        let op = crate::diffop::build_d(&p);
        for lam in [C64::new(2.4, 0.3), c64(-1.5)] {
            let stack = deriv_stack(Family::HMu, &p, 0, lam, 2, &pol()).unwrap();
            let got = op.apply_with_derivatives(lam, &stack).unwrap();
            let want = -pow_principal_rat(lam - c64(1.0), &(p.mu() - rat_int(1))).unwrap();
            assert!(
                (got - want).norm() / want.norm() < 1e-9,
                "at {lam}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn f1_f3_form_a_basis() {
        let (a, b) = (rat(1, 3), rat(1, 5));
        let (t1, t2) = (c64(0.2), c64(0.55));
        let m = [
            eval_f1(&a, &b, t1, &pol()).unwrap(),
            eval_f3(&a, &b, t1, &pol()).unwrap(),
            eval_f1(&a, &b, t2, &pol()).unwrap(),
            eval_f3(&a, &b, t2, &pol()).unwrap(),
        ];
        let det = m[0] * m[3] - m[1] * m[2];
        let scale = m.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        assert!(det.norm() / (scale * scale) > 1e-10);
    }

    #[test]
    fn domain_errors() {
        let p = params();
        assert!(matches!(
            eval_f_mu(&p, 0, c64(2.5), &pol()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_g_mu(&p, 0, c64(1.5), &pol()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_h_mu(&p, 0, c64(0.5), &pol()),
            Err(Error::Domain(_))
        ));
    }
}
