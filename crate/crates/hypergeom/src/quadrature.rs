//! Tanh-sinh (double-exponential) quadrature on `(0, 1)` with explicit
//! endpoint exponents, and the integral-representation checks built on it.
//!
//! This module is the independent oracle for the series evaluators: it
//! shares no code path with them beyond the gamma function.

use crate::error::{Error, Result};
use crate::functions::eval_h_mu;
use crate::gamma::beta as beta_fn;
use crate::params::HGParams;
use crate::scalar::{pow_principal, rat_int, rat_to_c64, rat_to_f64, Rat, C64};
use crate::series::{eval_2f1, eval_3f2, TruncationPolicy};

/// Integrand `t^p (1-t)^q * smooth(t)` on `(0, 1)`.
///
/// The smooth part receives both `t` and `1 - t`, each computed without
/// cancellation, so it can form endpoint-sensitive expressions itself.
pub struct WeightedIntegrand<'a> {
    pub exponent_left: f64,
    pub exponent_right: f64,
    pub smooth: Box<dyn Fn(f64, f64) -> Result<C64> + Sync + 'a>,
}

impl<'a> WeightedIntegrand<'a> {
    pub fn new(
        exponent_left: f64,
        exponent_right: f64,
        smooth: impl Fn(f64, f64) -> Result<C64> + Sync + 'a,
    ) -> Result<Self> {
        if exponent_left <= -1.0 || exponent_right <= -1.0 {
            return Err(Error::Invalid(format!(
                "endpoint exponents ({exponent_left}, {exponent_right}) must exceed -1 for integrability"
            )));
        }
        Ok(Self {
            exponent_left,
            exponent_right,
            smooth: Box::new(smooth),
        })
    }
}

const MAX_LEVELS: usize = 12;

/// Tanh-sinh quadrature of a weighted integrand; the error estimate is the
/// last level-to-level difference.
pub fn integrate_01(w: &WeightedIntegrand, tol: f64) -> Result<(C64, f64)> {
    // contribution of the abscissa at trapezoid parameter u (both mirror
    // nodes), with t and 1-t double-exponentially accurate
    let eval_pair = |u: f64| -> Result<C64> {
        let y = 0.5 * std::f64::consts::PI * u.sinh();
        if y > 350.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        // x = tanh(y); near = (1 - |x|)/2 without cancellation
        let near = 1.0 / (1.0 + (2.0 * y.abs()).exp()); // = min(t, 1-t)
        let far = 1.0 - near;
        let sech = 1.0 / y.cosh();
        let weight = 0.25 * std::f64::consts::PI * u.cosh() * sech * sech;
        if weight < 1e-290 {
            return Ok(C64::new(0.0, 0.0));
        }
        let mut acc = C64::new(0.0, 0.0);
        // node with t = near (left endpoint side)
        acc += near.powf(w.exponent_left) * far.powf(w.exponent_right) * (w.smooth)(near, far)?;
        // mirror node with t = far
        acc += far.powf(w.exponent_left) * near.powf(w.exponent_right) * (w.smooth)(far, near)?;
        Ok(acc * weight)
    };

    // level 0: h = 1, nodes u = 0, 1, 2, ...
    let mut h = 1.0f64;
    let center = {
        let y = 0.0f64;
        let _ = y;
        let weight = 0.25 * std::f64::consts::PI;
        weight * (w.smooth)(0.5, 0.5)? * 0.5f64.powf(w.exponent_left + w.exponent_right) * 2.0
    };
    // the u = 0 node has no mirror partner; eval_pair would double it
    let mut total = center / 2.0;
    let mut k = 1usize;
    loop {
        let c = eval_pair(k as f64 * h)?;
        total += c;
        if c.norm() < 1e-280 && k > 4 {
            break;
        }
        k += 1;
        if k > 400 {
            break;
        }
    }
    let mut value = total * h;
    let mut est = f64::INFINITY;

    for _level in 1..=MAX_LEVELS {
        h *= 0.5;
        // new nodes at odd multiples of the refined h
        let mut add = C64::new(0.0, 0.0);
        let mut k = 1usize;
        loop {
            let c = eval_pair(k as f64 * h)?;
            add += c;
            if c.norm() < 1e-280 && k > 8 {
                break;
            }
            k += 2;
            if k > 6000 {
                break;
            }
        }
        let new_value = total * h + add * h;
        total += add;
        est = (new_value - value).norm();
        value = new_value;
        if est <= tol * value.norm().max(1.0) {
            return Ok((value, est));
        }
    }
    Err(Error::ToleranceNotMet {
        requested: tol,
        achieved: est,
    })
}

/// Residual of the Euler integral representation of the Gauss function,
///
/// ```text
/// int_0^1 (1 - x t)^(-a) t^(b-1) (1-t)^(c-b-1) dt = B(b, c-b) 2F1(a,b;c;x),
/// ```
///
/// normalized by the right-hand side.
pub fn verify_int_rep_2f1(a: &Rat, b: &Rat, c: &Rat, x: C64, tol: f64) -> Result<f64> {
    let bf = rat_to_f64(b)?;
    let cbf = rat_to_f64(&(c - b))?;
    if bf <= 0.0 || cbf <= 0.0 {
        return Err(Error::Domain("needs Re b > 0 and Re(c-b) > 0".into()));
    }
    if x.norm() >= 1.0 {
        return Err(Error::Domain("needs |x| < 1".into()));
    }
    let af = rat_to_c64(a)?;
    let integrand = WeightedIntegrand::new(bf - 1.0, cbf - 1.0, move |t, _omt| {
        Ok(pow_principal(C64::new(1.0, 0.0) - x * t, -af))
    })?;
    let (lhs, _) = integrate_01(&integrand, tol)?;
    let policy = TruncationPolicy::default();
    let rhs = beta_fn(rat_to_c64(b)?, rat_to_c64(&(c - b))?)?
        * eval_2f1(af, rat_to_c64(b)?, rat_to_c64(c)?, x, &policy)?.value;
    Ok((lhs - rhs).norm() / rhs.norm().max(1e-300))
}

/// Residual of the iterated Euler representation
///
/// ```text
/// int_0^1 2F1(a,b;d;x t) t^(c-1) (1-t)^(e-c-1) dt = B(c, e-c) 3F2(a,b,c;d,e;x).
/// ```
pub fn verify_int_rep_3f2(
    a: &Rat,
    b: &Rat,
    c: &Rat,
    d: &Rat,
    e: &Rat,
    x: C64,
    tol: f64,
) -> Result<f64> {
    let cf = rat_to_f64(c)?;
    let ecf = rat_to_f64(&(e - c))?;
    if cf <= 0.0 || ecf <= 0.0 {
        return Err(Error::Domain("needs Re c > 0 and Re(e-c) > 0".into()));
    }
    if x.norm() >= 1.0 {
        return Err(Error::Domain("needs |x| < 1".into()));
    }
    let policy = TruncationPolicy::default();
    let (af, bf, df) = (rat_to_c64(a)?, rat_to_c64(b)?, rat_to_c64(d)?);
    let integrand = WeightedIntegrand::new(cf - 1.0, ecf - 1.0, move |t, _omt| {
        Ok(eval_2f1(af, bf, df, x * t, &policy)?.value)
    })?;
    let (lhs, _) = integrate_01(&integrand, tol)?;
    let rhs = beta_fn(rat_to_c64(c)?, rat_to_c64(&(e - c))?)?
        * eval_3f2([af, bf, rat_to_c64(c)?], [df, rat_to_c64(e)?], x, &policy)?.value;
    Ok((lhs - rhs).norm() / rhs.norm().max(1e-300))
}

/// The analytic core of `f3` with the endpoint power stripped:
/// `2F1(1-alpha, 1-beta; 2-alpha-beta; t)` evaluated stably on all of
/// `(0, 1)` (direct series on the left, logarithmic connection near 1).
pub fn f3_core(p: &HGParams, t: f64, one_minus_t: f64) -> Result<C64> {
    let a = rat_to_c64(&(rat_int(1) - p.alpha()))?;
    let b = rat_to_c64(&(rat_int(1) - p.beta()))?;
    let policy = TruncationPolicy::default();
    if t <= 0.5 {
        Ok(eval_2f1(a, b, a + b, C64::new(t, 0.0), &policy)?.value)
    } else {
        eval_2f1_log_case_stable(a, b, one_minus_t, &policy)
    }
}

/// Log-case Gauss value with `1 - z` handed in directly so nothing is lost
/// near the endpoint.
fn eval_2f1_log_case_stable(
    a: C64,
    b: C64,
    one_minus_z: f64,
    policy: &TruncationPolicy,
) -> Result<C64> {
    Ok(crate::series::eval_2f1_log_case_with_w(a, b, C64::new(one_minus_z, 0.0), policy)?.value)
}

/// Residual of the Euler-type integral for `H_mu`,
///
/// ```text
/// B(1-alpha, 1-beta) int_0^1 (lam-t)^(mu-1) t^(1-alpha-beta)
///     2F1(1-alpha, 1-beta; 2-alpha-beta; t) dt  =  H_mu(lam),
/// ```
///
/// with the principal branch of `(lam-t)^(mu-1)`; `lam` must stay off
/// `[0, 1]` and satisfy `|1-lam| > 1` so the series side applies.
pub fn verify_h_integral(p: &HGParams, lam: C64, tol: f64) -> Result<f64> {
    let lhs = h_mu_by_quadrature(p, lam, tol)?;
    let rhs = eval_h_mu(p, 0, lam, &TruncationPolicy::default())?;
    Ok((lhs - rhs).norm() / rhs.norm().max(1e-300))
}

/// The quadrature side of the `H_mu` identity on its own.
pub fn h_mu_by_quadrature(p: &HGParams, lam: C64, tol: f64) -> Result<C64> {
    if (C64::new(1.0, 0.0) - lam).norm() <= 1.0 {
        return Err(Error::Domain("needs |1-lam| > 1".into()));
    }
    if lam.im == 0.0 && (0.0..=1.0).contains(&lam.re) {
        return Err(Error::Domain("lam must stay off the segment [0, 1]".into()));
    }
    let exponent_left = rat_to_f64(&(rat_int(1) - p.alpha() - p.beta()))?;
    let mu_minus_1 = rat_to_c64(&(p.mu() - rat_int(1)))?;
    let integrand = WeightedIntegrand::new(exponent_left, 0.0, move |t, omt| {
        let kernel = pow_principal(lam - C64::new(t, 0.0), mu_minus_1);
        Ok(kernel * f3_core(p, t, omt)?)
    })?;
    let (integral, _) = integrate_01(&integrand, tol)?;
    let b = beta_fn(
        rat_to_c64(&(rat_int(1) - p.alpha()))?,
        rat_to_c64(&(rat_int(1) - p.beta()))?,
    )?;
    Ok(b * integral)
}

/// `F_mu(lam)` by the Euler-type integral
/// `(lam-1)^mu int_0^1 (1-u)^(mu-1) 2F1(alpha, beta; 1; (1-lam)u) du`,
/// the specialization of the period sum to the identity operator data.
pub fn f_mu_by_quadrature(p: &HGParams, lam: C64, tol: f64) -> Result<C64> {
    if (C64::new(1.0, 0.0) - lam).norm() >= 1.0 {
        return Err(Error::Domain("needs |1-lam| < 1".into()));
    }
    let policy = TruncationPolicy::default();
    let (a, b) = (rat_to_c64(p.alpha())?, rat_to_c64(p.beta())?);
    let x = C64::new(1.0, 0.0) - lam;
    let mu_f = rat_to_f64(p.mu())?;
    let integrand = WeightedIntegrand::new(0.0, mu_f - 1.0, move |u, _| {
        Ok(eval_2f1(a, b, C64::new(1.0, 0.0), x * u, &policy)?.value)
    })?;
    let (integral, _) = integrate_01(&integrand, tol)?;
    let pref = crate::scalar::pow_principal_rat(lam - C64::new(1.0, 0.0), p.mu())?;
    Ok(pref * integral)
}

/// `Q_m(lam)` by quadrature:
///
/// ```text
/// (1/l) B(1-alpha, 1-beta)
///   int_0^1 (lam-t)^(mu-1) (p0 + p1 d/dt) [ t^(1-alpha-beta) core(t) ] dt
/// ```
///
/// after integrating the `p1` term by parts (the boundary terms vanish
/// because `t(1-t)` divides `p1`), so the `core` derivative never needs
/// to be evaluated:
///
/// ```text
/// int_0^1 [ (lam-t)^(mu-1)(p0 - p1') + (mu-1)(lam-t)^(mu-2) p1 ]
///         t^(1-alpha-beta) core(t) dt.
/// ```
pub fn q_m_by_quadrature(
    p: &HGParams,
    td: &crate::theta::ThetaData,
    m: i64,
    lam: C64,
    tol: f64,
) -> Result<C64> {
    if (C64::new(1.0, 0.0) - lam).norm() <= 1.0 {
        return Err(Error::Domain("needs |1-lam| > 1".into()));
    }
    if lam.im == 0.0 && (0.0..=1.0).contains(&lam.re) {
        return Err(Error::Domain("lam must stay off the segment [0, 1]".into()));
    }
    let level = crate::periods::params_at_level(p, m)?;
    let mu = level.mu();
    let exponent_left = rat_to_f64(&(rat_int(1) - p.alpha() - p.beta()))?;
    let mu_m1 = rat_to_c64(&(mu - rat_int(1)))?;
    let mu_m2 = rat_to_c64(&(mu - rat_int(2)))?;
    let p0 = td.p0().clone();
    let p1 = td.p1().clone();
    let p1d = p1.derivative();
    let levelc = level.clone();
    let integrand = WeightedIntegrand::new(exponent_left, 0.0, move |t, omt| {
        let tc = C64::new(t, 0.0);
        let k1 = pow_principal(lam - tc, mu_m1);
        let k2 = pow_principal(lam - tc, mu_m2);
        let weight = k1 * (p0.eval_c64(tc) - p1d.eval_c64(tc)) + mu_m1 * k2 * p1.eval_c64(tc);
        Ok(weight * f3_core(&levelc, t, omt)?)
    })?;
    let (integral, _) = integrate_01(&integrand, tol)?;
    let b = beta_fn(
        rat_to_c64(&(rat_int(1) - p.alpha()))?,
        rat_to_c64(&(rat_int(1) - p.beta()))?,
    )?;
    Ok(b * integral / (p.l() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn unit_integral() {
        let w = WeightedIntegrand::new(0.0, 0.0, |_, _| Ok(c(1.0))).unwrap();
        let (v, _) = integrate_01(&w, 1e-12).unwrap();
        assert!((v - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn endpoint_singularity() {
        // int_0^1 t^(-1/2) dt = 2
        let w = WeightedIntegrand::new(-0.5, 0.0, |_, _| Ok(c(1.0))).unwrap();
        let (v, _) = integrate_01(&w, 1e-12).unwrap();
        assert!((v - c(2.0)).norm() < 1e-12);
    }

    #[test]
    fn beta_integrals() {
        // int t^(c-1)(1-t)^(e-c-1) = B(c, e-c) at (0.7, 1.4)
        let w = WeightedIntegrand::new(-0.3, 0.4, |_, _| Ok(c(1.0))).unwrap();
        let (v, _) = integrate_01(&w, 1e-12).unwrap();
        let b = beta_fn(c(0.7), c(1.4)).unwrap();
        assert!((v - b).norm() / b.norm() < 1e-11);
        // B(1/3, 2/3) = 2 pi / sqrt(3)
        let w = WeightedIntegrand::new(-2.0 / 3.0, -1.0 / 3.0, |_, _| Ok(c(1.0))).unwrap();
        let (v, _) = integrate_01(&w, 1e-12).unwrap();
        assert!((v - c(3.6275987284684357)).norm() < 1e-11);
    }

    #[test]
    fn integrability_gate() {
        assert!(WeightedIntegrand::new(-1.0, 0.0, |_, _| Ok(c(1.0))).is_err());
        assert!(WeightedIntegrand::new(0.0, -1.2, |_, _| Ok(c(1.0))).is_err());
    }

    #[test]
    fn int_rep_2f1_cases() {
        let r = verify_int_rep_2f1(&rat(1, 3), &rat(1, 2), &rat(3, 2), c(0.4), 1e-11).unwrap();
        assert!(r < 1e-9, "residual {r}");
        // x = 0: both sides are B(b, c-b)
        let r = verify_int_rep_2f1(&rat(1, 3), &rat(1, 2), &rat(3, 2), c(0.0), 1e-12).unwrap();
        assert!(r < 1e-12);
        let r = verify_int_rep_2f1(
            &rat(1, 3),
            &rat(1, 2),
            &rat(3, 2),
            C64::new(0.3, 0.2),
            1e-11,
        )
        .unwrap();
        assert!(r < 1e-9, "residual {r}");
        assert!(verify_int_rep_2f1(&rat(1, 3), &rat(-1, 2), &rat(3, 2), c(0.4), 1e-10).is_err());
    }

    #[test]
    fn int_rep_3f2_cases() {
        let r = verify_int_rep_3f2(
            &rat(1, 5),
            &rat(2, 5),
            &rat(3, 5),
            &rat(11, 10),
            &rat(13, 10),
            c(0.0),
            1e-12,
        )
        .unwrap();
        assert!(r < 1e-12);
        // the reduction used by the period sum: (alpha, beta, 1; 1, mu+1)
        let r = verify_int_rep_3f2(
            &rat(1, 3),
            &rat(1, 5),
            &rat(1, 1),
            &rat(1, 1),
            &rat(9, 2),
            c(0.45),
            1e-11,
        )
        .unwrap();
        assert!(r < 1e-9, "residual {r}");
        let r = verify_int_rep_3f2(
            &rat(1, 5),
            &rat(2, 5),
            &rat(3, 5),
            &rat(11, 10),
            &rat(13, 10),
            c(0.25),
            1e-11,
        )
        .unwrap();
        assert!(r < 1e-9, "residual {r}");
    }

    #[test]
    fn h_integral_reference_points() {
        let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2).unwrap();
        let r = verify_h_integral(&p, c(-1.5), 1e-10).unwrap();
        assert!(r < 1e-8, "residual {r}");
        let r = verify_h_integral(&p, C64::new(2.6, 0.4), 1e-10).unwrap();
        assert!(r < 1e-8, "residual {r}");
        // segment [0,1] and the inner disc are rejected
        assert!(verify_h_integral(&p, c(0.5), 1e-10).is_err());
        assert!(verify_h_integral(&p, c(1.5), 1e-10).is_err());
    }

    #[test]
    fn f_mu_quadrature_matches_series() {
        let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2).unwrap();
        let lam = c(0.5);
        let by_quad = f_mu_by_quadrature(&p, lam, 1e-12).unwrap();
        // frozen oracle value and the series route
        let frozen = C64::new(0.0, -0.02545668372495648);
        assert!((by_quad - frozen).norm() < 1e-12, "{by_quad}");
        let series = crate::functions::eval_f_mu(&p, 0, lam, &TruncationPolicy::default()).unwrap();
        assert!((by_quad - series).norm() / series.norm() < 1e-11);
    }

    #[test]
    fn q_m_quadrature_matches_sum() {
        use crate::poly::Poly;
        let p = HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2).unwrap();
        let td = crate::theta::ThetaData::derive(
            Poly::constant(crate::scalar::rat_int(1)),
            Poly::new(vec![
                crate::scalar::rat_int(0),
                crate::scalar::rat_int(1),
                crate::scalar::rat_int(-1),
            ]),
        )
        .unwrap();
        for lam in [c(-1.6), C64::new(2.4, 0.9)] {
            let by_quad = q_m_by_quadrature(&p, &td, 7, lam, 1e-10).unwrap();
            let by_sum =
                crate::periods::eval_q_m(&p, &td, 7, lam, &TruncationPolicy::default()).unwrap();
            assert!(
                (by_quad - by_sum).norm() / by_sum.norm() < 1e-7,
                "at {lam}: {by_quad} vs {by_sum}"
            );
        }
    }

    #[test]
    fn self_consistency_when_tol_halves() {
        let w = WeightedIntegrand::new(-0.4, -0.2, |t, _| Ok(c((1.5 + t).ln()))).unwrap();
        let (v1, e1) = integrate_01(&w, 1e-8).unwrap();
        let (v2, _) = integrate_01(&w, 1e-12).unwrap();
        assert!((v1 - v2).norm() <= e1.max(1e-13));
    }
}
