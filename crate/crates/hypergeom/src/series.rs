//! Convergence-controlled evaluation of the generalized hypergeometric
//! series `pF(p-1)`.
//!
//! The series
//!
//! ```text
//! pF(p-1)(a_1, ..., a_p ; b_1, ..., b_{p-1} ; x)
//!     = sum_n  prod_i (a_i)_n / prod_j (b_j)_n  *  x^n / n!
//! ```
//!
//! is summed by the term-ratio recurrence. Evaluation is restricted to the
//! open unit disc (plus `x = 1` under a convergent parameter balance);
//! anything outside belongs to the continuation machinery, never to this
//! module.

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{ensure_finite, is_near_nonpositive_integer, C64};

/// Stopping policy for series evaluation.
#[derive(Clone, Copy, Debug)]
pub struct TruncationPolicy {
    /// Stop once the term magnitude falls below this fraction of the
    /// partial sum, three times in a row.
    pub relative_tolerance: f64,
    /// Hard cap on the number of terms.
    pub max_terms: usize,
}

impl TruncationPolicy {
    pub fn new(relative_tolerance: f64, max_terms: usize) -> Result<Self> {
        if !(relative_tolerance > 0.0 && relative_tolerance < 1.0) {
            return Err(Error::Invalid(
                "relative_tolerance must lie strictly between 0 and 1".into(),
            ));
        }
        if max_terms == 0 {
            return Err(Error::Invalid("max_terms must be at least 1".into()));
        }
        Ok(Self {
            relative_tolerance,
            max_terms,
        })
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-13,
            max_terms: 10_000,
        }
    }
}

/// Parameter bundle for one `pF(p-1)` series.
#[derive(Clone, Debug)]
pub struct HGSeriesSpec {
    upper: Vec<C64>,
    lower: Vec<C64>,
}

impl HGSeriesSpec {
    /// Validates the shape (`#upper = #lower + 1`) and that no lower
    /// parameter sits on a pole of the series.
    pub fn new(upper: Vec<C64>, lower: Vec<C64>) -> Result<Self> {
        if upper.len() != lower.len() + 1 {
            return Err(Error::Invalid(format!(
                "pFq shape: got {} upper and {} lower parameters, need p = q + 1",
                upper.len(),
                lower.len()
            )));
        }
        for b in &lower {
            if is_near_nonpositive_integer(*b, 1e-12) {
                return Err(Error::Pole(format!(
                    "lower parameter {b} is a non-positive integer"
                )));
            }
        }
        Ok(Self { upper, lower })
    }

    pub fn upper(&self) -> &[C64] {
        &self.upper
    }

    pub fn lower(&self) -> &[C64] {
        &self.lower
    }

    /// `Re(sum lower - sum upper)`, which governs convergence at `x = 1`.
    fn balance(&self) -> f64 {
        let su: f64 = self.upper.iter().map(|z| z.re).sum();
        let sl: f64 = self.lower.iter().map(|z| z.re).sum();
        sl - su
    }
}

/// Result of a truncated series evaluation.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub value: C64,
    /// Bound derived from the magnitude of the first omitted term.
    pub est_error: f64,
    pub terms_used: usize,
}

/// Evaluate `pF(p-1)` at `x` under `policy`.
///
/// Accepts `|x| < 1`, or `x = 1` when `Re(sum lower - sum upper) > 0`.
/// The stopping rule requires three consecutive small terms, so isolated
/// near-zero terms from parameter cancellation do not stop the sum early.
pub fn eval_pfq(spec: &HGSeriesSpec, x: C64, policy: &TruncationPolicy) -> Result<SeriesValue> {
    let ax = x.norm();
    let at_one = (x - Complex64::new(1.0, 0.0)).norm() < 1e-14;
    if ax >= 1.0 && !at_one {
        return Err(Error::Domain(format!(
            "pFq series needs |x| < 1 (got |x| = {ax:.6}); continuation handles the rest"
        )));
    }
    if at_one && spec.balance() <= 0.0 {
        return Err(Error::Domain(format!(
            "pFq at x = 1 diverges: Re(sum lower - sum upper) = {} <= 0",
            spec.balance()
        )));
    }

    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut small_streak = 0usize;
    for n in 0..policy.max_terms {
        // term_{n+1} = term_n * prod(a+n)/prod(b+n) * x/(n+1)
        let nf = n as f64;
        let mut ratio = x / (nf + 1.0);
        for a in &spec.upper {
            ratio *= a + C64::new(nf, 0.0);
        }
        for b in &spec.lower {
            ratio /= b + C64::new(nf, 0.0);
        }
        term *= ratio;
        sum += term;
        ensure_finite(sum, "pFq partial sum")?;

        if term.norm() < policy.relative_tolerance * sum.norm() {
            small_streak += 1;
            if small_streak >= 3 {
                let next = (term * ratio).norm();
                // the observed step ratio covers transient term growth
                // that the asymptotic ratio |x| does not see yet
                let rho = ax.max(ratio.norm().min(0.97));
                let est_error = tail_bound(next, rho);
                return Ok(SeriesValue {
                    value: sum,
                    est_error,
                    terms_used: n + 2,
                });
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "pFq stopping rule not reached within {} terms at |x| = {ax:.6}",
        policy.max_terms
    )))
}

/// Geometric-tail bound from the first omitted term with ratio `rho`,
/// padded by a safety factor of two; near the disc boundary (and at
/// x = 1) a fixed large factor is used instead.
fn tail_bound(next: f64, rho: f64) -> f64 {
    if rho <= 0.95 {
        2.0 * next / (1.0 - rho)
    } else {
        next * 400.0
    }
}

/// Gauss series `2F1(a, b; c; x)`.
pub fn eval_2f1(a: C64, b: C64, c: C64, x: C64, policy: &TruncationPolicy) -> Result<SeriesValue> {
    eval_pfq(&HGSeriesSpec::new(vec![a, b], vec![c])?, x, policy)
}

/// `3F2(a1, a2, a3; b1, b2; x)`.
pub fn eval_3f2(
    a: [C64; 3],
    b: [C64; 2],
    x: C64,
    policy: &TruncationPolicy,
) -> Result<SeriesValue> {
    eval_pfq(&HGSeriesSpec::new(a.to_vec(), b.to_vec())?, x, policy)
}

/// `2F1(a, b; a+b; z)` near `z = 1` by the logarithmic connection formula
///
/// ```text
/// gamma(a+b)/(gamma(a)gamma(b)) * sum_n (a)_n (b)_n / (n!)^2
///     * [2 psi(n+1) - psi(a+n) - psi(b+n) - ln(1-z)] (1-z)^n
/// ```
///
/// valid for `|1-z| < 1` off the cut `z >= 1`. The direct series is
/// useless there because the parameter balance at this point is exactly
/// zero.
pub fn eval_2f1_log_case(a: C64, b: C64, z: C64, policy: &TruncationPolicy) -> Result<SeriesValue> {
    eval_2f1_log_case_with_w(a, b, Complex64::new(1.0, 0.0) - z, policy)
}

/// Same as [`eval_2f1_log_case`] with `w = 1 - z` handed in directly,
/// which preserves accuracy when `z` hugs 1.
pub fn eval_2f1_log_case_with_w(
    a: C64,
    b: C64,
    w: C64,
    policy: &TruncationPolicy,
) -> Result<SeriesValue> {
    use crate::gamma::{digamma, gamma_product};
    let aw = w.norm();
    if aw >= 1.0 {
        return Err(Error::Domain(format!(
            "log-case 2F1 needs |1-z| < 1, got {aw}"
        )));
    }
    let ln_w = if aw == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        w.ln()
    };
    let pref = gamma_product(&[a + b], &[a, b])?;
    let mut coeff = C64::new(1.0, 0.0); // (a)_n (b)_n / (n!)^2 w^n
    let mut psi_a = digamma(a)?;
    let mut psi_b = digamma(b)?;
    let mut psi_n = digamma(C64::new(1.0, 0.0))?;
    let mut sum = C64::new(0.0, 0.0);
    let mut streak = 0usize;
    for n in 0..policy.max_terms {
        let nf = n as f64;
        if n > 0 {
            coeff *= (a + (nf - 1.0)) * (b + (nf - 1.0)) / (nf * nf) * w;
            psi_a += 1.0 / (a + (nf - 1.0));
            psi_b += 1.0 / (b + (nf - 1.0));
            psi_n += 1.0 / nf;
        }
        let term = coeff * (2.0 * psi_n - psi_a - psi_b - ln_w);
        sum += term;
        ensure_finite(sum, "log-case 2F1 partial sum")?;
        if term.norm() < policy.relative_tolerance * sum.norm() {
            streak += 1;
            if streak >= 3 {
                return Ok(SeriesValue {
                    value: pref * sum,
                    est_error: pref.norm() * tail_bound(term.norm(), aw),
                    terms_used: n + 1,
                });
            }
        } else {
            streak = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "log-case 2F1 did not converge within {} terms at |1-z| = {aw}",
        policy.max_terms
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::pow_principal;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pol() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn value_at_zero_is_one() {
        let spec = HGSeriesSpec::new(vec![c(0.3, 0.1), c(1.7, 0.0)], vec![c(2.2, -0.4)]).unwrap();
        let v = eval_pfq(&spec, c(0.0, 0.0), &pol()).unwrap();
        assert_eq!(v.value, c(1.0, 0.0));
    }

    #[test]
    fn binomial_series_oracle() {
        // 2F1(a, b; b; x) = (1 - x)^(-a); frozen from the binomial oracle
        let v = eval_2f1(c(0.5, 0.0), c(7.0, 0.0), c(7.0, 0.0), c(0.3, 0.0), &pol()).unwrap();
        let expected = 1.1952286093343936; // 0.7^(-1/2)
        assert!((v.value - c(expected, 0.0)).norm() < 1e-13);
        let direct = pow_principal(c(0.7, 0.0), c(-0.5, 0.0));
        assert!((v.value - direct).norm() < 1e-13);
    }

    #[test]
    fn known_3f2_value() {
        // frozen from the Euler-integral quadrature oracle
        let v = eval_3f2(
            [c(0.2, 0.0), c(0.4, 0.0), c(0.6, 0.0)],
            [c(1.1, 0.0), c(1.3, 0.0)],
            c(0.5, 0.0),
            &pol(),
        )
        .unwrap();
        assert!((v.value - c(1.01985582614772, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn rejects_outside_disc() {
        let spec = HGSeriesSpec::new(vec![c(0.5, 0.0), c(0.5, 0.0)], vec![c(1.5, 0.0)]).unwrap();
        assert!(matches!(
            eval_pfq(&spec, c(1.2, 0.0), &pol()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_pfq(&spec, c(0.0, 1.0), &pol()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn x_equals_one_balance() {
        // 2F1(a, b; c; 1) = gamma(c)gamma(c-a-b)/(gamma(c-a)gamma(c-b)), Gauss;
        // direct summation at x = 1 converges only algebraically, so the
        // policy and tolerance here are loose on purpose
        let (a, b, cc) = (c(0.2, 0.0), c(0.3, 0.0), c(3.4, 0.0));
        let policy = TruncationPolicy::new(1e-10, 500_000).unwrap();
        let v = eval_2f1(a, b, cc, c(1.0, 0.0), &policy).unwrap();
        let expected = crate::gamma::gamma_product(&[cc, cc - a - b], &[cc - a, cc - b]).unwrap();
        assert!((v.value - expected).norm() / expected.norm() < 1e-7);
        // divergent balance is rejected
        let bad = eval_2f1(c(1.0, 0.0), c(1.5, 0.0), c(1.2, 0.0), c(1.0, 0.0), &pol());
        assert!(matches!(bad, Err(Error::Domain(_))));
    }

    #[test]
    fn lower_parameter_pole_rejected() {
        assert!(matches!(
            HGSeriesSpec::new(vec![c(0.5, 0.0), c(1.0, 0.0)], vec![c(-2.0, 0.0)]),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn nonconvergence_reported() {
        let spec = HGSeriesSpec::new(vec![c(0.5, 0.0), c(0.5, 0.0)], vec![c(1.5, 0.0)]).unwrap();
        let tight = TruncationPolicy::new(1e-13, 5).unwrap();
        assert!(matches!(
            eval_pfq(&spec, c(0.9, 0.0), &tight),
            Err(Error::NonConvergence(_))
        ));
    }

    #[test]
    fn terminating_series_stops() {
        // upper parameter -3 terminates the series; the zero tail must not
        // confuse the stopping rule
        let v = eval_2f1(c(-3.0, 0.0), c(0.7, 0.0), c(1.4, 0.0), c(0.8, 0.0), &pol()).unwrap();
        assert!(v.terms_used < 20);
        // compare against the explicit degree-3 polynomial
        let x = 0.8f64;
        let mut expected = 0.0;
        let mut t = 1.0;
        for n in 0..4u32 {
            if n > 0 {
                let nf = (n - 1) as f64;
                t *= (-3.0 + nf) * (0.7 + nf) / (1.4 + nf) * x / (nf + 1.0);
            }
            expected += t;
        }
        assert!((v.value.re - expected).abs() < 1e-14);
    }

    #[test]
    fn log_case_matches_direct_series_in_overlap() {
        // both routes converge for z around 0.5-0.7; they must agree
        let (a, b) = (c(2.0 / 3.0, 0.0), c(4.0 / 5.0, 0.0));
        for &zr in &[0.45, 0.6, 0.7] {
            for &zi in &[0.0, 0.15] {
                let z = c(zr, zi);
                let direct = eval_2f1(a, b, a + b, z, &pol()).unwrap().value;
                let logged = eval_2f1_log_case(a, b, z, &pol()).unwrap().value;
                assert!(
                    (direct - logged).norm() / direct.norm() < 1e-12,
                    "mismatch at {z}: {direct} vs {logged}"
                );
            }
        }
    }

    #[test]
    fn est_error_is_honest_on_random_specs() {
        // re-evaluating with tolerance/100 moves the value by less than the
        // reported est_error
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let loose = TruncationPolicy::new(1e-9, 10_000).unwrap();
        let tight = TruncationPolicy::new(1e-11, 10_000).unwrap();
        for _ in 0..100 {
            let a = c(rng.gen_range(-2.0..3.0), rng.gen_range(-1.0..1.0));
            let b = c(rng.gen_range(-2.0..3.0), rng.gen_range(-1.0..1.0));
            let cc = c(rng.gen_range(0.3..4.0), rng.gen_range(-1.0..1.0));
            let x = c(rng.gen_range(-0.7..0.7), rng.gen_range(-0.5..0.5));
            let spec = HGSeriesSpec::new(vec![a, b], vec![cc]).unwrap();
            let v1 = eval_pfq(&spec, x, &loose).unwrap();
            let v2 = eval_pfq(&spec, x, &tight).unwrap();
            assert!(
                (v1.value - v2.value).norm() <= v1.est_error.max(1e-15 * v2.value.norm()),
                "est_error too small for spec ({a}, {b}; {cc}; {x})"
            );
        }
    }
}
