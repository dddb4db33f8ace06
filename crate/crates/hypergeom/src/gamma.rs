//! Gamma, beta, Pochhammer and gamma-product evaluation for complex
//! arguments.
//!
//! The gamma function uses a 15-term Lanczos approximation (g = 607/128)
//! with reflection for `Re z < 1/2`, which holds 13+ significant digits on
//! the strip `|Re z| <= 20`, `|Im z| <= 20` used by everything downstream.

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{is_near_nonpositive_integer, rat_int, Rat, C64};

const LANCZOS_G: f64 = 607.0 / 128.0;

#[allow(clippy::excessive_precision)] // published coefficient digits kept verbatim
const LANCZOS_COEFFS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Pochhammer symbol `(alpha)_n = prod_{i=0}^{n-1} (alpha + i)`.
///
/// The empty product (`n = 0`) is 1.
pub fn pochhammer(alpha: C64, n: u32) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for i in 0..n {
        acc *= alpha + C64::new(i as f64, 0.0);
    }
    acc
}

/// Exact rational Pochhammer symbol.
pub fn pochhammer_rat(alpha: &Rat, n: u32) -> Rat {
    let mut acc = rat_int(1);
    for i in 0..n {
        acc *= alpha + rat_int(i as i64);
    }
    acc
}

/// Complex gamma function.
///
/// Errors with [`Error::Pole`] when `z` is a non-positive integer.
pub fn gamma(z: C64) -> Result<C64> {
    if is_near_nonpositive_integer(z, 1e-12) {
        return Err(Error::Pole(format!("gamma pole at z = {z}")));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: C64) -> C64 {
    if z.re < 0.5 {
        // reflection: gamma(z) = pi / (sin(pi z) gamma(1 - z))
        let pi = std::f64::consts::PI;
        let s = (C64::new(pi, 0.0) * z).sin();
        return C64::new(pi, 0.0) / (s * gamma_unchecked(C64::new(1.0, 0.0) - z));
    }
    let zm1 = z - C64::new(1.0, 0.0);
    let mut a = C64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += C64::new(*c, 0.0) / (zm1 + C64::new(k as f64, 0.0));
    }
    let t = zm1 + C64::new(LANCZOS_G + 0.5, 0.0);
    let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
    C64::new(sqrt_two_pi, 0.0) * t.powc(zm1 + C64::new(0.5, 0.0)) * (-t).exp() * a
}

/// Beta function `B(a, b) = gamma(a) gamma(b) / gamma(a + b)`.
pub fn beta(a: C64, b: C64) -> Result<C64> {
    Ok(gamma(a)? * gamma(b)? / gamma(a + b)?)
}

// B_{2n}/(2n) for the digamma asymptotic tail.
const DIGAMMA_TAIL: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    5.0 / 660.0,
    -691.0 / 32760.0,
    7.0 / 84.0,
];

/// Digamma `psi(z)` by upward recurrence into the asymptotic region.
pub fn digamma(z: C64) -> Result<C64> {
    if is_near_nonpositive_integer(z, 1e-12) {
        return Err(Error::Pole(format!("digamma pole at z = {z}")));
    }
    let mut z = z;
    let mut acc = C64::new(0.0, 0.0);
    if z.re < 0.0 {
        // reflection: psi(z) = psi(1-z) - pi cot(pi z)
        let pi = std::f64::consts::PI;
        let piz = C64::new(pi, 0.0) * z;
        return Ok(digamma(C64::new(1.0, 0.0) - z)? - C64::new(pi, 0.0) * piz.cos() / piz.sin());
    }
    while z.re < 12.0 {
        acc -= 1.0 / z;
        z += C64::new(1.0, 0.0);
    }
    let mut tail = z.ln() - 0.5 / z;
    let inv2 = 1.0 / (z * z);
    let mut p = inv2;
    for c in DIGAMMA_TAIL {
        tail -= C64::new(c, 0.0) * p;
        p *= inv2;
    }
    Ok(acc + tail)
}

/// Ratio of gamma products `prod gamma(numer_i) / prod gamma(denom_j)`.
pub fn gamma_product(numer: &[C64], denom: &[C64]) -> Result<C64> {
    let mut acc = C64::new(1.0, 0.0);
    for z in numer {
        acc *= gamma(*z)?;
    }
    for z in denom {
        acc /= gamma(*z)?;
    }
    if acc.is_zero() || !acc.re.is_finite() || !acc.im.is_finite() {
        return Err(Error::NonFinite("gamma product over/underflow".into()));
    }
    Ok(acc)
}
