//! Exact and floating scalar types used throughout the crate.
//!
//! Parameters of the special functions are exact rationals ([`Rat`]); all
//! analytic evaluation happens in double-precision complex arithmetic
//! ([`C64`]). Fractional powers consistently use the principal branch
//! (argument in `(-pi, pi]`), fixed once here as [`pow_principal`].

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact rational scalar: reduced fraction with positive denominator.
///
/// `BigRational` maintains both invariants (gcd 1, denominator > 0) on
/// construction, so this alias is the whole type.
pub type Rat = BigRational;

/// Double-precision complex scalar.
pub type C64 = Complex64;

/// Build a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse an exact fraction string: `"7/2"`, `"-1/3"` or `"4"`.
///
/// Decimal notation is rejected on purpose: the mod-Z parameter hypotheses
/// are undecidable on floats.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.contains('.') {
        return Err(Error::Invalid(format!(
            "parameter `{s}` must be an exact fraction such as 7/2, not a decimal"
        )));
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let num = BigInt::from_str(n.trim())
                .map_err(|_| Error::Invalid(format!("bad numerator in `{s}`")))?;
            let den = BigInt::from_str(d.trim())
                .map_err(|_| Error::Invalid(format!("bad denominator in `{s}`")))?;
            if den.is_zero() {
                return Err(Error::Invalid(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num =
                BigInt::from_str(s).map_err(|_| Error::Invalid(format!("bad integer `{s}`")))?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Render a rational as a fraction string (`7/2`, `-1`, `0`).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Convert a rational to `f64`, guarding against digit blow-up.
pub fn rat_to_f64(r: &Rat) -> Result<f64> {
    check_digits(r)?;
    r.to_f64()
        .ok_or_else(|| Error::NonFinite("rational does not fit in f64".into()))
}

/// Convert a rational to a real complex value.
pub fn rat_to_c64(r: &Rat) -> Result<C64> {
    Ok(C64::new(rat_to_f64(r)?, 0.0))
}

/// Digit-count sanity bound on exact integers (desk-scale guard).
pub const MAX_DIGITS: usize = 1_000_000;

/// Error out if the numerator or denominator exceeds [`MAX_DIGITS`] digits.
pub fn check_digits(r: &Rat) -> Result<()> {
    // bits/3 underestimates decimal digits, which is fine for a guard
    let bits = r.numer().abs().bits().max(r.denom().bits()) as usize;
    if bits / 3 > MAX_DIGITS {
        return Err(Error::CoefficientBlowup(MAX_DIGITS));
    }
    Ok(())
}

/// True if the rational is an integer <= 0 (a gamma pole).
pub fn is_nonpositive_integer(r: &Rat) -> bool {
    r.denom().is_one() && !r.numer().is_positive()
}

/// True if the complex value is within `eps` of an integer <= 0.
pub fn is_near_nonpositive_integer(z: C64, eps: f64) -> bool {
    if z.im.abs() > eps || z.re > eps {
        return false;
    }
    (z.re - z.re.round()).abs() <= eps
}

/// Principal-branch complex power `z^w` (argument of `z` in `(-pi, pi]`).
///
/// `0^0 = 1` and `0^w = 0` for `Re w > 0`, matching the series conventions.
pub fn pow_principal(z: C64, w: C64) -> C64 {
    if z.is_zero() {
        if w.is_zero() {
            return C64::new(1.0, 0.0);
        }
        return C64::new(0.0, 0.0);
    }
    (w * z.ln()).exp()
}

/// Principal-branch power with an exact rational exponent.
pub fn pow_principal_rat(z: C64, w: &Rat) -> Result<C64> {
    Ok(pow_principal(z, rat_to_c64(w)?))
}

/// Guard that a complex value is finite; NaN/inf is an error state, never a
/// value.
pub fn ensure_finite(z: C64, what: &str) -> Result<C64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}
