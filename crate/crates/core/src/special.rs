//! Error function family for complex arguments.
//!
//! All three entry points reduce the argument to the closed first quadrant
//! using the odd and conjugation symmetries, so those identities hold
//! bit-exactly. Inside the first quadrant the evaluation route is chosen by
//! region:
//!
//! - Maclaurin series for `erf` near the imaginary axis (`Re z <= 1.5`,
//!   `|z| <= 8`), where its cancellation is bounded by `exp(2 Re(z)^2)`;
//! - the Kummer-transformed series `erf(z) = 2/sqrt(pi) e^{-z^2} sum (2z^2)^n z / (2n+1)!!`
//!   near the real axis (`Im z <= 1.5`, `Re z < 3`), cancellation bounded by
//!   `exp(2 Im(z)^2)`;
//! - the Laplace continued fraction for `erfcx(z) = e^{z^2} erfc(z)` when
//!   `Re z >= 1.5`, evaluated with the modified Lentz algorithm;
//! - the asymptotic expansion of `erfcx` for large `|z|` close to the
//!   imaginary axis.

use std::f64::consts::FRAC_2_SQRT_PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex number used throughout the crate.
pub type ComplexValue = Complex64;

/// Largest `|z|` accepted by the unscaled [`erf_complex`] / [`erfc_complex`].
pub const UNSCALED_MAX_ABS: f64 = 30.0;

const FRAC_1_SQRT_PI: f64 = 0.5 * FRAC_2_SQRT_PI;
const MACLAURIN_MAX_RE: f64 = 1.5;
const MACLAURIN_MAX_ABS: f64 = 8.0;
const KUMMER_MAX_IM: f64 = 1.5;
const KUMMER_MAX_RE: f64 = 3.0;
const CONTINUED_FRACTION_MIN_RE: f64 = 1.5;
const MAX_TERMS: usize = 20_000;

/// `erf(z)` for `|z| <= 30`.
pub fn erf_complex(z: ComplexValue) -> Result<ComplexValue> {
    check_unscaled_domain(z)?;
    let (value, _) = erf_parts(z)?;
    finite_or_overflow(value, z)
}

/// `erfc(z) = 1 - erf(z)` for `|z| <= 30`.
///
/// Where the first-quadrant route goes through `erfcx`, the complement is
/// returned directly instead of as `1 - erf`, which keeps it accurate when it
/// is small; the two still sum to one up to a rounding of `1`.
pub fn erfc_complex(z: ComplexValue) -> Result<ComplexValue> {
    check_unscaled_domain(z)?;
    let (erf, erfc) = erf_parts(z)?;
    let value = erfc.unwrap_or_else(|| ComplexValue::new(1.0, 0.0) - erf);
    finite_or_overflow(with_axis_purity(z, value, false), z)
}

/// Scaled complement `erfcx(z) = exp(z^2) erfc(z)`.
///
/// Overflow-free in the closed right half plane. For `Re z < 0` the value
/// contains `2 exp(z^2)`, which can exceed the f64 range; that case is
/// reported as [`Error::Overflow`].
pub fn erfcx_scaled(z: ComplexValue) -> Result<ComplexValue> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::OutOfDomain { re: z.re, im: z.im, reason: "non-finite argument" });
    }
    let value = if z.re < 0.0 {
        let reflected = erfcx_right_half(-z);
        2.0 * z_sq(z).exp() - reflected
    } else {
        erfcx_right_half(z)
    };
    finite_or_overflow(with_axis_purity(z, value, false), z)
}

fn check_unscaled_domain(z: ComplexValue) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::OutOfDomain { re: z.re, im: z.im, reason: "non-finite argument" });
    }
    if z.norm() > UNSCALED_MAX_ABS {
        return Err(Error::OutOfDomain { re: z.re, im: z.im, reason: "|z| > 30, use erfcx_scaled" });
    }
    Ok(())
}

fn finite_or_overflow(value: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { re: z.re, im: z.im })
    }
}

/// Real arguments give real results. For `erf`, imaginary arguments give
/// imaginary results (`odd == true`).
fn with_axis_purity(z: ComplexValue, mut value: ComplexValue, odd: bool) -> ComplexValue {
    if z.im == 0.0 {
        value.im = 0.0;
    }
    if odd && z.re == 0.0 {
        value.re = 0.0;
    }
    value
}

/// `z^2` with the real part formed as `(x - y)(x + y)` to limit cancellation.
fn z_sq(z: ComplexValue) -> ComplexValue {
    ComplexValue::new((z.re - z.im) * (z.re + z.im), 2.0 * z.re * z.im)
}

/// Returns `erf(z)` and, where it is computed directly, `erfc(z)`.
fn erf_parts(z: ComplexValue) -> Result<(ComplexValue, Option<ComplexValue>)> {
    if z.re < 0.0 {
        let (erf, _) = erf_parts(-z)?;
        return Ok((with_axis_purity(z, -erf, true), None));
    }
    if z.im < 0.0 {
        let (erf, erfc) = erf_parts(z.conj())?;
        return Ok((erf.conj(), erfc.map(|c| c.conj())));
    }
    let q = ComplexValue::new(z.re.abs(), z.im);
    let (erf, erfc) = erf_first_quadrant(q)?;
    Ok((with_axis_purity(z, erf, true), erfc.map(|c| with_axis_purity(z, c, false))))
}

fn erf_first_quadrant(z: ComplexValue) -> Result<(ComplexValue, Option<ComplexValue>)> {
    let (x, y) = (z.re, z.im);
    let r = z.norm();
    if x <= MACLAURIN_MAX_RE && r <= MACLAURIN_MAX_ABS {
        return Ok((erf_maclaurin(z), None));
    }
    if y <= KUMMER_MAX_IM && x < KUMMER_MAX_RE {
        return Ok((erf_kummer(z), None));
    }
    // erfc = e^{-z^2} erfcx(z); e^{-z^2} has modulus e^{y^2 - x^2}.
    let scale = (-z_sq(z)).exp();
    if !scale.re.is_finite() || !scale.im.is_finite() {
        return Err(Error::Overflow { re: z.re, im: z.im });
    }
    let erfc = scale * erfcx_first_quadrant(z);
    Ok((ComplexValue::new(1.0, 0.0) - erfc, Some(erfc)))
}

fn erfcx_right_half(z: ComplexValue) -> ComplexValue {
    if z.im < 0.0 {
        erfcx_first_quadrant(z.conj()).conj()
    } else {
        erfcx_first_quadrant(ComplexValue::new(z.re.abs(), z.im))
    }
}

fn erfcx_first_quadrant(z: ComplexValue) -> ComplexValue {
    if z.re >= CONTINUED_FRACTION_MIN_RE {
        return erfcx_continued_fraction(z);
    }
    if z.norm() > MACLAURIN_MAX_ABS {
        let mut value = erfcx_asymptotic(z);
        if z.re == 0.0 {
            // On the imaginary axis the exponentially small real part is exactly e^{-y^2}.
            value.re = (-z.im * z.im).exp();
        }
        return value;
    }
    let erf = erf_maclaurin(z);
    z_sq(z).exp() * (ComplexValue::new(1.0, 0.0) - erf)
}

/// `erf(z) = 2/sqrt(pi) sum_n (-1)^n z^{2n+1} / (n! (2n+1))`.
fn erf_maclaurin(z: ComplexValue) -> ComplexValue {
    let z2 = z_sq(z);
    let min_terms = z.norm_sqr();
    let mut term = z;
    let mut sum = z;
    for n in 1..MAX_TERMS {
        let nf = n as f64;
        term *= -z2 / nf;
        let contribution = term / (2.0 * nf + 1.0);
        sum += contribution;
        if nf > min_terms && contribution.norm() <= f64::EPSILON * 0.25 * sum.norm() {
            break;
        }
    }
    sum * FRAC_2_SQRT_PI
}

/// `erf(z) = 2/sqrt(pi) e^{-z^2} sum_n 2^n z^{2n+1} / (1 3 5 ... (2n+1))`.
fn erf_kummer(z: ComplexValue) -> ComplexValue {
    let two_z2 = 2.0 * z_sq(z);
    let min_terms = z.norm_sqr();
    let mut term = z;
    let mut sum = z;
    for n in 1..MAX_TERMS {
        let nf = n as f64;
        term *= two_z2 / (2.0 * nf + 1.0);
        sum += term;
        if nf > min_terms && term.norm() <= f64::EPSILON * 0.25 * sum.norm() {
            break;
        }
    }
    (-z_sq(z)).exp() * sum * FRAC_2_SQRT_PI
}

/// Laplace continued fraction, valid for `Re z > 0`:
/// `sqrt(pi) erfcx(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))`.
///
/// The denominator `z + (1/2)/(z + ...)` is evaluated with the modified Lentz
/// algorithm and inverted at the end.
fn erfcx_continued_fraction(z: ComplexValue) -> ComplexValue {
    let tiny = ComplexValue::new(1e-150, 0.0);
    let mut f = z;
    let mut c = z;
    let mut d = ComplexValue::new(0.0, 0.0);
    for j in 1..MAX_TERMS {
        let a = j as f64 * 0.5;
        d = z + a * d;
        if d.norm_sqr() == 0.0 {
            d = tiny;
        }
        c = z + a / c;
        if c.norm_sqr() == 0.0 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() <= f64::EPSILON {
            break;
        }
    }
    f.inv() * FRAC_1_SQRT_PI
}

/// `erfcx(z) ~ 1/(z sqrt(pi)) sum_n (-1)^n (2n-1)!! / (2 z^2)^n`, truncated
/// at the smallest term.
fn erfcx_asymptotic(z: ComplexValue) -> ComplexValue {
    let inv_two_z2 = (2.0 * z_sq(z)).inv();
    let mut term = ComplexValue::new(1.0, 0.0);
    let mut sum = term;
    let mut previous = f64::INFINITY;
    for n in 1..MAX_TERMS {
        let next = term * (-(2.0 * n as f64 - 1.0)) * inv_two_z2;
        let size = next.norm();
        if size >= previous {
            break;
        }
        term = next;
        sum += term;
        previous = size;
        if size <= f64::EPSILON * 0.25 * sum.norm() {
            break;
        }
    }
    sum / z * FRAC_1_SQRT_PI
}
