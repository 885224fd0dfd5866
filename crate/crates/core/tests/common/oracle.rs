//! Arbitrary-precision reference values, test-only.
//!
//! Fixed-point complex arithmetic on `BigInt` with `PREC` fractional bits.
//! `erf` is the plain Maclaurin series, which converges everywhere; with 384
//! bits the `exp(|z|^2)` cancellation on `|z| <= 8.5` still leaves more than
//! 200 correct bits.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const PREC: u64 = 384;

#[derive(Clone, Debug)]
pub struct Fx {
    re: BigInt,
    im: BigInt,
}

fn real_from_f64(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = if exponent == 0 {
        (bits & 0xf_ffff_ffff_ffff) << 1
    } else {
        (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
    };
    // x = mantissa * 2^(exponent - 1075)
    let shift = exponent - 1075 + PREC as i64;
    let m = BigInt::from(mantissa) * sign;
    if shift >= 0 {
        m << shift as u64
    } else {
        m >> (-shift) as u64
    }
}

fn real_to_f64(x: &BigInt) -> f64 {
    // Keep 64 significant bits before converting so to_f64 stays in range.
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap() * 2f64.powi(-(PREC as i32));
    }
    let drop = bits - 64;
    (x >> drop).to_f64().unwrap() * 2f64.powi(drop as i32 - PREC as i32)
}

fn mul_real(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> PREC
}

impl Fx {
    pub fn new(re: f64, im: f64) -> Self {
        Fx { re: real_from_f64(re), im: real_from_f64(im) }
    }

    fn zero() -> Self {
        Fx { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn one() -> Self {
        Fx { re: BigInt::from(1) << PREC, im: BigInt::zero() }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (real_to_f64(&self.re), real_to_f64(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_f64();
        re.hypot(im)
    }

    fn add(&self, o: &Fx) -> Fx {
        Fx { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Fx) -> Fx {
        Fx { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn neg(&self) -> Fx {
        Fx { re: -&self.re, im: -&self.im }
    }

    fn mul(&self, o: &Fx) -> Fx {
        Fx {
            re: mul_real(&self.re, &o.re) - mul_real(&self.im, &o.im),
            im: mul_real(&self.re, &o.im) + mul_real(&self.im, &o.re),
        }
    }

    fn scale_real(&self, r: &BigInt) -> Fx {
        Fx { re: mul_real(&self.re, r), im: mul_real(&self.im, r) }
    }

    fn div_int(&self, n: u64) -> Fx {
        Fx { re: &self.re / n, im: &self.im / n }
    }

    fn times_i(&self) -> Fx {
        Fx { re: -&self.im, im: self.re.clone() }
    }

    fn negligible(&self) -> bool {
        // |.| < 2^-(PREC - 40)
        self.re.abs().bits() < 40 && self.im.abs().bits() < 40
    }
}

fn atan_inv(n: u64) -> BigInt {
    // atan(1/n) = sum (-1)^k / ((2k+1) n^(2k+1))
    let mut power = (BigInt::from(1) << PREC) / n;
    let n2 = n * n;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= n2;
        k += 1;
    }
    sum
}

fn pi() -> BigInt {
    atan_inv(5) * 16 - atan_inv(239) * 4
}

fn sqrt_pi() -> BigInt {
    (pi() << PREC).sqrt()
}

fn two_over_sqrt_pi() -> BigInt {
    (BigInt::from(2) << (2 * PREC)) / sqrt_pi()
}

/// `exp(z)` by its Taylor series; intended for `|z|` up to ~40.
pub fn exp(z: &Fx) -> Fx {
    let mut sum = Fx::one();
    let mut term = Fx::one();
    let mut n = 1u64;
    loop {
        term = term.mul(z).div_int(n);
        sum = sum.add(&term);
        if n > 10 && term.negligible() {
            break;
        }
        n += 1;
    }
    sum
}

/// `erf(z)` by its Maclaurin series.
pub fn erf(z: &Fx) -> Fx {
    let minus_z2 = z.mul(z).neg();
    let mut term = z.clone();
    let mut sum = z.clone();
    let (zr, zi) = z.to_f64();
    let min_terms = (3.0 * (zr * zr + zi * zi)) as u64 + 10;
    let mut n = 1u64;
    loop {
        term = term.mul(&minus_z2).div_int(n);
        let contribution = term.div_int(2 * n + 1);
        sum = sum.add(&contribution);
        if n > min_terms && contribution.negligible() {
            break;
        }
        n += 1;
    }
    sum.scale_real(&two_over_sqrt_pi())
}

pub fn erfc(z: &Fx) -> Fx {
    Fx::one().sub(&erf(z))
}

pub fn erf_f64(re: f64, im: f64) -> (f64, f64) {
    erf(&Fx::new(re, im)).to_f64()
}

/// `exp(z^2) erfc(z)` for moderate `|z|`.
pub fn erfcx_f64(re: f64, im: f64) -> (f64, f64) {
    let z = Fx::new(re, im);
    exp(&z.mul(&z)).mul(&erfc(&z)).to_f64()
}

fn lambda_sq(lambda: f64) -> Fx {
    let l = Fx::new(lambda, 0.0);
    l.mul(&l)
}

/// Transition probability `(l^2/4pi) [exp(-W^2) - sqrt(pi) W erfc(W)]`, `W = gap`.
pub fn transition_probability(lambda: f64, gap: f64) -> f64 {
    let w = Fx::new(gap, 0.0);
    let first = exp(&w.mul(&w).neg());
    let second = w.mul(&erfc(&w)).scale_real(&sqrt_pi());
    let bracket = first.sub(&second);
    let prefactor = lambda_sq(lambda).div_pi();
    prefactor.div_int(4).mul(&bracket).to_f64().0
}

/// Correlation term evaluated literally from its printed closed form:
/// `(l^2 / 4 sqrt(pi)) (1/L) exp(-L^2/4) [Im(exp(i W L) erf(i L/2 + W)) - sin(W L)]`.
pub fn correlation_c(lambda: f64, gap: f64, separation: f64) -> f64 {
    let w = Fx::new(gap, 0.0);
    let l = Fx::new(separation, 0.0);
    let wl = w.mul(&l);
    let phase = exp(&wl.times_i());
    let arg = l.times_i().div_int(2).add(&w);
    let inner = phase.mul(&erf(&arg));
    // sin(WL) = Im exp(iWL)
    let bracket_re = &inner.im - &phase.im;
    let gauss = exp(&l.mul(&l).div_int(4).neg());
    let bracket = Fx { re: bracket_re, im: BigInt::zero() }.mul(&gauss);
    let value = lambda_sq(lambda).mul(&bracket).scale_real(&two_over_sqrt_pi()).div_int(8);
    value.to_f64().0 / separation
}

/// `|X|` from `(-i l^2 / 4 sqrt(pi)) (1/L) exp(-W^2 - L^2/4) erfc(i L/2)`.
pub fn correlation_x_abs(lambda: f64, gap: f64, separation: f64) -> f64 {
    let w = Fx::new(gap, 0.0);
    let l = Fx::new(separation, 0.0);
    let exponent = w.mul(&w).add(&l.mul(&l).div_int(4)).neg();
    let value = lambda_sq(lambda)
        .mul(&exp(&exponent))
        .mul(&erfc(&l.times_i().div_int(2)))
        .scale_real(&two_over_sqrt_pi())
        .div_int(8);
    value.abs_f64() / separation
}

impl Fx {
    fn div_pi(&self) -> Fx {
        let p = pi();
        Fx { re: (&self.re << PREC) / &p, im: (&self.im << PREC) / &p }
    }
}
