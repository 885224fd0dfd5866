//! Second-order matrix elements for a pair of identical detectors with
//! Gaussian switching `exp(-t^2 / 2 sigma^2)`, coupled to a massless scalar
//! field in 3+1 Minkowski space.
//!
//! Every quantity is dimensionless in units of the switching width: the gap
//! enters as `W = Omega sigma`, the separation as `L / sigma`.
//!
//! With `a = L / 2 sigma` and `k = lambda^2 / (4 sqrt(pi))`:
//!
//! ```text
//! P = (lambda^2 / 4 pi) [exp(-W^2) - sqrt(pi) W erfc(W)]
//! C = k (1/L) exp(-a^2) [Im(exp(i W L) erf(i a + W)) - sin(W L)]
//!   = -k (1/L) exp(-W^2) Im erfcx(W + i a)
//! X = -i k (1/L) exp(-W^2 - a^2) erfc(i a)
//!   = -i k (1/L) exp(-W^2) erfcx(i a)
//! ```
//!
//! The `erfcx` forms are algebraically identical to the `erf`/`erfc` ones
//! (the phase `exp(i W L)` cancels against `exp(-2 i W a)`) and never overflow,
//! so they are used at every separation.

use std::f64::consts::{FRAC_2_SQRT_PI, PI};

use crate::error::{Error, Result};
use crate::special::{erfcx_scaled, ComplexValue};

/// Couplings above this strain the weak-coupling assumption.
pub const STRONG_COUPLING: f64 = 0.3;
/// Below this `L / sigma` the correlation term `C` is evaluated from its
/// Maclaurin expansion in the separation.
pub const SMALL_SEPARATION: f64 = 1e-3;
/// Element magnitude that triggers a perturbativity warning.
pub const ELEMENT_WARNING: f64 = 0.05;
/// Element magnitude that triggers a hard perturbativity flag.
pub const ELEMENT_HARD_LIMIT: f64 = 0.25;

const SQRT_PI: f64 = 2.0 / FRAC_2_SQRT_PI;

/// Coupling `lambda` and gap `Omega sigma`, shared by all detectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectorParams {
    coupling: f64,
    gap: f64,
}

impl DetectorParams {
    pub fn new(coupling: f64, gap: f64) -> Result<Self> {
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(Error::InvalidCoupling(coupling));
        }
        if !gap.is_finite() {
            return Err(Error::InvalidGap(gap));
        }
        Ok(DetectorParams { coupling, gap })
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn strong_coupling(&self) -> bool {
        self.coupling > STRONG_COUPLING
    }

    fn lambda_sq(&self) -> f64 {
        self.coupling * self.coupling
    }
}

/// `(P, C, X)` for one detector pair at separation `L / sigma`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairElements {
    pub p: f64,
    pub c: f64,
    pub x: ComplexValue,
    pub separation: f64,
}

impl PairElements {
    pub fn new(p: f64, c: f64, x: ComplexValue, separation: f64) -> Self {
        PairElements { p, c, x, separation }
    }

    pub fn compute(params: &DetectorParams, separation: f64) -> Result<Self> {
        Ok(PairElements {
            p: transition_probability(params),
            c: correlation_c(params, separation)?,
            x: correlation_x(params, separation)?,
            separation,
        })
    }
}

/// Excitation probability of a single detector.
pub fn transition_probability(params: &DetectorParams) -> f64 {
    let w = params.gap;
    let prefactor = params.lambda_sq() / (4.0 * PI);
    let gauss = (-w * w).exp();
    if w >= 0.0 {
        // exp(-W^2) [1 - sqrt(pi) W erfcx(W)]
        prefactor * gauss * (1.0 - SQRT_PI * w * real_erfcx(w))
    } else {
        // erfc(W) = 2 - erfc(|W|)
        let erfc = 2.0 - gauss * real_erfcx(-w);
        prefactor * (gauss - SQRT_PI * w * erfc)
    }
}

/// Correlation term of the single-excitation block.
pub fn correlation_c(params: &DetectorParams, separation: f64) -> Result<f64> {
    check_separation(separation)?;
    let k = params.lambda_sq() * 0.25 / SQRT_PI;
    let w = params.gap;
    let a = 0.5 * separation;
    if separation < SMALL_SEPARATION {
        return Ok(-0.5 * k * small_separation_bracket(w, a));
    }
    Ok(-k / separation * gauss_scaled_erfcx(w, a).im)
}

/// Correlation term coupling the ground and doubly excited states.
pub fn correlation_x(params: &DetectorParams, separation: f64) -> Result<ComplexValue> {
    check_separation(separation)?;
    let k = params.lambda_sq() * 0.25 / SQRT_PI;
    let w = params.gap;
    let a = 0.5 * separation;
    let scaled = erfcx_scaled(ComplexValue::new(0.0, a))?;
    Ok(ComplexValue::new(0.0, -1.0) * scaled * (k / separation * (-w * w).exp()))
}

fn check_separation(separation: f64) -> Result<()> {
    if separation.is_finite() && separation > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveSeparation(separation))
    }
}

fn real_erfcx(x: f64) -> f64 {
    erfcx_scaled(ComplexValue::new(x, 0.0)).expect("erfcx is finite on the non-negative real axis").re
}

/// `exp(-W^2) erfcx(W + i a)` without forming `exp(W^2)` for negative gaps.
fn gauss_scaled_erfcx(w: f64, a: f64) -> ComplexValue {
    if w >= 0.0 {
        erfcx_scaled(ComplexValue::new(w, a)).expect("right half plane") * (-w * w).exp()
    } else {
        // erfcx(z) = 2 exp(z^2) - erfcx(-z), exp(-W^2) exp(z^2) = exp(-a^2) e^{2 i W a}
        let reflected = erfcx_scaled(ComplexValue::new(-w, -a)).expect("right half plane");
        ComplexValue::from_polar(2.0 * (-a * a).exp(), 2.0 * w * a) - reflected * (-w * w).exp()
    }
}

/// `(1/a) Im[exp(-W^2) erfcx(W + i a)]` expanded in `a`:
/// `g1 - a^2 g3 / 3! + a^4 g5 / 5! - a^6 g7 / 7!`, where `g_n` is
/// `exp(-W^2)` times the n-th derivative of `erfcx` at `W`.
fn small_separation_bracket(w: f64, a: f64) -> f64 {
    let gauss = (-w * w).exp();
    let (g0, g1) = if w >= 0.0 {
        let ex = real_erfcx(w);
        (gauss * ex, -FRAC_2_SQRT_PI * gauss * (1.0 - SQRT_PI * w * ex))
    } else {
        let g0 = 2.0 - gauss * real_erfcx(-w);
        (g0, 2.0 * w * g0 - FRAC_2_SQRT_PI * gauss)
    };
    // g_{n+1} = 2 W g_n + 2 n g_{n-1}
    let mut g = [0.0; 8];
    g[0] = g0;
    g[1] = g1;
    for n in 1..7 {
        g[n + 1] = 2.0 * w * g[n] + 2.0 * n as f64 * g[n - 1];
    }
    let a2 = a * a;
    g[1] - a2 * (g[3] / 6.0 - a2 * (g[5] / 120.0 - a2 * g[7] / 5040.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Hard,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbativityFlag {
    pub element: &'static str,
    pub magnitude: f64,
    pub severity: Severity,
}

/// Advisory diagnostics: the state is only valid while every element is
/// small compared to one.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PerturbativityReport {
    pub flags: Vec<PerturbativityFlag>,
    /// `|X|` was flagged at a separation below one switching width, where its
    /// `sigma / L` prefactor dominates.
    pub small_separation: bool,
}

impl PerturbativityReport {
    pub fn is_clean(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn has_hard_flag(&self) -> bool {
        self.flags.iter().any(|f| f.severity == Severity::Hard)
    }

    /// Semicolon-separated tags such as `hard:X=0.3`.
    pub fn tags(&self) -> Vec<String> {
        let mut tags: Vec<String> = self
            .flags
            .iter()
            .map(|f| {
                let level = match f.severity {
                    Severity::Warning => "warn",
                    Severity::Hard => "hard",
                };
                format!("{level}:{}={:.3e}", f.element, f.magnitude)
            })
            .collect();
        if self.small_separation {
            tags.push("small-separation".to_string());
        }
        tags
    }
}

pub fn perturbativity_check(elems: &PairElements) -> PerturbativityReport {
    let mut report = PerturbativityReport::default();
    for (element, magnitude) in [("P", elems.p.abs()), ("C", elems.c.abs()), ("X", elems.x.norm())] {
        let severity = if magnitude > ELEMENT_HARD_LIMIT {
            Severity::Hard
        } else if magnitude > ELEMENT_WARNING {
            Severity::Warning
        } else {
            continue;
        };
        report.flags.push(PerturbativityFlag { element, magnitude, severity });
        if element == "X" && elems.separation < 1.0 {
            report.small_separation = true;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(gap: f64) -> DetectorParams {
        DetectorParams::new(0.1, gap).unwrap()
    }

    #[test]
    fn zero_gap_probability() {
        let p = transition_probability(&params(0.0));
        assert!((p - 7.957747154594767e-4).abs() < 1e-18);
    }

    #[test]
    fn probability_vanishes_for_large_gap() {
        let mut last = f64::INFINITY;
        for k in 0..=100 {
            let p = transition_probability(&params(k as f64 * 0.1));
            assert!(p < last && p >= 0.0);
            last = p;
        }
        assert!(transition_probability(&params(10.0)) < 1e-20 * 0.01);
    }

    #[test]
    fn negative_gap_probability_grows() {
        let p0 = transition_probability(&params(0.0));
        let pn = transition_probability(&params(-1.0));
        assert!(pn > p0);
        // Direct evaluation: (l^2/4pi)[e^{-1} + sqrt(pi) erfc(-1)], erfc(-1) = 1.8427007929497148
        let direct = 0.01 / (4.0 * PI) * ((-1.0f64).exp() + SQRT_PI * 1.842_700_792_949_715);
        assert!((pn - direct).abs() < 1e-16);
    }

    #[test]
    fn zero_gap_c_reduces_to_dawson_form() {
        // erfi(1) = 1.6504257587975428
        let c = correlation_c(&params(0.0), 2.0).unwrap();
        let reduced = 0.01 / (4.0 * SQRT_PI) / 2.0 * (-1.0f64).exp() * 1.650_425_758_797_542_8;
        assert!((c - reduced).abs() <= 1e-12 * reduced);
    }

    #[test]
    fn zero_gap_x_magnitude() {
        let x = correlation_x(&params(0.0), 2.0).unwrap();
        let erfc_i = (1.0f64 + 1.650_425_758_797_542_8f64.powi(2)).sqrt();
        let expected = 0.01 / (8.0 * SQRT_PI) * (-1.0f64).exp() * erfc_i;
        assert!((x.norm() - expected).abs() <= 1e-13 * expected);
    }

    #[test]
    fn x_phase_for_small_separation() {
        for l in [0.1, 0.5, 1.0, 2.0] {
            let x = correlation_x(&params(1.0), l).unwrap();
            assert!((x / ComplexValue::new(0.0, -1.0)).re > 0.0);
        }
    }

    #[test]
    fn small_separation_crossover_is_continuous() {
        for gap in [-1.0, 0.0, 0.5, 1.0, 2.0, 4.0] {
            let p = params(gap);
            let below = correlation_c(&p, SMALL_SEPARATION * (1.0 - 1e-12)).unwrap();
            let above = correlation_c(&p, SMALL_SEPARATION).unwrap();
            assert!((below - above).abs() <= 1e-12 * above.abs(), "gap {gap}: {below} vs {above}");
        }
    }

    #[test]
    fn c_approaches_p_at_coincidence() {
        for gap in [0.0, 1.0, 3.0] {
            let p = params(gap);
            let c = correlation_c(&p, 1e-9).unwrap();
            let prob = transition_probability(&p);
            assert!((c - prob).abs() <= 1e-12 * prob);
        }
    }

    #[test]
    fn non_positive_separation_is_rejected() {
        assert_eq!(correlation_c(&params(1.0), 0.0), Err(Error::NonPositiveSeparation(0.0)));
        assert!(correlation_x(&params(1.0), -1.0).is_err());
        assert!(DetectorParams::new(0.0, 1.0).is_err());
        assert!(DetectorParams::new(0.1, f64::NAN).is_err());
    }

    #[test]
    fn elements_stay_finite_far_apart() {
        let e = PairElements::compute(&params(1.0), 50.0).unwrap();
        assert!(e.c.is_finite() && e.x.re.is_finite() && e.x.im.is_finite());
        assert!(e.x.norm() < 1e-4 && e.c.abs() < 1e-4);
    }

    #[test]
    fn perturbativity_thresholds() {
        let clean = PairElements::new(1e-4, 1e-4, ComplexValue::new(0.0, 1e-4), 2.0);
        assert!(perturbativity_check(&clean).is_clean());
        let hard = PairElements::new(1e-4, 1e-4, ComplexValue::new(0.0, 0.3), 2.0);
        assert!(perturbativity_check(&hard).has_hard_flag());
        let close = PairElements::compute(&params(0.0), 0.001).unwrap();
        let report = perturbativity_check(&close);
        assert!(!report.is_clean() && report.small_separation);
    }

    #[test]
    fn strong_coupling_is_recorded() {
        assert!(DetectorParams::new(0.5, 1.0).unwrap().strong_coupling());
        assert!(!params(1.0).strong_coupling());
    }
}
