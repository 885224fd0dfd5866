//! Built-in cross-checks between the closed forms and the numeric routes,
//! run at fixed seeds. A [`Mutation`] deliberately breaks one closed form so
//! that the corresponding check can be seen to fail.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::elements::{DetectorParams, PairElements};
use crate::error::{Error, Result};
use crate::linalg::hermitian_eigenvalues;
use crate::special::erf_complex;
use crate::three_detector::{
    assemble_three, closed_form_spectrum, monogamy_residual, rec_three, rec_three_numeric, tripartite_negativity,
    tripartite_negativity_numeric, TriangleConfig,
};
use crate::two_detector::{
    assemble_two, negativity_two, negativity_two_numeric, rec_two, rec_two_numeric, TwoDetectorState,
};

const SEED: u64 = 0x5eed_2024;
const DRAWS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Evaluate the largest ground-block eigenvalue of the equilateral state
    /// with the negative square-root branch.
    Lambda9Sign,
    /// Let the two-detector negativity depend on `C`.
    NegativityCDependence,
}

impl Mutation {
    pub const ALL: [Mutation; 2] = [Mutation::Lambda9Sign, Mutation::NegativityCDependence];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::Lambda9Sign => "lambda9-sign",
            Mutation::NegativityCDependence => "negativity-c-dependence",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidSweep(format!("unknown mutation '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Set when the check could not be evaluated at all.
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.max_deviation <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        match &self.error {
            Some(e) => write!(f, "{status} {:<36} error: {e}", self.name),
            None => write!(
                f,
                "{status} {:<36} max deviation {:.3e} (tolerance {:.1e})",
                self.name, self.max_deviation, self.tolerance
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn check(name: &'static str, tolerance: f64, run: impl FnOnce() -> Result<f64>) -> Check {
    match run() {
        Ok(max_deviation) => Check { name, max_deviation, tolerance, error: None },
        Err(e) => Check { name, max_deviation: f64::INFINITY, tolerance, error: Some(e.to_string()) },
    }
}

fn random_params(rng: &mut StdRng) -> Result<(DetectorParams, f64)> {
    let params = DetectorParams::new(rng.gen_range(0.01..0.2), rng.gen_range(0.0..3.0))?;
    Ok((params, rng.gen_range(0.3..8.0)))
}

fn max_sorted_gap(closed: &[f64], dim: usize, numeric: &[f64]) -> f64 {
    let mut padded = closed.to_vec();
    padded.resize(dim, 0.0);
    padded.sort_by(f64::total_cmp);
    padded.iter().zip(numeric).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn negativity_closed(state: &TwoDetectorState, mutation: Option<Mutation>) -> f64 {
    match mutation {
        Some(Mutation::NegativityCDependence) => {
            let e = state.elems();
            (e.x.norm() - e.p + 0.5 * e.c).max(0.0)
        }
        _ => negativity_two(state),
    }
}

pub fn run(mutation: Option<Mutation>) -> Report {
    let mut checks = Vec::new();

    checks.push(check("erf odd and conjugation symmetry", 0.0, || {
        let mut rng = StdRng::seed_from_u64(SEED);
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let z = Complex64::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
            let w = erf_complex(z)?;
            worst = worst.max((erf_complex(-z)? + w).norm()).max((erf_complex(z.conj())? - w.conj()).norm());
        }
        Ok(worst)
    }));

    checks.push(check("erf reference values", 1e-15, || {
        let one = erf_complex(Complex64::new(1.0, 0.0))?;
        let i = erf_complex(Complex64::new(0.0, 1.0))?;
        Ok(((one.re - 0.842_700_792_949_714_9) / 0.842_700_792_949_714_9)
            .abs()
            .max(((i.im - 1.650_425_758_797_542_8) / 1.650_425_758_797_542_8).abs())
            .max(one.im.abs() + i.re.abs()))
    }));

    checks.push(check("two-detector spectrum", 1e-12, || {
        let mut rng = StdRng::seed_from_u64(SEED + 1);
        let mut worst = 0.0f64;
        for _ in 0..DRAWS {
            let (params, l) = random_params(&mut rng)?;
            let state = assemble_two(PairElements::compute(&params, l)?);
            let numeric = hermitian_eigenvalues(state.rho().matrix())?;
            worst = worst.max(max_sorted_gap(&state.closed_form_spectrum(), 4, &numeric));
        }
        Ok(worst)
    }));

    for (name, shape) in [("equilateral spectrum", 0u8), ("linear spectrum", 1u8)] {
        checks.push(check(name, 1e-12, || {
            let mut rng = StdRng::seed_from_u64(SEED + 2 + shape as u64);
            let mut worst = 0.0f64;
            for _ in 0..DRAWS {
                let (params, l) = random_params(&mut rng)?;
                let config = if shape == 0 {
                    TriangleConfig::Equilateral { separation: l }
                } else {
                    TriangleConfig::Linear { separation: l }
                };
                let state = assemble_three(config, &params)?;
                let mut closed = closed_form_spectrum(&state)?;
                if shape == 0 && mutation == Some(Mutation::Lambda9Sign) {
                    closed[4] = closed[3];
                }
                let numeric = hermitian_eigenvalues(state.rho().matrix())?;
                worst = worst.max(max_sorted_gap(&closed, 8, &numeric)).max((closed.iter().sum::<f64>() - 1.0).abs());
            }
            Ok(worst)
        }));
    }

    checks.push(check("monogamy residual", 1e-14, || {
        let mut rng = StdRng::seed_from_u64(SEED + 4);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let (params, l) = random_params(&mut rng)?;
            let shift = rng.gen_range(0.0..10.0);
            for config in [
                TriangleConfig::Equilateral { separation: l },
                TriangleConfig::Linear { separation: l },
                TriangleConfig::Scalene { lac: l, shift },
            ] {
                worst = worst.max(monogamy_residual(&assemble_three(config, &params)?)?.abs());
            }
        }
        Ok(worst)
    }));

    checks.push(check("REC closed form vs eigensolve", 1e-12, || {
        let mut rng = StdRng::seed_from_u64(SEED + 5);
        let mut worst = 0.0f64;
        for _ in 0..DRAWS {
            let (params, l) = random_params(&mut rng)?;
            let two = assemble_two(PairElements::compute(&params, l)?);
            worst = worst.max((rec_two(&two)?.bits - rec_two_numeric(&two)?.bits).abs());
            for config in [TriangleConfig::Equilateral { separation: l }, TriangleConfig::Linear { separation: l }] {
                let s = assemble_three(config, &params)?;
                worst = worst.max((rec_three(&s)?.bits - rec_three_numeric(&s)?.bits).abs());
            }
        }
        Ok(worst)
    }));

    checks.push(check("two-detector negativity vs transpose", 5e-6, || {
        let mut worst = 0.0f64;
        for gap in [0.5, 1.0, 2.0] {
            let params = DetectorParams::new(0.1, gap)?;
            for k in 0..=110 {
                let l = 0.5 + 0.05 * k as f64;
                let state = assemble_two(PairElements::compute(&params, l)?);
                worst = worst.max((negativity_closed(&state, mutation) - negativity_two_numeric(&state)?).abs());
            }
        }
        Ok(worst)
    }));

    checks.push(check("negativity independent of C", 0.0, || {
        let mut rng = StdRng::seed_from_u64(SEED + 6);
        let mut worst = 0.0f64;
        for _ in 0..DRAWS {
            let (params, l) = random_params(&mut rng)?;
            let e = PairElements::compute(&params, l)?;
            let base = negativity_closed(&assemble_two(e), mutation);
            for factor in [0.0, 0.5, -1.0] {
                let perturbed = PairElements { c: e.c * factor, ..e };
                worst = worst.max((negativity_closed(&assemble_two(perturbed), mutation) - base).abs());
            }
        }
        Ok(worst)
    }));

    checks.push(check("tripartite negativity at L=1, gap 1", 5e-6, || {
        let state = assemble_three(TriangleConfig::Equilateral { separation: 1.0 }, &DetectorParams::new(0.1, 1.0)?)?;
        Ok((tripartite_negativity(&state)? - tripartite_negativity_numeric(&state)?).abs())
    }));

    Report { checks }
}
