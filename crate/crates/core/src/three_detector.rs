//! Three detectors A, B, C at the vertices of a triangle.
//!
//! The state lives in the excitation-sorted basis
//! `|000>, |001>, |010>, |100>, |011>, |101>, |110>, |111>` (labels `|ABC>`).
//! The single-excitation block carries the `C` of each pair, the ground row
//! couples to each doubly excited state through that pair's `X`, and `|111>`
//! is unpopulated.

use std::fmt;

use num_complex::Complex64;

use crate::elements::{DetectorParams, PairElements};
use crate::error::{Error, Result};
use crate::linalg::{negativity_numeric, partial_trace, Basis, CMatrix, DensityMatrix, Pair, Party};
use crate::rec::{rec_from_spectrum, rec_numeric, Rec};
use crate::two_detector::ground_block_pair;

/// Position of the non-positive eigenvalue in [`closed_form_spectrum`].
pub const STRUCTURAL_INDEX: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TriangleConfig {
    /// All three separations equal to `separation`.
    Equilateral { separation: f64 },
    /// B in the middle: `AB = BC = separation`, `AC = 2 separation`.
    Linear { separation: f64 },
    /// A and C fixed `lac` apart; B starts at the apex of the equilateral
    /// triangle over AC and is translated by `shift` parallel to AC, towards C
    /// for positive shifts.
    Scalene { lac: f64, shift: f64 },
}

impl TriangleConfig {
    pub fn name(&self) -> &'static str {
        match self {
            TriangleConfig::Equilateral { .. } => "equilateral",
            TriangleConfig::Linear { .. } => "linear",
            TriangleConfig::Scalene { .. } => "scalene",
        }
    }
}

impl fmt::Display for TriangleConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TriangleConfig::Equilateral { separation } => write!(f, "equilateral(L={separation})"),
            TriangleConfig::Linear { separation } => write!(f, "linear(L={separation})"),
            TriangleConfig::Scalene { lac, shift } => write!(f, "scalene(L_AC={lac}, D={shift})"),
        }
    }
}

/// Pairwise separations in units of the switching width.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Separations {
    pub ab: f64,
    pub ac: f64,
    pub bc: f64,
}

impl Separations {
    pub fn get(&self, pair: Pair) -> f64 {
        match pair {
            Pair::AB => self.ab,
            Pair::AC => self.ac,
            Pair::BC => self.bc,
        }
    }
}

fn positive(value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositiveSeparation(value))
    }
}

pub fn resolve_geometry(config: &TriangleConfig) -> Result<Separations> {
    match *config {
        TriangleConfig::Equilateral { separation } => {
            let l = positive(separation)?;
            Ok(Separations { ab: l, ac: l, bc: l })
        }
        TriangleConfig::Linear { separation } => {
            let l = positive(separation)?;
            Ok(Separations { ab: l, ac: 2.0 * l, bc: l })
        }
        TriangleConfig::Scalene { lac, shift } => {
            let l = positive(lac)?;
            if !shift.is_finite() {
                return Err(Error::Geometry(format!("shift must be finite, got {shift}")));
            }
            // B = (L/2 + D, sqrt(3) L / 2): |AB|^2 = L^2 + D(L + D), |BC|^2 = L^2 + D(D - L).
            // This form returns exactly L for D = 0.
            Ok(Separations {
                ab: (l * l + shift * (l + shift)).sqrt(),
                ac: l,
                bc: (l * l + shift * (shift - l)).sqrt(),
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreeDetectorState {
    config: TriangleConfig,
    elems: [PairElements; 3],
    rho: DensityMatrix,
}

impl ThreeDetectorState {
    pub fn config(&self) -> &TriangleConfig {
        &self.config
    }

    /// Elements keyed in [`Pair::ALL`] order.
    pub fn pair_elements(&self) -> &[PairElements; 3] {
        &self.elems
    }

    pub fn elems(&self, pair: Pair) -> &PairElements {
        &self.elems[pair_slot(pair)]
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn transition_probability(&self) -> f64 {
        self.elems[0].p
    }
}

fn pair_slot(pair: Pair) -> usize {
    match pair {
        Pair::AB => 0,
        Pair::AC => 1,
        Pair::BC => 2,
    }
}

pub fn assemble_three(config: TriangleConfig, params: &DetectorParams) -> Result<ThreeDetectorState> {
    let seps = resolve_geometry(&config)?;
    let ab = PairElements::compute(params, seps.ab)?;
    let elems = match config {
        TriangleConfig::Equilateral { .. } => [ab; 3],
        TriangleConfig::Linear { .. } => [ab, PairElements::compute(params, seps.ac)?, ab],
        TriangleConfig::Scalene { .. } => {
            [ab, PairElements::compute(params, seps.ac)?, PairElements::compute(params, seps.bc)?]
        }
    };
    Ok(assemble_three_from_elements(config, elems))
}

/// Places given `(AB, AC, BC)` elements. The transition probability is taken
/// from the AB entry; detectors are identical.
pub fn assemble_three_from_elements(config: TriangleConfig, elems: [PairElements; 3]) -> ThreeDetectorState {
    let p = elems[0].p;
    let mut m = CMatrix::from_real_diagonal(&[1.0 - 3.0 * p, p, p, p, 0.0, 0.0, 0.0, 0.0]);
    let basis = Basis::ThreeQubit;
    let bit = |party: Party| party.mask(3).expect("three-qubit party");
    for pair in Pair::ALL {
        let e = &elems[pair_slot(pair)];
        let (first, second) = pair.parties();
        // Single excitations exchanged between the two detectors of the pair.
        let i = basis.index_of(bit(first));
        let j = basis.index_of(bit(second));
        m[(i, j)] = Complex64::new(e.c, 0.0);
        m[(j, i)] = Complex64::new(e.c, 0.0);
        // Ground state to both detectors of the pair excited.
        let d = basis.index_of(bit(first) | bit(second));
        m[(0, d)] = e.x;
        m[(d, 0)] = e.x.conj();
    }
    ThreeDetectorState { config, elems, rho: DensityMatrix::from_parts(m, basis) }
}

/// Generic `l1` coherence: twice the summed `|C|` and `|X|` of the three pairs.
pub fn coherence_l1_three(state: &ThreeDetectorState) -> f64 {
    2.0 * state.elems.iter().map(|e| e.c.abs() + e.x.norm()).sum::<f64>()
}

/// Per-configuration closed forms: `6|C| + 6|X|` (equilateral),
/// `4|C_L| + 2|C_2L| + 4|X_L| + 2|X_2L|` (linear), six-term sum (scalene).
pub fn coherence_l1_closed_form(state: &ThreeDetectorState) -> f64 {
    let [ab, ac, bc] = &state.elems;
    match state.config {
        TriangleConfig::Equilateral { .. } => 6.0 * ab.c.abs() + 6.0 * ab.x.norm(),
        TriangleConfig::Linear { .. } => 4.0 * ab.c.abs() + 2.0 * ac.c.abs() + 4.0 * ab.x.norm() + 2.0 * ac.x.norm(),
        TriangleConfig::Scalene { .. } => {
            2.0 * (ab.c.abs() + ac.c.abs() + bc.c.abs() + ab.x.norm() + ac.x.norm() + bc.x.norm())
        }
    }
}

/// The five eigenvalues not identically zero.
///
/// Equilateral: `[P - C, P - C, P + 2C, g_-, g_+]`.
/// Linear: `[P - C_2L, s_-, s_+, g_-, g_+]` with
/// `s_-/+ = (2P + C_2L -/+ sqrt(8 C_L^2 + C_2L^2)) / 2`.
/// In both, `g_-/+ = (1 - 3P -/+ sqrt((1 - 3P)^2 + 4 sum|X|^2)) / 2`.
/// Scalene states have no closed form.
pub fn closed_form_spectrum(state: &ThreeDetectorState) -> Result<[f64; 5]> {
    let [ab, ac, _] = state.elems;
    let p = ab.p;
    match state.config {
        TriangleConfig::Equilateral { .. } => {
            let c = ab.c;
            let (g_minus, g_plus) = ground_block_pair(1.0 - 3.0 * p, 12.0 * ab.x.norm_sqr());
            Ok([p - c, p - c, p + 2.0 * c, g_minus, g_plus])
        }
        TriangleConfig::Linear { .. } => {
            let (cl, c2l) = (ab.c, ac.c);
            let root = (8.0 * cl * cl + c2l * c2l).sqrt();
            let q = 8.0 * ab.x.norm_sqr() + 4.0 * ac.x.norm_sqr();
            let (g_minus, g_plus) = ground_block_pair(1.0 - 3.0 * p, q);
            Ok([p - c2l, 0.5 * (2.0 * p + c2l - root), 0.5 * (2.0 * p + c2l + root), g_minus, g_plus])
        }
        TriangleConfig::Scalene { .. } => {
            Err(Error::UnsupportedConfiguration("no closed-form spectrum for scalene triangles"))
        }
    }
}

/// REC from the closed-form spectrum where one exists, otherwise numerically.
pub fn rec_three(state: &ThreeDetectorState) -> Result<Rec> {
    match closed_form_spectrum(state) {
        Ok(spectrum) => rec_from_spectrum(&state.rho.diagonal(), &spectrum, STRUCTURAL_INDEX),
        Err(Error::UnsupportedConfiguration(_)) => rec_three_numeric(state),
        Err(e) => Err(e),
    }
}

pub fn rec_three_numeric(state: &ThreeDetectorState) -> Result<Rec> {
    rec_numeric(&state.rho)
}

/// Closed-form tripartite negativity of an equilateral state,
/// `max(0, sqrt(C^2 + 8|X|^2) / 2 - C / 2 - P)`.
///
/// This is the smallest eigenvalue of the single-excitation block of the
/// partial transpose. The ground/double-excitation block contributes a
/// further `O(lambda^4)` negative eigenvalue that is not included.
pub fn tripartite_negativity(state: &ThreeDetectorState) -> Result<f64> {
    if !matches!(state.config, TriangleConfig::Equilateral { .. }) {
        return Err(Error::UnsupportedConfiguration(
            "closed-form tripartite negativity requires an equilateral triangle",
        ));
    }
    let e = &state.elems[0];
    let value = 0.5 * (e.c * e.c + 8.0 * e.x.norm_sqr()).sqrt() - 0.5 * e.c - e.p;
    Ok(value.max(0.0))
}

/// Geometric mean of the three one-versus-rest negativities.
pub fn tripartite_negativity_numeric(state: &ThreeDetectorState) -> Result<f64> {
    let mut product = 1.0;
    for party in [Party::A, Party::B, Party::C] {
        product *= negativity_numeric(&state.rho, party)?;
    }
    Ok(product.cbrt())
}

/// `C_l1(rho_AB) + C_l1(rho_BC) + C_l1(rho_AC) - C_l1(rho_ABC)` with the
/// reduced states obtained by partial trace.
pub fn monogamy_residual(state: &ThreeDetectorState) -> Result<f64> {
    let mut bipartite = 0.0;
    for pair in Pair::ALL {
        bipartite += partial_trace(&state.rho, pair)?.coherence_l1();
    }
    Ok(bipartite - state.rho.coherence_l1())
}
