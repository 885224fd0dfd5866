//! Two detectors A and B after the interaction, in the basis
//! `|00>, |01>, |10>, |11>`:
//!
//! ```text
//! | 1-2P   0    0    X |
//! |  0     P    C    0 |
//! |  0     C*   P    0 |
//! |  X*    0    0    0 |
//! ```

use num_complex::Complex64;

use crate::elements::PairElements;
use crate::error::Result;
use crate::linalg::{negativity_numeric, Basis, CMatrix, DensityMatrix, Party};
use crate::rec::{rec_from_spectrum, rec_numeric, Rec};

/// Position of the non-positive eigenvalue in [`TwoDetectorState::closed_form_spectrum`].
pub const STRUCTURAL_INDEX: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct TwoDetectorState {
    elems: PairElements,
    rho: DensityMatrix,
}

pub fn assemble_two(elems: PairElements) -> TwoDetectorState {
    let PairElements { p, c, x, .. } = elems;
    let mut m = CMatrix::from_real_diagonal(&[1.0 - 2.0 * p, p, p, 0.0]);
    m[(0, 3)] = x;
    m[(3, 0)] = x.conj();
    m[(1, 2)] = Complex64::new(c, 0.0);
    m[(2, 1)] = Complex64::new(c, 0.0);
    TwoDetectorState { elems, rho: DensityMatrix::from_parts(m, Basis::TwoQubit) }
}

impl TwoDetectorState {
    pub fn elems(&self) -> &PairElements {
        &self.elems
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    /// `[P - C, P + C, lambda_-, lambda_+]` with
    /// `lambda_-/+ = (1 - 2P -/+ sqrt((1 - 2P)^2 + 4|X|^2)) / 2`.
    pub fn closed_form_spectrum(&self) -> [f64; 4] {
        let PairElements { p, c, x, .. } = self.elems;
        let (minus, plus) = ground_block_pair(1.0 - 2.0 * p, 4.0 * x.norm_sqr());
        [p - c, p + c, minus, plus]
    }
}

/// Roots of `t^2 - b t - q/4 = 0` for `q >= 0`, the smaller one computed
/// without cancellation.
pub(crate) fn ground_block_pair(b: f64, q: f64) -> (f64, f64) {
    let root = (b * b + q).sqrt();
    let plus = 0.5 * (b + root);
    let minus = if q == 0.0 { 0.5 * (b - root) } else { -0.5 * q / (b + root) };
    (minus, plus)
}

/// `2|C| + 2|X|`.
pub fn coherence_l1_two(state: &TwoDetectorState) -> f64 {
    2.0 * state.elems.c.abs() + 2.0 * state.elems.x.norm()
}

/// REC from the closed-form spectrum.
pub fn rec_two(state: &TwoDetectorState) -> Result<Rec> {
    rec_from_spectrum(&state.rho.diagonal(), &state.closed_form_spectrum(), STRUCTURAL_INDEX)
}

pub fn rec_two_numeric(state: &TwoDetectorState) -> Result<Rec> {
    rec_numeric(&state.rho)
}

/// `max(0, |X| - P)`; `C` does not enter.
pub fn negativity_two(state: &TwoDetectorState) -> f64 {
    (state.elems.x.norm() - state.elems.p).max(0.0)
}

/// Negativity of the partial transpose over detector A.
pub fn negativity_two_numeric(state: &TwoDetectorState) -> Result<f64> {
    negativity_numeric(&state.rho, Party::A)
}
