//! Relative entropy of coherence under the perturbative eigenvalue policy.
//!
//! Truncated at second order, the assembled states always carry one negative
//! eigenvalue of size O(lambda^4): the ground/double-excitation block has a
//! zero diagonal entry paired with a nonzero off-diagonal. It lies below the
//! accuracy of the state itself, so it is set to zero before the logarithm
//! and returned separately. Every other eigenvalue goes through the ordinary
//! [`CLAMP_THRESHOLD`](crate::linalg::CLAMP_THRESHOLD) rule.

use crate::error::{Error, Result};
use crate::linalg::{entropy_terms, hermitian_eigenvalues, DensityMatrix, ENTROPY_SUM_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rec {
    /// `S(rho_diag) - S(rho)` in bits.
    pub bits: f64,
    /// The structural eigenvalue that was dropped (normally `<= 0`).
    pub structural_eigenvalue: f64,
}

/// REC from an explicit spectrum. `structural` indexes the eigenvalue that
/// the policy sets to zero.
pub fn rec_from_spectrum(diagonal: &[f64], spectrum: &[f64], structural: usize) -> Result<Rec> {
    let sum: f64 = spectrum.iter().sum();
    if (sum - 1.0).abs() > ENTROPY_SUM_TOLERANCE {
        return Err(Error::TraceMismatch { sum });
    }
    let structural_eigenvalue = *spectrum
        .get(structural)
        .ok_or(Error::DimensionMismatch { expected: structural + 1, found: spectrum.len() })?;
    let mut kept = spectrum.to_vec();
    kept[structural] = 0.0;
    let s_rho = entropy_terms(&kept)?.bits;
    let s_diag = entropy_terms(diagonal)?.bits;
    Ok(Rec { bits: s_diag - s_rho, structural_eigenvalue })
}

/// REC from a numeric eigensolve; the structural eigenvalue is the smallest.
pub fn rec_numeric(rho: &DensityMatrix) -> Result<Rec> {
    let spectrum = hermitian_eigenvalues(rho.matrix())?;
    rec_from_spectrum(&rho.diagonal(), &spectrum, 0)
}
