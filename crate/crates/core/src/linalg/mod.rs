//! Small dense complex matrices and the quantum-information operations on
//! them: partial trace, partial transpose, negativity, von Neumann entropy.
//!
//! Three-qubit states use the excitation-sorted basis
//! `|000>, |001>, |010>, |100>, |011>, |101>, |110>, |111>` with detector A the
//! leftmost label. Two-qubit states use `|00>, |01>, |10>, |11>`.

mod eigen;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, Eigen, HERMITIAN_TOLERANCE};

/// Tolerance for the density-matrix contract (Hermiticity, unit trace,
/// non-negative diagonal).
pub const DENSITY_TOLERANCE: f64 = 1e-14;

/// Eigenvalues in `(-CLAMP_THRESHOLD, 0)` are treated as zero by entropies.
pub const CLAMP_THRESHOLD: f64 = 1e-8;

/// Tolerance on the eigenvalue sum accepted by [`von_neumann_entropy`].
pub const ENTROPY_SUM_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            data.extend(row);
        }
        Ok(CMatrix { dim, data })
    }

    pub fn from_real_diagonal(diagonal: &[f64]) -> Self {
        let mut m = Self::zeros(diagonal.len());
        for (i, &d) in diagonal.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, i)].re).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |m_ij - conj(m_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Sum of `|m_ij|` over `i != j`.
    pub fn off_diagonal_abs_sum(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    sum += self[(i, j)].norm();
                }
            }
        }
        sum
    }

    /// Kronecker product in the natural (lexicographic) ordering.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let n = self.dim * other.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        out[(i * other.dim + k, j * other.dim + l)] = self[(i, j)] * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Computational basis ordering of a density matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// `|00>, |01>, |10>, |11>` for detectors (A, B) or any kept pair.
    TwoQubit,
    /// Excitation-sorted three-qubit ordering (see module docs).
    ThreeQubit,
}

const THREE_QUBIT_CODES: [u8; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

impl Basis {
    pub fn dim(self) -> usize {
        match self {
            Basis::TwoQubit => 4,
            Basis::ThreeQubit => 8,
        }
    }

    pub fn qubits(self) -> usize {
        match self {
            Basis::TwoQubit => 2,
            Basis::ThreeQubit => 3,
        }
    }

    /// Bit string of basis element `index`, leftmost qubit in the highest bit.
    pub fn code(self, index: usize) -> u8 {
        match self {
            Basis::TwoQubit => index as u8,
            Basis::ThreeQubit => THREE_QUBIT_CODES[index],
        }
    }

    pub fn index_of(self, code: u8) -> usize {
        match self {
            Basis::TwoQubit => code as usize,
            Basis::ThreeQubit => THREE_QUBIT_CODES.iter().position(|&c| c == code).expect("3-bit code"),
        }
    }

    pub fn labels(self) -> Vec<String> {
        let q = self.qubits();
        (0..self.dim()).map(|i| format!("|{:0width$b}>", self.code(i), width = q)).collect()
    }

    fn for_dim(dim: usize) -> Result<Self> {
        match dim {
            4 => Ok(Basis::TwoQubit),
            8 => Ok(Basis::ThreeQubit),
            _ => Err(Error::InvalidDensityMatrix(format!("dimension {dim} is not 4 or 8"))),
        }
    }
}

/// A single detector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    fn position(self) -> usize {
        match self {
            Party::A => 0,
            Party::B => 1,
            Party::C => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Party::A => "A",
            Party::B => "B",
            Party::C => "C",
        }
    }

    /// Bit mask of this party within a code of `qubits` bits.
    pub(crate) fn mask(self, qubits: usize) -> Result<u8> {
        let pos = self.position();
        if pos >= qubits {
            return Err(Error::InvalidSubsystem { label: self.label(), dim: 1 << qubits });
        }
        Ok(1 << (qubits - 1 - pos))
    }
}

/// An ordered pair of detectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pair {
    AB,
    AC,
    BC,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::AB, Pair::AC, Pair::BC];

    pub fn parties(self) -> (Party, Party) {
        match self {
            Pair::AB => (Party::A, Party::B),
            Pair::AC => (Party::A, Party::C),
            Pair::BC => (Party::B, Party::C),
        }
    }

    pub fn traced(self) -> Party {
        match self {
            Pair::AB => Party::C,
            Pair::AC => Party::B,
            Pair::BC => Party::A,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pair::AB => "AB",
            Pair::AC => "AC",
            Pair::BC => "BC",
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Hermitian, unit-trace matrix of dimension 4 or 8 in a fixed [`Basis`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    basis: Basis,
}

impl DensityMatrix {
    /// Validates the density-matrix contract to [`DENSITY_TOLERANCE`].
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let basis = Basis::for_dim(matrix.dim())?;
        let deviation = matrix.hermitian_deviation();
        if deviation > DENSITY_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace - 1.0).norm() > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace} != 1")));
        }
        if let Some(d) = matrix.diagonal().into_iter().find(|&d| d < -DENSITY_TOLERANCE) {
            return Err(Error::InvalidDensityMatrix(format!("negative diagonal entry {d:e}")));
        }
        Ok(DensityMatrix { matrix, basis })
    }

    /// For matrices that are Hermitian with unit trace by construction.
    pub(crate) fn from_parts(matrix: CMatrix, basis: Basis) -> Self {
        debug_assert_eq!(matrix.dim(), basis.dim());
        DensityMatrix { matrix, basis }
    }

    pub fn maximally_mixed(basis: Basis) -> Self {
        let n = basis.dim();
        let mut m = CMatrix::identity(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0 / n as f64, 0.0);
        }
        DensityMatrix { matrix: m, basis }
    }

    /// Builds a state from a matrix given in lexicographic qubit ordering
    /// (e.g. the output of [`CMatrix::kron`]).
    pub fn from_lexicographic(matrix: &CMatrix) -> Result<Self> {
        let basis = Basis::for_dim(matrix.dim())?;
        let n = basis.dim();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = matrix[(basis.code(i) as usize, basis.code(j) as usize)];
            }
        }
        DensityMatrix::new(m)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.labels()
    }

    /// The dephased state `rho_diag`.
    pub fn diagonal(&self) -> Vec<f64> {
        self.matrix.diagonal()
    }

    pub fn coherence_l1(&self) -> f64 {
        self.matrix.off_diagonal_abs_sum()
    }
}

impl Index<(usize, usize)> for DensityMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.matrix[idx]
    }
}

/// Reduces a three-detector state to the pair `keep`, tracing out the third
/// detector. The result is in the two-qubit basis with the pair's first
/// detector as the left label.
pub fn partial_trace(rho: &DensityMatrix, keep: Pair) -> Result<DensityMatrix> {
    if rho.basis() != Basis::ThreeQubit {
        return Err(Error::InvalidSubsystem { label: keep.label(), dim: rho.dim() });
    }
    let (first, second) = keep.parties();
    let (m1, m2) = (first.mask(3)?, second.mask(3)?);
    let traced = keep.traced().mask(3)?;
    let reduce = |code: u8| -> usize { (usize::from(code & m1 != 0) << 1) | usize::from(code & m2 != 0) };
    let basis = Basis::ThreeQubit;
    let mut out = CMatrix::zeros(4);
    for i in 0..8 {
        let ci = basis.code(i);
        for j in 0..8 {
            let cj = basis.code(j);
            if ci & traced == cj & traced {
                out[(reduce(ci), reduce(cj))] += rho[(i, j)];
            }
        }
    }
    Ok(DensityMatrix::from_parts(out, Basis::TwoQubit))
}

/// Partial transpose with respect to `party`.
pub fn partial_transpose(rho: &DensityMatrix, party: Party) -> Result<CMatrix> {
    let basis = rho.basis();
    let mask = party.mask(basis.qubits())?;
    let n = basis.dim();
    let mut out = CMatrix::zeros(n);
    for i in 0..n {
        let ci = basis.code(i);
        for j in 0..n {
            let cj = basis.code(j);
            let ri = (ci & !mask) | (cj & mask);
            let rj = (cj & !mask) | (ci & mask);
            out[(basis.index_of(ri), basis.index_of(rj))] = rho[(i, j)];
        }
    }
    Ok(out)
}

/// `(||rho^T||_1 - 1) / 2`, computed as the summed magnitude of the negative
/// eigenvalues of the partial transpose with respect to `party`.
pub fn negativity_numeric(rho: &DensityMatrix, party: Party) -> Result<f64> {
    let transposed = partial_transpose(rho, party)?;
    let values = hermitian_eigenvalues(&transposed)?;
    Ok(values.iter().filter(|&&v| v < 0.0).map(|v| -v).sum())
}

/// `sum |lambda|` of a Hermitian matrix.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|v| v.abs()).sum())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Entropy {
    pub bits: f64,
    /// Magnitude of the most negative eigenvalue that was clamped to zero.
    pub clamped: f64,
}

/// `-sum lambda log2 lambda` over a spectrum summing to one.
///
/// Eigenvalues in `(-CLAMP_THRESHOLD, 0)` count as zero and are reported in
/// [`Entropy::clamped`]; anything more negative is an error.
pub fn von_neumann_entropy(eigenvalues: &[f64]) -> Result<Entropy> {
    let sum: f64 = eigenvalues.iter().sum();
    if (sum - 1.0).abs() > ENTROPY_SUM_TOLERANCE {
        return Err(Error::TraceMismatch { sum });
    }
    entropy_terms(eigenvalues)
}

/// The clamped entropy sum without the normalization check.
pub(crate) fn entropy_terms(values: &[f64]) -> Result<Entropy> {
    let mut bits = 0.0;
    let mut clamped = 0.0f64;
    for &v in values {
        if v < 0.0 {
            if v <= -CLAMP_THRESHOLD {
                return Err(Error::Nonphysical { eigenvalue: v, threshold: CLAMP_THRESHOLD });
            }
            clamped = clamped.max(-v);
        } else if v > 0.0 {
            bits -= v * v.log2();
        }
    }
    Ok(Entropy { bits, clamped })
}
