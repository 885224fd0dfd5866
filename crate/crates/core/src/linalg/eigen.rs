use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

/// Hermiticity tolerance accepted by the eigensolver.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

#[derive(Clone, Debug)]
pub struct Eigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMatrix,
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

/// Cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// the real symmetric Jacobi rotation, so the pivot is annihilated exactly.
/// Sweeps stop once the off-diagonal Frobenius norm drops below
/// `1e-14 * max(1, ||A||_F)`.
pub fn hermitian_eigen(m: &CMatrix) -> Result<Eigen> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim();
    let mut a = m.clone();
    // Symmetrize away sub-tolerance asymmetry and force a real diagonal.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = CMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOLERANCE * a.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (k, &i) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, k)] = v[(r, i)];
        }
    }
    Ok(Eigen { values, vectors })
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let h = a[(p, q)];
    let magnitude = h.norm();
    if magnitude == 0.0 {
        return;
    }
    let phase = h / magnitude; // e^{i phi}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    // Real rotation for [[app, |h|], [|h|, aqq]].
    let theta = (aqq - app) / (2.0 * magnitude);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // U acts on columns p, q: U_pp = c, U_pq = s, U_qp = -s e^{-i phi}, U_qq = c e^{-i phi}.
    let phase_conj = phase.conj();
    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * phase_conj * s;
        a[(k, q)] = akp * s + akq * phase_conj * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * magnitude, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * magnitude, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * phase_conj * s;
        v[(k, q)] = vkp * s + vkq * phase_conj * c;
    }
}
