#![allow(clippy::needless_range_loop)]

//! Independent spectrum oracle: a Hermitian `M = A + iB` is embedded as the
//! real symmetric `[[A, -B], [B, A]]`, whose spectrum is that of `M` with
//! every eigenvalue doubled, and diagonalized by classical Jacobi sweeps.

use num_complex::Complex64;

pub fn hermitian_spectrum(m: &[Vec<Complex64>]) -> Vec<f64> {
    let n = m.len();
    let size = 2 * n;
    let mut a = vec![vec![0.0f64; size]; size];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = m[i][j].re;
            a[i + n][j + n] = m[i][j].re;
            a[i][j + n] = -m[i][j].im;
            a[i + n][j] = m[i][j].im;
        }
    }
    for _ in 0..100 {
        let off: f64 = (0..size)
            .flat_map(|i| (0..size).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-34 {
            break;
        }
        for p in 0..size {
            for q in (p + 1)..size {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = 0.5 * (2.0 * a[p][q]).atan2(a[q][q] - a[p][p]);
                let (s, c) = theta.sin_cos();
                for k in 0..size {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..size {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..size).map(|i| a[i][i]).collect();
    values.sort_by(f64::total_cmp);
    // Each eigenvalue appears twice.
    values.into_iter().step_by(2).collect()
}
