//! Complex-matrix kernels: Hermitian eigendecomposition, unitary propagators,
//! and small helpers shared by both state backends.
//!
//! The eigensolver is a cyclic Jacobi iteration specialised for Hermitian
//! matrices. Blocks in the symmetric backend stay below ~100x100 and the
//! dense oracle below 2^8 x 2^8, where Jacobi is plenty fast and accurate to
//! near machine precision.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Float;

/// Dynamically sized complex matrix used for operators and density blocks.
pub type CMatrix = DMatrix<Complex64>;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const C_I: Complex64 = Complex64::new(0.0, 1.0);

/// Result of a Hermitian eigendecomposition: `a = vectors * diag(values) * vectors†`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the corresponding eigenvectors.
    pub vectors: CMatrix,
}

/// Max |a_ij - conj(a_ji)| over all entries.
pub fn hermiticity_residual(a: &CMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in i..a.ncols() {
            let d = a[(i, j)] - a[(j, i)].conj();
            worst = worst.max(d.norm());
        }
    }
    worst
}

/// Real part of the trace.
pub fn trace_re(a: &CMatrix) -> f64 {
    (0..a.nrows()).map(|i| a[(i, i)].re).sum()
}

/// Complex trace.
pub fn trace(a: &CMatrix) -> Complex64 {
    (0..a.nrows()).map(|i| a[(i, i)]).sum()
}

/// Conjugate transpose.
pub fn dagger(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

/// `u * a * u†`.
pub fn conjugate_by(u: &CMatrix, a: &CMatrix) -> CMatrix {
    u * a * u.adjoint()
}

/// Frobenius norm of the off-diagonal part.
fn off_norm(a: &CMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi with thresholding.
///
/// The input is symmetrised internally; callers are expected to hand in
/// matrices that are Hermitian up to roundoff. Panics only on empty input.
pub fn hermitian_eigen(a: &CMatrix) -> HermitianEigen {
    let n = a.nrows();
    assert!(n > 0 && a.ncols() == n, "hermitian_eigen needs a square matrix");

    // Work on the Hermitian average to kill roundoff asymmetry.
    let mut m = CMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(n, n);

    if n == 1 {
        return HermitianEigen { values: alloc::vec![m[(0, 0)].re], vectors: v };
    }

    let scale = m.iter().map(|z| z.norm()).fold(0.0_f64, f64::max).max(1.0);
    let stop = 1e-15 * scale * (n as f64);

    for _sweep in 0..60 {
        if off_norm(&m) <= stop {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let abs = apq.norm();
                if abs <= 1e-300 {
                    continue;
                }
                let phase = apq / abs; // e^{i phi}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // U: U[p][p]=c, U[p][q]=-s*phase, U[q][p]=s*conj(phase), U[q][q]=c
                let sp = phase * s;
                // Column update: A <- A * U, V <- V * U.
                for i in 0..n {
                    let aip = m[(i, p)];
                    let aiq = m[(i, q)];
                    m[(i, p)] = aip * c + aiq * sp.conj();
                    m[(i, q)] = aiq * c - aip * sp;

                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c + viq * sp.conj();
                    v[(i, q)] = viq * c - vip * sp;
                }
                // Row update: A <- U† * A.
                for j in 0..n {
                    let apj = m[(p, j)];
                    let aqj = m[(q, j)];
                    m[(p, j)] = apj * c + aqj * sp;
                    m[(q, j)] = aqj * c - apj * sp.conj();
                }
                // Pin the rotated 2x2 block to exact reals.
                m[(p, q)] = C_ZERO;
                m[(q, p)] = C_ZERO;
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
            }
        }
    }

    // Sort ascending, reorder eigenvector columns with a stable order.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("NaN eigenvalue"));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    HermitianEigen { values, vectors }
}

impl HermitianEigen {
    /// `f` applied to the spectrum: `vectors * diag(f(lambda)) * vectors†`.
    pub fn apply_fn(&self, mut f: impl FnMut(f64) -> Complex64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let fl = f(lambda);
            for i in 0..n {
                scaled[(i, j)] *= fl;
            }
        }
        &scaled * self.vectors.adjoint()
    }

    /// Propagator `exp(-i * H * t)` for the decomposed Hermitian `H`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        self.apply_fn(|lambda| Complex64::from_polar(1.0, -lambda * t))
    }
}

/// `exp(-i * h * t)` for Hermitian `h`.
pub fn propagator(h: &CMatrix, t: f64) -> CMatrix {
    hermitian_eigen(h).propagator(t)
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Kronecker product of a list of matrices, left to right.
pub fn kron_all(ms: &[&CMatrix]) -> CMatrix {
    let mut out = ms[0].clone();
    for m in &ms[1..] {
        out = out.kronecker(m);
    }
    out
}
