//! Small dense Hermitian helpers: Hermiticity checks, smallest eigenvalue,
//! and the 2×2 block Schur complement.

use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex64;

use crate::canonical::Mat2;
use crate::error::{Error, Result};

/// Largest absolute entry, floored at 1. Used to scale structural tolerances.
pub(crate) fn scale<const N: usize>(m: &SMatrix<Complex64, N, N>) -> f64 {
    m.iter().map(|z| z.norm()).fold(1.0, f64::max)
}

/// `max |mᵢⱼ − conj(mⱼᵢ)|`.
pub fn hermitian_deviation<const N: usize>(m: &SMatrix<Complex64, N, N>) -> f64 {
    let mut dev = 0.0f64;
    for i in 0..N {
        for j in i..N {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Fails unless `m` is Hermitian within `tol · max(1, max|mᵢⱼ|)`.
pub fn ensure_hermitian<const N: usize>(m: &SMatrix<Complex64, N, N>, tol: f64) -> Result<()> {
    let deviation = hermitian_deviation(m);
    if deviation > tol * scale(m) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// `(m + m†) / 2`.
pub fn hermitian_part<const N: usize>(m: &SMatrix<Complex64, N, N>) -> SMatrix<Complex64, N, N> {
    (m + m.adjoint()).unscale(2.0)
}

/// Smallest eigenvalue of a Hermitian matrix, after checking Hermiticity.
pub fn min_eigenvalue_hermitian<const N: usize>(
    m: &SMatrix<Complex64, N, N>,
    tol_herm: f64,
) -> Result<f64> {
    ensure_hermitian(m, tol_herm)?;
    Ok(min_eigenvalue_unchecked(m))
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub(crate) fn min_eigenvalue_unchecked<const N: usize>(m: &SMatrix<Complex64, N, N>) -> f64 {
    let h = hermitian_part(m);
    let dynamic = DMatrix::from_iterator(N, N, h.iter().copied());
    dynamic
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Determinant of a 2×2 matrix.
pub fn det2(m: &Mat2) -> Complex64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

/// `(V₂ + shift₂) − C† (V₁ + shift₁)⁻¹ C`.
pub fn schur_complement(
    v1: &Mat2,
    v2: &Mat2,
    c: &Mat2,
    shift1: &Mat2,
    shift2: &Mat2,
    tol_sing: f64,
) -> Result<Mat2> {
    let a = v1 + shift1;
    let det = det2(&a);
    if det.norm() <= tol_sing {
        return Err(Error::SingularBlock { det: det.norm() });
    }
    let adj = Mat2::new(a[(1, 1)], -a[(0, 1)], -a[(1, 0)], a[(0, 0)]);
    let inv = adj.map(|z| z / det);
    Ok(v2 + shift2 - c.adjoint() * inv * c)
}
