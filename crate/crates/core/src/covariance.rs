//! The 4×4 covariance matrix and its block structure.

use num_complex::Complex64;

use crate::canonical::{t, Mat2, Mat4};
use crate::error::{Error, Result};
use crate::linalg::{ensure_hermitian, hermitian_part, scale};
use crate::params::GaussianParams;

/// Hermitian 4×4 covariance matrix in the basis `(a₁†, a₁, a₂†, a₂)`.
///
/// ```text
///     ⎛ n₁    m₁    m_s   m_c  ⎞
/// V = ⎜ m₁*   n₁    m_c*  m_s* ⎟ = ⎛ V₁  C  ⎞
///     ⎜ m_s*  m_c   n₂    m₂   ⎟   ⎝ C†  V₂ ⎠
///     ⎝ m_c*  m_s   m₂*   n₂   ⎠
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(Mat4);

/// The three 2×2 blocks of a covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blocks {
    pub v1: Mat2,
    pub v2: Mat2,
    pub c: Mat2,
}

impl Blocks {
    pub fn assemble(&self) -> Mat4 {
        let mut m = Mat4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.v1);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.c);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&self.c.adjoint());
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.v2);
        m
    }
}

impl CovarianceMatrix {
    /// Lays out `params` in the fixed covariance pattern. Hermitian by
    /// construction.
    pub fn from_params(p: &GaussianParams) -> Self {
        let r = |x: f64| Complex64::new(x, 0.0);
        let (n1, n2) = (r(p.n1()), r(p.n2()));
        let (m1, m2, ms, mc) = (p.m1(), p.m2(), p.ms(), p.mc());
        #[rustfmt::skip]
        let m = Mat4::new(
            n1,        m1,        ms,        mc,
            m1.conj(), n1,        mc.conj(), ms.conj(),
            ms.conj(), mc,        n2,        m2,
            mc.conj(), ms,        m2.conj(), n2,
        );
        Self(m)
    }

    /// Wraps an arbitrary Hermitian matrix (it need not follow the parameter
    /// layout).
    pub fn from_matrix(m: Mat4, tol_herm: f64) -> Result<Self> {
        ensure_hermitian(&m, tol_herm)?;
        Ok(Self(hermitian_part(&m)))
    }

    /// Hermitian part of `m` without a check. For results of congruences
    /// whose Hermiticity is guaranteed up to round-off.
    pub(crate) fn from_congruence(m: Mat4) -> Self {
        Self(hermitian_part(&m))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn blocks(&self) -> Blocks {
        Blocks {
            v1: self.0.fixed_view::<2, 2>(0, 0).into_owned(),
            v2: self.0.fixed_view::<2, 2>(2, 2).into_owned(),
            c: self.0.fixed_view::<2, 2>(0, 2).into_owned(),
        }
    }

    /// Largest deviation of the matrix from the parameter layout.
    pub fn layout_deviation(&self) -> f64 {
        let v = &self.0;
        let pairs = [
            ((0, 0), (1, 1), false),
            ((2, 2), (3, 3), false),
            ((0, 1), (1, 0), true),
            ((2, 3), (3, 2), true),
            ((0, 2), (1, 3), true),
            ((0, 3), (1, 2), true),
            ((0, 2), (2, 0), true),
            ((0, 3), (3, 0), true),
            ((1, 2), (2, 1), true),
            ((1, 3), (3, 1), true),
        ];
        let mut dev = [v[(0, 0)].im, v[(2, 2)].im]
            .iter()
            .fold(0.0f64, |acc, x| acc.max(x.abs()));
        for (a, b, conj) in pairs {
            let other = if conj { v[b].conj() } else { v[b] };
            dev = dev.max((v[a] - other).norm());
        }
        dev
    }

    /// Reads the six parameters back, failing if the matrix does not follow
    /// the layout within `tol_herm · max(1, max|Vᵢⱼ|)`.
    pub fn to_params(&self, tol_herm: f64) -> Result<GaussianParams> {
        let deviation = self.layout_deviation();
        if deviation > tol_herm * scale(&self.0) {
            return Err(Error::NotCovarianceLayout { deviation });
        }
        self.project_params()
    }

    /// Parameters of the nearest matrix with the covariance layout
    /// (symmetric averages of the paired entries).
    pub(crate) fn project_params(&self) -> Result<GaussianParams> {
        let v = &self.0;
        let avg = |a: Complex64, b: Complex64| (a + b) * 0.5;
        GaussianParams::from_parts(
            0.5 * (v[(0, 0)].re + v[(1, 1)].re),
            0.5 * (v[(2, 2)].re + v[(3, 3)].re),
            avg(v[(0, 1)], v[(1, 0)].conj()),
            avg(v[(2, 3)], v[(3, 2)].conj()),
            avg(v[(0, 2)], v[(1, 3)].conj()),
            avg(v[(0, 3)], v[(1, 2)].conj()),
        )
    }
}

/// `TVT`: the partial mirror reflection (partial transpose) of `v`.
pub fn partial_transpose(v: &CovarianceMatrix) -> CovarianceMatrix {
    let t = t();
    CovarianceMatrix(t * v.0 * t)
}
