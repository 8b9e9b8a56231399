//! Local `Sp(2,R) ⊗ Sp(2,R)` transforms, their invariants, and reduction to
//! the two invariant forms.
//!
//! A local transform acts as `V ↦ S†VS` with `S = S₁ ⊕ S₂` and
//!
//! ```text
//! Sᵢ = ⎛ e^{iφᵢ} cosh θᵢ    e^{iϕᵢ} sinh θᵢ  ⎞
//!      ⎝ e^{−iϕᵢ} sinh θᵢ   e^{−iφᵢ} cosh θᵢ ⎠
//! ```
//!
//! (`φ` = `phi`, `ϕ` = `vphi`). Every such `S` satisfies `S⁻¹ = E S† E`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::canonical::{direct_sum, e, identity4, z, Mat2, Mat4};
use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::linalg::det2;
use crate::params::GaussianParams;
use crate::TAU_FORM;

/// Squeezing magnitudes and phases of a local transform.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LocalAngles {
    pub theta1: f64,
    pub phi1: f64,
    pub vphi1: f64,
    pub theta2: f64,
    pub phi2: f64,
    pub vphi2: f64,
}

/// A realized local symplectic transform `S₁ ⊕ S₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalSymplectic {
    angles: LocalAngles,
    matrix: Mat4,
}

/// Single-mode block `Sᵢ`.
pub fn single_mode(theta: f64, phi: f64, vphi: f64) -> Mat2 {
    let (ch, sh) = (theta.cosh(), theta.sinh());
    Mat2::new(
        Complex64::from_polar(ch, phi),
        Complex64::from_polar(sh, vphi),
        Complex64::from_polar(sh, -vphi),
        Complex64::from_polar(ch, -phi),
    )
}

/// `max |S (E S† E) − I|`: zero iff `S⁻¹ = E S† E`.
pub fn symplectic_defect(s: &Mat4) -> f64 {
    let e = e();
    (s * (e * s.adjoint() * e) - identity4())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

impl LocalSymplectic {
    pub fn new(angles: LocalAngles) -> Self {
        let s1 = single_mode(angles.theta1, angles.phi1, angles.vphi1);
        let s2 = single_mode(angles.theta2, angles.phi2, angles.vphi2);
        Self {
            angles,
            matrix: direct_sum(&s1, &s2),
        }
    }

    pub fn identity() -> Self {
        Self::new(LocalAngles::default())
    }

    /// Phase rotation only (`θ₁ = θ₂ = 0`).
    pub fn rotation(phi1: f64, phi2: f64) -> Self {
        Self::new(LocalAngles {
            phi1,
            phi2,
            ..LocalAngles::default()
        })
    }

    pub fn angles(&self) -> &LocalAngles {
        &self.angles
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    pub fn block(&self, mode: usize) -> Mat2 {
        let k = 2 * mode;
        self.matrix.fixed_view::<2, 2>(k, k).into_owned()
    }
}

/// `S† V S` for any 4×4 `S`.
pub fn apply_symplectic(s: &Mat4, v: &CovarianceMatrix) -> CovarianceMatrix {
    CovarianceMatrix::from_congruence(s.adjoint() * v.matrix() * s)
}

/// `S† V S`: blockwise `Vᵢ′ = Sᵢ† Vᵢ Sᵢ`, `C′ = S₁† C S₂`.
pub fn apply_local(s: &LocalSymplectic, v: &CovarianceMatrix) -> CovarianceMatrix {
    apply_symplectic(&s.matrix, v)
}

/// The four `Sp(2,R) ⊗ Sp(2,R)` invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticInvariants {
    /// `det V₁`
    pub i1: f64,
    /// `det V₂`
    pub i2: f64,
    /// `det C`
    pub i3: f64,
    /// `Tr[V₁ Z C Z V₂ Z C† Z]`
    pub i4: f64,
}

impl SymplecticInvariants {
    /// Largest relative difference, each scaled by `max(1, |value|)`.
    pub fn max_relative_difference(&self, other: &Self) -> f64 {
        [
            (self.i1, other.i1),
            (self.i2, other.i2),
            (self.i3, other.i3),
            (self.i4, other.i4),
        ]
        .iter()
        .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1.0))
        .fold(0.0, f64::max)
    }
}

pub fn invariants(v: &CovarianceMatrix) -> SymplecticInvariants {
    let b = v.blocks();
    let z = z();
    let chain = b.v1 * z * b.c * z * b.v2 * z * b.c.adjoint() * z;
    SymplecticInvariants {
        i1: det2(&b.v1).re,
        i2: det2(&b.v2).re,
        i3: det2(&b.c).re,
        i4: chain.trace().re,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantForm {
    /// `V₁ = ν₁I`, `V₂ = ν₂I`, correlation only in `m_c`.
    Form1,
    /// `V₁ = ν₁I`, `V₂ = ν₂I`, correlation only in `m_s`.
    Form2,
}

/// Largest entry of `v` that must vanish (or deviate from the layout) for
/// `v` to have the given invariant form.
pub fn form_residual(v: &CovarianceMatrix, form: InvariantForm) -> f64 {
    let m = v.matrix();
    let forbidden = match form {
        InvariantForm::Form1 => m[(0, 2)],
        InvariantForm::Form2 => m[(0, 3)],
    };
    [m[(0, 1)].norm(), m[(2, 3)].norm(), forbidden.norm()]
        .into_iter()
        .fold(v.layout_deviation(), f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantFormResult {
    pub form: InvariantForm,
    /// `√(n₁² − |m₁|²)`
    pub nu1: f64,
    /// `√(n₂² − |m₂|²)`
    pub nu2: f64,
    /// Remaining correlation (`μ_c` for form 1, `μ_s` for form 2), read off
    /// the transformed matrix.
    pub mu: Complex64,
    /// `e^{−i(φ₁±φ₂)} (m/|m|) √(|m_c|² − |m_s|²)`, the phase-explicit
    /// expression for `mu`. Its modulus always matches; its phase does only
    /// when at most one mode is squeezed or the input lies on the
    /// double-ratio family.
    pub mu_closed_form: Complex64,
    pub transform: LocalSymplectic,
    pub transformed: CovarianceMatrix,
    pub residual: f64,
}

fn mode_angles(n: f64, m: Complex64, mode: u8) -> Result<(f64, f64)> {
    if m.norm() >= n {
        return Err(Error::Domain(format!(
            "|m{mode}| = {} must be smaller than n{mode} = {n}",
            m.norm()
        )));
    }
    if m == Complex64::default() {
        return Ok((0.0, 0.0));
    }
    // e^{−iμ} = m/|m|, φ = −μ + π.
    let mu = -m.arg();
    Ok((0.5 * (m.norm() / n).atanh(), -mu + std::f64::consts::PI))
}

/// Brings `p` to invariant form 1 (`|m_c| ≥ |m_s|`) or form 2 by the local
/// squeezing `tanh 2θᵢ = |mᵢ|/nᵢ` with `φᵢ + ϕᵢ = −μᵢ + π` (`ϕᵢ = 0`).
///
/// The transform removes `m₁, m₂` for every input. The unwanted correlation
/// vanishes only on the local orbit of the invariant forms; elsewhere the
/// result is [`Error::PrescriptionInapplicable`] with the residual.
pub fn reduce_to_invariant_form(p: &GaussianParams) -> Result<InvariantFormResult> {
    let (theta1, phi1) = mode_angles(p.n1(), p.m1(), 1)?;
    let (theta2, phi2) = mode_angles(p.n2(), p.m2(), 2)?;
    let transform = LocalSymplectic::new(LocalAngles {
        theta1,
        phi1,
        vphi1: 0.0,
        theta2,
        phi2,
        vphi2: 0.0,
    });
    let transformed = apply_local(&transform, &CovarianceMatrix::from_params(p));

    let (ms, mc) = (p.ms(), p.mc());
    let form = if mc.norm() >= ms.norm() {
        InvariantForm::Form1
    } else {
        InvariantForm::Form2
    };
    let unit = |z: Complex64| {
        if z == Complex64::default() {
            z
        } else {
            z / z.norm()
        }
    };
    let gap = (mc.norm_sqr() - ms.norm_sqr()).abs().sqrt();
    let (mu, mu_closed_form) = match form {
        InvariantForm::Form1 => (
            transformed.matrix()[(0, 3)],
            Complex64::from_polar(1.0, -(phi1 + phi2)) * unit(mc) * gap,
        ),
        InvariantForm::Form2 => (
            transformed.matrix()[(0, 2)],
            Complex64::from_polar(1.0, -(phi1 - phi2)) * unit(ms) * gap,
        ),
    };
    let nu1 = (p.n1() * p.n1() - p.m1().norm_sqr()).sqrt();
    let nu2 = (p.n2() * p.n2() - p.m2().norm_sqr()).sqrt();
    let m = transformed.matrix();
    let residual = form_residual(&transformed, form)
        .max((m[(0, 0)].re - nu1).abs())
        .max((m[(2, 2)].re - nu2).abs());
    if residual > TAU_FORM {
        return Err(Error::PrescriptionInapplicable {
            residual,
            tolerance: TAU_FORM,
        });
    }
    Ok(InvariantFormResult {
        form,
        nu1,
        nu2,
        mu,
        mu_closed_form,
        transform,
        transformed,
        residual,
    })
}
