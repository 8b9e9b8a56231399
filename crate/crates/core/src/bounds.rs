//! Closed-form lower bounds ("folds") on `n₂`.
//!
//! Each positivity condition `V + shift ≥ 0` splits into the upper-left block
//! `V₁ + shift₁ ≥ 0` and its 2×2 Schur complement. With
//! `A = V₁ + shift₁` and `K = C† A⁻¹ C` the complement is
//!
//! ```text
//! ⎛ n₂ + σ − K₁₁    m₂ − K₁₂   ⎞
//! ⎝ m₂* − K₂₁       n₂ − σ − K₂₂ ⎠
//! ```
//!
//! which is positive semidefinite iff
//! `n₂ ≥ (K₁₁+K₂₂)/2 + √(¼(2σ − (K₁₁−K₂₂))² + |m₂ − K₁₂|²)`.
//! Writing `K` through the scalars `s, c, d` (or `s′, c′, d′`) gives the
//! formulas below. The off-diagonal term is `m₂ − c/d`, and
//! `K₁₁ − K₂₂ = (|m_c|² − |m_s|²)/d` keeps its sign.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::GaussianParams;
use crate::Tolerances;

/// The scalars entering the closed-form bounds.
///
/// `s, c, d` belong to the uncertainty shift `E/2`; the primed family
/// `s_p, c_p, d_p` to the P-representability shift `−I/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormIntermediates {
    pub s: f64,
    pub c: Complex64,
    pub d: f64,
    pub s_p: f64,
    pub c_p: Complex64,
    pub d_p: f64,
}

/// `(s, c)` for a block whose (symmetric) diagonal weight is `a`.
///
/// The grouping is chosen so that swapping `m_s ↔ m_c` yields exactly
/// `(s, conj(c))` in floating point.
fn cross_terms(p: &GaussianParams, a: f64) -> (f64, Complex64) {
    let (m1, ms, mc) = (p.m1(), p.ms(), p.mc());
    let s = a * (mc.norm_sqr() + ms.norm_sqr()) - 2.0 * (mc * ms * m1.conj()).re;
    let squeezed = mc * mc * m1.conj() + ms.conj() * ms.conj() * m1;
    let c = ms.conj() * mc * (2.0 * a) - squeezed;
    (s, c)
}

impl ClosedFormIntermediates {
    pub fn new(p: &GaussianParams) -> Self {
        let n1 = p.n1();
        let m1_sq = p.m1().norm_sqr();
        let (s, c) = cross_terms(p, n1);
        let (s_p, c_p) = cross_terms(p, n1 - 0.5);
        Self {
            s,
            c,
            d: n1 * n1 - 0.25 - m1_sq,
            s_p,
            c_p,
            d_p: (n1 - 0.5) * (n1 - 0.5) - m1_sq,
        }
    }
}

fn uncertainty_fold(p: &GaussianParams, tol: &Tolerances, sign: f64) -> Result<f64> {
    let ci = ClosedFormIntermediates::new(p);
    if ci.d.abs() <= tol.sing {
        return Err(Error::DegenerateBound { denominator: ci.d });
    }
    let delta = p.mc().norm_sqr() - p.ms().norm_sqr();
    let half = 0.5 * (delta / ci.d + sign);
    let off = p.m2() - ci.c / ci.d;
    Ok(ci.s / ci.d + (half * half + off.norm_sqr()).sqrt())
}

/// Smallest `n₂` for which the Schur complement of `V₁ + Z/2` in `V + E/2`
/// is positive semidefinite (`n₂` itself is ignored).
///
/// The value is the formal bound; it only decides physicality together with
/// `n₁ ≥ √(|m₁|² + ¼)`.
pub fn physical_fold(p: &GaussianParams, tol: &Tolerances) -> Result<f64> {
    uncertainty_fold(p, tol, -1.0)
}

/// As [`physical_fold`] for the partially transposed matrix `TVT + E/2`.
pub fn separable_fold(p: &GaussianParams, tol: &Tolerances) -> Result<f64> {
    uncertainty_fold(p, tol, 1.0)
}

/// Smallest `n₂` for which the Schur complement of `V₁ − I/2` in `V − I/2`
/// is positive semidefinite.
///
/// For `d′ < 0` the value is still returned (it is the formal bound), but no
/// state with such `n₁` is P-representable since `V₁ − I/2` is indefinite.
pub fn prep_fold(p: &GaussianParams, tol: &Tolerances) -> Result<f64> {
    let ci = ClosedFormIntermediates::new(p);
    if ci.d_p.abs() <= tol.sing {
        return Err(Error::DegenerateBound {
            denominator: ci.d_p,
        });
    }
    Ok(ci.s_p / ci.d_p + (p.m2() - ci.c_p / ci.d_p).norm() + 0.5)
}

/// `n₁ − √(|m₁|² + ¼)`: margin of the local uncertainty condition.
pub fn local_physical_margin(p: &GaussianParams) -> f64 {
    p.n1() - (p.m1().norm_sqr() + 0.25).sqrt()
}

/// `n₁ − |m₁| − ½`: margin of the local P-representability condition.
pub fn local_prep_margin(p: &GaussianParams) -> f64 {
    p.n1() - p.m1().norm() - 0.5
}
