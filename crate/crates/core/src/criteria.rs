//! The three positivity criteria, each by closed form and by eigen-oracle.

use serde::{Deserialize, Serialize};

use crate::bounds::{
    local_physical_margin, local_prep_margin, physical_fold, prep_fold, separable_fold,
    ClosedFormIntermediates,
};
use crate::canonical::{e, identity4};
use crate::covariance::{partial_transpose, CovarianceMatrix};
use crate::error::{Error, Result};
use crate::linalg::min_eigenvalue_unchecked;
use crate::params::GaussianParams;
use crate::Tolerances;

/// Result of a single criterion: signed margin and whether it is satisfied
/// (`margin ≥ −τ_psd`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub holds: bool,
    pub margin: f64,
}

impl Outcome {
    pub fn from_margin(margin: f64, tol: &Tolerances) -> Self {
        Self {
            holds: margin >= -tol.psd,
            margin,
        }
    }
}

/// How a [`Verdict`] was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    EigenOracle,
    /// Closed form requested, but at least one criterion hit a degenerate
    /// denominator and was decided by the eigen-oracle.
    ClosedFormWithFallback,
}

/// Physical / separable / P-representable classification of one state.
///
/// `separable` and `p_representable` (and their margins) are `None` when
/// the state is not physical.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub physical: bool,
    pub separable: Option<bool>,
    pub p_representable: Option<bool>,
    pub margin_physical: f64,
    pub margin_separable: Option<f64>,
    pub margin_prep: Option<f64>,
    pub method: Method,
}

fn shifted_min_eigenvalue(v: &CovarianceMatrix, half_shift: &crate::canonical::Mat4) -> f64 {
    min_eigenvalue_unchecked(&(v.matrix() + half_shift.unscale(2.0)))
}

/// `V + E/2 ≥ 0` (and `V ≥ 0`), via `n₁ ≥ √(|m₁|²+¼)` and the closed-form
/// `n₂` bound. Fails with [`Error::DegenerateBound`] when `|d| ≤ τ_sing`.
pub fn physicality_closed_form(p: &GaussianParams, tol: &Tolerances) -> Result<Outcome> {
    uncertainty_closed_form(p, tol, physical_fold)
}

/// `TVT + E/2 ≥ 0`: the physicality closed form with the `∓1` inside the
/// square root flipped. Identical to [`physicality_closed_form`] applied to
/// [`GaussianParams::mirror`].
pub fn separability_closed_form(p: &GaussianParams, tol: &Tolerances) -> Result<Outcome> {
    uncertainty_closed_form(p, tol, separable_fold)
}

fn uncertainty_closed_form(
    p: &GaussianParams,
    tol: &Tolerances,
    fold: fn(&GaussianParams, &Tolerances) -> Result<f64>,
) -> Result<Outcome> {
    let d = ClosedFormIntermediates::new(p).d;
    if d.abs() <= tol.sing {
        return Err(Error::DegenerateBound { denominator: d });
    }
    let local = local_physical_margin(p);
    if d < 0.0 {
        // V₁ + Z/2 is already indefinite.
        return Ok(Outcome::from_margin(local, tol));
    }
    let n2_margin = p.n2() - fold(p, tol)?;
    Ok(Outcome::from_margin(local.min(n2_margin), tol))
}

/// `V − I/2 ≥ 0` via `n₁ ≥ |m₁| + ½` and the primed `n₂` bound. Fails with
/// [`Error::DegenerateBound`] when `|d′| ≤ τ_sing`.
pub fn p_representability_closed_form(p: &GaussianParams, tol: &Tolerances) -> Result<Outcome> {
    let d_p = ClosedFormIntermediates::new(p).d_p;
    if d_p.abs() <= tol.sing {
        return Err(Error::DegenerateBound { denominator: d_p });
    }
    let local = local_prep_margin(p);
    if local < 0.0 {
        return Ok(Outcome::from_margin(local, tol));
    }
    let n2_margin = p.n2() - prep_fold(p, tol)?;
    Ok(Outcome::from_margin(local.min(n2_margin), tol))
}

/// `V + E/2 ≥ 0` and `V ≥ 0` by smallest eigenvalues. The margin is the
/// smaller of the two.
pub fn physicality_eig(v: &CovarianceMatrix, tol: &Tolerances) -> Outcome {
    let uncertainty = shifted_min_eigenvalue(v, &e());
    let plain = min_eigenvalue_unchecked(v.matrix());
    Outcome::from_margin(uncertainty.min(plain), tol)
}

/// `TVT + E/2 ≥ 0` by smallest eigenvalue.
pub fn separability_eig(v: &CovarianceMatrix, tol: &Tolerances) -> Outcome {
    Outcome::from_margin(shifted_min_eigenvalue(&partial_transpose(v), &e()), tol)
}

/// `V − I/2 ≥ 0` by smallest eigenvalue.
pub fn p_representability_eig(v: &CovarianceMatrix, tol: &Tolerances) -> Outcome {
    Outcome::from_margin(shifted_min_eigenvalue(v, &(-identity4())), tol)
}

/// Classifies a parameter set. Physicality is decided first; separability
/// and P-representability are only evaluated for physical states.
///
/// With [`Method::ClosedForm`], any criterion whose closed form is
/// degenerate is decided by the eigen-oracle instead, and the verdict is
/// tagged [`Method::ClosedFormWithFallback`].
pub fn classify(p: &GaussianParams, method: Method, tol: &Tolerances) -> Verdict {
    if method == Method::EigenOracle {
        return classify_eig(&CovarianceMatrix::from_params(p), tol);
    }
    let v = CovarianceMatrix::from_params(p);
    let mut fell_back = false;
    let mut decide = |closed: Result<Outcome>, oracle: &dyn Fn() -> Outcome| match closed {
        Ok(o) => o,
        Err(_) => {
            fell_back = true;
            oracle()
        }
    };

    let physical = decide(physicality_closed_form(p, tol), &|| {
        physicality_eig(&v, tol)
    });
    let (separable, prep) = if physical.holds {
        (
            Some(decide(separability_closed_form(p, tol), &|| {
                separability_eig(&v, tol)
            })),
            Some(decide(p_representability_closed_form(p, tol), &|| {
                p_representability_eig(&v, tol)
            })),
        )
    } else {
        (None, None)
    };
    let method = if fell_back {
        Method::ClosedFormWithFallback
    } else {
        Method::ClosedForm
    };
    assemble(physical, separable, prep, method)
}

/// Eigen-oracle classification of an arbitrary Hermitian covariance matrix.
pub fn classify_eig(v: &CovarianceMatrix, tol: &Tolerances) -> Verdict {
    let physical = physicality_eig(v, tol);
    let (separable, prep) = if physical.holds {
        (
            Some(separability_eig(v, tol)),
            Some(p_representability_eig(v, tol)),
        )
    } else {
        (None, None)
    };
    assemble(physical, separable, prep, Method::EigenOracle)
}

fn assemble(
    physical: Outcome,
    separable: Option<Outcome>,
    prep: Option<Outcome>,
    method: Method,
) -> Verdict {
    Verdict {
        physical: physical.holds,
        separable: separable.map(|o| o.holds),
        p_representable: prep.map(|o| o.holds),
        margin_physical: physical.margin,
        margin_separable: separable.map(|o| o.margin),
        margin_prep: prep.map(|o| o.margin),
        method,
    }
}
