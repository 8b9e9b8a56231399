//! Positivity criteria for two-mode (bipartite) Gaussian states.
//!
//! A two-mode Gaussian state is fully described by its 4×4 Hermitian
//! covariance matrix in the mode basis `(a₁†, a₁, a₂†, a₂)`. This crate decides
//! three properties of such a matrix, each by two independent routes:
//!
//! | property            | matrix condition   | closed form                         |
//! |---------------------|--------------------|-------------------------------------|
//! | physical            | `V + E/2 ≥ 0`      | [`physicality_closed_form`]         |
//! | separable (PPT)     | `TVT + E/2 ≥ 0`    | [`separability_closed_form`]        |
//! | P-representable     | `V − I/2 ≥ 0`      | [`p_representability_closed_form`]  |
//!
//! The closed forms reduce each 4×4 condition to a lower bound on `n₂` through
//! a 2×2 Schur complement; the eigen-oracle routes take the smallest
//! eigenvalue of the shifted matrix directly.
//!
//! The [`symplectic`] module implements local `Sp(2,R) ⊗ Sp(2,R)` transforms,
//! their four invariants, and the reduction to the two invariant forms on
//! which separability and P-representability coincide.
//!
//! ```
//! use gausssep::{classify, GaussianParams, Method, Tolerances};
//! use num_complex::Complex64;
//!
//! let state = GaussianParams::new(1.0, 1.0)
//!     .unwrap()
//!     .with_mc(Complex64::new(0.6, 0.0));
//! let verdict = classify(&state, Method::ClosedForm, &Tolerances::default());
//! assert!(verdict.physical);
//! assert_eq!(verdict.separable, Some(false));
//! ```

pub mod bounds;
pub mod campaign;
pub mod canonical;
pub mod covariance;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod params;
pub mod sampling;
pub mod sweep;
pub mod symplectic;

pub use bounds::ClosedFormIntermediates;
pub use covariance::{partial_transpose, CovarianceMatrix};
pub use criteria::{
    classify, classify_eig, p_representability_closed_form, p_representability_eig,
    physicality_closed_form, physicality_eig, separability_closed_form, separability_eig, Method,
    Outcome, Verdict,
};
pub use error::{Error, Result};
pub use params::GaussianParams;
pub use symplectic::{
    apply_local, invariants, reduce_to_invariant_form, InvariantForm, InvariantFormResult,
    LocalSymplectic, SymplecticInvariants,
};

pub use num_complex::Complex64;

use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by every criterion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// A criterion holds when its margin is `≥ -psd`.
    pub psd: f64,
    /// Hermiticity / layout deviation allowed, relative to `max(1, max|Vᵢⱼ|)`.
    pub herm: f64,
    /// Closed-form denominators with `|d| ≤ sing` are treated as degenerate.
    pub sing: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            psd: 1e-10,
            herm: 1e-12,
            sing: 1e-12,
        }
    }
}

/// Maximum residual accepted for a reduction to an invariant form.
pub const TAU_FORM: f64 = 1e-9;
