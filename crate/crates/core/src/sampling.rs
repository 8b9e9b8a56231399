//! Seeded generators for local symplectics and physical states.
//!
//! Every generator takes the random stream explicitly. [`stream_rng`] derives
//! independent streams from a master seed, one per worker or chunk.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canonical::{identity4, Mat4};
use crate::covariance::CovarianceMatrix;
use crate::criteria::physicality_eig;
use crate::error::{Error, Result};
use crate::params::GaussianParams;
use crate::symplectic::{apply_local, apply_symplectic, LocalAngles, LocalSymplectic};
use crate::Tolerances;

/// Deterministic stream `index` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// Thermal state conjugated by random symplectics; physical by
    /// construction.
    Construct,
    /// Uniform draws from parameter boxes, kept iff physical.
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Upper end of the thermal symplectic eigenvalues `νᵢ ∈ [½, nu_max]`.
    pub nu_max: f64,
    /// Upper end of the local squeezing `θᵢ ∈ [0, theta_max]`.
    pub theta_max: f64,
    /// Upper end of the two-mode squeezing in the correlating step; zero
    /// together with `mixing = false` yields product states.
    pub squeeze_max: f64,
    pub mixing: bool,
    /// Box for `n₁, n₂` in rejection mode.
    pub n_range: (f64, f64),
    /// Radius of the disc for `m₁, m₂, m_s, m_c` in rejection mode.
    pub m_max: f64,
    pub max_draws: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            nu_max: 5.0,
            theta_max: 1.5,
            squeeze_max: 1.0,
            mixing: true,
            n_range: (0.5, 3.0),
            m_max: 1.0,
            max_draws: 1_000_000,
        }
    }
}

/// `θᵢ` uniform in `[0, theta_max]`, all phases uniform in `[0, 2π)`.
pub fn random_local_symplectic<R: Rng + ?Sized>(rng: &mut R, theta_max: f64) -> LocalSymplectic {
    let mut theta = || {
        if theta_max > 0.0 {
            rng.random_range(0.0..=theta_max)
        } else {
            0.0
        }
    };
    let (theta1, theta2) = (theta(), theta());
    LocalSymplectic::new(LocalAngles {
        theta1,
        phi1: rng.random_range(0.0..TAU),
        vphi1: rng.random_range(0.0..TAU),
        theta2,
        phi2: rng.random_range(0.0..TAU),
        vphi2: rng.random_range(0.0..TAU),
    })
}

/// Uniform point in the disc `|z| ≤ radius`.
pub fn random_disc<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..TAU))
}

/// All six parameters drawn independently: `nᵢ` uniform in `n_range`,
/// moments uniform in the disc of radius `m_max`. Not necessarily physical.
pub fn random_box_params<R: Rng + ?Sized>(
    rng: &mut R,
    n_range: (f64, f64),
    m_max: f64,
) -> GaussianParams {
    let n1 = rng.random_range(n_range.0..=n_range.1);
    let n2 = rng.random_range(n_range.0..=n_range.1);
    GaussianParams::from_parts(
        n1,
        n2,
        random_disc(rng, m_max),
        random_disc(rng, m_max),
        random_disc(rng, m_max),
        random_disc(rng, m_max),
    )
    .expect("box draws are finite and non-negative")
}

/// Two-mode squeezer mixing `a₁` with `a₂†` (amount `r`, phase `chi`).
pub fn two_mode_squeezer(r: f64, chi: f64) -> Mat4 {
    let k = Complex64::from_polar(r.sinh(), chi);
    let mut m = identity4().scale(r.cosh());
    m[(0, 3)] = k;
    m[(3, 0)] = k.conj();
    m[(1, 2)] = k.conj();
    m[(2, 1)] = k;
    m
}

/// Beam splitter mixing `a₁` with `a₂` (angle `angle`, phase `chi`).
pub fn beam_splitter(angle: f64, chi: f64) -> Mat4 {
    let k = Complex64::from_polar(angle.sin(), chi);
    let mut m = identity4().scale(angle.cos());
    m[(0, 2)] = k;
    m[(2, 0)] = -k.conj();
    m[(1, 3)] = k.conj();
    m[(3, 1)] = -k;
    m
}

fn construct_candidate<R: Rng + ?Sized>(
    rng: &mut R,
    config: &SamplerConfig,
) -> Result<GaussianParams> {
    let nu1 = rng.random_range(0.5..=config.nu_max);
    let nu2 = rng.random_range(0.5..=config.nu_max);
    let mut v = CovarianceMatrix::from_params(&GaussianParams::new(nu1, nu2)?);
    if config.mixing {
        let r = rng.random_range(0.0..=config.squeeze_max);
        let tms = two_mode_squeezer(r, rng.random_range(0.0..TAU));
        let bs = beam_splitter(
            rng.random_range(0.0..=FRAC_PI_2),
            rng.random_range(0.0..TAU),
        );
        v = apply_symplectic(&(tms * bs), &v);
    }
    let local = random_local_symplectic(rng, config.theta_max);
    apply_local(&local, &v).project_params()
}

/// A physical state. Either mode retries until the eigen-oracle confirms
/// physicality, within `config.max_draws` attempts.
pub fn random_physical_state<R: Rng + ?Sized>(
    rng: &mut R,
    mode: SamplingMode,
    config: &SamplerConfig,
    tol: &Tolerances,
) -> Result<GaussianParams> {
    for _ in 0..config.max_draws {
        let candidate = match mode {
            SamplingMode::Construct => construct_candidate(rng, config)?,
            SamplingMode::Reject => random_box_params(rng, config.n_range, config.m_max),
        };
        if physicality_eig(&CovarianceMatrix::from_params(&candidate), tol).holds {
            return Ok(candidate);
        }
    }
    Err(Error::SamplingBudget {
        draws: config.max_draws,
    })
}
