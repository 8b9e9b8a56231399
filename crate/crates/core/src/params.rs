//! The six scalar parameters of a two-mode covariance matrix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters `(n₁, n₂, m₁, m₂, m_s, m_c)` of a two-mode covariance matrix.
///
/// `n₁, n₂` are the local symmetric-ordered occupations, `m₁, m₂` the local
/// squeezing moments, `m_s` the passive (`a₁† a₂`-type) correlation and `m_c`
/// the active (`a₁ a₂`-type) correlation. Only `n₁, n₂ ≥ 0` is enforced;
/// unphysical parameter sets are representable on purpose.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct GaussianParams {
    n1: f64,
    n2: f64,
    m1: Complex64,
    m2: Complex64,
    ms: Complex64,
    mc: Complex64,
}

fn check_occupation(name: &str, n: f64) -> Result<f64> {
    if !n.is_finite() || n < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be finite and non-negative, got {n}"
        )));
    }
    Ok(n)
}

fn check_moment(name: &str, m: Complex64) -> Result<Complex64> {
    if !m.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} must be finite")));
    }
    Ok(m)
}

impl GaussianParams {
    /// Uncorrelated, unsqueezed product state with occupations `n₁, n₂`.
    pub fn new(n1: f64, n2: f64) -> Result<Self> {
        Ok(Self {
            n1: check_occupation("n1", n1)?,
            n2: check_occupation("n2", n2)?,
            m1: Complex64::default(),
            m2: Complex64::default(),
            ms: Complex64::default(),
            mc: Complex64::default(),
        })
    }

    pub fn from_parts(
        n1: f64,
        n2: f64,
        m1: Complex64,
        m2: Complex64,
        ms: Complex64,
        mc: Complex64,
    ) -> Result<Self> {
        Ok(Self {
            n1: check_occupation("n1", n1)?,
            n2: check_occupation("n2", n2)?,
            m1: check_moment("m1", m1)?,
            m2: check_moment("m2", m2)?,
            ms: check_moment("ms", ms)?,
            mc: check_moment("mc", mc)?,
        })
    }

    /// The vacuum, `V = I/2`.
    pub fn vacuum() -> Self {
        Self::new(0.5, 0.5).expect("vacuum occupations are valid")
    }

    pub fn n1(&self) -> f64 {
        self.n1
    }

    pub fn n2(&self) -> f64 {
        self.n2
    }

    pub fn m1(&self) -> Complex64 {
        self.m1
    }

    pub fn m2(&self) -> Complex64 {
        self.m2
    }

    pub fn ms(&self) -> Complex64 {
        self.ms
    }

    pub fn mc(&self) -> Complex64 {
        self.mc
    }

    pub fn with_n1(self, n1: f64) -> Result<Self> {
        Ok(Self {
            n1: check_occupation("n1", n1)?,
            ..self
        })
    }

    pub fn with_n2(self, n2: f64) -> Result<Self> {
        Ok(Self {
            n2: check_occupation("n2", n2)?,
            ..self
        })
    }

    pub fn with_m1(self, m1: Complex64) -> Self {
        Self { m1, ..self }
    }

    pub fn with_m2(self, m2: Complex64) -> Self {
        Self { m2, ..self }
    }

    pub fn with_ms(self, ms: Complex64) -> Self {
        Self { ms, ..self }
    }

    pub fn with_mc(self, mc: Complex64) -> Self {
        Self { mc, ..self }
    }

    /// Parameters of the partially transposed matrix `TVT`: swaps `m_s ↔ m_c`
    /// and conjugates `m₂`.
    pub fn mirror(&self) -> Self {
        Self {
            ms: self.mc,
            mc: self.ms,
            m2: self.m2.conj(),
            ..*self
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    n1: f64,
    n2: f64,
    #[serde(default)]
    m1: [f64; 2],
    #[serde(default)]
    m2: [f64; 2],
    #[serde(default)]
    ms: [f64; 2],
    #[serde(default)]
    mc: [f64; 2],
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl TryFrom<RawParams> for GaussianParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        Self::from_parts(
            raw.n1,
            raw.n2,
            complex(raw.m1),
            complex(raw.m2),
            complex(raw.ms),
            complex(raw.mc),
        )
    }
}

impl From<GaussianParams> for RawParams {
    fn from(p: GaussianParams) -> Self {
        Self {
            n1: p.n1,
            n2: p.n2,
            m1: pair(p.m1),
            m2: pair(p.m2),
            ms: pair(p.ms),
            mc: pair(p.mc),
        }
    }
}
