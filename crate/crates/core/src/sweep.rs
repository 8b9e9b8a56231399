//! Grids of the three `n₂` folds over real parameter axes, and oracle
//! bisection used to cross-check them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{physical_fold, prep_fold, separable_fold};
use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::params::GaussianParams;
use crate::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    N1,
    M1,
    M2,
    Ms,
    Mc,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            Self::N1 => "n1",
            Self::M1 => "m1",
            Self::M2 => "m2",
            Self::Ms => "ms",
            Self::Mc => "mc",
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "n1" => Self::N1,
            "m1" => Self::M1,
            "m2" => Self::M2,
            "ms" => Self::Ms,
            "mc" => Self::Mc,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown sweep parameter {other:?} (expected n1, m1, m2, ms or mc)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(param: SweepParam, min: f64, max: f64, steps: usize) -> Self {
        Self {
            param,
            min,
            max,
            steps,
        }
    }

    /// `steps` equally spaced values, both ends included.
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let span = self.max - self.min;
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(move |k| self.min + span * k as f64 / last)
    }

    fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "axis {} needs at least 2 steps",
                self.param
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Error::InvalidParameter(format!(
                "axis {} needs finite min < max, got [{}, {}]",
                self.param, self.min, self.max
            )));
        }
        Ok(())
    }
}

/// Real-valued parameter assignment plus one or two swept axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub n1: f64,
    #[serde(default)]
    pub m1: f64,
    #[serde(default)]
    pub m2: f64,
    #[serde(default)]
    pub ms: f64,
    #[serde(default)]
    pub mc: f64,
    pub axis1: Axis,
    #[serde(default)]
    pub axis2: Option<Axis>,
}

impl SweepSpec {
    /// S-fold versus P-fold at `m₁ = 0.5`, `m₂ = 1`, `m_s = 0`: `m_c` over
    /// `[0, 1.2]` and `n₁` over `[0.75, 1.5]`. At `n₁ = 1` the P-fold is
    /// degenerate (`d′ = 0`).
    pub fn fold_comparison() -> Self {
        Self {
            n1: 1.0,
            m1: 0.5,
            m2: 1.0,
            ms: 0.0,
            mc: 0.0,
            axis1: Axis::new(SweepParam::Mc, 0.0, 1.2, 25),
            axis2: Some(Axis::new(SweepParam::N1, 0.75, 1.5, 16)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.axis1.validate()?;
        if let Some(axis2) = &self.axis2 {
            axis2.validate()?;
            if axis2.param == self.axis1.param {
                return Err(Error::InvalidParameter(format!(
                    "both axes sweep {}",
                    axis2.param
                )));
            }
        }
        Ok(())
    }

    /// Parameters at one grid point, with `n₂ = 0` (the folds ignore it).
    pub fn point(&self, x1: f64, x2: Option<f64>) -> Result<GaussianParams> {
        let mut values = [self.n1, self.m1, self.m2, self.ms, self.mc];
        let slot = |p: SweepParam| p as usize;
        values[slot(self.axis1.param)] = x1;
        if let (Some(axis2), Some(x2)) = (&self.axis2, x2) {
            values[slot(axis2.param)] = x2;
        }
        let re = |x: f64| Complex64::new(x, 0.0);
        GaussianParams::from_parts(
            values[0],
            0.0,
            re(values[1]),
            re(values[2]),
            re(values[3]),
            re(values[4]),
        )
    }
}

/// One grid point. A fold is `None` where its denominator is degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub n2_min_physical: Option<f64>,
    pub n2_min_separable: Option<f64>,
    pub n2_min_prep: Option<f64>,
    /// P-fold strictly below S-fold.
    pub prep_below_sep: bool,
}

fn defined(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::DegenerateBound { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn evaluate_point(
    p: &GaussianParams,
    tol: &Tolerances,
) -> Result<(Option<f64>, Option<f64>, Option<f64>)> {
    Ok((
        defined(physical_fold(p, tol))?,
        defined(separable_fold(p, tol))?,
        defined(prep_fold(p, tol))?,
    ))
}

/// Evaluates the folds on the grid, `axis1` outermost.
pub fn run_sweep(spec: &SweepSpec, tol: &Tolerances) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let inner: Vec<Option<f64>> = match &spec.axis2 {
        Some(axis2) => axis2.values().map(Some).collect(),
        None => vec![None],
    };
    let mut rows = Vec::with_capacity(spec.axis1.steps * inner.len());
    for x1 in spec.axis1.values() {
        for &x2 in &inner {
            let p = spec.point(x1, x2)?;
            let (physical, separable, prep) = evaluate_point(&p, tol)?;
            let prep_below_sep = matches!((prep, separable), (Some(p), Some(s)) if p < s);
            rows.push(SweepRow {
                axis1: x1,
                axis2: x2,
                n2_min_physical: physical,
                n2_min_separable: separable,
                n2_min_prep: prep,
                prep_below_sep,
            });
        }
    }
    Ok(rows)
}

/// Smallest `x ∈ [lo, hi]` with `holds(x)`, for a predicate that is false
/// below some threshold and true above it. Stops when the bracket is
/// narrower than `width`.
pub fn bisect_threshold(holds: impl Fn(f64) -> bool, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    debug_assert!(holds(hi));
    for _ in 0..400 {
        if hi - lo <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Smallest `n₂` at which `margin(V) ≥ 0`, found by bisection on `n₂`.
/// The margin must be non-decreasing in `n₂`. Returns infinity if no
/// `n₂ ≤ 10⁸` works.
pub fn oracle_threshold_n2(
    base: &GaussianParams,
    margin: impl Fn(&CovarianceMatrix) -> f64,
) -> f64 {
    let at = |n2: f64| {
        let p = base.with_n2(n2).expect("bisection keeps n2 non-negative");
        margin(&CovarianceMatrix::from_params(&p)) >= 0.0
    };
    if at(0.0) {
        return 0.0;
    }
    let mut hi = 1.0;
    while !at(hi) {
        hi *= 2.0;
        if hi > 1e8 {
            return f64::INFINITY;
        }
    }
    bisect_threshold(at, 0.0, hi, 1e-14 * hi.max(1.0))
}
