//! Sampling campaigns comparing the closed-form and eigen-oracle routes.
//!
//! States are generated in fixed-size chunks; chunk `k` draws from stream
//! `k` of the master seed, so the output does not depend on the number of
//! worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{classify, Method, Verdict};
use crate::error::Result;
use crate::params::GaussianParams;
use crate::sampling::{random_physical_state, stream_rng, SamplerConfig, SamplingMode};
use crate::Tolerances;

/// Margins closer to zero than this are treated as on the decision boundary.
pub const BOUNDARY_BAND: f64 = 1e-8;

pub const CHUNK: usize = 1024;

/// Criteria on which two verdicts disagree, ignoring any criterion whose
/// margin is inside `band` on either side.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub physical: bool,
    pub separable: bool,
    pub p_representable: bool,
}

impl Disagreement {
    pub fn any(&self) -> bool {
        self.physical || self.separable || self.p_representable
    }
}

fn clear(margins: [Option<f64>; 2], band: f64) -> bool {
    margins.iter().all(|m| m.is_some_and(|m| m.abs() > band))
}

/// Whether every defined margin of both verdicts lies outside `band`.
pub fn outside_band(a: &Verdict, b: &Verdict, band: f64) -> bool {
    let all = [
        Some(a.margin_physical),
        Some(b.margin_physical),
        a.margin_separable,
        b.margin_separable,
        a.margin_prep,
        b.margin_prep,
    ];
    all.iter().flatten().all(|m| m.abs() > band)
}

pub fn compare_verdicts(a: &Verdict, b: &Verdict, band: f64) -> Disagreement {
    let physical =
        clear([Some(a.margin_physical), Some(b.margin_physical)], band) && a.physical != b.physical;
    let separable =
        clear([a.margin_separable, b.margin_separable], band) && a.separable != b.separable;
    let p_representable =
        clear([a.margin_prep, b.margin_prep], band) && a.p_representable != b.p_representable;
    Disagreement {
        physical,
        separable,
        p_representable,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CampaignRecord {
    pub index: usize,
    pub params: GaussianParams,
    pub closed: Verdict,
    pub eig: Verdict,
    pub disagreement: Disagreement,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub count: usize,
    pub physical: usize,
    pub separable: usize,
    pub entangled: usize,
    pub p_representable: usize,
    pub separable_not_p: usize,
    /// States with a closed-form/oracle disagreement outside the boundary band.
    pub disagreements: usize,
    /// P-representable yet entangled states (must be zero).
    pub subset_violations: usize,
    /// Lowest-index separable, non-P-representable state.
    pub witness: Option<GaussianParams>,
}

impl CampaignSummary {
    fn absorb(&mut self, r: &CampaignRecord) {
        let v = &r.eig;
        self.count += 1;
        self.physical += usize::from(v.physical);
        self.separable += usize::from(v.separable == Some(true));
        self.entangled += usize::from(v.separable == Some(false));
        self.p_representable += usize::from(v.p_representable == Some(true));
        let sep_not_p = v.separable == Some(true) && v.p_representable == Some(false);
        self.separable_not_p += usize::from(sep_not_p);
        if sep_not_p && self.witness.is_none() {
            self.witness = Some(r.params);
        }
        self.disagreements += usize::from(r.disagreement.any());
        let violates = |v: &Verdict| v.p_representable == Some(true) && v.separable == Some(false);
        self.subset_violations += usize::from(violates(&r.eig) || violates(&r.closed));
    }

    pub fn from_records(records: &[CampaignRecord]) -> Self {
        let mut summary = Self::default();
        for r in records {
            summary.absorb(r);
        }
        summary
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignReport {
    pub records: Vec<CampaignRecord>,
    pub summary: CampaignSummary,
}

pub fn evaluate(index: usize, params: GaussianParams, tol: &Tolerances) -> CampaignRecord {
    let closed = classify(&params, Method::ClosedForm, tol);
    let eig = classify(&params, Method::EigenOracle, tol);
    CampaignRecord {
        index,
        params,
        disagreement: compare_verdicts(&closed, &eig, BOUNDARY_BAND),
        closed,
        eig,
    }
}

/// Generates `count` physical states from `seed` and classifies each with
/// both routes.
pub fn run_campaign(
    count: usize,
    seed: u64,
    mode: SamplingMode,
    config: &SamplerConfig,
    tol: &Tolerances,
) -> Result<CampaignReport> {
    let chunks = count.div_ceil(CHUNK);
    let per_chunk: Result<Vec<Vec<CampaignRecord>>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k as u64);
            let start = k * CHUNK;
            let end = (start + CHUNK).min(count);
            (start..end)
                .map(|index| {
                    let params = random_physical_state(&mut rng, mode, config, tol)?;
                    Ok(evaluate(index, params, tol))
                })
                .collect()
        })
        .collect();
    let records: Vec<CampaignRecord> = per_chunk?.into_iter().flatten().collect();
    let summary = CampaignSummary::from_records(&records);
    Ok(CampaignReport { records, summary })
}
