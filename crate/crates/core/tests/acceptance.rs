//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use gausssep::bounds::{prep_fold, separable_fold};
use gausssep::campaign::{run_campaign, BOUNDARY_BAND, CHUNK};
use gausssep::criteria::Outcome;
use gausssep::sampling::{
    random_box_params, random_disc, random_local_symplectic, random_physical_state, stream_rng,
    SamplerConfig, SamplingMode,
};
use gausssep::sweep::{bisect_threshold, oracle_threshold_n2, run_sweep, SweepSpec};
use gausssep::symplectic::{form_residual, LocalAngles};
use gausssep::{
    apply_local, classify, invariants, p_representability_closed_form, p_representability_eig,
    physicality_closed_form, physicality_eig, separability_closed_form, separability_eig,
    Complex64, CovarianceMatrix, GaussianParams, InvariantForm, LocalSymplectic, Method, Result,
    Tolerances,
};
use rand::Rng;
use rayon::prelude::*;

const DRAWS: usize = 100_000;

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn tol() -> Tolerances {
    Tolerances::default()
}

/// Runs `f` on `count` indexed draws, chunk `k` using stream `k` of `seed`.
fn par_draws<T: Send>(
    count: usize,
    seed: u64,
    f: impl Fn(&mut rand_chacha::ChaCha8Rng) -> T + Sync,
) -> Vec<T> {
    (0..count.div_ceil(CHUNK))
        .into_par_iter()
        .flat_map_iter(|k| {
            let mut rng = stream_rng(seed, k as u64);
            let n = CHUNK.min(count - k * CHUNK);
            (0..n).map(|_| f(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

fn clear_disagreement(closed: &Result<Outcome>, eig: &Outcome) -> (bool, bool) {
    match closed {
        Ok(c) => (
            c.margin.abs() > BOUNDARY_BAND
                && eig.margin.abs() > BOUNDARY_BAND
                && c.holds != eig.holds,
            false,
        ),
        Err(_) => (false, true),
    }
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let tol = tol();
    let per_state = par_draws(DRAWS, 101, |rng| {
        let p = random_box_params(rng, (0.4, 3.0), 1.0);
        let v = CovarianceMatrix::from_params(&p);
        let pairs = [
            (physicality_closed_form(&p, &tol), physicality_eig(&v, &tol)),
            (
                separability_closed_form(&p, &tol),
                separability_eig(&v, &tol),
            ),
            (
                p_representability_closed_form(&p, &tol),
                p_representability_eig(&v, &tol),
            ),
        ];
        let mut disagree = false;
        let mut degenerate = 0;
        for (closed, eig) in &pairs {
            let (d, g) = clear_disagreement(closed, eig);
            disagree |= d;
            degenerate += usize::from(g);
        }
        (disagree, degenerate, pairs[0].1.holds)
    });
    let elapsed = start.elapsed().as_secs_f64();
    let disagreements = per_state.iter().filter(|s| s.0).count();
    let degenerate: usize = per_state.iter().map(|s| s.1).sum();
    let physical = per_state.iter().filter(|s| s.2).count();
    Check {
        name: "oracle equivalence",
        pass: disagreements == 0 && elapsed < 60.0,
        detail: format!(
            "{DRAWS} draws ({physical} physical), {disagreements} disagreements outside ±{BOUNDARY_BAND:e}, \
             {degenerate} degenerate closed forms, {elapsed:.1} s"
        ),
    }
}

fn subset_theorem() -> Check {
    let tol = tol();
    let report = run_campaign(
        DRAWS,
        202,
        SamplingMode::Construct,
        &SamplerConfig::default(),
        &tol,
    )
    .expect("construct mode always succeeds");
    let s = report.summary;

    let witness = GaussianParams::from_parts(
        1.0,
        0.9,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.3, 0.0),
        Complex64::new(0.3, 0.0),
    )
    .unwrap();
    let closed = classify(&witness, Method::ClosedForm, &tol);
    let eig = classify(&witness, Method::EigenOracle, &tol);
    let s_fold = separable_fold(&witness, &tol).unwrap();
    let p_fold = prep_fold(&witness, &tol).unwrap();
    let s_oracle = oracle_threshold_n2(&witness, |v| separability_eig(v, &tol).margin);
    let p_oracle = oracle_threshold_n2(&witness, |v| p_representability_eig(v, &tol).margin);
    let witness_ok = [closed, eig]
        .iter()
        .all(|v| v.physical && v.separable == Some(true) && v.p_representable == Some(false))
        && (s_fold - s_oracle).abs() < 1e-8
        && (p_fold - p_oracle).abs() < 1e-8;

    Check {
        name: "subset theorem",
        pass: s.subset_violations == 0 && s.separable_not_p >= 1 && witness_ok,
        detail: format!(
            "{} physical states: {} separable, {} P-representable, {} separable-not-P, \
             {} P-and-entangled; witness n2=0.9 S-fold {s_fold:.12} (oracle {s_oracle:.12}), \
             P-fold {p_fold:.12} (oracle {p_oracle:.12})",
            s.count, s.separable, s.p_representable, s.separable_not_p, s.subset_violations
        ),
    }
}

fn form_params(form: InvariantForm, n1: f64, n2: f64, mu: Complex64) -> GaussianParams {
    let p = GaussianParams::new(n1, n2).unwrap();
    match form {
        InvariantForm::Form1 => p.with_mc(mu),
        InvariantForm::Form2 => p.with_ms(mu),
    }
}

/// `|μ|` at which `ok` stops holding along the ray `x·μ/|μ|`.
fn mu_threshold(
    form: InvariantForm,
    n1: f64,
    n2: f64,
    dir: Complex64,
    ok: impl Fn(&CovarianceMatrix) -> bool,
) -> f64 {
    let fails = |x: f64| {
        !ok(&CovarianceMatrix::from_params(&form_params(
            form,
            n1,
            n2,
            dir * x,
        )))
    };
    let hi = ((n1 + 0.5) * (n2 + 0.5)).sqrt() + 1.0;
    bisect_threshold(fails, 0.0, hi, 1e-14)
}

fn invariant_form_equivalence() -> Check {
    const PER_FORM: usize = 10_000;
    let tol = tol();
    let raw = |o: Outcome| o.margin >= 0.0;
    let mut details = Vec::new();
    let mut pass = true;
    for (seed, form) in [(303, InvariantForm::Form1), (304, InvariantForm::Form2)] {
        let stats = par_draws(PER_FORM, seed, |rng| {
            let (n1, n2, mu) = loop {
                let n1 = rng.random_range(0.5..=3.0);
                let n2 = rng.random_range(0.5..=3.0);
                let mu = random_disc(rng, 2.0);
                let v = CovarianceMatrix::from_params(&form_params(form, n1, n2, mu));
                if physicality_eig(&v, &tol).holds {
                    break (n1, n2, mu);
                }
            };
            let v = CovarianceMatrix::from_params(&form_params(form, n1, n2, mu));
            let sep = separability_eig(&v, &tol);
            let prep = p_representability_eig(&v, &tol);
            let mismatch = sep.margin.abs() > BOUNDARY_BAND
                && prep.margin.abs() > BOUNDARY_BAND
                && sep.holds != prep.holds;
            let reduced = ((n1 - 0.5) * (n2 - 0.5)).sqrt();
            let dir = if mu.norm() > 0.0 {
                mu / mu.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            let sep_threshold = mu_threshold(form, n1, n2, dir, |v| {
                raw(physicality_eig(v, &tol)) && raw(separability_eig(v, &tol))
            });
            let prep_threshold =
                mu_threshold(form, n1, n2, dir, |v| raw(p_representability_eig(v, &tol)));
            let err = (sep_threshold - reduced)
                .abs()
                .max((prep_threshold - reduced).abs());
            (mismatch, err, form_residual(&v, form), sep.holds)
        });
        let mismatches = stats.iter().filter(|s| s.0).count();
        let worst = stats.iter().map(|s| s.1).fold(0.0, f64::max);
        let residual = stats.iter().map(|s| s.2).fold(0.0, f64::max);
        let separable = stats.iter().filter(|s| s.3).count();
        pass &= mismatches == 0 && worst <= 1e-8 && residual == 0.0;
        details.push(format!(
            "{form:?}: {PER_FORM} states ({separable} separable), {mismatches} S/P mismatches, \
             max threshold error {worst:.1e}"
        ));
    }
    Check {
        name: "invariant-form equivalence",
        pass,
        detail: details.join("; "),
    }
}

fn symplectic_invariance() -> Check {
    const STATES: usize = 100;
    const TRANSFORMS: usize = 100;
    let tol = tol();
    let config = SamplerConfig::default();
    let per_state: Vec<(f64, usize, usize)> = (0..STATES)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(404, k as u64);
            let p =
                random_physical_state(&mut rng, SamplingMode::Construct, &config, &tol).unwrap();
            let v = CovarianceMatrix::from_params(&p);
            let (inv, phys, sep, prep) = (
                invariants(&v),
                physicality_eig(&v, &tol).holds,
                separability_eig(&v, &tol).holds,
                p_representability_eig(&v, &tol).holds,
            );
            let mut worst: f64 = 0.0;
            let mut verdict_changes = 0;
            let mut p_flips = 0;
            for _ in 0..TRANSFORMS {
                let s = random_local_symplectic(&mut rng, 1.5);
                let w = apply_local(&s, &v);
                worst = worst.max(inv.max_relative_difference(&invariants(&w)));
                verdict_changes += usize::from(
                    physicality_eig(&w, &tol).holds != phys
                        || separability_eig(&w, &tol).holds != sep,
                );
                p_flips += usize::from(p_representability_eig(&w, &tol).holds != prep);
            }
            (worst, verdict_changes, p_flips)
        })
        .collect();
    let worst = per_state.iter().map(|s| s.0).fold(0.0, f64::max);
    let changes: usize = per_state.iter().map(|s| s.1).sum();
    let sampled_flips: usize = per_state.iter().map(|s| s.2).sum();

    // Thermal n = 2 is P-representable; squeezing mode 1 by θ = 1.5 is not.
    let thermal = CovarianceMatrix::from_params(&GaussianParams::new(2.0, 2.0).unwrap());
    let squeeze = LocalSymplectic::new(LocalAngles {
        theta1: 1.5,
        ..LocalAngles::default()
    });
    let squeezed = apply_local(&squeeze, &thermal);
    let squeezed_params = squeezed.to_params(tol.herm).unwrap();
    let witness_flip = p_representability_eig(&thermal, &tol).holds
        && !p_representability_eig(&squeezed, &tol).holds
        && p_representability_closed_form(&squeezed_params, &tol).is_ok_and(|o| !o.holds)
        && separability_eig(&squeezed, &tol).holds;

    Check {
        name: "symplectic invariance",
        pass: worst <= 1e-9 && changes == 0 && witness_flip,
        detail: format!(
            "{} pairs: max invariant rel. error {worst:.1e}, {changes} physical/separable verdict changes, \
             {sampled_flips} sampled P flips; witness thermal n=2, theta1=1.5 flips P: {witness_flip}",
            STATES * TRANSFORMS
        ),
    }
}

fn tmst_thresholds() -> Check {
    let tol = tol();
    let tmst = |n: f64, m: f64| {
        CovarianceMatrix::from_params(
            &GaussianParams::new(n, n)
                .unwrap()
                .with_mc(Complex64::new(m, 0.0)),
        )
    };
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for n in [0.6, 1.0, 2.0, 5.0] {
        let sep = bisect_threshold(
            |m| separability_eig(&tmst(n, m), &tol).margin < 0.0,
            0.0,
            n + 1.0,
            1e-14,
        );
        let phys = bisect_threshold(
            |m| physicality_eig(&tmst(n, m), &tol).margin < 0.0,
            0.0,
            n + 1.0,
            1e-14,
        );
        let (sep_err, phys_err) = (
            (sep - (n - 0.5)).abs(),
            (phys - (n * n - 0.25).sqrt()).abs(),
        );
        worst = worst.max(sep_err).max(phys_err);
        rows.push(format!("n={n}: {sep_err:.1e}/{phys_err:.1e}"));
    }
    Check {
        name: "two-mode squeezed thermal boundary",
        pass: worst <= 1e-10,
        detail: format!("separable/physical threshold errors {}", rows.join(", ")),
    }
}

fn fold_structure() -> Check {
    const PER_CELL: usize = 16;
    let tol = tol();
    let spec = SweepSpec::fold_comparison();
    let rows = run_sweep(&spec, &tol).unwrap();
    let gap: Vec<_> = rows.iter().filter(|r| r.prep_below_sep).collect();
    let mut placed = 0;
    let mut physical = 0;
    let mut prep = 0;
    let mut example = None;
    for row in &gap {
        let (p_fold, s_fold) = (row.n2_min_prep.unwrap(), row.n2_min_separable.unwrap());
        let lo = p_fold.max(0.0);
        let base = spec.point(row.axis1, row.axis2).unwrap();
        for k in 0..PER_CELL {
            let n2 = lo + (s_fold - lo) * k as f64 / PER_CELL as f64;
            let v = CovarianceMatrix::from_params(&base.with_n2(n2).unwrap());
            placed += 1;
            prep += usize::from(p_representability_eig(&v, &tol).holds);
            if physicality_eig(&v, &tol).holds {
                physical += 1;
                example.get_or_insert((row.axis1, row.axis2.unwrap(), n2, p_fold, s_fold));
            }
        }
    }
    let mut detail = format!(
        "{} of {} cells have P-fold < S-fold; {placed} gap states placed, {physical} pass physicality, \
         {prep} P-representable",
        gap.len(),
        rows.len()
    );
    if let Some((mc, n1, n2, p, s)) = example {
        detail.push_str(&format!(
            "; e.g. mc={mc:.2}, n1={n1:.2}, n2={n2:.4} is physical (P-fold {p:.4}, S-fold {s:.4})"
        ));
    }
    Check {
        name: "S/P fold structure",
        pass: !gap.is_empty() && physical == 0,
        detail,
    }
}

fn mirror_identity() -> Check {
    let tol = tol();
    let mismatches: usize = par_draws(DRAWS, 707, |rng| {
        let p = random_box_params(rng, (0.4, 3.0), 1.0);
        usize::from(
            separability_closed_form(&p, &tol) != physicality_closed_form(&p.mirror(), &tol),
        )
    })
    .into_iter()
    .sum();
    Check {
        name: "mirror identity",
        pass: mismatches == 0,
        detail: format!("{DRAWS} draws, {mismatches} inexact matches"),
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Check; 7] = [
        oracle_equivalence,
        subset_theorem,
        invariant_form_equivalence,
        symplectic_invariance,
        tmst_thresholds,
        fold_structure,
        mirror_identity,
    ];
    let mut failed = 0;
    for criterion in criteria {
        let check = criterion();
        let tag = if check.pass { "PASS" } else { "FAIL" };
        println!("{tag} {}: {}", check.name, check.detail);
        failed += usize::from(!check.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
