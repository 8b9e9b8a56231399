use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use gausssep::campaign::{compare_verdicts, run_campaign, Disagreement, BOUNDARY_BAND};
use gausssep::sampling::{SamplerConfig, SamplingMode};
use gausssep::sweep::{run_sweep, SweepSpec};
use gausssep::symplectic::LocalAngles;
use gausssep::{
    apply_local, classify as classify_params, classify_eig, invariants as invariants_of,
    reduce_to_invariant_form, Complex64, CovarianceMatrix, Error, GaussianParams, InvariantForm,
    LocalSymplectic, Method, SymplecticInvariants, Tolerances, Verdict,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input::{read_states, Format, State};
use crate::{MethodArg, SweepArgs};

fn open_output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                CliError::Io(format!("cannot create {}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_line(out: &mut dyn Write, value: &impl Serialize) -> CliResult<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn matrix_rows(v: &CovarianceMatrix) -> [[[f64; 2]; 4]; 4] {
    let m = v.matrix();
    std::array::from_fn(|i| std::array::from_fn(|j| pair(m[(i, j)])))
}

#[derive(Serialize)]
struct ClassifyRecord<'a> {
    index: usize,
    id: Option<&'a str>,
    #[serde(flatten)]
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    disagreement: Option<Disagreement>,
}

pub fn classify(
    input: &Path,
    format: Format,
    method: MethodArg,
    output: Option<&Path>,
    tol: &Tolerances,
) -> CliResult<()> {
    let states = read_states(input, format, tol)?;
    let closed_form = |k: usize, s: &State| {
        s.params.ok_or_else(|| {
            CliError::Invalid(format!(
                "record {k}: matrix does not follow the covariance layout; use --method eig"
            ))
        })
    };
    if method == MethodArg::Closed {
        for (k, s) in states.iter().enumerate() {
            closed_form(k, s)?;
        }
    }

    let mut out = open_output(output)?;
    let mut disagreements = 0;
    for (index, s) in states.iter().enumerate() {
        let eig = || classify_eig(&s.matrix, tol);
        let (verdict, oracle) = match (method, s.params) {
            (MethodArg::Closed, _) => (
                classify_params(&closed_form(index, s)?, Method::ClosedForm, tol),
                None,
            ),
            (MethodArg::Eig, _) | (MethodArg::Both, None) => (eig(), None),
            (MethodArg::Both, Some(p)) => {
                (classify_params(&p, Method::ClosedForm, tol), Some(eig()))
            }
        };
        let disagreement = oracle.map(|o| compare_verdicts(&verdict, &o, BOUNDARY_BAND));
        disagreements += usize::from(disagreement.is_some_and(|d| d.any()));
        write_line(
            &mut out,
            &ClassifyRecord {
                index,
                id: s.id.as_deref(),
                verdict,
                oracle,
                disagreement,
            },
        )?;
    }
    out.flush()?;
    if disagreements > 0 {
        return Err(CliError::Internal(format!(
            "{disagreements} closed-form/oracle disagreements outside the boundary band"
        )));
    }
    Ok(())
}

fn sweep_spec(args: &SweepArgs) -> CliResult<SweepSpec> {
    let mut spec = match &args.spec {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
        }
        None => SweepSpec::fold_comparison(),
    };
    for (slot, value) in [
        (&mut spec.n1, args.n1),
        (&mut spec.m1, args.m1),
        (&mut spec.m2, args.m2),
        (&mut spec.ms, args.ms),
        (&mut spec.mc, args.mc),
    ] {
        if let Some(v) = value {
            *slot = v;
        }
    }
    if let Some(axis) = args.axis1 {
        spec.axis1 = axis;
    }
    if args.no_axis2 {
        spec.axis2 = None;
    } else if let Some(axis) = args.axis2 {
        spec.axis2 = Some(axis);
    }
    spec.validate()?;
    Ok(spec)
}

fn csv_number(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".to_string(), |x| x.to_string())
}

pub fn sweep(args: &SweepArgs) -> CliResult<()> {
    let spec = sweep_spec(args)?;
    let rows = run_sweep(&spec, &args.tol.tolerances())?;
    let mut writer = csv::Writer::from_writer(open_output(args.output.as_deref())?);
    let mut header = vec!["axis1"];
    if spec.axis2.is_some() {
        header.push("axis2");
    }
    header.extend([
        "n2_min_physical",
        "n2_min_separable",
        "n2_min_prep",
        "prep_below_sep_flag",
    ]);
    writer.write_record(&header)?;
    for row in rows {
        let mut record = vec![row.axis1.to_string()];
        if spec.axis2.is_some() {
            record.push(csv_number(row.axis2));
        }
        record.extend([
            csv_number(row.n2_min_physical),
            csv_number(row.n2_min_separable),
            csv_number(row.n2_min_prep),
            u8::from(row.prep_below_sep).to_string(),
        ]);
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SummaryLine<T> {
    summary: T,
}

pub fn sample(
    count: usize,
    seed: u64,
    mode: SamplingMode,
    output: Option<&Path>,
    tol: &Tolerances,
) -> CliResult<()> {
    if count == 0 {
        return Err(CliError::Invalid("--count must be at least 1".into()));
    }
    let report = run_campaign(count, seed, mode, &SamplerConfig::default(), tol)?;
    let mut out = open_output(output)?;
    for record in &report.records {
        write_line(&mut out, record)?;
    }
    let s = report.summary;
    write_line(&mut out, &SummaryLine { summary: s })?;
    out.flush()?;
    eprintln!(
        "{} states: {} separable, {} entangled, {} P-representable, {} separable-not-P, \
         {} disagreements, {} subset violations",
        s.count,
        s.separable,
        s.entangled,
        s.p_representable,
        s.separable_not_p,
        s.disagreements,
        s.subset_violations
    );
    if s.disagreements > 0 || s.subset_violations > 0 {
        return Err(CliError::Internal(format!(
            "{} disagreements, {} subset violations",
            s.disagreements, s.subset_violations
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct InvariantsRecord<'a> {
    index: usize,
    id: Option<&'a str>,
    #[serde(flatten)]
    invariants: SymplecticInvariants,
}

pub fn invariants(
    input: &Path,
    format: Format,
    output: Option<&Path>,
    tol: &Tolerances,
) -> CliResult<()> {
    let states = read_states(input, format, tol)?;
    let mut out = open_output(output)?;
    for (index, s) in states.iter().enumerate() {
        write_line(
            &mut out,
            &InvariantsRecord {
                index,
                id: s.id.as_deref(),
                invariants: invariants_of(&s.matrix),
            },
        )?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct TransformRecord<'a> {
    index: usize,
    id: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<GaussianParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<[[[f64; 2]; 4]; 4]>,
}

#[derive(Serialize)]
struct ReducedRecord<'a> {
    index: usize,
    id: Option<&'a str>,
    form: InvariantForm,
    nu1: f64,
    nu2: f64,
    mu: [f64; 2],
    mu_closed_form: [f64; 2],
    angles: LocalAngles,
    residual: f64,
    params: Option<GaussianParams>,
}

#[derive(Serialize)]
struct FailedReduction<'a> {
    index: usize,
    id: Option<&'a str>,
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
}

/// Applies `angles`, or the invariant-form reduction when `angles` is `None`.
pub fn transform(
    input: &Path,
    format: Format,
    angles: Option<LocalAngles>,
    output: Option<&Path>,
    tol: &Tolerances,
) -> CliResult<()> {
    let states = read_states(input, format, tol)?;
    let mut out = open_output(output)?;
    let mut failed = 0;
    for (index, s) in states.iter().enumerate() {
        let id = s.id.as_deref();
        if let Some(angles) = angles {
            let w = apply_local(&LocalSymplectic::new(angles), &s.matrix);
            let params = w.to_params(tol.herm).ok();
            let matrix = params.is_none().then(|| matrix_rows(&w));
            write_line(
                &mut out,
                &TransformRecord {
                    index,
                    id,
                    params,
                    matrix,
                },
            )?;
            continue;
        }
        let p = s.params.ok_or_else(|| {
            CliError::Invalid(format!(
                "record {index}: matrix does not follow the covariance layout"
            ))
        })?;
        match reduce_to_invariant_form(&p) {
            Ok(r) => write_line(
                &mut out,
                &ReducedRecord {
                    index,
                    id,
                    form: r.form,
                    nu1: r.nu1,
                    nu2: r.nu2,
                    mu: pair(r.mu),
                    mu_closed_form: pair(r.mu_closed_form),
                    angles: *r.transform.angles(),
                    residual: r.residual,
                    params: r.transformed.to_params(tol.herm).ok(),
                },
            )?,
            Err(e) => {
                failed += 1;
                let (error, residual, tolerance) = match e {
                    Error::PrescriptionInapplicable {
                        residual,
                        tolerance,
                    } => ("prescription-inapplicable", Some(residual), Some(tolerance)),
                    _ => ("domain", None, None),
                };
                write_line(
                    &mut out,
                    &FailedReduction {
                        index,
                        id,
                        error,
                        message: e.to_string(),
                        residual,
                        tolerance,
                    },
                )?;
            }
        }
    }
    out.flush()?;
    if failed > 0 {
        return Err(CliError::Domain(format!(
            "{failed} states could not be reduced"
        )));
    }
    Ok(())
}
