//! Subcommand argument types and handlers.

use clap::Args;
use serde::Serialize;

use chebsturm::battery::{run_all, BatteryConfig};
use chebsturm::chebsys::TSystemKind;
use chebsturm::classical::{
    strictly_decreasing_positive, trig_cos_coeffs, trig_sin_coeffs, AppendixCase,
};
use chebsturm::gapfourier::{classify_and_verify, gap_expand, right_endpoint, EtaCase};
use chebsturm::jsonio::{parse_family, FunctionInput, JacobiParams, SystemInput, TableInput};
use chebsturm::minimax::{best_approx, best_approx_oracle, verify_optimality, Certificate};
use chebsturm::oscillation::{oscillation_report, DiscreteFunction, IntervalKind, ZeroType};
use chebsturm::recurrence::RecurrenceSystem;
use chebsturm::spectrum::{compute_spectrum, discrete_orthogonality_check, interlacing_check};
use chebsturm::tolerances as tol;
use chebsturm::yudin::{yudin_extremal, NormalizedFamily};
use chebsturm::{Error, Result};

use crate::output::{emit_csv, emit_json, Format, Resolved};

/// A recurrence system from a JSON file or inline family flags.
#[derive(Args, Debug)]
pub struct SystemFlags {
    /// JSON file holding a system document (tables or family selector)
    #[arg(long, conflicts_with_all = ["family", "q", "eta"])]
    pub input: Option<std::path::PathBuf>,
    /// Built-in family name (chebyshev-t, chebyshev-u, chebyshev-u-normalized,
    /// legendre, jacobi, appendix-i .. appendix-iv)
    #[arg(long)]
    pub family: Option<String>,
    /// Grid size
    #[arg(long)]
    pub q: Option<usize>,
    /// Boundary parameter
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub eta: f64,
    /// Jacobi exponent on (1 - t)
    #[arg(long, requires = "family", allow_hyphen_values = true)]
    pub jacobi_alpha: Option<f64>,
    /// Jacobi exponent on (1 + t)
    #[arg(long, requires = "family", allow_hyphen_values = true)]
    pub jacobi_beta: Option<f64>,
    /// Normalize the Jacobi family at t = 1
    #[arg(long, default_value_t = false)]
    pub normalized: bool,
}

impl SystemFlags {
    pub fn resolve(&self) -> Result<RecurrenceSystem<f64>> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            return SystemInput::from_json(&text)?.build();
        }
        let family = self
            .family
            .as_deref()
            .ok_or_else(|| Error::Input("need --input or --family".into()))?;
        let q = self
            .q
            .ok_or_else(|| Error::Input("need --q with --family".into()))?;
        let params = match (self.jacobi_alpha, self.jacobi_beta) {
            (Some(alpha), Some(beta)) => Some(JacobiParams {
                alpha,
                beta,
                normalized: self.normalized,
            }),
            (None, None) => None,
            _ => {
                return Err(Error::Input(
                    "--jacobi-alpha and --jacobi-beta go together".into(),
                ))
            }
        };
        parse_family(family, params)?.system(q, self.eta)
    }
}

// ---------------------------------------------------------------- spectrum

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub system: SystemFlags,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Serialize)]
struct SpectrumReport {
    lambda: Vec<f64>,
    psi: Vec<Vec<f64>>,
    residuals: Vec<f64>,
    interlacing: bool,
    orthogonality_residual: f64,
}

pub fn spectrum(args: SpectrumArgs) -> Result<i32> {
    let sys = args.system.resolve()?;
    let spectrum = compute_spectrum(&sys)?;
    let report = SpectrumReport {
        lambda: spectrum.eigenvalues().to_vec(),
        psi: spectrum.eigenfunctions().to_vec(),
        residuals: spectrum.residuals().to_vec(),
        interlacing: interlacing_check(&sys)?.pass,
        orthogonality_residual: discrete_orthogonality_check(&sys, &spectrum)?,
    };
    match args.format {
        Format::Json => emit_json(report, Resolved::default())?,
        Format::Csv => emit_csv(
            &["k", "lambda", "residual"],
            report
                .lambda
                .iter()
                .zip(&report.residuals)
                .enumerate()
                .map(|(k, (&l, &r))| vec![(k + 1) as f64, l, r]),
        ),
    }
    Ok(0)
}

// ------------------------------------------------------------- oscillation

#[derive(Args, Debug)]
pub struct OscillationArgs {
    /// Inline JSON array of values, or a psi_k selector document
    #[arg(long, conflicts_with = "input", allow_hyphen_values = true)]
    pub values: Option<String>,
    /// JSON file with the same content
    #[arg(long)]
    pub input: Option<std::path::PathBuf>,
    /// Sign-decision tolerance relative to max |f|
    #[arg(long)]
    pub sign_tol: Option<f64>,
}

#[derive(Serialize)]
struct OscillationJson {
    n: usize,
    n0: usize,
    s_minus: usize,
    s_plus: usize,
    zeros: Vec<ZeroJson>,
    runs: Vec<RunJson>,
}

#[derive(Serialize)]
struct ZeroJson {
    nu: usize,
    #[serde(rename = "type")]
    kind: &'static str,
}

#[derive(Serialize)]
struct RunJson {
    start: usize,
    end: usize,
    kind: &'static str,
}

pub fn oscillation(args: OscillationArgs) -> Result<i32> {
    let text = match (&args.values, &args.input) {
        (Some(text), None) => text.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?,
        _ => return Err(Error::Input("need exactly one of --values/--input".into())),
    };
    let f = FunctionInput::from_json(&text)?.build(args.sign_tol)?;
    let report = oscillation_report(&f);
    let json = OscillationJson {
        n: report.zeros_total,
        n0: report.zeros_first_type,
        s_minus: report.min_sign_changes,
        s_plus: report.max_sign_changes,
        zeros: report
            .zeros
            .iter()
            .map(|z| ZeroJson {
                nu: z.position,
                kind: match z.kind {
                    ZeroType::First => "first",
                    ZeroType::Second => "second",
                },
            })
            .collect(),
        runs: report
            .runs
            .iter()
            .map(|r| RunJson {
                start: r.start,
                end: r.end,
                kind: match r.kind {
                    IntervalKind::First => "first",
                    IntervalKind::Second => "second",
                    IntervalKind::Third => "third",
                    IntervalKind::Fourth => "fourth",
                },
            })
            .collect(),
    };
    let resolved = Resolved {
        sign_tol: args.sign_tol.unwrap_or(tol::SIGN_TOL_DEFAULT),
        ..Resolved::default()
    };
    emit_json(json, resolved)?;
    Ok(0)
}

// ----------------------------------------------------------------- tsystem

#[derive(Args, Debug)]
pub struct TsystemArgs {
    /// JSON file with a table document or selector
    #[arg(long)]
    pub input: Option<std::path::PathBuf>,
    /// Inline selector JSON (e.g. '{"t0_counterexample": {"q": 3}}')
    #[arg(long, conflicts_with = "input")]
    pub selector: Option<String>,
    /// Cap on the number of subsets swept
    #[arg(long, default_value_t = tol::SUBSET_BUDGET)]
    pub budget: usize,
    /// Random-subset probe instead of the full sweep (refutation only)
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Serialize)]
struct TsystemJson {
    kind: &'static str,
    common_sign: Option<i8>,
    witness: Option<Vec<usize>>,
    min_abs_det: f64,
    subsets_checked: usize,
    sampled: bool,
}

pub fn tsystem(args: TsystemArgs) -> Result<i32> {
    let text = match (&args.input, &args.selector) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?,
        (None, Some(text)) => text.clone(),
        _ => return Err(Error::Input("need exactly one of --input/--selector".into())),
    };
    let table = TableInput::from_json(&text)?.build()?;
    let mut resolved = Resolved {
        subset_budget: args.budget,
        ..Resolved::default()
    };

    let (json, code) = if let Some(trials) = args.sample {
        resolved.seed = Some(args.seed);
        let probe = table.certify_sampled(trials, args.seed);
        let (kind, witness, code) = match probe.refutation {
            Some((TSystemKind::Neither, witness)) => ("neither", Some(witness), 1),
            Some((_, witness)) => ("t0_only", Some(witness), 1),
            None => ("unrefuted", None, 0),
        };
        (
            TsystemJson {
                kind,
                common_sign: None,
                witness,
                min_abs_det: probe.min_abs_det,
                subsets_checked: probe.checked,
                sampled: true,
            },
            code,
        )
    } else {
        let cert = table.certify(args.budget)?;
        let (kind, code) = match cert.kind {
            TSystemKind::TZ => ("t_z", 0),
            TSystemKind::T0Only => ("t0_only", 1),
            TSystemKind::Neither => ("neither", 1),
        };
        (
            TsystemJson {
                kind,
                common_sign: cert.common_sign,
                witness: cert.witness,
                min_abs_det: cert.min_abs_det,
                subsets_checked: cert.subsets_checked,
                sampled: false,
            },
            code,
        )
    };
    emit_json(json, resolved)?;
    Ok(code)
}

// ------------------------------------------------------------------- remez

#[derive(Args, Debug)]
pub struct RemezArgs {
    /// JSON array of function values
    #[arg(long, allow_hyphen_values = true)]
    pub values: String,
    /// Basis: JSON file with a table document or selector
    #[arg(long)]
    pub basis: Option<std::path::PathBuf>,
    /// Inline basis selector JSON
    #[arg(long, conflicts_with = "basis")]
    pub basis_selector: Option<String>,
    /// Use the exhaustive oracle instead of the exchange algorithm
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = tol::ORACLE_BUDGET)]
    pub budget: usize,
}

#[derive(Serialize)]
struct RemezJson {
    coefficients: Vec<f64>,
    level: f64,
    certificate: CertificateJson,
    iterations: usize,
    optimality_pass: bool,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum CertificateJson {
    Alternance {
        points: Vec<usize>,
        orientation: i8,
        level: f64,
    },
    Dual {
        points: Vec<usize>,
        signs: Vec<i8>,
        weights: Vec<f64>,
    },
    Exact {
        point: usize,
    },
}

pub fn remez(args: RemezArgs) -> Result<i32> {
    let values: Vec<f64> = serde_json::from_str(&args.values)?;
    let f = DiscreteFunction::new(values)?;
    let text = match (&args.basis, &args.basis_selector) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?,
        (None, Some(text)) => text.clone(),
        _ => {
            return Err(Error::Input(
                "need exactly one of --basis/--basis-selector".into(),
            ))
        }
    };
    let table = TableInput::from_json(&text)?.build()?;
    let result = if args.oracle {
        best_approx_oracle(&f, &table, args.budget)?
    } else {
        let cert = table.certify(tol::SUBSET_BUDGET)?;
        best_approx(&f, &table, &cert)?
    };
    let optimality = verify_optimality(&f, &table, &result)?;
    let certificate = match &result.certificate {
        Certificate::Alternance(c) => CertificateJson::Alternance {
            points: c.points.clone(),
            orientation: c.orientation,
            level: c.level,
        },
        Certificate::Dual(c) => CertificateJson::Dual {
            points: c.points.clone(),
            signs: c.signs.clone(),
            weights: c.weights.clone(),
        },
        Certificate::Exact { point } => CertificateJson::Exact { point: *point },
    };
    let resolved = Resolved {
        oracle_budget: args.budget,
        ..Resolved::default()
    };
    emit_json(
        RemezJson {
            coefficients: result.coefficients.clone(),
            level: result.level,
            certificate,
            iterations: result.iterations,
            optimality_pass: optimality.pass,
        },
        resolved,
    )?;
    Ok(if optimality.pass { 0 } else { 3 })
}

// -------------------------------------------------------------- gap-expand

#[derive(Args, Debug)]
pub struct GapExpandArgs {
    #[command(flatten)]
    pub system: SystemFlags,
    /// Number of removed zeros minus one
    #[arg(long)]
    pub m: usize,
    /// Ratio evaluation point (defaults to the right support endpoint)
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Serialize)]
struct GapJson {
    m: usize,
    removed: Vec<f64>,
    coefficients: Vec<f64>,
    b: f64,
    ratios: Vec<f64>,
    verdict: &'static str,
    eta_b: f64,
    case: &'static str,
    expected_verdict: &'static str,
    margin: f64,
    positive: bool,
    route_gap: f64,
    reconstruction_residual: f64,
    pass: bool,
}

fn gap_expand_report(args: &GapExpandArgs) -> Result<GapJson> {
    let sys = args.system.resolve()?;
    let spectrum = compute_spectrum(&sys)?;
    let b = args.b.unwrap_or_else(|| right_endpoint(&sys, &spectrum));
    let expansion = gap_expand(&sys, &spectrum, args.m, b)?;
    let report = classify_and_verify(&sys, &expansion)?;
    let verdict_name = |v| match v {
        chebsturm::gapfourier::MonotoneVerdict::StrictlyDecreasing => "strictly_decreasing",
        chebsturm::gapfourier::MonotoneVerdict::AllEqual => "all_equal",
        chebsturm::gapfourier::MonotoneVerdict::StrictlyIncreasing => "strictly_increasing",
        chebsturm::gapfourier::MonotoneVerdict::Mixed => "mixed",
    };
    Ok(GapJson {
        m: expansion.m,
        removed: expansion.removed.clone(),
        coefficients: expansion.coefficients.clone(),
        b,
        ratios: expansion.ratios.clone(),
        verdict: verdict_name(expansion.verdict),
        eta_b: report.classification.eta_b,
        case: match report.classification.case {
            EtaCase::A => "a",
            EtaCase::B => "b",
            EtaCase::C => "c",
        },
        expected_verdict: verdict_name(report.expected),
        margin: report.margin,
        positive: report.positive,
        route_gap: expansion.route_gap,
        reconstruction_residual: expansion.reconstruction_residual,
        pass: report.pass,
    })
}

pub fn gap_expand_cmd(args: GapExpandArgs) -> Result<i32> {
    let json = gap_expand_report(&args)?;
    let pass = json.pass;
    match args.format {
        Format::Json => emit_json(json, Resolved::default())?,
        Format::Csv => emit_csv(
            &["nu", "coefficient", "ratio"],
            json.coefficients
                .iter()
                .zip(&json.ratios)
                .enumerate()
                .map(|(nu, (&a, &r))| vec![nu as f64, a, r]),
        ),
    }
    Ok(if pass { 0 } else { 3 })
}

// ------------------------------------------------------------------- yudin

#[derive(Args, Debug)]
pub struct YudinArgs {
    /// Family name (must be normalized at t = 1)
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub jacobi_alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub jacobi_beta: Option<f64>,
    #[arg(long)]
    pub q: usize,
    /// Gap length
    #[arg(long)]
    pub m: usize,
    /// Construction variant: 1 squares the base top polynomial, 2 the kernel one
    #[arg(long, default_value_t = 1)]
    pub variant: u8,
    /// Proceed even when the Krein certificate fails or is unavailable
    #[arg(long, default_value_t = false)]
    pub allow_unverified_krein: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Serialize)]
struct YudinJson {
    n: usize,
    m: usize,
    variant: u8,
    b: f64,
    coefficients: Vec<f64>,
    moments: Vec<f64>,
    sign_min: f64,
    sup_norm: f64,
    coefficients_nonnegative: bool,
    gap_vanishes: bool,
    sign_condition: bool,
    changes_sign_after_b: bool,
    krein_certified_degree: usize,
    krein_pass: bool,
    kernel_krein_pass: Option<bool>,
}

pub fn yudin(args: YudinArgs) -> Result<i32> {
    let params = match (args.jacobi_alpha, args.jacobi_beta) {
        (Some(alpha), Some(beta)) => Some(JacobiParams {
            alpha,
            beta,
            normalized: true,
        }),
        (None, None) => None,
        _ => {
            return Err(Error::Input(
                "--jacobi-alpha and --jacobi-beta go together".into(),
            ))
        }
    };
    let family = NormalizedFamily::new(parse_family(&args.family, params)?)?;
    let result = yudin_extremal::<f64>(
        &family,
        args.q,
        args.m,
        args.variant,
        args.allow_unverified_krein,
    )?;
    let pass = result.coefficients_nonnegative && result.gap_vanishes && result.sign_condition;
    let json = YudinJson {
        n: result.n,
        m: result.m,
        variant: result.variant,
        b: result.b,
        coefficients: result.coefficients.clone(),
        moments: result.moments.clone(),
        sign_min: result.sign_min,
        sup_norm: result.sup_norm,
        coefficients_nonnegative: result.coefficients_nonnegative,
        gap_vanishes: result.gap_vanishes,
        sign_condition: result.sign_condition,
        changes_sign_after_b: result.changes_sign_after_b,
        krein_certified_degree: result.base_krein.degree,
        krein_pass: result.base_krein.pass,
        kernel_krein_pass: result.kernel_krein.as_ref().map(|k| k.pass),
    };
    match args.format {
        Format::Json => emit_json(json, Resolved::default())?,
        Format::Csv => emit_csv(
            &["l", "coefficient"],
            json.coefficients
                .iter()
                .enumerate()
                .map(|(l, &a)| vec![l as f64, a]),
        ),
    }
    Ok(if pass { 0 } else { 1 })
}

// ---------------------------------------------------------------- appendix

#[derive(Args, Debug)]
pub struct AppendixArgs {
    /// Case: i, ii, iii, or iv
    #[arg(long, value_parser = parse_case)]
    pub case: Option<AppendixCase>,
    #[arg(long)]
    pub q: usize,
    /// Bordered determinant: the moving point
    #[arg(long)]
    pub nu: Option<usize>,
    /// Bordered determinant: fixed points, comma separated, increasing
    #[arg(long, value_delimiter = ',')]
    pub points: Option<Vec<usize>>,
    /// Emit the cosine/sine expansion coefficients instead
    #[arg(long, value_parser = ["cos", "sin"])]
    pub trig: Option<String>,
    /// Gap length for --trig
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn parse_case(text: &str) -> std::result::Result<AppendixCase, String> {
    match text {
        "i" => Ok(AppendixCase::I),
        "ii" => Ok(AppendixCase::II),
        "iii" => Ok(AppendixCase::III),
        "iv" => Ok(AppendixCase::IV),
        other => Err(format!("unknown case \"{other}\" (use i..iv)")),
    }
}

#[derive(Serialize)]
struct DeterminantJson {
    case: String,
    q: usize,
    nu: usize,
    points: Vec<usize>,
    closed_form: f64,
    numeric: f64,
    difference: f64,
}

#[derive(Serialize)]
struct TrigJson {
    kind: String,
    q: usize,
    m: usize,
    coefficients: Vec<f64>,
    strictly_decreasing_positive: bool,
}

pub fn appendix(args: AppendixArgs) -> Result<i32> {
    if let Some(kind) = &args.trig {
        let coefficients = match kind.as_str() {
            "cos" => trig_cos_coeffs::<f64>(args.q, args.m)?,
            _ => trig_sin_coeffs::<f64>(args.q, args.m)?,
        };
        let monotone = strictly_decreasing_positive(&coefficients);
        let json = TrigJson {
            kind: kind.clone(),
            q: args.q,
            m: args.m,
            coefficients: coefficients.clone(),
            strictly_decreasing_positive: monotone,
        };
        match args.format {
            Format::Json => emit_json(json, Resolved::default())?,
            Format::Csv => emit_csv(
                &["nu", "coefficient"],
                coefficients
                    .iter()
                    .enumerate()
                    .map(|(nu, &a)| vec![nu as f64, a]),
            ),
        }
        return Ok(if monotone { 0 } else { 3 });
    }

    let case = args
        .case
        .ok_or_else(|| Error::Input("need --case (or --trig)".into()))?;
    let nu = args
        .nu
        .ok_or_else(|| Error::Input("need --nu for the determinant".into()))?;
    let points = args
        .points
        .clone()
        .ok_or_else(|| Error::Input("need --points for the determinant".into()))?;
    let closed: f64 = case.closed_form_det(args.q, nu, &points)?;
    let table = case.numeric_psi_table::<f64>(args.q, points.len())?;
    let numeric = table.bordered_det(nu, &points)?;
    let json = DeterminantJson {
        case: format!("{case:?}").to_lowercase(),
        q: args.q,
        nu,
        points,
        closed_form: closed,
        numeric,
        difference: (closed - numeric).abs(),
    };
    let ok = if closed.abs() <= tol::APPENDIX_DET_ABS {
        numeric.abs() <= tol::APPENDIX_DET_ABS
    } else {
        (closed - numeric).abs() <= tol::APPENDIX_DET_REL * closed.abs()
    };
    emit_json(json, Resolved::default())?;
    Ok(if ok { 0 } else { 3 })
}

// ------------------------------------------------------------------- suite

#[derive(Args, Debug)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Run only criteria whose name contains this substring
    #[arg(long)]
    pub only: Option<String>,
    /// Perturb selected inputs so the checks must report failures
    #[arg(long, default_value_t = false)]
    pub inject_fault: bool,
}

#[derive(Serialize)]
struct SuiteJson {
    seed: u64,
    inject_fault: bool,
    criteria: Vec<CriterionJson>,
    pass: bool,
}

#[derive(Serialize)]
struct CriterionJson {
    id: usize,
    name: &'static str,
    pass: bool,
    millis: u128,
    detail: String,
}

pub fn suite(args: SuiteArgs) -> Result<i32> {
    let config = BatteryConfig {
        seed: args.seed,
        inject_fault: args.inject_fault,
    };
    let results: Vec<_> = run_all(&config)
        .into_iter()
        .filter(|r| match &args.only {
            Some(filter) => r.name.contains(filter.as_str()),
            None => true,
        })
        .collect();
    if results.is_empty() {
        return Err(Error::Input(format!(
            "no criteria match filter {:?}",
            args.only
        )));
    }
    for result in &results {
        let status = if result.pass { "PASS" } else { "FAIL" };
        eprintln!(
            "criterion {:2} ({}): {} [{} ms] {}",
            result.id, result.name, status, result.millis, result.detail
        );
    }
    let pass = results.iter().all(|r| r.pass);
    let json = SuiteJson {
        seed: args.seed,
        inject_fault: args.inject_fault,
        criteria: results
            .into_iter()
            .map(|r| CriterionJson {
                id: r.id,
                name: r.name,
                pass: r.pass,
                millis: r.millis,
                detail: r.detail,
            })
            .collect(),
        pass,
    };
    let resolved = Resolved {
        seed: Some(args.seed),
        ..Resolved::default()
    };
    emit_json(json, resolved)?;
    Ok(if pass { 0 } else { 1 })
}
