//! Command-line interface. Every command produces one JSON document; the
//! table format is a flattening of it.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordkit_core::group::DEFAULT_BALL_LIMIT;
use ordkit_core::lift::{cyclic_lift_iso_check, lift_check_suite, LiftCheckOptions};
use ordkit_core::obstruction::{
    self, brute_force_circular_orders, exponent_obstruction, promislow, spectrum_of, verify_unobstructed,
    SpectrumReport, DEFAULT_ENUMERATION_CAP,
};
use ordkit_core::orders::{
    validate_bi_invariance, validate_circular, validate_left, ValidateOptions, DEFAULT_EXHAUSTIVE_LIMIT,
    DEFAULT_SAMPLES, DEFAULT_SEED,
};
use ordkit_core::secret::{check_solution, detect_secret, DetectOptions, DEFAULT_BRANCH_CAP};
use ordkit_core::witness::{self, verify_witness_claims, WitnessGroup};
use ordkit_core::{CheckReport, Element, Group, ObstructionError, Status};
use serde_json::{json, Value};

use crate::describe::{self, CarrierSpec, GroupSpec, OrderingSpec};
use crate::error::{CliError, Result};
use crate::json;

/// Default for `ORDKIT_MAX_BALL`: the most elements any carrier may have.
pub const DEFAULT_MAX_BALL: usize = DEFAULT_BALL_LIMIT;

#[derive(Parser, Debug)]
#[command(name = "ordkit", version, about = "Left and circular orderings on groups: validation, lifts, secret detection and obstruction spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; `table` is derived from the JSON document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a circular or left ordering on a finite carrier.
    Validate(ValidateArgs),
    /// Check the cocycle, its recovery and the lifted left-ordered group.
    LiftCheck(LiftArgs),
    /// Decide whether a circular ordering comes from a left ordering on a carrier.
    DetectSecret(DetectArgs),
    /// Compute or bracket the obstruction spectrum of a group.
    Spectrum(SpectrumArgs),
    /// Enumerate all circular orderings of a small finite group.
    Enumerate(EnumerateArgs),
    /// Reproduce the Promislow-group computation.
    Promislow(PromislowArgs),
    /// Verify the structural claims about the witness group.
    Witness(WitnessArgs),
    /// Verify an unobstructedness certificate file.
    VerifyCert(VerifyCertArgs),
}

#[derive(Args, Debug)]
pub struct CarrierArgs {
    /// Radius of the standard ball used as carrier for infinite groups.
    #[arg(long, default_value_t = 2)]
    pub radius: usize,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub ordering: String,
    #[command(flatten)]
    pub carrier: CarrierArgs,
    /// Also check right invariance.
    #[arg(long)]
    pub bi: bool,
    /// Largest carrier checked exhaustively; larger carriers are sampled.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    pub exhaustive_limit: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub ordering: String,
    #[command(flatten)]
    pub carrier: CarrierArgs,
    /// Window `|n| ≤ bound` of central coordinates.
    #[arg(long, default_value_t = 20)]
    pub bound: i64,
}

#[derive(Args, Debug)]
pub struct DetectArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub ordering: String,
    #[command(flatten)]
    pub carrier: CarrierArgs,
    #[arg(long, default_value_t = DEFAULT_BRANCH_CAP)]
    pub branch_cap: u64,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 20)]
    pub cap: u64,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub group: String,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
    /// Include every arrangement in the report.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct PromislowArgs {
    #[arg(long, default_value_t = 20)]
    pub cap: u64,
    /// Radius of the ball for the structural checks.
    #[arg(long, default_value_t = promislow::CHECK_RADIUS)]
    pub radius: usize,
    /// Print the certificate for this `n` instead of running the checks.
    #[arg(long)]
    pub certificate: Option<u64>,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 500)]
    pub budget: usize,
    #[arg(long, default_value_t = witness::DEFAULT_SEED)]
    pub seed: u64,
    /// Use the deliberately wrong action exponent.
    #[arg(long)]
    pub sabotaged: bool,
}

#[derive(Args, Debug)]
pub struct VerifyCertArgs {
    pub file: PathBuf,
}

/// Resource limits read from the environment.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_ball: usize,
}

impl Limits {
    /// Reads `ORDKIT_MAX_BALL`.
    pub fn from_env() -> Result<Self> {
        match std::env::var("ORDKIT_MAX_BALL") {
            Ok(s) => s
                .trim()
                .parse()
                .ok()
                .filter(|&n: &usize| n > 0)
                .map(|max_ball| Limits { max_ball })
                .ok_or_else(|| CliError::Usage(format!("ORDKIT_MAX_BALL must be a positive integer, got `{s}`"))),
            Err(_) => Ok(Limits::default()),
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_ball: DEFAULT_MAX_BALL }
    }
}

/// A command's report and whether a mathematical check in it failed.
#[derive(Debug)]
pub struct Outcome {
    pub doc: Value,
    pub failed: bool,
}

impl Outcome {
    /// Exit code: 0 when nothing failed, 1 when a check failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed)
    }
}

fn any_failed(reports: &[CheckReport]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail)
}

fn document(command: &str, mut body: Value) -> Value {
    body["schema"] = json!(json::SCHEMA);
    body["command"] = json!(command);
    body
}

/// The carrier a command works on: the table's own carrier, the whole group
/// when finite, or the standard ball.
fn carrier_for(group: &Group, table: Option<Vec<Element>>, radius: usize, limits: Limits) -> Result<Vec<Element>> {
    let carrier = match (table, group.order()) {
        (Some(c), _) => c,
        (None, Some(order)) if order <= limits.max_ball as u64 => group.elements(limits.max_ball)?,
        (None, _) => describe::standard_ball(group, radius, limits.max_ball)?,
    };
    if carrier.len() > limits.max_ball {
        return Err(CliError::Resource(format!("carrier of {} elements exceeds ORDKIT_MAX_BALL = {}", carrier.len(), limits.max_ball)));
    }
    Ok(carrier)
}

fn circular(spec: OrderingSpec, what: &str) -> Result<(ordkit_core::CircularOrdering, Option<Vec<Element>>)> {
    match spec {
        OrderingSpec::Circular { ordering, carrier } => Ok((ordering, carrier)),
        OrderingSpec::Left(_) => Err(CliError::Usage(format!("{what} needs a circular ordering"))),
    }
}

pub fn run(cli: &Cli, limits: Limits) -> Result<Outcome> {
    match &cli.command {
        Command::Validate(a) => validate(a, limits),
        Command::LiftCheck(a) => lift_check(a, limits),
        Command::DetectSecret(a) => detect(a, limits),
        Command::Spectrum(a) => spectrum(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Promislow(a) => promislow_cmd(a),
        Command::Witness(a) => witness_cmd(a),
        Command::VerifyCert(a) => verify_cert(a, limits),
    }
}

fn validate(a: &ValidateArgs, limits: Limits) -> Result<Outcome> {
    let spec = describe::parse_group(&a.group)?;
    let group = spec.concrete()?;
    let opts = ValidateOptions { exhaustive_limit: a.exhaustive_limit, samples: a.samples, seed: a.seed };
    let (label, carrier, report) = match describe::parse_ordering(&a.ordering, group)? {
        OrderingSpec::Left(lo) => {
            let carrier = carrier_for(group, None, a.carrier.radius, limits)?;
            let r = validate_left(&lo, &carrier)?;
            (lo.label().to_string(), carrier, r)
        }
        OrderingSpec::Circular { ordering, carrier } => {
            let carrier = carrier_for(group, carrier, a.carrier.radius, limits)?;
            let r = if a.bi {
                validate_bi_invariance(&ordering, &carrier, opts)?
            } else {
                validate_circular(&ordering, &carrier, opts)?
            };
            (ordering.label().to_string(), carrier, r)
        }
    };
    let failed = report.status == Status::Fail;
    let doc = document(
        "validate",
        json!({"group": group.to_string(), "ordering": label, "carrier_size": carrier.len(), "report": json::report(&report)}),
    );
    Ok(Outcome { doc, failed })
}

fn lift_check(a: &LiftArgs, limits: Limits) -> Result<Outcome> {
    let spec = describe::parse_group(&a.group)?;
    let group = spec.concrete()?;
    let (c, table) = circular(describe::parse_ordering(&a.ordering, group)?, "lift-check")?;
    let carrier = carrier_for(group, table, a.carrier.radius, limits)?;
    let mut reports = vec![validate_circular(&c, &carrier, ValidateOptions::default())?];
    if reports[0].status != Status::Fail {
        reports.extend(lift_check_suite(&c, &carrier, a.bound, LiftCheckOptions::default())?);
        if let Group::Cyclic(n) = group {
            if *n >= 2 {
                reports.push(cyclic_lift_iso_check(*n, &c, a.bound)?);
            }
        }
    }
    let doc = document(
        "lift-check",
        json!({
            "group": group.to_string(),
            "ordering": c.label(),
            "carrier_size": carrier.len(),
            "bound": a.bound,
            "reports": json::reports(&reports),
        }),
    );
    Ok(Outcome { doc, failed: any_failed(&reports) })
}

fn detect(a: &DetectArgs, limits: Limits) -> Result<Outcome> {
    let spec = describe::parse_group(&a.group)?;
    let group = spec.concrete()?;
    let (c, table) = circular(describe::parse_ordering(&a.ordering, group)?, "detect-secret")?;
    let carrier = carrier_for(group, table, a.carrier.radius, limits)?;
    let verdict = detect_secret(&c, &carrier, DetectOptions { branch_cap: a.branch_cap })?;
    let mut body = json::verdict(&verdict);
    let mut failed = false;
    if let Some(sol) = verdict.solution() {
        let check = check_solution(&c, sol)?;
        failed = check.status == Status::Fail;
        body["solution_check"] = json::report(&check);
    }
    body["group"] = json!(group.to_string());
    body["ordering"] = json!(c.label());
    body["carrier_size"] = json!(carrier.len());
    Ok(Outcome { doc: document("detect-secret", body), failed })
}

const PRESENTED_NOTE: &str = "only the exponent obstruction applies to a group given by a presentation; other values are undetermined";

fn presented_spectrum(label: String, p: &ordkit_core::Presentation, cap: u64) -> Result<SpectrumReport> {
    let mut report = SpectrumReport::new(label, cap);
    match exponent_obstruction(p) {
        Ok(e) => e.apply_to(&mut report)?,
        Err(ObstructionError::NotApplicable(why)) => report.hypotheses.push(format!("exponent obstruction not applicable: {why}")),
        Err(e) => return Err(e.into()),
    }
    report.close_divisibility()?;
    report.hypotheses.push(PRESENTED_NOTE.to_string());
    Ok(report)
}

fn spectrum(a: &SpectrumArgs) -> Result<Outcome> {
    if a.cap < 2 {
        return Err(CliError::Usage("--cap must be at least 2".into()));
    }
    let spec = describe::parse_group(&a.group)?;
    let report = match &spec {
        GroupSpec::Concrete(g) => spectrum_of(g, a.cap)?,
        GroupSpec::Presented { presentation, .. } => presented_spectrum(spec.label(), presentation, a.cap)?,
    };
    Ok(Outcome { doc: document("spectrum", json::spectrum(&report)), failed: false })
}

fn enumerate(a: &EnumerateArgs) -> Result<Outcome> {
    let spec = describe::parse_group(&a.group)?;
    let group = spec.concrete()?;
    let tables = brute_force_circular_orders(group, a.cap)?;
    let mut body = json!({
        "group": group.to_string(),
        "count": tables.len(),
        "cyclic": obstruction::finite_co_decide(group)?,
    });
    if a.list {
        body["arrangements"] =
            Value::Array(tables.iter().map(|t| json::elements(t.arrangement().unwrap_or_default())).collect());
    }
    Ok(Outcome { doc: document("enumerate", body), failed: false })
}

fn promislow_cmd(a: &PromislowArgs) -> Result<Outcome> {
    if let Some(n) = a.certificate {
        let radius = promislow::SPECTRUM_CARRIER_RADIUS;
        let cert = promislow::certificate(n, 2 * radius)?;
        return Ok(Outcome { doc: json::certificate(&cert, radius)?, failed: false });
    }
    if a.cap < 2 {
        return Err(CliError::Usage("--cap must be at least 2".into()));
    }
    let checks = promislow::reproduction_checks(a.radius)?;
    let spectrum = promislow::promislow_spectrum(a.cap)?;
    let doc = document(
        "promislow",
        json!({"radius": a.radius, "checks": json::reports(&checks), "spectrum": json::spectrum(&spectrum)}),
    );
    Ok(Outcome { doc, failed: any_failed(&checks) })
}

fn witness_cmd(a: &WitnessArgs) -> Result<Outcome> {
    let group = if a.sabotaged { WitnessGroup::sabotaged(a.p)? } else { WitnessGroup::new(a.p)? };
    let report = verify_witness_claims(&group, a.budget, a.seed)?;
    let mut body = json::witness_report(&report);
    body["group"] = json!(group.to_string());
    Ok(Outcome { doc: document("witness", body), failed: !report.passed() })
}

fn verify_cert(a: &VerifyCertArgs, limits: Limits) -> Result<Outcome> {
    let (cert, carrier) = describe::certificate_from(&describe::read_json(&a.file)?)?;
    let carrier = match carrier {
        CarrierSpec::Radius(r) => describe::standard_ball(cert.group(), r, limits.max_ball)?,
        CarrierSpec::Elements(es) => es,
    };
    let report = verify_unobstructed(&cert, &carrier)?;
    let doc = document(
        "verify-cert",
        json!({
            "group": cert.group().to_string(),
            "n": cert.n,
            "evidence": cert.evidence.kind(),
            "carrier_size": carrier.len(),
            "report": json::report(&report),
            "hypotheses": cert.hypotheses,
        }),
    );
    Ok(Outcome { doc, failed: report.status == Status::Fail })
}

/// Renders a document in the requested format, newline-terminated.
pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut out = String::new();
            flatten("", doc, &mut out);
            out
        }
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), x, out);
            }
        }
        other => {
            out.push_str(path);
            out.push('\t');
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
}
