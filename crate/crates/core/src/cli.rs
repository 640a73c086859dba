//! The `sphex` command line: argument parsing, dispatch and report
//! rendering. Every JSON document carries `schema_version`.

use crate::catalog::{self, CatalogError, Params};
use crate::ews::{
    check_sphericity_of_construction, extended_semigroup_of_construction, predict_equidimensional,
    weight_semigroup_of_construction, ConstructionInput, EquidimVerdict, SpaceRecord, SphericityVerdict,
};
use crate::linalg::Q;
use crate::monoidcone::{is_almost_excellent, is_excellent_semigroup, is_free, AffineMonoid, ConeRay};
use crate::torusquot::{analyze, TorusActionSpec};
use crate::witness::{self, cases::CaseId};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const SCHEMA_VERSION: u32 = 1;

/// Exit status: all checks passed.
pub const EXIT_OK: i32 = 0;
/// Exit status: a check failed or a verdict disagrees with the catalog.
pub const EXIT_FAILED: i32 = 1;
/// Exit status: bad input or arguments.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sphex", version, about = "Weight semigroups, torus quotients and equidimensionality checks")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Operations on affine monoids of dominant weights.
    #[command(subcommand)]
    Semigroup(SemigroupCmd),
    /// Operations on diagonal torus actions.
    #[command(subcommand)]
    Torus(TorusCmd),
    /// The classification catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Analyse a product construction of spherical blocks.
    Construct(InputArg),
    /// Explicit semi-invariants of the non-equidimensional cases.
    #[command(subcommand)]
    Witness(WitnessCmd),
}

#[derive(Args, Debug)]
pub struct InputArg {
    /// JSON input file, `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum SemigroupCmd {
    /// Freeness, excellence and almost-excellence of a monoid.
    Check(InputArg),
}

#[derive(Subcommand, Debug)]
pub enum TorusCmd {
    /// Symmetry, quotient and null-cone dimensions of a torus action.
    Analyze(InputArg),
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    /// List the catalog entries.
    List,
    /// Re-derive and compare the verdicts of catalog instances.
    Validate(EntryArgs),
    /// Print the data of one instance.
    Instantiate(EntryArgs),
}

#[derive(Args, Debug)]
pub struct EntryArgs {
    /// Entry id, or `all`.
    #[arg(long, default_value = "all")]
    pub entry: String,
    /// Parameters, e.g. `n=2,m=1`.
    #[arg(long, value_parser = parse_params)]
    pub param: Option<Params>,
    /// Sweep every parameter from its minimum up to this bound.
    #[arg(long)]
    pub sweep: Option<i64>,
}

#[derive(Subcommand, Debug)]
pub enum WitnessCmd {
    /// Semi-invariance checks and the explicit zero-locus witnesses.
    Run(WitnessArgs),
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    /// Case id `2-1` .. `2-5`.
    #[arg(long = "case")]
    pub case: String,
    #[arg(long, value_parser = parse_params)]
    pub param: Option<Params>,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Nonzero rationals `a,b,c,d` for the explicit witness.
    #[arg(long, value_parser = parse_abcd)]
    pub abcd: Option<[Q; 4]>,
}

pub fn parse_params(s: &str) -> Result<Params, String> {
    let mut out = Params::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected name=value, got {part:?}"))?;
        let v: i64 = v.trim().parse().map_err(|e| format!("{k}: {e}"))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

pub fn parse_abcd(s: &str) -> Result<[Q; 4], String> {
    let vals: Vec<Q> = s
        .split(',')
        .map(|x| Q::from_str(x.trim()).map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    vals.try_into().map_err(|v: Vec<Q>| format!("expected 4 values, got {}", v.len()))
}

/// A finished command: the JSON report, its text rendering and exit status.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.report).expect("reports serialise"),
            Format::Text => self.text.clone(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Witness(#[from] witness::WitnessError),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn report(&self) -> Value {
        json!({ "schema_version": SCHEMA_VERSION, "error": self.to_string() })
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let shown = path.display().to_string();
    let text = if shown == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::Input { path: shown.clone(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input { path: shown, message: e.to_string() })
}

fn envelope<T: Serialize>(command: &str, body: &T) -> Value {
    let mut v = serde_json::to_value(body).expect("reports serialise");
    if let Value::Object(map) = &mut v {
        let mut out = serde_json::Map::new();
        out.insert("schema_version".into(), json!(SCHEMA_VERSION));
        out.insert("command".into(), json!(command));
        out.append(map);
        return Value::Object(out);
    }
    json!({ "schema_version": SCHEMA_VERSION, "command": command, "result": v })
}

fn fmt_vecs(v: &[Vec<i64>]) -> String {
    v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct SemigroupReport {
    free: bool,
    excellent: bool,
    almost_excellent: bool,
    indecomposables: Vec<Vec<i64>>,
    extremal_rays: Vec<ConeRay>,
    witnesses: Witnesses,
}

#[derive(Serialize)]
struct Witnesses {
    indecomposables: Vec<(usize, usize)>,
    extremal_rays: Vec<(usize, usize)>,
}

pub fn semigroup_check(m: &AffineMonoid) -> Outcome {
    let exc = is_excellent_semigroup(m);
    let almost = is_almost_excellent(m);
    let r = SemigroupReport {
        free: is_free(m),
        excellent: exc.excellent,
        almost_excellent: almost.almost_excellent,
        indecomposables: exc.indecomposables,
        extremal_rays: almost.extremal_rays,
        witnesses: Witnesses { indecomposables: exc.witnesses, extremal_rays: almost.witnesses },
    };
    let rays: Vec<Vec<i64>> = r.extremal_rays.iter().map(|x| x.direction().to_vec()).collect();
    let text = format!(
        "free: {}\nexcellent: {}\nalmost_excellent: {}\nindecomposables: {}\nextremal_rays: {}\n",
        r.free,
        r.excellent,
        r.almost_excellent,
        fmt_vecs(&r.indecomposables),
        fmt_vecs(&rays)
    );
    Outcome { report: envelope("semigroup check", &r), text, exit_code: EXIT_OK }
}

pub fn torus_analyze(a: &TorusActionSpec) -> Result<Outcome, CliError> {
    let r = analyze(a).map_err(|e| CliError::Invalid(e.to_string()))?;
    let mut text = format!("symmetric: {}\n", r.symmetric);
    if let Some(v) = &r.violation {
        text += &format!("violation: {v}\n");
    }
    if let (Some(c), Some(d)) = (r.c, r.d) {
        text += &format!("c: {c}\nd: {d}\n");
    }
    if let Some(e) = r.excellent {
        text += &format!("excellent: {e}\n");
    }
    text += &format!(
        "quotient_dim: {}\nnull_cone_dim: {}\nequidimensional: {}\n",
        r.quotient_dim, r.null_cone_dim, r.equidimensional
    );
    Ok(Outcome { report: envelope("torus analyze", &r), text, exit_code: EXIT_OK })
}

fn instances(args: &EntryArgs) -> Result<Vec<(String, Params)>, CliError> {
    let ids: Vec<String> = if args.entry == "all" {
        catalog::entries().iter().map(|e| e.id.clone()).collect()
    } else {
        vec![catalog::entry(&args.entry)?.id.clone()]
    };
    if args.param.is_some() && (args.sweep.is_some() || ids.len() != 1) {
        return Err(CliError::Invalid("--param needs a single --entry and no --sweep".into()));
    }
    let mut out = Vec::new();
    for id in ids {
        match (&args.param, args.sweep) {
            (Some(p), _) => out.push((id, p.clone())),
            (None, Some(k)) => out.extend(catalog::sweep_params(&id, k)?.into_iter().map(|p| (id.clone(), p))),
            (None, None) => out.push((id.clone(), catalog::default_params(&id)?)),
        }
    }
    Ok(out)
}

fn show_params(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

pub fn catalog_list() -> Outcome {
    let entries = catalog::list_entries();
    let text = entries
        .iter()
        .map(|e| {
            let params: Vec<String> = e.params.iter().map(|p| format!("{}>={}", p.name, p.min)).collect();
            format!("{:<14} {:<8} {:?}  {}  [{}]\n", e.id, format!("{:?}", e.completeness).to_lowercase(), e.space_type, e.title, params.join(","))
        })
        .collect();
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "catalog list",
        "data_version": catalog::data_version(),
        "entries": entries,
    });
    Outcome { report, text, exit_code: EXIT_OK }
}

pub fn catalog_validate(args: &EntryArgs) -> Result<Outcome, CliError> {
    let mut reports = Vec::new();
    for (id, p) in instances(args)? {
        reports.push(catalog::validate(&id, &p)?);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let mut text = String::new();
    for r in &reports {
        let eq = r.prediction.as_ref().map(|p| p.equidimensional.to_string()).unwrap_or_else(|| "-".into());
        text += &format!(
            "{} {} {} equidimensional={}{}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            show_params(&r.params),
            eq,
            if r.failures.is_empty() { String::new() } else { format!(" [{}]", r.failures.join("; ")) }
        );
    }
    text += &format!("{} instances, {} failed\n", reports.len(), failed);
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "catalog validate",
        "data_version": catalog::data_version(),
        "passed": failed == 0,
        "instances": reports.len(),
        "failed": failed,
        "reports": reports,
    });
    Ok(Outcome { report, text, exit_code: if failed == 0 { EXIT_OK } else { EXIT_FAILED } })
}

pub fn catalog_instantiate(args: &EntryArgs) -> Result<Outcome, CliError> {
    let mut out = Vec::new();
    for (id, p) in instances(args)? {
        out.push(catalog::instantiate(&id, &p)?);
    }
    let text = out
        .iter()
        .map(|i| match &i.semigroup {
            Some(s) => format!("{} {}: {s}\n", i.id, show_params(&i.params)),
            None => format!("{} {} on {}: weights {}\n", i.id, show_params(&i.params), i.ambient, i.labels.join(", ")),
        })
        .collect();
    let report = json!({ "schema_version": SCHEMA_VERSION, "command": "catalog instantiate", "instances": out });
    Ok(Outcome { report, text, exit_code: EXIT_OK })
}

#[derive(Serialize)]
struct ConstructReport {
    spherical: bool,
    sphericity: SphericityVerdict,
    ambient: String,
    weight_semigroup: AffineMonoid,
    excellent: bool,
    almost_excellent: bool,
    /// `None` when the construction is not spherical.
    equidimensional_prediction: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prediction: Option<EquidimVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

pub fn construct(input: ConstructionInput) -> Result<Outcome, CliError> {
    let c = input.resolve().map_err(|e| CliError::Invalid(e.to_string()))?;
    let sphericity = check_sphericity_of_construction(&c);
    let weight_semigroup = weight_semigroup_of_construction(&c);
    let exc = is_excellent_semigroup(&weight_semigroup);
    let almost = is_almost_excellent(&weight_semigroup);
    let (prediction, note) = if sphericity.spherical {
        let ext = extended_semigroup_of_construction(&c).map_err(|e| CliError::Invalid(e.to_string()))?;
        let record = SpaceRecord { weight_monoid: weight_semigroup.clone(), extended: ext };
        let p = predict_equidimensional(&record).map_err(|e| CliError::Invalid(e.to_string()))?;
        (Some(p), None)
    } else {
        (None, Some("not spherical, so no equidimensionality prediction".to_string()))
    };
    let r = ConstructReport {
        spherical: sphericity.spherical,
        ambient: c.ambient().to_string(),
        excellent: exc.excellent,
        almost_excellent: almost.almost_excellent,
        equidimensional_prediction: prediction.as_ref().map(|p| p.equidimensional),
        sphericity,
        weight_semigroup,
        prediction,
        note,
    };
    let eq = r.equidimensional_prediction.map_or("-".to_string(), |b| b.to_string());
    let text = format!(
        "ambient: {}\nspherical: {} (p={}, q={})\nweight_semigroup: {}\nexcellent: {}\nalmost_excellent: {}\nequidimensional: {}\n",
        r.ambient,
        r.spherical,
        r.sphericity.p,
        r.sphericity.q,
        fmt_vecs(&r.weight_semigroup.generators()),
        r.excellent,
        r.almost_excellent,
        eq
    );
    Ok(Outcome { report: envelope("construct", &r), text, exit_code: EXIT_OK })
}

pub fn witness_run(args: &WitnessArgs) -> Result<Outcome, CliError> {
    let case = CaseId::from_str(&args.case)?;
    let params = args.param.clone().unwrap_or_else(|| witness::default_params(case));
    let abcd = match &args.abcd {
        Some(v) => Some(v.clone()),
        None if case.has_witness() => Some([1, 2, 3, 4].map(|x| Q::from_integer(x.into()))),
        None => None,
    };
    let r = witness::run(case, &params, args.samples, args.seed, abcd)?;
    let s = &r.semiinvariance;
    let tally = |t: &witness::CheckTally| format!("{}/{}", t.passed, t.passed + t.failed);
    let mut text = format!(
        "case {} {}\nweights: {}\nleft_u: {}\ntorus: {}\nright_h: {}\nzero_locus: {}\n",
        case,
        show_params(&params),
        s.weights.join(", "),
        tally(&s.left_u),
        tally(&s.torus),
        tally(&s.right_h),
        tally(&s.zero_locus)
    );
    if let Some(t) = &s.theta_hom {
        text += &format!("theta_hom: {}\n", tally(t));
    }
    if let Some(w) = &r.witness {
        text += &format!("witness values: {}\nexpected: {}\nf: {}\n", w.values.join(", "), w.expected_values.join(", "), w.f_values.join(", "));
    }
    if let Some(f) = &s.failure {
        text += &format!("failure: {} f{} sample {}: expected {}, got {}\n", f.check, f.function, f.sample, f.expected, f.got);
    }
    text += if r.passed { "PASS\n" } else { "FAIL\n" };
    Ok(Outcome { report: envelope("witness run", &r), text, exit_code: if r.passed { EXIT_OK } else { EXIT_FAILED } })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Semigroup(SemigroupCmd::Check(a)) => Ok(semigroup_check(&read_json(&a.input)?)),
        Command::Torus(TorusCmd::Analyze(a)) => torus_analyze(&read_json(&a.input)?),
        Command::Catalog(CatalogCmd::List) => Ok(catalog_list()),
        Command::Catalog(CatalogCmd::Validate(a)) => catalog_validate(a),
        Command::Catalog(CatalogCmd::Instantiate(a)) => catalog_instantiate(a),
        Command::Construct(a) => construct(read_json(&a.input)?),
        Command::Witness(WitnessCmd::Run(a)) => witness_run(a),
    }
}

/// Runs a parsed command line, returning the rendered output and the exit
/// status. Errors are rendered as a JSON (or text) error record.
pub fn run(cli: &Cli) -> (String, i32) {
    match execute(cli) {
        Ok(o) => (o.render(cli.format), o.exit_code),
        Err(e) => match cli.format {
            Format::Json => (serde_json::to_string_pretty(&e.report()).expect("serialises"), EXIT_USAGE),
            Format::Text => (format!("error: {e}\n"), EXIT_USAGE),
        },
    }
}
