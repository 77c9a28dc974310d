use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use quadrigid::families::{preset, presets, verify_family, FamilyError, FamilySpec, Host, Verification};
use quadrigid::graph::{recognize_balanced_join, recognize_join, GraphError, JoinStructure};
use quadrigid::quadric::{generic_qrm_rank, qrm, qrm_column_names, qrm_width, quadric_basis, quadric_flex, QuadricError};
use quadrigid::report::{hendrickson_report, Engine, ReportError, ReportOptions, RigidityReport};
use quadrigid::rigidity::{trial_rng, Configuration, RigidityError};
use quadrigid::{Field, GgrVerdict, Graph, Rational, F61};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("expectation failed: {0}")]
    Expectation(String),
    #[error("{0}")]
    Disagreement(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Expectation(_) => 1,
            CliError::Input(_) => 2,
            CliError::Disagreement(_) => 3,
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        if e.is_disagreement() {
            CliError::Disagreement(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Report(e) => e.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<QuadricError> for CliError {
    fn from(e: QuadricError) -> Self {
        ReportError::from(e).into()
    }
}

impl From<RigidityError> for CliError {
    fn from(e: RigidityError) -> Self {
        ReportError::from(e).into()
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

type Result<T, E = CliError> = std::result::Result<T, E>;

/// Generic rigidity of bar frameworks, with the quadric rigidity matrix for
/// balanced joined graphs.
///
/// Exit codes: 0 success, 1 an expectation or family claim failed, 2 invalid
/// input, 3 randomized trials or engines disagreed.
#[derive(Parser, Debug)]
#[command(name = "quadrigid", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Seed for the random configurations; trial t uses stream t.
    #[arg(long, global = true, env = "QUADRIGID_SEED", default_value_t = 0)]
    seed: u64,
    /// Independent random trials that must agree.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Prime)]
    field: FieldArg,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FieldArg {
    /// Integers modulo 2^61 - 1.
    Prime,
    /// Exact rationals.
    Rational,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum EngineArg {
    Rm,
    Qrm,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Rm => Engine::Rm,
            EngineArg::Qrm => Engine::Qrm,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Expect {
    Glr,
    Grr,
    Hendrickson,
    Ggr,
    NotGgr,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FamilyKind {
    Connelly,
    PartialConing,
    Chain,
    ChainGeneral,
    HGraph,
    FourChain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a family member or a named preset as graph JSON.
    Gen(FamilyArgs),
    /// Full rigidity report of a graph.
    Check(CheckArgs),
    /// Find a join structure (balanced for `--dim`).
    Recognize(RecognizeArgs),
    /// Quadric rigidity matrix of a balanced joined graph.
    Qrm(QrmArgs),
    /// Verify the known properties of a family member.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct FamilyArgs {
    family: Option<FamilyKind>,
    /// Named instance; see `gen --list`.
    #[arg(long, conflicts_with_all = ["family", "spec"])]
    preset: Option<String>,
    /// Family spec JSON: {"kind": ..., "params": {...}}.
    #[arg(long, conflicts_with = "family")]
    spec: Option<PathBuf>,
    /// List the presets.
    #[arg(long)]
    list: bool,
    #[arg(short, long, value_parser = dim_parser())]
    dim: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    x: Option<usize>,
    /// Four layer sizes of an arbitrary chain, comma separated.
    #[arg(long, value_delimiter = ',')]
    layers: Option<Vec<usize>>,
    /// Chain host, `K<n>`; defaults to K_{d+1}.
    #[arg(long)]
    host: Option<Host>,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph JSON file, `-` for stdin, or a preset name.
    graph: String,
}

#[derive(Args, Debug)]
struct ReportFlags {
    #[arg(long, value_enum, default_value_t = EngineArg::Both)]
    engine: EngineArg,
    /// Random stresses sampled for the global rigidity certificate.
    #[arg(long, default_value_t = 3)]
    ggr_samples: usize,
    /// Include stress and flex witnesses in JSON output.
    #[arg(long)]
    witnesses: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(short, long, value_parser = dim_parser())]
    dim: usize,
    /// Fail with exit code 1 unless the property holds.
    #[arg(long, value_enum)]
    expect: Vec<Expect>,
    #[command(flatten)]
    flags: ReportFlags,
}

#[derive(Args, Debug)]
struct RecognizeArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Require both classes to have at least d + 1 vertices.
    #[arg(short, long, value_parser = dim_parser())]
    dim: Option<usize>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["print", "rank", "flexes"])))]
struct QrmArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(short, long, value_parser = dim_parser())]
    dim: usize,
    /// Print the matrix.
    #[arg(long)]
    print: bool,
    /// Print the rank (generic unless `--coords` is given).
    #[arg(long)]
    rank: bool,
    /// Print a basis of quadric flexes.
    #[arg(long)]
    flexes: bool,
    /// Configuration JSON: {"d": int, "points": [[...], ...]}.
    #[arg(long)]
    coords: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Verify every preset.
    #[arg(long, conflicts_with_all = ["family", "preset", "spec"])]
    all: bool,
    #[command(flatten)]
    flags: ReportFlags,
}

fn dim_parser() -> impl TypedValueParser<Value = usize> {
    clap::value_parser!(u64).range(1..).map(|d| d as usize)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.common.field {
        FieldArg::Prime => run::<F61>(&cli),
        FieldArg::Rational => run::<Rational>(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run<F: Field>(cli: &Cli) -> Result<()> {
    let common = &cli.common;
    match &cli.command {
        Command::Gen(args) => gen(args, common),
        Command::Check(args) => check::<F>(args, common),
        Command::Recognize(args) => recognize(args, common),
        Command::Qrm(args) => qrm_command::<F>(args, common),
        Command::Report(args) => report::<F>(args, common),
    }
}

fn emit(common: &Common, mut text: String) -> Result<()> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let written = match &common.output {
        Some(path) => fs::write(path, text).map_err(|e| (path.display().to_string(), e)),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| ("stdout".to_string(), e)),
    };
    written.map_err(|(target, e)| CliError::Input(format!("cannot write {target}: {e}")))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
}

fn load_graph(input: &GraphInput) -> Result<Graph> {
    let source = &input.graph;
    if source != "-" && !Path::new(source).exists() {
        if let Ok(spec) = preset(source) {
            let mut g = spec.build()?.graph;
            g.set_name(Some(source.clone()));
            return Ok(g);
        }
    }
    Ok(Graph::from_json_str(&read_source(source)?)?)
}

fn require(value: Option<usize>, flag: &str, kind: FamilyKind) -> Result<usize> {
    value.ok_or_else(|| CliError::Input(format!("family {kind:?} needs --{flag}")))
}

/// The spec selected by `--preset`, `--spec` or a family name, plus a
/// display name.
fn family_spec(args: &FamilyArgs) -> Result<(FamilySpec, String)> {
    if let Some(name) = &args.preset {
        return Ok((preset(name)?, name.clone()));
    }
    if let Some(path) = &args.spec {
        let text = read_source(&path.to_string_lossy())?;
        let spec: FamilySpec =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("bad family spec: {e}")))?;
        let name = spec.kind().to_string();
        return Ok((spec, name));
    }
    let kind = args
        .family
        .ok_or_else(|| CliError::Input("give a family, --preset, --spec or --list".into()))?;
    let d = require(args.dim, "dim", kind)?;
    let host = args.host;
    let spec = match kind {
        FamilyKind::Connelly => FamilySpec::Connelly { a: require(args.a, "a", kind)?, b: require(args.b, "b", kind)?, d },
        FamilyKind::PartialConing => {
            FamilySpec::PartialConing { a: require(args.a, "a", kind)?, b: require(args.b, "b", kind)?, d }
        }
        FamilyKind::Chain => FamilySpec::ChainAttachment { d, i: require(args.i, "i", kind)?, host },
        FamilyKind::ChainGeneral => FamilySpec::ChainAttachmentGeneral {
            d,
            x: require(args.x, "x", kind)?,
            i: require(args.i, "i", kind)?,
            host,
        },
        FamilyKind::HGraph => FamilySpec::HGraph { d },
        FamilyKind::FourChain => {
            let layers = args
                .layers
                .as_deref()
                .ok_or_else(|| CliError::Input("family FourChain needs --layers".into()))?;
            let x: [usize; 4] = layers
                .try_into()
                .map_err(|_| CliError::Input("--layers takes four sizes".into()))?;
            FamilySpec::FourChainAttachment { x, d, host }
        }
    };
    let name = serde_json::to_value(&spec)
        .ok()
        .and_then(|v| {
            let params = v.get("params")?.as_object()?;
            let parts: Vec<String> = params
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect();
            Some(format!("{} {}", spec.kind(), parts.join(" ")))
        })
        .unwrap_or_else(|| spec.kind().to_string());
    Ok((spec, name))
}

fn list_presets(common: &Common) -> Result<()> {
    let all = presets();
    if common.format == Some(Format::Json) {
        let v: Vec<Value> = all
            .iter()
            .map(|p| json!({"name": p.name, "description": p.description, "spec": p.spec}))
            .collect();
        return emit(common, pretty(&Value::Array(v)));
    }
    let width = all.iter().map(|p| p.name.len()).max().unwrap_or(0);
    let lines: Vec<String> = all.iter().map(|p| format!("{:width$}  {}", p.name, p.description)).collect();
    emit(common, lines.join("\n"))
}

fn graph_text(g: &Graph) -> String {
    let mut out = String::new();
    if let Some(name) = g.name() {
        out.push_str(&format!("# {name}\n"));
    }
    out.push_str(&format!("{} {}\n", g.vertex_count(), g.edge_count()));
    for (i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

fn gen(args: &FamilyArgs, common: &Common) -> Result<()> {
    if args.list {
        return list_presets(common);
    }
    let (spec, name) = family_spec(args)?;
    let instance = spec.build()?;
    let mut g = instance.graph;
    g.set_name(Some(name));
    let out = match common.format.unwrap_or(Format::Json) {
        Format::Json => g.to_json_string(),
        Format::Text => graph_text(&g),
        Format::Dot => {
            let highlight = instance.join.map(|js| js.extraneous().to_vec()).unwrap_or_default();
            g.to_dot(&highlight)
        }
    };
    emit(common, out)
}

fn report_options(flags: &ReportFlags, common: &Common) -> ReportOptions {
    ReportOptions {
        seed: common.seed,
        trials: common.trials as usize,
        ggr_samples: flags.ggr_samples,
        engine: flags.engine.into(),
        witnesses: flags.witnesses,
    }
}

fn holds(expect: Expect, r: &RigidityReport) -> bool {
    match expect {
        Expect::Glr => r.glr,
        Expect::Grr => r.grr,
        Expect::Hendrickson => r.hendrickson_pass,
        Expect::Ggr => r.ggr_certificate.verdict == GgrVerdict::GgrProbable,
        Expect::NotGgr => r.ggr_certificate.verdict == GgrVerdict::NotGgrProbable,
    }
}

fn check<F: Field>(args: &CheckArgs, common: &Common) -> Result<()> {
    let g = load_graph(&args.input)?;
    let r = hendrickson_report::<F>(&g, args.dim, &report_options(&args.flags, common))?;
    let out = match common.format.unwrap_or(Format::Json) {
        Format::Json => r.to_json_string(),
        Format::Text => r.to_text(),
        Format::Dot => g.to_dot(&r.redundant_edge_list()),
    };
    emit(common, out)?;
    let failed: Vec<String> = args
        .expect
        .iter()
        .filter(|&&e| !holds(e, &r))
        .map(|e| format!("{e:?}").to_lowercase())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Expectation(failed.join(", ")))
    }
}

fn join_text(js: &JoinStructure) -> String {
    let list = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let (a, b) = js.sizes();
    let extraneous: Vec<String> = js.extraneous().iter().map(|(i, j)| format!("{i}-{j}")).collect();
    format!(
        "left ({a}): {}\nright ({b}): {}\nextraneous ({}): {}\n",
        list(js.left()),
        list(js.right()),
        extraneous.len(),
        extraneous.join(" ")
    )
}

fn recognize(args: &RecognizeArgs, common: &Common) -> Result<()> {
    let g = load_graph(&args.input)?;
    let found = match args.dim {
        Some(d) => recognize_balanced_join(&g, d),
        None => recognize_join(&g),
    };
    let Some(js) = found else {
        let what = if args.dim.is_some() { "not a balanced join" } else { "not a join" };
        return emit(common, what.to_string());
    };
    let out = match common.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&serde_json::to_value(&js).expect("join serializes")),
        Format::Text => join_text(&js),
        Format::Dot => g.to_dot(js.extraneous()),
    };
    emit(common, out)
}

fn qrm_command<F: Field>(args: &QrmArgs, common: &Common) -> Result<()> {
    let d = args.dim;
    let g = load_graph(&args.input)?;
    let js = recognize_balanced_join(&g, d).ok_or(QuadricError::NotBalancedJoin(d))?;
    let format = common.format.unwrap_or(Format::Json);
    if format == Format::Dot {
        return Err(CliError::Input("qrm has no dot output".into()));
    }
    let coords = match &args.coords {
        Some(path) => {
            let text = read_source(&path.to_string_lossy())?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("bad coordinates: {e}")))?;
            let p = Configuration::<F>::from_json(&value)?;
            if p.dim() != d {
                return Err(QuadricError::DimensionMismatch(d, p.dim()).into());
            }
            Some(p)
        }
        None => None,
    };
    let config = || -> Result<Configuration<F>> {
        match &coords {
            Some(p) => Ok(p.clone()),
            None => Ok(Configuration::random(g.vertex_count(), d, &mut trial_rng(common.seed, 0))?),
        }
    };

    if args.rank {
        let rank = match &coords {
            Some(p) => qrm(&js, p)?.rank(),
            None => generic_qrm_rank::<F>(&js, d, &mut trial_rng(common.seed, 0), common.trials as usize)?,
        };
        let rows = g.vertex_count() + js.extraneous().len();
        let out = match format {
            Format::Text => rank.to_string(),
            _ => pretty(&json!({
                "rank": rank,
                "rows": rows,
                "columns": qrm_width(d),
                "full_rank": rank == qrm_width(d),
            })),
        };
        return emit(common, out);
    }

    let p = config()?;
    if args.print {
        let m = qrm(&js, &p)?;
        let mut labels: Vec<String> = (0..g.vertex_count()).map(|v| format!("v{v}")).collect();
        labels.extend(js.extraneous().iter().map(|(i, j)| format!("e{i}-{j}")));
        let out = match format {
            Format::Text => {
                let mut out = format!("\t{}\n", qrm_column_names(d).join("\t"));
                for (label, row) in labels.iter().zip(m.iter_rows()) {
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    out.push_str(&format!("{label}\t{}\n", cells.join("\t")));
                }
                out
            }
            _ => pretty(&json!({
                "columns": qrm_column_names(d),
                "row_labels": labels,
                "rows": m.iter_rows().map(|r| r.iter().map(F::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "field": F::KIND,
                "modulus": F::modulus(),
            })),
        };
        return emit(common, out);
    }

    let quadrics = quadric_basis(&js, &p)?;
    let flexes = quadrics
        .iter()
        .map(|q| quadric_flex(q, &js, &p))
        .collect::<Result<Vec<_>, _>>()?;
    let out = match format {
        Format::Text => {
            let mut out = format!("{}\n", flexes.len());
            for f in &flexes {
                let cells: Vec<String> = f.flatten().iter().map(ToString::to_string).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
            out
        }
        _ => pretty(&json!({
            "count": flexes.len(),
            "quadrics": quadrics.iter().map(|q| q.to_json()).collect::<Vec<_>>(),
            "flexes": flexes.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
        })),
    };
    emit(common, out)
}

fn verification_text(name: &str, v: &Verification) -> String {
    let mut out = format!("{name}\n");
    for c in &v.claims {
        out.push_str(&format!("  {}\n", c.verdict_line()));
    }
    if v.claims.is_empty() {
        out.push_str("  no claims for this family\n");
    }
    out
}

fn report<F: Field>(args: &ReportArgs, common: &Common) -> Result<()> {
    if args.family.list {
        return list_presets(common);
    }
    let opts = report_options(&args.flags, common);
    let specs: Vec<(FamilySpec, String)> = if args.all {
        presets().into_iter().map(|p| (p.spec, p.name.to_string())).collect()
    } else {
        vec![family_spec(&args.family)?]
    };
    let mut results = Vec::with_capacity(specs.len());
    for (spec, name) in specs {
        let v = verify_family::<F>(&spec, &opts)?;
        results.push((name, v));
    }
    let out = match common.format.unwrap_or(Format::Text) {
        Format::Json => {
            let items: Vec<Value> = results
                .iter()
                .map(|(name, v)| {
                    let mut value = serde_json::to_value(v).expect("verification serializes");
                    value["name"] = json!(name);
                    value["all_pass"] = json!(v.all_pass());
                    value
                })
                .collect();
            if items.len() == 1 {
                pretty(&items[0])
            } else {
                pretty(&Value::Array(items))
            }
        }
        Format::Text => results.iter().map(|(name, v)| verification_text(name, v)).collect(),
        Format::Dot => return Err(CliError::Input("report has no dot output".into())),
    };
    emit(common, out)?;
    let failed: Vec<&str> = results.iter().filter(|(_, v)| !v.all_pass()).map(|(n, _)| n.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Expectation(format!("claims failed for {}", failed.join(", "))))
    }
}
