//! The `pairwalk` command line. Every subcommand prints one JSON report,
//! except `amplitude --sweep`, which prints CSV.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{circulant, cocktail_party, complete_graph, cycle, hypercube, petersen, Graph};
use crate::pair::{analyze_support, default_support_tolerance, pair_amplitude, strongly_cospectral, PairState, TotalWalk};
use crate::pgst::{pgst_hypotheses, search_pgst, PgstQuery, DEFAULT_ELL_MAX};
use crate::pst::Certifier;
use crate::report::{decomposition_json, error_json, exact_spectrum_json, sweep_csv, AnalysisReport, GraphDescriptor};
use crate::spectral::{
    default_tolerance, eigendecompose_symmetric, exact_integer_spectrum, default_integer_tolerance,
    total_closed_form, total_exact_spectrum, ExactSpectrum, SpectralDecomposition,
};
use crate::theorem::{verify_case, CaseParams, CASES};

pub const TOL_ENV: &str = "PAIRWALK_TOL";

#[derive(Debug, Parser)]
#[command(name = "pairwalk", version, about = "Laplacian pair state transfer on graphs and their total graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct GraphArgs {
    /// Edge-list file: "n m" then m lines "u v".
    #[arg(long, conflicts_with_all = ["family", "base"])]
    graph: Option<PathBuf>,
    /// complete, cycle, circulant, cocktail, hypercube, petersen, or total.
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated k=v pairs, e.g. "n=4" or "n=8,s=1:3:5:7".
    #[arg(long, default_value = "")]
    params: String,
    /// Base family for `--family total`.
    #[arg(long)]
    base: Option<String>,
}

#[derive(Debug, Clone, Args)]
struct CommonArgs {
    /// Support and cospectrality tolerance (overrides PAIRWALK_TOL).
    #[arg(long)]
    tol: Option<f64>,
    /// Reserved; no command is randomized.
    #[arg(long)]
    seed: Option<u64>,
    /// Record wall time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Clone, Args)]
struct PairArgs {
    #[arg(long)]
    pair: PairState,
    #[arg(long)]
    partner: Option<PairState>,
}

#[derive(Debug, Clone, Args)]
struct AmplitudeArgs {
    #[command(flatten)]
    pairs: PairArgs,
    #[arg(long, allow_hyphen_values = true)]
    time: Option<f64>,
    /// "start:end:steps"; prints time,fidelity CSV.
    #[arg(long, conflicts_with = "time")]
    sweep: Option<String>,
    /// Evaluate through the base decomposition (requires `--family total`).
    #[arg(long)]
    closed_form: bool,
}

#[derive(Debug, Subcommand)]
enum PairCommand {
    Support(WithGraph<PairArgs>),
    Cospectral(WithGraph<PairArgs>),
    Amplitude(WithGraph<AmplitudeArgs>),
}

#[derive(Debug, Args)]
struct WithGraph<T: Args> {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    args: T,
}

#[derive(Debug, Clone, Args)]
struct NoArgs {}

#[derive(Debug, Clone, Args)]
struct SpectraArgs {
    /// Numeric decomposition only, even when an exact spectrum exists.
    #[arg(long)]
    numeric: bool,
}

#[derive(Debug, Clone, Args)]
struct PgstArgs {
    #[arg(long)]
    pair: PairState,
    #[arg(long)]
    partner: PairState,
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_ELL_MAX)]
    ell_max: u64,
    #[arg(long)]
    refine: bool,
}

#[derive(Debug, Clone, Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "list")]
    case: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    ell_max: Option<u64>,
    /// List the registered cases.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct a graph and summarise it.
    Build(WithGraph<NoArgs>),
    /// Laplacian spectrum with multiplicities.
    Spectra(WithGraph<SpectraArgs>),
    /// Eigenvalue support of a pair state, and the signed split against a partner.
    Support(WithGraph<PairArgs>),
    /// Strong cospectrality of two pair states.
    Cospectral(WithGraph<PairArgs>),
    /// Transfer amplitude between two pair states.
    Amplitude(WithGraph<AmplitudeArgs>),
    /// Pair state analysis subcommands.
    #[command(subcommand)]
    Pair(PairCommand),
    /// Certify perfect pair state transfer between two pair states.
    CertifyPst(WithGraph<PairArgs>),
    /// Certify every pair of pair states (at most 60 vertices).
    ScanPst(WithGraph<NoArgs>),
    /// Search candidate times for pretty good pair state transfer on T(G).
    SearchPgst(WithGraph<PgstArgs>),
    /// Run a registered verification case.
    VerifyTheorem(VerifyArgs),
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the CLI, reading the tolerance override from `PAIRWALK_TOL`.
pub fn run_cli<I, S>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    run_cli_with_env(argv, std::env::var(TOL_ENV).ok())
}

pub fn run_cli_with_env<I, S>(argv: I, env_tol: Option<String>) -> CliOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
    match dispatch(cli.command, echo, env_tol.as_deref()) {
        Ok(stdout) => CliOutcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => CliOutcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(err)) => CliOutcome {
            code: 1,
            stdout: error_json(&err) + "\n",
            stderr: format!("error: {err}\n"),
        },
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_params(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("parameter {item:?} is not k=v")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn param<T: std::str::FromStr>(params: &BTreeMap<String, String>, family: &str, key: &str) -> CliResult<T> {
    let raw = params
        .get(key)
        .ok_or_else(|| usage(format!("family {family} needs parameter {key}")))?;
    raw.parse()
        .map_err(|_| usage(format!("parameter {key}={raw:?} is not valid for {family}")))
}

fn expect_keys(params: &BTreeMap<String, String>, family: &str, keys: &[&str]) -> CliResult<()> {
    match params.keys().find(|k| !keys.contains(&k.as_str())) {
        Some(k) => Err(usage(format!("family {family} does not take parameter {k}"))),
        None => Ok(()),
    }
}

fn build_family(family: &str, params: &BTreeMap<String, String>) -> CliResult<Graph> {
    let g = match family {
        "complete" => {
            expect_keys(params, family, &["n"])?;
            complete_graph(param(params, family, "n")?)?
        }
        "cycle" => {
            expect_keys(params, family, &["n"])?;
            cycle(param(params, family, "n")?)?
        }
        "circulant" => {
            expect_keys(params, family, &["n", "s"])?;
            let raw: String = param(params, family, "s")?;
            let s = raw
                .split(':')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| usage(format!("connection set {raw:?} must be integers separated by ':'")))?;
            circulant(param(params, family, "n")?, &s)?
        }
        "cocktail" | "cocktail-party" | "cocktail_party" => {
            expect_keys(params, family, &["m"])?;
            cocktail_party(param(params, family, "m")?)?
        }
        "hypercube" => {
            expect_keys(params, family, &["d"])?;
            hypercube(param(params, family, "d")?)?
        }
        "petersen" => {
            expect_keys(params, family, &[])?;
            petersen()
        }
        other => return Err(usage(format!("unknown family {other:?}"))),
    };
    Ok(g)
}

/// The analysed graph, and its base when it is a total graph.
struct Input {
    graph: Graph,
    base: Option<Graph>,
    descriptor: GraphDescriptor,
}

fn load_graph(args: &GraphArgs) -> CliResult<Input> {
    if let Some(path) = &args.graph {
        let bytes = std::fs::read(path).map_err(Error::from)?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| Error::Parse {
            line: 0,
            message: "edge list is not UTF-8".into(),
        })?;
        let graph = Graph::parse_edge_list(&text)?;
        return Ok(Input {
            graph,
            base: None,
            descriptor: GraphDescriptor::file(&path.display().to_string(), &bytes),
        });
    }
    let family = args
        .family
        .as_deref()
        .ok_or_else(|| usage("give --graph FILE or --family NAME"))?;
    let params = parse_params(&args.params)?;
    let descriptor = GraphDescriptor::Family {
        family: family.to_string(),
        params: params.clone(),
        base: args.base.clone(),
    };
    if family == "total" {
        let base_family = args
            .base
            .as_deref()
            .ok_or_else(|| usage("--family total needs --base NAME"))?;
        let base = build_family(base_family, &params)?;
        let (graph, _) = base.total_graph();
        return Ok(Input {
            graph,
            base: Some(base),
            descriptor,
        });
    }
    if args.base.is_some() {
        return Err(usage("--base is only meaningful with --family total"));
    }
    Ok(Input {
        graph: build_family(family, &params)?,
        base: None,
        descriptor,
    })
}

fn support_tolerance(flag: Option<f64>, env: Option<&str>) -> CliResult<f64> {
    let tol = match (flag, env) {
        (Some(t), _) => t,
        (None, Some(raw)) => raw
            .trim()
            .parse()
            .map_err(|_| usage(format!("{TOL_ENV}={raw:?} is not a number")))?,
        (None, None) => default_support_tolerance(),
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

/// Exact spectrum of the analysed graph: closed form for total graphs,
/// verified integer spectrum otherwise.
fn exact_spectrum(input: &Input) -> Result<Option<ExactSpectrum>> {
    match &input.base {
        Some(base) => match exact_integer_spectrum(base, default_integer_tolerance(base))? {
            Some(spec) => Ok(Some(total_exact_spectrum(base, &spec)?)),
            None => Ok(None),
        },
        None => exact_integer_spectrum(&input.graph, default_integer_tolerance(&input.graph)),
    }
}

fn numeric_spectrum(input: &Input) -> Result<SpectralDecomposition> {
    match &input.base {
        Some(base) => {
            let l = base.laplacian();
            let dec = eigendecompose_symmetric(&l, default_tolerance(&l))?;
            total_closed_form(base, &dec, 1e-8)
        }
        None => {
            let l = input.graph.laplacian();
            eigendecompose_symmetric(&l, default_tolerance(&l))
        }
    }
}

fn decomposition(input: &Input) -> Result<SpectralDecomposition> {
    Ok(match exact_spectrum(input)? {
        Some(spec) => spec.to_decomposition(),
        None => numeric_spectrum(input)?,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payloads serialize")
}

struct Ctx {
    echo: Vec<String>,
    started: Instant,
    timing: bool,
}

impl Ctx {
    fn finish(&self, report: AnalysisReport) -> String {
        let mut report = report;
        if self.timing {
            report.wall_time_seconds = Some(self.started.elapsed().as_secs_f64());
        }
        report.to_json() + "\n"
    }

    fn report(&self, input: &Input, result: Value) -> AnalysisReport {
        AnalysisReport::new(self.echo.clone(), Some(input.descriptor.clone()), result)
    }
}

fn require_partner(p: &PairArgs) -> CliResult<PairState> {
    p.partner.ok_or_else(|| usage("--partner c,d is required"))
}

fn dispatch(command: Command, echo: Vec<String>, env_tol: Option<&str>) -> CliResult<String> {
    let started = Instant::now();
    match command {
        Command::Build(w) => {
            let ctx = Ctx { echo, started, timing: w.common.timing };
            let input = load_graph(&w.graph)?;
            let g = &input.graph;
            let mut result = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "regular_degree": g.regular_degree(),
                "bipartite": g.is_bipartite().is_some(),
            });
            if let Some(base) = &input.base {
                result["base"] = json!({
                    "vertices": base.vertex_count(),
                    "edges": base.edge_count(),
                    "regular_degree": base.regular_degree(),
                    "bipartite": base.is_bipartite().is_some(),
                });
                result["labels"] = json!({
                    "base_vertices": [0, base.vertex_count()],
                    "base_edges": [base.vertex_count(), g.vertex_count()],
                });
            }
            Ok(ctx.finish(ctx.report(&input, result)))
        }
        Command::Spectra(w) => {
            let ctx = Ctx { echo, started, timing: w.common.timing };
            let input = load_graph(&w.graph)?;
            let exact = if w.args.numeric { None } else { exact_spectrum(&input)? };
            let (mut result, dec, grouping) = match exact {
                Some(spec) => {
                    let tol = default_integer_tolerance(input.base.as_ref().unwrap_or(&input.graph));
                    (exact_spectrum_json(&spec, tol), spec.to_decomposition(), tol)
                }
                None => {
                    let dec = numeric_spectrum(&input)?;
                    let tol = dec.grouping_tolerance().max(1e-8);
                    (decomposition_json(&dec, tol), dec, tol)
                }
            };
            let l = input.graph.laplacian();
            result["projector_error"] = json!(dec.check_invariants(Some(&l)).max_projector_error());
            Ok(ctx.finish(ctx.report(&input, result).with_tolerance("grouping", grouping)))
        }
        Command::Support(w) | Command::Pair(PairCommand::Support(w)) => support(w, echo, started, env_tol),
        Command::Cospectral(w) | Command::Pair(PairCommand::Cospectral(w)) => cospectral(w, echo, started, env_tol),
        Command::Amplitude(w) | Command::Pair(PairCommand::Amplitude(w)) => amplitude(w, echo, started),
        Command::CertifyPst(w) => {
            let ctx = Ctx { echo, started, timing: w.common.timing };
            let tol = support_tolerance(w.common.tol, env_tol)?;
            let input = load_graph(&w.graph)?;
            let partner = require_partner(&w.args)?;
            let spec = exact_spectrum(&input)?.ok_or_else(unavailable)?;
            let cert = Certifier::new(&spec, tol)?.certify(&w.args.pair, &partner)?;
            Ok(ctx.finish(ctx.report(&input, to_value(&cert)).with_tolerance("support", tol)))
        }
        Command::ScanPst(w) => {
            let ctx = Ctx { echo, started, timing: w.common.timing };
            let tol = support_tolerance(w.common.tol, env_tol)?;
            let input = load_graph(&w.graph)?;
            let spec = exact_spectrum(&input)?.ok_or_else(unavailable)?;
            let scan = Certifier::new(&spec, tol)?.scan()?;
            Ok(ctx.finish(ctx.report(&input, to_value(&scan)).with_tolerance("support", tol)))
        }
        Command::SearchPgst(w) => {
            let ctx = Ctx { echo, started, timing: w.common.timing };
            let input = load_graph(&w.graph)?;
            let base = input.base.as_ref().unwrap_or(&input.graph);
            let r = base
                .regular_degree()
                .ok_or_else(|| Error::Unsupported("total-graph amplitudes need a regular base graph".into()))?;
            let a = &w.args;
            let query = PgstQuery::new(a.pair, a.partner, a.epsilon, a.ell_max, a.refine)?;
            let exact = exact_integer_spectrum(base, default_integer_tolerance(base))?;
            let dec = match &exact {
                Some(spec) => spec.to_decomposition(),
                None => {
                    let l = base.laplacian();
                    eigendecompose_symmetric(&l, default_tolerance(&l))?
                }
            };
            let bip = base.is_bipartite();
            let walk = TotalWalk::new(&dec, bip.as_ref(), r)?;
            let mut report = search_pgst(&walk, &query)?;
            let mut note = Value::Null;
            match (&exact, r > 2, a.pair.same_pair(&a.partner)) {
                (Some(spec), true, false) => report.hypothesis_check = Some(pgst_hypotheses(base, spec, &a.pair, &a.partner)?),
                (None, _, _) => note = json!("base spectrum is not integral; hypotheses not checked"),
                (_, false, _) => note = json!("hypotheses need r > 2"),
                (_, _, true) => note = json!("pair and partner coincide; hypotheses not checked"),
            }
            let mut result = to_value(&report);
            if !note.is_null() {
                result["hypothesis_note"] = note;
            }
            Ok(ctx.finish(ctx.report(&input, result).with_tolerance("epsilon", a.epsilon)))
        }
        Command::VerifyTheorem(v) => {
            let ctx = Ctx { echo, started, timing: v.timing };
            let result = if v.list {
                json!(CASES
                    .iter()
                    .map(|c| json!({ "id": c.id, "summary": c.summary }))
                    .collect::<Vec<_>>())
            } else {
                let id = v.case.as_deref().expect("clap requires --case");
                to_value(&verify_case(id, CaseParams { n: v.n, ell_max: v.ell_max })?)
            };
            Ok(ctx.finish(AnalysisReport::new(ctx.echo.clone(), None, result)))
        }
    }
}

fn unavailable() -> Error {
    Error::CertificationUnavailable(
        "no exact spectrum: the Laplacian spectrum (of the base, for total graphs) is not integral".into(),
    )
}

fn support(w: WithGraph<PairArgs>, echo: Vec<String>, started: Instant, env_tol: Option<&str>) -> CliResult<String> {
    let ctx = Ctx { echo, started, timing: w.common.timing };
    let tol = support_tolerance(w.common.tol, env_tol)?;
    let input = load_graph(&w.graph)?;
    let dec = decomposition(&input)?;
    let analysis = analyze_support(&dec, &w.args.pair, w.args.partner.as_ref(), tol)?;
    Ok(ctx.finish(ctx.report(&input, to_value(&analysis)).with_tolerance("support", tol)))
}

fn cospectral(w: WithGraph<PairArgs>, echo: Vec<String>, started: Instant, env_tol: Option<&str>) -> CliResult<String> {
    let ctx = Ctx { echo, started, timing: w.common.timing };
    let tol = support_tolerance(w.common.tol, env_tol)?;
    let input = load_graph(&w.graph)?;
    let partner = require_partner(&w.args)?;
    let dec = decomposition(&input)?;
    let values = |idx: &[usize]| idx.iter().map(|&j| dec.eigenvalues()[j]).collect::<Vec<_>>();
    let result = match strongly_cospectral(&dec, &w.args.pair, &partner, tol)? {
        Some(part) => json!({
            "pair": w.args.pair, "partner": partner, "strongly_cospectral": true,
            "plus_set": values(&part.plus), "minus_set": values(&part.minus),
        }),
        None => json!({ "pair": w.args.pair, "partner": partner, "strongly_cospectral": false }),
    };
    Ok(ctx.finish(ctx.report(&input, result).with_tolerance("support", tol)))
}

fn parse_sweep(raw: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = raw.split(':').collect();
    let bad = || usage(format!("--sweep expects start:end:steps, got {raw:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let end: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if steps < 2 || end < start {
        return Err(bad());
    }
    Ok((0..steps)
        .map(|k| start + (end - start) * k as f64 / (steps - 1) as f64)
        .collect())
}

fn amplitude(w: WithGraph<AmplitudeArgs>, echo: Vec<String>, started: Instant) -> CliResult<String> {
    let ctx = Ctx { echo, started, timing: w.common.timing };
    let input = load_graph(&w.graph)?;
    let a = &w.args;
    let partner = require_partner(&a.pairs)?;
    let pair = a.pairs.pair;
    let times = match (&a.sweep, a.time) {
        (Some(raw), _) => parse_sweep(raw)?,
        (None, Some(t)) => vec![t],
        (None, None) => return Err(usage("give --time t or --sweep start:end:steps")),
    };
    let amplitudes = if a.closed_form {
        let base = input
            .base
            .as_ref()
            .ok_or_else(|| usage("--closed-form needs --family total"))?;
        let r = base
            .regular_degree()
            .ok_or_else(|| Error::Unsupported("closed form needs a regular base".into()))?;
        let l = base.laplacian();
        let dec = eigendecompose_symmetric(&l, default_tolerance(&l))?;
        let bip = base.is_bipartite();
        let kernel = TotalWalk::new(&dec, bip.as_ref(), r)?.pair_kernel(&pair, &partner)?;
        times.iter().map(|&t| kernel.amplitude(t)).collect::<Vec<_>>()
    } else {
        let dec = decomposition(&input)?;
        times
            .iter()
            .map(|&t| pair_amplitude(&dec, &pair, &partner, t))
            .collect::<Result<Vec<_>>>()?
    };
    if a.sweep.is_some() {
        let points: Vec<(f64, f64)> = times.iter().zip(&amplitudes).map(|(&t, amp)| (t, amp.fidelity)).collect();
        return Ok(sweep_csv(&points));
    }
    let result = json!({
        "pair": pair, "partner": partner, "time": times[0],
        "amplitude": amplitudes[0], "closed_form": a.closed_form,
    });
    Ok(ctx.finish(ctx.report(&input, result)))
}
