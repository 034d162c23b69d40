//! Command-line front end: code generation, single-shot decoding, simulation
//! campaigns, analytic curves, pseudocodeword tooling, symmetry checks and
//! LP-format dumps. All numerical work lives in the library; this binary only
//! parses, dispatches and serializes.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime error. Errors are emitted
//! as one JSON object per line on stderr.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ringlp::channel::{ChannelConfig, ChannelModel, ReceivedSymbol};
use ringlp::decoder::{DecodeConfig, OutcomeKind, PolytopeKind, PreparedDecoder};
use ringlp::pcw;
use ringlp::polytope;
use ringlp::ring::{self, CodeSpec};
use ringlp::sim::{self, CodewordPolicy, SimChannel, SimConfig};
use ringlp::solver::SolverConfig;

#[derive(Parser)]
#[command(name = "ringlp", version, about = "LP decoding of codes over Z_q", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a code specification as JSON
    Codegen(CodegenArgs),
    /// Decode one received word or cost vector
    Decode(DecodeArgs),
    /// Monte-Carlo error-rate campaign over an SNR grid
    Simulate(SimulateArgs),
    /// Analytic reference curves
    Analytic(AnalyticArgs),
    /// Pseudocodeword tooling
    Pcw(PcwArgs),
    /// Check the channel symmetry condition
    VerifySymmetry(VerifySymmetryArgs),
    /// Export a decoding polytope in LP interchange format
    LpDump(LpDumpArgs),
}

#[derive(Args)]
struct CodegenArgs {
    /// golay3 | ldpc-t150 | ldpc-q80
    #[arg(long, conflicts_with = "spec")]
    preset: Option<String>,
    /// JSON code file (rows or circulant shorthand)
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long)]
    channel: PathBuf,
    /// Received word (JSON; shape depends on the channel)
    #[arg(long, conflicts_with = "llr")]
    y: Option<PathBuf>,
    /// Cost vector (JSON, q-1 entries per symbol)
    #[arg(long)]
    llr: Option<PathBuf>,
    #[arg(long, default_value = "Q")]
    polytope: PolytopeKind,
    /// Solve in exact rational arithmetic; failures also dump the extracted
    /// pseudocodeword (polytope Q only)
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long)]
    channel: PathBuf,
    #[arg(long, default_value = "S")]
    polytope: PolytopeKind,
    /// Comma-separated E_s/N_0 grid in dB
    #[arg(long, value_delimiter = ',')]
    esn0_grid: Vec<f64>,
    #[arg(long)]
    trials: u64,
    /// Defaults to RINGLP_SEED, then 0
    #[arg(long)]
    seed: Option<u64>,
    /// zero | random | fixed:c1,c2,...
    #[arg(long, default_value = "zero")]
    policy: String,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    target_errors: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script for the CSV
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyticArgs {
    /// golay-hd | union-bound
    #[arg(long)]
    curve: String,
    #[arg(long, value_delimiter = ',')]
    esn0_grid: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PcwArgs {
    /// validate | to-cover | from-cover | cost
    action: String,
    #[arg(long)]
    code: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    /// Cost vector, required by `cost`
    #[arg(long)]
    llr: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifySymmetryArgs {
    #[arg(long)]
    channel: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct LpDumpArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, default_value = "Q")]
    polytope: PolytopeKind,
    /// Optional cost vector installed as the LP objective
    #[arg(long)]
    llr: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct CliError {
    code: &'static str,
    detail: String,
}

impl CliError {
    fn new(code: &'static str, detail: impl Into<String>) -> Self {
        CliError { code, detail: detail.into() }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError { code: "runtime", detail: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", json!({ "error": "usage", "detail": e.to_string() }));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.code, "detail": e.detail }));
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Codegen(args) => codegen(args),
        Command::Decode(args) => decode(args),
        Command::Simulate(args) => simulate(args),
        Command::Analytic(args) => analytic(args),
        Command::Pcw(args) => pcw_cmd(args),
        Command::VerifySymmetry(args) => verify_symmetry(args),
        Command::LpDump(args) => lp_dump(args),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let write = stdout.write_all(text.as_bytes()).and_then(|_| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    stdout.write_all(b"\n")
                }
            });
            if let Err(e) = write {
                // a closed pipe downstream is not our error
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return Ok(());
                }
                return Err(e.into());
            }
        }
    }
    Ok(())
}

fn default_seed(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var("RINGLP_SEED") {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::new("runtime", format!("RINGLP_SEED '{v}' is not an integer"))),
        Err(_) => Ok(0),
    }
}

fn load_code(path: &PathBuf) -> Result<CodeSpec, CliError> {
    let text = fs::read_to_string(path)?;
    let file: ring::CodeFile = serde_json::from_str(&text)?;
    Ok(ring::code_from_file(&file)?)
}

fn load_channel(path: &PathBuf, rate: f64) -> Result<(ChannelConfig, ChannelModel), CliError> {
    let text = fs::read_to_string(path)?;
    let cfg: ChannelConfig = serde_json::from_str(&text)?;
    let model = cfg.resolve(rate)?;
    Ok((cfg, model))
}

fn codegen(args: CodegenArgs) -> Result<(), CliError> {
    let code = match (&args.preset, &args.spec) {
        (Some(preset), None) => match preset.as_str() {
            "golay3" => ring::ternary_golay(),
            "ldpc-t150" => {
                ring::circulant_code(3, 150, 60, &[(0, 1), (51, 1), (80, 1), (8, 2), (30, 2), (90, 2)])?
            }
            "ldpc-q80" => {
                ring::circulant_code(4, 80, 32, &[(0, 1), (41, 1), (48, 1), (8, 3), (25, 3)])?
            }
            other => return Err(CliError::new("runtime", format!("unknown preset '{other}'"))),
        },
        (None, Some(spec)) => load_code(spec)?,
        _ => return Err(CliError::new("runtime", "give exactly one of --preset or --spec")),
    };
    let text = serde_json::to_string_pretty(&ring::code_to_file(&code))?;
    emit(&args.out, &text)
}

fn parse_received(
    model: &ChannelModel,
    value: &serde_json::Value,
) -> Result<Vec<ReceivedSymbol>, CliError> {
    let arr = value
        .as_array()
        .ok_or_else(|| CliError::new("runtime", "received word must be a JSON array"))?;
    arr.iter()
        .map(|v| match model {
            ChannelModel::QSymmetric { .. } | ChannelModel::Discrete { .. } => {
                let t = v
                    .as_u64()
                    .ok_or_else(|| CliError::new("runtime", "discrete output must be an integer"))?;
                Ok(ReceivedSymbol::Index(t as u32))
            }
            _ => {
                let point: Vec<f64> = v
                    .as_array()
                    .ok_or_else(|| CliError::new("runtime", "continuous output must be an array"))?
                    .iter()
                    .map(|x| x.as_f64().ok_or_else(|| CliError::new("runtime", "bad float")))
                    .collect::<Result<_, _>>()?;
                Ok(ReceivedSymbol::Point(point))
            }
        })
        .collect()
}

fn load_llr(path: &PathBuf, q: u32, n: usize) -> Result<ringlp::channel::LlrVector, CliError> {
    let text = fs::read_to_string(path)?;
    let rows: Vec<Vec<f64>> = serde_json::from_str(&text)?;
    if rows.len() != n || rows.iter().any(|r| r.len() != q as usize - 1) {
        return Err(CliError::new(
            "runtime",
            format!("llr file must hold {} rows of {} entries", n, q - 1),
        ));
    }
    let values = rows.into_iter().flatten().collect();
    Ok(ringlp::channel::LlrVector::from_values(q, n, values))
}

fn decode(args: DecodeArgs) -> Result<(), CliError> {
    let code = load_code(&args.code)?;
    let (_, model) = load_channel(&args.channel, code.design_rate())?;
    if model.q() != code.q() {
        return Err(CliError::new("runtime", "channel and code moduli differ"));
    }
    let llr = match (&args.y, &args.llr) {
        (Some(ypath), None) => {
            let text = fs::read_to_string(ypath)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            let y = parse_received(&model, &value)?;
            if y.len() != code.n() {
                return Err(CliError::new("runtime", "received word length mismatch"));
            }
            model.llr(&y)?
        }
        (None, Some(lpath)) => load_llr(lpath, code.q(), code.n())?,
        _ => return Err(CliError::new("runtime", "give exactly one of --y or --llr")),
    };
    let mut config = DecodeConfig::default();
    if args.exact {
        config.solver = SolverConfig::exact();
    }
    let mut prepared = PreparedDecoder::new(&code, args.polytope, config)?;
    let (outcome, solution) = prepared.decode_with_solution(&llr)?;
    let mut doc = match &outcome.kind {
        OutcomeKind::Codeword(c) => json!({
            "kind": "codeword",
            "c": c,
            "objective": outcome.objective,
        }),
        OutcomeKind::Failure { f } => json!({
            "kind": "failure",
            "f": f,
            "objective": outcome.objective,
        }),
    };
    if args.exact && outcome.is_failure() && args.polytope == PolytopeKind::Q {
        let exact = solution.exact.as_ref().expect("exact mode");
        let extracted = pcw::from_exact_solution(&code, prepared.lp(), exact)?;
        doc["pcw"] = serde_json::to_value(pcw::pcw_to_file(&extracted))?;
    }
    emit(&args.out, &serde_json::to_string_pretty(&doc)?)
}

fn parse_policy(text: &str) -> Result<CodewordPolicy, CliError> {
    match text {
        "zero" => Ok(CodewordPolicy::Zero),
        "random" => Ok(CodewordPolicy::RandomPerTrial),
        other => {
            if let Some(rest) = other.strip_prefix("fixed:") {
                let word: Result<Vec<u32>, _> = rest.split(',').map(str::parse).collect();
                word.map(CodewordPolicy::Fixed)
                    .map_err(|_| CliError::new("runtime", "bad fixed codeword"))
            } else {
                Err(CliError::new("runtime", format!("unknown policy '{other}'")))
            }
        }
    }
}

fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    let code = load_code(&args.code)?;
    let text = fs::read_to_string(&args.channel)?;
    let cfg: ChannelConfig = serde_json::from_str(&text)?;
    if cfg.q != code.q() {
        return Err(CliError::new("runtime", "channel and code moduli differ"));
    }
    let channel = match cfg.kind.as_str() {
        "psk-awgn" => SimChannel::PskAwgn,
        "orthogonal-awgn" => SimChannel::OrthogonalAwgn,
        "qsc" => SimChannel::QSymmetric {
            p: cfg.p.ok_or_else(|| CliError::new("runtime", "qsc needs p"))?,
        },
        other => return Err(CliError::new("runtime", format!("unknown channel type '{other}'"))),
    };
    if args.esn0_grid.is_empty() {
        return Err(CliError::new("runtime", "empty --esn0-grid"));
    }
    let mut config = SimConfig::new(
        args.polytope,
        args.esn0_grid.clone(),
        args.trials,
        default_seed(args.seed)?,
    );
    config.policy = parse_policy(&args.policy)?;
    config.jobs = args.jobs;
    config.target_errors = args.target_errors;
    let result = sim::run_mc(&code, channel, &config)?;
    let mut buf = Vec::new();
    sim::emit_csv(&result, &mut buf)?;
    let text = String::from_utf8(buf).expect("csv is utf8");
    if let Some(gp) = &args.gnuplot {
        let csv_name = args
            .out
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "result.csv".into());
        fs::write(gp, sim::gnuplot_script(&csv_name, "result.png", "LP decoding"))?;
    }
    emit(&args.out, &text)
}

fn analytic(args: AnalyticArgs) -> Result<(), CliError> {
    if args.esn0_grid.is_empty() {
        return Err(CliError::new("runtime", "empty --esn0-grid"));
    }
    let points: Vec<(f64, f64)> = match args.curve.as_str() {
        "golay-hd" => args
            .esn0_grid
            .iter()
            .map(|&db| (db, sim::golay_hard_decision_wer(10f64.powf(db / 10.0))))
            .collect(),
        "union-bound" => {
            let golay = ring::ternary_golay();
            let (_, wenum) = golay.enumerate_codewords(ring::DEFAULT_GLOBAL_ENUM_CAP)?;
            args.esn0_grid
                .iter()
                .map(|&db| {
                    (db, sim::union_bound_wer(&wenum, golay.design_rate(), 10f64.powf(db / 10.0)))
                })
                .collect()
        }
        other => return Err(CliError::new("runtime", format!("unknown curve '{other}'"))),
    };
    let mut buf = Vec::new();
    sim::emit_curve_csv(&args.curve, &points, &mut buf)?;
    emit(&args.out, &String::from_utf8(buf).expect("csv is utf8"))
}

fn pcw_cmd(args: PcwArgs) -> Result<(), CliError> {
    let code = load_code(&args.code)?;
    let text = fs::read_to_string(&args.input)?;
    match args.action.as_str() {
        "validate" => {
            let file: pcw::PcwFile = serde_json::from_str(&text)?;
            let doc = match pcw::pcw_from_file(&code, &file) {
                Ok(_) => json!({ "valid": true, "violations": [] }),
                Err(e) => json!({ "valid": false, "violations": [e.to_string()] }),
            };
            emit(&args.out, &serde_json::to_string_pretty(&doc)?)
        }
        "to-cover" => {
            let file: pcw::PcwFile = serde_json::from_str(&text)?;
            let lp_pcw = pcw::pcw_from_file(&code, &file)?;
            let cover = pcw::lp_to_cover(&code, &lp_pcw)?;
            emit(&args.out, &serde_json::to_string_pretty(&pcw::cover_to_file(&cover))?)
        }
        "from-cover" => {
            let file: pcw::CoverFile = serde_json::from_str(&text)?;
            let cover = pcw::cover_from_file(&code, &file)?;
            let lp_pcw = pcw::cover_to_lp(&code, &cover)?;
            emit(&args.out, &serde_json::to_string_pretty(&pcw::pcw_to_file(&lp_pcw))?)
        }
        "cost" => {
            let file: pcw::PcwFile = serde_json::from_str(&text)?;
            let lp_pcw = pcw::pcw_from_file(&code, &file)?;
            let llr_path = args
                .llr
                .as_ref()
                .ok_or_else(|| CliError::new("runtime", "cost needs --llr"))?;
            let llr = load_llr(llr_path, code.q(), code.n())?;
            let doc = json!({ "cost": pcw::pcw_cost(&llr, &lp_pcw) });
            emit(&args.out, &serde_json::to_string_pretty(&doc)?)
        }
        other => Err(CliError::new("runtime", format!("unknown pcw action '{other}'"))),
    }
}

fn verify_symmetry(args: VerifySymmetryArgs) -> Result<(), CliError> {
    let (_, model) = load_channel(&args.channel, 1.0)?;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(default_seed(args.seed)?);
    let report = model.verify_symmetry(args.samples, args.tol, &mut rng);
    let doc = json!({ "holds": report.holds, "max_violation": report.max_violation });
    emit(&None, &serde_json::to_string_pretty(&doc)?)
}

fn lp_dump(args: LpDumpArgs) -> Result<(), CliError> {
    let code = load_code(&args.code)?;
    let cap = ring::DEFAULT_LOCAL_ENUM_CAP;
    let mut lp = match args.polytope {
        PolytopeKind::Q => polytope::build_q(&code, cap)?,
        PolytopeKind::U => polytope::build_u(&code)?,
        PolytopeKind::S => polytope::build_s(&code, cap)?,
    };
    if let Some(lpath) = &args.llr {
        let llr = load_llr(lpath, code.q(), code.n())?;
        let (obj, _) = polytope::objective_from_llr(&llr, lp.registry(), polytope::DEFAULT_INF_CLAMP);
        lp.set_objective(obj);
    }
    emit(&args.out, &lp.to_lp_format())
}
