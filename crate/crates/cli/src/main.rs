//! `skolem`: construct, verify and search for strong Skolem starters.
//!
//! Exit codes: 0 success, 1 internal verification failure, 2 usage or
//! precondition error, 3 input fails a property, 4 search ceiling exceeded.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use skolem_core::construction::{half_set_certificate, strong_skolem_params};
use skolem_core::search::{search_streaming, DEFAULT_CEILING};
use skolem_core::{
    build_qr_table, build_s_beta, enumerate_theorem_starters, full_report,
    search_skolem_starters, BetaChoice, ConstructionError, ConstructionParams, Modulus, PairSet,
    SearchConfig, SearchError, SearchMode, SearchResult, VerificationReport,
};

/// Version tag of the JSON envelope.
const SCHEMA: &str = "skolem-starters/1";

/// Environment variable overriding the default search ceiling.
const CEILING_ENV: &str = "SKOLEM_SEARCH_CEILING";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Exit {
    Ok = 0,
    Internal = 1,
    Usage = 2,
    PropertyFailure = 3,
    Ceiling = 4,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> ExitCode {
        ExitCode::from(e as u8)
    }
}

#[derive(Parser)]
#[command(name = "skolem", version, about = "Strong Skolem starters for Z_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build S_β over Z_q and verify it.
    Generate(GenerateArgs),
    /// Verify a pair set read from a file or stdin.
    Verify(VerifyArgs),
    /// Exhaustively search for (strong) Skolem starters of Z_n.
    Search(SearchArgs),
    /// Tabulate both strong Skolem starters for every prime q ≡ 3 (mod 8) up to a bound.
    Tabulate(TabulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
enum BetaArg {
    Choice(BetaChoice),
    Value(u64),
}

impl FromStr for BetaArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(choice) = s.parse::<BetaChoice>() {
            return Ok(BetaArg::Choice(choice));
        }
        s.parse::<u64>()
            .map(BetaArg::Value)
            .map_err(|_| format!("expected `2`, `half` or an integer, found {s:?}"))
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    q: u64,
    /// `2` or `half` for the strong Skolem construction (q ≡ 3 mod 8);
    /// any other value builds the plain strong starter S_β (q ≡ 3 mod 4).
    #[arg(long)]
    beta: BetaArg,
    /// Generator of QR(q); defaults to the smallest one.
    #[arg(long)]
    alpha: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input file; stdin when omitted or `-`.
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
#[group(id = "mode", multiple = false)]
struct ModeFlags {
    /// Exact count only (default).
    #[arg(long, group = "mode")]
    count: bool,
    /// Exact count and every witness (up to --limit).
    #[arg(long, group = "mode")]
    enumerate: bool,
    /// Stop after the first witness (or --limit witnesses).
    #[arg(long, group = "mode")]
    first: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: u64,
    /// Only strong Skolem starters.
    #[arg(long)]
    strong: bool,
    #[command(flatten)]
    mode: ModeFlags,
    #[arg(long)]
    limit: Option<usize>,
    /// Run past the tractability ceiling.
    #[arg(long)]
    override_ceiling: bool,
    /// Split the search across threads; witnesses are printed at the end.
    #[arg(long)]
    parallel: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TabulateArgs {
    #[arg(long)]
    q_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match cli.command {
        Command::Generate(args) => cmd_generate(&args, &mut out),
        Command::Verify(args) => cmd_verify(&args, &mut out),
        Command::Search(args) => cmd_search(&args, &mut out),
        Command::Tabulate(args) => cmd_tabulate(&args, &mut out),
    };
    match code {
        Ok(code) => code.into(),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Exit::Ok.into(),
        Err(e) => {
            eprintln!("error: {e}");
            Exit::Internal.into()
        }
    }
}

fn fail(code: Exit, msg: impl std::fmt::Display) -> io::Result<Exit> {
    eprintln!("error: {msg}");
    Ok(code)
}

fn envelope(command: &str, parameters: Value, results: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "parameters": parameters,
        "results": results,
    })
}

fn write_json(out: &mut impl Write, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Report as `#` comment lines, so the surrounding text still parses as a
/// pair set.
fn write_report(out: &mut impl Write, r: &VerificationReport) -> io::Result<()> {
    writeln!(out, "# starter: {}", yes_no(r.is_starter))?;
    writeln!(out, "# strong: {}", yes_no(r.is_strong))?;
    writeln!(out, "# skolem: {}", yes_no(r.is_skolem))?;
    writeln!(out, "# has_zero_sum: {}", yes_no(r.has_zero_sum))?;
    if let Some(ord) = &r.skolem_ordering {
        let pairs: Vec<String> = ord.iter().map(ToString::to_string).collect();
        writeln!(out, "# skolem ordering: {}", pairs.join(" "))?;
    }
    for w in &r.witnesses {
        writeln!(out, "# witness: {w}")?;
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs, out: &mut impl Write) -> io::Result<Exit> {
    let params = match args.beta {
        BetaArg::Choice(choice) => strong_skolem_params(args.q, choice, args.alpha),
        BetaArg::Value(beta) => explicit_params(args.q, args.alpha, beta),
    };
    let params = match params {
        Ok(p) => p,
        Err(e) => return fail(Exit::Usage, e),
    };
    let starter = build_s_beta(&params);
    let report = full_report(&starter);
    let skolem_mode = matches!(args.beta, BetaArg::Choice(_));
    let verified = report.is_starter && report.is_strong && (!skolem_mode || report.is_skolem);
    let certificate = half_set_certificate(&starter);

    let (q, alpha, beta) = (params.q().get(), params.alpha().value(), params.beta().value());
    match args.format {
        Format::Json => {
            let parameters = json!({
                "q": q, "alpha": alpha, "beta": beta, "beta_arg": args.beta,
                "mode": if skolem_mode { "strong_skolem" } else { "strong" },
            });
            let results = json!({
                "starter": starter, "report": report, "certificate": certificate,
            });
            write_json(out, &envelope("generate", parameters, results))?;
        }
        Format::Text => {
            writeln!(out, "# generate q={q} alpha={alpha} beta={beta} ({})", args_beta_label(args.beta))?;
            write!(out, "{starter}")?;
            write_report(out, &report)?;
            writeln!(out, "# half-set certificate: {}", yes_no(certificate.holds()))?;
        }
    }
    if verified {
        Ok(Exit::Ok)
    } else {
        fail(Exit::Internal, "constructed starter failed verification")
    }
}

fn args_beta_label(beta: BetaArg) -> String {
    match beta {
        BetaArg::Choice(c) => c.to_string(),
        BetaArg::Value(v) => format!("explicit {v}"),
    }
}

fn explicit_params(q: u64, alpha: Option<u64>, beta: u64) -> Result<ConstructionParams, ConstructionError> {
    let alpha = match alpha {
        Some(a) => a,
        None => {
            // Let the constructor report the precise problem with q.
            let m = Modulus::prime(q)?;
            build_qr_table(m)?.smallest_generator().value()
        }
    };
    ConstructionParams::new(q, alpha, beta)
}

fn cmd_verify(args: &VerifyArgs, out: &mut impl Write) -> io::Result<Exit> {
    let mut input = String::new();
    let read = match args.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map(|s| input = s),
        _ => io::stdin().read_to_string(&mut input).map(|_| ()),
    };
    if let Err(e) = read {
        return fail(Exit::Usage, format!("cannot read input: {e}"));
    }
    let starter = match PairSet::parse(&input) {
        Ok(s) => s,
        Err(e) => return fail(Exit::Usage, format!("cannot parse pair set: {e}")),
    };
    let report = full_report(&starter);
    match args.format {
        Format::Json => {
            let parameters = json!({ "input": args.input.as_ref().map(|p| p.display().to_string()) });
            let results = json!({ "starter": starter, "report": report });
            write_json(out, &envelope("verify", parameters, results))?;
        }
        Format::Text => {
            write!(out, "{starter}")?;
            write_report(out, &report)?;
        }
    }
    Ok(if report.is_strong_skolem() {
        Exit::Ok
    } else {
        Exit::PropertyFailure
    })
}

fn ceiling_from_env() -> Result<u64, String> {
    match std::env::var(CEILING_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{CEILING_ENV} must be a non-negative integer, found {v:?}")),
        Err(_) => Ok(DEFAULT_CEILING),
    }
}

fn search_exit(e: &SearchError) -> Exit {
    match e {
        SearchError::CeilingExceeded { .. } => Exit::Ceiling,
        SearchError::InvalidWitness { .. } | SearchError::ConstructionMissing { .. } => Exit::Internal,
        _ => Exit::Usage,
    }
}

fn search_summary(r: &SearchResult) -> Value {
    json!({
        "n": r.n,
        "require_strong": r.require_strong,
        "count": r.count,
        "nodes_explored": r.nodes_explored,
        "wall_time_ms": r.wall_time.as_secs_f64() * 1e3,
    })
}

fn cmd_search(args: &SearchArgs, out: &mut impl Write) -> io::Result<Exit> {
    let mode = if args.mode.enumerate {
        SearchMode::EnumerateAll
    } else if args.mode.first {
        SearchMode::FirstWitness
    } else {
        SearchMode::CountAll
    };
    let ceiling = match ceiling_from_env() {
        Ok(c) => c,
        Err(e) => return fail(Exit::Usage, e),
    };
    let cfg = match SearchConfig::new(args.n, mode) {
        Ok(cfg) => cfg
            .strong(args.strong)
            .limit(args.limit)
            .ceiling(ceiling)
            .override_ceiling(args.override_ceiling)
            .parallel(args.parallel),
        Err(e) => return fail(search_exit(&e), e),
    };
    if let Err(e) = cfg.validate() {
        return fail(search_exit(&e), e);
    }

    let streaming = args.format == Format::Text && !args.parallel;
    let mut io_error = None;
    let result = if streaming {
        search_streaming(&cfg, |w| {
            if io_error.is_none() {
                if let Err(e) = writeln!(out, "{w}").and_then(|_| out.flush()) {
                    io_error = Some(e);
                }
            }
        })
    } else {
        search_skolem_starters(&cfg)
    };
    if let Some(e) = io_error {
        return Err(e);
    }
    let result = match result {
        Ok(r) => r,
        Err(e) => return fail(search_exit(&e), e),
    };

    match args.format {
        Format::Json => {
            let parameters = serde_json::to_value(&cfg).expect("config serializes");
            let mut results = search_summary(&result);
            results["witnesses"] = serde_json::to_value(&result.witnesses).expect("witnesses serialize");
            write_json(out, &envelope("search", parameters, results))?;
        }
        Format::Text => {
            if !streaming {
                for w in &result.witnesses {
                    writeln!(out, "{w}")?;
                }
            }
            writeln!(
                out,
                "# n={} strong={} mode={} count={} nodes={} time={:.3}ms",
                result.n,
                result.require_strong,
                match mode {
                    SearchMode::CountAll => "count",
                    SearchMode::EnumerateAll => "enumerate",
                    SearchMode::FirstWitness => "first",
                },
                result.count,
                result.nodes_explored,
                result.wall_time.as_secs_f64() * 1e3,
            )?;
        }
    }
    Ok(Exit::Ok)
}

fn cmd_tabulate(args: &TabulateArgs, out: &mut impl Write) -> io::Result<Exit> {
    let rows = enumerate_theorem_starters(args.q_max);
    let mut all_ok = true;
    let mut json_rows = Vec::new();
    if args.format == Format::Text {
        writeln!(out, "# {:>6} {:>5} {:>6} {:>6} {:>7} {:>6} {:>9}  pairs", "q", "beta", "alpha", "starter", "strong", "skolem", "half-set")?;
    }
    for row in &rows {
        let report = full_report(&row.starter);
        let cert = half_set_certificate(&row.starter);
        let ok = report.is_strong_skolem() && cert.holds();
        all_ok &= ok;
        match args.format {
            Format::Json => json_rows.push(json!({
                "q": row.q,
                "beta_choice": row.beta_choice,
                "beta": row.beta,
                "alpha": row.alpha,
                "starter": row.starter,
                "is_starter": report.is_starter,
                "is_strong": report.is_strong,
                "is_skolem": report.is_skolem,
                "half_set_certificate": cert.holds(),
            })),
            Format::Text => {
                let pairs: Vec<String> = row.starter.pairs().iter().map(ToString::to_string).collect();
                writeln!(
                    out,
                    "  {:>6} {:>5} {:>6} {:>7} {:>6} {:>6} {:>9}  {}",
                    row.q,
                    row.beta,
                    row.alpha,
                    yes_no(report.is_starter),
                    yes_no(report.is_strong),
                    yes_no(report.is_skolem),
                    if cert.holds() { format!("1..{}", (row.q - 1) / 2) } else { "FAIL".into() },
                    pairs.join(" "),
                )?;
            }
        }
    }
    match args.format {
        Format::Json => {
            let results = json!({ "rows": json_rows });
            write_json(out, &envelope("tabulate", json!({ "q_max": args.q_max }), results))?;
        }
        Format::Text => writeln!(out, "# {} rows", rows.len())?,
    }
    if all_ok {
        Ok(Exit::Ok)
    } else {
        fail(Exit::Internal, "a constructed starter failed verification")
    }
}
