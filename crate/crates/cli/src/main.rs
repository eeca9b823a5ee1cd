mod config;
mod records;
mod suites;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use ciw_core::decider::{decide, Decision, Evidence, Step, Verdict};
use ciw_core::hilbert::{hf_ci, socle_degree, DegreeTuple};
use ciw_core::linalg::DEFAULT_PRIME;
use ciw_core::oracle::{ci_witness, DEFAULT_RESOURCE_CAP, DEFAULT_SEED, DEFAULT_TRIALS};
use ciw_core::CIQuery;

use config::{OutputMode, RunConfig};
use records::Record;
use suites::Suite;

const EXIT_EXISTS: u8 = 0;
const EXIT_NOT_EXISTS: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_RESOURCE: u8 = 70;

/// Does the generic surface of degree d in P^3 contain a zero-dimensional
/// complete intersection of type (a,b,c)?
#[derive(Parser, Debug)]
#[command(name = "ciw", version)]
struct Cli {
    /// Characteristic for the rank oracle
    #[arg(long, env = "CIW_PRIME", default_value_t = DEFAULT_PRIME, global = true)]
    prime: u64,
    #[arg(long, env = "CIW_SEED", default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Random specializations per oracle run
    #[arg(long, default_value_t = DEFAULT_TRIALS, global = true)]
    trials: u32,
    /// Let `decide` fall back to the rank oracle
    #[arg(long, overrides_with = "no_oracle", global = true)]
    oracle: bool,
    #[arg(long, overrides_with = "oracle", global = true)]
    no_oracle: bool,
    /// Largest matrix (rows * columns) the oracle may assemble
    #[arg(long, env = "CIW_CAP", default_value_t = DEFAULT_RESOURCE_CAP, global = true)]
    cap: u64,
    /// Print key=value records instead of prose
    #[arg(long, global = true)]
    records: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide one query; exit 0 = Exists, 1 = NotExists, 2 = Unknown
    Decide { a: u64, b: u64, c: u64, d: u64 },
    /// Hilbert function of R modulo generic forms of the given degrees
    Hilbert {
        /// Comma-separated generator degrees, at most four
        #[arg(value_delimiter = ',', num_args = 1.., required = true)]
        degrees: Vec<u64>,
        #[arg(long, allow_negative_numbers = true)]
        at: i64,
    },
    /// Run the rank oracle on one query
    Witness { a: u64, b: u64, c: u64, d: u64 },
    /// Run a reproduction battery or a grid sweep
    Reproduce {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest surface degree for `sweep`
        #[arg(long)]
        bound: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Resource(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        let (msg, code) = match self {
            Failure::Usage(m) => (m, EXIT_USAGE),
            Failure::Resource(m) => (m, EXIT_RESOURCE),
        };
        eprintln!("ciw: {msg}");
        ExitCode::from(code)
    }
}

fn from_core(e: ciw_core::Error) -> Failure {
    if e.is_resource() {
        Failure::Resource(e.to_string())
    } else {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let output = if cli.records { OutputMode::Records } else { OutputMode::Human };
    let cfg = match RunConfig::new(cli.prime, cli.seed, cli.trials, cli.oracle && !cli.no_oracle, cli.cap, output) {
        Ok(cfg) => cfg,
        Err(msg) => return Failure::Usage(msg).exit(),
    };
    let result = match cli.command {
        Command::Decide { a, b, c, d } => cmd_decide([a, b, c, d], &cfg),
        Command::Hilbert { degrees, at } => cmd_hilbert(degrees, at, &cfg),
        Command::Witness { a, b, c, d } => cmd_witness([a, b, c, d], &cfg),
        Command::Reproduce { suite, bound } => cmd_reproduce(suite, bound, &cfg),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => f.exit(),
    }
}

fn build_query([a, b, c, d]: [u64; 4]) -> Result<CIQuery, Failure> {
    CIQuery::new(a, b, c, d).map_err(from_core)
}

fn emit(lines: impl IntoIterator<Item = String>) {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

fn describe_step(i: usize, step: &Step) -> Vec<String> {
    let detail = match &step.evidence {
        Evidence::None => String::new(),
        Evidence::Switched { from } => format!(": from {from}"),
        Evidence::Margin(m) => format!(": margin {m}"),
        Evidence::Witness(w) => format!(
            ": {} over GF({}) seed {} with values [{}]",
            w.verdict,
            w.prime,
            w.seed,
            suites::join_values(w).replace(':', ", ")
        ),
        Evidence::Capped { requested, cap } => {
            format!(": not run, {requested} matrix entries exceed the cap of {cap}")
        }
        Evidence::Propagated { from } => format!(": from {from}"),
    };
    let outcome = match step.verdict() {
        Some(v) => format!(" => {v}"),
        None => String::new(),
    };
    vec![
        format!("  {}. {} [{}] on {}{detail}{outcome}", i + 1, step.rule, step.rule.source(), step.query),
        format!("     {}", step.rule.anchor()),
    ]
}

fn human_decision(decision: &Decision, ms: u128) -> Vec<String> {
    let mut lines = vec![
        format!("query:   {:?}", decision.query),
        format!("verdict: {}", decision.verdict),
        "certificate:".to_string(),
    ];
    for (i, step) in decision.certificate.iter().enumerate() {
        lines.extend(describe_step(i, step));
    }
    if let Some(w) = &decision.witness {
        lines.push(format!(
            "witness: {:?} certified over GF({}) with seed {}; a vanishing specialization bounds the generic Hilbert value by semicontinuity",
            w.query, w.prime, w.seed
        ));
    }
    if decision.verdict == Verdict::Unknown && decision.witness_reports().next().is_some() {
        lines.push("note: oracle runs without a zero are evidence only, never a proof of non-existence".into());
    }
    lines.push(format!("elapsed: {ms} ms"));
    lines
}

fn cmd_decide(abcd: [u64; 4], cfg: &RunConfig) -> Result<u8, Failure> {
    let q = build_query(abcd)?;
    let start = Instant::now();
    let decision = decide(&q, &cfg.decide_options()).map_err(from_core)?;
    let ms = start.elapsed().as_millis();
    if cfg.records() {
        emit([suites::decision_record(&decision, ms).to_string()]);
    } else {
        emit(human_decision(&decision, ms));
    }
    Ok(match decision.verdict {
        Verdict::Exists => EXIT_EXISTS,
        Verdict::NotExists => EXIT_NOT_EXISTS,
        Verdict::Unknown => EXIT_UNKNOWN,
    })
}

fn cmd_hilbert(degrees: Vec<u64>, at: i64, cfg: &RunConfig) -> Result<u8, Failure> {
    let tuple = DegreeTuple::new(degrees).map_err(from_core)?;
    let value = hf_ci(&tuple, at).map_err(from_core)?;
    let names: Vec<String> = tuple.degrees().iter().map(u64::to_string).collect();
    let label = names.join(",");
    let socle = (tuple.len() == 4).then(|| socle_degree(&tuple).map_err(from_core)).transpose()?;
    if cfg.records() {
        emit([Record::new().set("query", format!("{label}@{at}")).set("hf", value).to_string()]);
        return Ok(0);
    }
    let mut lines = vec![format!("H({label}; {at}) = {value}")];
    match socle {
        Some(s) => {
            let partner = s - at;
            let partner_value = hf_ci(&tuple, partner).map_err(from_core)?;
            lines.push(format!("socle degree: {s}"));
            lines.push(format!("symmetric partner: degree {partner}, H = {partner_value}"));
        }
        None => lines.push("socle degree: none (fewer than four generators, the quotient is not Artinian)".into()),
    }
    emit(lines);
    Ok(0)
}

fn cmd_witness(abcd: [u64; 4], cfg: &RunConfig) -> Result<u8, Failure> {
    let q = build_query(abcd)?;
    let start = Instant::now();
    let report = ci_witness(&q, &cfg.oracle()).map_err(from_core)?;
    let ms = start.elapsed().as_millis();
    if cfg.records() {
        emit([suites::witness_record(&report).set("elapsed_ms", ms).to_string()]);
    } else {
        let mut lines = vec![
            format!("query:   {q:?}"),
            format!("forms:   degrees {:?}", q.generator_degrees().map_err(from_core)?),
            format!("field:   GF({}), seed {}, up to {} trials", report.prime, report.seed, report.trials),
        ];
        for o in &report.outcomes {
            lines.push(format!("  trial {} over GF({}): H(S, {}) = {}", o.trial, o.prime, q.d(), o.hilbert_value));
        }
        lines.push(format!("verdict: {}", report.verdict));
        if report.certified() {
            lines.push("a specialization over GF(p) with vanishing quotient certifies the generic complex case".into());
        } else {
            lines.push("no vanishing specialization found; this is evidence, not a proof of non-existence".into());
        }
        lines.push(format!("elapsed: {ms} ms"));
        emit(lines);
    }
    Ok(if report.certified() { EXIT_EXISTS } else { EXIT_UNKNOWN })
}

fn cmd_reproduce(suite: Suite, bound: Option<u64>, cfg: &RunConfig) -> Result<u8, Failure> {
    let outcome = suites::run(suite, bound, cfg).map_err(Failure::Usage)?;
    let mut lines: Vec<String> = outcome
        .cells
        .iter()
        .map(|c| if cfg.records() { c.record.to_string() } else { c.line.clone() })
        .collect();
    lines.extend(outcome.notes.iter().map(|n| {
        if cfg.records() {
            format!("# note: {n}")
        } else {
            format!("note: {n}")
        }
    }));
    if !cfg.records() && suite != Suite::Sweep {
        let passed = outcome.cells.iter().filter(|c| c.passed).count();
        lines.push(format!("{passed}/{} cells passed", outcome.cells.len()));
    }
    emit(lines);
    Ok(if !outcome.passed() && outcome.capped() && outcome.cells.iter().all(|c| c.passed || c.capped) {
        EXIT_RESOURCE
    } else if outcome.passed() {
        0
    } else {
        1
    })
}
