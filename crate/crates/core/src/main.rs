use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hecke_workbench::report::{load, run, Command, Context, ExampleParams, Overrides, RunError, Source};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact Hecke algebra levels, crossed products and K_0 reports")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ring axioms, crossed-product identification, level coherence, Ξ and Maschke checks
    Verify(Opts),
    /// Per-level quotient sizes, cocycle summary, block decomposition and corner checks
    Levels(Opts),
    /// K_0 of every level and the split injections along the tower
    K0(Opts),
    /// K_0 of the covirtually cyclic group through the Wang sequence, per depth
    Wang(Opts),
    /// Brute-force cross-checks at small sizes
    Oracle(Opts),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["config", "example"]))]
struct Opts {
    /// TOML configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in example: plain-z4, omega-sign, galois-twist, zp, zp-twist, s3-invalid-omega
    #[arg(long)]
    example: Option<String>,
    /// Prime of the zp and zp-twist examples
    #[arg(long, default_value_t = 3)]
    prime: u64,
    /// Twisting unit of the zp-twist example
    #[arg(long, default_value_t = 2)]
    unit: i64,
    /// Coefficient field Q(ζ_m)
    #[arg(long = "field-conductor")]
    field_conductor: Option<u64>,
    /// Tower depth
    #[arg(long)]
    depth: Option<usize>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a markdown summary
    #[arg(long)]
    markdown: Option<PathBuf>,
    /// Worker threads
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory for cached block decompositions
    #[arg(long = "cache-dir")]
    cache_dir: Option<PathBuf>,
}

fn execute(command: Command, opts: &Opts) -> Result<bool, RunError> {
    if let Some(k) = opts.jobs {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
    let mut overrides = Overrides { conductor: opts.field_conductor, depth: None };
    let source = match (&opts.config, &opts.example) {
        (Some(p), _) => {
            overrides.depth = opts.depth;
            Source::Path(p.display().to_string())
        }
        (None, Some(name)) => {
            let mut params = ExampleParams { prime: opts.prime, unit: opts.unit, ..Default::default() };
            if let Some(d) = opts.depth {
                params.depth = d;
            }
            Source::Example(name.clone(), params)
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let (problem, key_text) = load(&source, &overrides)?;
    let ctx = Context::new(opts.cache_dir.as_deref(), &key_text);
    let report = run(command, &problem, &ctx)?;
    let write = |path: &PathBuf, text: &str| {
        std::fs::write(path, text).map_err(|e| RunError::Io { path: path.display().to_string(), reason: e.to_string() })
    };
    match &opts.out {
        Some(p) => write(p, &report.to_json())?,
        None => print!("{}", report.to_json()),
    }
    if let Some(p) = &opts.markdown {
        write(p, &report.to_markdown())?;
    }
    for c in &report.checks {
        eprintln!("{} {} [{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.check, c.scope, c.detail);
    }
    eprintln!("{} checks, {} failed, {} ms", report.checks.len(), report.failed().len(), report.timing.total_ms);
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match &cli.command {
        Cmd::Verify(o) => (Command::Verify, o),
        Cmd::Levels(o) => (Command::Levels, o),
        Cmd::K0(o) => (Command::K0, o),
        Cmd::Wang(o) => (Command::Wang, o),
        Cmd::Oracle(o) => (Command::Oracle, o),
    };
    match execute(command, opts) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
