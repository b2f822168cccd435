use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lfun_core::job::{self, Format, JobSpec};

/// Compute p-adic L-functions of F-modules from a TOML job file.
#[derive(Parser, Debug)]
#[command(name = "lfun", version, after_help = commands_help())]
struct Cli {
    /// Job file (TOML).
    #[arg(long)]
    job: PathBuf,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Override the job's point-enumeration budget.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the result here instead of stdout (overrides the job's output.path).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the job's output format.
    #[arg(long, value_enum)]
    format: Option<CliFormat>,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum CliFormat {
    Json,
    Csv,
}

fn commands_help() -> String {
    format!("Commands accepted in the job's `command` field:\n  {}", job::COMMANDS.join("\n  "))
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("lfun: malformed job: {msg}\n\n{}", commands_help());
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let src = match std::fs::read_to_string(&cli.job) {
        Ok(s) => s,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", cli.job.display())),
    };
    let mut spec = match JobSpec::parse(&src) {
        Ok(j) => j,
        Err(e) => return usage_error(&e),
    };
    if let Some(b) = cli.budget {
        spec.budget = b;
    }
    if let Some(f) = cli.format {
        spec.output.format = match f {
            CliFormat::Json => Format::Json,
            CliFormat::Csv => Format::Csv,
        };
    }
    if let Some(o) = &cli.out {
        spec.output.path = Some(o.display().to_string());
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global() {
        eprintln!("lfun: warning: {e}");
    }

    let out = job::run(&spec);
    let text = match (&out.csv, spec.output.format) {
        (Some(csv), Format::Csv) => csv.clone(),
        (None, Format::Csv) if out.exit_code == 0 => {
            eprintln!("lfun: command `{}` has no CSV form; writing JSON", spec.command);
            pretty(&out.document)
        }
        _ => pretty(&out.document),
    };
    match &spec.output.path {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("lfun: cannot write {p}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Some(e) = out.document.get("error") {
        eprintln!("lfun: {}", e.as_str().unwrap_or_default());
    }
    ExitCode::from(out.exit_code as u8)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}
