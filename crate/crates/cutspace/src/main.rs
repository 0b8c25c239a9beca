use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cutspace::dsl::{self, ConventionSetting};
use cutspace::report::Report;
use cutspace::{checks, gallery, suites};
use cutspace_core::enumerate::{poset_rows, MAX_ENUMERATED};
use cutspace_core::FinitePoset;

#[derive(Parser)]
#[command(name = "cutspace", version, about = "Decide cut-based way-below, continuity and convergence predicates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Conv {
    Standard,
    Empty,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Run the check directives of a description file.
    Check {
        file: PathBuf,
        /// Overrides the document's convention directive.
        #[arg(long, value_enum)]
        convention: Option<Conv>,
        #[arg(long)]
        json: bool,
        /// Report every duration as zero.
        #[arg(long)]
        no_timings: bool,
    },
    /// Run an invariant suite.
    Suite {
        name: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Random instances above max-n.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_timings: bool,
    },
    /// Run one of the worked examples: ex-omega, ex-cofinite, ex-topz.
    Example {
        name: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_timings: bool,
    },
    /// List the labeled posets on K points, one per line as cover pairs.
    Enumerate {
        #[arg(long = "n")]
        n: usize,
        /// Print counts instead of the posets.
        #[arg(long)]
        stats: bool,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("cutspace: {msg}");
    ExitCode::from(2)
}

fn emit(report: Report, json: bool, no_timings: bool) -> ExitCode {
    let report = if no_timings { report.without_timings() } else { report };
    if json {
        println!("{}", report.to_json_pretty());
    } else {
        print!("{}", report.to_text());
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn check(file: PathBuf, convention: Option<Conv>, json: bool, no_timings: bool) -> ExitCode {
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => return usage(format!("{}: {e}", file.display())),
    };
    let doc = match dsl::parse(&text).and_then(|d| dsl::resolve(&d)) {
        Ok(d) => d,
        Err(e) => return usage(format!("{}:{e}", file.display())),
    };
    let mut doc = doc;
    if let Some(c) = convention {
        doc.convention = match c {
            Conv::Standard => ConventionSetting::Standard,
            Conv::Empty => ConventionSetting::Empty,
            Conv::Both => ConventionSetting::Both,
        };
    }
    emit(checks::run_document(&doc, &file.display().to_string()), json, no_timings)
}

fn enumerate(n: usize, stats: bool) -> ExitCode {
    let rows = match poset_rows(n) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if stats {
        println!("n {n}");
        println!("count {}", rows.len());
        match suites::oracle_count(n) {
            Some(o) => println!("oracle {o}"),
            None => println!("oracle -"),
        }
        println!("reference {}", suites::REFERENCE_COUNTS[n - 1]);
        // Posets by number of strict comparabilities.
        let mut by_size = vec![0usize; n * (n - 1) / 2 + 1];
        for r in &rows {
            let strict: u32 = r.iter().map(|m| m.count_ones() - 1).sum();
            by_size[strict as usize] += 1;
        }
        for (k, c) in by_size.iter().enumerate() {
            println!("comparabilities {k} {c}");
        }
        return ExitCode::SUCCESS;
    }
    for r in rows {
        let p = FinitePoset::with_default_names(r).expect("enumerated rows are posets");
        let covers: Vec<String> = p.covers().iter().map(|&(a, b)| format!("{}<{}", p.name(a), p.name(b))).collect();
        println!("{}", covers.join(" "));
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Check { file, convention, json, no_timings } => check(file, convention, json, no_timings),
        Command::Suite { name, max_n, seed, samples, json, no_timings } => {
            let mut params = match suites::SuiteParams::defaults(&name) {
                Ok(p) => p,
                Err(e) => return usage(e),
            };
            if let Some(k) = max_n {
                if k == 0 || k > MAX_ENUMERATED {
                    return usage(suites::SuiteError::OutOfRange(k));
                }
                params.max_n = k;
            }
            params.seed = seed.unwrap_or(params.seed);
            params.samples = samples.unwrap_or(params.samples);
            match suites::run_suite(&name, params) {
                Ok(r) => emit(r, json, no_timings),
                Err(e) => usage(e),
            }
        }
        Command::Example { name, json, no_timings } => match gallery::run(&name) {
            Some(r) => emit(r, json, no_timings),
            None => usage(format!("unknown example `{name}`; expected one of {}", gallery::EXAMPLES.join(", "))),
        },
        Command::Enumerate { n, stats } => enumerate(n, stats),
    }
}
