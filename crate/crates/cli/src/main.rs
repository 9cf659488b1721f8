use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use diffalg::par::Execution;
use diffalg_cli::{corpus, parse_scenario, run_scenario, Options, Report};

#[derive(Parser)]
#[command(name = "diffalg", version, about = "Run derivation and homological-algebra scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file.
    Run {
        file: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run the shipped golden corpus.
    Corpus {
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Args)]
struct Flags {
    /// Degree bound for graded computations over non-artinian rings.
    #[arg(long)]
    bound: Option<i64>,
    /// Number of Ext modules checked by reflexivity and G-dimension tasks.
    #[arg(long)]
    ext_bound: Option<usize>,
    /// Largest Frobenius power n in acyclicity reports.
    #[arg(long)]
    frobenius_max: Option<u32>,
    /// Print only the machine-readable section.
    #[arg(long)]
    machine: bool,
    /// Run everything on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Flags {
    fn options(&self) -> Options {
        Options {
            bound: self.bound,
            ext_bound: self.ext_bound,
            frobenius_max: self.frobenius_max,
            exec: if self.sequential { Execution::Sequential } else { Execution::default() },
        }
    }
}

fn print(report: &Report, machine: bool) {
    if machine {
        print!("{}", report.machine());
    } else {
        print!("{}", report.human());
        println!("--- machine ---");
        print!("{}", report.machine());
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Run { file, flags } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let name = file.file_stem().map_or_else(|| "scenario".into(), |s| s.to_string_lossy().into_owned());
            let s = match parse_scenario(&name, &text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {}:{e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let report = run_scenario(&s, flags.options());
            print(&report, flags.machine);
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Corpus { flags } => {
            let reports = corpus::run_all(flags.options());
            for r in &reports {
                if flags.machine {
                    println!("# {}", r.scenario);
                }
                print(r, flags.machine);
            }
            let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.scenario.as_str()).collect();
            if !flags.machine {
                println!("corpus: {} of {} scenarios passed", reports.len() - failed.len(), reports.len());
            }
            if failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("failed: {}", failed.join(", "));
                ExitCode::from(1)
            }
        }
    }
}
