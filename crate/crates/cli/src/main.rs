//! `cherednik` — exact rational Cherednik algebra computations for
//! reflection groups over small finite fields.

use clap::{Args, Parser, Subcommand};

use cherednik_cli::claims::{self, Scope};
use cherednik_cli::commands;
use cherednik_cli::config;
use cherednik_cli::conjecture;
use cherednik_cli::output::{emit, pretty_report, Format};
use cherednik_core::groups::{Family, GroupData, GroupSpec};
use cherednik_core::{Error, Result};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "cherednik",
    version,
    about = "Exact rational Cherednik algebra computations over small finite fields",
    long_about = "Constructs reflection groups over F_q, applies Dunkl operators, \
computes contravariant Gram blocks with exact symbolic ranks, scans Hilbert series \
of the irreducible quotient of the trivial-lowest-weight Verma module, and replays \
the published character tables. All output is deterministic for a fixed --seed."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GroupArgs {
    /// Group family: GL, SL, O, O+, O-, Sym
    #[arg(long)]
    family: String,

    /// Matrix size n (for Sym: the permutation degree N)
    #[arg(short = 'n', long = "n")]
    n: usize,

    /// Field order q (a prime power)
    #[arg(short = 'q', long = "q")]
    q: u64,
}

impl GroupArgs {
    fn build(&self) -> Result<GroupData> {
        let fam = Family::parse(&self.family)?;
        GroupData::new(GroupSpec::new(fam, self.n, self.q)?)
    }
}

#[derive(Args)]
struct ModeArgs {
    /// Level t of the algebra (0 or 1)
    #[arg(short = 't', long = "t", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(0..=1))]
    t: u64,

    /// Class parameters: "generic", or comma-separated field element
    /// indices, one per reflection class in class-id order
    #[arg(short = 'c', long = "c", default_value = "generic")]
    c: String,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Base seed for the deterministic rank-certification RNG
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List a group's reflections, classes, and parameter names
    Reflections {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Apply Dunkl operators to a monomial
    Dunkl {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        mode: ModeArgs,
        /// Input monomial, e.g. "x1^2*x2" (or "1")
        #[arg(long)]
        monomial: String,
        /// Apply only the operator for this variable (1-based; default all)
        #[arg(long)]
        y: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Print contravariant Gram blocks with exact ranks and kernels
    Form {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        mode: ModeArgs,
        /// First degree to report
        #[arg(long, default_value_t = 0)]
        min_degree: u32,
        /// Last degree to report (default: the scan cutoff, GL/SL only)
        #[arg(long)]
        max_degree: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Scan Gram ranks and report the Hilbert series of the irreducible quotient
    Hilbert {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        mode: ModeArgs,
        /// Scan cutoff (default: the baby Verma top degree, GL/SL only)
        #[arg(long)]
        max_degree: Option<u32>,
        /// Restrict all class parameters to one shared generic value
        #[arg(long)]
        equal_parameters: bool,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Print the fundamental polynomial invariants of GL_n(F_q)
    Dickson {
        /// Number of variables
        #[arg(short = 'n', long = "n")]
        n: usize,
        /// Field order q (a prime power)
        #[arg(short = 'q', long = "q")]
        q: u64,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Recompute every published character-table entry in scope
    VerifyTables {
        /// Which slice of the tables to verify
        #[arg(long, value_enum, default_value_t = Scope::All, ignore_case = true)]
        scope: Scope,
        /// Worker threads for independent claims
        #[arg(long, default_value_t = 4)]
        workers: usize,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Survey the orthogonal-group closed forms on the equal-parameter locus
    OrthogonalConjecture {
        /// Pairs n,q separated by semicolons, e.g. "2,3;2,5;3,3"
        #[arg(long, default_value = "2,3;2,5;3,3")]
        pairs: String,
        /// Also survey the larger field F_9 (adds the pair 2,9)
        #[arg(long)]
        slow: bool,
        #[command(flatten)]
        output: OutputArgs,
    },

    /// Compare the t=0 generic series against the reduced t=1 generic series
    CompareH {
        #[command(flatten)]
        group: GroupArgs,
        /// Scan cutoff (default: the baby Verma top degree, GL/SL only)
        #[arg(long)]
        max_degree: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Reflections { group, output } => {
            let g = group.build()?;
            let text = commands::reflections(&g, output.format)?;
            emit(&text, output.out.as_deref())?;
            Ok(0)
        }
        Cmd::Dunkl {
            group,
            mode,
            monomial,
            y,
            output,
        } => {
            let resolved = config::resolve(&group.family, group.n, group.q, mode.t, &mode.c)?;
            let text = commands::dunkl(resolved, &monomial, y, output.format)?;
            emit(&text, output.out.as_deref())?;
            Ok(0)
        }
        Cmd::Form {
            group,
            mode,
            min_degree,
            max_degree,
            output,
        } => {
            let resolved = config::resolve(&group.family, group.n, group.q, mode.t, &mode.c)?;
            let text =
                commands::form(resolved, min_degree, max_degree, output.seed, output.format)?;
            emit(&text, output.out.as_deref())?;
            Ok(0)
        }
        Cmd::Hilbert {
            group,
            mode,
            max_degree,
            equal_parameters,
            output,
        } => {
            let resolved = config::resolve(&group.family, group.n, group.q, mode.t, &mode.c)?;
            let text = commands::hilbert(
                resolved,
                max_degree,
                equal_parameters,
                output.seed,
                output.format,
            )?;
            emit(&text, output.out.as_deref())?;
            Ok(0)
        }
        Cmd::Dickson { n, q, output } => {
            let text = commands::dickson(n, q, output.format)?;
            emit(&text, output.out.as_deref())?;
            Ok(0)
        }
        Cmd::VerifyTables {
            scope,
            workers,
            output,
        } => {
            let report = claims::run_verification(scope, output.seed, workers)?;
            let text = match output.format {
                Format::Json => pretty_report(&report),
                Format::Table => claims::render_table(&report),
                Format::Csv => {
                    return Err(Error::Config(
                        "csv output is only available for the form command".into(),
                    ))
                }
            };
            emit(&text, output.out.as_deref())?;
            Ok(if report.failed == 0 { 0 } else { 1 })
        }
        Cmd::OrthogonalConjecture {
            pairs,
            slow,
            output,
        } => {
            let pairs = conjecture::parse_pairs(&pairs)?;
            let report = conjecture::run_survey(&pairs, slow, output.seed)?;
            let text = match output.format {
                Format::Json => pretty_report(&report),
                Format::Table => conjecture::render_table(&report),
                Format::Csv => {
                    return Err(Error::Config(
                        "csv output is only available for the form command".into(),
                    ))
                }
            };
            emit(&text, output.out.as_deref())?;
            // Mismatches are findings the survey reports, not failures.
            Ok(0)
        }
        Cmd::CompareH {
            group,
            max_degree,
            output,
        } => {
            let text = commands::compare_h(
                &group.family,
                group.n,
                group.q,
                max_degree,
                output.seed,
                output.format,
            )?;
            emit(&text, output.out.as_deref())?;
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
