use std::process::ExitCode;

use clap::{Parser, Subcommand};
use setgrading::designs::Block;
use setgrading::report::{self, Report, INPUT_ERROR_EXIT};

/// Set gradings of so(2n) from Steiner systems S(2,4,n).
#[derive(Parser)]
#[command(name = "setgrading", version)]
struct Cli {
    /// Print the full report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on the grading of D13 built from PG(2,3).
    DemoD13,
    /// Build, check or search Steiner systems.
    Design {
        #[command(subcommand)]
        action: DesignAction,
    },
    /// Build a grading from a design or a subgroup and report its invariants.
    Grade {
        /// Design file, or `pg23` for the built-in plane.
        #[arg(long, conflicts_with = "subgroup")]
        design: Option<String>,
        /// Subgroup file; the lattice used is 2Q plus the listed vectors.
        #[arg(long, requires = "n")]
        subgroup: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Check the grading property on every pair of components.
        #[arg(long)]
        verify: bool,
    },
    /// Decide whether the grading of a design is a group grading.
    Nongroup {
        /// Design file, or `pg23`.
        #[arg(long)]
        design: String,
    },
    /// Pure grading of a subgroup 2Q <= E <= Q with E° and the diagonal group.
    Pure {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        subgroup: String,
    },
    /// Elementary divisors of an integer matrix file.
    Snf {
        file: String,
        /// Also print the unimodular transforms.
        #[arg(long)]
        transforms: bool,
    },
}

#[derive(Subcommand)]
enum DesignAction {
    /// Print the lines of the projective plane of order 3.
    Pg23,
    /// Check the Steiner property of a design file.
    Validate { file: String },
    /// Develop base blocks by translation.
    Develop {
        #[arg(long)]
        n: u32,
        /// A base block as four comma-separated elements; repeat per block.
        #[arg(long = "blocks", required = true, num_args = 1.., value_parser = parse_block)]
        blocks: Vec<Block>,
        /// Moduli of the translation group, e.g. `5,5`; default `Z/n`.
        #[arg(long, value_delimiter = ',')]
        group: Option<Vec<u32>>,
    },
    /// Search for a difference family of 4-sets.
    Search {
        #[arg(long)]
        n: u32,
        /// Accepted for reproducibility records; the search is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Save the developed design to this file.
        #[arg(long)]
        write: Option<String>,
    },
}

fn parse_block(s: &str) -> Result<Block, String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("{:?}: {}", t, e)))
        .collect::<Result<_, _>>()?;
    let mut b: Block = parts.try_into().map_err(|_| format!("{:?} does not have four elements", s))?;
    b.sort_unstable();
    Ok(b)
}

fn run(cli: &Cli) -> setgrading::Result<Report> {
    match &cli.command {
        Command::DemoD13 => report::cmd_demo_d13(),
        Command::Design { action } => match action {
            DesignAction::Pg23 => Ok(report::cmd_design_pg23()),
            DesignAction::Validate { file } => report::cmd_design_validate(file),
            DesignAction::Develop { n, blocks, group } => report::cmd_design_develop(*n, group.as_deref(), blocks),
            DesignAction::Search { n, seed, write } => report::cmd_design_search(*n, *seed, write.as_deref()),
        },
        Command::Grade { design, subgroup, n, verify } => match (design, subgroup, n) {
            (Some(d), None, _) => report::cmd_grade_design(d, *verify),
            (None, Some(s), Some(n)) => report::cmd_grade_subgroup(s, *n, *verify),
            _ => Err(setgrading::Error::Input("give --design, or --subgroup with --n".into())),
        },
        Command::Nongroup { design } => report::cmd_nongroup(design),
        Command::Pure { n, subgroup } => report::cmd_pure(*n, subgroup),
        Command::Snf { file, transforms } => report::cmd_snf(file, *transforms),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR_EXIT as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(r) => {
            print!("{}", if cli.json { r.to_json() } else { r.to_text() });
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(INPUT_ERROR_EXIT as u8)
        }
    }
}
