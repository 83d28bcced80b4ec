use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use whittaker_cli::commands;
use whittaker_cli::schema::ParamsJson;

#[derive(Parser)]
#[command(name = "whittaker", version, about = "Simplicity verdicts and Whittaker vectors for universal Whittaker modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty window {s:?}"));
    }
    Ok((lo, hi))
}

#[derive(Args, Clone, Default)]
struct Flags {
    /// Largest monomial length in the search truncation.
    #[arg(long)]
    lth_max: Option<usize>,
    /// Exponent window of the search truncation.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true, value_name = "LO..HI")]
    exp_window: Option<(i64, i64)>,
    /// Degree window (g-minus and vir-geq-n pairs).
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true, value_name = "LO..HI")]
    deg_window: Option<(i64, i64)>,
    /// Largest annihilator degree tried when classifying an oracle.
    #[arg(long)]
    class_degree: Option<usize>,
    /// Window on which oracle-derived functionals are tested.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true, value_name = "LO..HI")]
    class_window: Option<(i64, i64)>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

impl Flags {
    fn params(&self) -> ParamsJson {
        ParamsJson {
            lth_max: self.lth_max,
            exp_window: self.exp_window,
            deg_window: self.deg_window,
            class_degree: self.class_degree,
            class_window: self.class_window,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Simplicity verdict with witness or corroborating search.
    Verdict {
        scenario: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Whittaker test for a vector; exit 0 iff it is a Whittaker vector.
    Check {
        scenario: String,
        /// Module element, as a file or inline JSON.
        vector: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Basis of the Whittaker vectors in a finite truncation.
    Search {
        scenario: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Classification and annihilator generator of a functional.
    Ann {
        /// Functional, as a file or inline JSON.
        functional: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Action of one generator on a module element.
    Act {
        scenario: String,
        /// Generator, as a file or inline JSON.
        #[arg(long = "gen")]
        generator: String,
        /// Module element (default: the cyclic vector).
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Verdicts for every scenario in a directory, checked against their
    /// expectations.
    Corpus {
        dir: String,
        #[command(flatten)]
        flags: Flags,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Verdict { scenario, flags } => commands::verdict(scenario, &flags.params(), flags.json),
        Command::Check { scenario, vector, flags } => commands::check(scenario, vector, &flags.params(), flags.json),
        Command::Search { scenario, flags } => commands::search(scenario, &flags.params(), flags.json),
        Command::Ann { functional, flags } => commands::ann(functional, &flags.params(), flags.json),
        Command::Act { scenario, generator, element, json } => {
            commands::act(scenario, generator, element.as_deref(), *json)
        }
        Command::Corpus { dir, flags, jobs } => commands::corpus(dir, &flags.params(), flags.json, *jobs),
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
