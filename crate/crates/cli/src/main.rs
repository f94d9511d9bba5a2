//! `solgrowth`: batch front end for the solgrowth library.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "solgrowth",
    version,
    about = "Exact growth computations for Sol torus-bundle groups"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// State cap for automaton constructions.
    #[arg(long, global = true)]
    max_states: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a word over {a, A, t, T} to its unreduced type and height.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        #[arg(long)]
        word: String,
    },
    /// Shortest word for a type and height. With --trace the type is first
    /// replaced by a least representative of its class, giving a group geodesic.
    Geodesic {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        height: i64,
        #[arg(long, allow_hyphen_values = true)]
        trace: Option<i64>,
    },
    /// Decide whether two words name the same group element.
    Equal {
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        left: String,
        right: String,
    },
    /// Sphere sizes of the Cayley graph by breadth-first search.
    Ball {
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        /// Comma-separated generators; inverses are added automatically.
        #[arg(long, value_delimiter = ',', default_value = "a,t")]
        gens: Vec<String>,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        max_elements: Option<u64>,
    },
    /// Growth series of a one-tape automaton given as JSON.
    SeriesFsa {
        /// Automaton JSON file, or `-` for standard input.
        file: String,
        /// Also print this many Taylor coefficients.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Automaton for L_n (or L_n' with --padded).
    BuildLn {
        #[arg(long)]
        n: u32,
        /// Allow leading and trailing zero coefficients.
        #[arg(long)]
        padded: bool,
    },
    /// Division acceptor R_n', or R_{n,i} when --i is given.
    BuildAcceptor {
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: Option<u32>,
    },
    /// End-to-end cross-section construction.
    Pipeline {
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Compare Parry's closed form with breadth-first sphere counts.
    VerifyParry {
        #[arg(long)]
        half_trace: u32,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        max_elements: Option<u64>,
    },
    /// The constants of the fellow-traveler argument.
    Constants {
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        /// Language parameter for the remainder bound; defaults to N.
        #[arg(long)]
        n: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct OverrideArgs {
    /// Coefficient bound of L_n.
    #[arg(long)]
    n: Option<u32>,
    /// Fellow-traveler constant.
    #[arg(long)]
    k: Option<u64>,
    /// Allowed head/tail length difference.
    #[arg(long)]
    i: Option<u32>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(&CliError::usage(e.to_string())),
    };
    let run = || commands::run(&cli.command, cli.format);
    let out = match cli.max_states {
        Some(limit) => solgrowth::automata::with_state_limit(limit, run),
        None => run(),
    };
    match out {
        Ok(o) => {
            print!("{}", o.text);
            if !o.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(o.status)
        }
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.status())
}
