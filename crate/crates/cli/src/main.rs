use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

/// Whitehead reduction, class graphs and class census for the free group on
/// a and b. Words use a, b, A (inverse of a) and B (inverse of b).
#[derive(Parser, Debug)]
#[command(name = "f2orbit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a word to a minimal word and print the automorphisms applied.
    Minimize {
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide whether two words are automorphically conjugate. Exits 1 if not.
    Equiv {
        first: String,
        second: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Show which principal automorphisms are level on a minimal word.
    Profile {
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build and classify the graph of the class of a word.
    Graph {
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the graph into this directory instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate every class of the given minimal lengths.
    Enumerate(EnumerateArgs),
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// Inclusive range such as `0..9`, or a single length.
    #[arg(long, default_value = "0..9")]
    lengths: LengthRange,
    #[arg(long, env = "F2ORBIT_WORKERS")]
    workers: Option<usize>,
    /// Directory for classes_<n>.jsonl, census tables and the report.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Keep only classes of this weight in the class listings.
    #[arg(long)]
    weight: Option<usize>,
    /// Evaluate the census conjectures over the computed lengths.
    #[arg(long)]
    check_conjectures: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct LengthRange(RangeInclusive<usize>);

const MAX_LENGTH: usize = 20;

impl FromStr for LengthRange {
    type Err = String;

    fn from_str(s: &str) -> Result<LengthRange, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid length {t:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (parse(lo)?, parse(hi.trim_start_matches('='))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        if hi > MAX_LENGTH {
            return Err(format!("lengths above {MAX_LENGTH} are not supported"));
        }
        Ok(LengthRange(lo..=hi))
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Minimize { word, format } => commands::cmd_minimize(&word, format).map(|()| true),
        Command::Equiv { first, second, format } => commands::cmd_equiv(&first, &second, format),
        Command::Profile { word, format } => commands::cmd_profile(&word, format).map(|()| true),
        Command::Graph { word, format, out } => commands::cmd_graph(&word, format, out.as_deref()).map(|()| true),
        Command::Enumerate(args) => {
            let workers = args.workers.unwrap_or_else(default_workers);
            if workers == 0 {
                return Err(CliError::Usage("--workers must be at least 1".into()));
            }
            let config = commands::RunConfig {
                lengths: args.lengths.0,
                weight_filter: args.weight,
                workers,
                output_dir: args.out,
                format: args.format,
                check_conjectures: args.check_conjectures,
            };
            commands::cmd_enumerate(&config).map(|()| true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_ranges() {
        assert_eq!("3..7".parse::<LengthRange>().unwrap().0, 3..=7);
        assert_eq!("3..=7".parse::<LengthRange>().unwrap().0, 3..=7);
        assert_eq!("5".parse::<LengthRange>().unwrap().0, 5..=5);
        assert!("7..3".parse::<LengthRange>().is_err());
        assert!("0..21".parse::<LengthRange>().is_err());
        assert!("x..3".parse::<LengthRange>().is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
