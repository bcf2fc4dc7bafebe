use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use permlab::par::Execution;

mod commands;

use commands::{CommandResult, Outcome};

/// Permutation pattern toolkit. Results are JSON on stdout.
#[derive(Parser)]
#[command(name = "permlab", version)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Does PATTERN occur in HOST? Reports the leftmost occurrence.
    Contains { pattern: String, host: String },

    /// Lists or counts the members of Av(BASIS...).
    Enumerate {
        basis: Vec<String>,
        #[arg(short = 'n', long)]
        n: usize,
        /// Print a table of counts for lengths 1..=n.
        #[arg(long)]
        count_only: bool,
        /// Use the LR-closure of the class.
        #[arg(long)]
        lr_closed: bool,
    },

    /// Structure tree of a member of Av(1423, 1342).
    Decompose { perm: String },

    /// LR-merge coloring of a member of Av(1423, 1342).
    Split { perm: String },

    /// 1-amalgamation of two marked members of Av(1423, 1342).
    Amalgamate {
        perm1: String,
        mark1: usize,
        perm2: String,
        mark2: usize,
        /// Search the class by brute force up to this length instead.
        #[arg(long, value_name = "MAX_LEN")]
        search: Option<usize>,
        /// Basis of the class searched (default 1423 1342).
        #[arg(long, num_args = 1.., requires = "search")]
        basis: Vec<String>,
    },

    /// Two-line drawing of a 123-avoider.
    Draw { perm: String },

    /// Runs a verification suite, or `all` of them.
    Verify {
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
    },

    /// Re-validates a certificate produced by another subcommand.
    Check {
        #[command(subcommand)]
        what: Check,
    },
}

#[derive(Subcommand)]
enum Check {
    /// A structure tree; DOC is JSON or `-` for stdin.
    Tree { perm: String, doc: String },
    /// A split coloring.
    Split { perm: String, doc: String },
    /// An amalgamation certificate.
    Amalgam {
        perm1: String,
        mark1: usize,
        perm2: String,
        mark2: usize,
        doc: String,
        #[arg(long, num_args = 1..)]
        basis: Vec<String>,
    },
    /// A two-line drawing.
    Drawing { perm: String, doc: String },
}

/// Honors `PERMLAB_THREADS`.
fn execution() -> Result<Execution, CommandResult> {
    let Ok(raw) = std::env::var("PERMLAB_THREADS") else {
        return Ok(Execution::default());
    };
    let threads: usize = match raw.trim().parse() {
        Ok(t) if t > 0 => t,
        _ => return Err(CommandResult::usage(format!("PERMLAB_THREADS={raw:?}"))),
    };
    if threads == 1 {
        return Ok(Execution::Sequential);
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CommandResult::usage(e.to_string()))?;
    Ok(Execution::default())
}

fn run(cli: Cli) -> Outcome {
    let exec = execution()?;
    match cli.command {
        Command::Contains { pattern, host } => commands::contains(&pattern, &host),
        Command::Enumerate {
            basis,
            n,
            count_only,
            lr_closed,
        } => commands::enumerate(&basis, n, count_only, lr_closed, exec),
        Command::Decompose { perm } => commands::decompose(&perm),
        Command::Split { perm } => commands::split(&perm),
        Command::Amalgamate {
            perm1,
            mark1,
            perm2,
            mark2,
            search,
            basis,
        } => commands::amalgamate(&perm1, mark1, &perm2, mark2, search, &basis),
        Command::Draw { perm } => commands::draw(&perm),
        Command::Verify { suite, max_n } => commands::verify(&suite, max_n, exec),
        Command::Check { what } => match what {
            Check::Tree { perm, doc } => commands::check_tree(&perm, &doc),
            Check::Split { perm, doc } => commands::check_split(&perm, &doc),
            Check::Amalgam {
                perm1,
                mark1,
                perm2,
                mark2,
                doc,
                basis,
            } => commands::check_amalgam(&perm1, mark1, &perm2, mark2, &doc, &basis),
            Check::Drawing { perm, doc } => commands::check_drawing(&perm, &doc),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    let result = run(cli).unwrap_or_else(|e| e);
    let json = result.to_json();
    let text = if pretty {
        serde_json::to_string_pretty(&json)
    } else {
        serde_json::to_string(&json)
    };
    // a closed pipe downstream is not our failure
    let _ = writeln!(
        std::io::stdout().lock(),
        "{}",
        text.expect("JSON values serialize")
    );
    ExitCode::from(result.exit_code)
}
