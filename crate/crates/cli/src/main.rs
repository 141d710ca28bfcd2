use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use splitgraph::gamma::InterpretationPolicy;
use splitgraph::presentation::DEFAULT_MAX_WORD_LEN;
use splitgraph_cli::{run, Command, Format, RunConfig, EXIT_ERROR};

/// Graphs on split extensions of finite groups, and audits of whether they
/// depend only on the group.
#[derive(Parser)]
#[command(name = "splitgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Interpretation policy, e.g.
    /// "zero-exponents=deny;length-gate=at-least-one;same-generator=reduced;support=disjoint"
    #[arg(long, global = true, default_value = "default")]
    policy: String,

    /// Output format (default: text for graph/ds, json otherwise)
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Longest word searched by the generator condition check
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WORD_LEN)]
    max_word_len: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the graph for one description
    Graph { input: PathBuf },
    /// Print the degree sequence for one description
    Ds { input: PathBuf },
    /// Compare two descriptions; exits 2 on an ill-definedness witness
    Audit { first: PathBuf, second: PathBuf },
    /// Audit the built-in C4:C2 and V4:C2 pair
    Counterexample,
    /// Check the classification of groups of order 8
    Classify,
    /// Audit two descriptions (built-in pair by default) under every policy
    Sweep { inputs: Vec<PathBuf> },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    let policy: InterpretationPolicy = match cli.policy.parse() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: --policy: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let (command, inputs) = match cli.command {
        Cmd::Graph { input } => (Command::Graph, vec![input]),
        Cmd::Ds { input } => (Command::Ds, vec![input]),
        Cmd::Audit { first, second } => (Command::Audit, vec![first, second]),
        Cmd::Counterexample => (Command::Counterexample, vec![]),
        Cmd::Classify => (Command::Classify, vec![]),
        Cmd::Sweep { inputs } => (Command::Sweep, inputs),
    };
    let config = RunConfig {
        command,
        inputs,
        policy,
        format: cli.format.map(|f| match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Dot => Format::Dot,
        }),
        max_word_len: cli.max_word_len,
    };
    let code = run(&config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
