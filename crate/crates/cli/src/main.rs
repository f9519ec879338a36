use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cremona::hilbert::DEFAULT_BOUND;
use cremona_cli::{render, run, AnalysisRequest, Command, Format, InputSource};

/// Analyze monomial rational maps: birationality, Cremona inverses,
/// degree-2 graph classification and bounded Hilbert-base checks.
///
/// Input is a monomial set, one monomial per line (e.g. `x1*x2`, `x3^2`;
/// `vars: a, b, c` fixes the variable order), or a JSON object
/// `{"variables": [...], "monomials": [[...], ...]}`.
///
/// Set CREMONA_WORKERS to bound the number of worker threads.
#[derive(Parser, Debug)]
#[command(name = "cremona", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Input {
    /// File holding the monomial set; `-` or nothing reads standard input.
    file: Option<PathBuf>,

    /// The monomial set given inline, e.g. "x1*x2, x1*x3, x2*x3".
    #[arg(long, short = 's', conflicts_with = "file")]
    set: Option<String>,
}

impl Input {
    fn source(self) -> InputSource {
        match (self.set, self.file) {
            (Some(text), _) => InputSource::Inline(text),
            (None, Some(path)) if path.as_os_str() != "-" => InputSource::File(path),
            _ => InputSource::Stdin,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Canonical restrictions, stochasticity, cohesiveness and birationality.
    Analyze(Input),
    /// Cremona inverse with inversion vector and degree.
    Invert(Input),
    /// Degree-2 classification through the graph of the set.
    Classify(Input),
    /// Degree-2 normal form with its row and column permutations.
    NormalForm(Input),
    /// Bounded Hilbert-base check of the lifted cone.
    HilbertCheck {
        #[command(flatten)]
        input: Input,
        /// Highest level (last coordinate) enumerated.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
    },
    /// Bounded normality check of the monomial ideal.
    NormalCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
    },
    /// All n-subsets of monomials with |det| = d, with permutation classes.
    ExtractCremona(Input),
    /// DOT rendering of the degree-2 graph.
    ExportDot {
        #[command(flatten)]
        input: Input,
        /// Render the edge graph instead.
        #[arg(long)]
        edge_graph: bool,
    },
    /// Random degree-2 Cremona set on N variables with root circuit of
    /// length R (R = 1 for a loop).
    Generate {
        n: usize,
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn configure_workers() -> Result<(), String> {
    let Ok(value) = std::env::var("CREMONA_WORKERS") else {
        return Ok(());
    };
    let workers: usize = value
        .parse()
        .ok()
        .filter(|&k| k > 0)
        .ok_or_else(|| format!("CREMONA_WORKERS must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(message) = configure_workers() {
        eprintln!("error: {message}");
        return ExitCode::from(1);
    }

    let format = if cli.json {
        Format::Json
    } else {
        match cli.format {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        }
    };
    let (command, input) = match cli.command {
        Cmd::Analyze(input) => (Command::Analyze, input.source()),
        Cmd::Invert(input) => (Command::Invert, input.source()),
        Cmd::Classify(input) => (Command::Classify, input.source()),
        Cmd::NormalForm(input) => (Command::NormalForm, input.source()),
        Cmd::HilbertCheck { input, bound } => (Command::HilbertCheck { bound }, input.source()),
        Cmd::NormalCheck { input, bound } => (Command::NormalCheck { bound }, input.source()),
        Cmd::ExtractCremona(input) => (Command::ExtractCremona, input.source()),
        Cmd::ExportDot { input, edge_graph } => (Command::ExportDot { edge_graph }, input.source()),
        Cmd::Generate { n, r, seed } => (Command::Generate { n, r, seed }, InputSource::Stdin),
    };
    let request = AnalysisRequest { command, input, format };

    match run(&request) {
        Ok(report) => {
            print!("{}", render(&report, format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
