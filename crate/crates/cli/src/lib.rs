//! Command-line front end for the `metricspace` toolkit.
//!
//! [`run`] parses arguments and executes one subcommand, returning the exit
//! code and output instead of touching the process, so commands can be
//! driven from tests.

mod commands;
mod input;
pub mod svg;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use input::{parse_graph, GraphFile};

/// Outcome of one invocation.
///
/// `exit_code` is 0 on success, 1 when a mathematical property was found to
/// fail, and 2 for usage, input and I/O errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    pub const SUCCESS: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const USAGE: i32 = 2;

    fn ok(stdout: String) -> Self {
        CommandResult {
            exit_code: Self::SUCCESS,
            stdout,
            stderr: String::new(),
        }
    }

    fn violation(stdout: String) -> Self {
        CommandResult {
            exit_code: Self::VIOLATION,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CommandResult {
            exit_code: Self::USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

/// A usage, input or I/O failure; always maps to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl From<metricspace::Error> for UsageError {
    fn from(e: metricspace::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<serde_json::Error> for UsageError {
    fn from(e: serde_json::Error) -> Self {
        UsageError(format!("malformed JSON: {e}"))
    }
}

fn usage<T>(message: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(message.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "metricspace",
    version,
    about = "Distances, metric-axiom checks and unit balls"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

/// Metric selection shared by `dist` and `verify`.
#[derive(Debug, Args)]
struct MetricArgs {
    /// l1, l2, linf, discrete, padic, sphere, graph, fn-d1, fn-dinf or
    /// squared-euclid-fixture.
    #[arg(long)]
    metric: String,

    /// Prime for the p-adic metric.
    #[arg(long)]
    p: Option<u64>,

    /// Snowflake exponent in (0, 1]; wraps the selected metric.
    #[arg(long)]
    alpha: Option<f64>,

    /// Graph file for the graph metric.
    #[arg(long)]
    graph: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance between two points.
    Dist {
        #[command(flatten)]
        metric: MetricArgs,
        /// Two whitespace-separated points, e.g. "[1,2] [4,6]" or "0 1/2".
        #[arg(long, conflicts_with = "file")]
        points: Option<String>,
        /// JSON file {"points": [x, y]}.
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
    /// Check the metric axioms on a seeded random sample.
    Verify {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Slack allowed per axiom; defaults to 0 for exact metrics and 1e-9
        /// otherwise.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Ambient dimension for vector and sphere samples.
        #[arg(long)]
        dim: Option<usize>,
        /// Vertex count of the random graph used when no --graph is given.
        #[arg(long, default_value_t = 12)]
        vertices: usize,
    },
    /// Write the boundary of a planar ball as SVG.
    Ball {
        #[arg(long)]
        metric: vector_kind::Kind,
        #[arg(long, default_value = "[0,0]")]
        center: String,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Output path; the SVG goes to stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Partial sums of the geometric series and their distance to the limit.
    Series {
        /// Ratio, as an integer or "a/b".
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = SeriesKind::Standard)]
        metric: SeriesKind,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Shortest-path distance between two vertices of a graph file.
    GraphDist {
        #[arg(long)]
        graph: std::path::PathBuf,
        /// Vertex index, or a name from the file's "names" list.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// d1 and d∞ between two piecewise-linear function files.
    FnDist {
        #[arg(long)]
        f: std::path::PathBuf,
        #[arg(long)]
        g: std::path::PathBuf,
    },
    /// Extremal points of a sphere slice, optionally checked on random slice
    /// points.
    Extremals {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Geodesic radius of the slice about y, in (0, π).
        #[arg(long)]
        r: f64,
        /// Number of random slice points to test against the extremals.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

mod vector_kind {
    /// Clap-facing mirror of the planar norms.
    #[derive(Debug, Clone, Copy, clap::ValueEnum)]
    pub enum Kind {
        L1,
        L2,
        Linf,
    }

    impl From<Kind> for metricspace::vector::NormKind {
        fn from(k: Kind) -> Self {
            match k {
                Kind::L1 => Self::L1,
                Kind::L2 => Self::L2,
                Kind::Linf => Self::Linf,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    Standard,
    Padic,
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult::usage(text)
            } else {
                CommandResult::ok(text)
            };
        }
    };
    execute(cli)
}

pub fn execute(cli: Cli) -> CommandResult {
    let ctx = commands::Context {
        format: cli.format,
        seed: cli.seed,
    };
    let outcome = match cli.command {
        Command::Dist {
            metric,
            points,
            file,
        } => commands::dist(&ctx, &metric, points, file),
        Command::Verify {
            metric,
            samples,
            tolerance,
            dim,
            vertices,
        } => commands::verify(&ctx, &metric, samples, tolerance, dim, vertices),
        Command::Ball {
            metric,
            center,
            radius,
            out,
        } => commands::ball(&ctx, metric.into(), &center, radius, out),
        Command::Series { x, n, metric, p } => commands::series(&ctx, &x, n, metric, p),
        Command::GraphDist { graph, from, to } => commands::graph_dist(&ctx, &graph, &from, &to),
        Command::FnDist { f, g } => commands::fn_dist(&ctx, &f, &g),
        Command::Extremals { x, y, r, samples } => commands::extremals(&ctx, &x, &y, r, samples),
    };
    outcome.unwrap_or_else(|UsageError(msg)| CommandResult::usage(format!("error: {msg}")))
}
