//! `nlsym`: surveys, demonstrations and checks for quantum permutation correlations.
//!
//! Exit codes: 0 success, 2 resource bound exceeded, 64 usage or input error,
//! 70 internal inconsistency (a certificate that fails exact re-verification).

mod commands;
mod render;
mod report;

use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use commands::{CliError, GraphSource, K4Source, K5Options};

#[derive(Parser, Debug)]
#[command(name = "nlsym", version, about = "Nonlocal symmetry of graphs and quantum permutation correlations")]
struct Cli {
    /// Worker threads for surveys (default: logical cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Precision cap in bits for sign decisions of irrational values (default 1024).
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify every quantum Latin square correlation of a group.
    Survey {
        /// Group literal such as Z6 or Z2xZ4.
        #[arg(long)]
        group: String,
        /// Allow groups of order 9 and 10.
        #[arg(long)]
        extended: bool,
        /// Write the report as JSON ("-" for stdout).
        #[arg(long)]
        json: Option<String>,
    },
    /// Inspect one quantum Latin square.
    Qls {
        #[arg(long)]
        group: String,
        /// Images of the enumerated characters, e.g. "0,1,2,4,3".
        #[arg(long)]
        perm: String,
        #[arg(long)]
        json: Option<String>,
        /// Write the correlation in the JSON exchange format.
        #[arg(long)]
        emit_correlation: Option<String>,
    },
    /// Graph information and classification.
    #[command(group(ArgGroup::new("source").args(["name", "edges", "graph6", "table2"]).required(true)))]
    Graph {
        /// Built-in name, e.g. 3K2, C10(4), K5xK2, petersen.
        #[arg(long)]
        name: Option<String>,
        /// Edge-list file ("n m" header, then "u v" lines).
        #[arg(long)]
        edges: Option<String>,
        #[arg(long)]
        graph6: Option<String>,
        #[arg(long)]
        classify: bool,
        /// Run the twelve-graph corpus and compare with the expected verdicts.
        #[arg(long)]
        table2: bool,
        #[arg(long)]
        json: Option<String>,
    },
    /// The five-point golden-ratio correlation and its separating inequality.
    K5Demo {
        #[arg(long)]
        json: Option<String>,
        #[arg(long)]
        emit_certificate: Option<String>,
        #[arg(long)]
        emit_correlation: Option<String>,
    },
    /// Exact locality decision for correlations on four points.
    #[command(group(ArgGroup::new("k4_source").args(["input", "group"]).required(true)))]
    K4Check {
        /// Correlation JSON file.
        #[arg(long = "in")]
        input: Option<String>,
        /// Order-four group; without --perm every square is checked.
        #[arg(long)]
        group: Option<String>,
        #[arg(long, requires = "group")]
        perm: Option<String>,
        /// Check the uniform translation-invariant correlation of --group.
        #[arg(long, requires = "group", conflicts_with = "perm")]
        uniform: bool,
        #[arg(long)]
        json: Option<String>,
    },
    /// Re-verify a separating certificate against every deterministic correlation.
    Certify {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        correlation: String,
        #[arg(long)]
        json: Option<String>,
    },
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    if let Some(bits) = cli.precision_bits {
        std::env::set_var(nlsym::cyclotomic::PRECISION_ENV, bits.to_string());
    }
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let quiet = |j: &Option<String>| j.as_deref() == Some("-");
    Ok(match &cli.command {
        Command::Survey { group, extended, json } => {
            (commands::survey_cmd(group, *extended, json.as_deref())?, quiet(json))
        }
        Command::Qls { group, perm, json, emit_correlation } => {
            (commands::qls_cmd(group, perm, json.as_deref(), emit_correlation.as_deref())?, quiet(json))
        }
        Command::Graph { name, edges, graph6, classify, table2, json } => {
            if *table2 {
                (commands::table2_cmd(json.as_deref())?, quiet(json))
            } else {
                let src = match (name, edges, graph6) {
                    (Some(n), _, _) => GraphSource::Name(n),
                    (_, Some(e), _) => GraphSource::Edges(e),
                    (_, _, Some(g)) => GraphSource::Graph6(g),
                    _ => unreachable!("clap requires a source"),
                };
                (commands::graph_cmd(&src, *classify, json.as_deref())?, quiet(json))
            }
        }
        Command::K5Demo { json, emit_certificate, emit_correlation } => {
            let opts = K5Options {
                json: json.as_deref(),
                emit_certificate: emit_certificate.as_deref(),
                emit_correlation: emit_correlation.as_deref(),
            };
            (commands::k5_demo(&opts)?, quiet(json))
        }
        Command::K4Check { input, group, perm, uniform, json } => {
            let src = match (input, group) {
                (Some(path), _) => K4Source::File(path),
                (None, Some(g)) if *uniform => K4Source::Uniform(g),
                (None, Some(g)) => K4Source::Qls { group: g, perm: perm.as_deref() },
                _ => unreachable!("clap requires an input"),
            };
            (commands::k4_check(&src, json.as_deref())?, quiet(json))
        }
        Command::Certify { input, correlation, json } => {
            (commands::certify_cmd(input, correlation, json.as_deref())?, quiet(json))
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((text, quiet)) => {
            if !quiet {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
