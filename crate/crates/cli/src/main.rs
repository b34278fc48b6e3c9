use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dlbisim_cli::commands::{self, BenchParams, GenParams};
use dlbisim_cli::{CliError, Document, Output};

/// Bisimulations, minimisation and model checking for description logics
/// with optional features I (inverse), O (nominals), Q (number
/// restrictions), U (universal role) and S (Self).
#[derive(Parser)]
#[command(name = "dlbisim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Workspace document (JSON).
    file: PathBuf,
    /// Feature set over the letters IOQUS, overriding the document's.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Interpretation to use; may be omitted when the document has one.
    #[arg(long)]
    interp: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the blocks of the largest auto-bisimulation.
    Partition {
        #[command(flatten)]
        common: Common,
        /// Write the refinement trace to this file (`-` for standard output).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print the quotient by the largest auto-bisimulation as a document.
    Minimize {
        #[command(flatten)]
        common: Common,
        /// Emit the QS-quotient with multiplicities and Self sets.
        #[arg(long)]
        qs: bool,
    },
    /// Decide whether two interpretations of the document are bisimilar.
    Bisim {
        file: PathBuf,
        left: String,
        right: String,
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
        /// Also print the largest bisimulation.
        #[arg(long)]
        relation: bool,
    },
    /// Print the elements of a concept.
    Eval {
        #[command(flatten)]
        common: Common,
        concept: String,
    },
    /// Check every axiom of the document's knowledge base.
    CheckKb {
        #[command(flatten)]
        common: Common,
    },
    /// Print a concept that holds at X and not at Y.
    Witness {
        #[command(flatten)]
        common: Common,
        x: String,
        y: String,
        /// Print with logical symbols instead of keywords.
        #[arg(long)]
        unicode: bool,
    },
    /// Close an interpretation under the document's RBox.
    ExtendRbox {
        file: PathBuf,
        #[arg(long)]
        interp: Option<String>,
    },
    /// Print a document with one random interpretation `I`.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        /// Maximum number of successors per element and role.
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        concepts: usize,
        #[arg(long, default_value_t = 3)]
        roles: usize,
        #[arg(long, default_value_t = 0)]
        individuals: usize,
    },
    /// Time refinement on random bounded-degree interpretations; prints CSV.
    Bench {
        /// Domain sizes.
        #[arg(required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 3)]
        roles: usize,
        #[arg(long, default_value_t = 2)]
        concepts: usize,
        #[arg(long, default_value = "Q", allow_hyphen_values = true)]
        phi: String,
        /// Runs per size; the median is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

fn load(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Document::parse(&text)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Partition { common, trace } => {
            let doc = load(&common.file)?;
            let (mut out, log) = commands::partition(
                &doc,
                common.phi.as_deref(),
                common.interp.as_deref(),
                trace.is_some(),
            )?;
            if let (Some(path), Some(log)) = (trace, log) {
                if path.as_os_str() == "-" {
                    out.text.push_str(&log);
                } else {
                    std::fs::write(&path, log)
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                }
            }
            Ok(out)
        }
        Command::Minimize { common, qs } => commands::minimize(
            &load(&common.file)?,
            common.phi.as_deref(),
            common.interp.as_deref(),
            qs,
        ),
        Command::Bisim {
            file,
            left,
            right,
            phi,
            relation,
        } => commands::bisim(&load(&file)?, phi.as_deref(), &left, &right, relation),
        Command::Eval { common, concept } => commands::eval(
            &load(&common.file)?,
            common.phi.as_deref(),
            common.interp.as_deref(),
            &concept,
        ),
        Command::CheckKb { common } => commands::check_kb_cmd(
            &load(&common.file)?,
            common.phi.as_deref(),
            common.interp.as_deref(),
        ),
        Command::Witness {
            common,
            x,
            y,
            unicode,
        } => commands::witness(
            &load(&common.file)?,
            common.phi.as_deref(),
            common.interp.as_deref(),
            &x,
            &y,
            unicode,
        ),
        Command::ExtendRbox { file, interp } => {
            commands::extend_rbox(&load(&file)?, interp.as_deref())
        }
        Command::Gen {
            seed,
            n,
            degree,
            concepts,
            roles,
            individuals,
        } => commands::gen(GenParams {
            seed,
            n,
            degree,
            concepts,
            roles,
            individuals,
        }),
        Command::Bench {
            sizes,
            seed,
            degree,
            roles,
            concepts,
            phi,
            reps,
        } => {
            let phi = phi
                .parse()
                .map_err(|e| CliError::Parse(format!("feature set {phi:?}: {e}")))?;
            commands::bench(&BenchParams {
                sizes,
                seed,
                degree,
                roles,
                concepts,
                phi,
                reps,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("dlbisim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
