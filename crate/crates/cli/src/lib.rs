//! The `owlax` command line: validate a diagram, generate a review file,
//! integrate accepted candidates into an ontology, render it, or serve the
//! HTTP API.
//!
//! Exit codes: 0 on success, 1 on validation or parse errors, 2 on usage
//! errors (bad arguments, unreadable or malformed input files).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use owlax_core::diagram::validate_diagram;
use owlax_core::generator::GenerateError;
use owlax_core::session::{declare_diagram_entities, SessionError};
use owlax_core::syntax::{parse_functional, render_functional, render_manchester_document};
use owlax_core::{apply_selection, generate, integrate, merge_existing, Diagram, Ontology};
use owlax_core::{PrefixEnvironment, ReviewList, ValidationReport};
use owlax_service::ServiceConfig;

#[derive(Debug, Parser)]
#[command(name = "owlax", version, about = "Turn class diagrams into OWL axioms")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BaseIri {
    /// Namespace for the `:` prefix, ending in `#` or `/`.
    #[arg(long = "base-iri", env = "OWLAX_BASE_IRI", value_name = "IRI")]
    base_iri: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Manchester,
    Functional,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a diagram and print its errors and warnings.
    Validate {
        #[arg(short = 'd', long = "diagram", value_name = "FILE")]
        diagram: PathBuf,
    },
    /// Generate candidate axioms into a review file.
    Candidates {
        #[arg(short = 'd', long = "diagram", value_name = "FILE")]
        diagram: PathBuf,
        #[arg(long, value_name = "FILE")]
        ontology: Option<PathBuf>,
        #[arg(short = 'o', long = "output", value_name = "FILE")]
        output: PathBuf,
        #[command(flatten)]
        base: BaseIri,
    },
    /// Apply the accept flags of a review file and write the ontology.
    Integrate {
        #[arg(short = 'd', long = "diagram", value_name = "FILE")]
        diagram: PathBuf,
        #[arg(short = 'r', long = "review", value_name = "FILE")]
        review: PathBuf,
        #[arg(long, value_name = "FILE")]
        ontology: Option<PathBuf>,
        #[arg(short = 'o', long = "output", value_name = "FILE")]
        output: PathBuf,
        #[command(flatten)]
        base: BaseIri,
    },
    /// Print an ontology in Manchester or functional syntax.
    Render {
        #[arg(long, value_name = "FILE")]
        ontology: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory of web UI assets served at `/`.
        #[arg(long = "static", value_name = "DIR")]
        static_dir: Option<PathBuf>,
        /// Directory for per-session JSON snapshots.
        #[arg(long = "state-dir", value_name = "DIR")]
        state_dir: Option<PathBuf>,
        #[command(flatten)]
        base: BaseIri,
    },
}

#[derive(Debug)]
enum Failure {
    /// Exit 2: bad arguments or unusable input files.
    Usage(String),
    /// Exit 1: the diagram failed validation; the report goes to stdout.
    Invalid(ValidationReport),
    /// Exit 1: parse or consistency errors.
    Failed(String),
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{e}");
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    let outcome = match cli.command {
        Command::Validate { diagram } => cmd_validate(&diagram, out),
        Command::Candidates {
            diagram,
            ontology,
            output,
            base,
        } => cmd_candidates(&diagram, ontology.as_deref(), &output, &base, out, err),
        Command::Integrate {
            diagram,
            review,
            ontology,
            output,
            base,
        } => cmd_integrate(&diagram, &review, ontology.as_deref(), &output, &base, out, err),
        Command::Render { ontology, format } => cmd_render(&ontology, format, out),
        Command::Serve {
            port,
            host,
            static_dir,
            state_dir,
            base,
        } => cmd_serve(SocketAddr::new(host, port), static_dir, state_dir, &base, out),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Invalid(report)) => {
            for line in report.lines() {
                let _ = writeln!(out, "{line}");
            }
            1
        }
        Err(Failure::Failed(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Usage(format!("cannot write output: {e}"))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<Diagram, Failure> {
    let text = read_text(path)?;
    Diagram::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn base_env(base: &BaseIri) -> Result<Option<PrefixEnvironment>, Failure> {
    base.base_iri
        .as_deref()
        .map(PrefixEnvironment::new)
        .transpose()
        .map_err(|e| Failure::Usage(e.to_string()))
}

/// Loads the input ontology, or starts an empty one. An explicit base IRI
/// must agree with the file's `:` prefix; silently re-basing would rename
/// every entity.
fn load_ontology(path: Option<&Path>, env: Option<PrefixEnvironment>) -> Result<Ontology, Failure> {
    let Some(path) = path else {
        return Ok(Ontology::new(env.unwrap_or_default()));
    };
    let text = read_text(path)?;
    let ontology = parse_functional(&text).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))?;
    if let Some(env) = env {
        if env.base_iri() != ontology.prefixes.base_iri() {
            return Err(Failure::Usage(format!(
                "--base-iri {} conflicts with base {} of {}",
                env.base_iri(),
                ontology.prefixes.base_iri(),
                path.display()
            )));
        }
    }
    Ok(ontology)
}

/// Output must go to an existing directory and never overwrite an input.
fn check_output(output: &Path, inputs: &[&Path]) -> Outcome {
    let parent = match output.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !parent.is_dir() {
        return Err(Failure::Usage(format!("output directory {} does not exist", parent.display())));
    }
    if let Ok(target) = output.canonicalize() {
        for input in inputs {
            if input.canonicalize().is_ok_and(|i| i == target) {
                return Err(Failure::Usage(format!(
                    "output {} would overwrite an input file",
                    output.display()
                )));
            }
        }
    }
    Ok(())
}

fn validated(diagram: &Diagram, err: &mut dyn Write) -> Outcome {
    let report = validate_diagram(diagram);
    if !report.is_valid() {
        return Err(Failure::Invalid(report));
    }
    for line in report.lines() {
        let _ = writeln!(err, "{line}");
    }
    Ok(())
}

fn generate_review(diagram: &Diagram, ontology: &Ontology) -> Result<ReviewList, Failure> {
    let candidates = generate(diagram).map_err(|GenerateError::InvalidDiagram(r)| Failure::Invalid(r))?;
    Ok(merge_existing(candidates, ontology))
}

fn cmd_validate(diagram: &Path, out: &mut dyn Write) -> Outcome {
    let report = validate_diagram(&load_diagram(diagram)?);
    if !report.is_valid() {
        return Err(Failure::Invalid(report));
    }
    for line in report.lines() {
        writeln!(out, "{line}").map_err(io_failure)?;
    }
    Ok(())
}

fn cmd_candidates(
    diagram_path: &Path,
    ontology_path: Option<&Path>,
    output: &Path,
    base: &BaseIri,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let env = base_env(base)?;
    let mut inputs = vec![diagram_path];
    inputs.extend(ontology_path);
    check_output(output, &inputs)?;
    let diagram = load_diagram(diagram_path)?;
    let ontology = load_ontology(ontology_path, env)?;
    validated(&diagram, err)?;

    let review = generate_review(&diagram, &ontology)?;
    let mut text = review.to_json();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    fs::write(output, text).map_err(io_failure)?;
    writeln!(
        out,
        "{} candidates ({} existing)",
        review.entries.len(),
        review.existing_count()
    )
    .map_err(io_failure)
}

/// The review file only carries decisions: candidates are regenerated from
/// the diagram and ontology, and every reviewed id must still denote the
/// same axiom.
fn cmd_integrate(
    diagram_path: &Path,
    review_path: &Path,
    ontology_path: Option<&Path>,
    output: &Path,
    base: &BaseIri,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let env = base_env(base)?;
    let mut inputs = vec![diagram_path, review_path];
    inputs.extend(ontology_path);
    check_output(output, &inputs)?;
    let diagram = load_diagram(diagram_path)?;
    let review_text = read_text(review_path)?;
    let ontology = load_ontology(ontology_path, env)?;
    let review = ReviewList::from_json(&review_text, &ontology.prefixes).map_err(|e| match e {
        SessionError::Json(e) => Failure::Usage(format!("malformed review {}: {e}", review_path.display())),
        other => Failure::Failed(format!("{}: {other}", review_path.display())),
    })?;
    validated(&diagram, err)?;

    let fresh = generate_review(&diagram, &ontology)?;
    let selected = apply_selection(&fresh, &review.decisions()).map_err(|e| Failure::Failed(e.to_string()))?;
    for entry in &review.entries {
        let current = fresh.get(entry.id()).expect("ids checked by apply_selection");
        if current.axiom() != entry.axiom() {
            return Err(Failure::Failed(format!(
                "STALE_REVIEW {}: review has `{}` but the inputs now give `{}`; regenerate candidates",
                entry.id(),
                entry.axiom(),
                current.axiom()
            )));
        }
    }

    let mut result = integrate(&selected, &ontology);
    declare_diagram_entities(&mut result, &diagram);
    fs::write(output, render_functional(&result)).map_err(io_failure)?;
    writeln!(out, "{} axioms written", result.len()).map_err(io_failure)
}

fn cmd_render(path: &Path, format: Format, out: &mut dyn Write) -> Outcome {
    let ontology = load_ontology(Some(path), None)?;
    let text = match format {
        Format::Functional => render_functional(&ontology),
        Format::Manchester => render_manchester_document(&ontology)
            .map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))?,
    };
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn cmd_serve(
    addr: SocketAddr,
    static_dir: Option<PathBuf>,
    state_dir: Option<PathBuf>,
    base: &BaseIri,
    out: &mut dyn Write,
) -> Outcome {
    let prefixes = base_env(base)?.unwrap_or_default();
    if let Some(dir) = &static_dir {
        if !dir.is_dir() {
            return Err(Failure::Usage(format!("static directory {} does not exist", dir.display())));
        }
    }
    let config = ServiceConfig {
        prefixes,
        state_dir,
        static_dir,
        ..ServiceConfig::default()
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Failed(e.to_string()))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| Failure::Usage(format!("cannot listen on {addr}: {e}")))?;
        let local = listener.local_addr().map_err(|e| Failure::Failed(e.to_string()))?;
        writeln!(out, "listening on http://{local}").map_err(io_failure)?;
        out.flush().map_err(io_failure)?;
        owlax_service::serve(listener, config)
            .await
            .map_err(|e| Failure::Failed(e.to_string()))
    })
}
