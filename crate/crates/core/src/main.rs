use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ontocdm::diagnostic::has_errors;
use ontocdm::{
    evaluate, parse_ontology, read_model, to_diagram_text, transform, write_model, ConceptualModel,
    DatatypeClasses, Diagnostic, Name, TransformOptions,
};

#[derive(Parser)]
#[command(
    name = "ontocdm",
    version,
    about = "Derive conceptual data models from description-logic ontologies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a conceptual model from an ontology, starting at the seed concepts.
    Transform {
        #[arg(long)]
        ontology: PathBuf,
        /// Comma-separated seed concept names.
        #[arg(long, required = true, value_delimiter = ',')]
        seeds: Vec<Name>,
        #[arg(long)]
        out: PathBuf,
        /// Do not pull in subconcepts of expanded concepts.
        #[arg(long)]
        no_expand_subconcepts: bool,
        /// Classes standing for literal values, as `Name` or `Name=xsd:type`, comma-separated.
        #[arg(long)]
        datatype_classes: Option<DatatypeClasses>,
        /// Also write the model as diagram text.
        #[arg(long)]
        diagram: Option<PathBuf>,
    },
    /// Score a generated model against a gold model.
    Eval {
        #[arg(long)]
        generated: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        /// Relationships must also agree on multiplicity to count as correct.
        #[arg(long)]
        strict_multiplicity: bool,
        /// Write the report as JSON to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print element counts of a model file.
    Stats {
        #[arg(long)]
        model: PathBuf,
    },
    /// Render a model file in another format.
    Emit {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Diagram,
}

/// Reported failure; details have already gone to standard error.
struct Failed;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Transform {
            ontology,
            seeds,
            out,
            no_expand_subconcepts,
            datatype_classes,
            diagram,
        } => {
            let mut opts = TransformOptions::new(seeds);
            opts.expand_subconcepts = !no_expand_subconcepts;
            opts.datatype_classes = datatype_classes.unwrap_or_default();
            run_transform(&ontology, &opts, &out, diagram.as_deref())
        }
        Command::Eval {
            generated,
            gold,
            strict_multiplicity,
            report,
        } => run_eval(&generated, &gold, strict_multiplicity, report.as_deref()),
        Command::Stats { model } => load_model(&model).map(|m| println!("{}", m.stats())),
        Command::Emit {
            model,
            format: Format::Diagram,
            out,
        } => {
            let m = load_model(&model);
            m.and_then(|m| {
                let text = to_diagram_text(&m);
                match out {
                    Some(path) => write_atomic(&path, &text),
                    None => {
                        print!("{text}");
                        Ok(())
                    }
                }
            })
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failed) => ExitCode::FAILURE,
    }
}

fn report(path: &Path, diagnostics: &[Diagnostic]) {
    for d in diagnostics {
        eprintln!("{}: {d}", path.display());
    }
}

fn read_text(path: &Path) -> Result<String, Failed> {
    fs::read(path)
        .map(|b| String::from_utf8_lossy(&b).into_owned())
        .map_err(|e| {
            eprintln!("error: cannot read {}: {e}", path.display());
            Failed
        })
}

fn load_model(path: &Path) -> Result<ConceptualModel, Failed> {
    read_model(&read_text(path)?).map_err(|e| {
        report(path, &[e.diagnostic()]);
        Failed
    })
}

/// Writes to a temporary file next to `path` and renames it into place, so a
/// failed run leaves no partial output.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failed> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let result = tempfile::NamedTempFile::new_in(dir)
        .and_then(|mut f| f.write_all(contents.as_bytes()).map(|()| f))
        .and_then(|f| f.persist(path).map_err(|e| e.error));
    result.map(drop).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        Failed
    })
}

fn run_transform(
    ontology: &Path,
    opts: &TransformOptions,
    out: &Path,
    diagram: Option<&Path>,
) -> Result<(), Failed> {
    let text = read_text(ontology)?;
    let (mut o, diagnostics) = parse_ontology(&text);
    report(ontology, &diagnostics);
    if has_errors(&diagnostics) {
        return Err(Failed);
    }
    let diagnostics = o.validate();
    report(ontology, &diagnostics);
    if has_errors(&diagnostics) {
        return Err(Failed);
    }
    let transformed = transform(&o, opts).map_err(|e| {
        report(ontology, &[e.diagnostic()]);
        Failed
    })?;
    report(ontology, &transformed.diagnostics);
    // Render both before writing either, so a failure leaves neither behind.
    let model_text = write_model(&transformed.model);
    let diagram_text = diagram.map(|_| to_diagram_text(&transformed.model));
    write_atomic(out, &model_text)?;
    if let (Some(path), Some(text)) = (diagram, diagram_text) {
        write_atomic(path, &text)?;
    }
    Ok(())
}

fn run_eval(
    generated: &Path,
    gold: &Path,
    strict: bool,
    report_path: Option<&Path>,
) -> Result<(), Failed> {
    let generated = load_model(generated)?;
    let gold = load_model(gold)?;
    let r = evaluate(&generated, &gold, strict);
    print!("{r}");
    if let Some(path) = report_path {
        write_atomic(path, &r.to_json())?;
    }
    Ok(())
}
