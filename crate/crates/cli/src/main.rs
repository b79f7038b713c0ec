use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use circord::congruence::{apply_steps, atomic_decomposition, Composition};
use circord::galois::{basic_circuit, concept_lattice, verify_sandwich_with_budget};
use circord::search::{
    endomorphisms_with_budget, find_isomorphism_with_budget, find_morphism_with_budget, DEFAULT_BUDGET,
};
use circord::text::{self, Declaration, Document, MorphismDecl};
use circord::{classify_elementary, factorise, quotient_circuit, Error, Factorisation};
use clap::{Args, Parser, Subcommand};

/// Analyse circuits over partial orders described in `.circ` files.
///
/// Exit status: 0 success or affirmative answer, 1 negative answer,
/// 2 usage or input error, 3 search budget exceeded.
#[derive(Parser, Debug)]
#[command(name = "circord", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report to this file instead of stdout.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Maximum number of search nodes for morphism searches.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct Input {
    /// A `.circ` file.
    file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a file and summarise its declarations.
    Validate(Input),
    /// Print the connectivity relation of a circuit.
    Connectivity {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        circuit: String,
        /// Name of the emitted relation.
        #[arg(long, default_value = "G")]
        name: String,
    },
    /// Render a circuit as a Graphviz digraph.
    Dot {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        circuit: String,
    },
    /// Check that a declared morphism satisfies all three clauses.
    MorphismCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        morphism: String,
    },
    /// Search for a morphism between two circuits.
    MorphismFind {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Name of the emitted morphism.
        #[arg(long, default_value = "f")]
        name: String,
    },
    /// Decide whether morphisms exist in both directions.
    Equivalent {
        #[command(flatten)]
        input: Input,
        left: String,
        right: String,
    },
    /// Split a morphism into its four elementary stages.
    Factorise {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        morphism: String,
    },
    /// Quotient a circuit by a declared partition.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        partition: String,
        /// Name of the emitted circuit (default: CIRCUIT_by_PARTITION).
        #[arg(long)]
        name: Option<String>,
    },
    /// List the atomic merges that make up a quotient.
    AtomicDecomp {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        partition: String,
    },
    /// Emit the concept lattice circuit of a relation.
    ConceptLattice {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        relation: String,
        /// Name of the emitted circuit (default: L_RELATION).
        #[arg(long)]
        name: Option<String>,
    },
    /// Emit the basic circuit of a relation.
    BasicCircuit {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        relation: String,
        /// Name of the emitted circuit (default: B_RELATION).
        #[arg(long)]
        name: Option<String>,
    },
    /// Decide whether a circuit lies between the basic circuit and the
    /// concept lattice of a relation.
    Sandwich {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        relation: String,
        #[arg(long)]
        circuit: String,
    },
    /// List every endomorphism of a circuit.
    Endos {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        circuit: String,
    },
}

/// Report text plus exit status.
struct Outcome {
    report: String,
    negative: bool,
    diagnostic: Option<String>,
}

impl Outcome {
    fn yes(report: String) -> Self {
        Self {
            report,
            negative: false,
            diagnostic: None,
        }
    }

    fn no(report: String, diagnostic: impl Into<String>) -> Self {
        Self {
            report,
            negative: true,
            diagnostic: Some(diagnostic.into()),
        }
    }
}

enum Failure {
    Io(PathBuf, io::Error),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))?;
    text::parse(&text).map_err(|e| match e {
        Error::Syntax { line, col, message } => Failure::Lib(Error::Syntax {
            line,
            col,
            message: format!("{}: {message}", path.display()),
        }),
        other => Failure::Lib(other),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let budget = cli.budget;
    match &cli.command {
        Command::Validate(input) => {
            let doc = load(&input.file)?;
            let mut report = String::new();
            for (name, decl) in doc.iter() {
                let _ = match decl {
                    Declaration::Circuit(c) => writeln!(
                        report,
                        "circuit {name}: {} gates, {} inputs, {} outputs",
                        c.len(),
                        c.inputs().len(),
                        c.outputs().len()
                    ),
                    Declaration::Relation(r) => writeln!(
                        report,
                        "relation {name}: {} inputs, {} outputs, {} pairs",
                        r.inputs().len(),
                        r.outputs().len(),
                        r.pairs().len()
                    ),
                    Declaration::Partition(p) => writeln!(
                        report,
                        "partition {name} of {}: {} blocks",
                        p.circuit,
                        p.equivalence.num_blocks()
                    ),
                    Declaration::Morphism(m) => writeln!(
                        report,
                        "morphism {name} : {} -> {}: {}",
                        m.source,
                        m.target,
                        if m.morphism.is_valid() { "valid" } else { "not a morphism" }
                    ),
                };
            }
            Ok(Outcome::yes(report))
        }
        Command::Connectivity { input, circuit, name } => {
            let doc = load(&input.file)?;
            let g = doc.circuit(circuit)?.connectivity();
            Ok(Outcome::yes(text::relation_decl(name, &g)))
        }
        Command::Dot { input, circuit } => {
            let doc = load(&input.file)?;
            Ok(Outcome::yes(text::to_dot(circuit, doc.circuit(circuit)?)))
        }
        Command::MorphismCheck { input, morphism } => {
            let doc = load(&input.file)?;
            let f = &doc.morphism(morphism)?.morphism;
            match f.violation() {
                Some(v) => Ok(Outcome::no(
                    format!("invalid ({})\n", v.clause()),
                    format!("{morphism}: {v}"),
                )),
                None => {
                    let kinds = classify_elementary(f)?;
                    let mut report = String::from("valid\n");
                    let flags: Vec<&str> = kinds.flags.iter().map(|k| k.as_str()).collect();
                    if !flags.is_empty() {
                        let _ = writeln!(report, "elementary: {}", flags.join(" "));
                    }
                    Ok(Outcome::yes(report))
                }
            }
        }
        Command::MorphismFind { input, from, to, name } => {
            let doc = load(&input.file)?;
            let (p, q) = (doc.circuit(from)?, doc.circuit(to)?);
            match find_morphism_with_budget(p, q, budget)? {
                Some(f) => Ok(Outcome::yes(text::morphism_decl(name, from, to, &f))),
                None => Ok(Outcome::no(String::new(), format!("no morphism from {from} to {to}"))),
            }
        }
        Command::Equivalent { input, left, right } => {
            let doc = load(&input.file)?;
            let (p, q) = (doc.circuit(left)?, doc.circuit(right)?);
            let forward = find_morphism_with_budget(p, q, budget)?.is_some();
            let backward = find_morphism_with_budget(q, p, budget)?.is_some();
            let iso = if p.same_boundary(q) {
                find_isomorphism_with_budget(p, q, budget)?.is_some()
            } else {
                false
            };
            let report = format!(
                "{left} -> {right}: {}\n{right} -> {left}: {}\nisomorphic: {}\n",
                yes_no(forward),
                yes_no(backward),
                yes_no(iso)
            );
            if forward && backward {
                Ok(Outcome::yes(report))
            } else {
                Ok(Outcome::no(report, format!("{left} and {right} are not equivalent")))
            }
        }
        Command::Factorise { input, morphism } => {
            let doc = load(&input.file)?;
            let decl = doc.morphism(morphism)?;
            let fac = factorise(&decl.morphism)?;
            Ok(Outcome::yes(factorisation_text(morphism, decl, &fac)?))
        }
        Command::Quotient { input, partition, name } => {
            let doc = load(&input.file)?;
            let p = doc.partition(partition)?;
            let c = doc.circuit(&p.circuit)?;
            let name = name.clone().unwrap_or_else(|| format!("{}_by_{partition}", p.circuit));
            match quotient_circuit(c, &p.equivalence) {
                Ok(q) => Ok(Outcome::yes(text::circuit_decl(&name, &q))),
                Err(e @ Error::NotCompatible(..)) => Ok(Outcome::no(String::new(), e.to_string())),
                Err(e) => Err(e.into()),
            }
        }
        Command::AtomicDecomp { input, partition } => {
            let doc = load(&input.file)?;
            let p = doc.partition(partition)?;
            let c = doc.circuit(&p.circuit)?;
            let steps = match atomic_decomposition(c.gates(), &p.equivalence) {
                Ok(steps) => steps,
                Err(e @ Error::NotCompatible(..)) => return Ok(Outcome::no(String::new(), e.to_string())),
                Err(e) => return Err(e.into()),
            };
            let mut report = String::new();
            for (k, step) in steps.iter().enumerate() {
                let kind = match step.kind {
                    Composition::Sequential => "sequential",
                    Composition::Parallel => "parallel",
                };
                let _ = writeln!(
                    report,
                    "{}. merge {} {} ({kind})",
                    k + 1,
                    text::quote_ident(&step.names.0),
                    text::quote_ident(&step.names.1)
                );
            }
            let result = apply_steps(c, &steps)?;
            report.push('\n');
            report.push_str(&text::circuit_decl(&format!("{}_by_{partition}", p.circuit), &result));
            Ok(Outcome::yes(report))
        }
        Command::ConceptLattice { input, relation, name } => {
            let doc = load(&input.file)?;
            let l = concept_lattice(doc.relation(relation)?);
            let name = name.clone().unwrap_or_else(|| format!("L_{relation}"));
            Ok(Outcome::yes(text::circuit_decl(&name, &l)))
        }
        Command::BasicCircuit { input, relation, name } => {
            let doc = load(&input.file)?;
            let b = basic_circuit(doc.relation(relation)?);
            let name = name.clone().unwrap_or_else(|| format!("B_{relation}"));
            Ok(Outcome::yes(text::circuit_decl(&name, &b)))
        }
        Command::Sandwich { input, relation, circuit } => {
            let doc = load(&input.file)?;
            let (g, p) = (doc.relation(relation)?, doc.circuit(circuit)?);
            let report = verify_sandwich_with_budget(g, p, budget)?;
            if !report.holds() {
                return Err(Error::Internal(format!(
                    "sandwich biconditional fails for {relation} and {circuit}"
                ))
                .into());
            }
            let text = format!(
                "connectivity of {circuit} equals {relation}: {}\nbasic circuit -> {circuit}: {}\n{circuit} -> concept lattice: {}\n",
                yes_no(report.connectivity_matches),
                yes_no(report.from_basic.is_some()),
                yes_no(report.to_lattice.is_some()),
            );
            if report.in_interval() {
                Ok(Outcome::yes(text))
            } else {
                Ok(Outcome::no(text, format!("{circuit} does not realise {relation}")))
            }
        }
        Command::Endos { input, circuit } => {
            let doc = load(&input.file)?;
            let c = doc.circuit(circuit)?;
            let endos = endomorphisms_with_budget(c, budget)?;
            let decls: Vec<String> = endos
                .iter()
                .enumerate()
                .map(|(k, f)| text::morphism_decl(&format!("e{k}"), circuit, circuit, f))
                .collect();
            Ok(Outcome::yes(decls.join("\n")))
        }
    }
}

fn factorisation_text(name: &str, decl: &MorphismDecl, fac: &Factorisation) -> Result<String, Error> {
    let mut doc = Document::new();
    let f = &decl.morphism;
    doc.insert(decl.source.clone(), Declaration::Circuit(f.source().clone()))?;
    if decl.target != decl.source {
        doc.insert(decl.target.clone(), Declaration::Circuit(f.target().clone()))?;
    }
    let mids = [
        format!("{name}_1_quotient"),
        format!("{name}_2_padded"),
        format!("{name}_3_retargeted"),
    ];
    for (mid, c) in mids.iter().zip(&fac.intermediates) {
        doc.insert(mid.clone(), Declaration::Circuit(c.clone()))?;
    }
    let ends = [&decl.source, &mids[0], &mids[1], &mids[2], &decl.target];
    for (k, stage) in fac.stages.iter().enumerate() {
        doc.insert(
            format!("{name}_stage{}", k + 1),
            Declaration::Morphism(MorphismDecl {
                source: ends[k].clone(),
                target: ends[k + 1].clone(),
                morphism: stage.clone(),
            }),
        )?;
    }
    Ok(text::serialise(&doc))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Some(d) = &outcome.diagnostic {
                eprintln!("{d}");
            }
            let written = match &cli.output {
                Some(path) => fs::write(path, &outcome.report),
                None => io::stdout().write_all(outcome.report.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.negative { 1 } else { 0 })
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(2)
        }
        Err(Failure::Lib(e @ Error::BudgetExceeded(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
