//! `ginzburg`: quiver, module and stability computations from JSON documents.
//!
//! Exit status is 0 on success, 1 on domain or input errors and 2 on usage errors.

mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ginzburg_modules::decomp::{decompose_with, refine_single_cycle, verify_tree, DEFAULT_NODE_BUDGET};
use ginzburg_modules::doc;
use ginzburg_modules::ginzburg::{GinzburgPresentation, Mode};
use ginzburg_modules::pmod::ProperModule;
use ginzburg_modules::quiver::{jacobi, GradedQuiver, DEFAULT_CYC_BUDGET};
use ginzburg_modules::stab::{hn_filtration, validate_stability};

use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "ginzburg",
    version,
    about = "Proper modules over Ginzburg dg algebras of graded quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Commutator,
    Theorem65,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Commutator => Mode::Commutator,
            ModeArg::Theorem65 => Mode::Theorem65,
        }
    }
}

#[derive(Args, Debug)]
struct QuiverArgs {
    /// Quiver document (JSON).
    #[arg(short = 'q', long = "quiver", value_name = "FILE")]
    quiver: Option<PathBuf>,
    /// Quiver document, as a positional alternative to `-q`.
    #[arg(value_name = "QUIVER", conflicts_with = "quiver")]
    quiver_pos: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    #[command(flatten)]
    q: QuiverArgs,
    /// Module document (JSON).
    #[arg(short = 'm', long = "module", value_name = "FILE")]
    module: PathBuf,
    /// Presentation used for the module's generators.
    #[arg(long, value_enum, default_value = "commutator")]
    mode: ModeArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a quiver document and summarize it.
    Validate(QuiverArgs),
    /// Decide whether vertex shifts and arrow reversals bring every degree into (2-n, 0].
    Normalize(QuiverArgs),
    /// List the simple degree-0 cycles.
    Cycles(QuiverArgs),
    /// List the connected unions of degree-0 cycles, up to equal arrow sets.
    Cyc {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long, default_value_t = DEFAULT_CYC_BUDGET)]
        budget: usize,
    },
    /// List the generator supports: vertices, then cycle classes.
    Bset {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long, default_value_t = DEFAULT_CYC_BUDGET)]
        budget: usize,
    },
    /// Vertex classes of the degree-0 sub-quiver and their order.
    Classes(QuiverArgs),
    /// Jacobi-finiteness verdict with its witness.
    Jacobi(QuiverArgs),
    /// Presentation, truncated morphism complexes and the d-squared check.
    Algebra {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long, value_enum, default_value = "commutator")]
        mode: ModeArg,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
    },
    /// Validate a module document against the quiver's relations.
    Check(ModuleArgs),
    /// Generator certificate for a support label such as `x@0` or `a,b@0`.
    Isgen {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long)]
        label: String,
    },
    /// Decomposition tree of a module.
    Decompose {
        #[command(flatten)]
        m: ModuleArgs,
        /// Refine leaves supported on one simple cycle by the monodromy canonical form.
        #[arg(long)]
        refine: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
    /// Harder-Narasimhan filtration of a degree-0 module.
    Hn {
        #[command(flatten)]
        m: ModuleArgs,
        /// Stability document (JSON).
        #[arg(short = 's', long = "stability", value_name = "FILE")]
        stability: PathBuf,
    },
    /// Canonical-form refinement of a module that is a single-cycle generator.
    Refine(ModuleArgs),
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_quiver(a: &QuiverArgs) -> anyhow::Result<GradedQuiver> {
    let path = a
        .quiver
        .as_ref()
        .or(a.quiver_pos.as_ref())
        .ok_or_else(|| anyhow!("a quiver document is required (-q FILE)"))?;
    Ok(doc::parse_quiver(&read(path)?)?)
}

fn load_module(a: &ModuleArgs) -> anyhow::Result<(Arc<GinzburgPresentation>, ProperModule)> {
    let q = load_quiver(&a.q)?;
    let pres = Arc::new(GinzburgPresentation::new(&q, a.mode.into())?);
    let m = doc::parse_module(&pres, &read(&a.module)?)?;
    Ok((pres, m))
}

fn run(cmd: &Command) -> anyhow::Result<Report> {
    Ok(match cmd {
        Command::Validate(a) => report::validate(&load_quiver(a)?),
        Command::Normalize(a) => report::normalize(&load_quiver(a)?.normalize_grading()?),
        Command::Cycles(a) => report::cycles(&load_quiver(a)?.zero_cycles()?),
        Command::Cyc { q, budget } => report::cyc(&load_quiver(q)?.cyc_classes(*budget)?),
        Command::Bset { q, budget } => report::bset(&load_quiver(q)?.bset(*budget)?),
        Command::Classes(a) => {
            let q = load_quiver(a)?;
            report::classes(&q, &q.vertex_classes()?)
        }
        Command::Jacobi(a) => report::jacobi(&jacobi(&load_quiver(a)?)?),
        Command::Algebra { q, mode, maxlen } => {
            let pres = GinzburgPresentation::new(&load_quiver(q)?, (*mode).into())?;
            report::algebra(&pres, *maxlen)
        }
        Command::Check(a) => report::check(&load_module(a)?.1),
        Command::Isgen { m, label } => {
            let (_, module) = load_module(m)?;
            let cert = module.is_generator(&doc::parse_label(label)?)?;
            report::certificate(&cert)
        }
        Command::Decompose { m, refine, budget } => {
            let (_, module) = load_module(m)?;
            let tree = decompose_with(&module, *budget, *refine)?;
            let check = verify_tree(&module, &tree);
            report::tree(&tree, &check)
        }
        Command::Hn { m, stability } => {
            let (pres, module) = load_module(m)?;
            let charges = doc::parse_stability(&read(stability)?)?;
            let sigma = validate_stability(pres.quiver(), &charges)?;
            report::hn(&hn_filtration(&sigma, &module)?)
        }
        Command::Refine(a) => {
            let (_, module) = load_module(a)?;
            let cert = module.is_generator(&module.assigned_support()?)?;
            report::refinement(&refine_single_cycle(&module, &cert)?)
        }
    })
}

fn format_of(cmd: &Command) -> Format {
    match cmd {
        Command::Validate(a)
        | Command::Normalize(a)
        | Command::Cycles(a)
        | Command::Classes(a)
        | Command::Jacobi(a) => a.format,
        Command::Cyc { q, .. } | Command::Bset { q, .. } | Command::Algebra { q, .. } => q.format,
        Command::Check(m) | Command::Refine(m) => m.q.format,
        Command::Isgen { m, .. } | Command::Decompose { m, .. } | Command::Hn { m, .. } => m.q.format,
    }
}

/// The error variant name, for structured diagnostics.
fn error_kind(e: &anyhow::Error) -> String {
    match e.downcast_ref::<ginzburg_modules::Error>() {
        Some(err) => {
            let dbg = format!("{err:?}");
            dbg.split(|c: char| !c.is_alphanumeric())
                .next()
                .unwrap_or("Error")
                .to_string()
        }
        None => "Input".into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let format = format_of(&cli.command);
    match run(&cli.command) {
        Ok(r) => {
            let out = match format {
                Format::Text => r.text,
                Format::Json => report::to_pretty(&r.json) + "\n",
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            let message = format!("{e:#}");
            match format {
                Format::Text => eprintln!("error: {message}"),
                Format::Json => {
                    let v = serde_json::json!({ "error": { "kind": error_kind(&e), "message": message } });
                    println!("{}", report::to_pretty(&v));
                }
            }
            ExitCode::from(1)
        }
    }
}
