//! `qcentral`: command-line front end for the q-central duality workbench.

mod commands;
mod group_input;
mod report;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcentral::duality::TripleKind;
use qcentral::free_model::Variant;
use qcentral::group::DEFAULT_ORDER_CAP;
use qcentral::zq::Modulus;
use thiserror::Error;

use commands::Run;
use report::Output;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] qcentral::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "qcentral", version, about = "q-central series, low-degree cohomology and duality checks for finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,
    /// Largest group order for which the full H^2 is computed.
    #[arg(long, global = true, default_value_t = qcentral::cohomology::DEFAULT_H2_CAP)]
    h2_cap: usize,
    /// Worker threads for independent report items.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Also write the JSON report (or, for free-model, the group table) here.
    #[arg(long, global = true)]
    emit: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// JSON group document with one of "preset", "permutations", "table".
    #[arg(long)]
    group: Option<PathBuf>,
    /// Preset name, optionally with arguments: heisenberg(3), cyclic(n=16), sharp(d=2,q=3).
    #[arg(long)]
    preset: Option<String>,
    /// Preset parameters as k=v.
    #[arg(long, num_args = 1..)]
    params: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The q-central series, G_(3), and the quotients G^[2], G^[3], G_[3].
    Series {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// H^1, H^2, decomposable classes, Bockstein image, hat ring.
    Cohomology {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        q: u32,
        /// Top tensor degree of the hat ring.
        #[arg(long, default_value_t = 3)]
        deg: usize,
    },
    /// Substitution and transgression pairings for the duality triples.
    Pairing {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        triple: Option<TripleKind>,
    },
    /// Duality conditions (a)-(f), triple axioms and the quotient harness.
    DualityCheck {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        triple: Option<TripleKind>,
        /// Skip the harness over normal subgroups of T(G).
        #[arg(long)]
        no_harness: bool,
    },
    /// G_(3) against kernels of epimorphisms onto the small quotient list.
    TheoremD {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Builds the sharp or flat free level-3 model.
    FreeModel {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::Sharp)]
        variant: VariantArg,
    },
    /// Rebuilds G/T_0(G) from inflation kernel data.
    Reconstruct {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        triple: Option<TripleKind>,
    },
    /// Runs a packaged verification suite ("all" runs every suite).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Sharp,
    Flat,
}

fn modulus(q: u32) -> Result<Modulus, CliError> {
    Modulus::new(q).map_err(|e| CliError::Usage(e.to_string()))
}

fn load(args: &GroupArgs, cap: usize, run: &mut Run) -> Result<qcentral::group::FiniteGroup, CliError> {
    let (g, text) = group_input::load_group(args.group.as_deref(), args.preset.as_deref(), &args.params, cap)?;
    run.report.arg("group", text);
    run.report.data("group_order", g.order());
    Ok(g)
}

fn execute(cli: &Cli) -> Result<Run, CliError> {
    let cap = cli.max_order;
    let run = match &cli.command {
        Command::Series { group, q, depth } => {
            let mut run = Run::new("series");
            let g = load(group, cap, &mut run)?;
            run.report.arg("q", q);
            run.report.arg("depth", depth);
            commands::series(&mut run, &g, modulus(*q)?, *depth)?;
            run
        }
        Command::Cohomology { group, q, deg } => {
            let mut run = Run::new("cohomology");
            let g = load(group, cap, &mut run)?;
            run.report.arg("q", q);
            run.report.arg("deg", deg);
            commands::cohomology(&mut run, &g, modulus(*q)?, *deg, cli.h2_cap)?;
            run
        }
        Command::Pairing { group, q, triple } => {
            let mut run = Run::new("pairing");
            let g = load(group, cap, &mut run)?;
            run.report.arg("q", q);
            if let Some(t) = triple {
                run.report.arg("triple", t);
            }
            commands::pairing(&mut run, &g, modulus(*q)?, *triple)?;
            run
        }
        Command::DualityCheck {
            group,
            q,
            triple,
            no_harness,
        } => {
            let mut run = Run::new("duality-check");
            let g = load(group, cap, &mut run)?;
            run.report.arg("q", q);
            if let Some(t) = triple {
                run.report.arg("triple", t);
            }
            commands::duality_check(&mut run, &g, modulus(*q)?, *triple, !no_harness)?;
            run
        }
        Command::TheoremD { group, p, q } => {
            let mut run = Run::new("theorem-d");
            let g = load(group, cap, &mut run)?;
            let from_q = q.map(|q| Modulus::new(q).map(|m| m.p())).transpose()?;
            let p = match (p, from_q) {
                (Some(p), Some(qp)) if *p != qp => {
                    return Err(CliError::Usage(format!("--q is not a power of --p = {p}")));
                }
                (Some(p), _) => *p,
                (None, Some(qp)) => qp,
                (None, None) => return Err(CliError::Usage("theorem-d needs --p or --q".into())),
            };
            run.report.arg("p", p);
            commands::theorem_d(&mut run, &g, p)?;
            run
        }
        Command::FreeModel { d, q, variant } => {
            let mut run = Run::new("free-model");
            let v = match variant {
                VariantArg::Sharp => Variant::Sharp,
                VariantArg::Flat => Variant::Flat,
            };
            run.report.arg("d", d);
            run.report.arg("q", q);
            run.report.arg("variant", format!("{variant:?}").to_lowercase());
            let g = commands::free_model(&mut run, *d, modulus(*q)?, v, cap)?;
            if let Some(path) = &cli.emit {
                let doc = group_input::table_document(&g);
                std::fs::write(path, serde_json::to_string(&doc).expect("group document serializes"))?;
                run.report.check("emit", report::Status::Pass, format!("table of order {}", g.order()));
            }
            run
        }
        Command::Reconstruct { group, q, triple } => {
            let mut run = Run::new("reconstruct");
            let g = load(group, cap, &mut run)?;
            run.report.arg("q", q);
            if let Some(t) = triple {
                run.report.arg("triple", t);
            }
            commands::reconstruct(&mut run, &g, modulus(*q)?, *triple)?;
            run
        }
        Command::Verify { suite } => {
            let mut run = Run::new("verify");
            run.report.arg("suite", suite);
            for (s, mut c, ms) in verify::run_suite(suite, cli.jobs)? {
                c.name = format!("{s}: {}", c.name);
                run.timing.insert(c.name.clone(), ms);
                run.report.checks.push(c);
            }
            run
        }
    };
    Ok(run)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("qcentral: {e}");
            return ExitCode::from(2);
        }
    };
    let out = Output {
        report: run.report,
        timing_ms: run.timing,
    };
    let json = serde_json::to_string_pretty(&out).expect("report serializes");
    if let Some(path) = &cli.emit {
        if !matches!(cli.command, Command::FreeModel { .. }) {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("qcentral: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    let text = match cli.format {
        Format::Json => format!("{json}\n"),
        Format::Md => out.report.markdown(&out.timing_ms),
    };
    // A closed pipe downstream is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(out.report.exit_code() as u8)
}
