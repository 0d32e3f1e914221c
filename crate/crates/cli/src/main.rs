use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sfm_codesign::analysis::{
    check_selection, closed_loop_digraph, is_structurally_controllable, is_structurally_observable,
};
use sfm_codesign::codesign::{solve_cc, solve_codesign, solve_io, SolveReport};
use sfm_codesign::generator::{generate, GenSpec};
use sfm_codesign::graph::{build_digraph, is_irreducible, to_dot, DotOverlay, Vertex};
use sfm_codesign::model::{parse_instance, SelectionFile};
use sfm_codesign::oracle::{brute_force_codesign, OracleLimits};
use sfm_codesign::{Cost, Error, Instance, Selection};

const EXIT_INFEASIBLE: u8 = 2;
const EXIT_NOT_IRREDUCIBLE: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

/// Minimum-cost co-design of actuators, sensors and feedback links.
#[derive(Parser, Debug)]
#[command(name = "sfm-codesign", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cheapest inputs, outputs and links with no structurally fixed modes.
    Solve { instance: PathBuf },
    /// Cheapest inputs making (A, B) structurally controllable.
    SolveIo { instance: PathBuf },
    /// Cheapest links for the given inputs and outputs.
    SolveCc { instance: PathBuf },
    /// Test a selection for structurally fixed modes.
    CheckSfm {
        instance: PathBuf,
        #[arg(long)]
        selection: PathBuf,
    },
    /// Structural controllability of (A, B), or of (A, B(I)) with a selection.
    CheckCtrb {
        instance: PathBuf,
        #[arg(long)]
        selection: Option<PathBuf>,
    },
    /// Structural observability of (A, C), or of (A, C(J)) with a selection.
    CheckObsv {
        instance: PathBuf,
        #[arg(long)]
        selection: Option<PathBuf>,
    },
    /// Whether D(A) is strongly connected.
    CheckIrreducible { instance: PathBuf },
    /// Exhaustive search over link sets; exponential in p*m.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = OracleLimits::default().max_pairs)]
        max_pairs: usize,
        #[arg(long, default_value_t = OracleLimits::default().max_io)]
        max_io: usize,
    },
    /// Write a seeded random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 0.2)]
        inf_frac: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        cost_min: u32,
        #[arg(long, default_value_t = 20)]
        cost_max: u32,
        /// Skip the Hamiltonian cycle that makes A irreducible.
        #[arg(long)]
        reducible: bool,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of the closed loop.
    ExportDot {
        instance: PathBuf,
        #[arg(long)]
        selection: Option<PathBuf>,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Median solve time per size, as CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "100,200,400")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 7)]
        repeats: usize,
    },
}

enum Failure {
    Data(anyhow::Error),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_DATA)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) => EXIT_INFEASIBLE,
        Error::NotIrreducible => EXIT_NOT_IRREDUCIBLE,
        Error::TooLarge(_) | Error::InvalidSpec(_) => EXIT_USAGE,
        Error::Unverified(_) => 1,
        _ => EXIT_DATA,
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Solve { instance } => {
            let inst = load_instance(&instance)?;
            print_json(&report_json(&solve_codesign(&inst)?));
        }
        Command::SolveIo { instance } => {
            let inst = load_instance(&instance)?;
            let sol = solve_io(inst.a(), inst.b(), inst.cost_u())?;
            let sel = Selection {
                inputs: sol.inputs,
                ..Selection::default()
            };
            print_json(&selection_json(&sel, sol.cost));
        }
        Command::SolveCc { instance } => {
            let inst = load_instance(&instance)?;
            let sol = solve_cc(inst.a(), inst.b(), inst.c(), inst.cost_f())?;
            print_json(&selection_json(&Selection::induced_by(sol.feedback), sol.cost));
        }
        Command::CheckSfm { instance, selection } => {
            let inst = load_instance(&instance)?;
            let sel = load_selection(&selection, &inst)?;
            let cert = check_selection(&inst, &sel)?;
            print_json(&json!({
                "no_sfms": cert.has_no_sfms(),
                "condition_a": cert.condition_a,
                "condition_b": cert.condition_b,
                "reason": cert.failure(),
                "cost": sfm_codesign::selection_cost(&inst, &sel),
            }));
        }
        Command::CheckCtrb { instance, selection } => {
            let inst = load_instance(&instance)?;
            let b = match selection {
                Some(path) => inst.b().keep_columns(&load_selection(&path, &inst)?.inputs),
                None => inst.b().clone(),
            };
            println!("{}", is_structurally_controllable(inst.a(), &b)?);
        }
        Command::CheckObsv { instance, selection } => {
            let inst = load_instance(&instance)?;
            let c = match selection {
                Some(path) => inst.c().keep_rows(&load_selection(&path, &inst)?.outputs),
                None => inst.c().clone(),
            };
            println!("{}", is_structurally_observable(inst.a(), &c)?);
        }
        Command::CheckIrreducible { instance } => {
            let inst = load_instance(&instance)?;
            println!("{}", is_irreducible(inst.a())?);
        }
        Command::Oracle {
            instance,
            max_pairs,
            max_io,
        } => {
            let inst = load_instance(&instance)?;
            let result = brute_force_codesign(&inst, OracleLimits { max_pairs, max_io })?;
            let mut out = report_json(&result.report);
            out["candidates_evaluated"] = json!(result.candidates_evaluated);
            out["elapsed_ms"] = json!(result.elapsed.as_secs_f64() * 1e3);
            print_json(&out);
        }
        Command::Gen {
            n,
            p,
            m,
            density,
            inf_frac,
            seed,
            cost_min,
            cost_max,
            reducible,
            out,
        } => {
            let inst = generate(&GenSpec {
                n,
                p,
                m,
                edge_density: density,
                irreducible: !reducible,
                cost_range: (cost_min, cost_max),
                inf_fraction: inf_frac,
                seed,
            })?;
            let text = serde_json::to_string_pretty(&inst.to_file()).map_err(|e| Failure::Data(e.into()))?;
            emit(out.as_deref(), &text)?;
        }
        Command::ExportDot {
            instance,
            selection,
            out,
        } => {
            let inst = load_instance(&instance)?;
            let dot = match selection {
                Some(path) => {
                    let sel = load_selection(&path, &inst)?;
                    selection_dot(&inst, &sel)?
                }
                None => {
                    let k = inst.candidate_information_pattern();
                    to_dot(&build_digraph(inst.a(), Some(inst.b()), Some(inst.c()), Some(&k))?, None)
                }
            };
            emit(out.as_deref(), &dot)?;
        }
        Command::Bench { sizes, seed, repeats } => bench(&sizes, seed, repeats.max(1))?,
    }
    Ok(())
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let text = read(path)?;
    parse_instance(&text)
        .with_context(|| format!("invalid instance {}", path.display()))
        .map_err(Failure::Data)
}

fn load_selection(path: &Path, inst: &Instance) -> Result<Selection, Failure> {
    let text = read(path)?;
    let parsed = serde_json::from_str::<SelectionFile>(&text)
        .map_err(anyhow::Error::from)
        .and_then(|file| Ok(file.to_selection()?))
        .and_then(|sel| sel.check_against(inst).map(|()| sel).map_err(Into::into));
    parsed
        .with_context(|| format!("invalid selection {}", path.display()))
        .map_err(Failure::Data)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Data)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::Data),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json(value: &Value) {
    println!("{value}");
}

fn selection_json(sel: &Selection, cost: Cost) -> Value {
    serde_json::to_value(SelectionFile::from_selection(sel, Some(cost))).expect("selection serializes")
}

fn report_json(report: &SolveReport) -> Value {
    let mut out = selection_json(&report.selection, report.total_cost);
    out["branch"] = json!(report.branch.name());
    out["verified"] = json!(report.verified);
    out
}

/// Candidate closed loop with the selection overlaid: unselected vertices and
/// links dashed, the certificate's cycle family bold, and the edges inside
/// each feedback component red.
fn selection_dot(inst: &Instance, sel: &Selection) -> Result<String, Failure> {
    let k = inst.candidate_information_pattern();
    let full = build_digraph(inst.a(), Some(inst.b()), Some(inst.c()), Some(&k))?;
    let selected = closed_loop_digraph(inst, sel)?;
    let cert = check_selection(inst, sel)?;

    let mut overlay = DotOverlay::default();
    overlay.unselected.extend(
        (0..inst.p())
            .filter(|i| !sel.inputs.contains(i))
            .map(Vertex::Input)
            .chain((0..inst.m()).filter(|j| !sel.outputs.contains(j)).map(Vertex::Output)),
    );
    overlay.dashed_edges = full.edges().filter(|&(f, t)| !selected.has_edge(f, t)).collect();
    for cycle in cert.cycle_family.iter().flatten() {
        overlay
            .bold_edges
            .extend(cycle.iter().zip(cycle.iter().cycle().skip(1)).map(|(&f, &t)| (f, t)));
    }
    for (component, _) in &cert.feedback_components {
        let members: BTreeSet<Vertex> = component.iter().copied().collect();
        overlay.highlighted_edges.extend(
            selected
                .edges()
                .filter(|(f, t)| members.contains(f) && members.contains(t)),
        );
    }
    Ok(to_dot(&full, Some(&overlay)))
}

fn bench(sizes: &[usize], seed: u64, repeats: usize) -> Outcome {
    println!("size,median_ms");
    for &n in sizes {
        if n == 0 {
            return Err(Failure::Data(anyhow!("bench sizes must be positive")));
        }
        let inst = generate(&GenSpec {
            n,
            p: n / 10,
            m: n / 10,
            edge_density: (4.0 / n as f64).min(1.0),
            seed: seed.wrapping_add(n as u64),
            ..GenSpec::default()
        })?;
        solve_codesign(&inst)?;
        let mut times: Vec<f64> = (0..repeats)
            .map(|_| {
                let start = Instant::now();
                let result = solve_codesign(&inst);
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                std::hint::black_box(result).map(|_| elapsed)
            })
            .collect::<Result<_, Error>>()?;
        times.sort_by(f64::total_cmp);
        println!("{n},{:.3}", times[times.len() / 2]);
    }
    Ok(())
}
