use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cutlift_core::hamiltonian::{self, qmc_hamiltonian, LocalHamiltonian};
use cutlift_core::{cloud, ptas, spectral, spin};
use cutlift_core::{Error, Graph, HalfInt, NamedGraph, ReductionBundle, VerificationReport};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "cutlift",
    version,
    about = "Rank-k Max-Cut and Quantum Max-Cut reductions and verifiers"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override the tolerance of every claim in a verification report.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named graph.
    Gen(GenArgs),
    #[command(subcommand)]
    Reduce(ReduceCommand),
    #[command(subcommand)]
    Solve(SolveCommand),
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Choose η and α for a target ratio β from a bundle's certified constants.
    Plan(PlanArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Cycle,
    Path,
    Er,
    Bipartite,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Edge probability for `er`.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Right side size for `bipartite` (defaults to n).
    #[arg(long)]
    right: Option<usize>,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Build the rank-(k+1) instance G′ from a graph.
    Ptas {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        eta: usize,
        /// Expander degree. Defaults to min(4, 2·eta·m).
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 0.1)]
        gap: f64,
    },
    /// Replace each qubit by a cloud of T qubits.
    Cloud {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "T")]
        t: usize,
    },
}

#[derive(Subcommand)]
enum SolveCommand {
    /// Rank-k Max-Cut: exhaustive for k = 1 on small graphs, ascent otherwise.
    Rankcut {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
    },
    /// Largest eigenvalue of a Hamiltonian (a graph means its QMC Hamiltonian).
    QmcExact {
        #[arg(long)]
        input: PathBuf,
    },
    /// Best product state found by Bloch-vector ascent.
    Product {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Closed form of the triangle gadget against numerical maximization.
    Triangle {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Energy bound on a certified bipartite expander.
    Bipartite {
        /// Use this bipartite graph instead of generating an expander.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Half size of the generated expander.
        #[arg(long, default_value_t = 12)]
        half: usize,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 0.1)]
        gap: f64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Uniform random assignments.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Locally ascended assignments.
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Witness and pullback bounds of the reduction on a bundle from `reduce ptas`.
    Ptas {
        #[arg(long, alias = "bundle")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Product-state sandwich bounds for the cloud Hamiltonian.
    Sandwich {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "T")]
        t: usize,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
    /// Spin-J upper bound by a scaled product optimum.
    Lieb {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated spins such as `1/2,1,3/2`; omit to sweep all
        /// spin vectors up to --max-dim.
        #[arg(long = "J")]
        spins: Option<String>,
        #[arg(long, default_value_t = 64)]
        max_dim: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Tensor-power block structure, and optionally the sector maximum of a
    /// Hamiltonian's cloud blowup.
    Blocks {
        #[arg(long = "T")]
        t: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long)]
    beta: f64,
    #[arg(long, alias = "input")]
    bundle: PathBuf,
}

enum Outcome {
    Artifact(Value),
    Report(VerificationReport),
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    Graph::read(path)
}

/// A Hamiltonian file, or a graph file read as its QMC Hamiltonian.
fn read_hamiltonian(path: &Path) -> Result<LocalHamiltonian, Error> {
    let text = std::fs::read_to_string(path)?;
    let parsed = serde_json::from_str::<Value>(&text).ok();
    if let Some(Value::Object(mut map)) = parsed.filter(|v| v.get("terms").is_some()) {
        // cloud files carry their qubit map alongside the terms
        map.remove("cloud");
        LocalHamiltonian::from_json_str(&Value::Object(map).to_string())
    } else {
        Ok(qmc_hamiltonian(&read_graph(path)?))
    }
}

fn read_bundle(path: &Path) -> Result<ReductionBundle, Error> {
    ReductionBundle::from_json_str(&std::fs::read_to_string(path)?)
}

fn parse_spins(text: &str) -> Result<Vec<HalfInt>, Error> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            let value = match part.split_once('/') {
                Some((num, "2")) => num.parse::<f64>().map(|v| v / 2.0),
                Some(_) => return Err(format!("`{part}` is not a half-integer")),
                None => part.parse::<f64>(),
            }
            .map_err(|e| format!("`{part}`: {e}"))?;
            HalfInt::try_from(value)
        })
        .collect::<Result<_, String>>()
        .map_err(|reason| Error::Format {
            field: "J".into(),
            reason,
        })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Gen(args) => {
            let g = match args.family {
                Family::Complete => Graph::named(NamedGraph::Complete, args.n)?,
                Family::Cycle => Graph::named(NamedGraph::Cycle, args.n)?,
                Family::Path => Graph::named(NamedGraph::Path, args.n)?,
                Family::Er => Graph::named(NamedGraph::ErdosRenyi { p: args.p, seed }, args.n)?,
                Family::Bipartite => {
                    Graph::complete_bipartite(args.n, args.right.unwrap_or(args.n))?
                }
            };
            Outcome::Artifact(g.to_json())
        }
        Command::Reduce(ReduceCommand::Ptas { input, eta, d, gap }) => {
            let g = read_graph(input)?;
            let d = d.unwrap_or_else(|| 4.min(2 * eta * g.m()));
            let bundle = ptas::build_reduction(&g, *eta, d, *gap, seed)?;
            Outcome::Artifact(serde_json::to_value(&bundle)?)
        }
        Command::Reduce(ReduceCommand::Cloud { input, t }) => {
            let (h, map) = cloud::blow_up_hamiltonian(&read_hamiltonian(input)?, *t)?;
            let mut v = h.to_json();
            v["cloud"] = serde_json::to_value(map)?;
            Outcome::Artifact(v)
        }
        Command::Solve(SolveCommand::Rankcut { input, k, restarts }) => {
            let g = read_graph(input)?;
            let (value, assignment, provenance) = ptas::best_known_rankk(&g, *k, *restarts, seed)?;
            Outcome::Artifact(json!({
                "value": value,
                "k": k,
                "provenance": provenance,
                "assignment": assignment,
            }))
        }
        Command::Solve(SolveCommand::QmcExact { input }) => {
            let h = read_hamiltonian(input)?;
            Outcome::Artifact(json!({ "opt": h.opt()?, "n": h.n() }))
        }
        Command::Solve(SolveCommand::Product { input, restarts }) => {
            let h = read_hamiltonian(input)?;
            let r = hamiltonian::opt_prod(&h, *restarts, seed)?;
            Outcome::Artifact(json!({
                "value": r.value,
                "state": r.state,
                "converged": r.converged,
                "sweeps": r.sweeps,
                "provenance": "ascent-lower-bound",
            }))
        }
        Command::Verify(VerifyCommand::Triangle { samples }) => {
            Outcome::Report(ptas::verify_triangle(*samples, 1e-6)?)
        }
        Command::Verify(VerifyCommand::Bipartite {
            input,
            half,
            d,
            gap,
            k,
            samples,
            trials,
        }) => {
            let g = match input {
                Some(path) => read_graph(path)?,
                None => spectral::make_bipartite_expander(*half, *d, *gap, seed)?.0,
            };
            let cert = spectral::certify(&g)?;
            Outcome::Report(ptas::verify_bipartite_bound(
                &g, &cert, *k, *samples, *trials, seed,
            )?)
        }
        Command::Verify(VerifyCommand::Ptas { input, k, trials }) => Outcome::Report(
            ptas::verify_reduction(&read_bundle(input)?, *k, *trials, seed)?,
        ),
        Command::Verify(VerifyCommand::Sandwich { input, t, restarts }) => Outcome::Report(
            cloud::verify_sandwich(&read_hamiltonian(input)?, *t, *restarts, seed)?,
        ),
        Command::Verify(VerifyCommand::Lieb {
            input,
            spins,
            max_dim,
            restarts,
        }) => {
            let h = read_hamiltonian(input)?;
            Outcome::Report(match spins {
                Some(text) => spin::verify_lieb(&h, &parse_spins(text)?, *restarts, seed)?,
                None => spin::verify_lieb_sweep(&h, *max_dim, *restarts, seed)?,
            })
        }
        Command::Verify(VerifyCommand::Blocks { t, input }) => {
            let mut report = spin::verify_block_decomposition(*t)?;
            if let Some(path) = input {
                report.extend(spin::verify_opt_max_j(&read_hamiltonian(path)?, *t)?);
            }
            Outcome::Report(report)
        }
        Command::Plan(PlanArgs { beta, bundle }) => {
            let bundle = read_bundle(bundle)?;
            let plan = ptas::plan_parameters(*beta, &bundle.constants)?;
            Outcome::Artifact(json!({
                "beta": plan.beta,
                "eta": plan.eta,
                "alpha": plan.alpha,
                "alpha_eta_free": plan.alpha_eta_free,
                "bundle_eta": bundle.eta,
                "bundle_eta_sufficient": bundle.eta >= plan.eta,
                "constants": bundle.constants,
            }))
        }
    })
}

fn emit(out: Option<&Path>, value: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n";
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let out = cli.out.as_deref();
    match outcome {
        Outcome::Artifact(value) => {
            if let Err(e) = emit(out, &value) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.is_some() {
                println!("wrote {}", out.unwrap().display());
            }
            ExitCode::SUCCESS
        }
        Outcome::Report(mut report) => {
            if let Some(tol) = cli.tol {
                report = report.with_tolerance(tol);
            }
            report.seed = Some(cli.seed);
            report.wall_time_seconds = started.elapsed().as_secs_f64();
            let value = serde_json::to_value(&report).expect("reports serialize");
            if let Some(path) = out {
                if let Err(e) = emit(Some(path), &value) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            print!("{}", report.summary());
            let failed = report.failures().count();
            println!(
                "{} claims, {} failed{}",
                report.claims.len(),
                failed,
                out.map(|p| format!(", report in {}", p.display()))
                    .unwrap_or_default()
            );
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
