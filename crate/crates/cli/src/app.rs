use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qdist::distinguish::{
    capacity, copies_upper_bound, dist_ops, eb_finite_copy_check, ensemble_holevo_at, fidelity_ops,
    min_copies_perfect, order_disagreement_search, paradox_search, su2_distinguishability, two_unitary_min_overlap,
    verify_ex3, OrderSearchConfig, ParadoxHit, ProbeState, SearchConfig,
};
use qdist::optimize::OptimizerConfig;
use qdist::qstate::{holevo_quantity, uhlmann_fidelity, von_neumann_entropy};
use qdist::verify::{run_suite, Suite};
use qdist::Error;

use crate::fixture::{matrix_to_data, FixtureFile};
use crate::report::{digest, number, RunReport};

#[derive(Debug, Parser)]
#[command(name = "qdist", version, about = "Distinguishability of quantum states, channels and channel ensembles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for optimizer restarts and random searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Optimizer restarts.
    #[arg(long, global = true, default_value_t = 64)]
    pub restarts: usize,
    /// Stop a restart when its windowed improvement falls below this.
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol: f64,
    /// Gradient evaluations per restart.
    #[arg(long, global = true, default_value_t = 2000)]
    pub max_iters: usize,
    /// Trials for searches and property suites.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    pub output: OutputMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Von Neumann entropy of each state in a fixture.
    Entropy { fixture: PathBuf },
    /// Holevo quantity of the state ensemble in a fixture.
    Holevo { fixture: PathBuf },
    /// Uhlmann fidelity of the first two states (or the first state of each of two fixtures).
    Fidelity { fixture: PathBuf, other: Option<PathBuf> },
    /// Holevo quantity of a channel ensemble's outputs at a given probe state.
    HolevoAt {
        fixture: PathBuf,
        /// Fixture whose first state is the probe on d ⊗ d.
        #[arg(long)]
        probe: PathBuf,
    },
    /// Search for the distinguishability of a channel ensemble (lower bound).
    DistOps { fixture: PathBuf },
    /// Search for the fidelity of two channels (upper bound).
    FidOps { fixture: PathBuf, other: Option<PathBuf> },
    /// Search for the capacity of a channel set over priors and probes (lower bound).
    Capacity { fixture: PathBuf },
    /// Closed-form distinguishability of an SU(2) ensemble.
    Su2 { fixture: PathBuf },
    /// Minimum output overlap of two unitaries (eigenphase polygon distance).
    Pair { fixture: PathBuf },
    /// Copies needed to distinguish two qubit unitaries perfectly.
    MinCopies { fixture: PathBuf },
    /// Upper bound on copies needed to identify one of several qubit unitaries.
    CopiesBound { fixture: PathBuf },
    /// Finite-copy fidelity check for two qubit channels.
    EbCheck {
        fixture: PathBuf,
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    /// Random search for ensembles that are pairwise less but jointly more distinguishable.
    Paradox {
        /// Check the bundled three-unitary pair.
        #[arg(long)]
        verify_ex3: bool,
    },
    /// Random search for state ensembles ordered differently by fidelity and Holevo quantity.
    OrderSearch {
        #[arg(long)]
        pure_only: bool,
    },
    /// Run a seeded property suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Parse and validate fixture files.
    Validate { fixtures: Vec<PathBuf> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Entropy { .. } => "entropy",
            Command::Holevo { .. } => "holevo",
            Command::Fidelity { .. } => "fidelity",
            Command::HolevoAt { .. } => "holevo-at",
            Command::DistOps { .. } => "dist-ops",
            Command::FidOps { .. } => "fid-ops",
            Command::Capacity { .. } => "capacity",
            Command::Su2 { .. } => "su2",
            Command::Pair { .. } => "pair",
            Command::MinCopies { .. } => "min-copies",
            Command::CopiesBound { .. } => "copies-bound",
            Command::EbCheck { .. } => "eb-check",
            Command::Paradox { .. } => "paradox",
            Command::OrderSearch { .. } => "order-search",
            Command::Verify { .. } => "verify",
            Command::Validate { .. } => "validate",
        }
    }
}

/// Exit status: success, a failed property check, or invalid input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    CheckFailed = 1,
    Invalid = 2,
}

pub struct Outcome {
    pub report: RunReport,
    pub status: Status,
}

impl Cli {
    fn optimizer(&self) -> Result<OptimizerConfig> {
        let cfg = OptimizerConfig {
            restarts: self.restarts,
            max_iters: self.max_iters,
            tol: self.tol,
            seed: self.seed,
            ..OptimizerConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

struct Inputs {
    files: Vec<FixtureFile>,
    bytes: Vec<Vec<u8>>,
}

impl Inputs {
    fn load(paths: &[&Path]) -> Result<Self> {
        let mut files = Vec::new();
        let mut bytes = Vec::new();
        for p in paths {
            let (f, b) = FixtureFile::load(p)?;
            files.push(f);
            bytes.push(b);
        }
        Ok(Self { files, bytes })
    }

    fn digest(&self, command: &str) -> String {
        let refs: Vec<&[u8]> = self.bytes.iter().map(Vec::as_slice).collect();
        digest(command, &refs)
    }
}

fn paths<'a>(first: &'a Path, other: &'a Option<PathBuf>) -> Vec<&'a Path> {
    let mut v = vec![first];
    v.extend(other.as_deref());
    v
}

fn hit_json(h: &ParadoxHit) -> Value {
    let unitaries = |e: &qdist::distinguish::SU2Ensemble| -> Value {
        e.unitaries().iter().map(|u| json!(matrix_to_data(u))).collect()
    };
    json!({
        "trial": h.trial,
        "d_more": number(h.d_more),
        "d_less": number(h.d_less),
        "overlaps_more": h.overlaps_more.iter().map(|&x| number(x)).collect::<Vec<_>>(),
        "overlaps_less": h.overlaps_less.iter().map(|&x| number(x)).collect::<Vec<_>>(),
        "more": unitaries(&h.more),
        "less": unitaries(&h.less),
    })
}

/// Executes one command. Errors are input or validation failures.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let start = Instant::now();
    let name = cli.command.name();
    let mut status = Status::Success;
    let mut report = match &cli.command {
        Command::Entropy { fixture } => {
            let inp = Inputs::load(&[fixture])?;
            let states = inp.files[0].densities()?;
            let mut r = RunReport::new(name, inp.digest(name), cli.seed).bound("exact");
            for (i, rho) in states.iter().enumerate() {
                r = r.value(&format!("entropy[{i}]"), von_neumann_entropy(rho)?);
            }
            r
        }
        Command::Holevo { fixture } => {
            let inp = Inputs::load(&[fixture])?;
            let v = holevo_quantity(&inp.files[0].state_ensemble()?)?;
            RunReport::new(name, inp.digest(name), cli.seed).value("holevo", v).bound("exact")
        }
        Command::Fidelity { fixture, other } => {
            let inp = Inputs::load(&paths(fixture, other))?;
            let (a, b) = match inp.files.len() {
                1 => (inp.files[0].density(0)?, inp.files[0].density(1)?),
                _ => (inp.files[0].density(0)?, inp.files[1].density(0)?),
            };
            let v = uhlmann_fidelity(&a, &b)?;
            RunReport::new(name, inp.digest(name), cli.seed).value("fidelity", v).bound("exact")
        }
        Command::HolevoAt { fixture, probe } => {
            let inp = Inputs::load(&[fixture, probe])?;
            let e = inp.files[0].ensemble()?;
            let p = ProbeState::new(inp.files[1].pure(0)?, e.dim_in())?;
            let v = ensemble_holevo_at(&e, &p)?;
            RunReport::new(name, inp.digest(name), cli.seed).value("holevo_at", v).bound("lower")
        }
        Command::DistOps { fixture } => {
            let inp = Inputs::load(&[fixture])?;
            let r = dist_ops(&inp.files[0].ensemble()?, &cli.optimizer()?)?;
            RunReport::new(name, inp.digest(name), cli.seed).with_search("dist_ops", &r)
        }
        Command::FidOps { fixture, other } => {
            let inp = Inputs::load(&paths(fixture, other))?;
            let (a, b) = match inp.files.len() {
                1 => (inp.files[0].channel(0)?, inp.files[0].channel(1)?),
                _ => (inp.files[0].channel(0)?, inp.files[1].channel(0)?),
            };
            let r = fidelity_ops(&a, &b, &cli.optimizer()?)?;
            RunReport::new(name, inp.digest(name), cli.seed).with_search("fid_ops", &r)
        }
        Command::Capacity { fixture } => {
            let inp = Inputs::load(&[fixture])?;
            let r = capacity(&inp.files[0].channels()?, &cli.optimizer()?)?;
            RunReport::new(name, inp.digest(name), cli.seed).with_search("capacity", &r)
        }
        Command::Su2 { fixture } => {
            let inp = Inputs::load(&[fixture])?;
            let e = inp.files[0].su2_ensemble()?;
            let (v, g) = su2_distinguishability(&e)?;
            let overlaps: Vec<Value> = e.pairwise_overlaps().into_iter().map(number).collect();
            RunReport::new(name, inp.digest(name), cli.seed)
                .value("su2", v)
                .bound("exact")
                .diag("gram", json!(matrix_to_data(&g)))
                .diag("pairwise_overlaps", overlaps)
        }
        Command::Pair { fixture } => {
            let inp = Inputs::load(&[fixture])?;
            let us = inp.files[0].unitaries()?;
            ensure!(us.len() == 2, "pair needs exactly two unitaries, fixture has {}", us.len());
            let v = two_unitary_min_overlap(&us[0], &us[1])?;
            RunReport::new(name, inp.digest(name), cli.seed).value("min_overlap", v).bound("exact")
        }
        Command::MinCopies { fixture } => {
            let inp = Inputs::load(&[fixture])?;
            let us = inp.files[0].unitaries()?;
            ensure!(us.len() == 2, "min-copies needs exactly two unitaries, fixture has {}", us.len());
            let r = RunReport::new(name, inp.digest(name), cli.seed).bound("exact");
            match min_copies_perfect(&us[0], &us[1]) {
                Ok(n) => r.count("copies", n),
                Err(Error::Never) => r.diag("never", true).message("copies: never"),
                Err(e) => return Err(e.into()),
            }
        }
        Command::CopiesBound { fixture } => {
            let inp = Inputs::load(&[fixture])?;
            let n = copies_upper_bound(&inp.files[0].unitaries()?)?;
            RunReport::new(name, inp.digest(name), cli.seed).count("copies_bound", n).bound("upper")
        }
        Command::EbCheck { fixture, copies } => {
            let inp = Inputs::load(&[fixture])?;
            let f = &inp.files[0];
            ensure!(f.operations.len() == 2, "eb-check needs exactly two operations");
            let rep = eb_finite_copy_check(&f.channel(0)?, &f.channel(1)?, *copies, &cli.optimizer()?)?;
            RunReport::new(name, inp.digest(name), cli.seed)
                .with_search("min_fidelity", &rep.result)
                .diag("copies", rep.copies)
                .diag("not_perfectly_distinguishable", rep.not_perfectly_distinguishable)
                .message(format!("not perfectly distinguishable: {}", rep.not_perfectly_distinguishable))
        }
        Command::Paradox { verify_ex3: check } => {
            let trials = cli.trials.unwrap_or(1000);
            let hits = paradox_search(&SearchConfig { seed: cli.seed, trials })?;
            let mut r = RunReport::new(name, digest(name, &[]), cli.seed)
                .count("hits", hits.len() as u64)
                .diag("trials", trials)
                .diag("hit_list", hits.iter().map(hit_json).collect::<Vec<_>>());
            if *check {
                match verify_ex3()? {
                    Some(h) => {
                        r = r
                            .value("ex3_d_more", h.d_more)
                            .value("ex3_d_less", h.d_less)
                            .diag("ex3", hit_json(&h))
                            .message("ex3: PARADOX CONFIRMED");
                    }
                    None => {
                        status = Status::CheckFailed;
                        r = r.message("ex3: PARADOX NOT CONFIRMED");
                    }
                }
            }
            r
        }
        Command::OrderSearch { pure_only } => {
            let trials = cli.trials.unwrap_or(1000);
            let cfg = OrderSearchConfig {
                seed: cli.seed,
                trials,
                pure_only: *pure_only,
            };
            let hits = order_disagreement_search(&cfg)?;
            let list: Vec<Value> = hits
                .iter()
                .map(|w| {
                    let states = |pair: &[qdist::qstate::DensityMatrix; 2]| -> Value {
                        pair.iter().map(|d| json!(matrix_to_data(d.matrix()))).collect()
                    };
                    json!({
                        "trial": w.trial,
                        "fidelity_first": number(w.fidelity_first),
                        "fidelity_second": number(w.fidelity_second),
                        "holevo_first": number(w.holevo_first),
                        "holevo_second": number(w.holevo_second),
                        "first": states(&w.first),
                        "second": states(&w.second),
                    })
                })
                .collect();
            RunReport::new(name, digest(name, &[]), cli.seed)
                .count("witnesses", hits.len() as u64)
                .diag("trials", trials)
                .diag("pure_only", *pure_only)
                .diag("witness_list", list)
        }
        Command::Verify { suite } => {
            let s: Suite = suite.parse()?;
            let trials = cli.trials.unwrap_or(100);
            let rep = run_suite(s, trials, cli.seed, &cli.optimizer()?)?;
            let mut r = RunReport::new(name, digest(name, &[suite.as_bytes()]), cli.seed)
                .count("failures", rep.failures() as u64)
                .value("worst_violation", rep.worst_violation())
                .diag("suite", s.name())
                .diag("trials", trials)
                .diag("failed_trials", rep.failed_trials.clone());
            let mut checks = Vec::new();
            for c in &rep.checks {
                r = r.message(format!(
                    "check {}: worst {:.3e}, tolerance {:.1e}, failures {}/{}",
                    c.name, c.worst, c.tolerance, c.failures, c.evaluated
                ));
                checks.push(json!({
                    "name": c.name,
                    "tolerance": number(c.tolerance),
                    "worst": number(c.worst),
                    "failures": c.failures,
                    "evaluated": c.evaluated,
                }));
            }
            r = r
                .diag("checks", checks)
                .message(format!("suite {}: {}", s.name(), if rep.passed() { "PASS" } else { "FAIL" }));
            if !rep.passed() {
                status = Status::CheckFailed;
            }
            r
        }
        Command::Validate { fixtures } => {
            if fixtures.is_empty() {
                bail!("no fixtures given");
            }
            let refs: Vec<&Path> = fixtures.iter().map(PathBuf::as_path).collect();
            let inp = Inputs::load(&refs)?;
            let mut r = RunReport::new(name, inp.digest(name), cli.seed).count("fixtures", fixtures.len() as u64);
            for (f, p) in inp.files.iter().zip(fixtures) {
                f.validate().with_context(|| format!("in {}", p.display()))?;
                r = r.message(format!("{}: ok", p.display()));
            }
            r
        }
    };
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(Outcome { report, status })
}
