//! `ssp`: plan, run, and audit online-learning experiments on stochastic
//! shortest path instances.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 numeric
//! non-convergence, 3 aborted run. All randomness flows from `--seeds` and
//! the generator seeds; reruns of the same invocation are byte-identical.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use ssp_core::harness::{
    self, ExperimentConfig, InstanceSpec, LearnerSpec, Perturbation,
};
use ssp_core::planner;
use ssp_core::{oracle, SspError};

#[derive(Parser)]
#[command(name = "ssp", version, about = "Stochastic shortest path learning harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a known instance exactly and print the optimal plan.
    Plan(PlanArgs),
    /// Run a learner for K episodes per seed and write regret CSVs.
    Run(RunArgs),
    /// Generate a hard lower-bound instance, verify it, optionally save it.
    Lb(LbArgs),
    /// Run a learner across a K grid and fit the regret scaling slope.
    Sweep(SweepArgs),
    /// Run the independent verification suites (LP route, enumeration).
    OracleCheck(OracleCheckArgs),
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Instance generator: two-state-lb | lb-multi | random | chain.
    #[arg(long)]
    gen: Option<String>,
    /// Load the instance from a file instead of generating it.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    states: Option<usize>,
    #[arg(long)]
    actions: Option<usize>,
    /// Cost-to-go bound of the lower-bound generators (also the known bound
    /// of the hoeffding-known-b learner).
    #[arg(long)]
    b_star: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    eps_gap: f64,
    /// Special action of the two-state generator.
    #[arg(long, default_value_t = 0)]
    special: usize,
    /// Seed of the instance generator (independent of run seeds).
    #[arg(long, default_value_t = 0)]
    gen_seed: u64,
    #[arg(long, default_value_t = 0.05)]
    min_goal_prob: f64,
    #[arg(long, default_value_t = 0.1)]
    cost_floor: f64,
    /// Chain length for the chain generator.
    #[arg(long)]
    len: Option<usize>,
}

impl InstanceArgs {
    fn is_empty(&self) -> bool {
        self.gen.is_none() && self.file.is_none()
    }

    fn to_spec(&self) -> Result<InstanceSpec, SspError> {
        if let Some(path) = &self.file {
            if self.gen.is_some() {
                return Err(SspError::InvalidArgument(
                    "--gen and --file are mutually exclusive".into(),
                ));
            }
            return Ok(InstanceSpec::File { path: path.clone() });
        }
        let gen = self
            .gen
            .as_deref()
            .ok_or_else(|| SspError::InvalidArgument("missing --gen or --file".into()))?;
        let need = |opt: Option<f64>, name: &str| {
            opt.ok_or_else(|| SspError::InvalidArgument(format!("--gen {gen} requires --{name}")))
        };
        match gen {
            "two-state-lb" => Ok(InstanceSpec::TwoStateLb {
                num_actions: self.actions.unwrap_or(16),
                b_star: need(self.b_star, "b-star")?,
                eps_gap: self.eps_gap,
                special: self.special,
            }),
            "lb-multi" => Ok(InstanceSpec::LbMulti {
                num_states: self
                    .states
                    .ok_or_else(|| SspError::InvalidArgument("--gen lb-multi requires --states".into()))?,
                num_actions: self.actions.unwrap_or(16),
                b_star: need(self.b_star, "b-star")?,
                eps_gap: self.eps_gap,
                seed: self.gen_seed,
            }),
            "random" => Ok(InstanceSpec::Random {
                seed: self.gen_seed,
                num_states: self
                    .states
                    .ok_or_else(|| SspError::InvalidArgument("--gen random requires --states".into()))?,
                num_actions: self
                    .actions
                    .ok_or_else(|| SspError::InvalidArgument("--gen random requires --actions".into()))?,
                min_goal_prob: self.min_goal_prob,
                cost_floor: self.cost_floor,
            }),
            "chain" => Ok(InstanceSpec::Chain {
                len: self
                    .len
                    .ok_or_else(|| SspError::InvalidArgument("--gen chain requires --len".into()))?,
            }),
            other => Err(SspError::InvalidArgument(format!("unknown generator '{other}'"))),
        }
    }
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Sup-norm tolerance; tight enough that the 12 printed decimals are
    /// exact on well-conditioned instances.
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_iter: usize,
    /// Also print the plan as a TOML block.
    #[arg(long)]
    toml: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Learner: hoeffding-known-b | hoeffding | bernstein.
    #[arg(long)]
    learner: Option<String>,
    /// Episodes per seed.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    /// Seed list: "0..9" (inclusive), "0,3,7", or a single seed.
    #[arg(long)]
    seeds: Option<String>,
    /// Cost perturbation: none | corollary1 | corollary2 | <eps>.
    #[arg(long)]
    perturb: Option<String>,
    /// Overrides the learner's cost floor (defaults to the environment
    /// minimum cost).
    #[arg(long)]
    c_min: Option<f64>,
    #[arg(long)]
    step_cap: Option<usize>,
    /// Output directory for regret.csv, report.txt, and events.csv.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record the per-step event log.
    #[arg(long)]
    events: bool,
    /// Config file supplying defaults; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct LbArgs {
    /// Number of non-goal states (1 gives the two-state construction).
    #[arg(long, default_value_t = 1)]
    states: usize,
    #[arg(long, default_value_t = 16)]
    actions: usize,
    #[arg(long)]
    b_star: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    eps_gap: f64,
    #[arg(long, default_value_t = 0)]
    special: usize,
    #[arg(long, default_value_t = 0)]
    gen_seed: u64,
    /// Save the instance document to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Comma-separated episode grid, e.g. 128,256,512,1024.
    #[arg(long)]
    k_grid: Option<String>,
}

#[derive(Args)]
struct OracleCheckArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 10_000)]
    feasible_points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Negative-control hook: corrupt the greedy minimizer; the suite must
    /// then fail.
    #[arg(long)]
    corrupt_greedy: bool,
}

/// Config-file counterpart of the run/sweep flags; every field optional.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    learner: Option<String>,
    b_star: Option<f64>,
    k: Option<usize>,
    delta: Option<f64>,
    seeds: Option<String>,
    perturb: Option<String>,
    c_min: Option<f64>,
    step_cap: Option<usize>,
    out: Option<PathBuf>,
    events: Option<bool>,
    k_grid: Option<String>,
    instance: Option<InstanceSpec>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                SspError::NumericFailure(_) => 2,
                SspError::Aborted(_) => 3,
                _ => 1,
            })
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, SspError> {
    match cli.command {
        Command::Plan(args) => cmd_plan(args),
        Command::Run(args) => cmd_run(args),
        Command::Lb(args) => cmd_lb(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
    }
}

fn load_file_config(path: Option<&PathBuf>) -> Result<FileConfig, SspError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            toml::from_str(&text).map_err(|e| SspError::Parse(format!("config file: {e}")))
        }
    }
}

fn parse_seeds(text: &str) -> Result<Vec<u64>, SspError> {
    let bad = |t: &str| SspError::InvalidArgument(format!("cannot parse seeds '{t}'"));
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad(text))?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad(text))?;
        if hi < lo {
            return Err(bad(text));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|part| part.trim().parse::<u64>().map_err(|_| bad(text)))
        .collect()
}

fn parse_perturb(text: &str) -> Result<Perturbation, SspError> {
    match text {
        "none" => Ok(Perturbation::None),
        "corollary1" => Ok(Perturbation::Corollary1),
        "corollary2" => Ok(Perturbation::Corollary2),
        other => other
            .parse::<f64>()
            .map(Perturbation::Fixed)
            .map_err(|_| SspError::InvalidArgument(format!("cannot parse perturbation '{other}'"))),
    }
}

fn parse_learner(name: &str, b_star: Option<f64>) -> Result<LearnerSpec, SspError> {
    match name {
        "hoeffding-known-b" => {
            let b_star = b_star.ok_or_else(|| {
                SspError::InvalidArgument("--learner hoeffding-known-b requires --b-star".into())
            })?;
            Ok(LearnerSpec::HoeffdingKnownB { b_star })
        }
        "hoeffding" => Ok(LearnerSpec::Hoeffding),
        "bernstein" => Ok(LearnerSpec::Bernstein),
        other => Err(SspError::InvalidArgument(format!("unknown learner '{other}'"))),
    }
}

fn build_experiment_config(args: &RunArgs) -> Result<(ExperimentConfig, Option<PathBuf>), SspError> {
    let file = load_file_config(args.config.as_ref())?;
    let instance = if args.instance.is_empty() {
        file.instance
            .clone()
            .ok_or_else(|| SspError::InvalidArgument("missing --gen, --file, or config instance".into()))?
    } else {
        args.instance.to_spec()?
    };
    let learner_name = args
        .learner
        .clone()
        .or(file.learner)
        .ok_or_else(|| SspError::InvalidArgument("missing --learner".into()))?;
    let b_star = args.instance.b_star.or(file.b_star);
    let learner = parse_learner(&learner_name, b_star)?;
    let episodes = args
        .k
        .or(file.k)
        .ok_or_else(|| SspError::InvalidArgument("missing --k".into()))?;
    let seeds_text = args.seeds.clone().or(file.seeds).unwrap_or_else(|| "0".to_string());
    let perturb_text = args.perturb.clone().or(file.perturb).unwrap_or_else(|| "none".to_string());
    let config = ExperimentConfig {
        instance,
        learner,
        delta: args.delta.or(file.delta).unwrap_or(0.1),
        c_min: args.c_min.or(file.c_min),
        perturbation: parse_perturb(&perturb_text)?,
        episodes,
        seeds: parse_seeds(&seeds_text)?,
        step_cap: args.step_cap.or(file.step_cap).unwrap_or(harness::DEFAULT_STEP_CAP),
        record_events: args.events || file.events.unwrap_or(false),
    };
    let out = args.out.clone().or(file.out);
    Ok((config, out))
}

fn cmd_plan(args: PlanArgs) -> Result<ExitCode, SspError> {
    let instance = args.instance.to_spec()?.build()?;
    let plan = planner::value_iteration(&instance, args.tol, args.max_iter);
    println!("state  J*               pi*");
    for s in 0..instance.num_states() {
        println!("{:<6} {:<16.12} {}", s, plan.values.get(s), plan.policy.action(s));
    }
    let j_init: f64 = instance
        .init_dist()
        .iter()
        .enumerate()
        .map(|(s, p)| p * plan.values.get(s))
        .sum();
    println!("J*(s_init) = {:.12}", j_init);
    println!("residual   = {:e}", plan.residual);
    println!("iterations = {}", plan.iterations);
    println!("converged  = {}", plan.converged);
    if args.toml {
        let values: Vec<String> =
            (0..instance.num_states()).map(|s| format!("{:.16e}", plan.values.get(s))).collect();
        let actions: Vec<String> =
            (0..instance.num_states()).map(|s| plan.policy.action(s).to_string()).collect();
        println!("values = [{}]", values.join(", "));
        println!("policy = [{}]", actions.join(", "));
    }
    Ok(if plan.converged { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, SspError> {
    let (config, out) = build_experiment_config(&args)?;
    let outcome = harness::run_experiment(&config)?;
    if let Some(dir) = out {
        harness::write_outputs(&config, &outcome, &dir)?;
        println!("wrote {}", dir.join("regret.csv").display());
    } else {
        print!("{}", harness::experiment_report(&config, &outcome));
    }
    if outcome.aborted {
        eprintln!("error: run aborted after repeated step-cap hits");
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lb(args: LbArgs) -> Result<ExitCode, SspError> {
    let b_star = args
        .b_star
        .ok_or_else(|| SspError::InvalidArgument("lb requires --b-star".into()))?;
    let instance = if args.states <= 1 {
        ssp_core::model::make_two_state_lb(args.actions, b_star, args.eps_gap, args.special)?
    } else {
        ssp_core::model::make_multistate_lb(
            args.states,
            args.actions,
            b_star,
            args.eps_gap,
            args.gen_seed,
        )?
    };
    let plan = planner::value_iteration(&instance, 1e-13, 1_000_000);
    println!(
        "lower-bound instance: {} states, {} actions, eps_gap {}",
        instance.num_states(),
        instance.num_actions(),
        args.eps_gap
    );
    for s in 0..instance.num_states() {
        println!("state {s}: J* = {:.12}, special action = {}", plan.values.get(s), plan.policy.action(s));
    }
    let worst = plan.values.max();
    println!("max_s J*(s) = {:.12} (configured bound {b_star})", worst);
    if let Some(path) = args.out {
        instance.save(&path)?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, SspError> {
    let file = load_file_config(args.run.config.as_ref())?;
    let grid_text = args
        .k_grid
        .clone()
        .or(file.k_grid)
        .ok_or_else(|| SspError::InvalidArgument("missing --k-grid".into()))?;
    let k_grid: Vec<usize> = grid_text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| SspError::InvalidArgument(format!("cannot parse k grid '{grid_text}'")))
        })
        .collect::<Result<_, _>>()?;
    if k_grid.len() < 2 {
        return Err(SspError::InvalidArgument("--k-grid needs at least two points".into()));
    }
    let (mut config, out) = build_experiment_config(&RunArgs {
        k: args.run.k.or(Some(k_grid[0])),
        ..args.run
    })?;
    config.episodes = k_grid[0];
    let sweep = harness::run_sweep(&config, &k_grid)?;
    let report = harness::sweep_report(&sweep);
    if let Some(dir) = out {
        std::fs::create_dir_all(&dir)?;
        std::fs::write(dir.join("report.txt"), &report)?;
        println!("wrote {}", dir.join("report.txt").display());
    }
    print!("{report}");
    if sweep.aborted {
        eprintln!("error: sweep aborted after repeated step-cap hits");
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle_check(args: OracleCheckArgs) -> Result<ExitCode, SspError> {
    let inner = oracle::check_inner_minimization(
        args.trials,
        args.feasible_points,
        args.seed,
        args.corrupt_greedy,
    )?;
    report_suite("inner-minimization (greedy vs LP + feasible sampling)", &inner);
    let enumeration = oracle::check_planner_enumeration(args.trials, args.seed)?;
    report_suite("planner (value iteration vs enumeration)", &enumeration);
    if inner.passed() && enumeration.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn report_suite(name: &str, report: &oracle::OracleReport) {
    if report.passed() {
        println!("[PASS] {name}: {} trials", report.trials);
    } else {
        println!("[FAIL] {name}: {} failures / {} trials", report.failures.len(), report.trials);
        for failure in report.failures.iter().take(10) {
            println!("  {failure}");
        }
    }
}
