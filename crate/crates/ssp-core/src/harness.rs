//! Seeded experiment orchestration: runs a learner against an instance for K
//! episodes per seed, tracks regret against `K * J*(s_init)`, monitors the
//! containment and optimism invariants at every replan, aggregates across
//! seeds, fits scaling exponents, and renders CSV/text reports.
//!
//! Regret is always recorded in the instance's original costs, even when the
//! learner runs on perturbed costs.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::confidence::{contains_true_bernstein, contains_true_hoeffding};
use crate::error::SspError;
use crate::learners::{
    run_episode, Bernstein, ContainmentKind, HoeffdingKnownB, HoeffdingUnknownB, Learner,
};
use crate::model::{
    make_chain, make_multistate_lb, make_random_instance, make_two_state_lb, NextState,
    Policy, SspInstance, Step, ValueFunction,
};
use crate::planner;

/// Default per-episode step cap.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;
/// Capped episodes tolerated per seed before the run aborts.
pub const MAX_CAPPED_EPISODES: u64 = 3;
/// Perturbation used to realize the `eps -> 0` comparator limit on
/// zero-cost instances.
pub const COMPARATOR_EPS: f64 = 1e-8;
/// Pointwise slack allowed when asserting the optimism invariant.
pub const OPTIMISM_TOL: f64 = 1e-6;

/// Which instance to run on.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum InstanceSpec {
    TwoStateLb { num_actions: usize, b_star: f64, eps_gap: f64, special: usize },
    LbMulti { num_states: usize, num_actions: usize, b_star: f64, eps_gap: f64, seed: u64 },
    Random { seed: u64, num_states: usize, num_actions: usize, min_goal_prob: f64, cost_floor: f64 },
    Chain { len: usize },
    File { path: PathBuf },
}

impl InstanceSpec {
    pub fn build(&self) -> Result<SspInstance, SspError> {
        match self {
            InstanceSpec::TwoStateLb { num_actions, b_star, eps_gap, special } => {
                make_two_state_lb(*num_actions, *b_star, *eps_gap, *special)
            }
            InstanceSpec::LbMulti { num_states, num_actions, b_star, eps_gap, seed } => {
                make_multistate_lb(*num_states, *num_actions, *b_star, *eps_gap, *seed)
            }
            InstanceSpec::Random { seed, num_states, num_actions, min_goal_prob, cost_floor } => {
                make_random_instance(*seed, *num_states, *num_actions, *min_goal_prob, *cost_floor)
            }
            InstanceSpec::Chain { len } => make_chain(*len),
            InstanceSpec::File { path } => SspInstance::load(path),
        }
    }
}

/// Which learner to run.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum LearnerSpec {
    HoeffdingKnownB { b_star: f64 },
    Hoeffding,
    Bernstein,
}

impl LearnerSpec {
    pub fn cli_name(&self) -> &'static str {
        match self {
            LearnerSpec::HoeffdingKnownB { .. } => "hoeffding-known-b",
            LearnerSpec::Hoeffding => "hoeffding",
            LearnerSpec::Bernstein => "bernstein",
        }
    }
}

/// Cost perturbation applied to the environment the learner sees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Perturbation {
    None,
    /// `eps = (|S|^2 |A| / K)^{1/3}`
    Corollary1,
    /// `eps = |S|^2 |A| / K`
    Corollary2,
    Fixed(f64),
}

impl Perturbation {
    /// Resolves the preset to a concrete perturbation for the given shape.
    pub fn resolve(&self, num_states: usize, num_actions: usize, episodes: usize) -> f64 {
        let s = num_states as f64;
        let a = num_actions as f64;
        let k = episodes as f64;
        match self {
            Perturbation::None => 0.0,
            Perturbation::Corollary1 => (s * s * a / k).cbrt().min(1.0),
            Perturbation::Corollary2 => (s * s * a / k).min(1.0),
            Perturbation::Fixed(eps) => *eps,
        }
    }
}

/// Full description of an experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub instance: InstanceSpec,
    pub learner: LearnerSpec,
    pub delta: f64,
    /// Overrides the learner's cost floor; defaults to the environment's
    /// minimum cost.
    pub c_min: Option<f64>,
    pub perturbation: Perturbation,
    pub episodes: usize,
    pub seeds: Vec<u64>,
    pub step_cap: usize,
    pub record_events: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), SspError> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(SspError::InvalidArgument(format!(
                "delta = {} outside (0,1)",
                self.delta
            )));
        }
        if self.episodes == 0 {
            return Err(SspError::InvalidArgument("episode count must be at least 1".into()));
        }
        if self.seeds.is_empty() {
            return Err(SspError::InvalidArgument("at least one seed is required".into()));
        }
        if self.step_cap == 0 {
            return Err(SspError::InvalidArgument("step_cap must be at least 1".into()));
        }
        if let Perturbation::Fixed(eps) = self.perturbation {
            if !(0.0..=1.0).contains(&eps) {
                return Err(SspError::InvalidArgument(format!("eps = {eps} outside [0,1]")));
            }
        }
        Ok(())
    }
}

/// One step-event row of the audit log.
#[derive(Debug, Clone)]
pub struct StepEvent {
    pub seed: u64,
    pub episode: usize,
    pub t: u64,
    pub state: usize,
    pub action: usize,
    pub cost: f64,
    pub next: NextState,
    pub segment: u64,
    pub recompute: bool,
    /// Present only on recompute steps.
    pub containment: Option<bool>,
}

/// Per-seed regret ledger and invariant counters.
#[derive(Debug, Clone)]
pub struct RunLedger {
    pub seed: u64,
    pub j_star_init: f64,
    /// Episode costs in the instance's original cost table.
    pub episode_costs: Vec<f64>,
    pub cum_costs: Vec<f64>,
    pub regrets: Vec<f64>,
    pub capped: Vec<bool>,
    pub total_steps: u64,
    pub recomputes: u64,
    pub containment_ok: u64,
    pub containment_violations: u64,
    pub optimism_violations: u64,
    pub bookkeeping_violations: u64,
    pub capped_episodes: u64,
    pub aborted: bool,
}

impl RunLedger {
    pub fn final_regret(&self) -> f64 {
        self.regrets.last().copied().unwrap_or(0.0)
    }

    /// Fraction of replans at which the containment predicate held.
    pub fn coverage(&self) -> f64 {
        if self.recomputes == 0 {
            1.0
        } else {
            self.containment_ok as f64 / self.recomputes as f64
        }
    }
}

/// Mean/std aggregate over the completed (non-aborted) seeds.
#[derive(Debug, Clone)]
pub struct Aggregate {
    pub episodes: usize,
    pub completed_seeds: usize,
    pub mean_final_regret: f64,
    pub std_final_regret: f64,
    pub min_final_regret: f64,
    pub max_final_regret: f64,
}

/// Everything a run produced.
#[derive(Debug)]
pub struct ExperimentOutcome {
    pub ledgers: Vec<RunLedger>,
    pub events: Vec<StepEvent>,
    pub aggregate: Aggregate,
    pub resolved_eps: f64,
    pub aborted: bool,
}

enum AnyLearner {
    KnownB(HoeffdingKnownB),
    UnknownB(HoeffdingUnknownB),
    Bernstein(Bernstein),
}

impl Learner for AnyLearner {
    fn act(&self, s: usize) -> usize {
        match self {
            AnyLearner::KnownB(l) => l.act(s),
            AnyLearner::UnknownB(l) => l.act(s),
            AnyLearner::Bernstein(l) => l.act(s),
        }
    }

    fn observe(
        &mut self,
        s: usize,
        a: usize,
        cost: f64,
        next: NextState,
    ) -> Result<bool, SspError> {
        match self {
            AnyLearner::KnownB(l) => l.observe(s, a, cost, next),
            AnyLearner::UnknownB(l) => l.observe(s, a, cost, next),
            AnyLearner::Bernstein(l) => l.observe(s, a, cost, next),
        }
    }

    fn model(&self) -> &crate::confidence::OptimisticModel {
        match self {
            AnyLearner::KnownB(l) => l.model(),
            AnyLearner::UnknownB(l) => l.model(),
            AnyLearner::Bernstein(l) => l.model(),
        }
    }

    fn counts(&self) -> &crate::confidence::CountTable {
        match self {
            AnyLearner::KnownB(l) => l.counts(),
            AnyLearner::UnknownB(l) => l.counts(),
            AnyLearner::Bernstein(l) => l.counts(),
        }
    }

    fn segment_index(&self) -> u64 {
        match self {
            AnyLearner::KnownB(l) => l.segment_index(),
            AnyLearner::UnknownB(l) => l.segment_index(),
            AnyLearner::Bernstein(l) => l.segment_index(),
        }
    }

    fn total_steps(&self) -> u64 {
        match self {
            AnyLearner::KnownB(l) => l.total_steps(),
            AnyLearner::UnknownB(l) => l.total_steps(),
            AnyLearner::Bernstein(l) => l.total_steps(),
        }
    }

    fn containment_kind(&self) -> ContainmentKind {
        match self {
            AnyLearner::KnownB(l) => l.containment_kind(),
            AnyLearner::UnknownB(l) => l.containment_kind(),
            AnyLearner::Bernstein(l) => l.containment_kind(),
        }
    }
}

/// Optimal proper comparator under the original costs. With strictly positive
/// costs this is plain value iteration; with zero costs present, the plan is
/// computed on costs floored at a vanishing perturbation and the resulting
/// policy is evaluated under the original costs.
pub fn optimal_proper_values(
    instance: &SspInstance,
) -> Result<(ValueFunction, Policy), SspError> {
    if instance.min_cost() > 0.0 {
        let plan = planner::value_iteration(instance, planner::DEFAULT_TOL, planner::DEFAULT_MAX_ITER);
        if !plan.converged {
            return Err(SspError::NumericFailure(
                "comparator value iteration did not converge".into(),
            ));
        }
        return Ok((plan.values, plan.policy));
    }
    let floored = instance.perturb_costs(COMPARATOR_EPS)?;
    let plan = planner::value_iteration(&floored, planner::DEFAULT_TOL, planner::DEFAULT_MAX_ITER);
    if !plan.converged {
        return Err(SspError::NumericFailure(
            "comparator value iteration did not converge".into(),
        ));
    }
    match planner::evaluate_policy(instance, &plan.policy, planner::DEFAULT_TOL, planner::DEFAULT_MAX_ITER)? {
        planner::PolicyEval::Values(values) => Ok((values, plan.policy)),
        planner::PolicyEval::Divergent => Err(SspError::NumericFailure(
            "limit comparator policy is improper under original costs".into(),
        )),
    }
}

fn build_learner(
    spec: &LearnerSpec,
    env: &SspInstance,
    delta: f64,
    c_min: Option<f64>,
) -> Result<AnyLearner, SspError> {
    let cost = env.cost_table().clone();
    let c_min = c_min.unwrap_or_else(|| env.min_cost());
    Ok(match spec {
        LearnerSpec::HoeffdingKnownB { b_star } => {
            AnyLearner::KnownB(HoeffdingKnownB::new(cost, delta, *b_star, c_min)?)
        }
        LearnerSpec::Hoeffding => AnyLearner::UnknownB(HoeffdingUnknownB::new(cost, delta, c_min)?),
        LearnerSpec::Bernstein => AnyLearner::Bernstein(Bernstein::new(cost, delta)?),
    })
}

/// Runs the configured experiment over all seeds.
///
/// Per seed: K episodes with persistent learner state. At every replan the
/// monitor evaluates the learner's containment predicate against the true
/// transition function and, when containment holds, asserts the optimism
/// invariant (optimistic values pointwise at most the environment's optimum,
/// and for per-entry confidence sets the optimistic table entrywise at most
/// the truth). Violations are counted, never panicked on.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome, SspError> {
    config.validate()?;
    let instance = config.instance.build()?;
    let eps =
        config.perturbation.resolve(instance.num_states(), instance.num_actions(), config.episodes);
    let env = if eps > 0.0 { instance.perturb_costs(eps)? } else { instance.clone() };

    // comparator under original costs, and the env-cost optimum for the monitor
    let (j_star, _) = optimal_proper_values(&instance)?;
    let j_star_init: f64 = instance
        .init_dist()
        .iter()
        .enumerate()
        .map(|(s, p)| p * j_star.get(s))
        .sum();
    let (j_star_env, _) = optimal_proper_values(&env)?;

    let mut ledgers = Vec::with_capacity(config.seeds.len());
    let mut events = Vec::new();
    for &seed in &config.seeds {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut learner = build_learner(&config.learner, &env, config.delta, config.c_min)?;
        let mut ledger = RunLedger {
            seed,
            j_star_init,
            episode_costs: Vec::with_capacity(config.episodes),
            cum_costs: Vec::with_capacity(config.episodes),
            regrets: Vec::with_capacity(config.episodes),
            capped: Vec::with_capacity(config.episodes),
            total_steps: 0,
            recomputes: 0,
            containment_ok: 0,
            containment_violations: 0,
            optimism_violations: 0,
            bookkeeping_violations: 0,
            capped_episodes: 0,
            aborted: false,
        };
        let mut cum = 0.0;
        for episode in 0..config.episodes {
            let mut episode_original_cost = 0.0;
            let record = {
                let ledger = &mut ledger;
                let events = &mut events;
                let instance = &instance;
                let j_star_env = &j_star_env;
                let on_step = |l: &AnyLearner, step: &Step, recomputed: bool| {
                    episode_original_cost += instance.cost(step.state, step.action);
                    let mut containment = None;
                    if recomputed {
                        ledger.recomputes += 1;
                        if l.counts().total() + l.counts().total_delta() != l.total_steps() {
                            ledger.bookkeeping_violations += 1;
                        }
                        let contained = match l.containment_kind() {
                            ContainmentKind::HoeffdingL1 => {
                                contains_true_hoeffding(l.counts(), instance, config.delta)
                            }
                            ContainmentKind::BernsteinEntrywise => {
                                contains_true_bernstein(l.counts(), instance, config.delta)
                            }
                        }
                        .expect("delta validated");
                        containment = Some(contained);
                        if contained {
                            ledger.containment_ok += 1;
                            let model = l.model();
                            let mut violated = (0..instance.num_states())
                                .any(|s| model.values.get(s) > j_star_env.get(s) + OPTIMISM_TOL);
                            if l.containment_kind() == ContainmentKind::BernsteinEntrywise {
                                'outer: for s in 0..instance.num_states() {
                                    for a in 0..instance.num_actions() {
                                        for s2 in 0..instance.num_states() {
                                            if model.trans[[s, a, s2]]
                                                > instance.trans_prob(s, a, s2) + 1e-12
                                            {
                                                violated = true;
                                                break 'outer;
                                            }
                                        }
                                    }
                                }
                            }
                            if violated {
                                ledger.optimism_violations += 1;
                            }
                        } else {
                            ledger.containment_violations += 1;
                        }
                    }
                    if config.record_events {
                        events.push(StepEvent {
                            seed,
                            episode,
                            t: l.total_steps(),
                            state: step.state,
                            action: step.action,
                            cost: step.cost,
                            next: step.next,
                            segment: l.segment_index(),
                            recompute: recomputed,
                            containment,
                        });
                    }
                };
                run_episode(&mut learner, &env, &mut rng, config.step_cap, on_step)?
            };
            ledger.total_steps += record.length() as u64;
            cum += episode_original_cost;
            ledger.episode_costs.push(episode_original_cost);
            ledger.cum_costs.push(cum);
            ledger.regrets.push(cum - (episode + 1) as f64 * j_star_init);
            ledger.capped.push(!record.reached_goal);
            if !record.reached_goal {
                ledger.capped_episodes += 1;
                if ledger.capped_episodes >= MAX_CAPPED_EPISODES {
                    ledger.aborted = true;
                    break;
                }
            }
        }
        ledgers.push(ledger);
    }

    let aborted = ledgers.iter().any(|l| l.aborted);
    let aggregate = aggregate_ledgers(config.episodes, &ledgers);
    Ok(ExperimentOutcome { ledgers, events, aggregate, resolved_eps: eps, aborted })
}

fn aggregate_ledgers(episodes: usize, ledgers: &[RunLedger]) -> Aggregate {
    let finals: Vec<f64> =
        ledgers.iter().filter(|l| !l.aborted).map(|l| l.final_regret()).collect();
    let n = finals.len();
    let mean = if n > 0 { finals.iter().sum::<f64>() / n as f64 } else { f64::NAN };
    let std = if n > 1 {
        (finals.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Aggregate {
        episodes,
        completed_seeds: n,
        mean_final_regret: mean,
        std_final_regret: std,
        min_final_regret: finals.iter().copied().fold(f64::INFINITY, f64::min),
        max_final_regret: finals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

/// Least-squares fit of `log(mean regret)` against `log K`.
#[derive(Debug, Clone)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    /// K values that entered the fit.
    pub used: Vec<usize>,
    /// K values excluded for non-positive mean regret.
    pub excluded: Vec<usize>,
}

/// Ordinary least squares on the log-log regret curve. Points with
/// non-positive mean regret are excluded and reported.
pub fn fit_scaling(points: &[(usize, f64)]) -> Result<ScalingFit, SspError> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut used = Vec::new();
    let mut excluded = Vec::new();
    for &(k, regret) in points {
        if regret > 0.0 {
            xs.push((k as f64).ln());
            ys.push(regret.ln());
            used.push(k);
        } else {
            excluded.push(k);
        }
    }
    if xs.len() < 2 {
        return Err(SspError::InvalidArgument(
            "scaling fit needs at least two K points with positive mean regret".into(),
        ));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok(ScalingFit { slope, intercept: my - slope * mx, used, excluded })
}

/// Coverage summary over a collection of runs.
#[derive(Debug, Clone)]
pub struct CoverageReport {
    /// Per-run fraction of replans at which containment held.
    pub per_run: Vec<f64>,
    /// Fraction of runs with zero containment violations.
    pub zero_violation_fraction: f64,
}

pub fn coverage_report(ledgers: &[RunLedger]) -> CoverageReport {
    let per_run: Vec<f64> = ledgers.iter().map(|l| l.coverage()).collect();
    let zero = ledgers.iter().filter(|l| l.containment_violations == 0).count();
    let zero_violation_fraction =
        if ledgers.is_empty() { 1.0 } else { zero as f64 / ledgers.len() as f64 };
    CoverageReport { per_run, zero_violation_fraction }
}

/// Runs the same configuration across a K grid and fits the scaling slope.
#[derive(Debug)]
pub struct SweepOutcome {
    pub per_k: Vec<(usize, Aggregate)>,
    pub fit: ScalingFit,
    pub aborted: bool,
}

pub fn run_sweep(base: &ExperimentConfig, k_grid: &[usize]) -> Result<SweepOutcome, SspError> {
    if k_grid.len() < 2 {
        return Err(SspError::InvalidArgument("k grid needs at least two points".into()));
    }
    let mut per_k = Vec::with_capacity(k_grid.len());
    let mut aborted = false;
    for &k in k_grid {
        let mut config = base.clone();
        config.episodes = k;
        let outcome = run_experiment(&config)?;
        aborted |= outcome.aborted;
        per_k.push((k, outcome.aggregate));
    }
    let points: Vec<(usize, f64)> =
        per_k.iter().map(|(k, agg)| (*k, agg.mean_final_regret)).collect();
    let fit = fit_scaling(&points)?;
    Ok(SweepOutcome { per_k, fit, aborted })
}

// ---------------------------------------------------------------------------
// Output rendering
// ---------------------------------------------------------------------------

/// Formats a float with 12 significant digits.
pub fn format_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// Renders the regret table: one row per (seed, episode), seed-major.
pub fn regret_csv(outcome: &ExperimentOutcome) -> String {
    let mut out = String::from("seed,episode,episode_cost,cum_cost,regret,capped\n");
    for ledger in &outcome.ledgers {
        for e in 0..ledger.episode_costs.len() {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                ledger.seed,
                e,
                format_sig(ledger.episode_costs[e]),
                format_sig(ledger.cum_costs[e]),
                format_sig(ledger.regrets[e]),
                u8::from(ledger.capped[e]),
            ));
        }
    }
    out
}

/// Renders the step-event audit log.
pub fn events_csv(outcome: &ExperimentOutcome) -> String {
    let mut out = String::from("seed,episode,t,s,a,cost,s_next,segment,recompute,containment\n");
    for ev in &outcome.events {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            ev.seed,
            ev.episode,
            ev.t,
            ev.state,
            ev.action,
            format_sig(ev.cost),
            ev.next,
            ev.segment,
            u8::from(ev.recompute),
            ev.containment.map_or(String::new(), |c| u8::from(c).to_string()),
        ));
    }
    out
}

/// Renders the aggregate text report for a single-K experiment.
pub fn experiment_report(config: &ExperimentConfig, outcome: &ExperimentOutcome) -> String {
    let mut out = String::new();
    out.push_str(&format!("learner: {}\n", config.learner.cli_name()));
    out.push_str(&format!("episodes: {}\n", config.episodes));
    out.push_str(&format!("seeds: {}\n", outcome.ledgers.len()));
    out.push_str(&format!("delta: {}\n", format_sig(config.delta)));
    out.push_str(&format!("perturbation_eps: {}\n", format_sig(outcome.resolved_eps)));
    if let Some(l) = outcome.ledgers.first() {
        out.push_str(&format!("j_star_init: {}\n", format_sig(l.j_star_init)));
    }
    let agg = &outcome.aggregate;
    out.push_str(&format!(
        "final_regret: mean {} std {} min {} max {}\n",
        format_sig(agg.mean_final_regret),
        format_sig(agg.std_final_regret),
        format_sig(agg.min_final_regret),
        format_sig(agg.max_final_regret),
    ));
    let coverage = coverage_report(&outcome.ledgers);
    out.push_str(&format!(
        "coverage: zero_violation_fraction {}\n",
        format_sig(coverage.zero_violation_fraction)
    ));
    for (ledger, cov) in outcome.ledgers.iter().zip(&coverage.per_run) {
        out.push_str(&format!(
            "seed {}: steps {} recomputes {} coverage {} optimism_violations {} \
             bookkeeping_violations {} capped {}{}\n",
            ledger.seed,
            ledger.total_steps,
            ledger.recomputes,
            format_sig(*cov),
            ledger.optimism_violations,
            ledger.bookkeeping_violations,
            ledger.capped_episodes,
            if ledger.aborted { " ABORTED" } else { "" },
        ));
    }
    out
}

/// Renders the sweep report with its mean/std table and fitted slope.
pub fn sweep_report(sweep: &SweepOutcome) -> String {
    let mut out = String::from("k,mean_regret,std_regret,completed_seeds\n");
    for (k, agg) in &sweep.per_k {
        out.push_str(&format!(
            "{},{},{},{}\n",
            k,
            format_sig(agg.mean_final_regret),
            format_sig(agg.std_final_regret),
            agg.completed_seeds
        ));
    }
    out.push_str(&format!("slope = {}\n", format_sig(sweep.fit.slope)));
    if !sweep.fit.excluded.is_empty() {
        let list: Vec<String> = sweep.fit.excluded.iter().map(|k| k.to_string()).collect();
        out.push_str(&format!("excluded_k = {}\n", list.join(",")));
    }
    out
}

/// Writes `regret.csv`, `report.txt`, and (when events were recorded)
/// `events.csv` into the output directory.
pub fn write_outputs(
    config: &ExperimentConfig,
    outcome: &ExperimentOutcome,
    dir: &Path,
) -> Result<(), SspError> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("regret.csv"), regret_csv(outcome))?;
    if config.record_events {
        std::fs::write(dir.join("events.csv"), events_csv(outcome))?;
    }
    std::fs::write(dir.join("report.txt"), experiment_report(config, outcome))?;
    Ok(())
}
