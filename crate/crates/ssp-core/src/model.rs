//! Goal-augmented tabular SSP instances: construction, validation, cost
//! perturbation, seeded transition sampling, and the built-in instance
//! generators (hard lower-bound family, random proper instances, chains).
//!
//! The goal state is never stored explicitly. A transition row holds the
//! probabilities of landing in each non-goal state; the goal receives the
//! residual mass `1 - sum(row)`.

use ndarray::{Array1, Array2, Array3, ArrayView1};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::SspError;
use crate::planner;

/// Row sums may exceed 1 by at most this much at construction time.
pub const ROW_SUM_TOL_CONSTRUCT: f64 = 1e-12;
/// Looser tolerance applied when a row is consumed (e.g. sampling).
pub const ROW_SUM_TOL_USE: f64 = 1e-9;

/// Outcome of one environment transition: a non-goal state or the goal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NextState {
    State(usize),
    Goal,
}

impl NextState {
    /// Index into a table with one trailing column reserved for the goal.
    pub fn column(self, num_states: usize) -> usize {
        match self {
            NextState::State(s) => s,
            NextState::Goal => num_states,
        }
    }

    pub fn is_goal(self) -> bool {
        matches!(self, NextState::Goal)
    }
}

impl std::fmt::Display for NextState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NextState::State(s) => write!(f, "{s}"),
            NextState::Goal => write!(f, "g"),
        }
    }
}

/// A stationary deterministic policy: one action per state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Policy {
    actions: Vec<usize>,
}

impl Policy {
    pub fn new(actions: Vec<usize>, num_actions: usize) -> Result<Self, SspError> {
        if actions.is_empty() {
            return Err(SspError::InvalidArgument("policy must cover at least one state".into()));
        }
        if let Some(&a) = actions.iter().find(|&&a| a >= num_actions) {
            return Err(SspError::InvalidArgument(format!(
                "policy action {a} out of range (num_actions = {num_actions})"
            )));
        }
        Ok(Self { actions })
    }

    /// Same action in every state.
    pub fn constant(action: usize, num_states: usize, num_actions: usize) -> Result<Self, SspError> {
        Self::new(vec![action; num_states], num_actions)
    }

    pub fn action(&self, s: usize) -> usize {
        self.actions[s]
    }

    pub fn actions(&self) -> &[usize] {
        &self.actions
    }

    pub fn num_states(&self) -> usize {
        self.actions.len()
    }
}

/// Per-state cost-to-go. The goal's value is 0 by convention and not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueFunction {
    values: Array1<f64>,
}

impl ValueFunction {
    pub fn new(values: Array1<f64>) -> Result<Self, SspError> {
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(SspError::InvalidArgument(
                "value function entries must be finite and non-negative".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn zeros(num_states: usize) -> Self {
        Self { values: Array1::zeros(num_states) }
    }

    pub fn get(&self, s: usize) -> f64 {
        self.values[s]
    }

    pub fn values(&self) -> ArrayView1<'_, f64> {
        self.values.view()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest entry; an upper bound on the policy's cost-to-go over states.
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// One step of an episode: the executed transition and its cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub state: usize,
    pub action: usize,
    pub cost: f64,
    pub next: NextState,
}

/// Trace of a single episode.
#[derive(Debug, Clone)]
pub struct EpisodeRecord {
    pub steps: Vec<Step>,
    pub total_cost: f64,
    pub reached_goal: bool,
}

impl EpisodeRecord {
    pub fn length(&self) -> usize {
        self.steps.len()
    }
}

/// A tabular SSP instance over states `0..num_states` plus an implicit goal.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct SspInstance {
    num_states: usize,
    num_actions: usize,
    cost: Array2<f64>,
    trans: Array3<f64>,
    init_dist: Array1<f64>,
}

impl SspInstance {
    /// Validates every invariant: entry ranges, row sums, initial-distribution
    /// normalization, and existence of at least one proper policy.
    pub fn new(
        cost: Array2<f64>,
        trans: Array3<f64>,
        init_dist: Array1<f64>,
    ) -> Result<Self, SspError> {
        let (ns, na) = cost.dim();
        if ns == 0 || na == 0 {
            return Err(SspError::InvalidInstance("need at least one state and one action".into()));
        }
        if trans.dim() != (ns, na, ns) {
            return Err(SspError::InvalidInstance(format!(
                "transition table shape {:?} does not match cost table {:?}",
                trans.dim(),
                cost.dim()
            )));
        }
        if init_dist.len() != ns {
            return Err(SspError::InvalidInstance("init_dist length must equal num_states".into()));
        }
        for ((s, a), &c) in cost.indexed_iter() {
            if !(0.0..=1.0).contains(&c) || !c.is_finite() {
                return Err(SspError::InvalidInstance(format!(
                    "cost({s},{a}) = {c} outside [0,1]"
                )));
            }
        }
        for s in 0..ns {
            for a in 0..na {
                let mut sum = 0.0;
                for s2 in 0..ns {
                    let p = trans[[s, a, s2]];
                    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
                        return Err(SspError::InvalidInstance(format!(
                            "P({s2}|{s},{a}) = {p} outside [0,1]"
                        )));
                    }
                    sum += p;
                }
                if sum > 1.0 + ROW_SUM_TOL_CONSTRUCT {
                    return Err(SspError::InvalidInstance(format!(
                        "transition row ({s},{a}) sums to {sum} > 1"
                    )));
                }
            }
        }
        let init_sum: f64 = init_dist.sum();
        if (init_sum - 1.0).abs() > ROW_SUM_TOL_CONSTRUCT
            || init_dist.iter().any(|p| *p < 0.0 || !p.is_finite())
        {
            return Err(SspError::InvalidInstance(format!(
                "init_dist must be a probability distribution (sum = {init_sum})"
            )));
        }
        let instance = Self { num_states: ns, num_actions: na, cost, trans, init_dist };
        if !planner::proper_policy_exists(&instance) {
            return Err(SspError::InvalidInstance(
                "no proper policy exists: the goal is unreachable from some state".into(),
            ));
        }
        Ok(instance)
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_actions(&self) -> usize {
        self.num_actions
    }

    pub fn cost(&self, s: usize, a: usize) -> f64 {
        self.cost[[s, a]]
    }

    pub fn cost_table(&self) -> &Array2<f64> {
        &self.cost
    }

    pub fn trans_prob(&self, s: usize, a: usize, s2: usize) -> f64 {
        self.trans[[s, a, s2]]
    }

    pub fn trans_table(&self) -> &Array3<f64> {
        &self.trans
    }

    /// Residual goal probability of row (s,a), clamped at zero.
    pub fn goal_prob(&self, s: usize, a: usize) -> f64 {
        let mut sum = 0.0;
        for s2 in 0..self.num_states {
            sum += self.trans[[s, a, s2]];
        }
        (1.0 - sum).max(0.0)
    }

    /// True transition probability of `next` from (s,a), goal included.
    pub fn prob_of(&self, s: usize, a: usize, next: NextState) -> f64 {
        match next {
            NextState::State(s2) => self.trans[[s, a, s2]],
            NextState::Goal => self.goal_prob(s, a),
        }
    }

    pub fn init_dist(&self) -> ArrayView1<'_, f64> {
        self.init_dist.view()
    }

    pub fn min_cost(&self) -> f64 {
        self.cost.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Smallest strictly positive cost, if any cost is positive.
    pub fn min_positive_cost(&self) -> Option<f64> {
        self.cost
            .iter()
            .copied()
            .filter(|c| *c > 0.0)
            .fold(None, |acc, c| Some(acc.map_or(c, |m: f64| m.min(c))))
    }

    /// Replaces every cost by `max(cost, eps)`; transitions untouched.
    pub fn perturb_costs(&self, eps: f64) -> Result<SspInstance, SspError> {
        if !(0.0..=1.0).contains(&eps) || !eps.is_finite() {
            return Err(SspError::InvalidArgument(format!("eps = {eps} outside [0,1]")));
        }
        let cost = self.cost.mapv(|c| c.max(eps));
        Ok(SspInstance {
            num_states: self.num_states,
            num_actions: self.num_actions,
            cost,
            trans: self.trans.clone(),
            init_dist: self.init_dist.clone(),
        })
    }

    /// Draws the next state by inverse CDF over the fixed state ordering
    /// `0, 1, ..., |S|-1, goal`, so results are reproducible per seed.
    pub fn sample_transition(
        &self,
        s: usize,
        a: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<NextState, SspError> {
        if s >= self.num_states || a >= self.num_actions {
            return Err(SspError::InvalidArgument(format!("state {s} / action {a} out of range")));
        }
        let mut sum = 0.0;
        for s2 in 0..self.num_states {
            sum += self.trans[[s, a, s2]];
        }
        if sum > 1.0 + ROW_SUM_TOL_USE {
            return Err(SspError::CorruptedInstance(format!(
                "transition row ({s},{a}) sums to {sum} > 1"
            )));
        }
        let u: f64 = rng.gen::<f64>();
        let mut acc = 0.0;
        for s2 in 0..self.num_states {
            acc += self.trans[[s, a, s2]];
            if u < acc {
                return Ok(NextState::State(s2));
            }
        }
        Ok(NextState::Goal)
    }

    /// Draws an initial state from `init_dist` by inverse CDF.
    pub fn sample_initial(&self, rng: &mut ChaCha8Rng) -> usize {
        let u: f64 = rng.gen::<f64>();
        let mut acc = 0.0;
        for s in 0..self.num_states {
            acc += self.init_dist[s];
            if u < acc {
                return s;
            }
        }
        self.num_states - 1
    }
}

/// Point mass on state 0.
pub fn point_mass_init(num_states: usize) -> Array1<f64> {
    let mut d = Array1::zeros(num_states);
    d[0] = 1.0;
    d
}

/// Hard instance with a single non-goal state: every action costs 1, the
/// `special` action reaches the goal with probability `1/b_star`, every other
/// action with the slightly smaller `(1 - eps_gap)/b_star`.
pub fn make_two_state_lb(
    num_actions: usize,
    b_star: f64,
    eps_gap: f64,
    special: usize,
) -> Result<SspInstance, SspError> {
    if num_actions < 2 {
        return Err(SspError::InvalidArgument("num_actions must be at least 2".into()));
    }
    if !b_star.is_finite() || b_star < 2.0 {
        return Err(SspError::InvalidArgument(format!("b_star = {b_star} must be >= 2")));
    }
    if !(eps_gap > 0.0 && eps_gap < 0.125) {
        return Err(SspError::InvalidArgument(format!("eps_gap = {eps_gap} outside (0, 1/8)")));
    }
    if special >= num_actions {
        return Err(SspError::InvalidArgument(format!(
            "special action {special} out of range (num_actions = {num_actions})"
        )));
    }
    let cost = Array2::from_elem((1, num_actions), 1.0);
    let mut trans = Array3::zeros((1, num_actions, 1));
    for a in 0..num_actions {
        let goal = if a == special { 1.0 / b_star } else { (1.0 - eps_gap) / b_star };
        trans[[0, a, 0]] = 1.0 - goal;
    }
    SspInstance::new(cost, trans, point_mass_init(1))
}

/// Multi-state variant: each state is its own copy of the single-state hard
/// instance (self-loop in place of the initial state) with a seeded uniformly
/// drawn special action, and the initial state is drawn uniformly per episode.
pub fn make_multistate_lb(
    num_states: usize,
    num_actions: usize,
    b_star: f64,
    eps_gap: f64,
    seed: u64,
) -> Result<SspInstance, SspError> {
    if num_states < 1 {
        return Err(SspError::InvalidArgument("num_states must be at least 1".into()));
    }
    if num_actions < 2 {
        return Err(SspError::InvalidArgument("num_actions must be at least 2".into()));
    }
    if !b_star.is_finite() || b_star < 2.0 {
        return Err(SspError::InvalidArgument(format!("b_star = {b_star} must be >= 2")));
    }
    if !(eps_gap > 0.0 && eps_gap < 0.125) {
        return Err(SspError::InvalidArgument(format!("eps_gap = {eps_gap} outside (0, 1/8)")));
    }
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cost = Array2::from_elem((num_states, num_actions), 1.0);
    let mut trans = Array3::zeros((num_states, num_actions, num_states));
    for s in 0..num_states {
        let special = rng.gen_range(0..num_actions);
        for a in 0..num_actions {
            let goal = if a == special { 1.0 / b_star } else { (1.0 - eps_gap) / b_star };
            trans[[s, a, s]] = 1.0 - goal;
        }
    }
    let init_dist = Array1::from_elem(num_states, 1.0 / num_states as f64);
    SspInstance::new(cost, trans, init_dist)
}

/// Seeded random instance on which every policy is proper: each transition
/// row is a symmetric random simplex over the states plus goal, with the goal
/// entry raised to at least `min_goal_prob` and the states rescaled to match.
/// Costs are uniform on `[cost_floor, 1]`.
pub fn make_random_instance(
    seed: u64,
    num_states: usize,
    num_actions: usize,
    min_goal_prob: f64,
    cost_floor: f64,
) -> Result<SspInstance, SspError> {
    if num_states == 0 || num_actions == 0 {
        return Err(SspError::InvalidArgument("need at least one state and one action".into()));
    }
    if !(min_goal_prob > 0.0 && min_goal_prob <= 1.0) {
        return Err(SspError::InvalidArgument(format!(
            "min_goal_prob = {min_goal_prob} outside (0,1]"
        )));
    }
    if !(0.0..=1.0).contains(&cost_floor) {
        return Err(SspError::InvalidArgument(format!("cost_floor = {cost_floor} outside [0,1]")));
    }
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cost = Array2::zeros((num_states, num_actions));
    let mut trans = Array3::zeros((num_states, num_actions, num_states));
    for s in 0..num_states {
        for a in 0..num_actions {
            // Dirichlet(1,..,1) over S u {g} via normalized exponentials.
            let mut weights = vec![0.0f64; num_states + 1];
            let mut total = 0.0;
            for w in weights.iter_mut() {
                let e = -(1.0 - rng.gen::<f64>()).ln();
                *w = e;
                total += e;
            }
            let goal = weights[num_states] / total;
            let scale = if goal < min_goal_prob && goal < 1.0 {
                (1.0 - min_goal_prob) / (1.0 - goal)
            } else {
                1.0
            };
            for s2 in 0..num_states {
                trans[[s, a, s2]] = weights[s2] / total * scale;
            }
            cost[[s, a]] = cost_floor + (1.0 - cost_floor) * rng.gen::<f64>();
        }
    }
    SspInstance::new(cost, trans, point_mass_init(num_states))
}

/// Deterministic chain of `len` states with a single unit-cost action:
/// state `i` moves to `i+1`, the last state moves to the goal.
pub fn make_chain(len: usize) -> Result<SspInstance, SspError> {
    if len == 0 {
        return Err(SspError::InvalidArgument("chain length must be positive".into()));
    }
    let cost = Array2::from_elem((len, 1), 1.0);
    let mut trans = Array3::zeros((len, 1, len));
    for s in 0..len.saturating_sub(1) {
        trans[[s, 0, s + 1]] = 1.0;
    }
    SspInstance::new(cost, trans, point_mass_init(len))
}

// ---------------------------------------------------------------------------
// Instance file format: a flat TOML document with row-major tables.
// ---------------------------------------------------------------------------

#[derive(serde::Deserialize)]
struct InstanceDoc {
    num_states: usize,
    num_actions: usize,
    init_dist: Vec<f64>,
    cost: Vec<f64>,
    trans: Vec<f64>,
}

fn fmt_float(x: f64) -> String {
    // 17 significant digits: exact f64 round trip.
    format!("{x:.16e}")
}

impl SspInstance {
    /// Serializes to the plain-text instance document (TOML key/value form,
    /// floats with 17 significant digits).
    pub fn to_document_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("num_states = {}\n", self.num_states));
        out.push_str(&format!("num_actions = {}\n", self.num_actions));
        let join = |v: &[f64]| v.iter().map(|x| fmt_float(*x)).collect::<Vec<_>>().join(", ");
        out.push_str(&format!("init_dist = [{}]\n", join(self.init_dist.as_slice().unwrap())));
        out.push_str(&format!("cost = [{}]\n", join(self.cost.as_slice().unwrap())));
        out.push_str(&format!("trans = [{}]\n", join(self.trans.as_slice().unwrap())));
        out
    }

    /// Parses and fully validates an instance document.
    pub fn from_document_str(text: &str) -> Result<Self, SspError> {
        let doc: InstanceDoc =
            toml::from_str(text).map_err(|e| SspError::Parse(format!("instance file: {e}")))?;
        let ns = doc.num_states;
        let na = doc.num_actions;
        if doc.cost.len() != ns * na {
            return Err(SspError::Parse(format!(
                "cost array has {} entries, expected {}",
                doc.cost.len(),
                ns * na
            )));
        }
        if doc.trans.len() != ns * na * ns {
            return Err(SspError::Parse(format!(
                "trans array has {} entries, expected {}",
                doc.trans.len(),
                ns * na * ns
            )));
        }
        if doc.init_dist.len() != ns {
            return Err(SspError::Parse(format!(
                "init_dist array has {} entries, expected {ns}",
                doc.init_dist.len()
            )));
        }
        let cost = Array2::from_shape_vec((ns, na), doc.cost)
            .map_err(|e| SspError::Parse(e.to_string()))?;
        let trans = Array3::from_shape_vec((ns, na, ns), doc.trans)
            .map_err(|e| SspError::Parse(e.to_string()))?;
        let init_dist = Array1::from_vec(doc.init_dist);
        SspInstance::new(cost, trans, init_dist)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), SspError> {
        std::fs::write(path, self.to_document_string())?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self, SspError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_document_str(&text)
    }
}
