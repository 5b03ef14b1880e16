//! Confidence sets over the unknown transition function and the optimistic
//! models they induce.
//!
//! Two constructions are provided. The first puts an L1 ball of radius
//! `5 * sqrt(|S| * ln(|S||A| N+ / delta) / N+)` around each empirical row and
//! finds the cost-minimizing model/policy pair by extended value iteration;
//! the inner minimization over a row has a closed greedy solution (move mass
//! from the most expensive states to the goal). The second bounds each entry
//! separately by `28*A + 4*sqrt(pbar*A)` with `A = ln(|S||A| N+ / delta) / N+`
//! and takes every entry at the bottom of its range, which maximizes the
//! probability of jumping straight to the goal; the optimistic policy is then
//! an ordinary planning problem.
//!
//! The containment predicates check whether the true transition function
//! currently lies inside each construction's confidence set; the harness uses
//! them to monitor coverage and the optimism invariant.

use ndarray::{Array2, Array3};

use crate::error::SspError;
use crate::model::{NextState, Policy, SspInstance, ValueFunction};
use crate::planner;

/// Visit counters: cumulative counts plus per-epoch deltas of identical
/// shape. Triplet tables carry one trailing column for the goal.
#[derive(Debug, Clone)]
pub struct CountTable {
    num_states: usize,
    num_actions: usize,
    n: Array2<u64>,
    n3: Array3<u64>,
    delta_n: Array2<u64>,
    delta_n3: Array3<u64>,
}

impl CountTable {
    pub fn new(num_states: usize, num_actions: usize) -> Self {
        Self {
            num_states,
            num_actions,
            n: Array2::zeros((num_states, num_actions)),
            n3: Array3::zeros((num_states, num_actions, num_states + 1)),
            delta_n: Array2::zeros((num_states, num_actions)),
            delta_n3: Array3::zeros((num_states, num_actions, num_states + 1)),
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_actions(&self) -> usize {
        self.num_actions
    }

    /// Records a transition into the cumulative tables.
    pub fn record(&mut self, s: usize, a: usize, next: NextState) {
        self.n[[s, a]] += 1;
        self.n3[[s, a, next.column(self.num_states)]] += 1;
    }

    /// Records a transition into the epoch-delta tables only.
    pub fn record_delta(&mut self, s: usize, a: usize, next: NextState) {
        self.delta_n[[s, a]] += 1;
        self.delta_n3[[s, a, next.column(self.num_states)]] += 1;
    }

    /// Folds the epoch deltas into the cumulative tables and zeroes them.
    pub fn fold_deltas(&mut self) {
        self.n += &self.delta_n;
        self.n3 += &self.delta_n3;
        self.delta_n.fill(0);
        self.delta_n3.fill(0);
    }

    pub fn count(&self, s: usize, a: usize) -> u64 {
        self.n[[s, a]]
    }

    /// `max(N(s,a), 1)`.
    pub fn count_plus(&self, s: usize, a: usize) -> u64 {
        self.n[[s, a]].max(1)
    }

    pub fn delta(&self, s: usize, a: usize) -> u64 {
        self.delta_n[[s, a]]
    }

    pub fn triplet(&self, s: usize, a: usize, next: NextState) -> u64 {
        self.n3[[s, a, next.column(self.num_states)]]
    }

    /// Total cumulative visits over all pairs.
    pub fn total(&self) -> u64 {
        self.n.iter().sum()
    }

    /// Total delta visits over all pairs.
    pub fn total_delta(&self) -> u64 {
        self.delta_n.iter().sum()
    }

    /// Verifies that triplet counts sum to the pair counts, for both the
    /// cumulative tables and the deltas.
    pub fn is_consistent(&self) -> bool {
        for s in 0..self.num_states {
            for a in 0..self.num_actions {
                let sum: u64 = (0..=self.num_states).map(|c| self.n3[[s, a, c]]).sum();
                if sum != self.n[[s, a]] {
                    return false;
                }
                let dsum: u64 = (0..=self.num_states).map(|c| self.delta_n3[[s, a, c]]).sum();
                if dsum != self.delta_n[[s, a]] {
                    return false;
                }
            }
        }
        true
    }
}

/// An optimistic transition table (goal residual implicit) together with the
/// plan computed against it.
#[derive(Debug, Clone)]
pub struct OptimisticModel {
    pub trans: Array3<f64>,
    pub values: ValueFunction,
    pub policy: Policy,
    pub epoch_id: u64,
    pub converged: bool,
}

impl OptimisticModel {
    pub fn goal_residual(&self, s: usize, a: usize) -> f64 {
        let ns = self.trans.dim().2;
        let mut sum = 0.0;
        for s2 in 0..ns {
            sum += self.trans[[s, a, s2]];
        }
        (1.0 - sum).max(0.0)
    }
}

/// Empirical transition estimates `N(s,a,s') / max(N(s,a),1)` over the states
/// plus the goal (trailing column). Unvisited pairs give an all-zero row.
pub fn empirical_transitions(counts: &CountTable) -> Array3<f64> {
    let ns = counts.num_states;
    let na = counts.num_actions;
    let mut p = Array3::zeros((ns, na, ns + 1));
    for s in 0..ns {
        for a in 0..na {
            let denom = counts.count_plus(s, a) as f64;
            for c in 0..=ns {
                p[[s, a, c]] = counts.n3[[s, a, c]] as f64 / denom;
            }
        }
    }
    p
}

/// L1 confidence radius `5 * sqrt(|S| * ln(|S||A| N+ / delta) / N+)`.
///
/// A per-prefix union-bound derivation supports the same coverage with the
/// tighter `2 * sqrt(|S| * ln(8 |S||A| n^2 / delta) / n)`; the single-formula
/// radius above dominates it for every `n >= 1` and is the one the learners
/// use.
pub fn hoeffding_radius(n: u64, s_size: usize, a_size: usize, delta: f64) -> Result<f64, SspError> {
    check_delta(delta)?;
    let n_plus = n.max(1) as f64;
    let log_arg = (s_size * a_size) as f64 * n_plus / delta;
    Ok(5.0 * (s_size as f64 * log_arg.ln() / n_plus).sqrt())
}

/// Per-entry log factor `A(s,a) = ln(|S||A| N+ / delta) / N+`.
pub fn bernstein_log_term(
    n: u64,
    s_size: usize,
    a_size: usize,
    delta: f64,
) -> Result<f64, SspError> {
    check_delta(delta)?;
    let n_plus = n.max(1) as f64;
    Ok(((s_size * a_size) as f64 * n_plus / delta).ln() / n_plus)
}

/// Half-width of the per-entry confidence range around an empirical entry.
pub fn bernstein_deviation(p_bar: f64, log_term: f64) -> f64 {
    28.0 * log_term + 4.0 * (p_bar * log_term).sqrt()
}

fn check_delta(delta: f64) -> Result<(), SspError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(SspError::InvalidArgument(format!("delta = {delta} outside (0,1)")));
    }
    Ok(())
}

/// Minimizes `sum_s' q(s') J(s')` over rows `q` with `||q - p_row||_1 <=
/// radius`, `q >= 0`, `sum q <= 1`; the goal absorbs `1 - sum q` at zero
/// value. The minimizer simply moves mass to the goal from states in
/// non-increasing `J` order: a unit moved to the goal costs budget 1 and
/// saves `J(s')`, while any within-row transfer costs budget 2 and saves at
/// most as much, so no mass is ever added to a non-goal state.
pub fn inner_optimistic_distribution(
    p_row: &[f64],
    radius: f64,
    values: &ValueFunction,
) -> Result<Vec<f64>, SspError> {
    if radius < 0.0 || !radius.is_finite() {
        return Err(SspError::InvalidArgument(format!("radius = {radius} must be >= 0")));
    }
    if p_row.len() != values.len() {
        return Err(SspError::InvalidArgument(
            "row length does not match value function".into(),
        ));
    }
    let sum: f64 = p_row.iter().sum();
    if p_row.iter().any(|p| *p < 0.0 || !p.is_finite()) || sum > 1.0 + 1e-9 {
        return Err(SspError::InvalidArgument(format!(
            "malformed probability row (sum = {sum})"
        )));
    }
    let mut order: Vec<usize> = (0..p_row.len()).collect();
    order.sort_by(|&i, &j| {
        values.get(j).partial_cmp(&values.get(i)).unwrap().then(i.cmp(&j))
    });
    let mut q = p_row.to_vec();
    let mut budget = radius;
    for &s in &order {
        if budget <= 0.0 {
            break;
        }
        let take = q[s].min(budget);
        q[s] -= take;
        budget -= take;
    }
    Ok(q)
}

/// Cost-minimizing model and policy over the L1 confidence balls, found by
/// value iteration whose backup also minimizes over rows in the ball.
/// Every optimistic row keeps positive goal mass (the radius is strictly
/// positive), so the iteration contracts and all policies are proper in the
/// returned model. The realized rows of the final sweep are reported.
pub fn extended_value_iteration(
    counts: &CountTable,
    cost: &Array2<f64>,
    delta: f64,
    tol: f64,
    max_iter: usize,
) -> Result<OptimisticModel, SspError> {
    check_delta(delta)?;
    let ns = counts.num_states;
    let na = counts.num_actions;
    if cost.dim() != (ns, na) {
        return Err(SspError::InvalidArgument("cost table shape mismatch".into()));
    }
    let p_bar = empirical_transitions(counts);
    let mut radius = Array2::zeros((ns, na));
    for s in 0..ns {
        for a in 0..na {
            radius[[s, a]] = hoeffding_radius(counts.count(s, a), ns, na, delta)?;
        }
    }

    let row = |s: usize, a: usize| -> Vec<f64> {
        (0..ns).map(|s2| p_bar[[s, a, s2]]).collect()
    };

    let mut values = ValueFunction::zeros(ns);
    let mut converged = false;
    for _ in 0..max_iter {
        let mut next = ndarray::Array1::zeros(ns);
        for s in 0..ns {
            let mut best = f64::INFINITY;
            for a in 0..na {
                let q = inner_optimistic_distribution(&row(s, a), radius[[s, a]], &values)?;
                let mut val = cost[[s, a]];
                for (s2, mass) in q.iter().enumerate() {
                    val += mass * values.get(s2);
                }
                if val < best {
                    best = val;
                }
            }
            next[s] = best;
        }
        let change = values
            .values()
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        values = ValueFunction::new(next)?;
        if change <= tol {
            converged = true;
            break;
        }
    }

    // realize the rows and greedy policy of the final value function
    let mut trans = Array3::zeros((ns, na, ns));
    let mut greedy = vec![0usize; ns];
    for s in 0..ns {
        let mut best = f64::INFINITY;
        for a in 0..na {
            let q = inner_optimistic_distribution(&row(s, a), radius[[s, a]], &values)?;
            let mut val = cost[[s, a]];
            for s2 in 0..ns {
                val += q[s2] * values.get(s2);
                trans[[s, a, s2]] = q[s2];
            }
            if val < best {
                best = val;
                greedy[s] = a;
            }
        }
    }

    Ok(OptimisticModel {
        trans,
        values,
        policy: Policy::new(greedy, na)?,
        epoch_id: 0,
        converged,
    })
}

/// Closed-form optimistic transition table: each entry is taken at the bottom
/// of its per-entry confidence range, `max(pbar - 28A - 4 sqrt(pbar A), 0)`,
/// over the non-goal states only; the goal receives the enlarged residual.
pub fn bernstein_optimistic(counts: &CountTable, delta: f64) -> Result<Array3<f64>, SspError> {
    check_delta(delta)?;
    let ns = counts.num_states;
    let na = counts.num_actions;
    let p_bar = empirical_transitions(counts);
    let mut trans = Array3::zeros((ns, na, ns));
    for s in 0..ns {
        for a in 0..na {
            let log_term = bernstein_log_term(counts.count(s, a), ns, na, delta)?;
            for s2 in 0..ns {
                let p = p_bar[[s, a, s2]];
                trans[[s, a, s2]] = (p - bernstein_deviation(p, log_term)).max(0.0);
            }
        }
    }
    Ok(trans)
}

/// Builds the closed-form optimistic table and plans against it with plain
/// value iteration. Rows with no goal mass would trip the planner's
/// divergence guard and flag the result; the construction always leaves
/// positive goal mass, so in practice the plan converges.
pub fn optimistic_plan_bernstein(
    counts: &CountTable,
    cost: &Array2<f64>,
    delta: f64,
    tol: f64,
    max_iter: usize,
) -> Result<OptimisticModel, SspError> {
    let ns = counts.num_states;
    let na = counts.num_actions;
    if cost.dim() != (ns, na) {
        return Err(SspError::InvalidArgument("cost table shape mismatch".into()));
    }
    let trans = bernstein_optimistic(counts, delta)?;
    let instance = SspInstance::new(
        cost.clone(),
        trans.clone(),
        crate::model::point_mass_init(ns),
    )?;
    let plan = planner::value_iteration(&instance, tol, max_iter);
    Ok(OptimisticModel {
        trans,
        values: plan.values,
        policy: plan.policy,
        epoch_id: 0,
        converged: plan.converged,
    })
}

/// True iff every pair's empirical row is within its L1 radius of the true
/// transition function, measured over the states plus the goal residual.
pub fn contains_true_hoeffding(
    counts: &CountTable,
    instance: &SspInstance,
    delta: f64,
) -> Result<bool, SspError> {
    check_delta(delta)?;
    let ns = instance.num_states();
    let na = instance.num_actions();
    let p_bar = empirical_transitions(counts);
    for s in 0..ns {
        for a in 0..na {
            let mut dist = 0.0;
            for s2 in 0..ns {
                dist += (instance.trans_prob(s, a, s2) - p_bar[[s, a, s2]]).abs();
            }
            dist += (instance.goal_prob(s, a) - p_bar[[s, a, ns]]).abs();
            if dist > hoeffding_radius(counts.count(s, a), ns, na, delta)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff every triplet (goal included) satisfies the per-entry bound
/// `|P - pbar| <= 28A + 4 sqrt(pbar A)` at the current counts.
pub fn contains_true_bernstein(
    counts: &CountTable,
    instance: &SspInstance,
    delta: f64,
) -> Result<bool, SspError> {
    check_delta(delta)?;
    let ns = instance.num_states();
    let na = instance.num_actions();
    let p_bar = empirical_transitions(counts);
    for s in 0..ns {
        for a in 0..na {
            let log_term = bernstein_log_term(counts.count(s, a), ns, na, delta)?;
            for c in 0..=ns {
                let truth = if c < ns {
                    instance.trans_prob(s, a, c)
                } else {
                    instance.goal_prob(s, a)
                };
                let p = p_bar[[s, a, c]];
                if (truth - p).abs() > bernstein_deviation(p, log_term) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
