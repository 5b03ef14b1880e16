//! Independent verification routes for the optimistic-row minimization and
//! the planner.
//!
//! The row minimization is re-solved here as a generic linear program with a
//! small dense simplex method, deliberately sharing no code or insight with
//! the greedy implementation it checks. The planner is cross-checked against
//! exhaustive policy enumeration on small seeded instances.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::confidence::inner_optimistic_distribution;
use crate::error::SspError;
use crate::model::{make_random_instance, ValueFunction};
use crate::planner;

const PIVOT_TOL: f64 = 1e-11;

/// Minimizes `c . x` subject to `A x <= b`, `x >= 0`, with `b >= 0`.
/// Dense tableau simplex with Bland's rule; suitable for the tiny programs
/// the oracle builds.
pub fn solve_lp_min(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<f64, SspError> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(SspError::InvalidArgument("inconsistent LP dimensions".into()));
    }
    if b.iter().any(|v| *v < 0.0) {
        return Err(SspError::InvalidArgument("simplex start requires b >= 0".into()));
    }
    // maximize -c over [x | slack]; tableau rows carry the constraints,
    // the last row carries reduced costs of the maximization objective
    let width = n + m + 1;
    let mut tab = vec![vec![0.0f64; width]; m + 1];
    for i in 0..m {
        tab[i][..n].copy_from_slice(&a[i]);
        tab[i][n + i] = 1.0;
        tab[i][width - 1] = b[i];
    }
    for (j, cj) in c.iter().enumerate() {
        tab[m][j] = -cj;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    for _ in 0..10_000 {
        // Bland: entering = lowest-index column with positive reduced cost
        let Some(pivot_col) = (0..n + m).find(|&j| tab[m][j] > PIVOT_TOL) else {
            break;
        };
        // leaving row by minimum ratio, ties toward the lowest basis index
        let mut pivot_row = None;
        let mut best_ratio = f64::INFINITY;
        for (i, row) in tab.iter().enumerate().take(m) {
            if row[pivot_col] > PIVOT_TOL {
                let ratio = row[width - 1] / row[pivot_col];
                let better = ratio < best_ratio - PIVOT_TOL
                    || ((ratio - best_ratio).abs() <= PIVOT_TOL
                        && pivot_row.is_none_or(|r: usize| basis[i] < basis[r]));
                if better {
                    best_ratio = ratio;
                    pivot_row = Some(i);
                }
            }
        }
        let Some(pivot_row) = pivot_row else {
            return Err(SspError::NumericFailure("unbounded linear program".into()));
        };
        let piv = tab[pivot_row][pivot_col];
        for entry in tab[pivot_row].iter_mut() {
            *entry /= piv;
        }
        let pivot_values = tab[pivot_row].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != pivot_row {
                let factor = row[pivot_col];
                if factor != 0.0 {
                    for (entry, pv) in row.iter_mut().zip(&pivot_values) {
                        *entry -= factor * pv;
                    }
                }
            }
        }
        basis[pivot_row] = pivot_col;
    }
    // the objective row accumulates the negated maximization value, which is
    // exactly the original minimization optimum
    Ok(tab[m][width - 1])
}

/// LP route for the inner row minimization: minimize `sum_i J_i q_i` over
/// `||q - p||_1 <= radius`, `q >= 0`, `sum q <= 1`. Encoded with split
/// variables `q = p + add - sub`, which keeps every right-hand side
/// non-negative.
pub fn lp_inner_minimum(p_row: &[f64], radius: f64, values: &[f64]) -> Result<f64, SspError> {
    let n = p_row.len();
    if values.len() != n {
        return Err(SspError::InvalidArgument("row/value length mismatch".into()));
    }
    // variables: add_0..add_{n-1}, sub_0..sub_{n-1}
    let mut c = vec![0.0; 2 * n];
    for i in 0..n {
        c[i] = values[i];
        c[n + i] = -values[i];
    }
    let mut a = Vec::with_capacity(n + 2);
    let mut b = Vec::with_capacity(n + 2);
    for i in 0..n {
        // q_i >= 0  <=>  sub_i - add_i <= p_i
        let mut row = vec![0.0; 2 * n];
        row[i] = -1.0;
        row[n + i] = 1.0;
        a.push(row);
        b.push(p_row[i]);
    }
    // L1 budget: sum(add) + sum(sub) <= radius
    a.push(vec![1.0; 2 * n]);
    b.push(radius);
    // total mass: sum(add) - sum(sub) <= 1 - sum(p)
    let mut row = vec![1.0; n];
    row.resize(2 * n, -1.0);
    a.push(row);
    b.push(1.0 - p_row.iter().sum::<f64>());
    let base: f64 = p_row.iter().zip(values).map(|(p, j)| p * j).sum();
    Ok(base + solve_lp_min(&c, &a, &b)?)
}

/// Outcome of one oracle suite.
#[derive(Debug)]
pub struct OracleReport {
    pub trials: usize,
    pub failures: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the greedy row minimization against the LP route and against
/// random feasible candidate rows. `corrupt_greedy` is a negative-control
/// hook: it replaces the greedy output with the unperturbed empirical row, a
/// deliberately wrong answer the suite must flag.
pub fn check_inner_minimization(
    trials: usize,
    feasible_points: usize,
    seed: u64,
    corrupt_greedy: bool,
) -> Result<OracleReport, SspError> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let n = rng.gen_range(2..=6usize);
        // random subdistribution over the states (goal takes the rest)
        let mut weights = vec![0.0f64; n + 1];
        let mut total = 0.0;
        for w in weights.iter_mut() {
            let e = -(1.0 - rng.gen::<f64>()).ln();
            *w = e;
            total += e;
        }
        let p_row: Vec<f64> = weights[..n].iter().map(|w| w / total).collect();
        let radius = rng.gen::<f64>() * 1.9;
        let j_vec: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 10.0).collect();
        let values =
            ValueFunction::new(ndarray::Array1::from_vec(j_vec.clone())).expect("non-negative");

        let q = if corrupt_greedy {
            p_row.clone()
        } else {
            inner_optimistic_distribution(&p_row, radius, &values)?
        };
        let objective: f64 = q.iter().zip(&j_vec).map(|(q, j)| q * j).sum();

        // feasibility of the produced row
        let l1: f64 = q.iter().zip(&p_row).map(|(q, p)| (q - p).abs()).sum();
        if l1 > radius + 1e-12 || q.iter().any(|x| *x < -1e-15) || q.iter().sum::<f64>() > 1.0 + 1e-12
        {
            failures.push(format!("trial {trial}: greedy row infeasible (l1 = {l1})"));
            continue;
        }

        // LP route
        let lp = lp_inner_minimum(&p_row, radius, &j_vec)?;
        if (objective - lp).abs() > 1e-9 {
            failures.push(format!(
                "trial {trial}: greedy objective {objective} differs from LP {lp}"
            ));
            continue;
        }

        // random feasible candidates must never beat the minimizer
        let mut sampled = 0usize;
        let mut attempts = 0usize;
        while sampled < feasible_points && attempts < feasible_points * 20 {
            attempts += 1;
            let mut cand = p_row.clone();
            let mut budget = radius * rng.gen::<f64>();
            for entry in cand.iter_mut() {
                if budget <= 0.0 {
                    break;
                }
                let delta = (rng.gen::<f64>() * 2.0 - 1.0) * budget;
                let applied = if delta < 0.0 { delta.max(-*entry) } else { delta };
                *entry += applied;
                budget -= applied.abs();
            }
            if cand.iter().sum::<f64>() > 1.0 {
                continue;
            }
            let cand_l1: f64 = cand.iter().zip(&p_row).map(|(q, p)| (q - p).abs()).sum();
            if cand_l1 > radius {
                continue;
            }
            sampled += 1;
            let cand_obj: f64 = cand.iter().zip(&j_vec).map(|(q, j)| q * j).sum();
            if objective > cand_obj + 1e-9 {
                failures.push(format!(
                    "trial {trial}: feasible candidate beats the greedy ({cand_obj} < {objective})"
                ));
                break;
            }
        }
    }
    Ok(OracleReport { trials, failures })
}

/// Checks value iteration against exhaustive policy enumeration on seeded
/// small random instances.
pub fn check_planner_enumeration(instances: usize, seed: u64) -> Result<OracleReport, SspError> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..instances {
        let ns = rng.gen_range(2..=4usize);
        let na = rng.gen_range(2..=3usize);
        let inst_seed = rng.gen::<u64>();
        let instance = make_random_instance(inst_seed, ns, na, 0.05, 0.05)?;
        let vi = planner::value_iteration(&instance, 1e-12, planner::DEFAULT_MAX_ITER);
        if !vi.converged {
            failures.push(format!("trial {trial}: value iteration did not converge"));
            continue;
        }
        let oracle = planner::exhaustive_optimal(&instance)?;
        for s in 0..ns {
            let gap = (vi.values.get(s) - oracle.values.get(s)).abs();
            if gap > 1e-6 {
                failures.push(format!(
                    "trial {trial}: state {s} differs by {gap} (vi {} vs enumeration {})",
                    vi.values.get(s),
                    oracle.values.get(s)
                ));
            }
        }
    }
    Ok(OracleReport { trials: instances, failures })
}
