//! Online learning for stochastic shortest path at desk scale.
//!
//! The crate bundles:
//!
//! - [`model`]: goal-augmented tabular SSP instances, generators for the hard
//!   lower-bound family and random proper instances, cost perturbation, and a
//!   plain-text instance file format;
//! - [`planner`]: exact value iteration, policy evaluation, properness
//!   checks, hitting times, and a brute-force enumeration oracle;
//! - [`confidence`]: optimistic model construction from visit counts, either
//!   through an L1 confidence ball around the empirical transitions (solved
//!   by extended value iteration) or through per-entry lower confidence
//!   bounds with a closed-form optimistic transition table, plus the
//!   containment predicates used for monitoring;
//! - [`learners`]: the three step-driven online learners (L1 ball with a
//!   known cost bound, L1 ball with a doubling cost-bound estimate, and the
//!   per-entry variant with epoch doubling);
//! - [`harness`]: seeded experiment orchestration, regret ledgers, coverage
//!   and scaling reports, CSV output;
//! - [`oracle`]: an independent simplex LP solver and the verification suites
//!   driven by the `oracle-check` CLI subcommand.
//!
//! Everything is deterministic given the configured seeds: no wall-clock or
//! ambient entropy enters any code path.

pub mod confidence;
pub mod error;
pub mod harness;
pub mod learners;
pub mod model;
pub mod oracle;
pub mod planner;

pub use error::SspError;
