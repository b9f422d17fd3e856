//! Exact, reproducible experiments on product sets of integers.
//!
//! The library computes, at desk scale and without approximation:
//!
//! - the number of distinct entries in the n-by-n multiplication table and
//!   general product-set sizes ([`products`]);
//! - per-product pair multiplicities and multiplicative energy
//!   ([`products::tau_counts`], [`products::multiplicative_energy`]);
//! - sieved integer constructions: squarefree sets with slowly growing
//!   prime factors, their strict prime-position variant, Ω-bounded sets,
//!   and seeded random thinning ([`construct`]);
//! - tilted divisor sums Σ λ^{Ω(m,t)} with mean-value ratio diagnostics
//!   ([`tilted`]);
//! - the closed-form constants and derived parameters behind all of the
//!   above ([`constants`]).
//!
//! Everything is deterministic: randomized constructions are pure functions
//! of their seed, and every parallel computation uses fixed work chunks with
//! ordered merges so results are identical at any worker count. The
//! `parallel` feature (on by default) backs chunked work with rayon;
//! without it the same chunks run sequentially.

pub mod constants;
pub mod construct;
pub mod error;
pub mod exec;
pub mod products;
pub mod report;
pub mod setio;
pub mod sieve;
pub mod tilted;

pub use constants::{
    derive_params, derive_params_clamped, iterated_log, mn_prediction, taylor_inequality_check,
    theta, theta_forms, ConstructionParams, VALIDITY_FLOOR,
};
pub use construct::{
    coverage_deficit, default_rho, growth_set, growth_set_comparator, imbalance_bound_evaluate,
    imbalance_closed_bound, imbalance_exponent, omega_bounded_set, omega_set_comparator,
    prime_position_set, random_thin, thinning_experiment, CoverageDeficit, GrowthConstrainedSet,
    ImbalanceBound, OmegaBoundedSet, ThinningLab, ThinningOutcome, ThinningSurrogates,
    DEFAULT_SLACK,
};
pub use error::{Error, Result};
pub use exec::{Resources, DEFAULT_MEM_BUDGET};
pub use products::{
    energy_diagnostics, multiplication_table_size, multiplicative_energy, product_set_summary,
    table_coverage, tau_counts, tau_histogram, validate_set, EnergyDiagnostics, ProductSetSummary,
    ProductTally, TableCoverage, TauHistogram, MAX_ELEMENT,
};
pub use report::{ExperimentReport, CSV_HEADER};
pub use setio::{read_set, write_set};
pub use sieve::{FactorSieve, FactorSignature};
pub use tilted::{
    energy_scale_evaluate, heavy_count_report, hr_general_ratio, hr_ratio, prime_reciprocal_sum,
    tilted_sum, EnergyScale, HeavyCountReport, TiltParams, LAMBDA_CAP,
};
