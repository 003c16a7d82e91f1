//! Exact worst-case couplings and robust revenue for item pricing to a
//! unit-demand buyer with known marginals.

pub mod adversary;
pub mod choice;
pub mod error;
pub mod generators;
pub mod model;
pub mod oracle;
pub mod pricing;
pub mod rational;

pub use adversary::{
    best_response, comonotonic_coupling, revenue_of_coupling, Adversary, BestResponse, Chain, Coupling,
};
pub use choice::{augment_with_null, dominates, Augmented, Candidate, ItemRef, TieBreakRule};
pub use error::{Error, Result};
pub use generators::{
    discretize_exponential, discretize_exponential_median, discretize_uniform, gen_identical_eqrev, gen_mis,
    gen_truncated_eqrev, is_pricing, mis_lower_bound, mis_upper_bound, Graph,
};
pub use model::{cdf, quantile, validate_marginal, Atom, Instance, Item, Marginal, Price, Pricing};
pub use oracle::{
    enumerate_couplings, expand_to_multiset, max_prefix_sale_prob, min_revenue_bruteforce, MultisetInstance,
    OracleLimits,
};
pub use pricing::{
    comonotonic_welfare, half_threshold_pricing, max_median_single_price, mhr_factor, myerson,
    myerson_sum_upper_bound, robust_revenue, search_maxmin, CandidateGrid, PricingReport, SearchOptions,
    SearchOutcome,
};
pub use rational::{rat, Rational};
