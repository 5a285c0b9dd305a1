//! Exact inference for generative logic models.
//!
//! Data select worlds, worlds determine truth values, and truth values are
//! sampled through a Bernoulli interpretation parameter μ. Queries
//! p(α | Δ) are answered exactly at any rational μ, at μ = 1, and in the
//! limit μ → 1.

pub mod consequence;
pub mod dataset;
pub mod engine;
mod error;
pub mod logic;
pub mod mu;
pub mod rational;

pub use consequence::{
    approximate_models, entails_classical, entails_possible, maximal_consistent_subsets,
    maximal_possible_subsets, maximal_possible_subsets_with, possible_approximate_models,
    possible_models, ConsequenceReport, Relation, Subset, SubsetFamily, SubsetMode,
};
pub use dataset::{Dataset, ModelCounts, ModelDistribution};
pub use engine::{
    bayes_decomposition, conditional_symbolic, fast_data_query, fast_data_query_limit, marginal,
    query, BayesDecomposition, MuSetting, Query, QueryResult, Regime,
};
pub use error::{Error, Result};
pub use logic::{
    enumerate_worlds, models_of, parse, parse_ground, parse_premises, Formula, Vocabulary, World,
    WorldSet,
};
pub use mu::{likelihood_poly, MuPolynomial, MuRationalFunction, Outcome};
pub use rational::Rational;
