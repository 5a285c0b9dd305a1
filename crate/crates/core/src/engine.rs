//! Conditional probability queries p(α | Δ) over a generative logic model.
//!
//! The joint of a world m, the target α and the premise multiset Δ is
//! p(m) · p(α | m, μ) · Π_{β∈Δ} p(β | m, μ), each factor Bernoulli in μ. The
//! symbolic route builds that quotient as a rational function of μ; the
//! closed forms below are what it collapses to at μ = 1 and as μ → 1.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::consequence::possible_approximate_models;
use crate::dataset::{Dataset, ModelDistribution};
use crate::error::{Error, Result};
use crate::logic::{
    parse_ground, parse_premises, satisfied_count, Formula, Vocabulary, World, WorldSet,
};
use crate::mu::{MuPolynomial, MuRationalFunction, Outcome, MAX_PREMISES};
use crate::rational::{in_unit_interval, integer, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuSetting {
    Exact(Rational),
    /// μ = 1, the Boolean case.
    One,
    /// μ → 1.
    LimitOne,
}

impl FromStr for MuSetting {
    type Err = Error;

    /// `1`, `limit`, `p/q` or a decimal in [0, 1].
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(MuSetting::One),
            "limit" => Ok(MuSetting::LimitOne),
            other => {
                let mu = parse_rational(other)?;
                if !in_unit_interval(&mu) {
                    return Err(Error::MuDomain(other.to_owned()));
                }
                Ok(MuSetting::Exact(mu))
            }
        }
    }
}

/// Which closed form produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    /// μ = 1, every world possible.
    Theorem1,
    /// μ = 1, some worlds impossible.
    Theorem2,
    /// μ → 1, every world possible, approximate models exist.
    Theorem3,
    /// μ → 1, every world possible, no world satisfies any premise.
    Theorem4,
    /// μ → 1, possible approximate models exist.
    Theorem5,
    /// μ → 1, no possible world satisfies any premise.
    Theorem6,
    /// Substitution of an explicit μ into the symbolic form.
    DirectEval,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    pub value: Outcome,
    pub regime: Regime,
    /// The worlds the closed form summed over.
    pub witness: Option<WorldSet>,
}

/// p(target | premises), with both sides grounded over one vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    vocab: Arc<Vocabulary>,
    target: Formula,
    premises: Vec<Formula>,
}

impl Query {
    /// Grounds `target` and `premises` if needed.
    pub fn new(vocab: Arc<Vocabulary>, target: Formula, premises: Vec<Formula>) -> Result<Self> {
        if premises.len() > MAX_PREMISES {
            return Err(Error::Resource {
                what: format!("{} premises", premises.len()),
                limit: MAX_PREMISES,
            });
        }
        let ground = |f: Formula| -> Result<Formula> {
            let f = if f.is_ground() { f } else { f.ground(&vocab)? };
            match f.max_atom() {
                Some(i) if i >= vocab.atom_count() => Err(Error::VocabularyMismatch),
                _ => Ok(f),
            }
        };
        let target = ground(target)?;
        let premises = premises
            .into_iter()
            .map(ground)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            vocab,
            target,
            premises,
        })
    }

    /// `premises` is a `;`-separated list.
    pub fn parse(vocab: Arc<Vocabulary>, target: &str, premises: &str) -> Result<Self> {
        let t = parse_ground(target, &vocab)?;
        let ps = parse_premises(premises, &vocab)?;
        Self::new(vocab, t, ps)
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn target(&self) -> &Formula {
        &self.target
    }

    pub fn premises(&self) -> &[Formula] {
        &self.premises
    }

    fn check_vocab(&self, other: &Vocabulary) -> Result<()> {
        if *self.vocab == *other {
            Ok(())
        } else {
            Err(Error::VocabularyMismatch)
        }
    }

    /// (|Δ|_w, ⟦α⟧_w)
    fn score(&self, world: World) -> (usize, bool) {
        (
            satisfied_count(&self.premises, world),
            self.target.evaluate(world),
        )
    }
}

/// p(α | Δ) as a rational function of μ, summed over the support:
/// numerator Σ_m p({α} ∪ Δ | m) p(m), denominator Σ_m p(Δ | m) p(m).
pub fn conditional_symbolic(q: &Query, dist: &ModelDistribution) -> Result<MuRationalFunction> {
    q.check_vocab(dist.vocab())?;
    let n = q.premises.len();
    // Worlds sharing a score share a likelihood polynomial; sum their mass first.
    let mut mass: BTreeMap<(usize, bool), Rational> = BTreeMap::new();
    for (w, p) in dist.iter_support() {
        *mass.entry(q.score(w)).or_insert_with(Rational::zero) += p;
    }
    let mut num = MuPolynomial::zero();
    let mut den = MuPolynomial::zero();
    for ((s, alpha), p) in &mass {
        num.add_scaled(&MuPolynomial::bernoulli(s + usize::from(*alpha), n + 1)?, p);
        den.add_scaled(&MuPolynomial::bernoulli(*s, n)?, p);
    }
    Ok(MuRationalFunction::new(num, den))
}

pub fn query(q: &Query, dist: &ModelDistribution, setting: &MuSetting) -> Result<QueryResult> {
    q.check_vocab(dist.vocab())?;
    match setting {
        MuSetting::One => Ok(query_one(q, dist)),
        MuSetting::LimitOne => Ok(query_limit(q, dist)),
        MuSetting::Exact(mu) => {
            let value = conditional_symbolic(q, dist)?.evaluate_at(mu)?;
            Ok(QueryResult {
                value,
                regime: Regime::DirectEval,
                witness: None,
            })
        }
    }
}

/// Σ over possible models of Δ that satisfy α, over Σ over possible models of Δ.
fn query_one(q: &Query, dist: &ModelDistribution) -> QueryResult {
    let atoms = dist.vocab().atom_count();
    let mut witness = WorldSet::empty(atoms);
    let mut num = Rational::zero();
    let mut den = Rational::zero();
    for (w, p) in dist.iter_support() {
        let (s, alpha) = q.score(w);
        if s == q.premises.len() {
            witness.insert(w);
            den += p;
            if alpha {
                num += p;
            }
        }
    }
    let regime = if dist.model_assumption_holds() {
        Regime::Theorem1
    } else {
        Regime::Theorem2
    };
    QueryResult {
        value: Outcome::ratio(num, den),
        regime,
        witness: Some(witness),
    }
}

fn query_limit(q: &Query, dist: &ModelDistribution) -> QueryResult {
    let full = dist.model_assumption_holds();
    let approx = possible_approximate_models(&q.premises, dist);
    if approx.is_empty() {
        // No possible world satisfies any single premise: the premises carry
        // no information and the answer is the marginal.
        let marginal: Rational = dist
            .iter_support()
            .filter(|(w, _)| q.target.evaluate(*w))
            .map(|(_, p)| p.clone())
            .sum();
        return QueryResult {
            value: Outcome::Defined(marginal),
            regime: if full {
                Regime::Theorem4
            } else {
                Regime::Theorem6
            },
            witness: Some(dist.support().clone()),
        };
    }
    let mut num = Rational::zero();
    let mut den = Rational::zero();
    for (w, p) in dist.iter_support().filter(|(w, _)| approx.contains(*w)) {
        den += p;
        if q.target.evaluate(w) {
            num += p;
        }
    }
    QueryResult {
        value: Outcome::ratio(num, den),
        regime: if full {
            Regime::Theorem3
        } else {
            Regime::Theorem5
        },
        witness: Some(approx),
    }
}

/// p(α) under `setting`: the query with no premises.
pub fn marginal(
    alpha: &Formula,
    dist: &ModelDistribution,
    setting: &MuSetting,
) -> Result<QueryResult> {
    let q = Query::new(dist.vocab().clone(), alpha.clone(), Vec::new())?;
    query(&q, dist, setting)
}

/// μ = 1 answer straight from the dataset aggregates:
/// Σ_k ⟦α⟧ ⟦Δ⟧ / Σ_k ⟦Δ⟧ over data, count-weighted, without touching the
/// 2^A worlds.
pub fn fast_data_query(q: &Query, ds: &Dataset) -> Result<QueryResult> {
    q.check_vocab(ds.vocab())?;
    let mut witness = WorldSet::empty(ds.vocab().atom_count());
    let (mut num, mut den) = (0u128, 0u128);
    for (w, count) in ds.entries() {
        if q.premises.iter().all(|b| b.evaluate(*w)) {
            witness.insert(*w);
            den += u128::from(*count);
            if q.target.evaluate(*w) {
                num += u128::from(*count);
            }
        }
    }
    let full = ds.entries().len() == ds.vocab().world_count();
    Ok(QueryResult {
        value: count_ratio(num, den),
        regime: if full {
            Regime::Theorem1
        } else {
            Regime::Theorem2
        },
        witness: Some(witness),
    })
}

/// μ → 1 answer from the dataset aggregates: restrict to data whose world
/// satisfies the most premises, or fall back to the marginal when that
/// maximum is zero.
pub fn fast_data_query_limit(q: &Query, ds: &Dataset) -> Result<QueryResult> {
    q.check_vocab(ds.vocab())?;
    let scored: Vec<(World, u64, usize, bool)> = ds
        .entries()
        .iter()
        .map(|(w, c)| {
            let (s, a) = q.score(*w);
            (*w, *c, s, a)
        })
        .collect();
    let best = scored.iter().map(|e| e.2).max().unwrap_or(0);
    let full = ds.entries().len() == ds.vocab().world_count();
    let atoms = ds.vocab().atom_count();

    let regime = match (best, full) {
        (0, true) => Regime::Theorem4,
        (0, false) => Regime::Theorem6,
        (_, true) => Regime::Theorem3,
        (_, false) => Regime::Theorem5,
    };
    // with best = 0 every datum is kept and the answer is the marginal
    let keep = |s: usize| s == best;
    let mut witness = WorldSet::empty(atoms);
    let (mut num, mut den) = (0u128, 0u128);
    for (w, c, s, a) in &scored {
        if keep(*s) {
            witness.insert(*w);
            den += u128::from(*c);
            if *a {
                num += u128::from(*c);
            }
        }
    }
    Ok(QueryResult {
        value: count_ratio(num, den),
        regime,
        witness: Some(witness),
    })
}

fn count_ratio(num: u128, den: u128) -> Outcome {
    let big = |x: u128| Rational::from_integer(x.into());
    Outcome::ratio(big(num), big(den))
}

/// The four Bayes terms at μ = 1, plus p(Δ | ¬α) so the evidence can be
/// expanded by total probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BayesDecomposition {
    /// p(α | Δ)
    pub posterior: Outcome,
    /// p(Δ | α)
    pub likelihood: Outcome,
    /// p(Δ | ¬α)
    pub likelihood_complement: Outcome,
    /// p(α)
    pub prior: Rational,
    /// p(Δ)
    pub evidence: Rational,
}

impl BayesDecomposition {
    /// posterior · evidence = likelihood · prior, when both sides are defined.
    pub fn identity_holds(&self) -> Option<bool> {
        let post = self.posterior.value()?;
        let lik = self.likelihood.value()?;
        Some(post * &self.evidence == lik * &self.prior)
    }

    /// p(Δ | α) p(α) + p(Δ | ¬α) p(¬α), when both conditionals are defined
    /// or carry zero weight.
    pub fn evidence_by_total_probability(&self) -> Option<Rational> {
        let complement_prior = Rational::from_integer(1.into()) - &self.prior;
        let term = |lik: &Outcome, weight: &Rational| -> Option<Rational> {
            if weight.is_zero() {
                Some(Rational::zero())
            } else {
                lik.value().map(|l| l * weight)
            }
        };
        Some(
            term(&self.likelihood, &self.prior)?
                + term(&self.likelihood_complement, &complement_prior)?,
        )
    }
}

pub fn bayes_decomposition(q: &Query, dist: &ModelDistribution) -> Result<BayesDecomposition> {
    q.check_vocab(dist.vocab())?;
    let n = q.premises.len();
    let (mut both, mut delta_only, mut alpha_mass, mut delta_mass) = (
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    );
    for (w, p) in dist.iter_support() {
        let (s, alpha) = q.score(w);
        let delta = s == n;
        if alpha {
            alpha_mass += p;
        }
        if delta {
            delta_mass += p;
            if alpha {
                both += p;
            } else {
                delta_only += p;
            }
        }
    }
    let not_alpha_mass = integer(1) - &alpha_mass;
    Ok(BayesDecomposition {
        posterior: Outcome::ratio(both.clone(), delta_mass.clone()),
        likelihood: Outcome::ratio(both, alpha_mass.clone()),
        likelihood_complement: Outcome::ratio(delta_only, not_alpha_mass),
        prior: alpha_mass,
        evidence: delta_mass,
    })
}
