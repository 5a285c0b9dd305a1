#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use genlog::rational::ratio;
use genlog::{Dataset, Formula, ModelDistribution, Query, Rational, Vocabulary, World};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn vocab(atoms: usize) -> Arc<Vocabulary> {
    let names: Vec<String> = (0..atoms).map(|i| format!("a{i}")).collect();
    Arc::new(Vocabulary::propositional(&names).unwrap())
}

pub fn random_formula<R: Rng>(rng: &mut R, vocab: &Vocabulary, depth: usize) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..12) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => {
                let i = rng.gen_range(0..vocab.atom_count());
                Formula::atom(vocab, &vocab.ground_atoms()[i]).unwrap()
            }
        };
    }
    let sub = |rng: &mut R| random_formula(rng, vocab, depth - 1);
    match rng.gen_range(0..5) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        _ => Formula::iff(sub(rng), sub(rng)),
    }
}

/// Premise multiset of up to `max_len` formulas; repeats are drawn on purpose
/// so that multiplicity is exercised.
pub fn random_premises<R: Rng>(rng: &mut R, vocab: &Vocabulary, max_len: usize) -> Vec<Formula> {
    let len = rng.gen_range(0..=max_len);
    let mut out: Vec<Formula> = Vec::with_capacity(len);
    for _ in 0..len {
        if !out.is_empty() && rng.gen_bool(0.15) {
            let dup = out[rng.gen_range(0..out.len())].clone();
            out.push(dup);
        } else {
            out.push(random_formula(rng, vocab, 3));
        }
    }
    out
}

/// Dataset over a random subset of worlds with small positive counts.
pub fn random_dataset<R: Rng>(rng: &mut R, vocab: &Arc<Vocabulary>, max_entries: usize) -> Dataset {
    let n = vocab.world_count();
    let mut worlds: Vec<usize> = (0..n).collect();
    worlds.shuffle(rng);
    let entries = rng.gen_range(1..=max_entries.min(n));
    let atoms = vocab.atom_count();
    let data = worlds[..entries]
        .iter()
        .map(|&i| (World::new(i, atoms), rng.gen_range(1..=6u64)))
        .collect();
    Dataset::new(vocab.clone(), data).unwrap()
}

/// Strictly positive probabilities on every world.
pub fn random_full_support<R: Rng>(rng: &mut R, vocab: &Arc<Vocabulary>) -> ModelDistribution {
    let weights: Vec<i64> = (0..vocab.world_count())
        .map(|_| rng.gen_range(1..=9))
        .collect();
    let total: i64 = weights.iter().sum();
    ModelDistribution::from_dense(
        vocab.clone(),
        weights.iter().map(|&w| ratio(w, total)).collect(),
    )
    .unwrap()
}

pub struct Instance {
    pub vocab: Arc<Vocabulary>,
    pub dataset: Dataset,
    pub prior: ModelDistribution,
    pub query: Query,
}

/// ≤4 atoms, ≤12 dataset entries, |Δ| ≤ 5.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let vocab = vocab(rng.gen_range(1..=4));
    let dataset = random_dataset(rng, &vocab, 12);
    let prior = dataset.mle_prior();
    let target = random_formula(rng, &vocab, 3);
    let premises = random_premises(rng, &vocab, 5);
    let query = Query::new(vocab.clone(), target, premises).unwrap();
    Instance {
        vocab,
        dataset,
        prior,
        query,
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    ratio(n, d)
}
