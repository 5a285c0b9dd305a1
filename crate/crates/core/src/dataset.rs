//! Data ingestion and the data-side distributions.
//!
//! Each datum fixes one world, so a dataset is stored as `(world, count)`
//! aggregates. The indicator p(M|D) is implicit in that mapping and
//! p(D = d_k) = 1/K, which makes the model prior p(m_n) = K_n / K.

use std::path::Path;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::logic::{Predicate, Vocabulary, World, WorldSet, DEFAULT_ATOM_CAP};
use crate::rational::{integer, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    vocab: Arc<Vocabulary>,
    entries: Vec<(World, u64)>,
    total: u64,
}

impl Dataset {
    pub fn new(vocab: Arc<Vocabulary>, entries: Vec<(World, u64)>) -> Result<Self> {
        vocab.check_cap(DEFAULT_ATOM_CAP)?;
        let mut seen = WorldSet::empty(vocab.atom_count());
        let mut total: u64 = 0;
        for (row, (world, count)) in entries.iter().enumerate() {
            let row = row + 1;
            if world.atom_count() != vocab.atom_count() {
                return Err(Error::Load {
                    row,
                    message: "world does not match the vocabulary".into(),
                });
            }
            if *count == 0 {
                return Err(Error::Load {
                    row,
                    message: "count must be a positive integer".into(),
                });
            }
            if seen.contains(*world) {
                return Err(Error::Load {
                    row,
                    message: format!("duplicate world {world}"),
                });
            }
            seen.insert(*world);
            total = total.checked_add(*count).ok_or_else(|| Error::Load {
                row,
                message: "total count overflows".into(),
            })?;
        }
        if total == 0 {
            return Err(Error::Document("dataset holds no data".into()));
        }
        Ok(Self {
            vocab,
            entries,
            total,
        })
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn entries(&self) -> &[(World, u64)] {
        &self.entries
    }

    /// K, the total number of data.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn model_counts(&self) -> ModelCounts {
        let mut counts = vec![0u64; self.vocab.world_count()];
        for (w, c) in &self.entries {
            counts[w.index()] = *c;
        }
        ModelCounts { counts }
    }

    /// Maximum likelihood prior: p(m_n) = K_n / K.
    pub fn mle_prior(&self) -> ModelDistribution {
        let k = integer(self.total);
        let mut probs: Vec<(usize, Rational)> = self
            .entries
            .iter()
            .map(|(w, c)| (w.index(), integer(*c) / &k))
            .collect();
        probs.sort_by_key(|(i, _)| *i);
        ModelDistribution::from_sorted(self.vocab.clone(), probs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Document(format!("cannot read {}: {e}", path.display())))?;
        if path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
        {
            Self::from_csv(&text)
        } else {
            Self::from_json(&text)
        }
    }

    /// `{"atoms": [...], "data": [{"world": {...}, "count": n}, ...]}`, with
    /// optional `"predicates"` and `"constants"`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        let vocab = Arc::new(vocab_from_json(&doc)?);
        let data = doc
            .get("data")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Document("missing `data` array".into()))?;
        let mut entries = Vec::with_capacity(data.len());
        for (i, item) in data.iter().enumerate() {
            let row = i + 1;
            let world = world_from_json(item.get("world"), &vocab, row)?;
            let count = match item.get("count") {
                Some(Value::Number(n)) => n.as_u64().filter(|&c| c >= 1),
                _ => None,
            }
            .ok_or_else(|| Error::Load {
                row,
                message: "count must be a positive integer".into(),
            })?;
            entries.push((world, count));
        }
        Self::new(vocab, entries)
    }

    /// Header row of atom names plus `count`; one world per row with 0/1 cells.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = reader
            .headers()
            .map_err(|e| Error::Document(e.to_string()))?
            .clone();
        let count_col = header
            .iter()
            .position(|h| h == "count")
            .ok_or_else(|| Error::Document("CSV header has no `count` column".into()))?;
        let atoms: Vec<String> = header
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != count_col)
            .map(|(_, h)| h.to_owned())
            .collect();
        let vocab = Arc::new(Vocabulary::propositional(&atoms)?);

        let mut entries = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let row = i + 1;
            let record = record.map_err(|e| Error::Load {
                row,
                message: e.to_string(),
            })?;
            let mut values = vec![false; atoms.len()];
            let mut count = None;
            for (col, cell) in record.iter().enumerate() {
                if col == count_col {
                    count = cell.parse::<u64>().ok().filter(|&c| c >= 1);
                    continue;
                }
                let atom = if col < count_col { col } else { col - 1 };
                values[atom] = match cell {
                    "0" => false,
                    "1" => true,
                    "" => {
                        return Err(Error::Load {
                            row,
                            message: format!("missing value for atom `{}`", atoms[atom]),
                        })
                    }
                    other => {
                        return Err(Error::Load {
                            row,
                            message: format!("cell `{other}` is not 0 or 1"),
                        })
                    }
                };
            }
            let count = count.ok_or_else(|| Error::Load {
                row,
                message: "count must be a positive integer".into(),
            })?;
            entries.push((World::from_values(&values), count));
        }
        Self::new(vocab, entries)
    }
}

/// Per-world datum counts K_n, zero for worlds without data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelCounts {
    counts: Vec<u64>,
}

impl ModelCounts {
    pub fn get(&self, world: usize) -> u64 {
        self.counts[world]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// An exact prior over worlds. Only worlds with positive probability are
/// stored; every other world has probability zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDistribution {
    vocab: Arc<Vocabulary>,
    probs: Vec<(usize, Rational)>,
    support: WorldSet,
}

impl ModelDistribution {
    fn from_sorted(vocab: Arc<Vocabulary>, probs: Vec<(usize, Rational)>) -> Self {
        let support = WorldSet::from_indices(vocab.atom_count(), probs.iter().map(|(i, _)| *i));
        Self {
            vocab,
            probs,
            support,
        }
    }

    /// Builds a distribution from explicit `(world, p)` pairs. Worlds not
    /// listed get probability zero.
    pub fn new(vocab: Arc<Vocabulary>, entries: Vec<(World, Rational)>) -> Result<Self> {
        vocab.check_cap(DEFAULT_ATOM_CAP)?;
        let mut seen = WorldSet::empty(vocab.atom_count());
        let mut sum = Rational::zero();
        let mut probs = Vec::new();
        for (world, p) in entries {
            if world.atom_count() != vocab.atom_count() {
                return Err(Error::Distribution(format!(
                    "world {world} does not match the vocabulary"
                )));
            }
            if seen.contains(world) {
                return Err(Error::Distribution(format!("world {world} listed twice")));
            }
            seen.insert(world);
            if p.is_negative() {
                return Err(Error::Distribution(format!(
                    "negative probability for {world}"
                )));
            }
            sum += &p;
            if !p.is_zero() {
                probs.push((world.index(), p));
            }
        }
        if !sum.is_one() {
            return Err(Error::Distribution(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        probs.sort_by_key(|(i, _)| *i);
        Ok(Self::from_sorted(vocab, probs))
    }

    /// One probability per world, in world-index order.
    pub fn from_dense(vocab: Arc<Vocabulary>, probs: Vec<Rational>) -> Result<Self> {
        if probs.len() != vocab.world_count() {
            return Err(Error::Distribution(format!(
                "expected {} probabilities, got {}",
                vocab.world_count(),
                probs.len()
            )));
        }
        let atoms = vocab.atom_count();
        let entries = probs
            .into_iter()
            .enumerate()
            .map(|(i, p)| (World::new(i, atoms), p))
            .collect();
        Self::new(vocab, entries)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Document(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// `{"atoms": [...], "prior": [{"world": {...}, "p": "9/10"}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        let vocab = Arc::new(vocab_from_json(&doc)?);
        let prior = doc
            .get("prior")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Document("missing `prior` array".into()))?;
        let mut entries = Vec::with_capacity(prior.len());
        for (i, item) in prior.iter().enumerate() {
            let row = i + 1;
            let world = world_from_json(item.get("world"), &vocab, row)?;
            let p = match item.get("p") {
                Some(Value::String(s)) => parse_rational(s),
                Some(Value::Number(n)) => parse_rational(&n.to_string()),
                _ => Err(Error::Document("missing `p`".into())),
            }
            .map_err(|e| Error::Load {
                row,
                message: e.to_string(),
            })?;
            entries.push((world, p));
        }
        Self::new(vocab, entries)
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn prob(&self, world: World) -> Rational {
        match self.probs.binary_search_by_key(&world.index(), |(i, _)| *i) {
            Ok(pos) => self.probs[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Worlds with positive probability and their probabilities, in index order.
    pub fn iter_support(&self) -> impl Iterator<Item = (World, &Rational)> + '_ {
        let atoms = self.vocab.atom_count();
        self.probs
            .iter()
            .map(move |(i, p)| (World::new(*i, atoms), p))
    }

    pub fn support(&self) -> &WorldSet {
        &self.support
    }

    /// Dense probabilities in world-index order.
    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.vocab.world_count()];
        for (i, p) in &self.probs {
            out[*i] = p.clone();
        }
        out
    }

    /// True iff every world is possible.
    pub fn model_assumption_holds(&self) -> bool {
        self.support.len() == self.vocab.world_count()
    }

    pub fn zero_worlds(&self) -> usize {
        self.vocab.world_count() - self.support.len()
    }

    /// Total mass of a set of worlds.
    pub fn mass(&self, worlds: &WorldSet) -> Rational {
        self.iter_support()
            .filter(|(w, _)| worlds.contains(*w))
            .map(|(_, p)| p.clone())
            .sum()
    }
}

fn vocab_from_json(doc: &Value) -> Result<Vocabulary> {
    let strings = |key: &str| -> Result<Vec<String>> {
        match doc.get(key) {
            None => Ok(Vec::new()),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| Error::Document(format!("`{key}` must hold strings")))
                })
                .collect(),
            Some(_) => Err(Error::Document(format!("`{key}` must be an array"))),
        }
    };
    let atoms = strings("atoms")?;
    let constants = strings("constants")?;
    let predicates = match doc.get("predicates") {
        None => Vec::new(),
        Some(v) => serde_json::from_value::<Vec<Predicate>>(v.clone())
            .map_err(|e| Error::Document(format!("bad `predicates`: {e}")))?,
    };
    Vocabulary::new(atoms, predicates, constants)
}

fn world_from_json(value: Option<&Value>, vocab: &Vocabulary, row: usize) -> Result<World> {
    let map = value
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Load {
            row,
            message: "missing `world` object".into(),
        })?;
    let mut values: Vec<Option<bool>> = vec![None; vocab.atom_count()];
    for (name, v) in map {
        let idx = vocab.index_of(name).ok_or_else(|| Error::Load {
            row,
            message: format!("unknown atom `{name}`"),
        })?;
        let truth = match v {
            Value::Bool(b) => *b,
            Value::Number(n) if n.as_u64() == Some(0) => false,
            Value::Number(n) if n.as_u64() == Some(1) => true,
            other => {
                return Err(Error::Load {
                    row,
                    message: format!("value {other} for `{name}` is not 0 or 1"),
                })
            }
        };
        values[idx] = Some(truth);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| Error::Load {
                row,
                message: format!("world lacks atom `{}`", vocab.ground_atoms()[i]),
            })
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(World::from_values(&values))
}
