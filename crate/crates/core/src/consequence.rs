//! Classical and possible-model consequence, maximal consistent / possible
//! sub-multisets of a premise multiset, and (possible) approximate models.

use std::collections::BTreeSet;
use std::fmt;

use crate::dataset::ModelDistribution;
use crate::error::{Error, Result};
use crate::logic::{
    enumerate_worlds, models_of, satisfied_count, Formula, Vocabulary, World, WorldSet,
};

/// Above this many premises the explicit sub-multiset enumerator is refused.
pub const EXPLICIT_SUBSET_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Δ ⊨ α: every model of Δ is a model of α.
    Classical,
    /// Δ ⊫ α: every possible model of Δ is a model of α.
    Possible,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Classical => "classical",
            Relation::Possible => "possible",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceReport {
    pub relation: Relation,
    pub holds: bool,
    /// ⟦Δ⟧ for classical, ⟦Δ⟧_p for possible.
    pub witness: WorldSet,
}

pub fn entails_classical(
    premises: &[Formula],
    conclusion: &Formula,
    vocab: &Vocabulary,
) -> Result<ConsequenceReport> {
    let witness = models_of(premises, vocab)?;
    let holds = witness.iter().all(|w| conclusion.evaluate(w));
    Ok(ConsequenceReport {
        relation: Relation::Classical,
        holds,
        witness,
    })
}

pub fn entails_possible(
    premises: &[Formula],
    conclusion: &Formula,
    dist: &ModelDistribution,
) -> ConsequenceReport {
    let witness = possible_models(premises, dist);
    let holds = witness.iter().all(|w| conclusion.evaluate(w));
    ConsequenceReport {
        relation: Relation::Possible,
        holds,
        witness,
    }
}

/// ⟦Δ⟧_p: models of every premise with nonzero probability.
pub fn possible_models(premises: &[Formula], dist: &ModelDistribution) -> WorldSet {
    let mut set = WorldSet::empty(dist.vocab().atom_count());
    for (w, _) in dist.iter_support() {
        if premises.iter().all(|f| f.evaluate(w)) {
            set.insert(w);
        }
    }
    set
}

/// A sub-multiset of the premises, given as positions into the premise list,
/// together with its (possible) models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    pub positions: Vec<usize>,
    pub models: WorldSet,
}

impl Subset {
    /// Cardinality, counting multiplicity.
    pub fn size(&self) -> usize {
        self.positions.len()
    }

    pub fn formulas<'a>(&self, premises: &'a [Formula]) -> Vec<&'a Formula> {
        self.positions.iter().map(|&i| &premises[i]).collect()
    }
}

/// Cardinality-maximal sub-multisets with a nonempty model set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    pub members: Vec<Subset>,
}

impl SubsetFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Size shared by every member.
    pub fn cardinality(&self) -> usize {
        self.members.first().map_or(0, Subset::size)
    }

    /// Members as sets of positions, for order-insensitive comparison.
    pub fn position_sets(&self) -> BTreeSet<Vec<usize>> {
        self.members.iter().map(|s| s.positions.clone()).collect()
    }

    /// Union of the members' model sets.
    pub fn models(&self, atoms: usize) -> WorldSet {
        self.members
            .iter()
            .fold(WorldSet::empty(atoms), |acc, s| acc.union(&s.models))
    }

    pub fn render(&self, premises: &[Formula]) -> String {
        let sets: Vec<String> = self
            .members
            .iter()
            .map(|s| {
                let fs: Vec<String> = s.formulas(premises).iter().map(|f| f.to_string()).collect();
                format!("{{{}}}", fs.join(", "))
            })
            .collect();
        format!("{{{}}}", sets.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubsetMode {
    /// Explicit enumeration up to [`EXPLICIT_SUBSET_LIMIT`] premises, argmax beyond.
    #[default]
    Auto,
    Explicit,
    Argmax,
}

/// MPS(Δ): the cardinality-maximal sub-multisets whose possible-model set is
/// nonempty. With a full-support distribution this is MCS(Δ).
pub fn maximal_possible_subsets(
    premises: &[Formula],
    dist: &ModelDistribution,
) -> Result<SubsetFamily> {
    maximal_possible_subsets_with(premises, dist, SubsetMode::Auto)
}

pub fn maximal_possible_subsets_with(
    premises: &[Formula],
    dist: &ModelDistribution,
    mode: SubsetMode,
) -> Result<SubsetFamily> {
    let universe: Vec<World> = dist.iter_support().map(|(w, _)| w).collect();
    maximal_subsets(premises, &universe, dist.vocab().atom_count(), mode)
}

/// MCS(Δ): the cardinality-maximal classically satisfiable sub-multisets.
pub fn maximal_consistent_subsets(
    premises: &[Formula],
    vocab: &Vocabulary,
) -> Result<SubsetFamily> {
    let universe = enumerate_worlds(vocab)?;
    maximal_subsets(premises, &universe, vocab.atom_count(), SubsetMode::Auto)
}

fn maximal_subsets(
    premises: &[Formula],
    universe: &[World],
    atoms: usize,
    mode: SubsetMode,
) -> Result<SubsetFamily> {
    let explicit = match mode {
        SubsetMode::Auto => premises.len() <= EXPLICIT_SUBSET_LIMIT,
        SubsetMode::Explicit if premises.len() > EXPLICIT_SUBSET_LIMIT => {
            return Err(Error::Resource {
                what: format!("explicit enumeration over {} premises", premises.len()),
                limit: EXPLICIT_SUBSET_LIMIT,
            })
        }
        SubsetMode::Explicit => true,
        SubsetMode::Argmax => false,
    };
    Ok(if explicit {
        enumerate_subsets(premises, universe, atoms)
    } else {
        argmax_subsets(premises, universe, atoms)
    })
}

/// Walks every sub-multiset: for each distinct premise with multiplicity k,
/// takes 0..=k copies.
fn enumerate_subsets(premises: &[Formula], universe: &[World], atoms: usize) -> SubsetFamily {
    let mut groups: Vec<(&Formula, Vec<usize>)> = Vec::new();
    for (i, f) in premises.iter().enumerate() {
        match groups.iter_mut().find(|(g, _)| *g == f) {
            Some((_, positions)) => positions.push(i),
            None => groups.push((f, vec![i])),
        }
    }
    let group_models: Vec<WorldSet> = groups
        .iter()
        .map(|(f, _)| {
            WorldSet::from_indices(
                atoms,
                universe
                    .iter()
                    .filter(|w| f.evaluate(**w))
                    .map(World::index),
            )
        })
        .collect();
    let all = WorldSet::from_indices(atoms, universe.iter().map(World::index));

    let mut best = 0usize;
    let mut members: Vec<Subset> = Vec::new();
    let mut choice = vec![0usize; groups.len()];
    loop {
        let mut models = all.clone();
        let mut positions = Vec::new();
        for (g, &c) in choice.iter().enumerate() {
            if c > 0 {
                models = models.intersection(&group_models[g]);
                positions.extend_from_slice(&groups[g].1[..c]);
            }
        }
        if !models.is_empty() && positions.len() >= best {
            if positions.len() > best {
                best = positions.len();
                members.clear();
            }
            positions.sort_unstable();
            members.push(Subset { positions, models });
        }

        // mixed-radix increment
        let mut g = 0;
        while g < choice.len() {
            choice[g] += 1;
            if choice[g] <= groups[g].1.len() {
                break;
            }
            choice[g] = 0;
            g += 1;
        }
        if g == choice.len() {
            break;
        }
    }
    members.sort_by(|a, b| a.positions.cmp(&b.positions));
    SubsetFamily { members }
}

/// Members are exactly the satisfied-premise sets of the worlds that satisfy
/// the most premises.
fn argmax_subsets(premises: &[Formula], universe: &[World], atoms: usize) -> SubsetFamily {
    let best = universe.iter().map(|w| satisfied_count(premises, *w)).max();
    let Some(best) = best else {
        return SubsetFamily {
            members: Vec::new(),
        };
    };
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for w in universe {
        let sat: Vec<usize> = (0..premises.len())
            .filter(|&i| premises[i].evaluate(*w))
            .collect();
        if sat.len() == best {
            sets.insert(sat);
        }
    }
    let members = sets
        .into_iter()
        .map(|positions| {
            let models = WorldSet::from_indices(
                atoms,
                universe
                    .iter()
                    .filter(|w| positions.iter().all(|&i| premises[i].evaluate(**w)))
                    .map(World::index),
            );
            Subset { positions, models }
        })
        .collect();
    SubsetFamily { members }
}

/// ⟦Δ⟧_MPS: support worlds satisfying the maximal number c* of premises,
/// or the empty set when c* = 0.
pub fn possible_approximate_models(premises: &[Formula], dist: &ModelDistribution) -> WorldSet {
    argmax_worlds(
        premises,
        dist.iter_support().map(|(w, _)| w),
        dist.vocab().atom_count(),
    )
}

/// ⟦Δ⟧_MCS: the classical counterpart over all worlds.
pub fn approximate_models(premises: &[Formula], vocab: &Vocabulary) -> Result<WorldSet> {
    Ok(argmax_worlds(
        premises,
        enumerate_worlds(vocab)?.into_iter(),
        vocab.atom_count(),
    ))
}

fn argmax_worlds(
    premises: &[Formula],
    worlds: impl Iterator<Item = World>,
    atoms: usize,
) -> WorldSet {
    let mut best = 0usize;
    let mut set = WorldSet::empty(atoms);
    for w in worlds {
        let s = satisfied_count(premises, w);
        if s == 0 || s < best {
            continue;
        }
        if s > best {
            best = s;
            set = WorldSet::empty(atoms);
        }
        set.insert(w);
    }
    set
}
