use std::fmt;

use fixedbitset::FixedBitSet;

use super::vocab::Vocabulary;
use crate::error::Result;

/// A total truth assignment, stored as its index.
///
/// Atom `i` (in vocabulary order) is bit `A - 1 - i` of the index, so the
/// first declared atom is the most significant bit and worlds enumerate in
/// truth-table row order: `(0,0), (0,1), (1,0), (1,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World {
    index: usize,
    atoms: usize,
}

impl World {
    pub fn new(index: usize, atoms: usize) -> Self {
        debug_assert!(atoms < usize::BITS as usize && index < 1usize << atoms);
        Self { index, atoms }
    }

    pub fn from_values(values: &[bool]) -> Self {
        let index = values
            .iter()
            .fold(0usize, |acc, &v| (acc << 1) | usize::from(v));
        Self {
            index,
            atoms: values.len(),
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    #[inline]
    pub fn value(&self, atom: usize) -> bool {
        (self.index >> (self.atoms - 1 - atom)) & 1 == 1
    }

    pub fn values(&self) -> Vec<bool> {
        (0..self.atoms).map(|a| self.value(a)).collect()
    }
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for a in 0..self.atoms {
            if a > 0 {
                f.write_str(",")?;
            }
            f.write_str(if self.value(a) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// All 2^A worlds of the vocabulary in index order.
pub fn enumerate_worlds(vocab: &Vocabulary) -> Result<Vec<World>> {
    enumerate_worlds_capped(vocab, super::vocab::DEFAULT_ATOM_CAP)
}

pub fn enumerate_worlds_capped(vocab: &Vocabulary, cap: usize) -> Result<Vec<World>> {
    vocab.check_cap(cap)?;
    let atoms = vocab.atom_count();
    Ok((0..vocab.world_count())
        .map(|i| World::new(i, atoms))
        .collect())
}

/// A set of worlds over a fixed vocabulary size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WorldSet {
    atoms: usize,
    bits: FixedBitSet,
}

impl WorldSet {
    pub fn empty(atoms: usize) -> Self {
        Self {
            atoms,
            bits: FixedBitSet::with_capacity(1usize << atoms),
        }
    }

    pub fn full(atoms: usize) -> Self {
        let mut set = Self::empty(atoms);
        set.bits.insert_range(..);
        set
    }

    pub fn from_indices(atoms: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(atoms);
        for i in indices {
            set.bits.insert(i);
        }
        set
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    pub fn insert(&mut self, world: World) {
        self.bits.insert(world.index());
    }

    pub fn contains(&self, world: World) -> bool {
        self.bits.contains(world.index())
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        WorldSet {
            atoms: self.atoms,
            bits,
        }
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        WorldSet {
            atoms: self.atoms,
            bits,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = World> + '_ {
        let atoms = self.atoms;
        self.bits.ones().map(move |i| World::new(i, atoms))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|w| w.to_string()))
            .finish()
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let worlds: Vec<String> = self.iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", worlds.join(", "))
    }
}
