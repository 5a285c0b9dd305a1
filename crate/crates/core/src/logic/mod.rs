//! Formula language: vocabularies, worlds, parsing, grounding and evaluation.

mod formula;
mod parser;
mod vocab;
mod world;

pub use formula::{models_of, satisfied_count, Formula, GroundAtom};
pub use parser::{parse, parse_ground, parse_premises};
pub use vocab::{Predicate, Vocabulary, DEFAULT_ATOM_CAP};
pub use world::{enumerate_worlds, enumerate_worlds_capped, World, WorldSet};
