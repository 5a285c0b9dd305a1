use std::collections::HashMap;
use std::fmt;

use super::vocab::{Vocabulary, DEFAULT_ATOM_CAP};
use super::world::{World, WorldSet};
use crate::error::{Error, Result};

/// A ground atom resolved to its position in the vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundAtom {
    pub index: usize,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(GroundAtom),
    /// Predicate application with at least one bound variable among its
    /// arguments; disappears during grounding.
    Pred {
        name: String,
        args: Vec<String>,
    },
    Top,
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(vocab: &Vocabulary, name: &str) -> Result<Self> {
        let index = vocab
            .index_of(name)
            .ok_or_else(|| Error::UnknownAtom(name.to_owned()))?;
        Ok(Formula::Atom(GroundAtom {
            index,
            name: name.to_owned(),
        }))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Self {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Self {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn implies(f: Formula, g: Formula) -> Self {
        Formula::Implies(Box::new(f), Box::new(g))
    }

    pub fn iff(f: Formula, g: Formula) -> Self {
        Formula::Iff(Box::new(f), Box::new(g))
    }

    /// True when no quantifier or unresolved predicate application remains.
    pub fn is_ground(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => true,
            Formula::Pred { .. } | Formula::ForAll(..) | Formula::Exists(..) => false,
            Formula::Not(f) => f.is_ground(),
            Formula::And(f, g)
            | Formula::Or(f, g)
            | Formula::Implies(f, g)
            | Formula::Iff(f, g) => f.is_ground() && g.is_ground(),
        }
    }

    /// Largest atom index mentioned, if any.
    pub fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::Atom(a) => Some(a.index),
            Formula::Pred { .. } | Formula::Top | Formula::Bottom => None,
            Formula::Not(f) | Formula::ForAll(_, f) | Formula::Exists(_, f) => f.max_atom(),
            Formula::And(f, g)
            | Formula::Or(f, g)
            | Formula::Implies(f, g)
            | Formula::Iff(f, g) => f.max_atom().max(g.max_atom()),
        }
    }

    /// Classical truth value in `world`.
    ///
    /// Panics on a formula that has not been grounded.
    pub fn evaluate(&self, world: World) -> bool {
        match self {
            Formula::Atom(a) => world.value(a.index),
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Not(f) => !f.evaluate(world),
            Formula::And(f, g) => f.evaluate(world) && g.evaluate(world),
            Formula::Or(f, g) => f.evaluate(world) || g.evaluate(world),
            Formula::Implies(f, g) => !f.evaluate(world) || g.evaluate(world),
            Formula::Iff(f, g) => f.evaluate(world) == g.evaluate(world),
            Formula::Pred { .. } | Formula::ForAll(..) | Formula::Exists(..) => {
                panic!("evaluate called on ungrounded formula `{self}`")
            }
        }
    }

    /// Expands quantifiers over the vocabulary's constants, innermost first.
    pub fn ground(&self, vocab: &Vocabulary) -> Result<Formula> {
        self.ground_in(vocab, &mut HashMap::new())
    }

    fn ground_in(&self, vocab: &Vocabulary, env: &mut HashMap<String, String>) -> Result<Formula> {
        Ok(match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => self.clone(),
            Formula::Pred { name, args } => {
                let mut resolved = Vec::with_capacity(args.len());
                for arg in args {
                    match env.get(arg) {
                        Some(c) => resolved.push(c.clone()),
                        None if vocab.is_constant(arg) => resolved.push(arg.clone()),
                        None => return Err(Error::FreeVariable(arg.clone())),
                    }
                }
                Formula::atom(vocab, &format!("{}({})", name, resolved.join(",")))?
            }
            Formula::Not(f) => Formula::not(f.ground_in(vocab, env)?),
            Formula::And(f, g) => Formula::and(f.ground_in(vocab, env)?, g.ground_in(vocab, env)?),
            Formula::Or(f, g) => Formula::or(f.ground_in(vocab, env)?, g.ground_in(vocab, env)?),
            Formula::Implies(f, g) => {
                Formula::implies(f.ground_in(vocab, env)?, g.ground_in(vocab, env)?)
            }
            Formula::Iff(f, g) => Formula::iff(f.ground_in(vocab, env)?, g.ground_in(vocab, env)?),
            Formula::ForAll(var, body) | Formula::Exists(var, body) => {
                if vocab.constants().is_empty() {
                    return Err(Error::EmptyDomain(var.clone()));
                }
                let universal = matches!(self, Formula::ForAll(..));
                let outer = env.get(var).cloned();
                let mut expansion: Option<Formula> = None;
                for c in vocab.constants() {
                    env.insert(var.clone(), c.clone());
                    let instance = body.ground_in(vocab, env);
                    let instance = match instance {
                        Ok(f) => f,
                        Err(e) => {
                            restore(env, var, outer);
                            return Err(e);
                        }
                    };
                    expansion = Some(match expansion {
                        None => instance,
                        Some(acc) if universal => Formula::and(acc, instance),
                        Some(acc) => Formula::or(acc, instance),
                    });
                }
                restore(env, var, outer);
                expansion.expect("constant set is nonempty")
            }
        })
    }
}

fn restore(env: &mut HashMap<String, String>, var: &str, outer: Option<String>) {
    match outer {
        Some(c) => env.insert(var.to_owned(), c),
        None => env.remove(var),
    };
}

/// Worlds satisfying every member of `premises`; all worlds when empty.
pub fn models_of(premises: &[Formula], vocab: &Vocabulary) -> Result<WorldSet> {
    vocab.check_cap(DEFAULT_ATOM_CAP)?;
    let atoms = vocab.atom_count();
    let mut set = WorldSet::empty(atoms);
    for i in 0..vocab.world_count() {
        let w = World::new(i, atoms);
        if premises.iter().all(|f| f.evaluate(w)) {
            set.insert(w);
        }
    }
    Ok(set)
}

/// Number of members of `premises` true in `world`, counted with multiplicity.
pub fn satisfied_count(premises: &[Formula], world: World) -> usize {
    premises.iter().filter(|f| f.evaluate(world)).count()
}

impl fmt::Display for Formula {
    /// Fully parenthesised ASCII, readable back by the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => f.write_str(&a.name),
            Formula::Pred { name, args } => write!(f, "{}({})", name, args.join(",")),
            Formula::Top => f.write_str("true"),
            Formula::Bottom => f.write_str("false"),
            Formula::Not(g) => write!(f, "~{g}"),
            Formula::And(g, h) => write!(f, "({g} & {h})"),
            Formula::Or(g, h) => write!(f, "({g} | {h})"),
            Formula::Implies(g, h) => write!(f, "({g} -> {h})"),
            Formula::Iff(g, h) => write!(f, "({g} <-> {h})"),
            Formula::ForAll(v, g) => write!(f, "(forall {v}. {g})"),
            Formula::Exists(v, g) => write!(f, "(exists {v}. {g})"),
        }
    }
}
