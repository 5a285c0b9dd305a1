use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the number of ground atoms whose worlds may be enumerated.
pub const DEFAULT_ATOM_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicate {
    pub name: String,
    pub arity: usize,
}

/// The propositional symbols plus the ground atoms of any declared predicates.
///
/// Ground atoms are ordered: plain atoms first in declaration order, then each
/// predicate in declaration order applied to every tuple of constants in
/// lexicographic order of the constant list.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    atoms: Vec<String>,
    predicates: Vec<Predicate>,
    constants: Vec<String>,
    ground: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground
            && self.predicates == other.predicates
            && self.constants == other.constants
    }
}

impl Eq for Vocabulary {}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl Vocabulary {
    pub fn propositional<S: AsRef<str>>(atoms: &[S]) -> Result<Self> {
        Self::new(
            atoms.iter().map(|a| a.as_ref().to_owned()).collect(),
            Vec::new(),
            Vec::new(),
        )
    }

    pub fn new(
        atoms: Vec<String>,
        predicates: Vec<Predicate>,
        constants: Vec<String>,
    ) -> Result<Self> {
        let mut seen = HashMap::new();
        for name in atoms
            .iter()
            .chain(predicates.iter().map(|p| &p.name))
            .chain(&constants)
        {
            if !valid_ident(name) || matches!(name.as_str(), "true" | "false" | "forall" | "exists")
            {
                return Err(Error::Vocabulary(format!(
                    "`{name}` is not a usable symbol name"
                )));
            }
            if seen.insert(name.clone(), ()).is_some() {
                return Err(Error::Vocabulary(format!("symbol `{name}` declared twice")));
            }
        }
        if predicates.iter().any(|p| p.arity == 0) {
            return Err(Error::Vocabulary(
                "predicates need arity of at least 1".into(),
            ));
        }
        if !predicates.is_empty() && constants.is_empty() {
            return Err(Error::Vocabulary(
                "predicates declared without constants".into(),
            ));
        }

        let mut ground = atoms.clone();
        let base = constants.len();
        for p in &predicates {
            let tuples = u32::try_from(p.arity)
                .ok()
                .and_then(|a| base.checked_pow(a))
                .filter(|&n| n < usize::BITS as usize)
                .ok_or_else(|| Error::Resource {
                    what: format!("ground atoms of `{}`", p.name),
                    limit: usize::BITS as usize - 1,
                })?;
            for mut code in 0..tuples {
                let mut args = vec![""; p.arity];
                for slot in args.iter_mut().rev() {
                    *slot = &constants[code % base];
                    code /= base;
                }
                ground.push(format!("{}({})", p.name, args.join(",")));
            }
        }
        if ground.is_empty() {
            return Err(Error::Vocabulary("no atoms declared".into()));
        }
        if ground.len() >= usize::BITS as usize {
            return Err(Error::Resource {
                what: format!("{} ground atoms", ground.len()),
                limit: usize::BITS as usize - 1,
            });
        }
        let index = ground
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        Ok(Self {
            atoms,
            predicates,
            constants,
            ground,
            index,
        })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn predicates(&self) -> &[Predicate] {
        &self.predicates
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn predicate(&self, name: &str) -> Option<&Predicate> {
        self.predicates.iter().find(|p| p.name == name)
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| c == name)
    }

    /// All ground atom names, in world-encoding order.
    pub fn ground_atoms(&self) -> &[String] {
        &self.ground
    }

    pub fn atom_count(&self) -> usize {
        self.ground.len()
    }

    pub fn index_of(&self, ground_atom: &str) -> Option<usize> {
        self.index.get(ground_atom).copied()
    }

    /// N = 2^A. Only meaningful when A fits the enumeration cap.
    pub fn world_count(&self) -> usize {
        1usize << self.ground.len()
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        if self.atom_count() > cap {
            Err(Error::Resource {
                what: format!("{} ground atoms", self.atom_count()),
                limit: cap,
            })
        } else {
            Ok(())
        }
    }
}
