//! The designated sets `V_n`: atoms that are allowed to be contradictory at
//! level `n`. Their union is `V̂`.
//!
//! Only atomic formulas are ever members. A compound formula is outside
//! every `V_n`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("`{0}` is registered more than once")]
    DuplicateAtom(String),
    #[error("level {level} of `{atom}` is invalid; levels start at 1")]
    InvalidLevel { atom: String, level: u32 },
    #[error("`{0}` is not an atomic formula")]
    NotAtomic(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Registry {
    levels: BTreeMap<Formula, u32>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, atom: Formula, level: u32) -> Result<(), RegistryError> {
        if !atom.is_atomic() {
            return Err(RegistryError::NotAtomic(atom.to_string()));
        }
        if level == 0 {
            return Err(RegistryError::InvalidLevel { atom: atom.to_string(), level });
        }
        if self.levels.contains_key(&atom) {
            return Err(RegistryError::DuplicateAtom(atom.to_string()));
        }
        self.levels.insert(atom, level);
        Ok(())
    }

    /// Builder-style insert for tests and bundled registries.
    pub fn with(mut self, atom: Formula, level: u32) -> Result<Self, RegistryError> {
        self.insert(atom, level)?;
        Ok(self)
    }

    pub fn remove(&mut self, atom: &Formula) -> Option<u32> {
        self.levels.remove(atom)
    }

    /// The level `n` with `f ∈ V_n`, if any. Compound formulas have none.
    pub fn level_of(&self, f: &Formula) -> Option<u32> {
        if f.is_atomic() {
            self.levels.get(f).copied()
        } else {
            None
        }
    }

    /// `f ∈ V̂`.
    pub fn in_vhat(&self, f: &Formula) -> bool {
        self.level_of(f).is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn max_level(&self) -> Option<u32> {
        self.levels.values().copied().max()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Formula, u32)> {
        self.levels.iter().map(|(f, n)| (f, *n))
    }
}
