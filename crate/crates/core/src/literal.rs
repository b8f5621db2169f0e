//! Atoms, literals and the atom universe they are drawn from.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Not;

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn positive(self) -> Lit {
        Lit::new(self, false)
    }

    pub fn negative(self) -> Lit {
        Lit::new(self, true)
    }
}

/// An atom or its negation, packed as `2 * atom + negated`.
///
/// The packing gives the canonical literal order: by atom declaration
/// index, positive before negative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(atom: AtomId, negated: bool) -> Self {
        Lit(atom.0 * 2 + negated as u32)
    }

    pub fn from_code(code: usize) -> Self {
        Lit(code as u32)
    }

    pub fn atom(self) -> AtomId {
        AtomId(self.0 / 2)
    }

    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn is_positive(self) -> bool {
        !self.is_negative()
    }

    /// Dense index in `0..2 * atom_count`, used by valuations.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn negate(self) -> Self {
        Lit(self.0 ^ 1)
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        self.negate()
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            write!(f, "~#{}", self.atom().0)
        } else {
            write!(f, "#{}", self.atom().0)
        }
    }
}

/// Characters allowed in atom names. Operators and whitespace are excluded
/// so that names survive both the formula grammar and the line formats.
pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(is_name_char)
}

/// An ordered set of atom names. Declaration order is preserved and
/// determines every canonical ordering downstream.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    index: BTreeMap<String, AtomId>,
}

impl Universe {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut u = Universe::new();
        for n in names {
            u.intern(n.as_ref())?;
        }
        Ok(u)
    }

    /// Returns the id of `name`, declaring it if new.
    pub fn intern(&mut self, name: &str) -> Result<AtomId, Error> {
        if let Some(&id) = self.index.get(name) {
            return Ok(id);
        }
        if !is_valid_name(name) {
            return Err(Error::InvalidAtomName(name.to_string()));
        }
        let id = AtomId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn get(&self, name: &str) -> Option<AtomId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, atom: AtomId) -> &str {
        &self.names[atom.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        (0..self.names.len() as u32).map(AtomId)
    }

    /// All literals in canonical order: `p, ~p, q, ~q, ...`.
    pub fn literals(&self) -> impl Iterator<Item = Lit> + '_ {
        (0..2 * self.names.len()).map(Lit::from_code)
    }

    /// Parses `name` or `~name`.
    pub fn parse_lit(&self, text: &str) -> Result<Lit, Error> {
        let (negated, name) = match text.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let atom = self
            .get(name)
            .ok_or_else(|| Error::UnknownAtom(name.to_string()))?;
        Ok(Lit::new(atom, negated))
    }

    pub fn lit_name(&self, lit: Lit) -> String {
        let mut s = String::new();
        if lit.is_negative() {
            s.push('~');
        }
        s.push_str(self.name(lit.atom()));
        s
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}
