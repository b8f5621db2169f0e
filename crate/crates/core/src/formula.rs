//! Propositional formulas: parsing, truth-table semantics and conversion to
//! clause sets.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! iff   := imp ("<->" iff)?
//! imp   := or ("->" imp)?
//! or    := and ("|" and)*
//! and   := unary ("&" unary)*
//! unary := "~" unary | name | "(" iff ")"
//! ```

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::doctrine::{absorb, Clause};
use crate::error::Error;
use crate::literal::{is_name_char, AtomId, Lit, Universe};

/// Default cap on clauses produced while distributing `|` over `&`.
pub const DEFAULT_CLAUSE_BUDGET: usize = 100_000;

/// Default cap on the number of atoms enumerated by truth tables.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Lit(Lit),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn lit(l: Lit) -> Self {
        Formula::Lit(l)
    }

    /// Negation, folded into the literal when applied to one.
    pub fn negation(f: Formula) -> Self {
        match f {
            Formula::Lit(l) => Formula::Lit(!l),
            other => Formula::Not(Box::new(other)),
        }
    }

    /// Conjunction of a nonempty list; a single item is returned as is.
    pub fn and(mut items: Vec<Formula>) -> Self {
        assert!(!items.is_empty(), "empty conjunction");
        if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Formula::And(items)
        }
    }

    /// Disjunction of a nonempty list; a single item is returned as is.
    pub fn or(mut items: Vec<Formula>) -> Self {
        assert!(!items.is_empty(), "empty disjunction");
        if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Formula::Or(items)
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn atoms(&self) -> BTreeSet<AtomId> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<AtomId>) {
        match self {
            Formula::Lit(l) => {
                out.insert(l.atom());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }
}

/// A total map from atoms to truth values, indexed by [`AtomId`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthAssignment(pub Vec<bool>);

impl TruthAssignment {
    pub fn all(atoms: usize, value: bool) -> Self {
        TruthAssignment(vec![value; atoms])
    }

    /// Decodes `bits` with atom 0 as the most significant bit, so counting
    /// upwards enumerates assignments in lexicographic order.
    pub fn from_bits(atoms: usize, bits: u64) -> Self {
        TruthAssignment(
            (0..atoms)
                .map(|i| bits >> (atoms - 1 - i) & 1 == 1)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atom(&self, a: AtomId) -> bool {
        self.0[a.index()]
    }

    pub fn lit(&self, l: Lit) -> bool {
        self.0[l.atom().index()] != l.is_negative()
    }

    pub fn set(&mut self, a: AtomId, value: bool) {
        self.0[a.index()] = value;
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Name(&'a str),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Open,
    Close,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok<'_>, usize)>, Error> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let rest = &text[i..];
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Implies, 2)
        } else {
            match c {
                '~' => (Tok::Not, 1),
                '&' => (Tok::And, 1),
                '|' => (Tok::Or, 1),
                '(' => (Tok::Open, 1),
                ')' => (Tok::Close, 1),
                c if is_name_char(c) => {
                    let len = rest
                        .char_indices()
                        .find(|&(_, ch)| !is_name_char(ch))
                        .map_or(rest.len(), |(j, _)| j);
                    (Tok::Name(&rest[..len]), len)
                }
                other => {
                    return Err(Error::Syntax {
                        offset: i,
                        message: alloc::format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        out.push((tok, i));
        i += len;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a, 'u> {
    toks: Vec<(Tok<'a>, usize)>,
    pos: usize,
    universe: &'u mut Universe,
}

impl<'a> Parser<'a, '_> {
    fn peek(&self) -> Tok<'a> {
        self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok<'a> {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.offset(),
            message: message.to_string(),
        }
    }

    fn iff(&mut self) -> Result<Formula, Error> {
        let lhs = self.imp()?;
        if self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, Error> {
        let lhs = self.or()?;
        if self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, Error> {
        let mut items = vec![self.and()?];
        while self.peek() == Tok::Or {
            self.bump();
            items.push(self.and()?);
        }
        Ok(Formula::or(items))
    }

    fn and(&mut self) -> Result<Formula, Error> {
        let mut items = vec![self.unary()?];
        while self.peek() == Tok::And {
            self.bump();
            items.push(self.unary()?);
        }
        Ok(Formula::and(items))
    }

    fn unary(&mut self) -> Result<Formula, Error> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::negation(self.unary()?))
            }
            Tok::Name(name) => {
                let offset = self.offset();
                self.bump();
                let atom = self.universe.intern(name).map_err(|_| Error::Syntax {
                    offset,
                    message: alloc::format!("invalid atom name `{name}`"),
                })?;
                Ok(Formula::Lit(atom.positive()))
            }
            Tok::Open => {
                self.bump();
                let inner = self.iff()?;
                if self.peek() != Tok::Close {
                    return Err(self.error("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(self.error("unexpected end of input")),
            _ => Err(self.error("expected an atom, `~` or `(`")),
        }
    }
}

/// Parses `text`, declaring any new atoms in `universe`.
pub fn parse_formula(text: &str, universe: &mut Universe) -> Result<Formula, Error> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        universe,
    };
    let f = p.iff()?;
    if p.peek() != Tok::End {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// Semantics

pub fn evaluate(f: &Formula, u: &TruthAssignment) -> Result<bool, Error> {
    Ok(match f {
        Formula::Lit(l) => {
            let i = l.atom().index();
            if i >= u.len() {
                return Err(Error::MissingAtom(i));
            }
            u.lit(*l)
        }
        Formula::Not(g) => !evaluate(g, u)?,
        Formula::And(fs) => {
            let mut all = true;
            for g in fs {
                all &= evaluate(g, u)?;
            }
            all
        }
        Formula::Or(fs) => {
            let mut any = false;
            for g in fs {
                any |= evaluate(g, u)?;
            }
            any
        }
        Formula::Implies(a, b) => !evaluate(a, u)? || evaluate(b, u)?,
        Formula::Iff(a, b) => evaluate(a, u)? == evaluate(b, u)?,
    })
}

/// Every truth assignment over `atoms` (most significant first), embedded in
/// a total assignment of width `width`.
fn assignments_over(
    atoms: &[AtomId],
    width: usize,
    cap: usize,
) -> Result<impl Iterator<Item = TruthAssignment> + '_, Error> {
    if atoms.len() > cap || atoms.len() >= 64 {
        return Err(Error::EnumerationCap {
            atoms: atoms.len(),
            cap,
        });
    }
    let n = atoms.len();
    Ok((0..1u64 << n).map(move |bits| {
        let mut u = TruthAssignment::all(width, false);
        for (i, &a) in atoms.iter().enumerate() {
            u.set(a, bits >> (n - 1 - i) & 1 == 1);
        }
        u
    }))
}

/// True iff every assignment satisfying `f` satisfies `g`, by enumerating
/// the atoms occurring in either formula.
pub fn entails(f: &Formula, g: &Formula, cap: usize) -> Result<bool, Error> {
    let mut atoms = f.atoms();
    atoms.extend(g.atoms());
    let atoms: Vec<AtomId> = atoms.into_iter().collect();
    let width = atoms.last().map_or(0, |a| a.index() + 1);
    for u in assignments_over(&atoms, width, cap)? {
        if evaluate(f, &u)? && !evaluate(g, &u)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Plain distributive CNF conversion. No auxiliary atoms are introduced.
/// Tautological clauses are dropped and the result is closed under
/// absorption, in canonical order.
pub fn to_clause_set(f: &Formula, budget: usize) -> Result<Vec<Clause>, Error> {
    let clauses = cnf(f, true, budget)?;
    Ok(absorb(clauses))
}

fn cnf(f: &Formula, positive: bool, budget: usize) -> Result<Vec<Clause>, Error> {
    match (f, positive) {
        (Formula::Lit(l), pos) => {
            let l = if pos { *l } else { !*l };
            Ok(vec![Clause::new(vec![l])])
        }
        (Formula::Not(g), pos) => cnf(g, !pos, budget),
        (Formula::And(fs), true) | (Formula::Or(fs), false) => {
            let mut out = Vec::new();
            for g in fs {
                out.extend(cnf(g, positive, budget)?);
                if out.len() > budget {
                    return Err(Error::ClauseBudget { limit: budget });
                }
            }
            Ok(absorb(out))
        }
        (Formula::Or(fs), true) | (Formula::And(fs), false) => {
            let mut acc = vec![Clause::new(Vec::new())];
            for g in fs {
                let part = cnf(g, positive, budget)?;
                acc = distribute(&acc, &part, budget)?;
            }
            Ok(acc)
        }
        (Formula::Implies(a, b), true) => {
            let lhs = cnf(a, false, budget)?;
            let rhs = cnf(b, true, budget)?;
            distribute(&lhs, &rhs, budget)
        }
        (Formula::Implies(a, b), false) => {
            let mut out = cnf(a, true, budget)?;
            out.extend(cnf(b, false, budget)?);
            Ok(absorb(out))
        }
        (Formula::Iff(a, b), pos) => {
            // a <-> b  ==  (~a | b) & (a | ~b)
            // ~(a <-> b) == (a | b) & (~a | ~b)
            let (first_a, first_b) = if pos { (false, true) } else { (true, true) };
            let c1 = distribute(
                &cnf(a, first_a, budget)?,
                &cnf(b, first_b, budget)?,
                budget,
            )?;
            let c2 = distribute(&cnf(a, !first_a, budget)?, &cnf(b, !first_b, budget)?, budget)?;
            let mut out = c1;
            out.extend(c2);
            if out.len() > budget {
                return Err(Error::ClauseBudget { limit: budget });
            }
            Ok(absorb(out))
        }
    }
}

/// Clause set of `(AND xs) | (AND ys)`.
fn distribute(xs: &[Clause], ys: &[Clause], budget: usize) -> Result<Vec<Clause>, Error> {
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            let mut lits = x.lits().to_vec();
            lits.extend_from_slice(y.lits());
            let c = Clause::new(lits);
            if !c.is_tautology() {
                out.push(c);
                if out.len() > budget {
                    return Err(Error::ClauseBudget { limit: budget });
                }
            }
        }
    }
    Ok(absorb(out))
}
