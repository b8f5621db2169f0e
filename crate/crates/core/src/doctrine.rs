//! Clause-set algebra for doctrines.
//!
//! A [`Doctrine`] is a satisfiable clause set with no unit clauses and no
//! tautologies. The tertium-non-datur clauses `l | ~l` are never stored;
//! every consumer treats them as implicitly present.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::Error;
use crate::formula::{TruthAssignment, DEFAULT_CLAUSE_BUDGET, DEFAULT_ENUMERATION_CAP};
use crate::literal::{AtomId, Lit, Universe};

/// A disjunction of literals, stored as a sorted duplicate-free set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new(mut lits: Vec<Lit>) -> Self {
        lits.sort_unstable();
        lits.dedup();
        Clause { lits }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.lits.binary_search(&l).is_ok()
    }

    /// Contains some literal together with its negation.
    pub fn is_tautology(&self) -> bool {
        // complementary literals have adjacent codes
        self.lits.windows(2).any(|w| w[0].atom() == w[1].atom())
    }

    pub fn is_subset_of(&self, other: &Clause) -> bool {
        if self.lits.len() > other.lits.len() {
            return false;
        }
        let mut it = other.lits.iter();
        'outer: for l in &self.lits {
            for m in it.by_ref() {
                match m.cmp(l) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_satisfied_by(&self, u: &TruthAssignment) -> bool {
        self.lits.iter().any(|&l| u.lit(l))
    }

    /// Number of positive literals.
    pub fn positives(&self) -> usize {
        self.lits.iter().filter(|l| l.is_positive()).count()
    }

    /// Space-separated literal names in canonical order.
    pub fn render(&self, universe: &Universe) -> String {
        let mut s = String::new();
        for (i, &l) in self.lits.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&universe.lit_name(l));
        }
        s
    }

    fn signature(&self) -> u64 {
        self.lits
            .iter()
            .fold(0, |acc, l| acc | 1u64 << (l.code() % 64))
    }

    fn remap(&self, map: &[Option<AtomId>]) -> Clause {
        Clause::new(
            self.lits
                .iter()
                .map(|l| Lit::new(map[l.atom().index()].unwrap(), l.is_negative()))
                .collect(),
        )
    }
}

/// Canonical clause order: shorter first, then lexicographic on literals.
impl Ord for Clause {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lits
            .len()
            .cmp(&other.lits.len())
            .then_with(|| self.lits.cmp(&other.lits))
    }
}

impl PartialOrd for Clause {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders each clause with [`Clause::render`].
pub fn render_clauses(universe: &Universe, clauses: &[Clause]) -> Vec<String> {
    clauses.iter().map(|c| c.render(universe)).collect()
}

/// Keeps the inclusion-minimal clauses, deduplicated, in canonical order.
pub fn absorb(mut clauses: Vec<Clause>) -> Vec<Clause> {
    clauses.sort();
    clauses.dedup();
    let mut kept: Vec<(u64, Clause)> = Vec::with_capacity(clauses.len());
    for c in clauses {
        let sig = c.signature();
        let absorbed = kept
            .iter()
            .any(|(s, k)| s & !sig == 0 && k.is_subset_of(&c));
        if !absorbed {
            kept.push((sig, c));
        }
    }
    kept.into_iter().map(|(_, c)| c).collect()
}

/// Resolvent of `c1` and `c2` on `pivot`, or `None` when it is tautological.
pub fn resolve(c1: &Clause, c2: &Clause, pivot: Lit) -> Result<Option<Clause>, Error> {
    if !c1.contains(pivot) || !c2.contains(!pivot) {
        return Err(Error::Precondition(
            "pivot must occur in the first clause and its negation in the second".into(),
        ));
    }
    Ok(resolve_unchecked(c1, c2, pivot))
}

fn resolve_unchecked(c1: &Clause, c2: &Clause, pivot: Lit) -> Option<Clause> {
    let lits = c1
        .lits
        .iter()
        .filter(|&&l| l != pivot)
        .chain(c2.lits.iter().filter(|&&l| l != !pivot))
        .copied()
        .collect();
    let r = Clause::new(lits);
    (!r.is_tautology()).then_some(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub clause_budget: usize,
    pub enumeration_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            clause_budget: DEFAULT_CLAUSE_BUDGET,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// A normalized doctrine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Doctrine {
    universe: Universe,
    clauses: Vec<Clause>,
    fixed: Vec<(String, bool)>,
    blake: bool,
}

impl Doctrine {
    /// Remaining atoms, i.e. declared atoms minus those fixed by unit
    /// propagation, in declaration order.
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn atom_count(&self) -> usize {
        self.universe.len()
    }

    /// Proper clauses in canonical order.
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Atoms eliminated by unit propagation with their forced values.
    pub fn fixed(&self) -> &[(String, bool)] {
        &self.fixed
    }

    /// Tertium-non-datur clauses are always considered adjoined.
    pub fn includes_tnd(&self) -> bool {
        true
    }

    /// Whether the proper clauses are exactly the prime implicates.
    pub fn is_blake(&self) -> bool {
        self.blake
    }

    pub fn satisfied_by(&self, u: &TruthAssignment) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(u))
    }

    /// A copy keeping only the clauses accepted by `keep`. The result is not
    /// certified as a Blake canonical form.
    pub fn retain_clauses(&self, mut keep: impl FnMut(&Clause) -> bool) -> Doctrine {
        Doctrine {
            universe: self.universe.clone(),
            clauses: self.clauses.iter().filter(|c| keep(c)).cloned().collect(),
            fixed: self.fixed.clone(),
            blake: false,
        }
    }

    pub(crate) fn mark_blake(mut self) -> Doctrine {
        self.blake = true;
        self
    }

    /// Clauses rendered by name, for comparisons across universes.
    pub fn rendered_clauses(&self) -> Vec<String> {
        render_clauses(&self.universe, &self.clauses)
    }
}

struct Propagated {
    universe: Universe,
    clauses: Vec<Clause>,
    fixed: Vec<(String, bool)>,
}

/// Drops tautologies and duplicates, then runs unit propagation to a
/// fixpoint and re-indexes the remaining atoms.
fn propagate(
    universe: &Universe,
    clauses: Vec<Clause>,
    prior_fixed: &[(String, bool)],
) -> Result<Propagated, Error> {
    let mut clauses: Vec<Clause> = clauses.into_iter().filter(|c| !c.is_tautology()).collect();
    clauses.sort();
    clauses.dedup();
    let mut value: Vec<Option<bool>> = vec![None; universe.len()];
    loop {
        if clauses.iter().any(Clause::is_empty) {
            return Err(Error::Unsatisfiable);
        }
        let Some(unit) = clauses.iter().find(|c| c.len() == 1).map(|c| c.lits[0]) else {
            break;
        };
        value[unit.atom().index()] = Some(unit.is_positive());
        clauses = clauses
            .into_iter()
            .filter(|c| !c.contains(unit))
            .map(|c| {
                if c.contains(!unit) {
                    Clause::new(c.lits.into_iter().filter(|&l| l != !unit).collect())
                } else {
                    c
                }
            })
            .collect();
        clauses.sort();
        clauses.dedup();
    }

    let mut remaining = Universe::new();
    let mut map = vec![None; universe.len()];
    let mut fixed = prior_fixed.to_vec();
    for a in universe.atoms() {
        match value[a.index()] {
            Some(v) => fixed.push((universe.name(a).into(), v)),
            None => map[a.index()] = Some(remaining.intern(universe.name(a))?),
        }
    }
    let mut clauses: Vec<Clause> = clauses.iter().map(|c| c.remap(&map)).collect();
    clauses.sort();
    Ok(Propagated {
        universe: remaining,
        clauses,
        fixed,
    })
}

/// Searches for a satisfying assignment by exhaustive enumeration.
fn find_model(universe: &Universe, clauses: &[Clause], cap: usize) -> Result<bool, Error> {
    let n = universe.len();
    if n > cap || n >= 64 {
        return Err(Error::EnumerationCap { atoms: n, cap });
    }
    Ok((0..1u64 << n).any(|bits| {
        let u = TruthAssignment::from_bits(n, bits);
        clauses.iter().all(|c| c.is_satisfied_by(&u))
    }))
}

/// Normalizes a clause set over `universe`: removes tautologies, fixes unit
/// literals by propagation and certifies satisfiability by enumeration.
pub fn normalize(
    universe: &Universe,
    clauses: Vec<Clause>,
    limits: &Limits,
) -> Result<Doctrine, Error> {
    let p = propagate(universe, clauses, &[])?;
    if !find_model(&p.universe, &p.clauses, limits.enumeration_cap)? {
        return Err(Error::Unsatisfiable);
    }
    Ok(Doctrine {
        universe: p.universe,
        clauses: p.clauses,
        fixed: p.fixed,
        blake: false,
    })
}

/// Like [`normalize`], but satisfiability is certified by a caller-supplied
/// model over `universe` instead of by enumeration.
pub fn normalize_with_witness(
    universe: &Universe,
    clauses: Vec<Clause>,
    witness: &TruthAssignment,
) -> Result<Doctrine, Error> {
    if witness.len() != universe.len() {
        return Err(Error::DomainMismatch {
            expected: universe.len(),
            found: witness.len(),
        });
    }
    if !clauses.iter().all(|c| c.is_satisfied_by(witness)) {
        return Err(Error::BadWitness);
    }
    let p = propagate(universe, clauses, &[])?;
    Ok(Doctrine {
        universe: p.universe,
        clauses: p.clauses,
        fixed: p.fixed,
        blake: false,
    })
}

enum Saturation {
    Done(Vec<Clause>),
    Unit(Lit, Vec<Clause>),
}

/// Resolution/absorption saturation with forward and backward absorption.
fn saturate(initial: &[Clause], n_atoms: usize, budget: usize) -> Result<Saturation, Error> {
    let mut store: Vec<Option<Clause>> = Vec::new();
    let mut sigs: Vec<u64> = Vec::new();
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); 2 * n_atoms];
    let mut queue = VecDeque::new();
    let mut live = 0usize;

    let insert = |c: Clause,
                  store: &mut Vec<Option<Clause>>,
                  sigs: &mut Vec<u64>,
                  occ: &mut Vec<Vec<usize>>,
                  queue: &mut VecDeque<usize>| {
        let i = store.len();
        for &l in &c.lits {
            occ[l.code()].push(i);
        }
        sigs.push(c.signature());
        store.push(Some(c));
        queue.push_back(i);
    };

    for c in absorb(initial.to_vec()) {
        insert(c, &mut store, &mut sigs, &mut occ, &mut queue);
        live += 1;
    }

    while let Some(i) = queue.pop_front() {
        let Some(c) = store[i].clone() else { continue };
        for &pivot in &c.lits {
            let mut k = 0;
            while k < occ[(!pivot).code()].len() {
                let j = occ[(!pivot).code()][k];
                k += 1;
                let Some(d) = &store[j] else { continue };
                let Some(r) = resolve_unchecked(&c, d, pivot) else {
                    continue;
                };
                match r.len() {
                    0 => return Err(Error::Unsatisfiable),
                    1 => {
                        let rest = store.into_iter().flatten().collect();
                        return Ok(Saturation::Unit(r.lits[0], rest));
                    }
                    _ => {}
                }
                let sig = r.signature();
                let absorbed = r.lits.iter().any(|l| {
                    occ[l.code()].iter().any(|&s| {
                        sigs[s] & !sig == 0
                            && store[s].as_ref().is_some_and(|e| e.is_subset_of(&r))
                    })
                });
                if absorbed {
                    continue;
                }
                // backward absorption: every absorbed clause contains r's first literal
                let victims: Vec<usize> = occ[r.lits[0].code()]
                    .iter()
                    .copied()
                    .filter(|&s| {
                        sig & !sigs[s] == 0 && store[s].as_ref().is_some_and(|e| r.is_subset_of(e))
                    })
                    .collect();
                for s in victims {
                    store[s] = None;
                    live -= 1;
                }
                insert(r, &mut store, &mut sigs, &mut occ, &mut queue);
                live += 1;
                if live > budget {
                    return Err(Error::ClauseBudget { limit: budget });
                }
            }
            if store[i].is_none() {
                break;
            }
        }
    }
    let mut out: Vec<Clause> = store.into_iter().flatten().collect();
    out.sort();
    Ok(Saturation::Done(out))
}

/// Computes the Blake canonical form: the set of all prime implicates.
///
/// Unit implicates found during saturation are propagated and recorded in
/// [`Doctrine::fixed`], after which saturation restarts.
pub fn blake_canonical_form(d: &Doctrine, limits: &Limits) -> Result<Doctrine, Error> {
    let mut universe = d.universe.clone();
    let mut clauses = d.clauses.clone();
    let mut fixed = d.fixed.clone();
    loop {
        match saturate(&clauses, universe.len(), limits.clause_budget)? {
            Saturation::Done(cs) => {
                return Ok(Doctrine {
                    universe,
                    clauses: cs,
                    fixed,
                    blake: true,
                })
            }
            Saturation::Unit(l, mut cs) => {
                cs.push(Clause::new(vec![l]));
                let p = propagate(&universe, cs, &fixed)?;
                universe = p.universe;
                clauses = p.clauses;
                fixed = p.fixed;
            }
        }
    }
}

/// True iff no clause of `d` disappears when forming its Blake canonical
/// form, i.e. every clause is a prime implicate.
pub fn check_prime(d: &Doctrine, limits: &Limits) -> Result<bool, Error> {
    let bcf = blake_canonical_form(d, limits)?;
    if bcf.fixed.len() != d.fixed.len() {
        return Ok(false);
    }
    let primes = bcf.rendered_clauses();
    Ok(d.rendered_clauses().iter().all(|c| primes.contains(c)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HornClass {
    /// Every clause has exactly one positive literal.
    Definite,
    /// Every clause has at most one positive literal, some have none.
    Simple,
    None,
}

pub fn classify_horn(d: &Doctrine) -> HornClass {
    let mut all_one = true;
    for c in &d.clauses {
        match c.positives() {
            0 => all_one = false,
            1 => {}
            _ => return HornClass::None,
        }
    }
    if all_one {
        HornClass::Definite
    } else {
        HornClass::Simple
    }
}

/// True iff `sigma` holds no complementary pair and every clause attacking
/// `sigma` (containing `~l` for some `l` in it) also contains a member.
pub fn check_autarky(d: &Doctrine, sigma: &[Lit]) -> bool {
    let n = 2 * d.atom_count();
    let mut member = vec![false; n];
    for &l in sigma {
        if l.code() >= n {
            return false;
        }
        member[l.code()] = true;
    }
    if sigma.iter().any(|&l| member[(!l).code()]) {
        return false;
    }
    d.clauses.iter().all(|c| {
        let attacked = c.lits.iter().any(|&l| member[(!l).code()]);
        !attacked || c.lits.iter().any(|&l| member[l.code()])
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Unquestionability {
    Yes,
    WhenAccepted,
    Unknown,
}

/// Syntactic certificate that revision reaches its value for `p` in one
/// step. Checks, for every clause `E` holding `p` and another literal `q`,
/// and every clause `E'` holding `~q`, that the resolvent set
/// `R = E - {q} + E' - {~q}` contains a clause holding `p` (condition a),
/// or else that the resolvent built from `E` with `p` replaced by `~p`
/// contains a clause holding `~p` (condition b'). Tertium-non-datur clauses
/// count as members of the doctrine.
///
/// Meaningful only when `d` is a Blake canonical form.
pub fn check_unquestionable_syntactic(d: &Doctrine, p: Lit) -> Unquestionability {
    let occ = occurrences(d);
    let mut result = Unquestionability::Yes;
    for &e in &occ[p.code()] {
        let e = &d.clauses[e];
        for &q in e.lits.iter().filter(|&&q| q != p) {
            for &e2 in &occ[(!q).code()] {
                let e2 = &d.clauses[e2];
                let resolvent: Vec<Lit> = e
                    .lits
                    .iter()
                    .filter(|&&l| l != q)
                    .chain(e2.lits.iter().filter(|&&l| l != !q))
                    .copied()
                    .collect();
                if has_clause_within(d, &occ, p, &resolvent) {
                    continue;
                }
                let flipped: Vec<Lit> = e
                    .lits
                    .iter()
                    .filter(|&&l| l != q && l != p)
                    .chain(e2.lits.iter().filter(|&&l| l != !q))
                    .copied()
                    .chain(core::iter::once(!p))
                    .collect();
                if has_clause_within(d, &occ, !p, &flipped) {
                    result = Unquestionability::WhenAccepted;
                } else {
                    return Unquestionability::Unknown;
                }
            }
        }
    }
    result
}

/// Is there a clause `C` (tertium non datur included) with `lit ∈ C ⊆ set`?
fn has_clause_within(d: &Doctrine, occ: &[Vec<usize>], lit: Lit, set: &[Lit]) -> bool {
    let set = Clause::new(set.to_vec());
    if !set.contains(lit) {
        return false;
    }
    if set.contains(!lit) {
        return true;
    }
    occ[lit.code()]
        .iter()
        .any(|&i| d.clauses[i].is_subset_of(&set))
}

/// Clause indices per literal code.
pub(crate) fn occurrences(d: &Doctrine) -> Vec<Vec<usize>> {
    let mut occ = vec![Vec::new(); 2 * d.atom_count()];
    for (i, c) in d.clauses.iter().enumerate() {
        for &l in &c.lits {
            occ[l.code()].push(i);
        }
    }
    occ
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub is_prime: bool,
    pub is_blake: bool,
    pub horn_class: HornClass,
    /// Literal sets verified autarkic: the positive literals, the negative
    /// literals and the true literals of the first model, when they qualify.
    pub autarkic_certificates: Vec<Vec<Lit>>,
    /// Per literal of the Blake canonical form's universe.
    pub unquestionable: BTreeMap<Lit, Unquestionability>,
}

/// Runs every structural classification on `d`. Unquestionability is
/// evaluated on the Blake canonical form, whose universe may be smaller
/// than that of `d` if saturation fixed further atoms.
pub fn analyze(d: &Doctrine, limits: &Limits) -> Result<AnalysisReport, Error> {
    let bcf = blake_canonical_form(d, limits)?;
    let primes = bcf.rendered_clauses();
    let is_prime =
        bcf.fixed.len() == d.fixed.len() && d.rendered_clauses().iter().all(|c| primes.contains(c));
    let is_blake = is_prime && primes.len() == d.clauses.len();

    let mut autarkic_certificates = Vec::new();
    let positives: Vec<Lit> = d.universe.atoms().map(AtomId::positive).collect();
    let negatives: Vec<Lit> = d.universe.atoms().map(AtomId::negative).collect();
    for sigma in [positives, negatives] {
        if !sigma.is_empty() && check_autarky(d, &sigma) {
            autarkic_certificates.push(sigma);
        }
    }
    let n = d.atom_count();
    if n <= limits.enumeration_cap && n < 64 {
        if let Some(u) = (0..1u64 << n)
            .map(|b| TruthAssignment::from_bits(n, b))
            .find(|u| d.satisfied_by(u))
        {
            let sigma: Vec<Lit> = d
                .universe
                .atoms()
                .map(|a| Lit::new(a, !u.atom(a)))
                .collect();
            if !sigma.is_empty() && !autarkic_certificates.contains(&sigma) {
                autarkic_certificates.push(sigma);
            }
        }
    }

    let unquestionable = bcf
        .universe
        .literals()
        .map(|l| (l, check_unquestionable_syntactic(&bcf, l)))
        .collect();
    Ok(AnalysisReport {
        is_prime,
        is_blake,
        horn_class: classify_horn(d),
        autarkic_certificates,
        unquestionable,
    })
}
