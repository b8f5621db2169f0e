//! Generators and path oracles for pairwise-relation domains: the
//! conjunction doctrine, equivalence relations (clustering) and total
//! orders (ranking).

#![allow(clippy::needless_range_loop)]

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::degree::Degree;
use crate::doctrine::{normalize_with_witness, Clause, Doctrine, Limits};
use crate::error::Error;
use crate::formula::TruthAssignment;
use crate::literal::{is_valid_name, AtomId, Lit, Universe};
use crate::revision::{revise_upper_unchecked, Valuation};

/// Largest item count accepted by the exhaustive path oracles.
pub const PATH_ORACLE_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// One atom `e_xy` per unordered pair.
    Equivalence,
    /// One atom `p_xy` per pair with `x` before `y`; `p_yx` is read as `~p_xy`.
    TotalOrder,
}

/// Correspondence between item pairs and the atoms of a pairwise domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAtomMap {
    kind: PairKind,
    items: Vec<String>,
    universe: Universe,
    atoms: BTreeMap<(usize, usize), AtomId>,
}

impl PairAtomMap {
    pub fn new<S: AsRef<str>>(kind: PairKind, items: &[S]) -> Result<Self, Error> {
        let items: Vec<String> = items.iter().map(|s| s.as_ref().to_string()).collect();
        if items.is_empty() {
            return Err(Error::Precondition("at least one item is required".into()));
        }
        for (i, x) in items.iter().enumerate() {
            if !is_valid_name(x) {
                return Err(Error::InvalidAtomName(x.clone()));
            }
            if items[..i].contains(x) {
                return Err(Error::Precondition(format!("duplicate item `{x}`")));
            }
        }
        let sep = if items.iter().all(|x| x.chars().count() == 1) {
            ""
        } else {
            "_"
        };
        let prefix = match kind {
            PairKind::Equivalence => "e",
            PairKind::TotalOrder => "p",
        };
        let mut universe = Universe::new();
        let mut atoms = BTreeMap::new();
        for x in 0..items.len() {
            for y in x + 1..items.len() {
                let name = format!("{prefix}_{}{sep}{}", items[x], items[y]);
                atoms.insert((x, y), universe.intern(&name)?);
            }
        }
        if universe.len() != atoms.len() {
            return Err(Error::Precondition("item names produce clashing atom names".into()));
        }
        Ok(PairAtomMap {
            kind,
            items,
            universe,
            atoms,
        })
    }

    pub fn equivalence<S: AsRef<str>>(items: &[S]) -> Result<Self, Error> {
        Self::new(PairKind::Equivalence, items)
    }

    pub fn total_order<S: AsRef<str>>(items: &[S]) -> Result<Self, Error> {
        Self::new(PairKind::TotalOrder, items)
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn item_index(&self, name: &str) -> Option<usize> {
        self.items.iter().position(|x| x == name)
    }

    /// The literal `e_xy` or `p_xy` for items `x != y`.
    pub fn lit(&self, x: usize, y: usize) -> Lit {
        assert!(x != y && x < self.len() && y < self.len(), "bad item pair");
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        let atom = self.atoms[&(a, b)];
        match self.kind {
            PairKind::Equivalence => atom.positive(),
            PairKind::TotalOrder => Lit::new(atom, x > y),
        }
    }

    /// The item pair a literal speaks about: `(x, y)` for `p_xy`. For
    /// equivalence literals the pair is the stored orientation.
    pub fn pair(&self, l: Lit) -> (usize, usize) {
        let (&(x, y), _) = self
            .atoms
            .iter()
            .find(|(_, &a)| a == l.atom())
            .expect("literal outside the pair universe");
        match self.kind {
            PairKind::TotalOrder if l.is_negative() => (y, x),
            _ => (x, y),
        }
    }

    /// The set `{~e_ax : x != a}`.
    pub fn star_sigma(&self, a: usize) -> Vec<Lit> {
        (0..self.len())
            .filter(|&x| x != a)
            .map(|x| !self.lit(a, x))
            .collect()
    }

    /// The set `{p_xy : x in cut, y not in cut}`.
    pub fn cut_sigma(&self, cut: &[usize]) -> Vec<Lit> {
        let mut out = Vec::new();
        for &x in cut {
            for y in (0..self.len()).filter(|y| !cut.contains(y)) {
                out.push(self.lit(x, y));
            }
        }
        out.sort();
        out
    }

    fn check_valuation(&self, v: &Valuation) -> Result<(), Error> {
        if v.atom_count() != self.universe.len() {
            return Err(Error::DomainMismatch {
                expected: self.universe.len(),
                found: v.atom_count(),
            });
        }
        Ok(())
    }
}

/// The three-issue conjunction doctrine `t <-> p & q`.
pub fn gen_conjunction() -> Doctrine {
    let u = Universe::from_names(["p", "q", "t"]).unwrap();
    let [p, q, t] = [0, 1, 2].map(|i| AtomId(i).positive());
    let clauses = vec![
        Clause::new(vec![!p, !q, t]),
        Clause::new(vec![p, !t]),
        Clause::new(vec![q, !t]),
    ];
    normalize_with_witness(&u, clauses, &TruthAssignment::all(3, true))
        .unwrap()
        .mark_blake()
}

/// Number of simple paths with at least `min_edges` edges, counted as
/// ordered item sequences.
fn ordered_paths(n: usize, min_len: usize) -> Option<usize> {
    let mut total: usize = 0;
    for k in min_len..=n {
        let mut perms: usize = 1;
        for i in 0..k {
            perms = perms.checked_mul(n - i)?;
        }
        total = total.checked_add(perms)?;
    }
    Some(total)
}

fn check_budget(count: Option<usize>, limits: &Limits) -> Result<(), Error> {
    match count {
        Some(c) if c <= limits.clause_budget => Ok(()),
        _ => Err(Error::ClauseBudget {
            limit: limits.clause_budget,
        }),
    }
}

/// Calls `f` with every simple path of `k` items drawn from `0..n`.
fn for_each_path(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(n: usize, k: usize, path: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
        if path.len() == k {
            f(path);
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                path.push(x);
                go(n, k, path, used, f);
                path.pop();
                used[x] = false;
            }
        }
    }
    go(n, k, &mut Vec::with_capacity(k), &mut vec![false; n], f);
}

/// Equivalence-relation doctrine over `items`. Without `with_blake` only the
/// transitivity triangles `~e_xy | ~e_yz | e_xz` are emitted; with it, one
/// clause per simple path `x0 .. xn` (n >= 2):
/// `~e_x0x1 | ... | ~e_x(n-1)xn | e_x0xn`.
pub fn gen_equivalence<S: AsRef<str>>(
    items: &[S],
    with_blake: bool,
    limits: &Limits,
) -> Result<Doctrine, Error> {
    if items.len() < 2 {
        return Err(Error::Precondition("at least two items are required".into()));
    }
    let map = PairAtomMap::equivalence(items)?;
    let n = map.len();
    let max_len = if with_blake { n } else { n.min(3) };
    check_budget(
        ordered_paths(n, 3).map(|c| if with_blake { c } else { n * (n - 1) * (n - 2) }),
        limits,
    )?;
    let mut clauses = Vec::new();
    for k in 3..=max_len {
        for_each_path(n, k, &mut |path| {
            if path[0] > path[k - 1] {
                return;
            }
            let mut lits: Vec<Lit> = path.windows(2).map(|w| !map.lit(w[0], w[1])).collect();
            lits.push(map.lit(path[0], path[k - 1]));
            clauses.push(Clause::new(lits));
        });
    }
    let witness = TruthAssignment::all(map.universe().len(), false);
    let d = normalize_with_witness(map.universe(), clauses, &witness)?;
    Ok(if with_blake || n <= 3 { d.mark_blake() } else { d })
}

/// Total-order doctrine over `items`, with `p_yx` identified with `~p_xy`.
/// Without `with_blake` only transitivity `~p_xy | ~p_yz | p_xz` is emitted;
/// asymmetry and completeness reduce to tertium non datur. With it, one
/// clause per directed simple cycle of length at least three, stating that
/// some edge of the cycle holds.
pub fn gen_total_order<S: AsRef<str>>(
    items: &[S],
    with_blake: bool,
    limits: &Limits,
) -> Result<Doctrine, Error> {
    if items.len() < 2 {
        return Err(Error::Precondition("at least two items are required".into()));
    }
    let map = PairAtomMap::total_order(items)?;
    let n = map.len();
    let max_len = if with_blake { n } else { n.min(3) };
    check_budget(
        ordered_paths(n, 3).map(|c| if with_blake { c } else { n * (n - 1) * (n - 2) }),
        limits,
    )?;
    let mut clauses = Vec::new();
    for k in 3..=max_len {
        for_each_path(n, k, &mut |cycle| {
            if cycle[0] != *cycle.iter().min().unwrap() {
                return;
            }
            let lits = (0..k).map(|i| map.lit(cycle[i], cycle[(i + 1) % k])).collect();
            clauses.push(Clause::new(lits));
        });
    }
    let witness = TruthAssignment::all(map.universe().len(), true);
    let d = normalize_with_witness(map.universe(), clauses, &witness)?;
    Ok(if with_blake || n <= 3 { d.mark_blake() } else { d })
}

fn check_pair(map: &PairAtomMap, x: usize, y: usize) -> Result<(), Error> {
    if x == y || x >= map.len() || y >= map.len() {
        return Err(Error::Precondition("path endpoints must be two distinct items".into()));
    }
    if map.len() > PATH_ORACLE_CAP {
        return Err(Error::EnumerationCap {
            atoms: map.len(),
            cap: PATH_ORACLE_CAP,
        });
    }
    Ok(())
}

/// Calls `f` with every simple path from `x` to `y`.
fn for_each_path_between(n: usize, x: usize, y: usize, f: &mut impl FnMut(&[usize])) {
    fn go(y: usize, path: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
        let last = *path.last().unwrap();
        if last == y {
            f(path);
            return;
        }
        for z in 0..used.len() {
            if !used[z] {
                used[z] = true;
                path.push(z);
                go(y, path, used, f);
                path.pop();
                used[z] = false;
            }
        }
    }
    let mut used = vec![false; n];
    used[x] = true;
    go(y, &mut vec![x], &mut used, f);
}

/// Strongest chain of `e` links from `x` to `y`: the maximum over simple
/// paths of the weakest link. Exhaustive; meant as a reference oracle.
pub fn path_strength_eq(
    map: &PairAtomMap,
    v: &Valuation,
    x: usize,
    y: usize,
) -> Result<Degree, Error> {
    check_pair(map, x, y)?;
    map.check_valuation(v)?;
    let mut best = Degree::ZERO;
    for_each_path_between(map.len(), x, y, &mut |path| {
        let weakest = path
            .windows(2)
            .map(|w| v.get(map.lit(w[0], w[1])))
            .min()
            .unwrap();
        best = best.max(weakest);
    });
    Ok(best)
}

/// As [`path_strength_eq`], but exactly one link of each path is read
/// through `~e` instead of `e`.
pub fn path_strength_neg_eq(
    map: &PairAtomMap,
    v: &Valuation,
    x: usize,
    y: usize,
) -> Result<Degree, Error> {
    check_pair(map, x, y)?;
    map.check_valuation(v)?;
    let mut best = Degree::ZERO;
    for_each_path_between(map.len(), x, y, &mut |path| {
        for k in 0..path.len() - 1 {
            let weakest = path
                .windows(2)
                .enumerate()
                .map(|(i, w)| {
                    let l = map.lit(w[0], w[1]);
                    v.get(if i == k { !l } else { l })
                })
                .min()
                .unwrap();
            best = best.max(weakest);
        }
    });
    Ok(best)
}

/// Hierarchy of threshold partitions produced by single-link clustering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dendrogram {
    /// Distinct revised similarity values in descending order, each with
    /// the classes of items whose revised similarity is at least that value.
    pub levels: Vec<(Degree, Vec<Vec<usize>>)>,
    /// Subdominant ultrametric `1 - v*`.
    pub ultrametric: Vec<Vec<Degree>>,
}

/// Single-link clustering of a dissimilarity matrix through upper revision
/// of `v(e_xy) = 1 - d_xy`, `v(~e_xy) = 0`.
pub fn single_link(dissimilarity: &[Vec<Degree>]) -> Result<Dendrogram, Error> {
    let n = dissimilarity.len();
    if n == 0 {
        return Err(Error::Precondition("empty dissimilarity matrix".into()));
    }
    for (i, row) in dissimilarity.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Precondition("dissimilarity matrix is not square".into()));
        }
        if !row[i].is_zero() {
            return Err(Error::Precondition("nonzero diagonal entry".into()));
        }
        for (j, d) in row.iter().enumerate() {
            if !d.is_unit_interval() {
                return Err(Error::OutOfRange(d.to_string()));
            }
            if *d != dissimilarity[j][i] {
                return Err(Error::Precondition("dissimilarity matrix is not symmetric".into()));
            }
        }
    }
    if n == 1 {
        return Ok(Dendrogram {
            levels: vec![(Degree::ONE, vec![vec![0]])],
            ultrametric: vec![vec![Degree::ZERO]],
        });
    }

    let names: Vec<String> = (0..n).map(|i| format!("i{i}")).collect();
    let map = PairAtomMap::equivalence(&names)?;
    let limits = Limits {
        clause_budget: usize::MAX,
        ..Limits::default()
    };
    // the triangle form revises like the full path form here, since every
    // negative entry is zero
    let d = gen_equivalence(&names, false, &limits)?;
    let mut v = Valuation::zeros(map.universe().len());
    for x in 0..n {
        for y in x + 1..n {
            v.set(map.lit(x, y), dissimilarity[x][y].complement())?;
        }
    }
    let revised = revise_upper_unchecked(&d, &v)?.result;

    let mut ultrametric = vec![vec![Degree::ZERO; n]; n];
    let mut values = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y {
                let s = revised.get(map.lit(x, y));
                ultrametric[x][y] = s.complement();
                values.push(s);
            }
        }
    }
    values.sort_by(|a, b| b.cmp(a));
    values.dedup();
    let levels = values
        .into_iter()
        .map(|g| {
            let classes = classes_at(n, |x, y| revised.get(map.lit(x, y)) >= g);
            (g, classes)
        })
        .collect();
    Ok(Dendrogram {
        levels,
        ultrametric,
    })
}

/// Connected components of the relation `linked`, each sorted, ordered by
/// smallest member.
fn classes_at(n: usize, linked: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut class = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let id = out.len();
        class[x] = id;
        let mut members = vec![x];
        let mut stack = vec![x];
        while let Some(a) = stack.pop() {
            for b in 0..n {
                if class[b] == usize::MAX && linked(a, b) {
                    class[b] = id;
                    members.push(b);
                    stack.push(b);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Widest-path strengths over the pairwise preference graph, where the
/// edge `x -> y` carries `v(p_xy)`. The diagonal is zero.
pub fn schulze_strengths(map: &PairAtomMap, v: &Valuation) -> Result<Vec<Vec<Degree>>, Error> {
    if map.kind() != PairKind::TotalOrder {
        return Err(Error::Precondition("strengths need a total-order universe".into()));
    }
    map.check_valuation(v)?;
    let n = map.len();
    let mut s = vec![vec![Degree::ZERO; n]; n];
    for x in 0..n {
        for y in 0..n {
            if x != y {
                s[x][y] = v.get(map.lit(x, y));
            }
        }
    }
    for k in 0..n {
        for x in 0..n {
            for y in 0..n {
                if x != y && x != k && y != k {
                    let via = s[x][k].min(s[k][y]);
                    if via > s[x][y] {
                        s[x][y] = via;
                    }
                }
            }
        }
    }
    Ok(s)
}

/// Reads a strength matrix back as a valuation: `p_xy` gets `s[x][y]`.
pub fn strengths_to_valuation(map: &PairAtomMap, s: &[Vec<Degree>]) -> Result<Valuation, Error> {
    let mut v = Valuation::zeros(map.universe().len());
    for x in 0..map.len() {
        for y in 0..map.len() {
            if x != y {
                v.set(map.lit(x, y), s[x][y])?;
            }
        }
    }
    Ok(v)
}
