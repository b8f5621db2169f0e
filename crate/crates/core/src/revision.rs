//! Valuations, the max-min revision operators and margin decisions.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::degree::Degree;
use crate::doctrine::{
    check_unquestionable_syntactic, classify_horn, Doctrine, HornClass, Unquestionability,
};
use crate::error::Error;
use crate::formula::TruthAssignment;
use crate::literal::{AtomId, Lit};

/// Degrees of belief for every literal of a universe, indexed by
/// [`Lit::code`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Valuation {
    values: Vec<Degree>,
}

impl Valuation {
    /// All-zero valuation over `atoms` atoms.
    pub fn zeros(atoms: usize) -> Self {
        Valuation {
            values: vec![Degree::ZERO; 2 * atoms],
        }
    }

    pub fn constant(atoms: usize, value: Degree) -> Result<Self, Error> {
        Self::from_values(vec![value; 2 * atoms])
    }

    /// Builds a valuation from values in literal-code order
    /// (`p, ~p, q, ~q, ...`).
    pub fn from_values(values: Vec<Degree>) -> Result<Self, Error> {
        if !values.len().is_multiple_of(2) {
            return Err(Error::DomainMismatch {
                expected: values.len() + 1,
                found: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| !v.is_unit_interval()) {
            return Err(Error::OutOfRange(v.to_string()));
        }
        Ok(Valuation { values })
    }

    /// Builds a valuation from the positive and negative halves, in the
    /// `(p, q, ...; ~p, ~q, ...)` layout.
    pub fn from_halves(pos: &[Degree], neg: &[Degree]) -> Result<Self, Error> {
        if pos.len() != neg.len() {
            return Err(Error::DomainMismatch {
                expected: pos.len(),
                found: neg.len(),
            });
        }
        Self::from_values(pos.iter().zip(neg).flat_map(|(&a, &b)| [a, b]).collect())
    }

    pub fn atom_count(&self) -> usize {
        self.values.len() / 2
    }

    pub fn get(&self, l: Lit) -> Degree {
        self.values[l.code()]
    }

    pub fn set(&mut self, l: Lit, value: Degree) -> Result<(), Error> {
        if !value.is_unit_interval() {
            return Err(Error::OutOfRange(value.to_string()));
        }
        self.values[l.code()] = value;
        Ok(())
    }

    pub fn values(&self) -> &[Degree] {
        &self.values
    }

    pub fn literals(&self) -> impl Iterator<Item = Lit> {
        (0..self.values.len()).map(Lit::from_code)
    }

    /// `v_l + v_~l = 1` for every literal.
    pub fn is_balanced(&self) -> bool {
        self.values
            .chunks(2)
            .all(|c| c[0].checked_add(c[1]) == Ok(Degree::ONE))
    }

    /// The hat transform `l -> 1 - v_~l`.
    pub fn hat(&self) -> Valuation {
        Valuation {
            values: self
                .literals()
                .map(|l| self.get(!l).complement())
                .collect(),
        }
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &Valuation) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Distinct values, ascending.
    pub fn image(&self) -> Vec<Degree> {
        let mut img = self.values.clone();
        img.sort();
        img.dedup();
        img
    }

    /// `max_l |self_l - other_l|`.
    pub fn distance(&self, other: &Valuation) -> Result<Degree, Error> {
        check_domain(self.atom_count(), other)?;
        self.values
            .iter()
            .zip(&other.values)
            .try_fold(Degree::ZERO, |acc, (a, b)| Ok(acc.max(a.abs_diff(*b)?)))
    }
}

fn check_domain(atoms: usize, v: &Valuation) -> Result<(), Error> {
    if v.atom_count() == atoms {
        Ok(())
    } else {
        Err(Error::DomainMismatch {
            expected: atoms,
            found: v.atom_count(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Reject,
    Undecided,
    Accept,
}

impl Verdict {
    /// Degree of the positive literal: 0, 1/2 or 1.
    pub fn degree(self) -> Degree {
        match self {
            Verdict::Reject => Degree::ZERO,
            Verdict::Undecided => Degree::HALF,
            Verdict::Accept => Degree::ONE,
        }
    }

    pub fn flip(self) -> Verdict {
        match self {
            Verdict::Reject => Verdict::Accept,
            Verdict::Undecided => Verdict::Undecided,
            Verdict::Accept => Verdict::Reject,
        }
    }
}

/// Per-atom verdicts, read as a balanced valuation with values in
/// `{0, 1/2, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialTruthAssignment {
    verdicts: Vec<Verdict>,
}

impl PartialTruthAssignment {
    pub fn new(verdicts: Vec<Verdict>) -> Self {
        PartialTruthAssignment { verdicts }
    }

    pub fn undecided(atoms: usize) -> Self {
        Self::new(vec![Verdict::Undecided; atoms])
    }

    pub fn from_total(u: &TruthAssignment) -> Self {
        Self::new(
            u.0.iter()
                .map(|&b| if b { Verdict::Accept } else { Verdict::Reject })
                .collect(),
        )
    }

    pub fn atom_count(&self) -> usize {
        self.verdicts.len()
    }

    pub fn verdicts(&self) -> &[Verdict] {
        &self.verdicts
    }

    pub fn atom(&self, a: AtomId) -> Verdict {
        self.verdicts[a.index()]
    }

    /// Verdict on a literal: a negative literal is accepted when its atom
    /// is rejected.
    pub fn lit(&self, l: Lit) -> Verdict {
        let v = self.verdicts[l.atom().index()];
        if l.is_negative() {
            v.flip()
        } else {
            v
        }
    }

    /// Sets `l` accepted (and hence `~l` rejected).
    pub fn accept(&mut self, l: Lit) {
        self.verdicts[l.atom().index()] = if l.is_negative() {
            Verdict::Reject
        } else {
            Verdict::Accept
        };
    }

    pub fn is_total(&self) -> bool {
        !self.verdicts.contains(&Verdict::Undecided)
    }

    pub fn to_total(&self) -> Option<TruthAssignment> {
        self.verdicts
            .iter()
            .map(|v| match v {
                Verdict::Accept => Some(true),
                Verdict::Reject => Some(false),
                Verdict::Undecided => None,
            })
            .collect::<Option<Vec<bool>>>()
            .map(TruthAssignment)
    }

    pub fn as_valuation(&self) -> Valuation {
        Valuation {
            values: self
                .verdicts
                .iter()
                .flat_map(|v| [v.degree(), v.degree().complement()])
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Bilateral,
    Unilateral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub margin: Degree,
    pub mode: Mode,
    pub verdicts: Vec<Verdict>,
}

impl Decision {
    pub fn as_assignment(&self) -> PartialTruthAssignment {
        PartialTruthAssignment::new(self.verdicts.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointReport {
    pub result: Valuation,
    /// Sweeps that changed the valuation.
    pub iterations: usize,
    /// Every result value occurs among the input values.
    pub image_certificate: bool,
    /// The fixpoint was reached after a single sweep.
    pub one_step_equal: bool,
}

/// Smallest and second-smallest entries, with the position of the smallest.
fn two_smallest(xs: impl Iterator<Item = Degree>) -> (usize, Degree, Degree) {
    let mut at = 0;
    let mut lo = Degree::ONE;
    let mut next = Degree::ONE;
    for (i, x) in xs.enumerate() {
        if x < lo {
            next = lo;
            lo = x;
            at = i;
        } else if x < next {
            next = x;
        }
    }
    (at, lo, next)
}

/// The upward transform: `v'_l = max(v_l, max_{E ∋ l} min_{x ∈ E - l} v_~x)`.
pub fn one_step_upper(d: &Doctrine, v: &Valuation) -> Result<Valuation, Error> {
    check_domain(d.atom_count(), v)?;
    let mut out = v.clone();
    for c in d.clauses() {
        let (at, lo, next) = two_smallest(c.lits().iter().map(|&x| v.get(!x)));
        for (i, &l) in c.lits().iter().enumerate() {
            let term = if i == at { next } else { lo };
            if term > out.values[l.code()] {
                out.values[l.code()] = term;
            }
        }
    }
    Ok(out)
}

/// The downward transform: `v'_l = min(v_l, min_{E ∋ ~l} max_{x ∈ E - ~l} v_x)`.
pub fn one_step_lower(d: &Doctrine, v: &Valuation) -> Result<Valuation, Error> {
    check_domain(d.atom_count(), v)?;
    let mut out = v.clone();
    for c in d.clauses() {
        // two largest, via the complements
        let (at, lo, next) = two_smallest(c.lits().iter().map(|&x| v.get(x).complement()));
        for (i, &m) in c.lits().iter().enumerate() {
            let term = if i == at { next } else { lo }.complement();
            let l = !m;
            if term < out.values[l.code()] {
                out.values[l.code()] = term;
            }
        }
    }
    Ok(out)
}

fn iterate(
    d: &Doctrine,
    v: &Valuation,
    step: fn(&Doctrine, &Valuation) -> Result<Valuation, Error>,
) -> Result<FixedPointReport, Error> {
    check_domain(d.atom_count(), v)?;
    let image = v.image();
    let bound = v.values.len() * image.len() + 1;
    let mut current = v.clone();
    let mut iterations = 0;
    loop {
        let next = step(d, &current)?;
        if next == current {
            break;
        }
        iterations += 1;
        if iterations > bound {
            return Err(Error::IterationBound(bound));
        }
        current = next;
    }
    let image_certificate = current
        .values
        .iter()
        .all(|x| image.binary_search(x).is_ok());
    if !image_certificate {
        return Err(Error::Internal("revised value outside the input image".into()));
    }
    Ok(FixedPointReport {
        result: current,
        iterations,
        image_certificate,
        one_step_equal: iterations <= 1,
    })
}

fn require_blake(d: &Doctrine) -> Result<(), Error> {
    if d.is_blake() {
        Ok(())
    } else {
        Err(Error::NotBlake)
    }
}

/// Least fixpoint of [`one_step_upper`] above `v`. Requires a Blake
/// canonical form.
pub fn revise_upper(d: &Doctrine, v: &Valuation) -> Result<FixedPointReport, Error> {
    require_blake(d)?;
    revise_upper_unchecked(d, v)
}

/// [`revise_upper`] over whatever clauses `d` holds, prime or not.
pub fn revise_upper_unchecked(d: &Doctrine, v: &Valuation) -> Result<FixedPointReport, Error> {
    let report = iterate(d, v, one_step_upper)?;
    if !v.le(&report.result) {
        return Err(Error::Internal("upper revision decreased a value".into()));
    }
    Ok(report)
}

/// Greatest fixpoint of [`one_step_lower`] below `v`, cross-checked against
/// the hat transform of the upper revision of `v`'s hat.
pub fn revise_lower(d: &Doctrine, v: &Valuation) -> Result<FixedPointReport, Error> {
    require_blake(d)?;
    revise_lower_unchecked(d, v)
}

pub fn revise_lower_unchecked(d: &Doctrine, v: &Valuation) -> Result<FixedPointReport, Error> {
    let report = iterate(d, v, one_step_lower)?;
    if !report.result.le(v) {
        return Err(Error::Internal("lower revision increased a value".into()));
    }
    let dual = revise_upper_unchecked(d, &v.hat())?.result.hat();
    if dual != report.result {
        return Err(Error::Internal("lower revision disagrees with its dual".into()));
    }
    Ok(report)
}

fn check_margin(margin: Degree) -> Result<(), Error> {
    if margin.is_unit_interval() {
        Ok(())
    } else {
        Err(Error::OutOfRange(margin.to_string()))
    }
}

/// Bilateral decision: accept `p` iff `v_p - v_~p > margin`, reject iff
/// `v_~p - v_p > margin`.
pub fn decide_bilateral(v: &Valuation, margin: Degree) -> Result<Decision, Error> {
    check_margin(margin)?;
    let verdicts = (0..v.atom_count() as u32)
        .map(|a| {
            let p = AtomId(a).positive();
            let (vp, vn) = (v.get(p), v.get(!p));
            Ok(if vp.exceeds_by(vn, margin)? {
                Verdict::Accept
            } else if vn.exceeds_by(vp, margin)? {
                Verdict::Reject
            } else {
                Verdict::Undecided
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok(Decision {
        margin,
        mode: Mode::Bilateral,
        verdicts,
    })
}

/// The basic decision: bilateral with margin zero.
pub fn basic_decision(v: &Valuation) -> PartialTruthAssignment {
    decide_bilateral(v, Degree::ZERO)
        .expect("zero margin never overflows")
        .as_assignment()
}

/// Unilateral decision for definite Horn doctrines: accept `p` iff
/// `v_p > margin`, reject iff `v_p < margin`.
pub fn decide_unilateral(d: &Doctrine, v: &Valuation, margin: Degree) -> Result<Decision, Error> {
    check_margin(margin)?;
    check_domain(d.atom_count(), v)?;
    if classify_horn(d) != HornClass::Definite {
        return Err(Error::NotDefiniteHorn);
    }
    let verdicts = (0..v.atom_count() as u32)
        .map(|a| match v.get(AtomId(a).positive()).cmp(&margin) {
            core::cmp::Ordering::Greater => Verdict::Accept,
            core::cmp::Ordering::Less => Verdict::Reject,
            core::cmp::Ordering::Equal => Verdict::Undecided,
        })
        .collect();
    Ok(Decision {
        margin,
        mode: Mode::Unilateral,
        verdicts,
    })
}

pub fn decide(d: &Doctrine, v: &Valuation, margin: Degree, mode: Mode) -> Result<Decision, Error> {
    match mode {
        Mode::Bilateral => {
            check_domain(d.atom_count(), v)?;
            decide_bilateral(v, margin)
        }
        Mode::Unilateral => decide_unilateral(d, v, margin),
    }
}

/// For every clause `E` and `l ∈ E`: if every other literal of `E` is
/// rejected then `l` is accepted.
pub fn check_definitely_consistent(d: &Doctrine, u: &PartialTruthAssignment) -> bool {
    u.atom_count() == d.atom_count()
        && d.clauses().iter().all(|c| {
            let rejected = c
                .lits()
                .iter()
                .filter(|&&x| u.lit(x) == Verdict::Reject)
                .count();
            // only a clause with all but at most one literal rejected can fail
            rejected + 1 < c.len()
                || c.lits().iter().all(|&l| {
                    let others_rejected =
                        rejected - usize::from(u.lit(l) == Verdict::Reject) == c.len() - 1;
                    !others_rejected || u.lit(l) == Verdict::Accept
                })
        })
}

pub fn check_consistent_total(d: &Doctrine, u: &TruthAssignment) -> bool {
    u.len() == d.atom_count() && d.satisfied_by(u)
}

/// True iff `v` is invariant under [`one_step_upper`].
pub fn check_valuation_consistent(d: &Doctrine, v: &Valuation) -> Result<bool, Error> {
    Ok(one_step_upper(d, v)? == *v)
}

/// True iff the upper revision is reached in a single sweep.
pub fn check_one_step(d: &Doctrine, v: &Valuation) -> Result<bool, Error> {
    Ok(revise_upper(d, v)?.result == one_step_upper(d, v)?)
}

/// Pointwise convex combination; weights must sum to exactly one.
pub fn aggregate(components: &[(Degree, Valuation)]) -> Result<Valuation, Error> {
    let Some((_, first)) = components.first() else {
        return Err(Error::WeightSum("0".into()));
    };
    let n = first.atom_count();
    let mut total = Degree::ZERO;
    let mut values = vec![Degree::ZERO; 2 * n];
    for (w, v) in components {
        check_domain(n, v)?;
        if *w < Degree::ZERO {
            return Err(Error::WeightSum(format!("negative weight {w}")));
        }
        total = total.checked_add(*w)?;
        for (acc, x) in values.iter_mut().zip(&v.values) {
            *acc = acc.checked_add(w.checked_mul(*x)?)?;
        }
    }
    if total != Degree::ONE {
        return Err(Error::WeightSum(total.to_string()));
    }
    Valuation::from_values(values)
}

/// Extends a definitely consistent partial assignment to a consistent total
/// one in which `pick` (or, when absent, the first undecided literal) holds.
///
/// Repeatedly accepts the chosen literal, applies one upward sweep and
/// keeps the basic decision of the result. Requires a Blake canonical form
/// in which no literal is classified [`Unquestionability::Unknown`]; every
/// intermediate assignment is checked to extend its predecessor and to be
/// definitely consistent.
pub fn extend_assignment(
    d: &Doctrine,
    u: &PartialTruthAssignment,
    pick: Option<Lit>,
) -> Result<TruthAssignment, Error> {
    require_blake(d)?;
    if u.atom_count() != d.atom_count() {
        return Err(Error::DomainMismatch {
            expected: d.atom_count(),
            found: u.atom_count(),
        });
    }
    if d.universe()
        .literals()
        .any(|l| check_unquestionable_syntactic(d, l) == Unquestionability::Unknown)
    {
        return Err(Error::NotUnquestionable);
    }
    if !check_definitely_consistent(d, u) {
        return Err(Error::Precondition("assignment is not definitely consistent".into()));
    }
    if let Some(l) = pick {
        if l.code() >= 2 * d.atom_count() || u.lit(l) != Verdict::Undecided {
            return Err(Error::Precondition("pick must be an undecided literal".into()));
        }
    }

    let mut current = u.clone();
    let mut next_pick = pick;
    while !current.is_total() {
        let l = next_pick.take().unwrap_or_else(|| {
            let a = current
                .verdicts
                .iter()
                .position(|&v| v == Verdict::Undecided)
                .unwrap();
            AtomId(a as u32).positive()
        });
        let mut w = current.clone();
        w.accept(l);
        let extended = basic_decision(&one_step_upper(d, &w.as_valuation())?);
        let extends = w
            .verdicts
            .iter()
            .zip(&extended.verdicts)
            .all(|(a, b)| *a == Verdict::Undecided || a == b);
        if !extends || !check_definitely_consistent(d, &extended) {
            return Err(Error::NotUnquestionable);
        }
        current = extended;
    }
    let total = current.to_total().unwrap();
    if !check_consistent_total(d, &total) {
        return Err(Error::Internal("extension is not consistent".into()));
    }
    Ok(total)
}
