//! Exact belief revision over propositional doctrines.
//!
//! A doctrine is a satisfiable clause set. A valuation assigns a degree in
//! `[0, 1]` to every literal, and revision propagates those degrees through
//! the doctrine's prime implicates by max/min operators until a fixpoint is
//! reached. Degrees are exact rationals, so fixpoints are exact.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod degree;
pub mod doctrine;
pub mod domains;
pub mod error;
pub mod formula;
pub mod literal;
pub mod oracle;
pub mod revision;

pub use degree::Degree;
pub use doctrine::{
    absorb, analyze, blake_canonical_form, check_autarky, check_prime,
    check_unquestionable_syntactic, classify_horn, normalize, normalize_with_witness,
    render_clauses, resolve, AnalysisReport, Clause, Doctrine, HornClass, Limits,
    Unquestionability,
};
pub use domains::{
    gen_conjunction, gen_equivalence, gen_total_order, path_strength_eq, path_strength_neg_eq,
    schulze_strengths, single_link, strengths_to_valuation, Dendrogram, PairAtomMap, PairKind,
};
pub use error::Error;
pub use formula::{entails, evaluate, parse_formula, to_clause_set, Formula, TruthAssignment};
pub use literal::{AtomId, Lit, Universe};
pub use revision::{
    aggregate, basic_decision, check_consistent_total, check_definitely_consistent,
    check_one_step, check_valuation_consistent, decide, decide_bilateral, decide_unilateral,
    extend_assignment, one_step_lower, one_step_upper, revise_lower, revise_lower_unchecked,
    revise_upper, revise_upper_unchecked, Decision, FixedPointReport, Mode,
    PartialTruthAssignment, Valuation, Verdict,
};
