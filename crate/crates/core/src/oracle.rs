//! Brute-force reference implementations. Deliberately naive; caps are
//! hard errors.

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degree::Degree;
use crate::doctrine::{Clause, Doctrine};
use crate::error::Error;
use crate::formula::TruthAssignment;
use crate::literal::{AtomId, Lit};
use crate::revision::{revise_upper_unchecked, Valuation};

/// Atom cap for [`prime_implicates`].
pub const PRIME_IMPLICATE_CAP: usize = 10;

/// Atom cap for [`consistent_assignments`].
pub const ASSIGNMENT_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeImplicates {
    /// Non-unit prime implicates over `d`'s universe, in canonical order.
    pub clauses: Vec<Clause>,
    /// The doctrine's fixed atoms followed by entailed unit literals.
    pub fixed: Vec<(String, bool)>,
}

fn models(d: &Doctrine, cap: usize) -> Result<Vec<u64>, Error> {
    let n = d.atom_count();
    if n > cap {
        return Err(Error::EnumerationCap { atoms: n, cap });
    }
    Ok((0..1u64 << n)
        .filter(|&b| d.satisfied_by(&TruthAssignment::from_bits(n, b)))
        .collect())
}

/// Bit of atom `a` in the `from_bits` layout (atom 0 most significant).
fn bit(n: usize, a: usize) -> u64 {
    1 << (n - 1 - a)
}

/// Every prime implicate of `d`, by testing all `3^n` candidate clauses
/// against the truth table.
pub fn prime_implicates(d: &Doctrine) -> Result<PrimeImplicates, Error> {
    let n = d.atom_count();
    let models = models(d, PRIME_IMPLICATE_CAP)?;
    let total = 3usize.pow(n as u32);
    // digit per atom: 0 absent, 1 positive, 2 negative
    let masks = |code: usize| {
        let (mut pos, mut neg, mut c) = (0u64, 0u64, code);
        for a in 0..n {
            match c % 3 {
                1 => pos |= bit(n, a),
                2 => neg |= bit(n, a),
                _ => {}
            }
            c /= 3;
        }
        (pos, neg)
    };
    let entailed: Vec<bool> = (0..total)
        .map(|code| {
            let (pos, neg) = masks(code);
            models.iter().all(|&m| m & pos != 0 || !m & neg != 0)
        })
        .collect();

    let mut clauses = Vec::new();
    let mut fixed = d.fixed().to_vec();
    for code in 1..total {
        if !entailed[code] {
            continue;
        }
        let mut lits = Vec::new();
        let mut minimal = true;
        let (mut c, mut place) = (code, 1);
        for a in 0..n {
            let digit = c % 3;
            if digit != 0 {
                lits.push(Lit::new(AtomId(a as u32), digit == 2));
                if entailed[code - digit * place] {
                    minimal = false;
                    break;
                }
            }
            c /= 3;
            place *= 3;
        }
        if !minimal {
            continue;
        }
        if lits.len() == 1 {
            let l = lits[0];
            fixed.push((d.universe().name(l.atom()).into(), l.is_positive()));
        } else {
            clauses.push(Clause::new(lits));
        }
    }
    clauses.sort();
    Ok(PrimeImplicates { clauses, fixed })
}

/// All satisfying assignments, atom 0 most significant, ascending.
pub fn consistent_assignments(d: &Doctrine) -> Result<Vec<TruthAssignment>, Error> {
    let n = d.atom_count();
    Ok(models(d, ASSIGNMENT_CAP)?
        .into_iter()
        .map(|b| TruthAssignment::from_bits(n, b))
        .collect())
}

/// Upper revisions of `samples` valuations `u >= v`, the first being `v`
/// itself and the rest raising each entry by a random tenth of its
/// headroom. Deterministic in `seed`.
pub fn minimal_invariants_above(
    d: &Doctrine,
    v: &Valuation,
    samples: usize,
    seed: u64,
) -> Result<Vec<Valuation>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let u = if i == 0 {
            v.clone()
        } else {
            let values = v
                .values()
                .iter()
                .map(|&x| {
                    let k = rng.gen_range(0..=10);
                    x.checked_add(x.complement().checked_mul(Degree::new(k, 10))?)
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Valuation::from_values(values)?
        };
        out.push(revise_upper_unchecked(d, &u)?.result);
    }
    Ok(out)
}

/// All total assignments over `n` atoms, atom 0 most significant.
pub fn all_assignments(n: usize) -> impl Iterator<Item = TruthAssignment> {
    (0..1u64 << n).map(move |b| TruthAssignment::from_bits(n, b))
}
