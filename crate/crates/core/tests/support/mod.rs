//! Random instance generators and property checks shared by the property
//! suites and the acceptance harness. Every check draws its own instance
//! from the given RNG and returns a description of the first violation.

#![allow(dead_code)]

use doctrina_core::domains::PairAtomMap;
use doctrina_core::oracle::{consistent_assignments, minimal_invariants_above, prime_implicates};
use doctrina_core::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Eleven margins `0, 1/10, ..., 1`.
pub fn margins() -> impl Iterator<Item = Degree> {
    (0..=10).map(|k| Degree::new(k, 10))
}

fn atom_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).collect()
}

/// Random clause set over `n` atoms: clauses of two or more distinct atoms.
pub fn random_clauses(rng: &mut ChaCha8Rng, n: usize, max_clauses: usize) -> Vec<Clause> {
    let m = rng.gen_range(1..=max_clauses);
    (0..m)
        .map(|_| {
            let size = rng.gen_range(2..=n.min(4));
            let mut atoms: Vec<u32> = (0..n as u32).collect();
            atoms.shuffle(rng);
            Clause::new(
                atoms[..size]
                    .iter()
                    .map(|&a| Lit::new(AtomId(a), rng.gen_bool(0.5)))
                    .collect(),
            )
        })
        .collect()
}

/// Random satisfiable doctrine with at most `max_atoms` atoms and
/// `max_clauses` clauses, none of them units.
pub fn random_doctrine(rng: &mut ChaCha8Rng, max_atoms: usize, max_clauses: usize) -> Doctrine {
    loop {
        let n = rng.gen_range(2..=max_atoms);
        let u = Universe::from_names(atom_names(n)).unwrap();
        let cs = random_clauses(rng, n, max_clauses);
        if let Ok(d) = normalize(&u, cs, &Limits::default()) {
            return d;
        }
    }
}

/// Blake canonical form of a random doctrine, with at least one atom left.
pub fn random_bcf(rng: &mut ChaCha8Rng) -> Doctrine {
    loop {
        let d = random_doctrine(rng, 6, 8);
        let b = blake_canonical_form(&d, &Limits::default()).unwrap();
        if b.atom_count() > 0 {
            return b;
        }
    }
}

/// Random definite Horn doctrine in Blake canonical form.
pub fn random_horn_bcf(rng: &mut ChaCha8Rng) -> Doctrine {
    let n = rng.gen_range(2..=6);
    let u = Universe::from_names(atom_names(n)).unwrap();
    let m = rng.gen_range(1..=6);
    let cs = (0..m)
        .map(|_| {
            let size = rng.gen_range(2..=n.min(4));
            let mut atoms: Vec<u32> = (0..n as u32).collect();
            atoms.shuffle(rng);
            let lits = atoms[..size]
                .iter()
                .enumerate()
                .map(|(i, &a)| Lit::new(AtomId(a), i > 0))
                .collect();
            Clause::new(lits)
        })
        .collect();
    let d = normalize(&u, cs, &Limits::default()).unwrap();
    blake_canonical_form(&d, &Limits::default()).unwrap()
}

pub fn random_degree(rng: &mut ChaCha8Rng, den: i128) -> Degree {
    Degree::new(rng.gen_range(0..=den), den)
}

fn random_den(rng: &mut ChaCha8Rng) -> i128 {
    *[2, 3, 4, 5, 6, 10, 12].choose(rng).unwrap()
}

pub fn random_valuation(rng: &mut ChaCha8Rng, atoms: usize) -> Valuation {
    let den = random_den(rng);
    Valuation::from_values((0..2 * atoms).map(|_| random_degree(rng, den)).collect()).unwrap()
}

pub fn random_balanced(rng: &mut ChaCha8Rng, atoms: usize) -> Valuation {
    let den = random_den(rng);
    let pos: Vec<Degree> = (0..atoms).map(|_| random_degree(rng, den)).collect();
    let neg: Vec<Degree> = pos.iter().map(|x| x.complement()).collect();
    Valuation::from_halves(&pos, &neg).unwrap()
}

/// `v` with every entry raised by a random fraction of its headroom.
pub fn raised(rng: &mut ChaCha8Rng, v: &Valuation) -> Valuation {
    let values = v
        .values()
        .iter()
        .map(|&x| {
            let k = rng.gen_range(0..=4);
            x.checked_add(x.complement().checked_mul(Degree::new(k, 4)).unwrap())
                .unwrap()
        })
        .collect();
    Valuation::from_values(values).unwrap()
}

pub fn random_partial(rng: &mut ChaCha8Rng, atoms: usize) -> PartialTruthAssignment {
    PartialTruthAssignment::new(
        (0..atoms)
            .map(|_| match rng.gen_range(0..4) {
                0 => Verdict::Accept,
                1 => Verdict::Reject,
                _ => Verdict::Undecided,
            })
            .collect(),
    )
}

/// Random definitely consistent partial assignment: a consistent total
/// assignment with some atoms blanked, or a random draw, kept only if
/// definitely consistent. Falls back to all-undecided.
pub fn random_definite(rng: &mut ChaCha8Rng, d: &Doctrine) -> PartialTruthAssignment {
    let n = d.atom_count();
    let models = consistent_assignments(d).unwrap();
    for _ in 0..50 {
        let candidate = if rng.gen_bool(0.5) {
            let u = models.choose(rng).unwrap();
            let mut p = PartialTruthAssignment::from_total(u);
            let verdicts = p
                .verdicts()
                .iter()
                .map(|&v| if rng.gen_bool(0.4) { Verdict::Undecided } else { v })
                .collect();
            p = PartialTruthAssignment::new(verdicts);
            p
        } else {
            random_partial(rng, n)
        };
        if check_definitely_consistent(d, &candidate) {
            return candidate;
        }
    }
    PartialTruthAssignment::undecided(n)
}

fn upper(d: &Doctrine, v: &Valuation) -> Result<Valuation, String> {
    ok(revise_upper(d, v)).map(|r| r.result)
}

fn accepted(v: &Valuation, l: Lit, g: Degree) -> bool {
    v.get(l).exceeds_by(v.get(!l), g).unwrap()
}

fn rejected(v: &Valuation, l: Lit, g: Degree) -> bool {
    accepted(v, !l, g)
}

fn max_over(v: &Valuation, lits: impl Iterator<Item = Lit>) -> Degree {
    lits.map(|l| v.get(l)).max().unwrap_or(Degree::ZERO)
}

fn min_over(v: &Valuation, lits: impl Iterator<Item = Lit>) -> Degree {
    lits.map(|l| v.get(l)).min().unwrap_or(Degree::ONE)
}

// ---- Blake canonical form ----

pub fn check_bcf_matches_oracle(rng: &mut ChaCha8Rng) -> Check {
    let d = random_doctrine(rng, 6, 8);
    let b = ok(blake_canonical_form(&d, &Limits::default()))?;
    let pi = ok(prime_implicates(&d))?;
    let expected = render_clauses(d.universe(), &pi.clauses);
    ensure!(
        b.rendered_clauses() == expected,
        "clauses {:?}: engine {:?}, oracle {:?}",
        d.rendered_clauses(),
        b.rendered_clauses(),
        expected
    );
    let mut f1 = b.fixed().to_vec();
    let mut f2 = pi.fixed.clone();
    f1.sort();
    f2.sort();
    ensure!(f1 == f2, "fixed atoms differ: {f1:?} vs {f2:?}");

    let mut shuffled = d.clauses().to_vec();
    shuffled.shuffle(rng);
    let d2 = ok(normalize(d.universe(), shuffled, &Limits::default()))?;
    let b2 = ok(blake_canonical_form(&d2, &Limits::default()))?;
    ensure!(b2 == b, "shuffled input changed the canonical form");

    let with_fixed = |doc: &Doctrine| -> Result<Vec<Vec<(String, bool)>>, String> {
        let mut out: Vec<Vec<(String, bool)>> = ok(consistent_assignments(doc))?
            .into_iter()
            .map(|u| {
                let mut named: Vec<(String, bool)> = doc
                    .universe()
                    .atoms()
                    .map(|a| (doc.universe().name(a).to_string(), u.atom(a)))
                    .chain(doc.fixed().iter().cloned())
                    .collect();
                named.sort();
                named
            })
            .collect();
        out.sort();
        Ok(out)
    };
    ensure!(
        with_fixed(&d)? == with_fixed(&b)?,
        "canonical form is not logically equivalent"
    );
    Ok(())
}

// ---- revision properties ----

pub fn check_inflationary(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let one = ok(one_step_upper(&d, &v))?;
    let star = upper(&d, &v)?;
    ensure!(v.le(&one) && one.le(&star), "not inflationary: {v:?} {one:?} {star:?}");
    ensure!(
        ok(check_valuation_consistent(&d, &star))?,
        "result is not invariant"
    );
    Ok(())
}

pub fn check_monotone(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let w = raised(rng, &v);
    ensure!(
        ok(one_step_upper(&d, &v))?.le(&ok(one_step_upper(&d, &w))?),
        "one step not monotone"
    );
    ensure!(upper(&d, &v)?.le(&upper(&d, &w)?), "revision not monotone");
    Ok(())
}

pub fn check_image_containment(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let report = ok(revise_upper(&d, &v))?;
    let image = v.image();
    ensure!(
        report.image_certificate && report.result.values().iter().all(|x| image.contains(x)),
        "value outside the input image"
    );
    Ok(())
}

pub fn check_least_fixpoint(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let star = upper(&d, &v)?;
    let pool = ok(minimal_invariants_above(&d, &v, 4, rng.gen()))?;
    ensure!(pool[0] == star, "first witness differs from the fixpoint");
    for w in &pool {
        ensure!(star.le(w), "invariant above v lies below the fixpoint");
        ensure!(ok(check_valuation_consistent(&d, w))?, "witness not invariant");
    }
    Ok(())
}

pub fn check_decision_consistency(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let star = upper(&d, &v)?;
    for g in margins() {
        let dec = ok(decide_bilateral(&star, g))?;
        ensure!(
            check_definitely_consistent(&d, &dec.as_assignment()),
            "margin {g} decision not definitely consistent"
        );
    }
    Ok(())
}

pub fn check_majority_respect(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let n = d.atom_count();
    let models = ok(consistent_assignments(&d))?;
    let u = models.choose(rng).unwrap().clone();
    let den = 20;
    let a = rng.gen_range(1..den);
    let b = rng.gen_range(0..a);
    let g = Degree::new(b, den);
    let mut v = Valuation::zeros(n);
    for l in v.literals().collect::<Vec<_>>() {
        let value = if u.lit(l) {
            Degree::new(rng.gen_range(a + 1..=den), den)
        } else {
            Degree::new(rng.gen_range(0..a - b), den)
        };
        v.set(l, value).unwrap();
    }
    let dec = ok(decide_bilateral(&upper(&d, &v)?, g))?;
    ensure!(
        dec.as_assignment() == PartialTruthAssignment::from_total(&u),
        "majority decision {u:?} not respected at margin {g}: {:?}",
        dec.verdicts
    );
    Ok(())
}

pub fn check_unanimity(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let k = rng.gen_range(1..=4);
    let weights: Vec<i128> = (0..k).map(|_| rng.gen_range(1..=5)).collect();
    let total: i128 = weights.iter().sum();
    let parts: Vec<(Degree, Valuation)> = weights
        .iter()
        .map(|&w| (Degree::new(w, total), random_definite(rng, &d).as_valuation()))
        .collect();
    let v = ok(aggregate(&parts))?;
    let star = upper(&d, &v)?;
    for l in v.literals() {
        if v.get(l) == Degree::ONE {
            ensure!(
                accepted(&star, l, Degree::ZERO),
                "unanimous literal {l:?} not accepted"
            );
        }
        if star.get(l) == Degree::ONE {
            ensure!(v.get(l) == Degree::ONE, "revised unanimity without input unanimity");
        }
    }
    Ok(())
}

pub fn check_acceptability_monotone(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let lits: Vec<Lit> = v.literals().collect();
    let p = *lits.choose(rng).unwrap();
    if v.get(p) == Degree::ONE {
        return Ok(());
    }
    let mut w = v.clone();
    let headroom = v.get(p).complement();
    let raise = headroom.checked_mul(Degree::new(rng.gen_range(1..=4), 4)).unwrap();
    w.set(p, v.get(p).checked_add(raise).unwrap()).unwrap();
    let (vs, ws) = (upper(&d, &v)?, upper(&d, &w)?);
    let before = vs.get(p).checked_sub(vs.get(!p)).unwrap();
    let after = ws.get(p).checked_sub(ws.get(!p)).unwrap();
    ensure!(after >= before, "acceptability of {p:?} dropped from {before} to {after}");
    for g in margins() {
        ensure!(
            !accepted(&vs, p, g) || accepted(&ws, p, g),
            "accepted literal lost acceptance at {g}"
        );
        ensure!(
            rejected(&vs, p, g) || !rejected(&ws, p, g),
            "non-rejected literal became rejected at {g}"
        );
    }
    Ok(())
}

pub fn check_lipschitz(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let w = random_valuation(rng, d.atom_count());
    let before = ok(v.distance(&w))?;
    let after = ok(upper(&d, &v)?.distance(&upper(&d, &w)?))?;
    ensure!(after <= before, "distance grew from {before} to {after}");
    Ok(())
}

pub fn check_duality(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let lower = ok(revise_lower(&d, &v))?.result;
    ensure!(lower == upper(&d, &v.hat())?.hat(), "duality identity fails");
    ensure!(lower.le(&v), "lower revision above input");

    let b = random_balanced(rng, d.atom_count());
    let (up, low) = (upper(&d, &b)?, ok(revise_lower(&d, &b))?.result);
    for g in margins() {
        ensure!(
            ok(decide_bilateral(&up, g))? == ok(decide_bilateral(&low, g))?,
            "balanced decisions differ at {g}"
        );
    }
    Ok(())
}

pub fn check_model_bound(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let star = upper(&d, &v)?;
    let u = ok(consistent_assignments(&d))?.choose(rng).unwrap().clone();
    let true_lits = || v.literals().filter(|&l| u.lit(l)).map(|l| !l);
    ensure!(
        max_over(&star, true_lits()) <= max_over(&v, true_lits()),
        "bound against consistent assignment fails"
    );
    Ok(())
}

pub fn check_invariant_partial(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let u = random_partial(rng, d.atom_count());
    let uv = u.as_valuation();
    let step = ok(one_step_upper(&d, &uv))?;
    let definite = check_definitely_consistent(&d, &u);
    if step == uv {
        ensure!(definite, "invariant partial assignment not definitely consistent");
    }
    if definite {
        ensure!(basic_decision(&step) == u, "basic decision moved a definite assignment");
    }
    Ok(())
}

// ---- definite Horn ----
//
// Non-rejection at bilateral margin g only yields v*_p >= (1 - g) / 2, so
// the non-rejection half of the first bridge is checked at that margin.

pub fn check_horn_bound(rng: &mut ChaCha8Rng) -> Check {
    let d = random_horn_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let star = upper(&d, &v)?;
    let negs = || d.universe().atoms().map(AtomId::negative);
    ensure!(
        max_over(&star, negs()) <= max_over(&v, negs()),
        "negative literals grew beyond their maximum"
    );
    Ok(())
}

pub fn check_unilateral_consistency(rng: &mut ChaCha8Rng) -> Check {
    let d = random_horn_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let star = upper(&d, &v)?;
    for g in margins() {
        let dec = ok(decide_unilateral(&d, &star, g))?;
        ensure!(
            check_definitely_consistent(&d, &dec.as_assignment()),
            "unilateral decision at {g} not definitely consistent"
        );
    }
    Ok(())
}

pub fn check_horn_bridges(rng: &mut ChaCha8Rng) -> Check {
    let d = random_horn_bcf(rng);
    let v = random_valuation(rng, d.atom_count());
    let star = upper(&d, &v)?;
    let g0 = max_over(&v, d.universe().atoms().map(AtomId::negative));
    for g in margins() {
        let bi = ok(decide_bilateral(&star, g))?;
        let half = g.checked_add(Degree::ONE).unwrap().checked_mul(Degree::HALF).unwrap();
        let uni_half = ok(decide_unilateral(&d, &star, half))?;
        let low = Degree::ONE.checked_sub(g).unwrap().checked_mul(Degree::HALF).unwrap();
        let uni_low = ok(decide_unilateral(&d, &star, low))?;
        let uni = ok(decide_unilateral(&d, &star, g))?;
        for a in d.universe().atoms() {
            let i = a.index();
            if v.get(a.positive()).checked_add(v.get(a.negative())).unwrap() >= Degree::ONE {
                if bi.verdicts[i] == Verdict::Accept {
                    ensure!(uni_half.verdicts[i] == Verdict::Accept, "bridge (a) accept at {g}");
                }
                if bi.verdicts[i] != Verdict::Reject {
                    ensure!(uni_low.verdicts[i] != Verdict::Reject, "bridge (a) reject at {g}");
                }
            }
            if g >= g0 {
                let bi0 = ok(decide_bilateral(&star, g.checked_sub(g0).unwrap()))?;
                if uni.verdicts[i] == Verdict::Accept {
                    ensure!(bi0.verdicts[i] == Verdict::Accept, "bridge (b) accept at {g}");
                }
                if uni.verdicts[i] != Verdict::Reject {
                    ensure!(bi0.verdicts[i] != Verdict::Reject, "bridge (b) reject at {g}");
                }
            }
        }
    }
    Ok(())
}

// ---- autarkic sets ----

/// A non-empty autarkic set: the true literals of a model, or a random
/// literal subset that passes the check.
pub fn random_autarky(rng: &mut ChaCha8Rng, d: &Doctrine) -> Vec<Lit> {
    let n = d.atom_count();
    for _ in 0..20 {
        let mut atoms: Vec<u32> = (0..n as u32).collect();
        atoms.shuffle(rng);
        let k = rng.gen_range(1..=n);
        let sigma: Vec<Lit> = atoms[..k]
            .iter()
            .map(|&a| Lit::new(AtomId(a), rng.gen_bool(0.5)))
            .collect();
        if check_autarky(d, &sigma) {
            return sigma;
        }
    }
    let u = consistent_assignments(d).unwrap().choose(rng).unwrap().clone();
    d.universe().literals().filter(|&l| u.lit(l)).collect()
}

pub fn check_autarky_acceptance(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let sigma = random_autarky(rng, &d);
    ensure!(check_autarky(&d, &sigma), "generated set is not autarkic");
    let v = random_valuation(rng, d.atom_count());
    let star = upper(&d, &v)?;
    let negs = || sigma.iter().map(|&l| !l);
    ensure!(
        max_over(&star, negs()) <= max_over(&v, negs()),
        "autarky bound fails for {sigma:?}"
    );
    let gap = min_over(&v, sigma.iter().copied());
    let top = max_over(&v, negs());
    for g in margins().filter(|&g| g < Degree::ONE) {
        if gap.exceeds_by(top, g).unwrap() {
            for &l in &sigma {
                ensure!(accepted(&star, l, g), "{l:?} in autarky not accepted at {g}");
            }
        }
    }
    Ok(())
}

pub fn check_decomposition(rng: &mut ChaCha8Rng) -> Check {
    let d = random_bcf(rng);
    let sigma = random_autarky(rng, &d);
    let mut v = random_valuation(rng, d.atom_count());
    for &l in &sigma {
        v.set(l, Degree::ONE).unwrap();
        v.set(!l, Degree::ZERO).unwrap();
    }
    let star = upper(&d, &v)?;
    for &l in &sigma {
        ensure!(
            star.get(l) == Degree::ONE && star.get(!l) == Degree::ZERO,
            "unanimous autarky entry moved"
        );
    }
    let touched = |c: &Clause| c.lits().iter().any(|l| sigma.iter().any(|s| s.atom() == l.atom()));
    let reduced = d.retain_clauses(|c| !touched(c));
    let rstar = ok(revise_upper_unchecked(&reduced, &v))?.result;
    for l in v.literals() {
        if !sigma.iter().any(|s| s.atom() == l.atom()) {
            ensure!(
                star.get(l) == rstar.get(l),
                "reduced doctrine disagrees on {l:?}"
            );
        }
    }
    Ok(())
}

// ---- domains ----

fn item_names(n: usize) -> Vec<String> {
    "abcdefg".chars().take(n).map(String::from).collect()
}

/// Convex combination of random equivalence relations (random partitions).
pub fn aggregated_partitions(rng: &mut ChaCha8Rng, map: &PairAtomMap) -> Valuation {
    let n = map.len();
    let voters = rng.gen_range(1..=5);
    let weights: Vec<i128> = (0..voters).map(|_| rng.gen_range(1..=4)).collect();
    let total: i128 = weights.iter().sum();
    let parts: Vec<(Degree, Valuation)> = weights
        .iter()
        .map(|&w| {
            let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let mut v = Valuation::zeros(map.universe().len());
            for x in 0..n {
                for y in x + 1..n {
                    let l = map.lit(x, y);
                    let l = if labels[x] == labels[y] { l } else { !l };
                    v.set(l, Degree::ONE).unwrap();
                }
            }
            (Degree::new(w, total), v)
        })
        .collect();
    aggregate(&parts).unwrap()
}

fn check_ultrametric(map: &PairAtomMap, star: &Valuation) -> Check {
    let n = map.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x != y && y != z && x != z {
                    let direct = star.get(map.lit(x, z));
                    let via = star.get(map.lit(x, y)).min(star.get(map.lit(y, z)));
                    ensure!(direct >= via, "ultrametric law fails at {x}{y}{z}");
                }
            }
        }
    }
    Ok(())
}

/// Positive links always match the strongest-path oracle. Negative links
/// are bounded below by their oracle and match it whenever accepted.
pub fn check_equivalence_paths(rng: &mut ChaCha8Rng) -> Check {
    let n = rng.gen_range(3..=6);
    let items = item_names(n);
    let map = PairAtomMap::equivalence(&items).unwrap();
    let d = ok(gen_equivalence(&items, true, &Limits::default()))?;
    let v = random_valuation(rng, map.universe().len());
    let star = upper(&d, &v)?;
    for x in 0..n {
        for y in x + 1..n {
            let e = map.lit(x, y);
            let pos = ok(path_strength_eq(&map, &v, x, y))?;
            ensure!(star.get(e) == pos, "e({x},{y}): engine {} oracle {pos}", star.get(e));
            let neg = ok(path_strength_neg_eq(&map, &v, x, y))?;
            ensure!(neg <= star.get(!e), "negative oracle above engine");
            if star.get(!e) > star.get(e) {
                ensure!(star.get(!e) == neg, "accepted ~e({x},{y}) differs from oracle");
            }
        }
    }
    check_ultrametric(&map, &star)
}

/// On aggregates of consistent opinions both path oracles match entrywise.
pub fn check_equivalence_paths_aggregated(rng: &mut ChaCha8Rng) -> Check {
    let n = rng.gen_range(3..=6);
    let items = item_names(n);
    let map = PairAtomMap::equivalence(&items).unwrap();
    let d = ok(gen_equivalence(&items, true, &Limits::default()))?;
    let v = aggregated_partitions(rng, &map);
    let star = upper(&d, &v)?;
    for x in 0..n {
        for y in x + 1..n {
            let e = map.lit(x, y);
            ensure!(
                star.get(e) == ok(path_strength_eq(&map, &v, x, y))?,
                "e({x},{y}) differs from oracle"
            );
            ensure!(
                star.get(!e) == ok(path_strength_neg_eq(&map, &v, x, y))?,
                "~e({x},{y}) differs from oracle"
            );
        }
    }
    check_ultrametric(&map, &star)
}

pub fn check_order_paths(rng: &mut ChaCha8Rng) -> Check {
    let n = rng.gen_range(3..=5);
    let items = item_names(n);
    let map = PairAtomMap::total_order(&items).unwrap();
    let d = ok(gen_total_order(&items, true, &Limits::default()))?;
    let v = random_valuation(rng, map.universe().len());
    let star = upper(&d, &v)?;
    let s = ok(schulze_strengths(&map, &v))?;
    ensure!(
        star == ok(strengths_to_valuation(&map, &s))?,
        "engine differs from widest-path strengths"
    );
    Ok(())
}

fn random_extension_case(
    rng: &mut ChaCha8Rng,
    d: &Doctrine,
) -> Check {
    let u = random_definite(rng, d);
    let undecided: Vec<Lit> = d
        .universe()
        .literals()
        .filter(|&l| u.lit(l) == Verdict::Undecided)
        .collect();
    let pick = undecided.choose(rng).copied();
    let total = ok(extend_assignment(d, &u, pick))?;
    ensure!(check_consistent_total(d, &total), "extension inconsistent");
    if let Some(l) = pick {
        ensure!(total.lit(l), "picked literal not set");
    }
    for a in d.universe().atoms() {
        match u.atom(a) {
            Verdict::Accept => ensure!(total.atom(a), "accepted atom dropped"),
            Verdict::Reject => ensure!(!total.atom(a), "rejected atom dropped"),
            Verdict::Undecided => {}
        }
    }
    Ok(())
}

pub fn check_extension_equivalence(rng: &mut ChaCha8Rng) -> Check {
    let n = rng.gen_range(3..=5);
    let d = ok(gen_equivalence(&item_names(n), true, &Limits::default()))?;
    random_extension_case(rng, &d)
}

pub fn check_extension_order(rng: &mut ChaCha8Rng) -> Check {
    let n = rng.gen_range(3..=5);
    let d = ok(gen_total_order(&item_names(n), true, &Limits::default()))?;
    random_extension_case(rng, &d)
}

/// Single-link ultrametric against the Blake-form revision and against the
/// minimax path distance.
pub fn check_single_link(rng: &mut ChaCha8Rng) -> Check {
    let n = rng.gen_range(1..=6);
    let den = random_den(rng);
    let mut m = vec![vec![Degree::ZERO; n]; n];
    for x in 0..n {
        for y in x + 1..n {
            m[x][y] = random_degree(rng, den);
            m[y][x] = m[x][y];
        }
    }
    let dg = ok(single_link(&m))?;
    let mut minimax = m.clone();
    for k in 0..n {
        for x in 0..n {
            for y in 0..n {
                let via = minimax[x][k].max(minimax[k][y]);
                if via < minimax[x][y] {
                    minimax[x][y] = via;
                }
            }
        }
    }
    ensure!(dg.ultrametric == minimax, "ultrametric differs from minimax paths");
    if n >= 2 {
        let items = item_names(n);
        let map = PairAtomMap::equivalence(&items).unwrap();
        let d = ok(gen_equivalence(&items, true, &Limits::default()))?;
        let mut v = Valuation::zeros(map.universe().len());
        for x in 0..n {
            for y in x + 1..n {
                v.set(map.lit(x, y), m[x][y].complement()).unwrap();
            }
        }
        let star = upper(&d, &v)?;
        for x in 0..n {
            for y in x + 1..n {
                ensure!(
                    star.get(map.lit(x, y)).complement() == dg.ultrametric[x][y],
                    "single link differs from the Blake-form revision"
                );
            }
        }
    }
    Ok(())
}
