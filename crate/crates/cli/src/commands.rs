//! Command implementations. Each returns the text for standard output and
//! any warnings for the diagnostic stream.

use std::fs;
use std::path::{Path, PathBuf};

use doctrina_core::oracle::prime_implicates;
use doctrina_core::{
    blake_canonical_form, check_autarky, check_definitely_consistent, check_prime,
    check_unquestionable_syntactic, check_valuation_consistent, classify_horn, decide_bilateral,
    decide_unilateral, gen_conjunction, gen_equivalence, gen_total_order, normalize,
    revise_lower, revise_upper, Degree, Doctrine, Error, HornClass, Limits, Lit,
    PartialTruthAssignment, Unquestionability, Universe, Valuation, Verdict,
};

use crate::error::{CliError, Result};
use crate::format::{
    parse_assignment, parse_doctrine, parse_valuation, parse_weights, print_decision,
    print_doctrine, print_valuation, valuation_atoms,
};

pub const BUDGET_VAR: &str = "DOCTRINA_CLAUSE_BUDGET";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

impl Output {
    fn text(stdout: String) -> Self {
        Output {
            stdout,
            warnings: Vec::new(),
        }
    }
}

/// Default limits, with the clause budget taken from the environment when set.
pub fn limits_from_env() -> Result<Limits> {
    let mut limits = Limits::default();
    if let Ok(raw) = std::env::var(BUDGET_VAR) {
        limits.clause_budget = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_VAR} must be a count, got `{raw}`")))?;
    }
    Ok(limits)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

struct Loaded {
    declared: Universe,
    normalized: Doctrine,
}

impl Loaded {
    fn open(path: &Path, limits: &Limits) -> Result<Self> {
        let name = path.display().to_string();
        let file = parse_doctrine(&read(path)?, limits.clause_budget).map_err(|e| e.in_file(&name))?;
        let normalized = normalize(&file.universe, file.clauses, limits)?;
        Ok(Loaded {
            declared: file.universe,
            normalized,
        })
    }

    fn blake(&self, limits: &Limits) -> Result<Doctrine> {
        Ok(blake_canonical_form(&self.normalized, limits)?)
    }

    fn valuation(&self, path: &Path) -> Result<(Valuation, Vec<String>)> {
        let name = path.display().to_string();
        let (v, warnings) = parse_valuation(&read(path)?, &self.declared).map_err(|e| e.in_file(&name))?;
        Ok((v, warnings.into_iter().map(|w| format!("{name}: {w}")).collect()))
    }
}

fn declared_lit(declared: &Universe, d: &Doctrine, l: Lit) -> Lit {
    let atom = declared.get(d.universe().name(l.atom())).unwrap();
    Lit::new(atom, l.is_negative())
}

fn fixed_lits<'a>(declared: &'a Universe, d: &'a Doctrine) -> impl Iterator<Item = Lit> + 'a {
    d.fixed()
        .iter()
        .map(|(name, value)| Lit::new(declared.get(name).unwrap(), !value))
}

/// Restriction of a valuation over the declared atoms to `d`'s atoms.
fn restrict(declared: &Universe, d: &Doctrine, v: &Valuation) -> Result<Valuation> {
    let mut out = Valuation::zeros(d.atom_count());
    for l in d.universe().literals() {
        out.set(l, v.get(declared_lit(declared, d, l)))?;
    }
    Ok(out)
}

/// Revision of `v` over the Blake canonical form `b`, reported on every
/// declared atom. A fixed literal forms a unit prime implicate, so upper
/// revision raises it to 1 and lower revision lowers its negation to 0.
fn revise_declared(
    declared: &Universe,
    b: &Doctrine,
    v: &Valuation,
    lower: bool,
) -> Result<(Valuation, usize, bool)> {
    let core = restrict(declared, b, v)?;
    let report = if lower {
        revise_lower(b, &core)?
    } else {
        revise_upper(b, &core)?
    };
    let mut out = v.clone();
    for l in b.universe().literals() {
        out.set(declared_lit(declared, b, l), report.result.get(l))?;
    }
    for l in fixed_lits(declared, b) {
        if lower {
            out.set(!l, Degree::ZERO)?;
        } else {
            out.set(l, Degree::ONE)?;
        }
    }
    Ok((out, report.iterations, report.one_step_equal))
}

pub fn bcf(doctrine: &Path, limits: &Limits) -> Result<Output> {
    let loaded = Loaded::open(doctrine, limits)?;
    let b = loaded.blake(limits)?;
    Ok(Output::text(print_doctrine(&loaded.declared, &b)))
}

pub fn revise(doctrine: &Path, valuation: &Path, lower: bool, limits: &Limits) -> Result<Output> {
    let loaded = Loaded::open(doctrine, limits)?;
    let b = loaded.blake(limits)?;
    let (v, warnings) = loaded.valuation(valuation)?;
    let (result, iterations, one_step) = revise_declared(&loaded.declared, &b, &v, lower)?;
    let mut stdout = print_valuation(&loaded.declared, &result);
    stdout.push_str(&format!("iterations {iterations}\none_step_equal {one_step}\n"));
    Ok(Output { stdout, warnings })
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    pub margin: Degree,
    pub unilateral: bool,
    pub lower: bool,
}

pub fn decide(doctrine: &Path, valuation: &Path, opts: DecideOptions, limits: &Limits) -> Result<Output> {
    if !opts.margin.is_unit_interval() {
        return Err(CliError::Usage(format!("margin {} outside [0, 1]", opts.margin)));
    }
    let loaded = Loaded::open(doctrine, limits)?;
    let b = loaded.blake(limits)?;
    if opts.unilateral && classify_horn(&b) != HornClass::Definite {
        return Err(Error::NotDefiniteHorn.into());
    }
    let (v, warnings) = loaded.valuation(valuation)?;
    let (star, _, _) = revise_declared(&loaded.declared, &b, &v, opts.lower)?;
    let verdicts = if opts.unilateral {
        let core = decide_unilateral(&b, &restrict(&loaded.declared, &b, &star)?, opts.margin)?;
        let mut verdicts: Vec<Verdict> = loaded
            .declared
            .atoms()
            .map(|a| match star.get(a.positive()).cmp(&opts.margin) {
                std::cmp::Ordering::Greater => Verdict::Accept,
                std::cmp::Ordering::Less => Verdict::Reject,
                std::cmp::Ordering::Equal => Verdict::Undecided,
            })
            .collect();
        for a in b.universe().atoms() {
            let declared = declared_lit(&loaded.declared, &b, a.positive()).atom();
            verdicts[declared.index()] = core.verdicts[a.index()];
        }
        verdicts
    } else {
        decide_bilateral(&star, opts.margin)?.verdicts
    };
    let mode = if opts.unilateral { "unilateral" } else { "bilateral" };
    Ok(Output {
        stdout: print_decision(&loaded.declared, opts.margin, mode, &verdicts),
        warnings,
    })
}

#[derive(Clone, Debug, Default)]
pub struct CheckFlags {
    pub prime: bool,
    pub horn: bool,
    pub autarky: Option<String>,
    pub consistent: Option<PathBuf>,
    pub definite: Option<PathBuf>,
    pub unquestionable: bool,
    pub oracle: bool,
}

/// Prime, Horn and autarky checks read the normalized input; the others
/// read its Blake canonical form. With no flags, runs `prime` and `horn`.
pub fn check(doctrine: &Path, flags: &CheckFlags, limits: &Limits) -> Result<Output> {
    let mut flags = flags.clone();
    if !flags.prime
        && !flags.horn
        && flags.autarky.is_none()
        && flags.consistent.is_none()
        && flags.definite.is_none()
        && !flags.unquestionable
        && !flags.oracle
    {
        flags.prime = true;
        flags.horn = true;
    }
    let loaded = Loaded::open(doctrine, limits)?;
    let d = &loaded.normalized;
    let mut lines = Vec::new();
    let mut warnings = Vec::new();
    if flags.prime {
        lines.push(format!("prime {}", check_prime(d, limits)?));
    }
    if flags.horn {
        let class = match classify_horn(d) {
            HornClass::Definite => "definite",
            HornClass::Simple => "simple",
            HornClass::None => "none",
        };
        lines.push(format!("horn {class}"));
    }
    if let Some(list) = &flags.autarky {
        let sigma = list
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| d.universe().parse_lit(t))
            .collect::<std::result::Result<Vec<Lit>, _>>()?;
        lines.push(format!("autarky {}", check_autarky(d, &sigma)));
    }
    let needs_blake = flags.consistent.is_some() || flags.definite.is_some() || flags.unquestionable || flags.oracle;
    let b = if needs_blake { Some(loaded.blake(limits)?) } else { None };
    if let (Some(path), Some(b)) = (&flags.consistent, &b) {
        let (v, ws) = loaded.valuation(path)?;
        let fixed_ok = fixed_lits(&loaded.declared, b).all(|l| v.get(l) == Degree::ONE);
        let ok = fixed_ok && check_valuation_consistent(b, &restrict(&loaded.declared, b, &v)?)?;
        lines.push(format!("consistent {ok}"));
        warnings.extend(ws);
    }
    if let (Some(path), Some(b)) = (&flags.definite, &b) {
        let name = path.display().to_string();
        let verdicts = parse_assignment(&read(path)?, &loaded.declared).map_err(|e| e.in_file(&name))?;
        let fixed_ok = fixed_lits(&loaded.declared, b).all(|l| {
            let v = verdicts[l.atom().index()];
            v == if l.is_positive() { Verdict::Accept } else { Verdict::Reject }
        });
        let core = PartialTruthAssignment::new(
            b.universe()
                .atoms()
                .map(|a| verdicts[declared_lit(&loaded.declared, b, a.positive()).atom().index()])
                .collect(),
        );
        lines.push(format!("definite {}", fixed_ok && check_definitely_consistent(b, &core)));
    }
    if let (true, Some(b)) = (flags.unquestionable, &b) {
        for l in b.universe().literals() {
            let class = match check_unquestionable_syntactic(b, l) {
                Unquestionability::Yes => "yes",
                Unquestionability::WhenAccepted => "when_accepted",
                Unquestionability::Unknown => "unknown",
            };
            lines.push(format!("unquestionable {} {class}", b.universe().lit_name(l)));
        }
    }
    if let (true, Some(b)) = (flags.oracle, &b) {
        let pi = prime_implicates(d)?;
        let mut expected = pi.fixed.clone();
        let mut got = b.fixed().to_vec();
        expected.sort();
        got.sort();
        let same = got == expected
            && b.rendered_clauses() == doctrina_core::render_clauses(d.universe(), &pi.clauses);
        lines.push(format!("oracle {same}"));
    }
    let stdout = lines.iter().map(|l| format!("{l}\n")).collect();
    Ok(Output { stdout, warnings })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Conjunction,
    Equivalence,
    Order,
}

pub fn gen(kind: GenKind, items: &[String], blake: bool, limits: &Limits) -> Result<Output> {
    let d = match kind {
        GenKind::Conjunction => gen_conjunction(),
        GenKind::Equivalence => gen_equivalence(items, blake, limits)?,
        GenKind::Order => gen_total_order(items, blake, limits)?,
    };
    Ok(Output::text(print_doctrine(d.universe(), &d)))
}

pub fn aggregate(weights: &Path) -> Result<Output> {
    let name = weights.display().to_string();
    let entries = parse_weights(&read(weights)?).map_err(|e| e.in_file(&name))?;
    let base = weights.parent().unwrap_or(Path::new("."));
    let texts = entries
        .iter()
        .map(|(w, p)| {
            let path = base.join(p);
            read(&path).map(|t| (*w, path.display().to_string(), t))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut universe = Universe::new();
    for (_, path, text) in &texts {
        valuation_atoms(text, &mut universe).map_err(|e| e.in_file(path))?;
    }
    let mut warnings = Vec::new();
    let mut parts = Vec::new();
    for (w, path, text) in &texts {
        let (v, ws) = parse_valuation(text, &universe).map_err(|e| e.in_file(path))?;
        warnings.extend(ws.into_iter().map(|m| format!("{path}: {m}")));
        parts.push((*w, v));
    }
    let v = doctrina_core::aggregate(&parts)?;
    Ok(Output {
        stdout: print_valuation(&universe, &v),
        warnings,
    })
}
