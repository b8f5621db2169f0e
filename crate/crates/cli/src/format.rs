//! Line-oriented text formats for doctrines, valuations and decisions.

use std::collections::BTreeSet;
use std::fmt::Write;

use doctrina_core::{
    parse_formula, to_clause_set, AtomId, Clause, Degree, Doctrine, Lit, Universe, Valuation,
    Verdict,
};

use crate::error::{CliError, Result};

/// Keywords that may close a valuation file written by `revise`.
pub const TRAILER_KEYS: [&str; 2] = ["iterations", "one_step_equal"];

/// Parsed doctrine file: every declared atom in declaration order, and the
/// clauses (including units from `fixed` lines) over that universe.
#[derive(Clone, Debug)]
pub struct DoctrineFile {
    pub universe: Universe,
    pub clauses: Vec<Clause>,
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head).trim()
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
}

fn core_err(line: usize) -> impl Fn(doctrina_core::Error) -> CliError {
    move |e| CliError::parse(line, e.to_string())
}

pub fn parse_doctrine(text: &str, budget: usize) -> Result<DoctrineFile> {
    let mut universe = Universe::new();
    let mut clauses = Vec::new();
    for (n, line) in lines(text) {
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "atoms" => {
                if rest.is_empty() {
                    return Err(CliError::parse(n, "`atoms` needs at least one name"));
                }
                for name in rest.split_whitespace() {
                    universe.intern(name).map_err(core_err(n))?;
                }
            }
            "clause" => {
                let lits = rest
                    .split_whitespace()
                    .map(|t| universe.parse_lit(t))
                    .collect::<std::result::Result<Vec<Lit>, _>>()
                    .map_err(core_err(n))?;
                if lits.is_empty() {
                    return Err(CliError::parse(n, "empty clause"));
                }
                clauses.push(Clause::new(lits));
            }
            "formula" => {
                let mut scratch = universe.clone();
                let f = parse_formula(rest, &mut scratch).map_err(core_err(n))?;
                if scratch.len() > universe.len() {
                    let name = scratch.name(AtomId(universe.len() as u32));
                    return Err(CliError::parse(n, format!("unknown atom `{name}`")));
                }
                clauses.extend(to_clause_set(&f, budget)?);
            }
            "fixed" => {
                let mut parts = rest.split_whitespace();
                let (Some(name), Some(value), None) = (parts.next(), parts.next(), parts.next())
                else {
                    return Err(CliError::parse(n, "expected `fixed <atom> <0|1>`"));
                };
                let atom = universe
                    .get(name)
                    .ok_or_else(|| CliError::parse(n, format!("unknown atom `{name}`")))?;
                let positive = match value {
                    "1" => true,
                    "0" => false,
                    _ => return Err(CliError::parse(n, "fixed value must be 0 or 1")),
                };
                clauses.push(Clause::new(vec![Lit::new(atom, !positive)]));
            }
            _ => return Err(CliError::parse(n, format!("unknown directive `{key}`"))),
        }
    }
    if universe.is_empty() {
        return Err(CliError::parse(0, "no atoms declared"));
    }
    Ok(DoctrineFile { universe, clauses })
}

/// Canonical doctrine text. `declared` lists every atom, including those
/// that `d` has fixed; fixed atoms are printed in declaration order.
pub fn print_doctrine(declared: &Universe, d: &Doctrine) -> String {
    let mut out = String::new();
    let names: Vec<&str> = declared.names().iter().map(String::as_str).collect();
    writeln!(out, "atoms {}", names.join(" ")).unwrap();
    for a in declared.atoms() {
        let name = declared.name(a);
        if let Some((_, value)) = d.fixed().iter().find(|(f, _)| f == name) {
            writeln!(out, "fixed {name} {}", u8::from(*value)).unwrap();
        }
    }
    for c in d.clauses() {
        writeln!(out, "clause {}", c.render(d.universe())).unwrap();
    }
    out
}

/// Parses `<lit> <value>` lines over `universe`. Omitted literals default
/// to 0 and are reported in the returned warnings.
pub fn parse_valuation(text: &str, universe: &Universe) -> Result<(Valuation, Vec<String>)> {
    let mut v = Valuation::zeros(universe.len());
    let mut seen = BTreeSet::new();
    for (n, line) in lines(text) {
        let mut parts = line.split_whitespace();
        let (Some(lit), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(CliError::parse(n, "expected `<literal> <value>`"));
        };
        if TRAILER_KEYS.contains(&lit) && universe.get(lit).is_none() {
            continue;
        }
        let name = lit.strip_prefix('~').unwrap_or(lit);
        if universe.get(name).is_none() {
            return Err(CliError::Domain(format!("line {n}: atom `{name}` not in the doctrine")));
        }
        let l = universe.parse_lit(lit).map_err(core_err(n))?;
        let degree: Degree = value.parse().map_err(core_err(n))?;
        if !degree.is_unit_interval() {
            return Err(CliError::parse(n, format!("value {degree} outside [0, 1]")));
        }
        if !seen.insert(l) {
            return Err(CliError::parse(n, format!("duplicate literal `{lit}`")));
        }
        v.set(l, degree)?;
    }
    let warnings = universe
        .literals()
        .filter(|l| !seen.contains(l))
        .map(|l| format!("literal `{}` omitted, defaulting to 0", universe.lit_name(l)))
        .collect();
    Ok((v, warnings))
}

/// Atoms named in a valuation file, in order of first appearance.
pub fn valuation_atoms(text: &str, universe: &mut Universe) -> Result<()> {
    for (n, line) in lines(text) {
        let lit = line.split_whitespace().next().unwrap_or_default();
        if TRAILER_KEYS.contains(&lit) {
            continue;
        }
        universe
            .intern(lit.strip_prefix('~').unwrap_or(lit))
            .map_err(core_err(n))?;
    }
    Ok(())
}

pub fn print_valuation(universe: &Universe, v: &Valuation) -> String {
    let mut out = String::new();
    for l in universe.literals() {
        writeln!(out, "{} {}", universe.lit_name(l), v.get(l)).unwrap();
    }
    out
}

pub fn print_decision(universe: &Universe, margin: Degree, mode: &str, verdicts: &[Verdict]) -> String {
    let mut out = format!("margin {margin}\nmode {mode}\n");
    for a in universe.atoms() {
        let word = match verdicts[a.index()] {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
            Verdict::Undecided => "undecided",
        };
        writeln!(out, "{word} {}", universe.name(a)).unwrap();
    }
    out
}

/// Parses decision-format lines into per-atom verdicts; the `margin` and
/// `mode` header is optional and omitted atoms are undecided.
pub fn parse_assignment(text: &str, universe: &Universe) -> Result<Vec<Verdict>> {
    let mut verdicts = vec![None; universe.len()];
    for (n, line) in lines(text) {
        let mut parts = line.split_whitespace();
        let (Some(word), Some(name), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(CliError::parse(n, "expected `<verdict> <atom>`"));
        };
        let verdict = match word {
            "margin" | "mode" => continue,
            "accept" => Verdict::Accept,
            "reject" => Verdict::Reject,
            "undecided" => Verdict::Undecided,
            _ => return Err(CliError::parse(n, format!("unknown verdict `{word}`"))),
        };
        let atom = universe
            .get(name)
            .ok_or_else(|| CliError::Domain(format!("line {n}: atom `{name}` not in the doctrine")))?;
        if verdicts[atom.index()].replace(verdict).is_some() {
            return Err(CliError::parse(n, format!("duplicate atom `{name}`")));
        }
    }
    Ok(verdicts
        .into_iter()
        .map(|v| v.unwrap_or(Verdict::Undecided))
        .collect())
}

/// `<weight> <path>` lines of an aggregation file.
pub fn parse_weights(text: &str) -> Result<Vec<(Degree, String)>> {
    lines(text)
        .map(|(n, line)| {
            let (w, path) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| CliError::parse(n, "expected `<weight> <valuation path>`"))?;
            let w: Degree = w.parse().map_err(core_err(n))?;
            Ok((w, path.trim().to_string()))
        })
        .collect()
}
