//! Invocations over `testdata/`, run from that directory. Stdout of each
//! case is stored in `testdata/expected/<name>.out`.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub env: &'static [(&'static str, &'static str)],
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case { name, args, env: &[], exit }
}

pub const CASES: &[Case] = &[
    case("bcf_conjunction", &["bcf", "conjunction.doc"], 0),
    case("bcf_formula", &["bcf", "conjunction_formula.doc"], 0),
    case("bcf_absorbed", &["bcf", "absorbed.doc"], 0),
    case("bcf_units", &["bcf", "units.doc"], 0),
    case("bcf_three_implicates", &["bcf", "three_implicates.doc"], 0),
    case("bcf_unsat", &["bcf", "unsat.doc"], 3),
    case("bcf_parse_error", &["bcf", "parse_error.doc"], 2),
    case("bcf_missing_file", &["bcf", "no_such.doc"], 2),
    case("revise_panel", &["revise", "conjunction.doc", "panel.val"], 0),
    case("revise_panel_lower", &["revise", "conjunction.doc", "panel.val", "--direction", "lower"], 0),
    case("revise_two_step", &["revise", "two_step.doc", "two_step.val"], 0),
    case("revise_units", &["revise", "units.doc", "units.val"], 0),
    case("revise_mismatch", &["revise", "conjunction.doc", "mismatch.val"], 5),
    case("decide_panel", &["decide", "conjunction.doc", "panel.val"], 0),
    case("decide_panel_margin", &["decide", "conjunction.doc", "panel.val", "--margin", "0.15"], 0),
    case("decide_panel_lower", &["decide", "conjunction.doc", "panel.val", "--lower"], 0),
    case("decide_unilateral", &["decide", "conjunction.doc", "panel.val", "--unilateral", "--margin", "1/2"], 0),
    case("decide_unilateral_not_horn", &["decide", "two_step.doc", "two_step.val", "--unilateral"], 6),
    case("decide_bad_margin", &["decide", "conjunction.doc", "panel.val", "--margin", "2"], 2),
    case(
        "check_conjunction",
        &[
            "check", "conjunction.doc", "--prime", "--horn", "--consistent", "panel.val",
            "--definite", "definite.dec", "--unquestionable", "--oracle",
        ],
        0,
    ),
    case("check_absorbed", &["check", "absorbed.doc", "--prime"], 0),
    case("check_two_step", &["check", "two_step.doc", "--unquestionable"], 0),
    case("check_partial", &["check", "conjunction.doc", "--definite", "partial.dec"], 0),
    case("check_default", &["check", "three_implicates.doc"], 0),
    case("gen_conjunction", &["gen", "conjunction"], 0),
    case("gen_equivalence", &["gen", "equivalence", "--items", "a,b,c"], 0),
    case("gen_equivalence_blake", &["gen", "equivalence", "--items", "a,b,c,d", "--blake"], 0),
    case("gen_order_pair", &["gen", "order", "--items", "a,b", "--blake"], 0),
    case("gen_order", &["gen", "order", "--items", "a,b,c"], 0),
    case("gen_missing_items", &["gen", "order"], 2),
    case("aggregate_panel", &["aggregate", "panel.weights"], 0),
    case("aggregate_jury", &["aggregate", "jury.weights"], 0),
    case("aggregate_single", &["aggregate", "single.weights"], 0),
    case("aggregate_bad", &["aggregate", "bad.weights"], 5),
    Case {
        name: "gen_budget",
        args: &["gen", "equivalence", "--items", "a,b,c,d,e", "--blake"],
        env: &[("DOCTRINA_CLAUSE_BUDGET", "5")],
        exit: 4,
    },
];

pub fn testdata() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata")
}

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

pub fn run_in(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_doctrina"));
    cmd.current_dir(dir).args(args).env_remove("DOCTRINA_CLAUSE_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("failed to launch doctrina");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        exit: out.status.code().unwrap_or(-1),
    }
}

pub fn run(case: &Case) -> Run {
    run_in(&testdata(), case.args, case.env)
}

pub fn expected(case: &Case) -> Option<String> {
    std::fs::read_to_string(testdata().join("expected").join(format!("{}.out", case.name))).ok()
}
