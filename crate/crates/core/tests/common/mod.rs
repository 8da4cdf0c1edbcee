#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// Regenerate committed fixture and golden files instead of comparing.
pub fn bless() -> bool {
    std::env::var_os("FMACHINA_BLESS").is_some()
}

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], code: i32) -> Case {
    Case { name, args, code }
}

pub const CASES: &[Case] = &[
    case("validate_parity", &["validate", "fixtures/parity.json"], 0),
    case("validate_fix4", &["validate", "fixtures/fix4.json"], 0),
    case("validate_missing_d", &["validate", "fixtures/corrupt/parity_missing_d.json"], 2),
    case("validate_truncated", &["validate", "fixtures/corrupt/truncated.json"], 2),
    case("validate_unknown_kind", &["validate", "fixtures/corrupt/unknown_kind.json"], 2),
    case("run_parity", &["run", "fixtures/parity.json", "--state", "p0", "--word", "1,0,1"], 0),
    case("run_parity_moore_empty", &["run", "fixtures/parity_moore.json", "--state", "p1"], 0),
    case("run_bad_letter", &["run", "fixtures/parity.json", "--state", "p0", "--word", "2"], 2),
    case("behavior_parity", &["behavior", "fixtures/parity.json", "--depth", "2"], 0),
    case("behavior_fix3_moore", &["behavior", "fixtures/fix3_moore.json", "--depth", "1"], 0),
    case("behavior_fix4", &["behavior", "fixtures/fix4.json", "--depth", "2"], 0),
    case("minimize_fix3", &["minimize", "fixtures/fix3.json"], 0),
    case("minimize_parity", &["minimize", "fixtures/parity.json"], 0),
    case("equivalent_fix3", &["equivalent", "fixtures/fix3.json", "fixtures/fix3.json", "--states", "a,b"], 0),
    case("equivalent_parity", &["equivalent", "fixtures/parity.json", "fixtures/parity.json", "--states", "p0,p1"], 1),
    case("equivalent_mismatch", &["equivalent", "fixtures/parity.json", "fixtures/parity_moore.json", "--states", "p0,p0"], 2),
    case("product_parity", &["product", "fixtures/parity.json", "fixtures/parity.json"], 0),
    case("coproduct_parity", &["coproduct", "fixtures/parity.json", "fixtures/parity.json"], 0),
    case(
        "equalizer_fix3",
        &["equalizer", "fixtures/fix3.json", "fixtures/morphisms/fix3_identity.json", "fixtures/morphisms/fix3_collapse.json"],
        0,
    ),
    case(
        "check_morphism_identity",
        &["check-morphism", "fixtures/parity.json", "fixtures/parity.json", "fixtures/morphisms/parity_identity.json"],
        0,
    ),
    case(
        "check_morphism_swap",
        &["check-morphism", "fixtures/parity.json", "fixtures/parity.json", "fixtures/morphisms/parity_swap.json"],
        1,
    ),
    case(
        "check_universal_product",
        &["check-universal", "product", "fixtures/parity.json", "fixtures/parity.json", "--bound", "4"],
        0,
    ),
    case(
        "check_universal_coproduct",
        &["check-universal", "coproduct", "fixtures/fix3.json", "fixtures/fix3.json", "--bound", "4"],
        0,
    ),
    case(
        "check_universal_equalizer",
        &[
            "check-universal", "equalizer", "fixtures/fix3.json", "fixtures/fix3.json",
            "fixtures/morphisms/fix3_identity.json", "fixtures/morphisms/fix3_collapse.json", "--bound", "4",
        ],
        0,
    ),
    case(
        "check_universal_coequalizer",
        &[
            "check-universal", "coequalizer", "fixtures/fix3.json", "fixtures/fix3.json",
            "fixtures/morphisms/fix3_identity.json", "fixtures/morphisms/fix3_collapse.json", "--bound", "4",
        ],
        0,
    ),
    case(
        "check_universal_pullback",
        &[
            "check-universal", "pullback", "fixtures/fix3_moore.json", "fixtures/fix3_moore.json",
            "fixtures/constant_moore.json", "fixtures/morphisms/fix3_moore_to_constant.json",
            "fixtures/morphisms/fix3_moore_to_constant.json", "--bound", "4",
        ],
        0,
    ),
    case("check_universal_initial", &["check-universal", "initial", "fixtures/fix4.json", "--bound", "4"], 0),
    case("check_universal_bound", &["check-universal", "product", "fixtures/parity.json", "fixtures/parity.json", "--bound", "1"], 3),
    case("decompose_parity", &["decompose", "fixtures/parity.json"], 0),
    case("decompose_parity_moore", &["decompose", "fixtures/parity_moore.json"], 0),
    case("check_adjunction_fix3", &["check-adjunction", "fixtures/fix3_moore.json", "fixtures/constant_moore.json", "--bound", "3"], 0),
    case("check_adjunction_mealy", &["check-adjunction", "fixtures/parity.json", "fixtures/parity.json"], 2),
];

pub struct Run {
    pub code: i32,
    pub stdout: String,
}

pub fn run_cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fmachina"))
        .args(args)
        .current_dir(repo_root())
        .env_remove("FMACHINA_SIZE_GUARD")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 report"),
    }
}

pub fn golden_path(name: &str) -> PathBuf {
    repo_root().join("fixtures/golden").join(format!("{name}.json"))
}

/// Runs one case; returns a description of the mismatch, if any.
pub fn check_case(c: &Case) -> Option<String> {
    let r = run_cli(c.args);
    let path = golden_path(c.name);
    if bless() {
        std::fs::write(&path, &r.stdout).expect("write golden");
    }
    if r.code != c.code {
        return Some(format!("{}: exit {} (expected {})", c.name, r.code, c.code));
    }
    match std::fs::read_to_string(&path) {
        Ok(expected) if expected == r.stdout => None,
        Ok(_) => Some(format!("{}: report differs from {}", c.name, path.display())),
        Err(e) => Some(format!("{}: {e}", c.name)),
    }
}

pub mod machines {
    use std::collections::HashMap;

    use fmachina::base::{BaseObject, Obj};
    use fmachina::machine::{mk_classical, FMachine, Flavor, OutputTable};
    use rand::Rng;

    pub fn letters(n: usize) -> Obj {
        BaseObject::set((0..n).map(|i| i.to_string()).collect()).unwrap()
    }

    pub fn random_classical(
        rng: &mut impl Rng,
        flavor: Flavor,
        states: usize,
        inputs: usize,
        outputs: usize,
    ) -> FMachine {
        let (input, output) = (letters(inputs), letters(outputs));
        let names: Vec<String> = (0..states).map(|i| format!("q{i}")).collect();
        let mut d = HashMap::new();
        let mut per_transition = HashMap::new();
        for e in &names {
            for i in input.elements() {
                d.insert((e.clone(), i.clone()), names[rng.random_range(0..states)].clone());
                per_transition.insert((e.clone(), i.clone()), rng.random_range(0..outputs).to_string());
            }
        }
        let s = match flavor {
            Flavor::Mealy => OutputTable::PerTransition(per_transition),
            Flavor::Moore => OutputTable::PerState(
                names
                    .iter()
                    .map(|e| (e.clone(), rng.random_range(0..outputs).to_string()))
                    .collect(),
            ),
        };
        mk_classical(&input, &output, &names, &d, &s).unwrap()
    }

    /// Output of a classical machine on a word, simulated from element names.
    pub fn simulate(m: &FMachine, state: &str, word: &[String]) -> String {
        let mut e = state.to_string();
        let mut out = None;
        for i in word {
            let key = format!("({e},{i})");
            if m.flavor() == Flavor::Mealy {
                out = Some(m.s().apply_name(&key).unwrap().to_string());
            }
            e = m.d().apply_name(&key).unwrap().to_string();
        }
        match m.flavor() {
            Flavor::Mealy => out.expect("nonempty word"),
            Flavor::Moore => m.s().apply_name(&e).unwrap().to_string(),
        }
    }

    /// All words of length `n`, first letter most significant.
    pub fn words(input: &Obj, n: usize) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w: Vec<String>| {
                    input.elements().iter().map(move |i| {
                        let mut w = w.clone();
                        w.push(i.clone());
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Behavior equality by exhaustive simulation on all words up to `|E1| + |E2|`.
    pub fn word_equivalent(m1: &FMachine, e1: &str, m2: &FMachine, e2: &str) -> bool {
        let input = m1.classical_input().expect("classical");
        let start = if m1.flavor() == Flavor::Mealy { 1 } else { 0 };
        let limit = m1.carrier().len() + m2.carrier().len();
        (start..=limit.max(start)).all(|n| {
            words(input, n)
                .iter()
                .all(|w| simulate(m1, e1, w) == simulate(m2, e2, w))
        })
    }
}
