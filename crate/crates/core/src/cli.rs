//! Command-line surface. Every subcommand prints one canonical JSON report.
//!
//! Exit codes: 0 property holds, 1 property fails (report carries a witness),
//! 2 input error, 3 size guard exceeded.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{decompose, functor_b, homset_bijection_check, naturality_check, recompose};
use crate::base::BaseMorphism;
use crate::behavior::{behavior_mate, behavior_partition, equivalent, minimize, refine, truncated_behavior};
use crate::document::{machine_value, morphism_value, parse, parse_morphism, to_canonical};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::limits::{
    machine_coequalizer, machine_coproduct, machine_equalizer, machine_initial, machine_product,
    machine_pullback,
};
use crate::machine::{run_word, validate_morphism, FMachine, Flavor, MachineMorphism, Square};
use crate::oracle::{check_universal, competitor_set, ConeReport, UniversalCone, DEFAULT_BOUND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fmachina", version, about = "Mealy and Moore machines for an adjunction F ⊣ R")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a machine document.
    Validate { file: PathBuf },
    /// Run a classical machine on a word.
    Run {
        file: PathBuf,
        #[arg(long)]
        state: String,
        /// Comma-separated letters; empty for the empty word.
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Behavior mates up to a depth, with the behavioral equivalence classes.
    Behavior {
        file: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Quotient by behavioral equivalence.
    Minimize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether two states (one per machine) have the same behavior.
    Equivalent {
        file1: PathBuf,
        file2: PathBuf,
        /// `S1,S2`
        #[arg(long)]
        states: String,
    },
    /// Binary product of machines.
    Product {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Binary coproduct of machines.
    Coproduct {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Equalizer of two morphisms out of FILE (into --target, default FILE).
    Equalizer {
        file: PathBuf,
        mor1: PathBuf,
        mor2: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a state map is a machine morphism.
    CheckMorphism {
        file1: PathBuf,
        file2: PathBuf,
        morphism: PathBuf,
    },
    /// Count mediating morphisms for a construction against all competitors.
    ///
    /// Files: product/coproduct M1 M2; equalizer/coequalizer SRC DST MOR1 MOR2;
    /// pullback M1 M2 BOTTOM MOR1 MOR2; initial TEMPLATE.
    CheckUniversal {
        kind: Kind,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Split a machine into its algebra and output leg.
    Decompose { file: PathBuf },
    /// Hom-set bijection for the behavior functor and its left adjoint.
    CheckAdjunction {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Product,
    Coproduct,
    Equalizer,
    Coequalizer,
    Pullback,
    Initial,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok((holds, report)) => Outcome {
            code: if holds { EXIT_OK } else { EXIT_FAILS },
            stdout: to_canonical(&report),
            stderr: String::new(),
        },
        Err(e) => {
            let code = if e.is_size_guard() { EXIT_GUARD } else { EXIT_INPUT };
            Outcome {
                code,
                stdout: to_canonical(&json!({"error": {"kind": error_kind(&e), "message": e.to_string()}})),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Composition { .. } => "composition",
        Error::Diagram(_) => "diagram",
        Error::EnumerationTooLarge { .. } | Error::ObjectTooLarge { .. } => "size-guard",
        Error::Validation(_) => "validation",
        Error::Incompatible(_) => "incompatible",
        Error::Domain(_) => "domain",
        Error::Strictness(_) => "strictness",
        Error::UnknownSpec(_) => "unknown-spec",
        Error::Syntax { .. } => "syntax",
        Error::Io(_) => "io",
        Error::Internal(_) => "internal",
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FMachine> {
    parse(&read(path)?)
}

fn load_morphism(path: &Path, src: &FMachine, dst: &FMachine) -> Result<MachineMorphism> {
    let f = parse_morphism(&read(path)?, src.carrier(), dst.carrier())?;
    let report = validate_morphism(src, dst, &f)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::Validation(format!("{}: {v}", path.display())));
    }
    MachineMorphism::new(src.clone(), dst.clone(), f)
}

fn write_machine(path: &Option<PathBuf>, m: &FMachine) -> Result<Option<Value>> {
    match path {
        Some(p) => {
            fs::write(p, to_canonical(&machine_value(m)))
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            Ok(None)
        }
        None => Ok(Some(machine_value(m))),
    }
}

fn with_machine(mut report: Value, machine: Option<Value>) -> Value {
    if let Some(m) = machine {
        report["machine"] = m;
    }
    report
}

fn map_value(f: &BaseMorphism) -> Value {
    morphism_value(f)["map"].clone()
}

type Report = (bool, Value);

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Validate { file } => {
            let m = load(&file)?;
            Ok((
                true,
                json!({
                    "valid": true,
                    "flavor": m.flavor().name(),
                    "states": m.carrier().len(),
                    "outputs": m.output().len(),
                }),
            ))
        }
        Command::Run { file, state, word } => {
            let m = load(&file)?;
            let letters: Vec<&str> = if word.is_empty() { Vec::new() } else { word.split(',').collect() };
            // output after each nonempty prefix
            let trace = (1..=letters.len())
                .map(|k| Ok(run_word(&m, &state, &letters[..k])?.1))
                .collect::<Result<Vec<_>>>()?;
            let (final_state, output) = run_word(&m, &state, &letters)?;
            Ok((
                true,
                json!({"output": output, "final_state": final_state, "trace": trace}),
            ))
        }
        Command::Behavior { file, depth } => {
            let m = load(&file)?;
            let t = truncated_behavior(&m, depth)?;
            let levels: Vec<Value> = t
                .levels
                .iter()
                .zip(&t.mates)
                .map(|(n, mate)| json!({"n": n, "mates": map_value(mate)}))
                .collect();
            let r = refine(&m)?;
            Ok((
                true,
                json!({
                    "depth": depth,
                    "levels": levels,
                    "classes": r.stable().named_blocks(),
                    "stabilization_depth": r.stabilization_depth(),
                }),
            ))
        }
        Command::Minimize { file, output } => {
            let m = load(&file)?;
            let min = minimize(&m)?;
            let report = json!({
                "states_before": m.carrier().len(),
                "states_after": min.machine.carrier().len(),
                "quotient": map_value(min.quotient.map()),
            });
            Ok((true, with_machine(report, write_machine(&output, &min.machine)?)))
        }
        Command::Equivalent { file1, file2, states } => {
            let (m1, m2) = (load(&file1)?, load(&file2)?);
            let (s1, s2) = states
                .split_once(',')
                .ok_or_else(|| Error::Validation("--states expects S1,S2".into()))?;
            let eq = equivalent(&m1, &m2, s1, s2)?;
            let mut report = json!({"equivalent": eq, "states": [s1, s2]});
            if !eq {
                report["witness"] = distinguishing_level(&m1, &m2, s1, s2)?;
            }
            Ok((eq, report))
        }
        Command::Product { file1, file2, output } => {
            let p = machine_product(&load(&file1)?, &load(&file2)?)?;
            let report = json!({
                "states": p.apex.carrier().len(),
                "left": map_value(p.left.map()),
                "right": map_value(p.right.map()),
            });
            Ok((true, with_machine(report, write_machine(&output, &p.apex)?)))
        }
        Command::Coproduct { file1, file2, output } => {
            let c = machine_coproduct(&load(&file1)?, &load(&file2)?)?;
            let report = json!({
                "states": c.apex.carrier().len(),
                "inl": map_value(c.inl.map()),
                "inr": map_value(c.inr.map()),
            });
            Ok((true, with_machine(report, write_machine(&output, &c.apex)?)))
        }
        Command::Equalizer { file, mor1, mor2, target, output } => {
            let src = load(&file)?;
            let dst = match &target {
                Some(t) => load(t)?,
                None => src.clone(),
            };
            let h1 = load_morphism(&mor1, &src, &dst)?;
            let h2 = load_morphism(&mor2, &src, &dst)?;
            let eq = machine_equalizer(&h1, &h2)?;
            let report = json!({
                "states": eq.apex.carrier().len(),
                "inclusion": map_value(eq.inclusion.map()),
            });
            Ok((true, with_machine(report, write_machine(&output, &eq.apex)?)))
        }
        Command::CheckMorphism { file1, file2, morphism } => {
            let (src, dst) = (load(&file1)?, load(&file2)?);
            src.check_compatible(&dst)?;
            let f = parse_morphism(&read(&morphism)?, src.carrier(), dst.carrier())?;
            let report = validate_morphism(&src, &dst, &f)?;
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "square": match v.square { Square::Dynamics => "d", Square::Output => "s" },
                        "at": v.at,
                        "expected": v.expected,
                        "actual": v.actual,
                    })
                })
                .collect();
            Ok((report.is_ok(), json!({"morphism": report.is_ok(), "violations": violations})))
        }
        Command::CheckUniversal { kind, files, bound } => check_universal_cmd(kind, &files, bound),
        Command::Decompose { file } => {
            let m = load(&file)?;
            let (alg, leg) = decompose(&m)?;
            let round_trip = recompose(&alg, &leg)? == m;
            let slice = match leg.flavor() {
                Flavor::Mealy => "F/O",
                Flavor::Moore => "K/O",
            };
            Ok((
                round_trip,
                json!({
                    "algebra": {"carrier": alg.carrier().elements(), "structure": map_value(alg.structure())},
                    "leg": {"slice": slice, "map": map_value(leg.map())},
                    "round_trip": round_trip,
                }),
            ))
        }
        Command::CheckAdjunction { file1, file2, bound } => {
            let (x, m) = (load(&file1)?, load(&file2)?);
            let x = functor_b(&x)?;
            let r = homset_bijection_check(&x, &m, bound)?;
            let maps = |v: &[BaseMorphism]| v.iter().map(map_value).collect::<Vec<_>>();
            let mut natural = true;
            for f in crate::oracle::machine_homs(&m, &m)? {
                let g = MachineMorphism::new(m.clone(), m.clone(), f)?;
                natural &= naturality_check(&x, &g, bound)?;
            }
            let ok = r.ok() && natural;
            Ok((
                ok,
                json!({
                    "machine_side": maps(&r.machine_side),
                    "slice_side": maps(&r.slice_side),
                    "forward_round_trip": r.forward_round_trip,
                    "backward_round_trip": r.backward_round_trip,
                    "natural": natural,
                    "bijective": ok,
                }),
            ))
        }
    }
}

/// Least mate level at which the two states differ.
fn distinguishing_level(m1: &FMachine, m2: &FMachine, s1: &str, s2: &str) -> Result<Value> {
    let sum = machine_coproduct(m1, m2)?;
    let (a, b) = (
        sum.inl.map().apply(m1.state(s1)?),
        sum.inr.map().apply(m2.state(s2)?),
    );
    let start = match m1.flavor() {
        Flavor::Mealy => 1,
        Flavor::Moore => 0,
    };
    let p = behavior_partition(&sum.apex)?;
    debug_assert!(!p.same_block(a, b));
    for n in start..=start + sum.apex.carrier().len() {
        let mate = behavior_mate(&sum.apex, n)?;
        if mate.apply(a) != mate.apply(b) {
            return Ok(json!({
                "level": n,
                "mates": [mate.cod().element(mate.apply(a)), mate.cod().element(mate.apply(b))],
            }));
        }
    }
    Err(Error::Internal("inequivalent states with equal mates".into()))
}

fn arity(kind: &str, files: &[PathBuf], n: usize) -> Result<()> {
    if files.len() != n {
        return Err(Error::Validation(format!(
            "check-universal {kind} expects {n} files, got {}",
            files.len()
        )));
    }
    Ok(())
}

fn check_universal_cmd(kind: Kind, files: &[PathBuf], bound: usize) -> Result<Report> {
    let named = |paths: &[PathBuf]| -> Result<Vec<(String, FMachine)>> {
        paths
            .iter()
            .map(|p| Ok((p.display().to_string(), load(p)?)))
            .collect()
    };
    let (cone, inputs) = match kind {
        Kind::Product | Kind::Coproduct => {
            arity("product/coproduct", files, 2)?;
            let ms = named(files)?;
            let cone = if matches!(kind, Kind::Product) {
                machine_product(&ms[0].1, &ms[1].1)?.cone()
            } else {
                machine_coproduct(&ms[0].1, &ms[1].1)?.cone()
            };
            (cone, ms)
        }
        Kind::Equalizer | Kind::Coequalizer => {
            arity("equalizer/coequalizer", files, 4)?;
            let ms = named(&files[..2])?;
            let h1 = load_morphism(&files[2], &ms[0].1, &ms[1].1)?;
            let h2 = load_morphism(&files[3], &ms[0].1, &ms[1].1)?;
            let cone = if matches!(kind, Kind::Equalizer) {
                machine_equalizer(&h1, &h2)?.cone(&h1, &h2)
            } else {
                machine_coequalizer(&h1, &h2)?.cone(&h1, &h2)
            };
            (cone, ms)
        }
        Kind::Pullback => {
            arity("pullback", files, 5)?;
            let ms = named(&files[..3])?;
            let h1 = load_morphism(&files[3], &ms[0].1, &ms[2].1)?;
            let h2 = load_morphism(&files[4], &ms[1].1, &ms[2].1)?;
            (machine_pullback(&h1, &h2)?.cone(&h1, &h2), ms)
        }
        Kind::Initial => {
            arity("initial", files, 1)?;
            let ms = named(files)?;
            let t = &ms[0].1;
            let apex = machine_initial(t.adjunction(), t.output(), t.flavor())?;
            (UniversalCone::Initial { apex }, ms)
        }
    };
    let mut pool = inputs;
    pool.extend(
        fixtures::all()
            .into_iter()
            .map(|(n, m)| (format!("fixture:{n}"), m)),
    );
    let competitors: Vec<(String, FMachine)> = competitor_set(cone.apex(), &pool)?
        .into_iter()
        .filter(|(_, m)| m.carrier().len() <= bound)
        .collect();
    let report = check_universal(&cone, &competitors, bound)?;
    Ok((report.ok(), cone_report_value(&report)))
}

pub fn cone_report_value(r: &ConeReport) -> Value {
    let counts: serde_json::Map<String, Value> = r
        .counts
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({"competitor": f.competitor, "cone": f.cone, "mediating": f.count}))
        .collect();
    json!({
        "kind": r.kind.name(),
        "apex_states": r.apex_states,
        "legs_valid": r.legs_valid,
        "competitors": r.competitors,
        "cones_checked": r.cones_checked,
        "mediating_counts": counts,
        "failures": failures,
        "universal": r.ok(),
    })
}
