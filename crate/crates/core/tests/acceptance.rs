//! Acceptance criteria, one line of output per criterion.
//!
//! Run with `cargo test -p fmachina --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::machines::{letters, random_classical, word_equivalent};
use fmachina::adjunction::Adjunction;
use fmachina::algebra::{
    algebra_morphism_valid, decompose, functor_b, homset_bijection_check, naturality_check,
    recompose, slice_morphism_valid,
};
use fmachina::base::{
    all_actions, compose, enumerate_hom, BaseMorphism, BaseObject, FiniteMonoid, MonoidHom, Obj,
};
use fmachina::behavior::{
    behavior_mate, equivalent, mate_on_words, minimize, refine,
    terminal_truncation,
};
use fmachina::document::serialize;
use fmachina::fixtures;
use fmachina::limits::{
    level_pullback, machine_coequalizer, machine_coproduct, machine_equalizer, machine_initial,
    machine_product, machine_pullback,
};
use fmachina::machine::{is_morphism, run_word, FMachine, Flavor, MachineMorphism};
use fmachina::oracle::{check_universal, competitor_set, machine_homs, UniversalCone, DEFAULT_BOUND};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: fmachina::Error) -> String {
    e.to_string()
}

fn plain_sets(max: usize) -> Vec<Obj> {
    (0..=max)
        .map(|n| BaseObject::set((0..n).map(|i| format!("x{i}")).collect()).unwrap())
        .collect()
}

fn z2_sets(max: usize) -> Vec<Obj> {
    let z2 = FiniteMonoid::cyclic(2);
    (0..=max)
        .flat_map(|n| all_actions(&z2, &(0..n).map(|i| format!("x{i}")).collect::<Vec<_>>()))
        .collect()
}

fn named_fixtures() -> Vec<(String, FMachine)> {
    fixtures::all()
        .into_iter()
        .map(|(n, m)| (n.to_string(), m))
        .collect()
}

fn start_level(m: &FMachine) -> usize {
    match m.flavor() {
        Flavor::Mealy => 1,
        Flavor::Moore => 0,
    }
}

/// Fixtures plus seeded random classical machines with at most `max_states` states.
fn machine_pool(seed: u64, per_flavor: usize, max_states: usize) -> Vec<FMachine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<FMachine> = fixtures::all().into_iter().map(|(_, m)| m).collect();
    for flavor in [Flavor::Mealy, Flavor::Moore] {
        for _ in 0..per_flavor {
            let states = rng.random_range(1..=max_states);
            let m = random_classical(&mut rng, flavor, states, 2, 2);
            pool.push(minimize(&m).unwrap().machine);
            pool.push(m);
        }
    }
    pool
}

fn c1_category_laws() -> Outcome {
    let mut checks = 0u64;
    for objects in [plain_sets(3), z2_sets(3)] {
        let homs: Vec<Vec<Vec<BaseMorphism>>> = objects
            .iter()
            .map(|x| objects.iter().map(|y| enumerate_hom(x, y).unwrap()).collect())
            .collect();
        let n = objects.len();
        for a in 0..n {
            let id_a = BaseMorphism::identity(&objects[a]);
            for b in 0..n {
                let id_b = BaseMorphism::identity(&objects[b]);
                for f in &homs[a][b] {
                    checks += 2;
                    ensure(compose(&id_b, f).unwrap() == *f && compose(f, &id_a).unwrap() == *f, || {
                        format!("identity law fails for {f}")
                    })?;
                }
            }
        }
        // associativity over all composable triples
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let gf: Vec<Vec<BaseMorphism>> = homs[b][c]
                        .iter()
                        .map(|g| homs[a][b].iter().map(|f| compose(g, f).unwrap()).collect())
                        .collect();
                    for d in 0..n {
                        for h in &homs[c][d] {
                            let hg: Vec<BaseMorphism> =
                                homs[b][c].iter().map(|g| compose(h, g).unwrap()).collect();
                            for (gi, hgi) in hg.iter().enumerate() {
                                for (fi, f) in homs[a][b].iter().enumerate() {
                                    checks += 1;
                                    let left = compose(h, &gf[gi][fi]).unwrap();
                                    let right = compose(hgi, f).unwrap();
                                    ensure(left == right, || "associativity fails".to_string())?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let pool = machine_pool(11, 6, 3);
    let mut machine_checks = 0u64;
    for m1 in &pool {
        let id = MachineMorphism::identity(m1);
        ensure(is_morphism(m1, m1, id.map()).unwrap(), || "identity is not a morphism".into())?;
        for m2 in &pool {
            if m1.check_compatible(m2).is_err() {
                continue;
            }
            let fs = machine_homs(m1, m2).unwrap();
            for f in &fs {
                let f = MachineMorphism::new(m1.clone(), m2.clone(), f.clone()).map_err(e2s)?;
                let left = MachineMorphism::identity(m1).then(&f).map_err(e2s)?;
                let right = f.then(&MachineMorphism::identity(m2)).map_err(e2s)?;
                machine_checks += 2;
                ensure(left.map() == f.map() && right.map() == f.map(), || {
                    "machine identity law fails".into()
                })?;
            }
            for m3 in &pool {
                if m2.check_compatible(m3).is_err() {
                    continue;
                }
                let gs = machine_homs(m2, m3).unwrap();
                for f in &fs {
                    for g in &gs {
                        machine_checks += 1;
                        let gf = compose(g, f).unwrap();
                        ensure(is_morphism(m1, m3, &gf).unwrap(), || {
                            "composite of machine morphisms is not a morphism".into()
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{checks} base-law checks, {machine_checks} machine-law checks over {} machines, 0 violations",
        pool.len()
    ))
}

fn c2_adjunctions() -> Outcome {
    let z2 = FiniteMonoid::cyclic(2);
    let cases: Vec<(&str, Adjunction, Vec<Obj>)> = vec![
        ("identity/finset", Adjunction::Identity, plain_sets(3)),
        ("identity/Z2", Adjunction::Identity, z2_sets(3)),
        ("product-exponential |I|=0", Adjunction::ProductExponential(letters(0)), plain_sets(3)),
        ("product-exponential |I|=1", Adjunction::ProductExponential(letters(1)), plain_sets(3)),
        ("product-exponential |I|=2", Adjunction::ProductExponential(letters(2)), plain_sets(3)),
        (
            "composite",
            Adjunction::compose(
                &Adjunction::ProductExponential(letters(2)),
                &Adjunction::ProductExponential(BaseObject::set_of(&["a"])),
            )
            .unwrap(),
            plain_sets(3),
        ),
        (
            "base-change-comonadic 1→Z2",
            Adjunction::BaseChangeComonadic(MonoidHom::from_trivial(z2)),
            z2_sets(3),
        ),
    ];
    let mut checks = 0u64;
    for (name, adj, objects) in &cases {
        for x in objects {
            let fx = adj.left_object(x).map_err(e2s)?;
            // F η_X followed by ε_{FX} is the identity on FX
            let eta = adj.unit(x).map_err(e2s)?;
            let tri1 = compose(&adj.counit(&fx).map_err(e2s)?, &adj.left().morphism(&eta).map_err(e2s)?)
                .map_err(e2s)?;
            checks += 1;
            ensure(tri1 == BaseMorphism::identity(&fx), || format!("{name}: εF ∘ Fη ≠ id at {x}"))?;
            let rx = adj.right_object(x).map_err(e2s)?;
            let tri2 = compose(&adj.right().morphism(&adj.counit(x).map_err(e2s)?).map_err(e2s)?, &adj.unit(&rx).map_err(e2s)?)
                .map_err(e2s)?;
            checks += 1;
            ensure(tri2 == BaseMorphism::identity(&rx), || format!("{name}: Rε ∘ ηR ≠ id at {x}"))?;
            for y in objects {
                let ry = adj.right_object(y).map_err(e2s)?;
                for g in enumerate_hom(&fx, y).map_err(e2s)? {
                    checks += 1;
                    let back = adj.transpose_inv(y, &adj.transpose(x, &g).map_err(e2s)?).map_err(e2s)?;
                    ensure(back == g, || format!("{name}: transpose round trip fails for {g}"))?;
                }
                for h in enumerate_hom(x, &ry).map_err(e2s)? {
                    checks += 1;
                    let back = adj.transpose(x, &adj.transpose_inv(y, &h).map_err(e2s)?).map_err(e2s)?;
                    ensure(back == h, || format!("{name}: inverse transpose round trip fails for {h}"))?;
                }
            }
        }
    }
    Ok(format!("{} adjunctions, {checks} checks, 0 violations", cases.len()))
}

fn c3_word_coherence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut machines = vec![fixtures::parity()];
    for _ in 0..10 {
        let flavor = if rng.random_bool(0.5) { Flavor::Mealy } else { Flavor::Moore };
        let (states, inputs, outputs) =
            (rng.random_range(1..=3), rng.random_range(1..=2), rng.random_range(1..=2));
        machines.push(random_classical(&mut rng, flavor, states, inputs, outputs));
    }
    let mut words_checked = 0u64;
    for m in &machines {
        let input = m.classical_input().unwrap();
        for e in 0..m.carrier().len() {
            let state = m.carrier().element(e);
            for n in start_level(m)..=3 {
                let table = mate_on_words(m, n, e).map_err(e2s)?;
                let expected = common::machines::words(input, n);
                ensure(table.len() == expected.len(), || format!("n={n}: wrong word count"))?;
                for ((word, out), w) in table.iter().zip(&expected) {
                    ensure(word == w, || format!("n={n}: word order differs"))?;
                    let refs: Vec<&str> = word.iter().map(String::as_str).collect();
                    let (_, run) = run_word(m, state, &refs).map_err(e2s)?;
                    words_checked += 1;
                    ensure(&run == out, || {
                        format!("state {state}, word {word:?}: mate gives {out}, run gives {run}")
                    })?;
                }
            }
        }
    }
    Ok(format!("{} machines, {words_checked} words, exact agreement", machines.len()))
}

fn c4_minimization() -> Outcome {
    let fix3 = minimize(&fixtures::collapsing()).map_err(e2s)?;
    ensure(fix3.machine.carrier().len() == 1, || "collapsing fixture does not reach 1 state".into())?;
    let parity = minimize(&fixtures::parity()).map_err(e2s)?;
    ensure(parity.machine.carrier().len() == 2, || "parity is not minimal".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut max_rounds = 0;
    for k in 0..20 {
        let flavor = if k % 2 == 0 { Flavor::Mealy } else { Flavor::Moore };
        let states = rng.random_range(1..=5);
        let m = random_classical(&mut rng, flavor, states, 2, 2);
        let r = refine(&m).map_err(e2s)?;
        max_rounds = max_rounds.max(r.rounds());
        ensure(r.rounds() <= states, || format!("machine {k}: {} rounds for {states} states", r.rounds()))?;
        // independent oracle: exhaustive word simulation
        let p = r.stable();
        for a in 0..states {
            for b in 0..states {
                let (ea, eb) = (m.carrier().element(a), m.carrier().element(b));
                ensure(p.same_block(a, b) == word_equivalent(&m, ea, &m, eb), || {
                    format!("machine {k}: refinement disagrees with words on ({ea},{eb})")
                })?;
            }
        }
        let once = minimize(&m).map_err(e2s)?;
        let twice = minimize(&once.machine).map_err(e2s)?;
        ensure(twice.machine == once.machine, || format!("machine {k}: minimize is not idempotent"))?;
    }
    Ok(format!("fixtures 2→1 and 2→2; 20 random machines, max {max_rounds} rounds"))
}

fn universal_ok(label: &str, cone: &UniversalCone, fixtures: &[(String, FMachine)]) -> Result<usize, String> {
    let comps: Vec<(String, FMachine)> = competitor_set(cone.apex(), fixtures)
        .map_err(e2s)?
        .into_iter()
        .filter(|(_, m)| m.carrier().len() <= DEFAULT_BOUND)
        .collect();
    let r = check_universal(cone, &comps, DEFAULT_BOUND).map_err(e2s)?;
    ensure(r.ok() && r.counts.keys().all(|&k| k == 1) && r.cones_checked > 0, || {
        format!("{label}: {r:?}")
    })?;
    Ok(r.cones_checked)
}

fn c5_products() -> Outcome {
    let parity = fixtures::parity();
    let prod = machine_product(&parity, &parity).map_err(e2s)?;
    let oracle = (0..2)
        .flat_map(|a| (0..2).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            word_equivalent(&parity, parity.carrier().element(a), &parity, parity.carrier().element(b))
        })
        .count();
    ensure(prod.apex.carrier().len() == 2 && oracle == 2, || {
        format!("product has {} states, oracle {oracle}", prod.apex.carrier().len())
    })?;
    let sum = machine_coproduct(&parity, &parity).map_err(e2s)?;
    ensure(sum.apex.carrier().len() == 4, || "coproduct does not have 4 states".into())?;

    let fx = named_fixtures();
    let fix3 = fixtures::collapsing();
    let id = MachineMorphism::identity(&fix3);
    let collapse = BaseMorphism::new(fix3.carrier().clone(), fix3.carrier().clone(), vec![1, 1])
        .map_err(e2s)?;
    let collapse = MachineMorphism::new(fix3.clone(), fix3.clone(), collapse).map_err(e2s)?;
    let fm = fixtures::collapsing_moore();
    let cm = fixtures::constant_moore();
    let to_const = MachineMorphism::new(
        fm.clone(),
        cm.clone(),
        BaseMorphism::new(fm.carrier().clone(), cm.carrier().clone(), vec![0, 0]).map_err(e2s)?,
    )
    .map_err(e2s)?;
    let mut cones = 0;
    cones += universal_ok("product", &prod.cone(), &fx)?;
    cones += universal_ok("product fix4", &machine_product(&fixtures::base_change(), &fixtures::base_change()).map_err(e2s)?.cone(), &fx)?;
    cones += universal_ok("coproduct", &sum.cone(), &fx)?;
    cones += universal_ok("coproduct fix3", &machine_coproduct(&fix3, &fix3).map_err(e2s)?.cone(), &fx)?;
    cones += universal_ok("equalizer", &machine_equalizer(&id, &collapse).map_err(e2s)?.cone(&id, &collapse), &fx)?;
    cones += universal_ok("coequalizer", &machine_coequalizer(&id, &collapse).map_err(e2s)?.cone(&id, &collapse), &fx)?;
    cones += universal_ok("pullback", &machine_pullback(&to_const, &to_const).map_err(e2s)?.cone(&to_const, &to_const), &fx)?;
    for (name, m) in &fx {
        let apex = machine_initial(m.adjunction(), m.output(), m.flavor()).map_err(e2s)?;
        cones += universal_ok(&format!("initial/{name}"), &UniversalCone::Initial { apex }, &fx)?;
    }

    let mut pairs = 0;
    for (n1, m1) in &fx {
        for (n2, m2) in &fx {
            if m1.check_compatible(m2).is_err() {
                continue;
            }
            pairs += 1;
            let n = m1.carrier().len() * m2.carrier().len();
            let pn = level_pullback(m1, m2, n.max(start_level(m1))).map_err(e2s)?;
            let p = machine_product(m1, m2).map_err(e2s)?;
            ensure(&pn == p.apex.carrier(), || format!("P_{n} ≠ carrier(P) for {n1} × {n2}"))?;
        }
    }
    Ok(format!("|parity × parity| = 2, |parity + parity| = 4, {cones} cones each with exactly 1 mediator, P_n stable on {pairs} pairs"))
}

fn c6_behavior_invariance() -> Outcome {
    const MAX_LEVEL: usize = 4;
    let pool = machine_pool(6, 5, 3);
    // mates per machine, up to the first level that trips the size guard
    let mut mates: Vec<Vec<BaseMorphism>> = Vec::new();
    for m in &pool {
        let mut levels = Vec::new();
        for n in start_level(m)..=MAX_LEVEL {
            match behavior_mate(m, n) {
                Ok(mate) => levels.push(mate),
                Err(e) if e.is_size_guard() => break,
                Err(e) => return Err(e.to_string()),
            }
        }
        mates.push(levels);
    }
    let mut morphisms = 0;
    let mut mate_checks = 0;
    for (i1, m1) in pool.iter().enumerate() {
        for (i2, m2) in pool.iter().enumerate() {
            if m1.check_compatible(m2).is_err() {
                continue;
            }
            let fs = machine_homs(m1, m2).map_err(e2s)?;
            for (k, (a, b)) in mates[i1].iter().zip(&mates[i2]).enumerate() {
                for f in &fs {
                    mate_checks += 1;
                    ensure(compose(b, f).map_err(e2s)? == *a, || {
                        format!("mates do not commute at n = {}", start_level(m1) + k)
                    })?;
                }
            }
            for f in &fs {
                morphisms += 1;
                for e in 0..m1.carrier().len() {
                    let (x, y) = (m1.carrier().element(e), m2.carrier().element(f.apply(e)));
                    ensure(equivalent(m1, m2, x, y).map_err(e2s)?, || format!("{x} and {y} differ in behavior"))?;
                }
            }
        }
    }
    Ok(format!("{morphisms} morphisms over {} machines, {mate_checks} mate squares, 0 violations", pool.len()))
}

fn c7_pullback_decomposition() -> Outcome {
    let pool = machine_pool(7, 8, 3);
    for m in &pool {
        let (a, l) = decompose(m).map_err(e2s)?;
        let back = recompose(&a, &l).map_err(e2s)?;
        ensure(serialize(&back) == serialize(m), || "round trip is not byte-exact".into())?;
    }
    let (mut checked, mut morphisms) = (0u64, 0u64);
    for m1 in &pool {
        let (a1, l1) = decompose(m1).map_err(e2s)?;
        for m2 in &pool {
            if m1.check_compatible(m2).is_err() {
                continue;
            }
            let (a2, l2) = decompose(m2).map_err(e2s)?;
            for f in enumerate_hom(m1.carrier(), m2.carrier()).map_err(e2s)? {
                checked += 1;
                let machine = is_morphism(m1, m2, &f).map_err(e2s)?;
                let pair = algebra_morphism_valid(&f, &a1, &a2).map_err(e2s)?
                    && slice_morphism_valid(&f, &l1, &l2).map_err(e2s)?;
                morphisms += machine as u64;
                ensure(machine == pair, || format!("{f}: machine {machine}, algebra+slice {pair}"))?;
            }
        }
    }
    Ok(format!("{} round trips, {checked} maps ({morphisms} morphisms), 0 disagreements", pool.len()))
}

fn c8_behavior_adjunction() -> Outcome {
    let moore: Vec<FMachine> = fixtures::all()
        .into_iter()
        .map(|(_, m)| m)
        .filter(|m| m.flavor() == Flavor::Moore && m.carrier().len() <= 3)
        .collect();
    let (mut pairs, mut squares) = (0, 0);
    for x in &moore {
        let bx = functor_b(x).map_err(e2s)?;
        for m in &moore {
            if x.check_compatible(m).is_err() {
                continue;
            }
            pairs += 1;
            let r = homset_bijection_check(&bx, m, 3).map_err(e2s)?;
            ensure(r.ok(), || format!("bijection fails: {r:?}"))?;
            for m2 in &moore {
                if m.check_compatible(m2).is_err() {
                    continue;
                }
                for g in machine_homs(m, m2).map_err(e2s)? {
                    let g = MachineMorphism::new(m.clone(), m2.clone(), g).map_err(e2s)?;
                    squares += 1;
                    ensure(naturality_check(&bx, &g, 3).map_err(e2s)?, || "naturality square fails".into())?;
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs, {squares} naturality squares"))
}

fn c9_index_shift() -> Outcome {
    let z2 = FiniteMonoid::cyclic(2);
    let cases = [
        (Adjunction::ProductExponential(letters(2)), letters(2)),
        (
            Adjunction::BaseChangeComonadic(MonoidHom::from_trivial(z2.clone())),
            fixtures::base_change().output().clone(),
        ),
    ];
    for (adj, out) in &cases {
        for depth in 1..=2 {
            let moore = terminal_truncation(adj, out, depth, Flavor::Moore).map_err(e2s)?;
            let mealy = terminal_truncation(adj, out, depth, Flavor::Mealy).map_err(e2s)?;
            ensure(moore.levels == (0..=depth).collect::<Vec<_>>(), || "Moore levels".into())?;
            ensure(mealy.levels == (1..=depth).collect::<Vec<_>>(), || "Mealy levels".into())?;
            ensure(Arc::ptr_eq(&moore.factors[0], out) || moore.factors[0] == *out, || {
                "Moore truncation lacks the R⁰O factor".into()
            })?;
            ensure(!mealy.levels.contains(&0), || "Mealy truncation has a level-0 factor".into())?;
            ensure(moore.factors[1..] == mealy.factors[..], || "shared factors differ".into())?;
            ensure(moore.apex.len() == out.len() * mealy.apex.len(), || "apex sizes".into())?;
        }
    }
    Ok("Moore levels 0..=N include O; Mealy levels 1..=N".into())
}

fn c10_cli_golden() -> Outcome {
    let failures: Vec<String> = common::CASES.iter().filter_map(common::check_case).collect();
    let subcommands: BTreeSet<&str> = common::CASES.iter().map(|c| c.args[0]).collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} cases over {} subcommands, byte-exact", common::CASES.len(), subcommands.len()))
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "category laws", limit: Duration::from_secs(10), run: c1_category_laws },
    Criterion { id: 2, title: "adjunction suite", limit: Duration::from_secs(10), run: c2_adjunctions },
    Criterion { id: 3, title: "skip-map/word coherence", limit: Duration::from_secs(10), run: c3_word_coherence },
    Criterion { id: 4, title: "minimization", limit: Duration::from_secs(10), run: c4_minimization },
    Criterion { id: 5, title: "products and universal properties", limit: Duration::from_secs(60), run: c5_products },
    Criterion { id: 6, title: "behavior invariance", limit: Duration::from_secs(30), run: c6_behavior_invariance },
    Criterion { id: 7, title: "pullback decomposition", limit: Duration::from_secs(10), run: c7_pullback_decomposition },
    Criterion { id: 8, title: "B ⊣ L hom-set bijection", limit: Duration::from_secs(30), run: c8_behavior_adjunction },
    Criterion { id: 9, title: "index shift", limit: Duration::from_secs(1), run: c9_index_shift },
    Criterion { id: 10, title: "CLI golden reports", limit: Duration::from_secs(10), run: c10_cli_golden },
];

fn main() -> ExitCode {
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in CRITERIA.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.limit => Err(format!("took {elapsed:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag} [{elapsed:.2?} / {:?}] {}: {detail}", c.id, c.limit, c.title);
        failed += outcome.is_err() as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
