//! The shipped fixture machines. The JSON files under `fixtures/` are their
//! canonical serializations.
//!
//! - `parity`: Mealy, `I = O = {0,1}`, `d(e,i) = s(e,i) = e ⊕ i`.
//! - `constant_moore`: one state `e`, output `0`.
//! - `collapsing`: Mealy, states `a, b`, `d(x,i) = b`, `s(x,i) = 0`.
//! - `collapsing_moore`: the Moore counterpart of `collapsing`, `s(x) = 0`.
//! - `parity_moore`: Moore, `d(e,i) = e ⊕ i`, `s(p_k) = k`.
//! - `base_change`: Mealy over `f_! f* ⊣ f_* f*` for `f : 1 → Z/2Z`.

use std::collections::HashMap;

use crate::adjunction::Adjunction;
use crate::base::{BaseMorphism, BaseObject, FiniteMonoid, MonoidHom, Obj};
use crate::machine::{mk_classical, FMachine, Flavor, OutputTable};

pub fn bits() -> Obj {
    BaseObject::set_of(&["0", "1"])
}

fn classical(
    states: &[&str],
    d: impl Fn(usize, usize) -> usize,
    s: Option<&dyn Fn(usize, usize) -> usize>,
    s_state: Option<&dyn Fn(usize) -> usize>,
) -> FMachine {
    let io = bits();
    let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
    let mut dt = HashMap::new();
    let mut st = HashMap::new();
    for (e, en) in states.iter().enumerate() {
        for i in 0..2 {
            dt.insert((en.clone(), i.to_string()), states[d(e, i)].clone());
            if let Some(s) = s {
                st.insert((en.clone(), i.to_string()), s(e, i).to_string());
            }
        }
    }
    let out = match s_state {
        Some(f) => OutputTable::PerState(
            states
                .iter()
                .enumerate()
                .map(|(e, en)| (en.clone(), f(e).to_string()))
                .collect(),
        ),
        None => OutputTable::PerTransition(st),
    };
    mk_classical(&io, &io, &states, &dt, &out).expect("fixture tables are total")
}

pub fn parity() -> FMachine {
    classical(&["p0", "p1"], |e, i| e ^ i, Some(&|e, i| e ^ i), None)
}

pub fn constant_moore() -> FMachine {
    classical(&["e"], |_, _| 0, None, Some(&|_| 0))
}

pub fn collapsing() -> FMachine {
    classical(&["a", "b"], |_, _| 1, Some(&|_, _| 0), None)
}

pub fn collapsing_moore() -> FMachine {
    classical(&["a", "b"], |_, _| 1, None, Some(&|_| 0))
}

pub fn parity_moore() -> FMachine {
    classical(&["p0", "p1"], |e, i| e ^ i, None, Some(&|e| e))
}

pub fn z2() -> std::sync::Arc<FiniteMonoid> {
    FiniteMonoid::cyclic(2)
}

/// `f : 1 → Z/2Z`.
pub fn trivial_into_z2() -> MonoidHom {
    MonoidHom::from_trivial(z2())
}

/// The regular Z/2Z-set on the given names (`1` swaps them).
pub fn regular_z2(a: &str, b: &str) -> Obj {
    BaseObject::mset(vec![a.into(), b.into()], z2(), vec![0, 1, 1, 0]).expect("regular action")
}

/// Carrier `{x, y}` and output `{o0, o1}` regular; `d[n,e] = n·e` and
/// `s[0,x] = o0`, `s[0,y] = o1`, extended equivariantly.
pub fn base_change() -> FMachine {
    let adj = Adjunction::BaseChangeComonadic(trivial_into_z2());
    let carrier = regular_z2("x", "y");
    let output = regular_z2("o0", "o1");
    let fe = adj.left_object(&carrier).expect("F E");
    let d = BaseMorphism::from_names(fe.clone(), carrier.clone(), |k| match k {
        "[0,x]" => Some("x"),
        "[0,y]" => Some("y"),
        "[1,x]" => Some("y"),
        "[1,y]" => Some("x"),
        _ => None,
    })
    .expect("d is equivariant");
    let s = BaseMorphism::from_names(fe, output.clone(), |k| match k {
        "[0,x]" | "[1,y]" => Some("o0"),
        "[0,y]" | "[1,x]" => Some("o1"),
        _ => None,
    })
    .expect("s is equivariant");
    FMachine::new(Flavor::Mealy, adj, carrier, output, d, s).expect("base-change fixture")
}

/// Every shipped fixture with its file stem.
pub fn all() -> Vec<(&'static str, FMachine)> {
    vec![
        ("parity", parity()),
        ("constant_moore", constant_moore()),
        ("fix3", collapsing()),
        ("fix3_moore", collapsing_moore()),
        ("parity_moore", parity_moore()),
        ("fix4", base_change()),
    ]
}
