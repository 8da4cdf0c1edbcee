//! The JSON machine document.
//!
//! ```json
//! {
//!   "adjunction": {"kind": "product-exponential", "input": ["0", "1"]},
//!   "base": {"kind": "finset"},
//!   "machine": {"flavor": "mealy", "states": ["p0", "p1"], "d": {...}, "s": {...}},
//!   "output": ["0", "1"]
//! }
//! ```
//!
//! Tables are keyed by element names of their domains (`FE` or `E`). Over
//! M-sets the document also carries `"actions": {"states": A, "output": A}`,
//! where `A` maps each monoid element to a full element-to-image table.
//! Output is pretty-printed with sorted keys and a trailing newline, so
//! serialization of a parsed canonical document reproduces it byte for byte.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::adjunction::Adjunction;
use crate::base::{Base, BaseMorphism, BaseObject, FiniteMonoid, MonoidHom, Obj};
use crate::error::{Error, Result};
use crate::machine::{FMachine, Flavor};

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn to_canonical(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("values always serialize");
    out.push('\n');
    out
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

fn field<'a>(v: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| invalid(format!("{ctx} must be an object")))?
        .get(key)
        .ok_or_else(|| invalid(format!("{ctx} is missing \"{key}\"")))
}

fn string<'a>(v: &'a Value, ctx: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| invalid(format!("{ctx} must be a string")))
}

fn strings(v: &Value, ctx: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| invalid(format!("{ctx} must be an array of strings")))?
        .iter()
        .map(|x| string(x, ctx).map(str::to_string))
        .collect()
}

fn object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| invalid(format!("{ctx} must be an object")))
}

fn reject_unknown_keys(v: &Value, allowed: &[&str], ctx: &str) -> Result<()> {
    for key in object(v, ctx)?.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(invalid(format!("{ctx} has unexpected key \"{key}\"")));
        }
    }
    Ok(())
}

/// A total name table `dom → cod`; every domain element must appear exactly once.
fn table(v: &Value, dom: &Obj, cod: &Obj, ctx: &str) -> Result<Vec<usize>> {
    let map = object(v, ctx)?;
    for key in map.keys() {
        if dom.index_of(key).is_none() {
            return Err(invalid(format!("{ctx} has an entry for unknown element \"{key}\"")));
        }
    }
    dom.elements()
        .iter()
        .map(|x| {
            let y = map
                .get(x)
                .ok_or_else(|| invalid(format!("{ctx} is missing the entry for \"{x}\"")))?;
            let y = string(y, &format!("{ctx}[\"{x}\"]"))?;
            cod.index_of(y)
                .ok_or_else(|| invalid(format!("{ctx}[\"{x}\"] = \"{y}\" is not an element of the target")))
        })
        .collect()
}

fn table_value(f: &BaseMorphism) -> Value {
    let map: BTreeMap<&str, &str> = (0..f.dom().len())
        .map(|x| (f.dom().element(x), f.cod().element(f.apply(x))))
        .collect();
    json!(map)
}

fn parse_monoid(v: &Value, ctx: &str) -> Result<Arc<FiniteMonoid>> {
    reject_unknown_keys(v, &["elements", "unit", "mult"], ctx)?;
    let elements = strings(field(v, "elements", ctx)?, &format!("{ctx}.elements"))?;
    let unit = string(field(v, "unit", ctx)?, &format!("{ctx}.unit"))?;
    let rows = field(v, "mult", ctx)?
        .as_array()
        .ok_or_else(|| invalid(format!("{ctx}.mult must be an array of rows")))?;
    let position = |name: &str| {
        elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| invalid(format!("{ctx}.mult mentions unknown element \"{name}\"")))
    };
    let mut mult = Vec::with_capacity(rows.len());
    for row in rows {
        let row = strings(row, &format!("{ctx}.mult row"))?;
        mult.push(row.iter().map(|x| position(x)).collect::<Result<Vec<_>>>()?);
    }
    FiniteMonoid::new(elements, unit, mult)
}

fn monoid_value(m: &FiniteMonoid) -> Value {
    let mult: Vec<Vec<&str>> = (0..m.len())
        .map(|a| (0..m.len()).map(|b| m.element(m.mul(a, b))).collect())
        .collect();
    json!({"elements": m.elements(), "unit": m.element(m.unit()), "mult": mult})
}

fn parse_hom(v: &Value, ctx: &str) -> Result<MonoidHom> {
    reject_unknown_keys(v, &["domain", "codomain", "map"], ctx)?;
    let dom = parse_monoid(field(v, "domain", ctx)?, &format!("{ctx}.domain"))?;
    let cod = parse_monoid(field(v, "codomain", ctx)?, &format!("{ctx}.codomain"))?;
    let map = object(field(v, "map", ctx)?, &format!("{ctx}.map"))?;
    let mut t = Vec::with_capacity(dom.len());
    for a in dom.elements() {
        let b = map
            .get(a)
            .ok_or_else(|| invalid(format!("{ctx}.map is missing the entry for \"{a}\"")))?;
        let b = string(b, &format!("{ctx}.map[\"{a}\"]"))?;
        t.push(
            cod.index_of(b)
                .ok_or_else(|| invalid(format!("{ctx}.map[\"{a}\"] = \"{b}\" is not in the codomain")))?,
        );
    }
    if map.len() != dom.len() {
        return Err(invalid(format!("{ctx}.map has entries outside the domain")));
    }
    MonoidHom::new(dom, cod, t)
}

fn hom_value(f: &MonoidHom) -> Value {
    let map: BTreeMap<&str, &str> = (0..f.dom().len())
        .map(|a| (f.dom().element(a), f.cod().element(f.apply(a))))
        .collect();
    json!({"domain": monoid_value(f.dom()), "codomain": monoid_value(f.cod()), "map": map})
}

pub fn parse_adjunction(v: &Value) -> Result<Adjunction> {
    parse_adjunction_at(v, "adjunction")
}

fn parse_adjunction_at(v: &Value, ctx: &str) -> Result<Adjunction> {
    let kind = string(field(v, "kind", ctx)?, &format!("{ctx}.kind"))?;
    let hom = || -> Result<MonoidHom> {
        reject_unknown_keys(v, &["kind", "hom"], ctx)?;
        parse_hom(field(v, "hom", ctx)?, &format!("{ctx}.hom"))
    };
    Ok(match kind {
        "identity" => {
            reject_unknown_keys(v, &["kind"], ctx)?;
            Adjunction::Identity
        }
        "product-exponential" => {
            reject_unknown_keys(v, &["kind", "input"], ctx)?;
            let input = strings(field(v, "input", ctx)?, &format!("{ctx}.input"))?;
            Adjunction::ProductExponential(BaseObject::set(input)?)
        }
        "induction" => Adjunction::Induction(hom()?),
        "coinduction" => Adjunction::Coinduction(hom()?),
        "base-change-comonadic" => Adjunction::BaseChangeComonadic(hom()?),
        "base-change-monadic" => Adjunction::BaseChangeMonadic(hom()?),
        "composite" => {
            reject_unknown_keys(v, &["kind", "parts"], ctx)?;
            let parts = field(v, "parts", ctx)?
                .as_array()
                .ok_or_else(|| invalid(format!("{ctx}.parts must be an array")))?;
            let parts = parts
                .iter()
                .enumerate()
                .map(|(k, p)| parse_adjunction_at(p, &format!("{ctx}.parts[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            // base compatibility of consecutive parts
            parts
                .iter()
                .try_fold(Adjunction::Identity, |acc, p| Adjunction::compose(p, &acc))?;
            Adjunction::Composite(parts)
        }
        other => return Err(Error::UnknownSpec(format!("{ctx}.kind = \"{other}\""))),
    })
}

pub fn adjunction_value(a: &Adjunction) -> Value {
    match a {
        Adjunction::Identity => json!({"kind": "identity"}),
        Adjunction::ProductExponential(i) => json!({"kind": "product-exponential", "input": i.elements()}),
        Adjunction::Induction(f) => json!({"kind": "induction", "hom": hom_value(f)}),
        Adjunction::Coinduction(f) => json!({"kind": "coinduction", "hom": hom_value(f)}),
        Adjunction::BaseChangeComonadic(f) => {
            json!({"kind": "base-change-comonadic", "hom": hom_value(f)})
        }
        Adjunction::BaseChangeMonadic(f) => json!({"kind": "base-change-monadic", "hom": hom_value(f)}),
        Adjunction::Composite(parts) => {
            json!({"kind": "composite", "parts": parts.iter().map(adjunction_value).collect::<Vec<_>>()})
        }
    }
}

fn parse_base(v: &Value) -> Result<Base> {
    let kind = string(field(v, "kind", "base")?, "base.kind")?;
    match kind {
        "finset" => {
            reject_unknown_keys(v, &["kind"], "base")?;
            Ok(Base::Sets)
        }
        "mset" => {
            reject_unknown_keys(v, &["kind", "monoid"], "base")?;
            Ok(Base::MSets(parse_monoid(field(v, "monoid", "base")?, "base.monoid")?))
        }
        other => Err(Error::UnknownSpec(format!("base.kind = \"{other}\""))),
    }
}

fn base_value(b: &Base) -> Value {
    match b {
        Base::Sets => json!({"kind": "finset"}),
        Base::MSets(m) => json!({"kind": "mset", "monoid": monoid_value(m)}),
    }
}

/// Builds a base object from an element list and, over M-sets, an action table.
fn parse_object(base: &Base, elements: Vec<String>, actions: Option<&Value>, ctx: &str) -> Result<Obj> {
    match base {
        Base::Sets => {
            if actions.is_some() {
                return Err(invalid(format!("{ctx} has actions but the base is finset")));
            }
            BaseObject::set(elements)
        }
        Base::MSets(m) => {
            let actions = actions.ok_or_else(|| invalid(format!("{ctx} needs an action table over an mset base")))?;
            let map = object(actions, &format!("actions.{ctx}"))?;
            let plain = BaseObject::set(elements.clone())?;
            let mut t = Vec::with_capacity(m.len() * elements.len());
            for a in m.elements() {
                let row = map
                    .get(a)
                    .ok_or_else(|| invalid(format!("actions.{ctx} is missing monoid element \"{a}\"")))?;
                t.extend(table(row, &plain, &plain, &format!("actions.{ctx}[\"{a}\"]"))?);
            }
            if map.len() != m.len() {
                return Err(invalid(format!("actions.{ctx} mentions unknown monoid elements")));
            }
            BaseObject::mset(elements, m.clone(), t)
        }
    }
}

fn action_value(x: &Obj) -> Option<Value> {
    let m = x.monoid()?;
    let rows: BTreeMap<&str, BTreeMap<&str, &str>> = (0..m.len())
        .map(|a| {
            let row = (0..x.len()).map(|e| (x.element(e), x.element(x.act(a, e)))).collect();
            (m.element(a), row)
        })
        .collect();
    Some(json!(rows))
}

fn parse_flavor(v: &Value) -> Result<Flavor> {
    match string(v, "machine.flavor")? {
        "mealy" => Ok(Flavor::Mealy),
        "moore" => Ok(Flavor::Moore),
        other => Err(invalid(format!("machine.flavor \"{other}\" is neither mealy nor moore"))),
    }
}

fn check_bases(adj: &Adjunction, base: &Base) -> Result<()> {
    for (end, b) in [("domain", adj.left_domain()), ("codomain", adj.left_codomain())] {
        if let Some(b) = b {
            if &b != base {
                return Err(Error::Incompatible(format!(
                    "the adjunction's left adjoint has {end} base {b:?}, document base is {base:?}"
                )));
            }
        }
    }
    Ok(())
}

pub fn machine_from_value(v: &Value) -> Result<FMachine> {
    reject_unknown_keys(v, &["actions", "adjunction", "base", "machine", "output"], "document")?;
    let base = parse_base(field(v, "base", "document")?)?;
    let adjunction = parse_adjunction(field(v, "adjunction", "document")?)?;
    check_bases(&adjunction, &base)?;
    let actions = v.get("actions");
    if let Some(a) = actions {
        reject_unknown_keys(a, &["states", "output"], "actions")?;
    }
    let output = parse_object(
        &base,
        strings(field(v, "output", "document")?, "output")?,
        actions.and_then(|a| a.get("output")),
        "output",
    )?;
    let mv = field(v, "machine", "document")?;
    reject_unknown_keys(mv, &["flavor", "states", "d", "s"], "machine")?;
    let flavor = parse_flavor(field(mv, "flavor", "machine")?)?;
    let carrier = parse_object(
        &base,
        strings(field(mv, "states", "machine")?, "machine.states")?,
        actions.and_then(|a| a.get("states")),
        "states",
    )?;
    let fe = adjunction.left_object(&carrier)?;
    let d = BaseMorphism::new(
        fe.clone(),
        carrier.clone(),
        table(field(mv, "d", "machine")?, &fe, &carrier, "machine.d")?,
    )?;
    let s_dom = match flavor {
        Flavor::Mealy => fe,
        Flavor::Moore => carrier.clone(),
    };
    let s = BaseMorphism::new(
        s_dom.clone(),
        output.clone(),
        table(field(mv, "s", "machine")?, &s_dom, &output, "machine.s")?,
    )?;
    FMachine::new(flavor, adjunction, carrier, output, d, s)
}

pub fn machine_value(m: &FMachine) -> Value {
    let mut doc = json!({
        "adjunction": adjunction_value(m.adjunction()),
        "base": base_value(&m.carrier().base()),
        "machine": {
            "flavor": m.flavor().name(),
            "states": m.carrier().elements(),
            "d": table_value(m.d()),
            "s": table_value(m.s()),
        },
        "output": m.output().elements(),
    });
    if let (Some(states), Some(output)) = (action_value(m.carrier()), action_value(m.output())) {
        doc["actions"] = json!({"states": states, "output": output});
    }
    doc
}

pub fn parse(text: &str) -> Result<FMachine> {
    machine_from_value(&parse_json(text)?)
}

pub fn serialize(m: &FMachine) -> String {
    to_canonical(&machine_value(m))
}

/// A state-mapping file `{"map": {state: state, ...}}` between two carriers.
pub fn parse_morphism(text: &str, dom: &Obj, cod: &Obj) -> Result<BaseMorphism> {
    let v = parse_json(text)?;
    reject_unknown_keys(&v, &["map"], "morphism")?;
    let t = table(field(&v, "map", "morphism")?, dom, cod, "morphism.map")?;
    BaseMorphism::new(dom.clone(), cod.clone(), t)
}

pub fn morphism_value(f: &BaseMorphism) -> Value {
    json!({"map": table_value(f)})
}
