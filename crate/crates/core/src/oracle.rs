//! Brute-force universal-property checks for machine (co)limits.
//!
//! Competitors are the supplied fixtures plus every machine on a carrier of
//! at most [`SMALL_CARRIER`] elements over the same adjunction and output.
//! For every competitor and every (co)cone over it, the oracle counts the
//! mediating machine morphisms; the construction passes iff every count is 1.

use std::collections::{BTreeMap, HashMap};

use crate::adjunction::Adjunction;
use crate::base::{all_actions, compose, enumerate_hom, Base, BaseMorphism, BaseObject, Obj};
use crate::error::{Error, Result};
use crate::limits::{Coequalizer, Coproduct, Equalizer, Product, Pullback};
use crate::machine::{is_morphism, FMachine, Flavor, MachineMorphism};

pub const SMALL_CARRIER: usize = 2;
pub const DEFAULT_BOUND: usize = 4;

/// All machine morphisms `src → dst`, in enumeration order.
pub fn machine_homs(src: &FMachine, dst: &FMachine) -> Result<Vec<BaseMorphism>> {
    let mut out = Vec::new();
    for f in enumerate_hom(src.carrier(), dst.carrier())? {
        if is_morphism(src, dst, &f)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Every machine with carrier size `≤ max_states`, in a fixed order.
pub fn small_machines(
    adj: &Adjunction,
    output: &Obj,
    flavor: Flavor,
    max_states: usize,
) -> Result<Vec<FMachine>> {
    let base = output.base();
    let mut out = Vec::new();
    for k in 0..=max_states {
        let names: Vec<String> = (0..k).map(|i| format!("z{i}")).collect();
        let carriers = match &base {
            Base::Sets => vec![BaseObject::set(names)?],
            Base::MSets(m) => all_actions(m, &names),
        };
        for carrier in carriers {
            let fe = adj.left_object(&carrier)?;
            let ds = enumerate_hom(&fe, &carrier)?;
            let s_dom = match flavor {
                Flavor::Mealy => fe.clone(),
                Flavor::Moore => carrier.clone(),
            };
            let ss = enumerate_hom(&s_dom, output)?;
            for d in &ds {
                for s in &ss {
                    out.push(FMachine::new(
                        flavor,
                        adj.clone(),
                        carrier.clone(),
                        output.clone(),
                        d.clone(),
                        s.clone(),
                    )?);
                }
            }
        }
    }
    Ok(out)
}

/// Named competitors: compatible fixtures first, then the small machines.
pub fn competitor_set(template: &FMachine, fixtures: &[(String, FMachine)]) -> Result<Vec<(String, FMachine)>> {
    let mut out: Vec<(String, FMachine)> = fixtures
        .iter()
        .filter(|(_, m)| template.check_compatible(m).is_ok())
        .cloned()
        .collect();
    let small = small_machines(
        template.adjunction(),
        template.output(),
        template.flavor(),
        SMALL_CARRIER,
    )?;
    out.extend(
        small
            .into_iter()
            .enumerate()
            .map(|(k, m)| (format!("small#{k}"), m)),
    );
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum UniversalKind {
    Product,
    Coproduct,
    Equalizer,
    Coequalizer,
    Pullback,
    Initial,
}

impl UniversalKind {
    pub fn name(self) -> &'static str {
        match self {
            UniversalKind::Product => "product",
            UniversalKind::Coproduct => "coproduct",
            UniversalKind::Equalizer => "equalizer",
            UniversalKind::Coequalizer => "coequalizer",
            UniversalKind::Pullback => "pullback",
            UniversalKind::Initial => "initial",
        }
    }
}

/// A (co)cone to be tested. Legs are raw maps so that broken cones can be
/// examined too.
#[derive(Clone, Debug)]
pub enum UniversalCone {
    Product {
        apex: FMachine,
        factors: [FMachine; 2],
        legs: [BaseMorphism; 2],
    },
    Coproduct {
        apex: FMachine,
        summands: [FMachine; 2],
        legs: [BaseMorphism; 2],
    },
    Equalizer {
        apex: FMachine,
        source: FMachine,
        target: FMachine,
        pair: [BaseMorphism; 2],
        leg: BaseMorphism,
    },
    Coequalizer {
        apex: FMachine,
        source: FMachine,
        target: FMachine,
        pair: [BaseMorphism; 2],
        leg: BaseMorphism,
    },
    Pullback {
        apex: FMachine,
        sides: [FMachine; 2],
        bottom: FMachine,
        cospan: [BaseMorphism; 2],
        legs: [BaseMorphism; 2],
    },
    Initial {
        apex: FMachine,
    },
}

impl Product {
    pub fn cone(&self) -> UniversalCone {
        UniversalCone::Product {
            apex: self.apex.clone(),
            factors: [self.left.dst().clone(), self.right.dst().clone()],
            legs: [self.left.map().clone(), self.right.map().clone()],
        }
    }
}

impl Coproduct {
    pub fn cone(&self) -> UniversalCone {
        UniversalCone::Coproduct {
            apex: self.apex.clone(),
            summands: [self.inl.src().clone(), self.inr.src().clone()],
            legs: [self.inl.map().clone(), self.inr.map().clone()],
        }
    }
}

impl Equalizer {
    pub fn cone(&self, h1: &MachineMorphism, h2: &MachineMorphism) -> UniversalCone {
        UniversalCone::Equalizer {
            apex: self.apex.clone(),
            source: h1.src().clone(),
            target: h1.dst().clone(),
            pair: [h1.map().clone(), h2.map().clone()],
            leg: self.inclusion.map().clone(),
        }
    }
}

impl Coequalizer {
    pub fn cone(&self, h1: &MachineMorphism, h2: &MachineMorphism) -> UniversalCone {
        UniversalCone::Coequalizer {
            apex: self.apex.clone(),
            source: h1.src().clone(),
            target: h1.dst().clone(),
            pair: [h1.map().clone(), h2.map().clone()],
            leg: self.quotient.map().clone(),
        }
    }
}

impl Pullback {
    pub fn cone(&self, h1: &MachineMorphism, h2: &MachineMorphism) -> UniversalCone {
        UniversalCone::Pullback {
            apex: self.apex.clone(),
            sides: [h1.src().clone(), h2.src().clone()],
            bottom: h1.dst().clone(),
            cospan: [h1.map().clone(), h2.map().clone()],
            legs: [self.left.map().clone(), self.right.map().clone()],
        }
    }
}

impl UniversalCone {
    pub fn kind(&self) -> UniversalKind {
        match self {
            UniversalCone::Product { .. } => UniversalKind::Product,
            UniversalCone::Coproduct { .. } => UniversalKind::Coproduct,
            UniversalCone::Equalizer { .. } => UniversalKind::Equalizer,
            UniversalCone::Coequalizer { .. } => UniversalKind::Coequalizer,
            UniversalCone::Pullback { .. } => UniversalKind::Pullback,
            UniversalCone::Initial { .. } => UniversalKind::Initial,
        }
    }

    pub fn apex(&self) -> &FMachine {
        match self {
            UniversalCone::Product { apex, .. }
            | UniversalCone::Coproduct { apex, .. }
            | UniversalCone::Equalizer { apex, .. }
            | UniversalCone::Coequalizer { apex, .. }
            | UniversalCone::Pullback { apex, .. }
            | UniversalCone::Initial { apex } => apex,
        }
    }

    fn machines(&self) -> Vec<&FMachine> {
        match self {
            UniversalCone::Product { apex, factors, .. } => vec![apex, &factors[0], &factors[1]],
            UniversalCone::Coproduct { apex, summands, .. } => {
                vec![apex, &summands[0], &summands[1]]
            }
            UniversalCone::Equalizer {
                apex,
                source,
                target,
                ..
            }
            | UniversalCone::Coequalizer {
                apex,
                source,
                target,
                ..
            } => vec![apex, source, target],
            UniversalCone::Pullback {
                apex, sides, bottom, ..
            } => vec![apex, &sides[0], &sides[1], bottom],
            UniversalCone::Initial { apex } => vec![apex],
        }
    }

    /// Legs are machine morphisms and the (co)cone commutes.
    fn legs_valid(&self) -> Result<bool> {
        let commutes = |a: &BaseMorphism, b: &BaseMorphism| -> Result<bool> { Ok(a == b) };
        Ok(match self {
            UniversalCone::Product {
                apex,
                factors,
                legs,
            } => is_morphism(apex, &factors[0], &legs[0])? && is_morphism(apex, &factors[1], &legs[1])?,
            UniversalCone::Coproduct {
                apex,
                summands,
                legs,
            } => {
                is_morphism(&summands[0], apex, &legs[0])?
                    && is_morphism(&summands[1], apex, &legs[1])?
            }
            UniversalCone::Equalizer {
                apex,
                source,
                pair,
                leg,
                ..
            } => {
                is_morphism(apex, source, leg)?
                    && commutes(&compose(&pair[0], leg)?, &compose(&pair[1], leg)?)?
            }
            UniversalCone::Coequalizer {
                apex,
                target,
                pair,
                leg,
                ..
            } => {
                is_morphism(target, apex, leg)?
                    && commutes(&compose(leg, &pair[0])?, &compose(leg, &pair[1])?)?
            }
            UniversalCone::Pullback {
                apex,
                sides,
                cospan,
                legs,
                ..
            } => {
                is_morphism(apex, &sides[0], &legs[0])?
                    && is_morphism(apex, &sides[1], &legs[1])?
                    && commutes(&compose(&cospan[0], &legs[0])?, &compose(&cospan[1], &legs[1])?)?
            }
            UniversalCone::Initial { .. } => true,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub competitor: String,
    /// The competitor (co)cone, rendered as its maps.
    pub cone: String,
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct ConeReport {
    pub kind: UniversalKind,
    pub apex_states: usize,
    pub legs_valid: bool,
    pub competitors: usize,
    pub cones_checked: usize,
    /// Number of competitor cones per mediating-morphism count.
    pub counts: BTreeMap<usize, usize>,
    pub failures: Vec<Failure>,
}

impl ConeReport {
    pub fn ok(&self) -> bool {
        self.legs_valid && self.failures.is_empty()
    }
}

const MAX_REPORTED_FAILURES: usize = 5;

/// Counts mediating morphisms for every competitor (co)cone.
pub fn check_universal(
    cone: &UniversalCone,
    competitors: &[(String, FMachine)],
    bound: usize,
) -> Result<ConeReport> {
    for m in cone.machines().into_iter().chain(competitors.iter().map(|(_, m)| m)) {
        if m.carrier().len() > bound {
            return Err(Error::ObjectTooLarge {
                what: "machine carrier in universal check".into(),
                size: m.carrier().len().to_string(),
                bound: bound as u64,
            });
        }
    }
    let apex = cone.apex();
    let mut report = ConeReport {
        kind: cone.kind(),
        apex_states: apex.carrier().len(),
        legs_valid: cone.legs_valid()?,
        competitors: 0,
        cones_checked: 0,
        counts: BTreeMap::new(),
        failures: Vec::new(),
    };
    for (name, z) in competitors {
        if apex.check_compatible(z).is_err() {
            continue;
        }
        report.competitors += 1;
        let mut record = |cone_desc: &dyn Fn() -> String, count: usize| {
            report.cones_checked += 1;
            *report.counts.entry(count).or_insert(0) += 1;
            if count != 1 && report.failures.len() < MAX_REPORTED_FAILURES {
                report.failures.push(Failure {
                    competitor: name.clone(),
                    cone: cone_desc(),
                    count,
                });
            }
        };
        match cone {
            UniversalCone::Product {
                factors, legs, ..
            }
            | UniversalCone::Pullback {
                sides: factors,
                legs,
                ..
            } => {
                let into_apex = machine_homs(z, apex)?;
                let mut hits: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
                for w in &into_apex {
                    let key = (
                        compose(&legs[0], w)?.table().to_vec(),
                        compose(&legs[1], w)?.table().to_vec(),
                    );
                    *hits.entry(key).or_insert(0) += 1;
                }
                let us = machine_homs(z, &factors[0])?;
                let vs = machine_homs(z, &factors[1])?;
                for u in &us {
                    for v in &vs {
                        if let UniversalCone::Pullback { cospan, .. } = cone {
                            if compose(&cospan[0], u)? != compose(&cospan[1], v)? {
                                continue;
                            }
                        }
                        let count = hits
                            .get(&(u.table().to_vec(), v.table().to_vec()))
                            .copied()
                            .unwrap_or(0);
                        record(&|| format!("u = {u}, v = {v}"), count);
                    }
                }
            }
            UniversalCone::Coproduct { summands, legs, .. } => {
                let out_of_apex = machine_homs(apex, z)?;
                let mut hits: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
                for w in &out_of_apex {
                    let key = (
                        compose(w, &legs[0])?.table().to_vec(),
                        compose(w, &legs[1])?.table().to_vec(),
                    );
                    *hits.entry(key).or_insert(0) += 1;
                }
                let us = machine_homs(&summands[0], z)?;
                let vs = machine_homs(&summands[1], z)?;
                for u in &us {
                    for v in &vs {
                        let count = hits
                            .get(&(u.table().to_vec(), v.table().to_vec()))
                            .copied()
                            .unwrap_or(0);
                        record(&|| format!("u = {u}, v = {v}"), count);
                    }
                }
            }
            UniversalCone::Equalizer {
                source, pair, leg, ..
            } => {
                let mut hits: HashMap<Vec<usize>, usize> = HashMap::new();
                for w in machine_homs(z, apex)? {
                    *hits.entry(compose(leg, &w)?.table().to_vec()).or_insert(0) += 1;
                }
                for k in machine_homs(z, source)? {
                    if compose(&pair[0], &k)? != compose(&pair[1], &k)? {
                        continue;
                    }
                    let count = hits.get(k.table()).copied().unwrap_or(0);
                    record(&|| format!("k = {k}"), count);
                }
            }
            UniversalCone::Coequalizer {
                target, pair, leg, ..
            } => {
                let mut hits: HashMap<Vec<usize>, usize> = HashMap::new();
                for w in machine_homs(apex, z)? {
                    *hits.entry(compose(&w, leg)?.table().to_vec()).or_insert(0) += 1;
                }
                for k in machine_homs(target, z)? {
                    if compose(&k, &pair[0])? != compose(&k, &pair[1])? {
                        continue;
                    }
                    let count = hits.get(k.table()).copied().unwrap_or(0);
                    record(&|| format!("k = {k}"), count);
                }
            }
            UniversalCone::Initial { .. } => {
                let count = machine_homs(apex, z)?.len();
                record(&|| "unique map out of the apex".to_string(), count);
            }
        }
    }
    Ok(report)
}
