//! F-Mealy and F-Moore machines, their morphisms, and classical word semantics.

use std::collections::HashMap;
use std::fmt;

use crate::adjunction::Adjunction;
use crate::base::{compose, BaseMorphism, BaseObject, Obj};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Mealy,
    Moore,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Mealy => "mealy",
            Flavor::Moore => "moore",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A machine `E ← FE → O` (Mealy) or `E ← FE ; E → O` (Moore).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMachine {
    flavor: Flavor,
    adjunction: Adjunction,
    carrier: Obj,
    output: Obj,
    d: BaseMorphism,
    s: BaseMorphism,
}

impl FMachine {
    pub fn new(
        flavor: Flavor,
        adjunction: Adjunction,
        carrier: Obj,
        output: Obj,
        d: BaseMorphism,
        s: BaseMorphism,
    ) -> Result<Self> {
        if carrier.base() != output.base() {
            return Err(Error::Validation(format!(
                "carrier {carrier} and output {output} live in different base categories"
            )));
        }
        let fe = adjunction.left_object(&carrier)?;
        if d.dom() != &fe || d.cod() != &carrier {
            return Err(Error::Validation(
                "d must be a map FE → E".to_string(),
            ));
        }
        let s_dom = match flavor {
            Flavor::Mealy => &fe,
            Flavor::Moore => &carrier,
        };
        if s.dom() != s_dom || s.cod() != &output {
            return Err(Error::Validation(match flavor {
                Flavor::Mealy => "s must be a map FE → O".to_string(),
                Flavor::Moore => "s must be a map E → O".to_string(),
            }));
        }
        Ok(FMachine {
            flavor,
            adjunction,
            carrier,
            output,
            d,
            s,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn adjunction(&self) -> &Adjunction {
        &self.adjunction
    }

    pub fn carrier(&self) -> &Obj {
        &self.carrier
    }

    pub fn output(&self) -> &Obj {
        &self.output
    }

    /// `FE`.
    pub fn f_carrier(&self) -> &Obj {
        self.d.dom()
    }

    pub fn d(&self) -> &BaseMorphism {
        &self.d
    }

    pub fn s(&self) -> &BaseMorphism {
        &self.s
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.carrier.require(name)
    }

    /// Same flavor, adjunction and output object.
    pub fn check_compatible(&self, other: &FMachine) -> Result<()> {
        if self.flavor != other.flavor {
            return Err(Error::Incompatible(format!(
                "flavor mismatch: {} vs {}",
                self.flavor, other.flavor
            )));
        }
        if self.adjunction != other.adjunction {
            return Err(Error::Incompatible("adjunction mismatch".into()));
        }
        if self.output != other.output {
            return Err(Error::Incompatible(format!(
                "output mismatch: {} vs {}",
                self.output, other.output
            )));
        }
        Ok(())
    }

    /// The input object when the machine is classical (`F = – × I`).
    pub fn classical_input(&self) -> Option<&Obj> {
        match &self.adjunction {
            Adjunction::ProductExponential(i) => Some(i),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Square {
    /// `d' ∘ Ff = f ∘ d`
    Dynamics,
    /// `s' ∘ Ff = s` or `s' ∘ f = s`
    Output,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub square: Square,
    /// Element of `FE` (or `E` for the Moore output square).
    pub at: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let which = match self.square {
            Square::Dynamics => "d",
            Square::Output => "s",
        };
        write!(
            f,
            "{which}-square fails at {}: {} vs {}",
            self.at, self.expected, self.actual
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphismReport {
    pub violations: Vec<Violation>,
}

impl MorphismReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Elementwise check of both squares for `f : src.E → dst.E`.
pub fn validate_morphism(src: &FMachine, dst: &FMachine, f: &BaseMorphism) -> Result<MorphismReport> {
    src.check_compatible(dst)?;
    if f.dom() != src.carrier() || f.cod() != dst.carrier() {
        return Err(Error::Incompatible(
            "map endpoints do not match the machine carriers".into(),
        ));
    }
    let ff = src.adjunction.left().morphism(f)?;
    let mut violations = Vec::new();
    let fe = src.f_carrier();
    for x in 0..fe.len() {
        let lhs = dst.d.apply(ff.apply(x));
        let rhs = f.apply(src.d.apply(x));
        if lhs != rhs {
            violations.push(Violation {
                square: Square::Dynamics,
                at: fe.element(x).to_string(),
                expected: dst.carrier.element(rhs).to_string(),
                actual: dst.carrier.element(lhs).to_string(),
            });
        }
    }
    let (via, dom) = match src.flavor {
        Flavor::Mealy => (&ff, fe),
        Flavor::Moore => (f, src.carrier()),
    };
    for x in 0..dom.len() {
        let lhs = dst.s.apply(via.apply(x));
        let rhs = src.s.apply(x);
        if lhs != rhs {
            violations.push(Violation {
                square: Square::Output,
                at: dom.element(x).to_string(),
                expected: src.output.element(rhs).to_string(),
                actual: src.output.element(lhs).to_string(),
            });
        }
    }
    Ok(MorphismReport { violations })
}

pub fn is_morphism(src: &FMachine, dst: &FMachine, f: &BaseMorphism) -> Result<bool> {
    Ok(validate_morphism(src, dst, f)?.is_ok())
}

/// A validated machine morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineMorphism {
    src: FMachine,
    dst: FMachine,
    map: BaseMorphism,
}

impl MachineMorphism {
    pub fn new(src: FMachine, dst: FMachine, map: BaseMorphism) -> Result<Self> {
        let report = validate_morphism(&src, &dst, &map)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::Validation(format!("not a machine morphism: {v}")));
        }
        Ok(MachineMorphism { src, dst, map })
    }

    pub fn identity(m: &FMachine) -> Self {
        MachineMorphism {
            src: m.clone(),
            dst: m.clone(),
            map: BaseMorphism::identity(m.carrier()),
        }
    }

    pub fn src(&self) -> &FMachine {
        &self.src
    }

    pub fn dst(&self) -> &FMachine {
        &self.dst
    }

    pub fn map(&self) -> &BaseMorphism {
        &self.map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MachineMorphism) -> Result<MachineMorphism> {
        if self.dst != next.src {
            return Err(Error::Composition {
                left: self.dst.carrier.to_string(),
                right: next.src.carrier.to_string(),
            });
        }
        Ok(MachineMorphism {
            src: self.src.clone(),
            dst: next.dst.clone(),
            map: compose(&next.map, &self.map)?,
        })
    }
}

/// Output data of a classical machine: per transition (Mealy) or per state (Moore).
#[derive(Clone, Debug)]
pub enum OutputTable {
    PerTransition(HashMap<(String, String), String>),
    PerState(HashMap<String, String>),
}

/// A classical Mealy or Moore machine over `F = – × I`, assembled from tables.
pub fn mk_classical(
    input: &Obj,
    output: &Obj,
    states: &[String],
    d: &HashMap<(String, String), String>,
    s: &OutputTable,
) -> Result<FMachine> {
    if !input.is_plain() || !output.is_plain() {
        return Err(Error::Validation("classical machines live over plain sets".into()));
    }
    let carrier = BaseObject::set(states.to_vec())?;
    let adjunction = Adjunction::ProductExponential(input.clone());
    let fe = adjunction.left_object(&carrier)?;
    let mut missing = Vec::new();
    let mut d_table = Vec::with_capacity(fe.len());
    let mut s_trans = Vec::with_capacity(fe.len());
    for e in states {
        for i in input.elements() {
            let key = (e.clone(), i.clone());
            match d.get(&key) {
                Some(next) => d_table.push(carrier.require(next)?),
                None => missing.push(format!("d({e},{i})")),
            }
            if let OutputTable::PerTransition(table) = s {
                match table.get(&key) {
                    Some(o) => s_trans.push(output.require(o)?),
                    None => missing.push(format!("s({e},{i})")),
                }
            }
        }
    }
    let mut s_state = Vec::new();
    if let OutputTable::PerState(table) = s {
        for e in states {
            match table.get(e) {
                Some(o) => s_state.push(output.require(o)?),
                None => missing.push(format!("s({e})")),
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::Validation(format!(
            "missing table entries: {}",
            missing.join(", ")
        )));
    }
    let d = BaseMorphism::new(fe.clone(), carrier.clone(), d_table)?;
    let (flavor, s) = match s {
        OutputTable::PerTransition(_) => (Flavor::Mealy, BaseMorphism::new(fe, output.clone(), s_trans)?),
        OutputTable::PerState(_) => (
            Flavor::Moore,
            BaseMorphism::new(carrier.clone(), output.clone(), s_state)?,
        ),
    };
    FMachine::new(flavor, adjunction, carrier, output.clone(), d, s)
}

/// Final state and output of a classical machine on a word.
///
/// Mealy machines read nonempty words (the output is emitted at the last
/// step); Moore machines accept the empty word and output at the final state.
pub fn run_word(m: &FMachine, state: &str, word: &[&str]) -> Result<(String, String)> {
    let Some(input) = m.classical_input() else {
        return Err(Error::Domain(
            "word semantics is defined for classical (– × I) machines only".into(),
        ));
    };
    if m.flavor == Flavor::Mealy && word.is_empty() {
        return Err(Error::Domain(
            "Mealy machines read words in I⁺; the empty word has no output".into(),
        ));
    }
    let letters = word
        .iter()
        .map(|a| input.require(a))
        .collect::<Result<Vec<_>>>()?;
    let k = input.len();
    let mut e = m.state(state)?;
    let mut out = None;
    for &i in &letters {
        if m.flavor == Flavor::Mealy {
            out = Some(m.s.apply(e * k + i));
        }
        e = m.d.apply(e * k + i);
    }
    let out = match m.flavor {
        Flavor::Mealy => out.expect("nonempty word"),
        Flavor::Moore => m.s.apply(e),
    };
    Ok((
        m.carrier.element(e).to_string(),
        m.output.element(out).to_string(),
    ))
}

/// The coalgebraic view: `d̄ : E → RE`, plus `s̄₁ : E → RO` for Mealy machines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraForm {
    pub dynamics: BaseMorphism,
    pub output_mate: Option<BaseMorphism>,
}

pub fn coalgebra_form(m: &FMachine) -> Result<CoalgebraForm> {
    let dynamics = m.adjunction.transpose(&m.carrier, &m.d)?;
    let output_mate = match m.flavor {
        Flavor::Mealy => Some(m.adjunction.transpose(&m.carrier, &m.s)?),
        Flavor::Moore => None,
    };
    Ok(CoalgebraForm {
        dynamics,
        output_mate,
    })
}

/// The machine induced on the codomain of a surjective carrier map `q`,
/// when `q` identifies only states that the structure maps cannot tell apart.
pub(crate) fn induce_on_quotient(m: &FMachine, q: &BaseMorphism) -> Result<FMachine> {
    let target = q.cod().clone();
    let fq = m.adjunction.left().morphism(q)?;
    let fq_cod = fq.cod().clone();
    let mut d_table: Vec<Option<usize>> = vec![None; fq_cod.len()];
    let mut s_table: Vec<Option<usize>> = vec![None; fq_cod.len()];
    for z in 0..m.f_carrier().len() {
        let y = fq.apply(z);
        let next = q.apply(m.d.apply(z));
        if *d_table[y].get_or_insert(next) != next {
            return Err(Error::Internal(format!(
                "quotient does not respect d at {}",
                fq_cod.element(y)
            )));
        }
        if m.flavor == Flavor::Mealy {
            let out = m.s.apply(z);
            if *s_table[y].get_or_insert(out) != out {
                return Err(Error::Internal(format!(
                    "quotient does not respect s at {}",
                    fq_cod.element(y)
                )));
            }
        }
    }
    let d_table = d_table
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("F does not preserve the surjection".into()))?;
    let d = BaseMorphism::new(fq_cod.clone(), target.clone(), d_table)?;
    let s = match m.flavor {
        Flavor::Mealy => {
            let t = s_table.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
                Error::Internal("F does not preserve the surjection".into())
            })?;
            BaseMorphism::new(fq_cod, m.output.clone(), t)?
        }
        Flavor::Moore => {
            let mut t: Vec<Option<usize>> = vec![None; target.len()];
            for e in 0..m.carrier.len() {
                let out = m.s.apply(e);
                if *t[q.apply(e)].get_or_insert(out) != out {
                    return Err(Error::Internal(format!(
                        "quotient does not respect s at {}",
                        target.element(q.apply(e))
                    )));
                }
            }
            let t = t
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Internal("quotient map is not surjective".into()))?;
            BaseMorphism::new(target.clone(), m.output.clone(), t)?
        }
    };
    FMachine::new(m.flavor, m.adjunction.clone(), target, m.output.clone(), d, s)
}
