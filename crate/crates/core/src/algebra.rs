//! Machines as pairs (algebra, output leg), and the behavior functor `B`
//! with its left adjoint `L`.
//!
//! A machine `(E, d, s)` is the same thing as an F-algebra `(E, d)` together
//! with an output leg over the same carrier: `s : FE → O` for Mealy machines,
//! `s : E → O` for Moore machines. The pairing is strict, so recomposition
//! insists on equal carriers.
//!
//! Maps into the terminal carrier `O∞` are infinite objects; they are carried
//! intensionally by a Moore machine whose behavior *is* the map. Two such maps
//! agree exactly when the corresponding states are behavior-equivalent.
//!
//! The adjunction `L ⊣ B` is checked directly on hom-sets: both
//! `Hom(Lx, m)` and `Hom(x, Bm)` are enumerated independently, and the
//! transports between them (the identity on underlying maps) are verified to
//! be mutually inverse and natural in `m`.

use crate::adjunction::Adjunction;
use crate::base::{compose, enumerate_hom, BaseMorphism, Obj};
use crate::behavior::behavior_partition;
use crate::error::{Error, Result};
use crate::limits::machine_coproduct;
use crate::machine::{is_morphism, FMachine, Flavor, MachineMorphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FAlgebra {
    adjunction: Adjunction,
    carrier: Obj,
    structure: BaseMorphism,
}

impl FAlgebra {
    pub fn new(adjunction: Adjunction, carrier: Obj, structure: BaseMorphism) -> Result<Self> {
        let fa = adjunction.left_object(&carrier)?;
        if structure.dom() != &fa || structure.cod() != &carrier {
            return Err(Error::Validation(
                "algebra structure map must have type FA → A".into(),
            ));
        }
        Ok(FAlgebra {
            adjunction,
            carrier,
            structure,
        })
    }

    pub fn adjunction(&self) -> &Adjunction {
        &self.adjunction
    }

    pub fn carrier(&self) -> &Obj {
        &self.carrier
    }

    pub fn structure(&self) -> &BaseMorphism {
        &self.structure
    }
}

/// An object of `F/O` (Mealy) or `K/O` (Moore) over a named carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceLeg {
    flavor: Flavor,
    adjunction: Adjunction,
    carrier: Obj,
    map: BaseMorphism,
}

impl SliceLeg {
    pub fn new(flavor: Flavor, adjunction: Adjunction, carrier: Obj, map: BaseMorphism) -> Result<Self> {
        let dom = match flavor {
            Flavor::Mealy => adjunction.left_object(&carrier)?,
            Flavor::Moore => carrier.clone(),
        };
        if map.dom() != &dom {
            return Err(Error::Validation(format!(
                "{} output leg has the wrong domain",
                flavor.name()
            )));
        }
        Ok(SliceLeg {
            flavor,
            adjunction,
            carrier,
            map,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn carrier(&self) -> &Obj {
        &self.carrier
    }

    pub fn output(&self) -> &Obj {
        self.map.cod()
    }

    pub fn map(&self) -> &BaseMorphism {
        &self.map
    }
}

pub fn decompose(m: &FMachine) -> Result<(FAlgebra, SliceLeg)> {
    let alg = FAlgebra::new(m.adjunction().clone(), m.carrier().clone(), m.d().clone())?;
    let leg = SliceLeg::new(
        m.flavor(),
        m.adjunction().clone(),
        m.carrier().clone(),
        m.s().clone(),
    )?;
    Ok((alg, leg))
}

pub fn recompose(alg: &FAlgebra, leg: &SliceLeg) -> Result<FMachine> {
    if alg.carrier != leg.carrier {
        return Err(Error::Strictness(format!(
            "algebra carrier {:?} differs from output-leg carrier {:?}",
            alg.carrier.elements(),
            leg.carrier.elements()
        )));
    }
    if alg.adjunction != leg.adjunction {
        return Err(Error::Strictness(
            "algebra and output leg use different adjunctions".into(),
        ));
    }
    FMachine::new(
        leg.flavor,
        alg.adjunction.clone(),
        alg.carrier.clone(),
        leg.output().clone(),
        alg.structure.clone(),
        leg.map.clone(),
    )
}

/// `a₂ ∘ Ff = f ∘ a₁`; false on any endpoint mismatch.
pub fn algebra_morphism_valid(f: &BaseMorphism, a1: &FAlgebra, a2: &FAlgebra) -> Result<bool> {
    if a1.adjunction != a2.adjunction || f.dom() != &a1.carrier || f.cod() != &a2.carrier {
        return Ok(false);
    }
    let ff = a1.adjunction.left().morphism(f)?;
    Ok(compose(&a2.structure, &ff)? == compose(f, &a1.structure)?)
}

/// Commuting triangle over `O`: `s₂ ∘ f = s₁` (Moore) or `s₂ ∘ Ff = s₁` (Mealy).
pub fn slice_morphism_valid(f: &BaseMorphism, l1: &SliceLeg, l2: &SliceLeg) -> Result<bool> {
    if l1.flavor != l2.flavor
        || l1.adjunction != l2.adjunction
        || l1.output() != l2.output()
        || f.dom() != &l1.carrier
        || f.cod() != &l2.carrier
    {
        return Ok(false);
    }
    let g = match l1.flavor {
        Flavor::Mealy => l1.adjunction.left().morphism(f)?,
        Flavor::Moore => f.clone(),
    };
    Ok(compose(&l2.map, &g)? == l1.map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub src: FAlgebra,
    pub dst: FAlgebra,
    pub map: BaseMorphism,
}

impl AlgebraMorphism {
    pub fn new(src: FAlgebra, dst: FAlgebra, map: BaseMorphism) -> Result<Self> {
        if !algebra_morphism_valid(&map, &src, &dst)? {
            return Err(Error::Validation("not an algebra morphism".into()));
        }
        Ok(AlgebraMorphism { src, dst, map })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceMorphism {
    pub src: SliceLeg,
    pub dst: SliceLeg,
    pub map: BaseMorphism,
}

impl SliceMorphism {
    pub fn new(src: SliceLeg, dst: SliceLeg, map: BaseMorphism) -> Result<Self> {
        if !slice_morphism_valid(&map, &src, &dst)? {
            return Err(Error::Validation("output triangle does not commute".into()));
        }
        Ok(SliceMorphism { src, dst, map })
    }
}

pub fn split_morphism(h: &MachineMorphism) -> Result<(AlgebraMorphism, SliceMorphism)> {
    let (a1, l1) = decompose(h.src())?;
    let (a2, l2) = decompose(h.dst())?;
    Ok((
        AlgebraMorphism::new(a1, a2, h.map().clone())?,
        SliceMorphism::new(l1, l2, h.map().clone())?,
    ))
}

pub fn join_morphism(a: &AlgebraMorphism, l: &SliceMorphism) -> Result<MachineMorphism> {
    if a.map != l.map {
        return Err(Error::Strictness(
            "algebra and slice morphisms have different underlying maps".into(),
        ));
    }
    MachineMorphism::new(recompose(&a.src, &l.src)?, recompose(&a.dst, &l.dst)?, a.map.clone())
}

/// An algebra `(A, a)` with its unique algebra map into `O∞`, carried by
/// the Moore machine `(A, a, s)` whose behavior is that map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntensionalMap {
    machine: FMachine,
}

impl IntensionalMap {
    pub fn new(machine: FMachine) -> Result<Self> {
        if machine.flavor() != Flavor::Moore {
            return Err(Error::Domain(
                "maps into the terminal carrier are represented by Moore machines".into(),
            ));
        }
        Ok(IntensionalMap { machine })
    }

    pub fn machine(&self) -> &FMachine {
        &self.machine
    }

    pub fn algebra(&self) -> FAlgebra {
        decompose(&self.machine).expect("valid machine decomposes").0
    }
}

pub fn functor_b(m: &FMachine) -> Result<IntensionalMap> {
    if m.flavor() != Flavor::Moore {
        return Err(Error::Domain(format!(
            "the behavior functor is defined on Moore machines, got {}",
            m.flavor().name()
        )));
    }
    IntensionalMap::new(m.clone())
}

pub fn functor_l(x: &IntensionalMap) -> FMachine {
    x.machine.clone()
}

/// `u_y ∘ f = u_x`: each `e` and `f(e)` are behavior-equivalent.
pub fn triangle_commutes(x: &IntensionalMap, y: &IntensionalMap, f: &BaseMorphism) -> Result<bool> {
    x.machine.check_compatible(&y.machine)?;
    if f.dom() != x.machine.carrier() || f.cod() != y.machine.carrier() {
        return Ok(false);
    }
    let sum = machine_coproduct(&x.machine, &y.machine)?;
    let p = behavior_partition(&sum.apex)?;
    Ok((0..f.dom().len())
        .all(|e| p.same_block(sum.inl.map().apply(e), sum.inr.map().apply(f.apply(e)))))
}

/// A morphism of the slice over `O∞`: an algebra map with a commuting
/// behavior triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceArrow {
    pub src: IntensionalMap,
    pub dst: IntensionalMap,
    pub map: BaseMorphism,
}

impl SliceArrow {
    pub fn new(src: IntensionalMap, dst: IntensionalMap, map: BaseMorphism) -> Result<Self> {
        if !algebra_morphism_valid(&map, &src.algebra(), &dst.algebra())? {
            return Err(Error::Validation("not an algebra morphism".into()));
        }
        if !triangle_commutes(&src, &dst, &map)? {
            return Err(Error::Validation("behavior triangle does not commute".into()));
        }
        Ok(SliceArrow { src, dst, map })
    }

    pub fn then(&self, next: &SliceArrow) -> Result<SliceArrow> {
        if self.dst != next.src {
            return Err(Error::Composition {
                left: "slice arrow".into(),
                right: "slice arrow".into(),
            });
        }
        SliceArrow::new(self.src.clone(), next.dst.clone(), compose(&next.map, &self.map)?)
    }
}

/// `B` on morphisms: the same underlying map, re-validated in the slice.
pub fn functor_b_morphism(h: &MachineMorphism) -> Result<SliceArrow> {
    SliceArrow::new(functor_b(h.src())?, functor_b(h.dst())?, h.map().clone())
}

/// Transport `Hom(Lx, m) → Hom(x, Bm)`.
pub fn to_slice(x: &IntensionalMap, m: &FMachine, h: &BaseMorphism) -> Result<SliceArrow> {
    let h = MachineMorphism::new(functor_l(x), m.clone(), h.clone())?;
    SliceArrow::new(x.clone(), functor_b(m)?, h.map().clone())
}

/// Transport `Hom(x, Bm) → Hom(Lx, m)`.
pub fn to_machine(k: &SliceArrow) -> Result<MachineMorphism> {
    MachineMorphism::new(functor_l(&k.src), k.dst.machine.clone(), k.map.clone())
}

#[derive(Clone, Debug)]
pub struct BijectionReport {
    pub machine_side: Vec<BaseMorphism>,
    pub slice_side: Vec<BaseMorphism>,
    /// Every machine morphism transports to a slice arrow and back to itself.
    pub forward_round_trip: bool,
    /// Every slice arrow transports to a machine morphism and back to itself.
    pub backward_round_trip: bool,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.machine_side.len() == self.slice_side.len()
            && self.forward_round_trip
            && self.backward_round_trip
    }
}

fn check_bound(m: &FMachine, bound: usize) -> Result<()> {
    if m.carrier().len() > bound {
        return Err(Error::ObjectTooLarge {
            what: "machine carrier in hom-set check".into(),
            size: m.carrier().len().to_string(),
            bound: bound as u64,
        });
    }
    Ok(())
}

/// Enumerates `Hom(Lx, m)` and `Hom(x, Bm)` independently and checks that the
/// two transports are mutually inverse.
pub fn homset_bijection_check(x: &IntensionalMap, m: &FMachine, bound: usize) -> Result<BijectionReport> {
    let bm = functor_b(m)?;
    let lx = functor_l(x);
    check_bound(&lx, bound)?;
    check_bound(m, bound)?;
    lx.check_compatible(m)?;
    let candidates = enumerate_hom(lx.carrier(), m.carrier())?;
    let (xa, ma) = (x.algebra(), bm.algebra());
    let mut machine_side = Vec::new();
    let mut slice_side = Vec::new();
    for f in candidates {
        if is_morphism(&lx, m, &f)? {
            machine_side.push(f.clone());
        }
        if algebra_morphism_valid(&f, &xa, &ma)? && triangle_commutes(x, &bm, &f)? {
            slice_side.push(f);
        }
    }
    let mut forward_round_trip = true;
    for h in &machine_side {
        let back = to_slice(x, m, h).and_then(|k| to_machine(&k));
        forward_round_trip &= matches!(back, Ok(b) if b.map() == h);
    }
    let mut backward_round_trip = true;
    for k in &slice_side {
        let back = SliceArrow::new(x.clone(), bm.clone(), k.clone())
            .and_then(|arrow| to_machine(&arrow))
            .and_then(|h| to_slice(x, m, h.map()));
        backward_round_trip &= matches!(back, Ok(b) if &b.map == k);
    }
    Ok(BijectionReport {
        machine_side,
        slice_side,
        forward_round_trip,
        backward_round_trip,
    })
}

/// Naturality in `m`: for `g : m → m'`, transporting `g ∘ h` equals
/// `B(g) ∘` (transport of `h`) for every `h ∈ Hom(Lx, m)`.
pub fn naturality_check(x: &IntensionalMap, g: &MachineMorphism, bound: usize) -> Result<bool> {
    let report = homset_bijection_check(x, g.src(), bound)?;
    let bg = functor_b_morphism(g)?;
    for h in &report.machine_side {
        let hm = MachineMorphism::new(functor_l(x), g.src().clone(), h.clone())?;
        let left = to_slice(x, g.dst(), hm.then(g)?.map())?;
        let right = to_slice(x, g.src(), h)?.then(&bg)?;
        if left.map != right.map {
            return Ok(false);
        }
    }
    Ok(true)
}
