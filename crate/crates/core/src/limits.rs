//! Limits and colimits of machines.
//!
//! Colimits, equalizers and pullbacks are computed on carriers exactly as in
//! the base category. Binary products are not: the carrier of `E × T` is the
//! set of behavior-equal pairs `{(e,t) : s̄_{E,∞}(e) = s̄_{T,∞}(t)}`.
//!
//! Only binary (hence finite, nonempty) products are built. The nullary
//! product is the terminal machine on `∏ RⁿO`, which is infinite over both
//! bases; [`crate::behavior::terminal_truncation`] gives its finite
//! truncations, and uniqueness of maps into it is witnessed by behavior
//! equivalence instead.

use std::collections::HashMap;

use crate::adjunction::Adjunction;
use crate::base::{
    coequalizer, coproduct, equalizer, product, pullback, subobject, BaseMorphism, Cone, Obj,
};
use crate::behavior::{behavior_mate, behavior_partition};
use crate::error::{Error, Result};
use crate::machine::{induce_on_quotient, FMachine, Flavor, MachineMorphism};

#[derive(Clone, Debug)]
pub struct Coproduct {
    pub apex: FMachine,
    pub inl: MachineMorphism,
    pub inr: MachineMorphism,
}

/// `E + T` with structure maps transported along `F(E + T) ≅ FE + FT`.
pub fn machine_coproduct(m1: &FMachine, m2: &FMachine) -> Result<Coproduct> {
    m1.check_compatible(m2)?;
    let cocone = coproduct(m1.carrier(), m2.carrier())?;
    let (inl, inr) = (&cocone.legs[0], &cocone.legs[1]);
    let left = m1.adjunction().left();
    let fc = left.object(&cocone.apex)?;
    let finl = left.morphism(inl)?;
    let finr = left.morphism(inr)?;
    // origin of each element of F(E+T) in FE + FT
    let mut origin: Vec<Option<(bool, usize)>> = vec![None; fc.len()];
    for (first, fmap) in [(true, &finl), (false, &finr)] {
        for y in 0..fmap.dom().len() {
            let slot = &mut origin[fmap.apply(y)];
            if slot.is_some() {
                return Err(Error::Internal(
                    "F(E+T) ≅ FE+FT fails: images overlap".into(),
                ));
            }
            *slot = Some((first, y));
        }
    }
    let origin = origin
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("F(E+T) ≅ FE+FT fails: not surjective".into()))?;
    let pick = |first: bool| if first { (m1, inl) } else { (m2, inr) };
    let d_table = origin
        .iter()
        .map(|&(first, y)| {
            let (m, inj) = pick(first);
            inj.apply(m.d().apply(y))
        })
        .collect();
    let d = BaseMorphism::new(fc.clone(), cocone.apex.clone(), d_table)?;
    let s = match m1.flavor() {
        Flavor::Mealy => {
            let t = origin.iter().map(|&(first, y)| pick(first).0.s().apply(y)).collect();
            BaseMorphism::new(fc, m1.output().clone(), t)?
        }
        Flavor::Moore => {
            let n = m1.carrier().len();
            let t = (0..cocone.apex.len())
                .map(|k| if k < n { m1.s().apply(k) } else { m2.s().apply(k - n) })
                .collect();
            BaseMorphism::new(cocone.apex.clone(), m1.output().clone(), t)?
        }
    };
    let apex = FMachine::new(
        m1.flavor(),
        m1.adjunction().clone(),
        cocone.apex.clone(),
        m1.output().clone(),
        d,
        s,
    )?;
    Ok(Coproduct {
        inl: MachineMorphism::new(m1.clone(), apex.clone(), inl.clone())?,
        inr: MachineMorphism::new(m2.clone(), apex.clone(), inr.clone())?,
        apex,
    })
}

#[derive(Clone, Debug)]
pub struct Coequalizer {
    pub apex: FMachine,
    pub quotient: MachineMorphism,
}

pub fn machine_coequalizer(h1: &MachineMorphism, h2: &MachineMorphism) -> Result<Coequalizer> {
    check_parallel(h1, h2)?;
    let cocone = coequalizer(h1.map(), h2.map())?;
    let q = cocone.legs[0].clone();
    let apex = induce_on_quotient(h1.dst(), &q)?;
    Ok(Coequalizer {
        quotient: MachineMorphism::new(h1.dst().clone(), apex.clone(), q)?,
        apex,
    })
}

/// The machine on the empty carrier.
pub fn machine_initial(adj: &Adjunction, output: &Obj, flavor: Flavor) -> Result<FMachine> {
    let empty = output.base().initial();
    let fe = adj.left_object(&empty)?;
    if !fe.is_empty() {
        return Err(Error::Internal("F does not preserve the initial object".into()));
    }
    let d = BaseMorphism::new(fe.clone(), empty.clone(), Vec::new())?;
    let s_dom = match flavor {
        Flavor::Mealy => fe,
        Flavor::Moore => empty.clone(),
    };
    let s = BaseMorphism::new(s_dom, output.clone(), Vec::new())?;
    FMachine::new(flavor, adj.clone(), empty, output.clone(), d, s)
}

fn check_parallel(h1: &MachineMorphism, h2: &MachineMorphism) -> Result<()> {
    if h1.src() != h2.src() || h1.dst() != h2.dst() {
        return Err(Error::Diagram("morphisms are not parallel".into()));
    }
    Ok(())
}

/// Restricts `m` to a subobject of its carrier closed under `d`.
fn restrict(m: &FMachine, incl: &BaseMorphism) -> Result<FMachine> {
    let sub = incl.dom().clone();
    let pos: HashMap<usize, usize> = (0..sub.len()).map(|k| (incl.apply(k), k)).collect();
    let left = m.adjunction().left();
    let fincl = left.morphism(incl)?;
    let d_table = (0..fincl.dom().len())
        .map(|x| {
            let next = m.d().apply(fincl.apply(x));
            pos.get(&next).copied().ok_or_else(|| {
                Error::Internal(format!(
                    "d leaves the subobject at {}",
                    fincl.dom().element(x)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let d = BaseMorphism::new(fincl.dom().clone(), sub.clone(), d_table)?;
    let s = match m.flavor() {
        Flavor::Mealy => m.s().after(&fincl)?,
        Flavor::Moore => m.s().after(incl)?,
    };
    FMachine::new(
        m.flavor(),
        m.adjunction().clone(),
        sub,
        m.output().clone(),
        d,
        s,
    )
}

/// Machine on a jointly monic span `E ← P → T` with componentwise dynamics.
fn paired_machine(m1: &FMachine, m2: &FMachine, cone: &Cone) -> Result<FMachine> {
    let left = m1.adjunction().left();
    let (p1, p2) = (&cone.legs[0], &cone.legs[1]);
    let fp1 = left.morphism(p1)?;
    let fp2 = left.morphism(p2)?;
    let index: HashMap<(usize, usize), usize> = (0..cone.apex.len())
        .map(|k| ((p1.apply(k), p2.apply(k)), k))
        .collect();
    let fp = fp1.dom().clone();
    let d_table = (0..fp.len())
        .map(|x| {
            let pair = (m1.d().apply(fp1.apply(x)), m2.d().apply(fp2.apply(x)));
            index.get(&pair).copied().ok_or_else(|| {
                Error::Internal(format!("d_P leaves P at {}", fp.element(x)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let d = BaseMorphism::new(fp.clone(), cone.apex.clone(), d_table)?;
    let s = match m1.flavor() {
        Flavor::Mealy => {
            let s1 = m1.s().after(&fp1)?;
            if s1 != m2.s().after(&fp2)? {
                return Err(Error::Internal("s_E ∘ Fp_E ≠ s_T ∘ Fp_T".into()));
            }
            s1
        }
        Flavor::Moore => {
            let s1 = m1.s().after(p1)?;
            if s1 != m2.s().after(p2)? {
                return Err(Error::Internal("s_E ∘ p_E ≠ s_T ∘ p_T".into()));
            }
            s1
        }
    };
    FMachine::new(
        m1.flavor(),
        m1.adjunction().clone(),
        cone.apex.clone(),
        m1.output().clone(),
        d,
        s,
    )
}

#[derive(Clone, Debug)]
pub struct Product {
    pub apex: FMachine,
    pub left: MachineMorphism,
    pub right: MachineMorphism,
}

/// Binary product: carrier = behavior-equal pairs.
pub fn machine_product(m1: &FMachine, m2: &FMachine) -> Result<Product> {
    m1.check_compatible(m2)?;
    let sum = machine_coproduct(m1, m2)?;
    let p = behavior_partition(&sum.apex)?;
    let full = product(m1.carrier(), m2.carrier())?;
    let members: Vec<usize> = (0..full.apex.len())
        .filter(|&k| {
            let e = sum.inl.map().apply(full.legs[0].apply(k));
            let t = sum.inr.map().apply(full.legs[1].apply(k));
            p.same_block(e, t)
        })
        .collect();
    spanned_product(m1, m2, &full, &members)
}

fn spanned_product(m1: &FMachine, m2: &FMachine, full: &Cone, members: &[usize]) -> Result<Product> {
    let (apex_obj, incl) = subobject(&full.apex, members)?;
    let cone = Cone {
        apex: apex_obj,
        legs: vec![full.legs[0].after(&incl)?, full.legs[1].after(&incl)?],
    };
    let apex = paired_machine(m1, m2, &cone)?;
    Ok(Product {
        left: MachineMorphism::new(apex.clone(), m1.clone(), cone.legs[0].clone())?,
        right: MachineMorphism::new(apex.clone(), m2.clone(), cone.legs[1].clone())?,
        apex,
    })
}

/// `P_n`: pairs whose mates agree at every level up to `n`, as a subobject of `E × T`.
pub fn level_pullback(m1: &FMachine, m2: &FMachine, n: usize) -> Result<Obj> {
    m1.check_compatible(m2)?;
    let start = match m1.flavor() {
        Flavor::Mealy => 1,
        Flavor::Moore => 0,
    };
    let mates = (start..=n)
        .map(|j| Ok((behavior_mate(m1, j)?, behavior_mate(m2, j)?)))
        .collect::<Result<Vec<_>>>()?;
    pairs_where(m1, m2, |e, t| mates.iter().all(|(a, b)| a.apply(e) == b.apply(t)))
}

/// Pairs whose `n`th mates agree (a single level, not cumulative).
pub fn mate_pullback(m1: &FMachine, m2: &FMachine, n: usize) -> Result<Obj> {
    m1.check_compatible(m2)?;
    let (a, b) = (behavior_mate(m1, n)?, behavior_mate(m2, n)?);
    pairs_where(m1, m2, |e, t| a.apply(e) == b.apply(t))
}

fn pairs_where(m1: &FMachine, m2: &FMachine, keep: impl Fn(usize, usize) -> bool) -> Result<Obj> {
    let full = product(m1.carrier(), m2.carrier())?;
    let members: Vec<usize> = (0..full.apex.len())
        .filter(|&k| keep(full.legs[0].apply(k), full.legs[1].apply(k)))
        .collect();
    Ok(subobject(&full.apex, &members)?.0)
}

/// The unique `[u, v] : Z → P`.
pub fn pair_into_product(
    prod: &Product,
    u: &MachineMorphism,
    v: &MachineMorphism,
) -> Result<MachineMorphism> {
    if u.src() != v.src() {
        return Err(Error::Diagram("u and v must share their source".into()));
    }
    if u.dst() != prod.left.dst() || v.dst() != prod.right.dst() {
        return Err(Error::Diagram("u and v must land in the product's factors".into()));
    }
    let cone = Cone {
        apex: prod.apex.carrier().clone(),
        legs: vec![prod.left.map().clone(), prod.right.map().clone()],
    };
    let w = cone
        .mediate(&[u.map().clone(), v.map().clone()])?
        .ok_or_else(|| Error::Internal("⟨u,v⟩ leaves the behavior pullback".into()))?;
    MachineMorphism::new(u.src().clone(), prod.apex.clone(), w)
}

#[derive(Clone, Debug)]
pub struct Equalizer {
    pub apex: FMachine,
    pub inclusion: MachineMorphism,
}

pub fn machine_equalizer(h1: &MachineMorphism, h2: &MachineMorphism) -> Result<Equalizer> {
    check_parallel(h1, h2)?;
    let cone = equalizer(h1.map(), h2.map())?;
    let apex = restrict(h1.src(), &cone.legs[0])?;
    Ok(Equalizer {
        inclusion: MachineMorphism::new(apex.clone(), h1.src().clone(), cone.legs[0].clone())?,
        apex,
    })
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub apex: FMachine,
    pub left: MachineMorphism,
    pub right: MachineMorphism,
}

pub fn machine_pullback(h1: &MachineMorphism, h2: &MachineMorphism) -> Result<Pullback> {
    if h1.dst() != h2.dst() {
        return Err(Error::Diagram("pullback of morphisms with different codomains".into()));
    }
    let cone = pullback(h1.map(), h2.map())?;
    let apex = paired_machine(h1.src(), h2.src(), &cone)?;
    Ok(Pullback {
        left: MachineMorphism::new(apex.clone(), h1.src().clone(), cone.legs[0].clone())?,
        right: MachineMorphism::new(apex.clone(), h2.src().clone(), cone.legs[1].clone())?,
        apex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parity_squared_is_the_diagonal() {
        let p = fixtures::parity();
        let prod = machine_product(&p, &p).unwrap();
        assert_eq!(prod.apex.carrier().elements(), &["(p0,p0)", "(p1,p1)"]);
    }

    #[test]
    fn coproduct_has_four_states() {
        let p = fixtures::parity();
        assert_eq!(machine_coproduct(&p, &p).unwrap().apex.carrier().len(), 4);
    }

    #[test]
    fn constant_moore_squared() {
        let c = fixtures::constant_moore();
        assert_eq!(machine_product(&c, &c).unwrap().apex.carrier().len(), 1);
    }

    #[test]
    fn equalizer_of_equal_pair() {
        let m = fixtures::collapsing();
        let id = MachineMorphism::identity(&m);
        let eq = machine_equalizer(&id, &id).unwrap();
        assert_eq!(eq.apex, m);
    }

    #[test]
    fn initial_machine_is_empty() {
        let m = fixtures::base_change();
        let init = machine_initial(m.adjunction(), m.output(), m.flavor()).unwrap();
        assert!(init.carrier().is_empty());
    }

    #[test]
    fn diagonal_pairing() {
        let p = fixtures::parity();
        let prod = machine_product(&p, &p).unwrap();
        let id = MachineMorphism::identity(&p);
        let w = pair_into_product(&prod, &id, &id).unwrap();
        assert_eq!(w.map().apply_name("p1").unwrap(), "(p1,p1)");
    }
}
