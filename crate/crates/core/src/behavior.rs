//! Skip maps, their mates, and behavioral equivalence.
//!
//! The behavior of a state is the family of mates `s̄_n : E → RⁿO`. Its
//! kernel is computed by partition refinement on the coalgebra
//! `E → O × RE` (Moore) or `E → RO × RE` (Mealy): start from the kernel of
//! the output part and split blocks by `R(q) ∘ d̄` where `q` is the current
//! quotient map, until nothing splits.
//!
//! Truncations of the terminal carrier carry a `d`-leg into the next-shorter
//! truncation only; the untruncated structure map needs `R` to preserve
//! countable products and is never materialized.

use crate::adjunction::Adjunction;
use crate::base::{compose, product_many, quotient, BaseMorphism, Obj, Partition};
use crate::error::{Error, Result};
use crate::functor::decode_digits;
use crate::limits::machine_coproduct;
use crate::machine::{coalgebra_form, induce_on_quotient, FMachine, Flavor, MachineMorphism};

fn first_level(flavor: Flavor) -> usize {
    match flavor {
        Flavor::Mealy => 1,
        Flavor::Moore => 0,
    }
}

/// The `n`th skip map `FⁿE → O`: `s ∘ Fd ∘ … ∘ Fⁿ⁻¹d` for Mealy machines
/// (`n ≥ 1`), `s ∘ d ∘ Fd ∘ … ∘ Fⁿ⁻¹d` for Moore machines (`n ≥ 0`).
pub fn skip_map(m: &FMachine, n: usize) -> Result<BaseMorphism> {
    let start = first_level(m.flavor());
    if n < start {
        return Err(Error::Domain(format!(
            "{} skip maps start at n = {start}",
            m.flavor()
        )));
    }
    let left = m.adjunction().left();
    let mut skip = m.s().clone();
    // F^k d, starting from k = 0
    let mut lifted = m.d().clone();
    let mut k = 0;
    if m.flavor() == Flavor::Mealy {
        lifted = left.morphism(&lifted)?;
        k = 1;
    }
    while k < n {
        skip = compose(&skip, &lifted)?;
        k += 1;
        if k < n {
            lifted = left.morphism(&lifted)?;
        }
    }
    Ok(skip)
}

/// `s̄_n : E → RⁿO`, the mate of the `n`th skip map (`s̄₀ = s` for Moore).
pub fn behavior_mate(m: &FMachine, n: usize) -> Result<BaseMorphism> {
    let skip = skip_map(m, n)?;
    if n == 0 {
        return Ok(skip);
    }
    m.adjunction().iterate(n)?.transpose(m.carrier(), &skip)
}

/// Mates of a machine up to a fixed depth.
#[derive(Clone, Debug)]
pub struct TruncatedBehavior {
    pub machine: FMachine,
    pub depth: usize,
    /// The `n` of each mate: `0..=depth` (Moore) or `1..=depth` (Mealy).
    pub levels: Vec<usize>,
    pub mates: Vec<BaseMorphism>,
}

pub fn truncated_behavior(m: &FMachine, depth: usize) -> Result<TruncatedBehavior> {
    let start = first_level(m.flavor());
    if depth < start {
        return Err(Error::Domain(format!(
            "{} behavior needs depth ≥ {start}",
            m.flavor()
        )));
    }
    let levels: Vec<usize> = (start..=depth).collect();
    let mates = levels
        .iter()
        .map(|&n| behavior_mate(m, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedBehavior {
        machine: m.clone(),
        depth,
        levels,
        mates,
    })
}

/// Reads `s̄_n(e)` of a classical machine as a function on length-`n` words.
/// Words are listed lexicographically, first letter most significant.
pub fn mate_on_words(m: &FMachine, n: usize, state: usize) -> Result<Vec<(Vec<String>, String)>> {
    let Some(input) = m.classical_input() else {
        return Err(Error::Domain("word reading needs a classical machine".into()));
    };
    let mate = behavior_mate(m, n)?;
    let (k, o) = (input.len(), m.output().len());
    // |R^j O| = |O|^(k^j)
    let mut sizes = vec![o];
    for j in 1..n {
        let prev = sizes[j - 1];
        let s = crate::guard::checked_power(prev, k)
            .filter(|&s| s <= usize::MAX as u128)
            .ok_or_else(|| Error::ObjectTooLarge {
                what: format!("R^{j}O"),
                size: "overflow".into(),
                bound: crate::guard::object_bound(),
            })?;
        sizes.push(s as usize);
    }
    let mut frontier = vec![(Vec::<usize>::new(), mate.apply(state))];
    for depth in (0..n).rev() {
        let mut next = Vec::with_capacity(frontier.len() * k);
        for (word, v) in frontier {
            for (i, d) in decode_digits(v, sizes[depth], k).into_iter().enumerate() {
                let mut w = word.clone();
                w.push(i);
                next.push((w, d));
            }
        }
        frontier = next;
    }
    Ok(frontier
        .into_iter()
        .map(|(w, out)| {
            (
                w.into_iter().map(|i| input.element(i).to_string()).collect(),
                m.output().element(out).to_string(),
            )
        })
        .collect())
}

/// The refinement sequence: `levels[j]` is the kernel of `(s̄_first, …, s̄_{first+j})`.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub first_level: usize,
    pub levels: Vec<Partition>,
}

impl Refinement {
    pub fn stable(&self) -> &Partition {
        self.levels.last().expect("at least one level")
    }

    /// Refinement steps taken, including the one that confirmed stability.
    pub fn rounds(&self) -> usize {
        self.levels.len() - 1
    }

    /// Smallest `n` whose cumulative kernel equals the stable partition.
    pub fn stabilization_depth(&self) -> usize {
        let stable = self.stable();
        let j = self
            .levels
            .iter()
            .position(|p| p.num_blocks() == stable.num_blocks())
            .expect("stable level present");
        self.first_level + j
    }
}

pub fn refine(m: &FMachine) -> Result<Refinement> {
    let form = coalgebra_form(m)?;
    let initial = match &form.output_mate {
        Some(mate) => Partition::kernel(mate),
        None => Partition::kernel(m.s()),
    };
    let mut levels = vec![initial.clone()];
    if m.carrier().is_empty() {
        return Ok(Refinement {
            first_level: first_level(m.flavor()),
            levels,
        });
    }
    let right = m.adjunction().right();
    loop {
        let current = levels.last().expect("nonempty");
        let q = quotient(current)?.legs.remove(0);
        let rq = right.morphism(&q)?;
        let step = compose(&rq, &form.dynamics)?;
        let next = Partition::from_keys(m.carrier(), |e| (initial.block_of(e), step.apply(e)));
        let done = next.num_blocks() == current.num_blocks();
        levels.push(next);
        if done {
            break;
        }
    }
    Ok(Refinement {
        first_level: first_level(m.flavor()),
        levels,
    })
}

/// The kernel of `s̄_∞`: states identified iff all their mates agree.
pub fn behavior_partition(m: &FMachine) -> Result<Partition> {
    Ok(refine(m)?.stable().clone())
}

#[derive(Clone, Debug)]
pub struct Minimized {
    pub machine: FMachine,
    pub quotient: MachineMorphism,
}

/// Quotient by behavioral equivalence; carrier elements are block representatives.
pub fn minimize(m: &FMachine) -> Result<Minimized> {
    let p = behavior_partition(m)?;
    let q = quotient(&p)?.legs.remove(0);
    let machine = induce_on_quotient(m, &q)?;
    let quotient = MachineMorphism::new(m.clone(), machine.clone(), q)?;
    Ok(Minimized { machine, quotient })
}

/// Whether `e1` of `m1` and `e2` of `m2` have the same behavior.
pub fn equivalent(m1: &FMachine, m2: &FMachine, e1: &str, e2: &str) -> Result<bool> {
    m1.check_compatible(m2)?;
    let (i1, i2) = (m1.state(e1)?, m2.state(e2)?);
    let sum = machine_coproduct(m1, m2)?;
    let p = behavior_partition(&sum.apex)?;
    Ok(p.same_block(sum.inl.map().apply(i1), sum.inr.map().apply(i2)))
}

/// A finite truncation of the terminal machine's carrier `∏ RⁿO`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub flavor: Flavor,
    pub levels: Vec<usize>,
    pub factors: Vec<Obj>,
    pub apex: Obj,
    /// `F O_{≤N} → O` (Mealy) or `O_{≤N} → O` (Moore).
    pub s_leg: BaseMorphism,
    /// `F O_{≤N} → O_{≤N-1}`; one level is consumed.
    pub d_leg: BaseMorphism,
}

pub fn terminal_truncation(
    adj: &Adjunction,
    output: &Obj,
    depth: usize,
    flavor: Flavor,
) -> Result<Truncation> {
    let start = first_level(flavor);
    if depth < start {
        return Err(Error::Domain(format!("{flavor} truncation needs N ≥ {start}")));
    }
    let right = adj.right();
    let left = adj.left();
    let base = output.base();
    let mut powers = vec![output.clone()];
    for n in 1..=depth {
        let next = right.object(&powers[n - 1]).map_err(|e| match e {
            Error::ObjectTooLarge { size, bound, .. } => Error::ObjectTooLarge {
                what: format!("R^{n}O"),
                size,
                bound,
            },
            other => other,
        })?;
        powers.push(next);
    }
    let levels: Vec<usize> = (start..=depth).collect();
    let factors: Vec<Obj> = levels.iter().map(|&n| powers[n].clone()).collect();
    let cone = product_many(&base, &factors)?;
    let apex = cone.apex.clone();

    let s_leg = match flavor {
        Flavor::Moore => cone.legs[0].clone(),
        Flavor::Mealy => compose(&adj.counit(output)?, &left.morphism(&cone.legs[0])?)?,
    };

    // O_{≤N} → ∏_{n>first} RⁿO ≅ R(O_{≤N-1}) → counit
    let target = product_many(&base, &factors[..factors.len() - 1])?;
    let r_target = right.object(&target.apex)?;
    let rest = product_many(&base, &factors[1..])?;
    let shift = if rest.legs.is_empty() {
        constant_map(&apex, &rest.apex)?
    } else {
        rest.mediate(&cone.legs[1..])?
            .ok_or_else(|| Error::Internal("projection onto the tail failed".into()))?
    };
    let comparison = if rest.legs.is_empty() {
        constant_map(&r_target, &rest.apex)?
    } else {
        let maps = target
            .legs
            .iter()
            .map(|l| right.morphism(l))
            .collect::<Result<Vec<_>>>()?;
        rest.mediate(&maps)?
            .ok_or_else(|| Error::Internal("R does not preserve the product".into()))?
    };
    let inverse = invert(&comparison)?;
    let into_r = compose(&inverse, &shift)?;
    let d_leg = compose(&adj.counit(&target.apex)?, &left.morphism(&into_r)?)?;
    Ok(Truncation {
        flavor,
        levels,
        factors,
        apex,
        s_leg,
        d_leg,
    })
}

fn constant_map(dom: &Obj, point: &Obj) -> Result<BaseMorphism> {
    if point.len() != 1 {
        return Err(Error::Internal("expected a one-element object".into()));
    }
    BaseMorphism::new(dom.clone(), point.clone(), vec![0; dom.len()])
}

fn invert(f: &BaseMorphism) -> Result<BaseMorphism> {
    if !(f.is_injective() && f.is_surjective()) {
        return Err(Error::Internal(
            "comparison map R(∏) → ∏R is not a bijection".into(),
        ));
    }
    let mut table = vec![0; f.cod().len()];
    for x in 0..f.dom().len() {
        table[f.apply(x)] = x;
    }
    BaseMorphism::new(f.cod().clone(), f.dom().clone(), table)
}
