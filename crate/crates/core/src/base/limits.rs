//! Finite limits and colimits in finite sets and finite M-sets.

use std::collections::HashMap;

use super::morphism::BaseMorphism;
use super::object::{Base, Obj};
use super::partition::Partition;
use crate::error::{Error, Result};
use crate::guard;

/// A limit cone: apex plus jointly injective legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: Obj,
    pub legs: Vec<BaseMorphism>,
}

/// A colimit cocone: apex plus jointly surjective legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocone {
    pub apex: Obj,
    pub legs: Vec<BaseMorphism>,
}

#[derive(Clone, Debug)]
pub enum LimitDiagram {
    Product(Obj, Obj),
    Equalizer(BaseMorphism, BaseMorphism),
    Pullback(BaseMorphism, BaseMorphism),
    Terminal(Base),
}

#[derive(Clone, Debug)]
pub enum ColimitDiagram {
    Coproduct(Obj, Obj),
    Coequalizer(BaseMorphism, BaseMorphism),
    Initial(Base),
    Quotient(Partition),
}

pub fn base_limit(diagram: &LimitDiagram) -> Result<Cone> {
    match diagram {
        LimitDiagram::Product(a, b) => product(a, b),
        LimitDiagram::Equalizer(f, g) => equalizer(f, g),
        LimitDiagram::Pullback(f, g) => pullback(f, g),
        LimitDiagram::Terminal(base) => Ok(terminal(base)),
    }
}

pub fn base_colimit(diagram: &ColimitDiagram) -> Result<Cocone> {
    match diagram {
        ColimitDiagram::Coproduct(a, b) => coproduct(a, b),
        ColimitDiagram::Coequalizer(f, g) => coequalizer(f, g),
        ColimitDiagram::Initial(base) => Ok(initial(base)),
        ColimitDiagram::Quotient(p) => quotient(p),
    }
}

fn same_base(objects: &[&Obj]) -> Result<Base> {
    let base = objects
        .first()
        .map(|o| o.base())
        .unwrap_or(Base::Sets);
    if let Some(o) = objects.iter().find(|o| o.base() != base) {
        return Err(Error::Diagram(format!(
            "{o} does not live in the same base category as {}",
            objects[0]
        )));
    }
    Ok(base)
}

pub fn pair_name(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

fn tuple_name(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

pub fn terminal(base: &Base) -> Cone {
    Cone {
        apex: base.terminal(),
        legs: Vec::new(),
    }
}

pub fn initial(base: &Base) -> Cocone {
    Cocone {
        apex: base.initial(),
        legs: Vec::new(),
    }
}

/// Binary product; elements `(x,y)` in lexicographic order with pointwise action.
pub fn product(a: &Obj, b: &Obj) -> Result<Cone> {
    let base = same_base(&[a, b])?;
    product_many(&base, &[a.clone(), b.clone()])
}

/// Finite product. The empty product is terminal, a single factor is returned
/// unchanged with its identity leg, larger families use tuple names.
pub fn product_many(base: &Base, factors: &[Obj]) -> Result<Cone> {
    match factors {
        [] => return Ok(terminal(base)),
        [only] => {
            same_base(&[only]).and_then(|b| {
                if &b == base {
                    Ok(())
                } else {
                    Err(Error::Diagram(format!("{only} is not in the requested base")))
                }
            })?;
            return Ok(Cone {
                apex: only.clone(),
                legs: vec![BaseMorphism::identity(only)],
            });
        }
        _ => {}
    }
    let refs: Vec<&Obj> = factors.iter().collect();
    if &same_base(&refs)? != base {
        return Err(Error::Diagram("product factors are not in the requested base".into()));
    }
    let size = factors
        .iter()
        .try_fold(1u128, |acc, f| acc.checked_mul(f.len() as u128));
    let total = guard::check_object(|| "product".into(), size)?;
    let mut elements = Vec::with_capacity(total);
    let mut coords = Vec::with_capacity(total);
    let mut digits = vec![0usize; factors.len()];
    for _ in 0..total {
        let names: Vec<&str> = digits
            .iter()
            .zip(factors)
            .map(|(&d, f)| f.element(d))
            .collect();
        elements.push(tuple_name(&names));
        coords.push(digits.clone());
        for k in (0..factors.len()).rev() {
            digits[k] += 1;
            if digits[k] < factors[k].len() {
                break;
            }
            digits[k] = 0;
        }
    }
    let index = |ds: &[usize]| {
        ds.iter()
            .zip(factors)
            .fold(0usize, |acc, (&d, f)| acc * f.len() + d)
    };
    let apex = base.object(elements, |g, p| {
        let moved: Vec<usize> = coords[p]
            .iter()
            .zip(factors)
            .map(|(&d, f)| f.act(g, d))
            .collect();
        index(&moved)
    })?;
    let legs = (0..factors.len())
        .map(|k| {
            BaseMorphism::new_unchecked(
                apex.clone(),
                factors[k].clone(),
                coords.iter().map(|c| c[k]).collect(),
            )
        })
        .collect();
    Ok(Cone { apex, legs })
}

/// Sub-object on the given indices, reusing parent names.
pub fn subobject(parent: &Obj, members: &[usize]) -> Result<(Obj, BaseMorphism)> {
    let elements = members.iter().map(|&i| parent.element(i).to_string()).collect();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let base = parent.base();
    let closed = std::cell::Cell::new(true);
    let apex = base.object(elements, |g, k| match pos.get(&parent.act(g, members[k])) {
        Some(&j) => j,
        None => {
            closed.set(false);
            0
        }
    });
    if !closed.get() {
        return Err(Error::Diagram(format!(
            "subset of {parent} is not closed under the action"
        )));
    }
    let apex = apex?;
    let incl = BaseMorphism::new_unchecked(apex.clone(), parent.clone(), members.to_vec());
    Ok((apex, incl))
}

pub fn equalizer(f: &BaseMorphism, g: &BaseMorphism) -> Result<Cone> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::Diagram("equalizer of a non-parallel pair".into()));
    }
    let members: Vec<usize> = (0..f.dom().len())
        .filter(|&x| f.apply(x) == g.apply(x))
        .collect();
    let (apex, incl) = subobject(f.dom(), &members)?;
    Ok(Cone {
        apex,
        legs: vec![incl],
    })
}

/// Pullback `{(x,y) : f(x) = g(y)}` with pair names.
pub fn pullback(f: &BaseMorphism, g: &BaseMorphism) -> Result<Cone> {
    if f.cod() != g.cod() {
        return Err(Error::Diagram("pullback of maps with different codomains".into()));
    }
    let prod = product(f.dom(), g.dom())?;
    let members: Vec<usize> = (0..prod.apex.len())
        .filter(|&p| f.apply(prod.legs[0].apply(p)) == g.apply(prod.legs[1].apply(p)))
        .collect();
    let (apex, incl) = subobject(&prod.apex, &members)?;
    let legs = prod
        .legs
        .iter()
        .map(|l| l.after(&incl))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cone { apex, legs })
}

pub fn inl_name(x: &str) -> String {
    format!("inl({x})")
}

pub fn inr_name(y: &str) -> String {
    format!("inr({y})")
}

/// Tagged disjoint union: all `inl(x)` then all `inr(y)`.
pub fn coproduct(a: &Obj, b: &Obj) -> Result<Cocone> {
    let base = same_base(&[a, b])?;
    let elements = a
        .elements()
        .iter()
        .map(|x| inl_name(x))
        .chain(b.elements().iter().map(|y| inr_name(y)))
        .collect();
    let n = a.len();
    let apex = base.object(elements, |g, k| {
        if k < n {
            a.act(g, k)
        } else {
            n + b.act(g, k - n)
        }
    })?;
    let inl = BaseMorphism::new_unchecked(a.clone(), apex.clone(), (0..n).collect());
    let inr = BaseMorphism::new_unchecked(b.clone(), apex.clone(), (n..n + b.len()).collect());
    Ok(Cocone {
        apex,
        legs: vec![inl, inr],
    })
}

/// Quotient by the equivalence generated by `f(x) ~ g(x)`.
pub fn coequalizer(f: &BaseMorphism, g: &BaseMorphism) -> Result<Cocone> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::Diagram("coequalizer of a non-parallel pair".into()));
    }
    let roots = union_find_classes(
        f.cod().len(),
        (0..f.dom().len()).map(|x| (f.apply(x), g.apply(x))),
    );
    let p = Partition::from_keys(f.cod(), |y| roots[y]);
    quotient(&p)
}

/// Quotient by a partition; apex elements are the representatives' names.
pub fn quotient(p: &Partition) -> Result<Cocone> {
    if !p.is_congruence() {
        return Err(Error::Diagram(
            "partition is not closed under the action".into(),
        ));
    }
    let carrier = p.carrier();
    let reps = p.representatives();
    let pos: HashMap<usize, usize> = reps.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let elements = reps.iter().map(|&r| carrier.element(r).to_string()).collect();
    let apex = carrier
        .base()
        .object(elements, |g, k| pos[&p.block_of(carrier.act(g, reps[k]))])?;
    let leg = BaseMorphism::new_unchecked(
        carrier.clone(),
        apex.clone(),
        (0..carrier.len()).map(|x| pos[&p.block_of(x)]).collect(),
    );
    Ok(Cocone {
        apex,
        legs: vec![leg],
    })
}

impl Cone {
    /// The unique `z -> apex` whose composites with the legs are `maps`, if any.
    pub fn mediate(&self, maps: &[BaseMorphism]) -> Result<Option<BaseMorphism>> {
        if maps.len() != self.legs.len() {
            return Err(Error::Diagram(format!(
                "{} maps offered to a cone with {} legs",
                maps.len(),
                self.legs.len()
            )));
        }
        let z = match maps.first() {
            Some(m) => m.dom().clone(),
            None => return Err(Error::Diagram("mediate needs at least one leg".into())),
        };
        for (m, l) in maps.iter().zip(&self.legs) {
            if m.dom() != &z || m.cod() != l.cod() {
                return Err(Error::Diagram("competitor maps do not match the cone".into()));
            }
        }
        let index: HashMap<Vec<usize>, usize> = (0..self.apex.len())
            .map(|p| (self.legs.iter().map(|l| l.apply(p)).collect(), p))
            .collect();
        let mut table = Vec::with_capacity(z.len());
        for x in 0..z.len() {
            let key: Vec<usize> = maps.iter().map(|m| m.apply(x)).collect();
            match index.get(&key) {
                Some(&p) => table.push(p),
                None => return Ok(None),
            }
        }
        BaseMorphism::new(z, self.apex.clone(), table).map(Some)
    }
}

impl Cocone {
    /// The unique `apex -> z` whose precomposites with the legs are `maps`, if any.
    pub fn mediate(&self, target: &Obj, maps: &[BaseMorphism]) -> Result<Option<BaseMorphism>> {
        if maps.len() != self.legs.len() {
            return Err(Error::Diagram(format!(
                "{} maps offered to a cocone with {} legs",
                maps.len(),
                self.legs.len()
            )));
        }
        let mut table: Vec<Option<usize>> = vec![None; self.apex.len()];
        for (m, l) in maps.iter().zip(&self.legs) {
            if m.dom() != l.dom() || m.cod() != target {
                return Err(Error::Diagram("competitor maps do not match the cocone".into()));
            }
            for x in 0..l.dom().len() {
                let slot = &mut table[l.apply(x)];
                match *slot {
                    Some(v) if v != m.apply(x) => return Ok(None),
                    _ => *slot = Some(m.apply(x)),
                }
            }
        }
        let Some(table) = table.into_iter().collect::<Option<Vec<_>>>() else {
            return Err(Error::Internal("cocone legs are not jointly surjective".into()));
        };
        match BaseMorphism::new(self.apex.clone(), target.clone(), table) {
            Ok(f) => Ok(Some(f)),
            Err(Error::Validation(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Keeps the smaller index as root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

pub(crate) fn union_find_classes(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for (a, b) in pairs {
        uf.union(a, b);
    }
    (0..n).map(|x| uf.find(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{BaseObject, FiniteMonoid};

    fn set(n: usize) -> Obj {
        BaseObject::set((0..n).map(|i| i.to_string()).collect()).unwrap()
    }

    #[test]
    fn cardinalities() {
        assert_eq!(product(&set(2), &set(3)).unwrap().apex.len(), 6);
        assert_eq!(coproduct(&set(2), &set(3)).unwrap().apex.len(), 5);
        assert_eq!(terminal(&Base::Sets).apex.len(), 1);
        assert_eq!(initial(&Base::Sets).apex.len(), 0);
    }

    #[test]
    fn product_names_are_pairs() {
        let a = BaseObject::set_of(&["a", "b"]);
        let c = product(&a, &set(2)).unwrap();
        assert_eq!(c.apex.elements(), &["(a,0)", "(a,1)", "(b,0)", "(b,1)"]);
    }

    #[test]
    fn equalizer_of_equal_pair_is_everything() {
        let x = set(3);
        let f = BaseMorphism::new(x.clone(), set(2), vec![0, 1, 1]).unwrap();
        let c = equalizer(&f, &f).unwrap();
        assert_eq!(*c.apex, *x);
        assert_eq!(c.legs[0], BaseMorphism::identity(&x));
    }

    #[test]
    fn disjoint_constant_pullback_is_empty() {
        let bits = set(2);
        let one = set(1);
        let f = BaseMorphism::new(one.clone(), bits.clone(), vec![0]).unwrap();
        let g = BaseMorphism::new(one, bits, vec![1]).unwrap();
        assert!(pullback(&f, &g).unwrap().apex.is_empty());
    }

    #[test]
    fn quotient_and_coequalizer() {
        let x = set(4);
        let p = Partition::indiscrete(&x);
        assert_eq!(quotient(&p).unwrap().apex.len(), 1);
        let id = BaseMorphism::identity(&x);
        let c = coequalizer(&id, &id).unwrap();
        assert_eq!(*c.apex, *x);
    }

    #[test]
    fn product_of_msets_acts_pointwise() {
        let z2 = FiniteMonoid::cyclic(2);
        let reg = BaseObject::mset(vec!["x".into(), "y".into()], z2.clone(), vec![0, 1, 1, 0]).unwrap();
        let c = product(&reg, &reg).unwrap();
        let xy = c.apex.index_of("(x,y)").unwrap();
        assert_eq!(c.apex.element(c.apex.act(1, xy)), "(y,x)");
        assert!(product(&reg, &set(2)).is_err());
    }

    #[test]
    fn non_congruence_quotient_rejected() {
        let z2 = FiniteMonoid::cyclic(2);
        // two free orbits {a,b}, {c,d}; glue a with c only
        let obj = BaseObject::mset(
            ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
            z2,
            vec![0, 1, 2, 3, 1, 0, 3, 2],
        )
        .unwrap();
        let p = Partition::from_labels(&obj, &[0, 1, 0, 3]).unwrap();
        assert!(matches!(quotient(&p), Err(Error::Diagram(_))));
    }
}
