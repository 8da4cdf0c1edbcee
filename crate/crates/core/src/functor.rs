//! Functors between the finite base categories, computed on tables.
//!
//! Element encodings:
//! - `X × I`: `(x,i)`, lexicographic.
//! - `X^I`: `{i0:x,i1:y,...}`, lexicographic in the table with the first
//!   input most significant.
//! - restriction `f*Y`: the names of `Y`.
//! - induction `f_!X`: `[n,x]` for the least pair of each class.
//! - coinduction `f_*X`: `{n0:x,...}` over the equivariant tables, lexicographic.

use std::collections::HashMap;

use crate::base::{product, union_find_classes, Base, BaseMorphism, MonoidHom, Obj};
use crate::error::{Error, Result};
use crate::guard;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functor {
    Identity,
    /// `X ↦ X × I` on plain sets.
    ProductWith(Obj),
    /// `X ↦ X^I` on plain sets.
    ExponentialBy(Obj),
    /// `f* : N-Set → M-Set`.
    Restrict(MonoidHom),
    /// `f_! : M-Set → N-Set`, `X ↦ (N × X)/~`.
    Induce(MonoidHom),
    /// `f_* : M-Set → N-Set`, `X ↦ M-Set(N, X)`.
    Coinduce(MonoidHom),
    /// Composite, applied left to right.
    Sequence(Vec<Functor>),
}

impl Functor {
    pub fn then(self, next: Functor) -> Functor {
        let mut parts = match self {
            Functor::Sequence(p) => p,
            Functor::Identity => Vec::new(),
            f => vec![f],
        };
        match next {
            Functor::Sequence(p) => parts.extend(p),
            Functor::Identity => {}
            f => parts.push(f),
        }
        match parts.len() {
            0 => Functor::Identity,
            1 => parts.pop().expect("one part"),
            _ => Functor::Sequence(parts),
        }
    }

    pub fn object(&self, x: &Obj) -> Result<Obj> {
        match self {
            Functor::Identity => Ok(x.clone()),
            Functor::ProductWith(i) => {
                require_plain(x, "– × I")?;
                guard::check_object(
                    || format!("{x} × {i}"),
                    (x.len() as u128).checked_mul(i.len() as u128),
                )?;
                Ok(product(x, i)?.apex)
            }
            Functor::ExponentialBy(i) => {
                require_plain(x, "(–)^I")?;
                exponential(x, i)
            }
            Functor::Restrict(f) => {
                require_monoid(x, f.cod(), "f*")?;
                Base::MSets(f.dom().clone()).object(x.elements().to_vec(), |m, y| {
                    x.act(f.apply(m), y)
                })
            }
            Functor::Induce(f) => Ok(Induced::build(f, x)?.object),
            Functor::Coinduce(f) => Ok(Coinduced::build(f, x)?.object),
            Functor::Sequence(parts) => parts.iter().try_fold(x.clone(), |acc, p| p.object(&acc)),
        }
    }

    pub fn morphism(&self, g: &BaseMorphism) -> Result<BaseMorphism> {
        match self {
            Functor::Identity => Ok(g.clone()),
            Functor::ProductWith(i) => {
                let dom = self.object(g.dom())?;
                let cod = self.object(g.cod())?;
                let k = i.len();
                Ok(BaseMorphism::new_unchecked(
                    dom.clone(),
                    cod,
                    (0..dom.len()).map(|p| g.apply(p / k) * k + p % k).collect(),
                ))
            }
            Functor::ExponentialBy(i) => {
                let dom = self.object(g.dom())?;
                let cod = self.object(g.cod())?;
                let (src, dst) = (g.dom().len(), g.cod().len());
                let table = (0..dom.len())
                    .map(|h| {
                        let digits: Vec<usize> =
                            decode_digits(h, src, i.len()).into_iter().map(|d| g.apply(d)).collect();
                        encode_digits(&digits, dst)
                    })
                    .collect();
                Ok(BaseMorphism::new_unchecked(dom, cod, table))
            }
            Functor::Restrict(_) => {
                let dom = self.object(g.dom())?;
                let cod = self.object(g.cod())?;
                BaseMorphism::new(dom, cod, g.table().to_vec())
            }
            Functor::Induce(f) => {
                let src = Induced::build(f, g.dom())?;
                let dst = Induced::build(f, g.cod())?;
                let table = src
                    .reps
                    .iter()
                    .map(|&(n, x)| dst.class(n, g.apply(x)))
                    .collect();
                BaseMorphism::new(src.object, dst.object, table)
            }
            Functor::Coinduce(f) => {
                let src = Coinduced::build(f, g.dom())?;
                let dst = Coinduced::build(f, g.cod())?;
                let table = src
                    .tables
                    .iter()
                    .map(|h| {
                        let image: Vec<usize> = h.iter().map(|&x| g.apply(x)).collect();
                        dst.lookup(&image)
                    })
                    .collect::<Result<Vec<_>>>()?;
                BaseMorphism::new(src.object, dst.object, table)
            }
            Functor::Sequence(parts) => parts.iter().try_fold(g.clone(), |acc, p| p.morphism(&acc)),
        }
    }
}

fn require_plain(x: &Obj, what: &str) -> Result<()> {
    if x.is_plain() {
        Ok(())
    } else {
        Err(Error::Incompatible(format!(
            "{what} is defined on plain finite sets, got {x}"
        )))
    }
}

fn require_monoid(x: &Obj, m: &std::sync::Arc<crate::base::FiniteMonoid>, what: &str) -> Result<()> {
    if x.monoid() == Some(m) {
        Ok(())
    } else {
        Err(Error::Incompatible(format!(
            "{what} expects an object with a {m:?}-action, got {x}"
        )))
    }
}

pub(crate) fn encode_digits(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

pub(crate) fn decode_digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for k in (0..len).rev() {
        digits[k] = index % base.max(1);
        index /= base.max(1);
    }
    digits
}

fn table_name(keys: &[String], values: impl Iterator<Item = String>) -> String {
    let body: Vec<String> = keys
        .iter()
        .zip(values)
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    format!("{{{}}}", body.join(","))
}

/// `X^I` as a plain set.
pub fn exponential(x: &Obj, i: &Obj) -> Result<Obj> {
    let size = guard::check_object(
        || format!("{x}^{i}"),
        guard::checked_power(x.len(), i.len()),
    )?;
    let elements = (0..size)
        .map(|h| {
            let digits = decode_digits(h, x.len(), i.len());
            table_name(i.elements(), digits.iter().map(|&d| x.element(d).to_string()))
        })
        .collect();
    crate::base::BaseObject::set(elements)
}

/// `f_!X` with the class structure needed by transposes.
pub(crate) struct Induced {
    pub object: Obj,
    /// Least `(n, x)` of each class, in object order.
    pub reps: Vec<(usize, usize)>,
    class_of: Vec<usize>,
    width: usize,
}

impl Induced {
    pub fn build(f: &MonoidHom, x: &Obj) -> Result<Self> {
        require_monoid(x, f.dom(), "f_!")?;
        let (m, n) = (f.dom(), f.cod());
        let width = x.len();
        let size = guard::check_object(
            || format!("N × {x}"),
            (n.len() as u128).checked_mul(width as u128),
        )?;
        let idx = |a: usize, y: usize| a * width + y;
        let mut pairs = Vec::new();
        for a in 0..n.len() {
            for g in 0..m.len() {
                for y in 0..width {
                    pairs.push((idx(n.mul(a, f.apply(g)), y), idx(a, x.act(g, y))));
                }
            }
        }
        let roots = union_find_classes(size, pairs);
        let mut rep_pos: HashMap<usize, usize> = HashMap::new();
        let mut reps = Vec::new();
        for (p, &root) in roots.iter().enumerate() {
            if root == p {
                rep_pos.insert(p, reps.len());
                reps.push((p / width.max(1), p % width.max(1)));
            }
        }
        let class_of: Vec<usize> = roots.iter().map(|r| rep_pos[r]).collect();
        let elements = reps
            .iter()
            .map(|&(a, y)| format!("[{},{}]", n.element(a), x.element(y)))
            .collect();
        let object = Base::MSets(n.clone()).object(elements, |b, k| {
            let (a, y) = reps[k];
            class_of[idx(n.mul(b, a), y)]
        })?;
        Ok(Induced {
            object,
            reps,
            class_of,
            width,
        })
    }

    /// Index of the class of `(n, x)`.
    pub fn class(&self, n: usize, x: usize) -> usize {
        self.class_of[n * self.width + x]
    }
}

/// `f_*X` with its equivariant tables.
pub(crate) struct Coinduced {
    pub object: Obj,
    pub tables: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl Coinduced {
    pub fn build(f: &MonoidHom, x: &Obj) -> Result<Self> {
        require_monoid(x, f.dom(), "f_*")?;
        let (m, n) = (f.dom(), f.cod());
        let total = guard::check_enumeration(
            guard::checked_power(x.len(), n.len()),
            guard::enumeration_bound(),
        )?;
        let mut tables = Vec::new();
        for k in 0..total {
            let h = decode_digits(k, x.len(), n.len());
            let equivariant = (0..m.len()).all(|g| {
                (0..n.len()).all(|a| h[n.mul(f.apply(g), a)] == x.act(g, h[a]))
            });
            if equivariant {
                tables.push(h);
            }
        }
        guard::check_object(|| format!("f_*{x}"), Some(tables.len() as u128))?;
        let lookup: HashMap<Vec<usize>, usize> =
            tables.iter().enumerate().map(|(k, h)| (h.clone(), k)).collect();
        let elements = tables
            .iter()
            .map(|h| table_name(n.elements(), h.iter().map(|&y| x.element(y).to_string())))
            .collect();
        let object = Base::MSets(n.clone()).object(elements, |b, k| {
            let moved: Vec<usize> = (0..n.len()).map(|a| tables[k][n.mul(a, b)]).collect();
            lookup[&moved]
        })?;
        Ok(Coinduced {
            object,
            tables,
            lookup,
        })
    }

    pub fn lookup(&self, table: &[usize]) -> Result<usize> {
        self.lookup.get(table).copied().ok_or_else(|| {
            Error::Internal("map is not equivariant where coinduction requires it".into())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{compose, enumerate_hom, BaseObject, FiniteMonoid};

    fn set(n: usize) -> Obj {
        BaseObject::set((0..n).map(|i| format!("x{i}")).collect()).unwrap()
    }

    #[test]
    fn exponential_encoding() {
        let o = BaseObject::set_of(&["a", "b"]);
        let i = BaseObject::set_of(&["0", "1"]);
        let e = exponential(&o, &i).unwrap();
        assert_eq!(e.elements(), &["{0:a,1:a}", "{0:a,1:b}", "{0:b,1:a}", "{0:b,1:b}"]);
        let empty = BaseObject::set_of(&[]);
        assert_eq!(exponential(&o, &empty).unwrap().elements(), &["{}"]);
    }

    #[test]
    fn trivial_to_z2_base_change_sizes() {
        let f = MonoidHom::from_trivial(FiniteMonoid::cyclic(2));
        let triv = Base::MSets(f.dom().clone());
        let x = triv.object(vec!["a".into(), "b".into()], |_, y| y).unwrap();
        assert_eq!(Functor::Induce(f.clone()).object(&x).unwrap().len(), 4);
        assert_eq!(Functor::Coinduce(f).object(&x).unwrap().len(), 4);
    }

    #[test]
    fn functoriality_on_small_sets() {
        let i = BaseObject::set_of(&["0", "1"]);
        for func in [Functor::ProductWith(i.clone()), Functor::ExponentialBy(i.clone())] {
            let (a, b, c) = (set(2), set(3), set(2));
            for f in enumerate_hom(&a, &b).unwrap() {
                assert_eq!(func.morphism(&BaseMorphism::identity(&a)).unwrap(),
                           BaseMorphism::identity(&func.object(&a).unwrap()));
                for g in enumerate_hom(&b, &c).unwrap() {
                    let lhs = func.morphism(&compose(&g, &f).unwrap()).unwrap();
                    let rhs = compose(&func.morphism(&g).unwrap(), &func.morphism(&f).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn wrong_base_is_rejected() {
        let f = MonoidHom::from_trivial(FiniteMonoid::cyclic(2));
        assert!(matches!(
            Functor::Induce(f).object(&set(2)),
            Err(Error::Incompatible(_))
        ));
    }
}
