//! Adjunctions `F ⊣ R` represented by their two-way transpose.
//!
//! Unit and counit are derived: `η_X = transpose(id_{FX})`,
//! `ε_Y = transpose_inv(id_{RY})`.

use crate::base::{Base, BaseMorphism, MonoidHom, Obj};
use crate::error::{Error, Result};
use crate::functor::{decode_digits, encode_digits, exponential, Coinduced, Induced, Functor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Adjunction {
    Identity,
    /// `– × I ⊣ (–)^I`.
    ProductExponential(Obj),
    /// `f_! ⊣ f*`, from M-sets to N-sets.
    Induction(MonoidHom),
    /// `f* ⊣ f_*`, from N-sets to M-sets.
    Coinduction(MonoidHom),
    /// `f_! f* ⊣ f_* f*` on N-sets.
    BaseChangeComonadic(MonoidHom),
    /// `f* f_! ⊣ f* f_*` on M-sets.
    BaseChangeMonadic(MonoidHom),
    /// Left adjoints applied in list order; right adjoints in reverse.
    Composite(Vec<Adjunction>),
}

impl Adjunction {
    /// The pair `(f_! ⊣ f*, f* ⊣ f_*)` induced by a monoid hom.
    pub fn base_change(f: &MonoidHom) -> (Adjunction, Adjunction) {
        (Adjunction::Induction(f.clone()), Adjunction::Coinduction(f.clone()))
    }

    /// `outer ∘ inner`: left adjoint `F_outer F_inner`, right adjoint `R_inner R_outer`.
    pub fn compose(outer: &Adjunction, inner: &Adjunction) -> Result<Adjunction> {
        if let (Some(cod), Some(dom)) = (inner.left_codomain(), outer.left_domain()) {
            if cod != dom {
                return Err(Error::Incompatible(format!(
                    "base mismatch: inner adjunction lands in {cod:?}, outer starts in {dom:?}"
                )));
            }
        }
        let mut parts = inner.clone().into_parts();
        parts.extend(outer.clone().into_parts());
        Ok(Adjunction::Composite(parts))
    }

    /// `F^n ⊣ R^n`.
    pub fn iterate(&self, n: usize) -> Result<Adjunction> {
        match n {
            0 => Err(Error::Domain("iterated adjunction needs n ≥ 1".into())),
            1 => Ok(self.clone()),
            _ => {
                if self.left_domain() != self.left_codomain() {
                    return Err(Error::Incompatible(
                        "only endofunctor adjunctions can be iterated".into(),
                    ));
                }
                Ok(Adjunction::Composite(vec![self.clone(); n]))
            }
        }
    }

    fn into_parts(self) -> Vec<Adjunction> {
        match self {
            Adjunction::Composite(parts) => parts,
            Adjunction::Identity => Vec::new(),
            other => vec![other],
        }
    }

    /// Base category of the left adjoint's domain, when determined.
    pub fn left_domain(&self) -> Option<Base> {
        match self {
            Adjunction::Identity => None,
            Adjunction::ProductExponential(_) => Some(Base::Sets),
            Adjunction::Induction(f) | Adjunction::BaseChangeMonadic(f) => {
                Some(Base::MSets(f.dom().clone()))
            }
            Adjunction::Coinduction(f) | Adjunction::BaseChangeComonadic(f) => {
                Some(Base::MSets(f.cod().clone()))
            }
            Adjunction::Composite(parts) => parts.iter().find_map(|p| p.left_domain()),
        }
    }

    pub fn left_codomain(&self) -> Option<Base> {
        match self {
            Adjunction::Identity => None,
            Adjunction::ProductExponential(_) => Some(Base::Sets),
            Adjunction::Induction(f) | Adjunction::BaseChangeComonadic(f) => {
                Some(Base::MSets(f.cod().clone()))
            }
            Adjunction::Coinduction(f) | Adjunction::BaseChangeMonadic(f) => {
                Some(Base::MSets(f.dom().clone()))
            }
            Adjunction::Composite(parts) => parts.iter().rev().find_map(|p| p.left_codomain()),
        }
    }

    fn expanded(&self) -> Option<Adjunction> {
        match self {
            Adjunction::BaseChangeComonadic(f) => Some(Adjunction::Composite(vec![
                Adjunction::Coinduction(f.clone()),
                Adjunction::Induction(f.clone()),
            ])),
            Adjunction::BaseChangeMonadic(f) => Some(Adjunction::Composite(vec![
                Adjunction::Induction(f.clone()),
                Adjunction::Coinduction(f.clone()),
            ])),
            _ => None,
        }
    }

    pub fn left(&self) -> Functor {
        if let Some(e) = self.expanded() {
            return e.left();
        }
        match self {
            Adjunction::Identity => Functor::Identity,
            Adjunction::ProductExponential(i) => Functor::ProductWith(i.clone()),
            Adjunction::Induction(f) => Functor::Induce(f.clone()),
            Adjunction::Coinduction(f) => Functor::Restrict(f.clone()),
            Adjunction::Composite(parts) => parts
                .iter()
                .fold(Functor::Identity, |acc, p| acc.then(p.left())),
            Adjunction::BaseChangeComonadic(_) | Adjunction::BaseChangeMonadic(_) => {
                unreachable!("expanded above")
            }
        }
    }

    pub fn right(&self) -> Functor {
        if let Some(e) = self.expanded() {
            return e.right();
        }
        match self {
            Adjunction::Identity => Functor::Identity,
            Adjunction::ProductExponential(i) => Functor::ExponentialBy(i.clone()),
            Adjunction::Induction(f) => Functor::Restrict(f.clone()),
            Adjunction::Coinduction(f) => Functor::Coinduce(f.clone()),
            Adjunction::Composite(parts) => parts
                .iter()
                .rev()
                .fold(Functor::Identity, |acc, p| acc.then(p.right())),
            Adjunction::BaseChangeComonadic(_) | Adjunction::BaseChangeMonadic(_) => {
                unreachable!("expanded above")
            }
        }
    }

    pub fn left_object(&self, x: &Obj) -> Result<Obj> {
        self.left().object(x)
    }

    pub fn right_object(&self, y: &Obj) -> Result<Obj> {
        self.right().object(y)
    }

    /// `g : FX → Y` to its mate `X → RY`.
    pub fn transpose(&self, x: &Obj, g: &BaseMorphism) -> Result<BaseMorphism> {
        if let Some(e) = self.expanded() {
            return e.transpose(x, g);
        }
        let fx = self.left_object(x)?;
        if g.dom() != &fx {
            return Err(Error::Incompatible(format!(
                "transpose expects a map out of F{x}, got one out of {}",
                g.dom()
            )));
        }
        let y = g.cod();
        match self {
            Adjunction::Identity => Ok(g.clone()),
            Adjunction::ProductExponential(i) => {
                let ry = exponential(y, i)?;
                let k = i.len();
                let table = (0..x.len())
                    .map(|p| {
                        let digits: Vec<usize> = (0..k).map(|j| g.apply(p * k + j)).collect();
                        encode_digits(&digits, y.len())
                    })
                    .collect();
                Ok(BaseMorphism::new_unchecked(x.clone(), ry, table))
            }
            Adjunction::Induction(f) => {
                let induced = Induced::build(f, x)?;
                let ry = Functor::Restrict(f.clone()).object(y)?;
                let unit = f.cod().unit();
                let table = (0..x.len()).map(|p| g.apply(induced.class(unit, p))).collect();
                BaseMorphism::new(x.clone(), ry, table)
            }
            Adjunction::Coinduction(f) => {
                let coinduced = Coinduced::build(f, y)?;
                let n = f.cod();
                let table = (0..x.len())
                    .map(|p| {
                        let h: Vec<usize> = (0..n.len()).map(|a| g.apply(x.act(a, p))).collect();
                        coinduced.lookup(&h)
                    })
                    .collect::<Result<Vec<_>>>()?;
                BaseMorphism::new(x.clone(), coinduced.object, table)
            }
            Adjunction::Composite(parts) => match parts.split_first() {
                None => Ok(g.clone()),
                Some((inner, rest)) => {
                    let outer = Adjunction::Composite(rest.to_vec());
                    let fx1 = inner.left_object(x)?;
                    let k = outer.transpose(&fx1, g)?;
                    inner.transpose(x, &k)
                }
            },
            Adjunction::BaseChangeComonadic(_) | Adjunction::BaseChangeMonadic(_) => {
                unreachable!("expanded above")
            }
        }
    }

    /// `h : X → RY` to its mate `FX → Y`.
    pub fn transpose_inv(&self, y: &Obj, h: &BaseMorphism) -> Result<BaseMorphism> {
        if let Some(e) = self.expanded() {
            return e.transpose_inv(y, h);
        }
        let ry = self.right_object(y)?;
        if h.cod() != &ry {
            return Err(Error::Incompatible(format!(
                "inverse transpose expects a map into R{y}, got one into {}",
                h.cod()
            )));
        }
        let x = h.dom();
        match self {
            Adjunction::Identity => Ok(h.clone()),
            Adjunction::ProductExponential(i) => {
                let fx = self.left_object(x)?;
                let k = i.len();
                let table = (0..fx.len())
                    .map(|p| decode_digits(h.apply(p / k), y.len(), k)[p % k])
                    .collect();
                Ok(BaseMorphism::new_unchecked(fx, y.clone(), table))
            }
            Adjunction::Induction(f) => {
                let induced = Induced::build(f, x)?;
                let table = induced
                    .reps
                    .iter()
                    .map(|&(a, p)| y.act(a, h.apply(p)))
                    .collect();
                BaseMorphism::new(induced.object, y.clone(), table)
            }
            Adjunction::Coinduction(f) => {
                let coinduced = Coinduced::build(f, y)?;
                let fx = self.left_object(x)?;
                let unit = f.cod().unit();
                let table = (0..x.len())
                    .map(|p| coinduced.tables[h.apply(p)][unit])
                    .collect();
                BaseMorphism::new(fx, y.clone(), table)
            }
            Adjunction::Composite(parts) => match parts.split_first() {
                None => Ok(h.clone()),
                Some((inner, rest)) => {
                    let outer = Adjunction::Composite(rest.to_vec());
                    let ry_outer = outer.right_object(y)?;
                    let k = inner.transpose_inv(&ry_outer, h)?;
                    outer.transpose_inv(y, &k)
                }
            },
            Adjunction::BaseChangeComonadic(_) | Adjunction::BaseChangeMonadic(_) => {
                unreachable!("expanded above")
            }
        }
    }

    /// `η_X : X → RFX`.
    pub fn unit(&self, x: &Obj) -> Result<BaseMorphism> {
        let fx = self.left_object(x)?;
        self.transpose(x, &BaseMorphism::identity(&fx))
    }

    /// `ε_Y : FRY → Y`.
    pub fn counit(&self, y: &Obj) -> Result<BaseMorphism> {
        let ry = self.right_object(y)?;
        self.transpose_inv(y, &BaseMorphism::identity(&ry))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{compose, BaseObject, FiniteMonoid};

    #[test]
    fn evaluation_counit() {
        let i = BaseObject::set_of(&["0", "1"]);
        let o = BaseObject::set_of(&["a", "b"]);
        let adj = Adjunction::ProductExponential(i);
        let eps = adj.counit(&o).unwrap();
        // ((a,b),1) is the function 0↦a, 1↦b applied to 1
        assert_eq!(eps.apply_name("({0:a,1:b},1)").unwrap(), "b");
        assert_eq!(eps.apply_name("({0:a,1:b},0)").unwrap(), "a");
    }

    #[test]
    fn singleton_input_unit_is_bijective() {
        let i = BaseObject::set_of(&["i"]);
        let x = BaseObject::set_of(&["p", "q", "r"]);
        let eta = Adjunction::ProductExponential(i).unit(&x).unwrap();
        assert!(eta.is_injective() && eta.is_surjective());
        assert_eq!(eta.apply_name("q").unwrap(), "{i:(q,i)}");
    }

    #[test]
    fn identity_adjunction_unit_counit() {
        let x = BaseObject::set_of(&["p", "q"]);
        assert_eq!(Adjunction::Identity.unit(&x).unwrap(), BaseMorphism::identity(&x));
        assert_eq!(Adjunction::Identity.counit(&x).unwrap(), BaseMorphism::identity(&x));
    }

    #[test]
    fn iterated_right_adjoint_size() {
        let i = BaseObject::set_of(&["0", "1"]);
        let o = BaseObject::set_of(&["a", "b"]);
        let adj = Adjunction::ProductExponential(i).iterate(2).unwrap();
        // |O|^(|I|^2)
        assert_eq!(adj.right_object(&o).unwrap().len(), 16);
        assert!(Adjunction::Identity.iterate(0).is_err());
    }

    #[test]
    fn comonadic_base_change_on_regular_z2() {
        let z2 = FiniteMonoid::cyclic(2);
        let f = MonoidHom::from_trivial(z2.clone());
        let reg = BaseObject::mset(vec!["x".into(), "y".into()], z2.clone(), vec![0, 1, 1, 0]).unwrap();
        let adj = Adjunction::BaseChangeComonadic(f);
        assert_eq!(adj.left_object(&reg).unwrap().len(), 4);
        let point = Base::MSets(z2).terminal();
        assert_eq!(adj.left_object(&point).unwrap().len(), 2);
    }

    #[test]
    fn base_mismatch_rejected() {
        let i = BaseObject::set_of(&["0"]);
        let f = MonoidHom::from_trivial(FiniteMonoid::cyclic(2));
        let err = Adjunction::compose(&Adjunction::ProductExponential(i), &Adjunction::Induction(f));
        assert!(matches!(err, Err(Error::Incompatible(_))));
    }

    #[test]
    fn triangle_identity_for_induction() {
        let f = MonoidHom::from_trivial(FiniteMonoid::cyclic(2));
        let adj = Adjunction::Induction(f.clone());
        let x = Base::MSets(f.dom().clone())
            .object(vec!["a".into(), "b".into()], |_, y| y)
            .unwrap();
        let fx = adj.left_object(&x).unwrap();
        let lhs = compose(&adj.counit(&fx).unwrap(), &adj.left().morphism(&adj.unit(&x).unwrap()).unwrap()).unwrap();
        assert_eq!(lhs, BaseMorphism::identity(&fx));
    }
}
