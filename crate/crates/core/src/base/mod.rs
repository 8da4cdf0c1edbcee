//! The base categories: finite sets and finite M-sets.
//!
//! A third base would need structural object equality, hom-set enumeration,
//! finite (co)limits, and quotients by congruences; everything above this
//! module only talks to objects through those operations.

mod limits;
mod monoid;
mod morphism;
mod object;
mod partition;

pub use limits::{
    base_colimit, base_limit, coequalizer, coproduct, equalizer, initial, inl_name, inr_name,
    pair_name, product, product_many, pullback, quotient, subobject, terminal, Cocone,
    ColimitDiagram, Cone, LimitDiagram,
};
pub(crate) use limits::union_find_classes;
pub use monoid::{FiniteMonoid, MonoidHom};
pub use morphism::{compose, enumerate_hom, enumerate_hom_bounded, BaseMorphism};
pub use object::{all_actions, Action, Base, BaseObject, Obj};
pub use partition::Partition;
