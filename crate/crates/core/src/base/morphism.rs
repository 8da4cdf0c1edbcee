use std::fmt;

use super::object::Obj;
use crate::error::{Error, Result};
use crate::guard;

/// A total (and, between M-sets, equivariant) function given by its table.
#[derive(Clone, PartialEq, Eq)]
pub struct BaseMorphism {
    dom: Obj,
    cod: Obj,
    table: Vec<usize>,
}

impl fmt::Debug for BaseMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BaseMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &j) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", self.dom.element(i), self.cod.element(j))?;
        }
        write!(f, "]")
    }
}

impl BaseMorphism {
    pub fn new(dom: Obj, cod: Obj, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(Error::Validation(format!(
                "table has {} entries for a domain of size {}",
                table.len(),
                dom.len()
            )));
        }
        if let Some((i, _)) = table.iter().enumerate().find(|(_, &j)| j >= cod.len()) {
            return Err(Error::Validation(format!(
                "image of {} lies outside the codomain {cod}",
                dom.element(i)
            )));
        }
        let f = BaseMorphism { dom, cod, table };
        f.check_equivariance()?;
        Ok(f)
    }

    /// Builds a morphism from a map on names; reports the first missing entry.
    pub fn from_names<'a>(
        dom: Obj,
        cod: Obj,
        lookup: impl Fn(&str) -> Option<&'a str>,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(dom.len());
        let mut missing = Vec::new();
        for x in dom.elements() {
            match lookup(x) {
                None => missing.push(x.clone()),
                Some(y) => table.push(cod.require(y)?),
            }
        }
        if !missing.is_empty() {
            return Err(Error::Validation(format!(
                "table is missing entries for {}",
                missing.join(", ")
            )));
        }
        Self::new(dom, cod, table)
    }

    pub fn from_fn(dom: Obj, cod: Obj, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = (0..dom.len()).map(f).collect();
        Self::new(dom, cod, table)
    }

    /// Skips validation; callers guarantee totality, range and equivariance.
    pub(crate) fn new_unchecked(dom: Obj, cod: Obj, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), dom.len());
        BaseMorphism { dom, cod, table }
    }

    pub fn identity(x: &Obj) -> Self {
        BaseMorphism {
            dom: x.clone(),
            cod: x.clone(),
            table: (0..x.len()).collect(),
        }
    }

    fn check_equivariance(&self) -> Result<()> {
        match (self.dom.monoid(), self.cod.monoid()) {
            (None, None) => Ok(()),
            (Some(m), Some(n)) if m == n => {
                for g in 0..m.len() {
                    for x in 0..self.dom.len() {
                        if self.table[self.dom.act(g, x)] != self.cod.act(g, self.table[x]) {
                            return Err(Error::Validation(format!(
                                "map is not equivariant at ({}, {})",
                                m.element(g),
                                self.dom.element(x)
                            )));
                        }
                    }
                }
                Ok(())
            }
            _ => Err(Error::Validation(format!(
                "endpoints {} and {} live in different base categories",
                self.dom, self.cod
            ))),
        }
    }

    pub fn dom(&self) -> &Obj {
        &self.dom
    }

    pub fn cod(&self) -> &Obj {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn apply_name(&self, x: &str) -> Result<&str> {
        Ok(self.cod.element(self.table[self.dom.require(x)?]))
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &BaseMorphism) -> Result<BaseMorphism> {
        compose(self, f)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.table.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &j in &self.table {
            seen[j] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

/// `g ∘ f`.
pub fn compose(g: &BaseMorphism, f: &BaseMorphism) -> Result<BaseMorphism> {
    if f.cod != g.dom {
        return Err(Error::Composition {
            left: f.cod.to_string(),
            right: g.dom.to_string(),
        });
    }
    let table = f.table.iter().map(|&y| g.table[y]).collect();
    Ok(BaseMorphism {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table,
    })
}

/// All morphisms `x -> y`, lexicographic in the table over the element orders.
pub fn enumerate_hom(x: &Obj, y: &Obj) -> Result<Vec<BaseMorphism>> {
    enumerate_hom_bounded(x, y, guard::enumeration_bound())
}

pub fn enumerate_hom_bounded(x: &Obj, y: &Obj, bound: u64) -> Result<Vec<BaseMorphism>> {
    guard::check_enumeration(guard::checked_power(y.len(), x.len()), bound)?;
    let equivariant = x.monoid().is_some() || y.monoid().is_some();
    if equivariant && x.monoid() != y.monoid() {
        return Err(Error::Validation(format!(
            "{x} and {y} live in different base categories"
        )));
    }
    let mut out = Vec::new();
    if x.is_empty() {
        out.push(BaseMorphism::new_unchecked(x.clone(), y.clone(), Vec::new()));
        return Ok(out);
    }
    if y.is_empty() {
        return Ok(out);
    }
    let n = x.len();
    let mut table = vec![0usize; n];
    loop {
        let f = BaseMorphism::new_unchecked(x.clone(), y.clone(), table.clone());
        if !equivariant || f.check_equivariance().is_ok() {
            out.push(f);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            table[k] += 1;
            if table[k] < y.len() {
                break;
            }
            table[k] = 0;
        }
    }
}
