use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite monoid given by its full multiplication table.
#[derive(Clone)]
pub struct FiniteMonoid {
    elements: Vec<String>,
    lookup: HashMap<String, usize>,
    unit: usize,
    /// Row-major: `mult[a * n + b] = a * b`.
    mult: Vec<usize>,
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.unit == other.unit && self.mult == other.mult
    }
}

impl Eq for FiniteMonoid {}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMonoid{{{}}}", self.elements.join(","))
    }
}

impl FiniteMonoid {
    /// Builds a monoid from a table indexed by element positions: `table[a][b] = a * b`.
    pub fn new(elements: Vec<String>, unit: &str, table: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        let n = elements.len();
        let lookup = index_elements(&elements, "monoid")?;
        let unit = *lookup
            .get(unit)
            .ok_or_else(|| Error::Validation(format!("monoid unit {unit:?} is not an element")))?;
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Validation(format!(
                "monoid multiplication table must be {n}x{n}"
            )));
        }
        let mult: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = mult.iter().find(|&&v| v >= n) {
            return Err(Error::Validation(format!(
                "monoid multiplication produces index {bad} outside the carrier"
            )));
        }
        let monoid = FiniteMonoid {
            elements,
            lookup,
            unit,
            mult,
        };
        monoid.check_laws()?;
        Ok(Arc::new(monoid))
    }

    /// Same as [`FiniteMonoid::new`] with the table given by element names.
    pub fn from_named(
        elements: Vec<String>,
        unit: &str,
        mult: impl Fn(&str, &str) -> String,
    ) -> Result<Arc<Self>> {
        let lookup = index_elements(&elements, "monoid")?;
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in &elements {
                let c = mult(a, b);
                let idx = *lookup.get(&c).ok_or_else(|| {
                    Error::Validation(format!("monoid product {a}*{b} = {c:?} is not an element"))
                })?;
                row.push(idx);
            }
            table.push(row);
        }
        Self::new(elements, unit, table)
    }

    pub fn trivial() -> Arc<Self> {
        Self::new(vec!["1".into()], "1", vec![vec![0]]).expect("trivial monoid")
    }

    /// The cyclic group Z/nZ on elements "0".."n-1" under addition.
    pub fn cyclic(n: usize) -> Arc<Self> {
        assert!(n > 0, "cyclic group needs a positive order");
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(elements, "0", table).expect("cyclic group")
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if self.mul(self.unit, a) != a || self.mul(a, self.unit) != a {
                return Err(Error::Validation(format!(
                    "monoid unit law fails at {}",
                    self.elements[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Validation(format!(
                            "monoid associativity fails at ({},{},{})",
                            self.elements[a], self.elements[b], self.elements[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.len() + b]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }
}

/// A monoid homomorphism, validated on construction.
#[derive(Clone, PartialEq, Eq)]
pub struct MonoidHom {
    dom: Arc<FiniteMonoid>,
    cod: Arc<FiniteMonoid>,
    table: Vec<usize>,
}

impl fmt::Debug for MonoidHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonoidHom({:?} -> {:?}, {:?})", self.dom, self.cod, self.table)
    }
}

impl MonoidHom {
    pub fn new(dom: Arc<FiniteMonoid>, cod: Arc<FiniteMonoid>, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(Error::Validation(format!(
                "monoid hom table has {} entries for a domain of size {}",
                table.len(),
                dom.len()
            )));
        }
        if table.iter().any(|&v| v >= cod.len()) {
            return Err(Error::Validation(
                "monoid hom lands outside its codomain".into(),
            ));
        }
        if table[dom.unit()] != cod.unit() {
            return Err(Error::Validation("monoid hom does not preserve the unit".into()));
        }
        for a in 0..dom.len() {
            for b in 0..dom.len() {
                if table[dom.mul(a, b)] != cod.mul(table[a], table[b]) {
                    return Err(Error::Validation(format!(
                        "monoid hom does not preserve the product {}*{}",
                        dom.element(a),
                        dom.element(b)
                    )));
                }
            }
        }
        Ok(MonoidHom { dom, cod, table })
    }

    pub fn identity(m: Arc<FiniteMonoid>) -> Self {
        let table = (0..m.len()).collect();
        MonoidHom {
            dom: m.clone(),
            cod: m,
            table,
        }
    }

    /// The unique hom from the trivial monoid.
    pub fn from_trivial(cod: Arc<FiniteMonoid>) -> Self {
        let unit = cod.unit();
        MonoidHom {
            dom: FiniteMonoid::trivial(),
            cod,
            table: vec![unit],
        }
    }

    pub fn dom(&self) -> &Arc<FiniteMonoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteMonoid> {
        &self.cod
    }

    pub fn apply(&self, m: usize) -> usize {
        self.table[m]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

pub(crate) fn index_elements(elements: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut lookup = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if lookup.insert(e.clone(), i).is_some() {
            return Err(Error::Validation(format!(
                "{what} element {e:?} appears more than once"
            )));
        }
    }
    Ok(lookup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_laws() {
        let z3 = FiniteMonoid::cyclic(3);
        assert_eq!(z3.mul(2, 2), 1);
        assert_eq!(z3.unit(), 0);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a*b = b*a = a, a*a = b: unit b, but then a*a must be associative with a: fine.
        // Use a table violating associativity on three elements.
        let els: Vec<String> = ["e", "a", "b"].iter().map(|s| s.to_string()).collect();
        let table = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 1]];
        let err = FiniteMonoid::new(els, "e", table).unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }

    #[test]
    fn rejects_non_hom() {
        let z2 = FiniteMonoid::cyclic(2);
        let z3 = FiniteMonoid::cyclic(3);
        assert!(MonoidHom::new(z2.clone(), z3.clone(), vec![0, 1]).is_err());
        assert!(MonoidHom::new(z3, z2, vec![0, 0, 0]).is_ok());
    }
}
