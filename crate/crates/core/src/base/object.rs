use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::monoid::{index_elements, FiniteMonoid};
use crate::error::{Error, Result};

/// Shared handle to an object of the base category.
pub type Obj = Arc<BaseObject>;

/// Which concrete base category an object lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Sets,
    MSets(Arc<FiniteMonoid>),
}

impl Base {
    pub fn monoid(&self) -> Option<&Arc<FiniteMonoid>> {
        match self {
            Base::Sets => None,
            Base::MSets(m) => Some(m),
        }
    }

    /// One-element object with the trivial action.
    pub fn terminal(&self) -> Obj {
        self.object(vec!["*".to_string()], |_, x| x)
            .expect("terminal object")
    }

    pub fn initial(&self) -> Obj {
        self.object(Vec::new(), |_, x| x).expect("initial object")
    }

    /// Builds an object of this base; `act(m, x)` is ignored for plain sets.
    pub fn object(
        &self,
        elements: Vec<String>,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Obj> {
        match self {
            Base::Sets => BaseObject::set(elements),
            Base::MSets(m) => {
                let n = elements.len();
                let table = (0..m.len())
                    .flat_map(|g| (0..n).map(move |x| (g, x)))
                    .map(|(g, x)| act(g, x))
                    .collect();
                BaseObject::mset(elements, m.clone(), table)
            }
        }
    }
}

/// A left action of a finite monoid on a finite set.
#[derive(Clone, PartialEq, Eq)]
pub struct Action {
    monoid: Arc<FiniteMonoid>,
    /// Row-major: `table[m * n + x] = m . x`.
    table: Vec<usize>,
}

impl Action {
    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }
}

/// A finite set, optionally carrying a monoid action. Equality is structural.
#[derive(Clone)]
pub struct BaseObject {
    elements: Vec<String>,
    lookup: HashMap<String, usize>,
    action: Option<Action>,
}

impl PartialEq for BaseObject {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.elements == other.elements && self.action == other.action)
    }
}

impl Eq for BaseObject {}

impl fmt::Debug for BaseObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BaseObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 8;
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().take(SHOWN).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        if self.elements.len() > SHOWN {
            write!(f, ",... ({} elements)", self.elements.len())?;
        }
        write!(f, "}}")?;
        if let Some(a) = &self.action {
            write!(f, " with {:?}-action", a.monoid)?;
        }
        Ok(())
    }
}

impl BaseObject {
    pub fn set(elements: Vec<String>) -> Result<Obj> {
        let lookup = index_elements(&elements, "object")?;
        Ok(Arc::new(BaseObject {
            elements,
            lookup,
            action: None,
        }))
    }

    pub fn set_of(elements: &[&str]) -> Obj {
        Self::set(elements.iter().map(|s| s.to_string()).collect()).expect("distinct elements")
    }

    /// An M-set; `table[m * n + x]` is the index of `m . x`.
    pub fn mset(elements: Vec<String>, monoid: Arc<FiniteMonoid>, table: Vec<usize>) -> Result<Obj> {
        let lookup = index_elements(&elements, "object")?;
        let n = elements.len();
        if table.len() != monoid.len() * n {
            return Err(Error::Validation(format!(
                "action table has {} entries, expected {}",
                table.len(),
                monoid.len() * n
            )));
        }
        if table.iter().any(|&v| v >= n) {
            return Err(Error::Validation("action lands outside the carrier".into()));
        }
        let obj = BaseObject {
            elements,
            lookup,
            action: Some(Action { monoid, table }),
        };
        obj.check_action_laws()?;
        Ok(Arc::new(obj))
    }

    fn check_action_laws(&self) -> Result<()> {
        let Some(action) = &self.action else {
            return Ok(());
        };
        let m = &action.monoid;
        for x in 0..self.len() {
            if self.act(m.unit(), x) != x {
                return Err(Error::Validation(format!(
                    "action unit law fails at {}",
                    self.elements[x]
                )));
            }
            for a in 0..m.len() {
                for b in 0..m.len() {
                    if self.act(a, self.act(b, x)) != self.act(m.mul(a, b), x) {
                        return Err(Error::Validation(format!(
                            "action associativity fails at ({},{},{})",
                            m.element(a),
                            m.element(b),
                            self.elements[x]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> Base {
        match &self.action {
            None => Base::Sets,
            Some(a) => Base::MSets(a.monoid.clone()),
        }
    }

    pub fn is_plain(&self) -> bool {
        self.action.is_none()
    }

    pub fn action(&self) -> Option<&Action> {
        self.action.as_ref()
    }

    pub fn monoid(&self) -> Option<&Arc<FiniteMonoid>> {
        self.action.as_ref().map(|a| &a.monoid)
    }

    /// `m . x`; the identity on plain sets.
    pub fn act(&self, m: usize, x: usize) -> usize {
        match &self.action {
            None => x,
            Some(a) => a.table[m * self.len() + x],
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
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

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::Validation(format!("{name:?} is not an element of {self}")))
    }
}

/// Every action of `monoid` on an `n`-element set, in lexicographic table order.
pub fn all_actions(monoid: &Arc<FiniteMonoid>, elements: &[String]) -> Vec<Obj> {
    let n = elements.len();
    let cells = monoid.len() * n;
    let mut out = Vec::new();
    let mut table = vec![0usize; cells];
    if n == 0 {
        if let Ok(o) = BaseObject::mset(Vec::new(), monoid.clone(), Vec::new()) {
            out.push(o);
        }
        return out;
    }
    loop {
        if let Ok(o) = BaseObject::mset(elements.to_vec(), monoid.clone(), table.clone()) {
            out.push(o);
        }
        // odometer, last cell least significant
        let mut k = cells;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            table[k] += 1;
            if table[k] < n {
                break;
            }
            table[k] = 0;
        }
    }
}
