use std::collections::HashMap;
use std::hash::Hash;

use super::morphism::BaseMorphism;
use super::object::Obj;
use crate::error::{Error, Result};

/// An equivalence relation on a carrier. Blocks are named by their least
/// element in carrier order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    carrier: Obj,
    block_of: Vec<usize>,
    representatives: Vec<usize>,
}

impl Partition {
    /// Groups elements with equal keys.
    pub fn from_keys<K: Eq + Hash>(carrier: &Obj, key: impl Fn(usize) -> K) -> Self {
        let mut first: HashMap<K, usize> = HashMap::new();
        let mut block_of = Vec::with_capacity(carrier.len());
        let mut representatives = Vec::new();
        for x in 0..carrier.len() {
            let rep = *first.entry(key(x)).or_insert_with(|| {
                representatives.push(x);
                x
            });
            block_of.push(rep);
        }
        Partition {
            carrier: carrier.clone(),
            block_of,
            representatives,
        }
    }

    /// The kernel of a morphism out of the carrier.
    pub fn kernel(f: &BaseMorphism) -> Self {
        Self::from_keys(f.dom(), |x| f.apply(x))
    }

    pub fn discrete(carrier: &Obj) -> Self {
        Self::from_keys(carrier, |x| x)
    }

    pub fn indiscrete(carrier: &Obj) -> Self {
        Self::from_keys(carrier, |_| ())
    }

    /// Partition from a block-label assignment (labels are arbitrary).
    pub fn from_labels(carrier: &Obj, labels: &[usize]) -> Result<Self> {
        if labels.len() != carrier.len() {
            return Err(Error::Validation(format!(
                "partition assigns {} labels to {} elements",
                labels.len(),
                carrier.len()
            )));
        }
        Ok(Self::from_keys(carrier, |x| labels[x]))
    }

    pub fn carrier(&self) -> &Obj {
        &self.carrier
    }

    /// Representative (least element) of the block containing `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn num_blocks(&self) -> usize {
        self.representatives.len()
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn is_discrete(&self) -> bool {
        self.num_blocks() == self.carrier.len()
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        if self.carrier != other.carrier {
            return Err(Error::Diagram("meet of partitions on different carriers".into()));
        }
        Ok(Self::from_keys(&self.carrier, |x| {
            (self.block_of[x], other.block_of[x])
        }))
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.carrier == coarser.carrier
            && (0..self.carrier.len())
                .all(|x| coarser.same_block(x, self.block_of[x]))
    }

    /// Blocks as lists of element indices, ordered by representative.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let pos: HashMap<usize, usize> = self
            .representatives
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, i))
            .collect();
        let mut blocks = vec![Vec::new(); self.representatives.len()];
        for x in 0..self.carrier.len() {
            blocks[pos[&self.block_of[x]]].push(x);
        }
        blocks
    }

    /// Blocks as lists of element names.
    pub fn named_blocks(&self) -> Vec<Vec<String>> {
        self.blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|x| self.carrier.element(x).to_string()).collect())
            .collect()
    }

    /// Whether the relation is closed under the carrier's action.
    pub fn is_congruence(&self) -> bool {
        let Some(m) = self.carrier.monoid() else {
            return true;
        };
        (0..m.len()).all(|g| {
            (0..self.carrier.len()).all(|x| {
                self.same_block(self.carrier.act(g, x), self.carrier.act(g, self.block_of[x]))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseObject;

    #[test]
    fn representatives_are_least_elements() {
        let x = BaseObject::set_of(&["a", "b", "c", "d"]);
        let p = Partition::from_labels(&x, &[7, 3, 7, 3]).unwrap();
        assert_eq!(p.representatives(), &[0, 1]);
        assert_eq!(p.block_of(2), 0);
        assert_eq!(p.block_of(3), 1);
        assert_eq!(p.named_blocks(), vec![vec!["a", "c"], vec!["b", "d"]]);
    }

    #[test]
    fn meet_refines_both() {
        let x = BaseObject::set_of(&["a", "b", "c", "d"]);
        let p = Partition::from_labels(&x, &[0, 0, 1, 1]).unwrap();
        let q = Partition::from_labels(&x, &[0, 1, 1, 1]).unwrap();
        let r = p.meet(&q).unwrap();
        assert_eq!(r.num_blocks(), 3);
        assert!(r.refines(&p) && r.refines(&q));
        assert!(!p.refines(&q));
    }
}
