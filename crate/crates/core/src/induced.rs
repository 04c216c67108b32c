//! Systems of linearly induced orders.
//!
//! Each [`KeyedOrder`] pulls a linear order back along a key function: for a
//! gain order `a ≤ b` iff `key[a] < key[b]` or `a = b`; a price order is the
//! inverse. Distinct elements with equal keys are incomparable, so the
//! union of a system has the same altiset as the union of the strict parts.
//!
//! Elements that agree on every key are indistinguishable. The quotient by
//! indistinguishability carries a strict *characteristic order* whose maximal
//! classes are exactly the significant classes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::{check_disjoint, ElementSet, FiniteRelation, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Larger keys are better.
    Gain,
    /// Smaller keys are better.
    Price,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyedOrder<K> {
    pub keys: Vec<K>,
    pub direction: Direction,
}

impl<K: Ord> KeyedOrder<K> {
    pub fn gain(keys: Vec<K>) -> Self {
        KeyedOrder { keys, direction: Direction::Gain }
    }

    pub fn price(keys: Vec<K>) -> Self {
        KeyedOrder { keys, direction: Direction::Price }
    }

    /// Strict part: `b` is strictly better than `a`.
    pub fn strictly_below(&self, a: usize, b: usize) -> bool {
        match self.direction {
            Direction::Gain => self.keys[a] < self.keys[b],
            Direction::Price => self.keys[a] > self.keys[b],
        }
    }
}

/// A finite, nonempty family of linearly induced orders on one universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSystem<K> {
    universe: Universe,
    orders: Vec<KeyedOrder<K>>,
}

/// Quotient of a system by indistinguishability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientView {
    /// Classes, each sorted, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// Strict characteristic order on class indices.
    pub class_order: FiniteRelation,
    pub maximal_classes: ElementSet,
}

impl QuotientView {
    /// Union of the maximal classes.
    pub fn significant_elements(&self) -> ElementSet {
        self.maximal_classes
            .iter()
            .flat_map(|&c| self.classes[c].iter().copied())
            .collect()
    }
}

impl<K: Ord + Clone> OrderSystem<K> {
    pub fn new(universe: Universe, orders: Vec<KeyedOrder<K>>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Argument("an order system needs at least one order".into()));
        }
        for o in &orders {
            if o.keys.len() != universe.size() {
                return Err(Error::Dimension { expected: universe.size(), found: o.keys.len() });
            }
        }
        Ok(OrderSystem { universe, orders })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn orders(&self) -> &[KeyedOrder<K>] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.universe.size()
    }

    /// Some order ranks `b` strictly above `a`.
    pub fn strictly_related(&self, a: usize, b: usize) -> bool {
        self.orders.iter().any(|o| o.strictly_below(a, b))
    }

    /// `R = ⋃ R_i`, reflexive by construction.
    pub fn union_relation(&self) -> FiniteRelation {
        FiniteRelation::from_fn(self.universe.clone(), |a, b| a == b || self.strictly_related(a, b))
    }

    /// Classes of elements agreeing on every key, ordered by smallest member.
    pub fn indistinguishability(&self) -> Vec<Vec<usize>> {
        let mut by_keys: BTreeMap<Vec<&K>, usize> = BTreeMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..self.size() {
            let signature: Vec<&K> = self.orders.iter().map(|o| &o.keys[a]).collect();
            let next = classes.len();
            let c = *by_keys.entry(signature).or_insert(next);
            if c == next {
                classes.push(Vec::new());
            }
            classes[c].push(a);
        }
        classes
    }

    pub fn quotient(&self) -> QuotientView {
        let classes = self.indistinguishability();
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let class_universe = Universe::new(classes.len());
        let lifted = FiniteRelation::from_fn(class_universe, |i, j| {
            i == j || self.strictly_related(reps[i], reps[j])
        });
        let class_order = lifted.asym_interior();
        let maximal_classes = (0..classes.len())
            .filter(|&c| class_order.successors(c).next().is_none())
            .collect();
        QuotientView { classes, class_order, maximal_classes }
    }

    /// The system restricted to `subset`, with the new-to-old index map.
    pub fn restrict(&self, subset: &ElementSet) -> Result<(OrderSystem<K>, Vec<usize>)> {
        self.universe.check_subset(subset)?;
        let members: Vec<usize> = subset.iter().copied().collect();
        let orders = self
            .orders
            .iter()
            .map(|o| KeyedOrder {
                keys: members.iter().map(|&i| o.keys[i].clone()).collect(),
                direction: o.direction,
            })
            .collect();
        let universe = match self.universe.labels() {
            Some(ls) => Universe::with_labels(members.iter().map(|&i| ls[i].clone()).collect())?,
            None => Universe::new(members.len()),
        };
        Ok((OrderSystem { universe, orders }, members))
    }

    /// Altiset as the union of maximal classes of the quotient.
    pub fn altiset(&self, subset: Option<&ElementSet>) -> Result<ElementSet> {
        match subset {
            None => Ok(self.quotient().significant_elements()),
            Some(s) => {
                let (sub, map) = self.restrict(s)?;
                Ok(sub.quotient().significant_elements().into_iter().map(|i| map[i]).collect())
            }
        }
    }

    /// Altiset over the union of the per-block altisets.
    pub fn decompose_altiset(&self, blocks: &[ElementSet]) -> Result<ElementSet> {
        check_disjoint(blocks)?;
        let mut merged = ElementSet::new();
        for block in blocks {
            merged.extend(self.altiset(Some(block))?);
        }
        self.altiset(Some(&merged))
    }
}

/// Truth values of the four equivalent two-implication forms relating a
/// gain key `f` and a price key `g` at the pair `(a, b)`.
pub fn check_form_equivalences<K: Ord>(f: &[K], g: &[K], a: usize, b: usize) -> [bool; 4] {
    let imp = |p: bool, q: bool| !p || q;
    let (fa, fb, ga, gb) = (&f[a], &f[b], &g[a], &g[b]);
    [
        imp(fa < fb, ga < gb) && imp(ga > gb, fa > fb),
        imp(fa <= fb, ga <= gb) && imp(ga >= gb, fa >= fb),
        imp(fa < fb, ga < gb) && imp(fa == fb, ga <= gb),
        imp(ga > gb, fa > fb) && imp(ga == gb, fa >= fb),
    ]
}
