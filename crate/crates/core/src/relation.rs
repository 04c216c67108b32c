//! Finite binary relations and their adjustment operators.
//!
//! A [`FiniteRelation`] is a boolean adjacency matrix over an indexed
//! [`Universe`], stored as packed bit rows (row = first argument). Every
//! operator allocates a fresh relation; inputs are never mutated.
//!
//! An element `a` of a subset `B` is *significant* when every step `a R b`
//! inside `B` can be answered by a step back `b R a`. The set of significant
//! elements is the *altiset*; it only depends on the asymmetric interior of
//! the relation, which is how it is computed here.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A set of element indices, kept sorted.
pub type ElementSet = BTreeSet<usize>;

/// The carrier set: indices `0..size`, optionally labelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Universe {
    pub fn new(size: usize) -> Self {
        Universe { size, labels: None }
    }

    /// Labelled universe; labels must be pairwise distinct.
    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, l) in labels.iter().enumerate() {
            if !seen.insert(l.as_str()) {
                return Err(Error::Argument(format!("duplicate label {l:?} at index {i}")));
            }
        }
        Ok(Universe { size: labels.len(), labels: Some(labels) })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn all(&self) -> ElementSet {
        (0..self.size).collect()
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size {
            Ok(())
        } else {
            Err(Error::Index { index, size: self.size })
        }
    }

    pub fn check_subset(&self, subset: &ElementSet) -> Result<()> {
        match subset.iter().next_back() {
            Some(&max) => self.check_index(max),
            None => Ok(()),
        }
    }

    fn sub_universe(&self, members: &[usize]) -> Universe {
        Universe {
            size: members.len(),
            labels: self
                .labels
                .as_ref()
                .map(|ls| members.iter().map(|&i| ls[i].clone()).collect()),
        }
    }
}

/// A binary relation on a finite universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRelation {
    universe: Universe,
    rows: Vec<FixedBitSet>,
}

impl FiniteRelation {
    pub fn empty(universe: Universe) -> Self {
        let n = universe.size;
        FiniteRelation { rows: vec![FixedBitSet::with_capacity(n); n], universe }
    }

    pub fn full(universe: Universe) -> Self {
        Self::from_fn(universe, |_, _| true)
    }

    pub fn identity(universe: Universe) -> Self {
        Self::from_fn(universe, |a, b| a == b)
    }

    pub fn from_fn(universe: Universe, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut rel = Self::empty(universe);
        let n = rel.size();
        for a in 0..n {
            for b in 0..n {
                if f(a, b) {
                    rel.rows[a].insert(b);
                }
            }
        }
        rel
    }

    /// Builds a relation from index pairs; duplicates are ignored.
    pub fn from_pairs(
        universe: Universe,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut rel = Self::empty(universe);
        for (a, b) in pairs {
            rel.universe.check_index(a)?;
            rel.universe.check_index(b)?;
            rel.rows[a].insert(b);
        }
        Ok(rel)
    }

    /// `(a, b)` holds iff `keys[a] < keys[b]` (strict) or `keys[a] <= keys[b]`.
    pub fn induce<K: Ord>(universe: Universe, keys: &[K], strict: bool) -> Result<Self> {
        if keys.len() != universe.size {
            return Err(Error::Dimension { expected: universe.size, found: keys.len() });
        }
        Ok(Self::from_fn(universe, |a, b| {
            if strict {
                keys[a] < keys[b]
            } else {
                keys[a] <= keys[b]
            }
        }))
    }

    /// Element-wise OR of a nonempty list of relations on one universe.
    pub fn union(relations: &[&FiniteRelation]) -> Result<Self> {
        let (first, rest) = relations
            .split_first()
            .ok_or_else(|| Error::Argument("union of an empty list".into()))?;
        let mut out = (*first).clone();
        for r in rest {
            out.check_same_universe(r)?;
            for (row, other) in out.rows.iter_mut().zip(&r.rows) {
                row.union_with(other);
            }
        }
        Ok(out)
    }

    /// `R ∖ S`.
    pub fn difference(&self, other: &FiniteRelation) -> Result<Self> {
        self.check_same_universe(other)?;
        let mut out = self.clone();
        for (row, o) in out.rows.iter_mut().zip(&other.rows) {
            row.difference_with(o);
        }
        Ok(out)
    }

    fn check_same_universe(&self, other: &FiniteRelation) -> Result<()> {
        if self.size() == other.size() {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.size(), found: other.size() })
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.size
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[a].ones()
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().map(move |b| (a, b)))
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn inverse(&self) -> Self {
        let mut out = Self::empty(self.universe.clone());
        for (a, row) in self.rows.iter().enumerate() {
            for b in row.ones() {
                out.rows[b].insert(a);
            }
        }
        out
    }

    /// `R ∪ R⁻¹`.
    pub fn symmetrized(&self) -> Self {
        let inv = self.inverse();
        Self::union(&[self, &inv]).expect("same universe")
    }

    /// `asym R = R ∖ R⁻¹`.
    pub fn asym_interior(&self) -> Self {
        self.difference(&self.inverse()).expect("same universe")
    }

    /// Smallest transitive relation containing `R` (Warshall over bit rows).
    pub fn transitive_closure(&self) -> Self {
        let mut out = self.clone();
        let n = self.size();
        for k in 0..n {
            let via = out.rows[k].clone();
            for i in 0..n {
                if out.rows[i].contains(k) {
                    out.rows[i].union_with(&via);
                }
            }
        }
        out
    }

    /// `R* = (R′)⁻¹`: `(a, b)` holds iff `(b, a)` is not in `R`.
    pub fn complementary_inversion(&self) -> Self {
        let inv = self.inverse();
        let mut out = inv;
        for row in &mut out.rows {
            row.toggle_range(..);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.inverse()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|a| self.contains(a, a))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.size()).all(|a| !self.contains(a, a))
    }

    pub fn is_asymmetric(&self) -> bool {
        self.pairs().into_iter().all(|(a, b)| !self.contains(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.rows.iter().all(|row| {
            row.ones().all(|b| self.rows[b].is_subset(row))
        })
    }

    pub fn is_strict_order(&self) -> bool {
        self.is_irreflexive() && self.is_asymmetric() && self.is_transitive()
    }

    /// A cycle of the digraph `(A, asym R)`, if one exists.
    ///
    /// Iterative depth-first search; the returned vertices follow the cycle
    /// order, each one related to the next and the last to the first.
    pub fn asym_cycle(&self) -> Option<Vec<usize>> {
        find_cycle(&self.asym_interior())
    }

    /// True iff `(A, asym R)` is acyclic.
    pub fn has_aa_property(&self) -> bool {
        self.asym_cycle().is_none()
    }

    /// Significant elements of `subset` (default: the whole universe) with
    /// respect to the restriction of `R` to that subset.
    pub fn altiset(&self, subset: Option<&ElementSet>) -> Result<ElementSet> {
        let mask = self.mask(subset)?;
        let inv = self.inverse();
        Ok(mask
            .ones()
            .filter(|&a| {
                let mut dominated = self.rows[a].clone();
                dominated.difference_with(&inv.rows[a]);
                dominated.intersect_with(&mask);
                dominated.is_clear()
            })
            .collect())
    }

    fn mask(&self, subset: Option<&ElementSet>) -> Result<FixedBitSet> {
        let n = self.size();
        let mut mask = FixedBitSet::with_capacity(n);
        match subset {
            Some(s) => {
                self.universe.check_subset(s)?;
                for &i in s {
                    mask.insert(i);
                }
            }
            None => mask.insert_range(..),
        }
        Ok(mask)
    }

    /// Restriction to `subset`, re-indexed in ascending order.
    ///
    /// Returns the restricted relation and the map from new to old indices.
    pub fn restrict(&self, subset: &ElementSet) -> Result<(FiniteRelation, Vec<usize>)> {
        self.universe.check_subset(subset)?;
        let members: Vec<usize> = subset.iter().copied().collect();
        let rel = Self::from_fn(self.universe.sub_universe(&members), |i, j| {
            self.contains(members[i], members[j])
        });
        Ok((rel, members))
    }

    /// Altiset over the union of per-block altisets.
    ///
    /// For relations that are unions of linearly induced orders this equals
    /// the altiset over the union of the blocks; for other relations it may
    /// not.
    pub fn decomposed_altiset(&self, blocks: &[ElementSet]) -> Result<ElementSet> {
        check_disjoint(blocks)?;
        let mut merged = ElementSet::new();
        for block in blocks {
            merged.extend(self.altiset(Some(block))?);
        }
        self.altiset(Some(&merged))
    }
}

pub(crate) fn check_disjoint(blocks: &[ElementSet]) -> Result<()> {
    let mut seen = ElementSet::new();
    for block in blocks {
        for &e in block {
            if !seen.insert(e) {
                return Err(Error::Partition { element: e });
            }
        }
    }
    Ok(())
}

fn find_cycle(graph: &FiniteRelation) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let n = graph.size();
    let mut mark = vec![Mark::New; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        // (vertex, successors not yet explored)
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, graph.successors(root).collect())];
        mark[root] = Mark::Open;
        while let Some((v, pending)) = stack.last_mut() {
            let v = *v;
            match pending.pop() {
                Some(w) => match mark[w] {
                    Mark::New => {
                        mark[w] = Mark::Open;
                        stack.push((w, graph.successors(w).collect()));
                    }
                    Mark::Open => {
                        let start = stack.iter().position(|(u, _)| *u == w).expect("open vertex on stack");
                        return Some(stack[start..].iter().map(|(u, _)| *u).collect());
                    }
                    Mark::Done => {}
                },
                None => {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> FiniteRelation {
        FiniteRelation::from_pairs(Universe::new(n), pairs.iter().copied()).unwrap()
    }

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn cycle3() -> FiniteRelation {
        rel(3, &[(0, 1), (1, 2), (2, 0)])
    }

    #[test]
    fn induce_examples() {
        let u = Universe::new(3);
        let r = FiniteRelation::induce(u.clone(), &[1, 2, 3], true).unwrap();
        assert_eq!(r.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(r.is_strict_order());
        let r = FiniteRelation::induce(u.clone(), &[5, 5, 5], true).unwrap();
        assert_eq!(r.pair_count(), 0);
        let r = FiniteRelation::induce(u.clone(), &[2, 1, 2], true).unwrap();
        assert_eq!(r.pairs(), vec![(1, 0), (1, 2)]);
        let r = FiniteRelation::induce(u.clone(), &[2, 1, 2], false).unwrap();
        assert!(r.is_reflexive());
        assert!(matches!(
            FiniteRelation::induce(u, &[1, 2], true),
            Err(Error::Dimension { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn union_examples() {
        let a = rel(3, &[(0, 1)]);
        let b = rel(3, &[(1, 2)]);
        assert_eq!(FiniteRelation::union(&[&a, &b]).unwrap(), rel(3, &[(0, 1), (1, 2)]));
        assert_eq!(FiniteRelation::union(&[&a, &a]).unwrap(), a);
        let c = rel(3, &[(1, 0)]);
        assert_eq!(FiniteRelation::union(&[&a, &c]).unwrap(), rel(3, &[(0, 1), (1, 0)]));
        let small = rel(2, &[]);
        assert!(matches!(FiniteRelation::union(&[&a, &small]), Err(Error::Dimension { .. })));
        assert!(FiniteRelation::union(&[]).is_err());
    }

    #[test]
    fn asym_interior_examples() {
        let r = rel(3, &[(0, 1), (1, 0), (1, 2)]);
        assert_eq!(r.asym_interior(), rel(3, &[(1, 2)]));
        let sym = rel(3, &[(0, 1), (1, 0), (2, 2)]);
        assert_eq!(sym.asym_interior().pair_count(), 0);
        let asym = rel(3, &[(0, 1), (2, 1)]);
        assert_eq!(asym.asym_interior(), asym);
    }

    #[test]
    fn closure_examples() {
        let r = rel(3, &[(0, 1), (1, 2)]);
        assert_eq!(r.transitive_closure(), rel(3, &[(0, 1), (1, 2), (0, 2)]));
        let t = r.transitive_closure();
        assert_eq!(t.transitive_closure(), t);
        assert_eq!(cycle3().transitive_closure(), FiniteRelation::full(Universe::new(3)));
    }

    #[test]
    fn complementary_inversion_examples() {
        let u = Universe::new(2);
        assert_eq!(FiniteRelation::full(u.clone()).complementary_inversion().pair_count(), 0);
        assert_eq!(
            FiniteRelation::empty(u.clone()).complementary_inversion(),
            FiniteRelation::full(u)
        );
        assert_eq!(rel(2, &[(0, 1)]).complementary_inversion(), rel(2, &[(0, 0), (1, 1), (0, 1)]));
    }

    #[test]
    fn aa_property_examples() {
        let c = cycle3();
        assert!(!c.has_aa_property());
        let cyc = c.asym_cycle().unwrap();
        assert_eq!(cyc.len(), 3);
        for i in 0..cyc.len() {
            assert!(c.contains(cyc[i], cyc[(i + 1) % cyc.len()]));
        }
        assert!(rel(3, &[(0, 1), (1, 0), (1, 1)]).has_aa_property());
        let strict = FiniteRelation::induce(Universe::new(4), &[3, 1, 2, 0], true).unwrap();
        assert!(strict.has_aa_property());
        let order = FiniteRelation::induce(Universe::new(4), &[3, 1, 2, 0], false).unwrap();
        assert!(order.has_aa_property());
    }

    #[test]
    fn symmetric_examples() {
        assert!(rel(2, &[(0, 1), (1, 0)]).is_symmetric());
        assert!(!rel(2, &[(0, 1)]).is_symmetric());
        assert!(rel(2, &[]).is_symmetric());
    }

    #[test]
    fn altiset_examples() {
        let poset = rel(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)]);
        assert_eq!(poset.altiset(None).unwrap(), set(&[2]));
        assert_eq!(cycle3().altiset(None).unwrap(), set(&[]));
        let sym = rel(3, &[(0, 1), (1, 0), (2, 2)]);
        assert_eq!(sym.altiset(None).unwrap(), set(&[0, 1, 2]));
        assert_eq!(cycle3().altiset(Some(&set(&[0, 1]))).unwrap(), set(&[1]));
        assert!(matches!(
            cycle3().altiset(Some(&set(&[0, 3]))),
            Err(Error::Index { index: 3, size: 3 })
        ));
        let empty = FiniteRelation::empty(Universe::new(0));
        assert!(empty.altiset(None).unwrap().is_empty());
    }

    #[test]
    fn restrict_examples() {
        let full = FiniteRelation::full(Universe::new(3));
        let (r, map) = full.restrict(&set(&[0])).unwrap();
        assert_eq!(r, rel(1, &[(0, 0)]));
        assert_eq!(map, vec![0]);
        let c = cycle3();
        assert_eq!(c.restrict(&set(&[0, 1, 2])).unwrap().0, c);
        let (r, map) = rel(3, &[(0, 2)]).restrict(&set(&[0, 2])).unwrap();
        assert_eq!(r, rel(2, &[(0, 1)]));
        assert_eq!(map, vec![0, 2]);
        assert!(c.restrict(&set(&[5])).is_err());
    }

    #[test]
    fn restrict_keeps_labels() {
        let u = Universe::with_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let r = FiniteRelation::from_pairs(u, [(0, 2)]).unwrap();
        let (sub, _) = r.restrict(&set(&[1, 2])).unwrap();
        assert_eq!(sub.universe().labels().unwrap(), ["b", "c"]);
        assert!(Universe::with_labels(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn non_induced_counterexample_breaks_decomposition() {
        // a=0, b=1, c=2; ≤1 = {(a,b),(a,c),(b,c)} ∪ Δ, ≤2 = {(c,a)} ∪ Δ
        let u = Universe::new(3);
        let le1 = FiniteRelation::from_pairs(u.clone(), [(0, 1), (0, 2), (1, 2), (0, 0), (1, 1), (2, 2)]).unwrap();
        let le2 = FiniteRelation::from_pairs(u, [(2, 0), (0, 0), (1, 1), (2, 2)]).unwrap();
        let r = FiniteRelation::union(&[&le1, &le2]).unwrap();
        assert_eq!(r.altiset(Some(&set(&[0]))).unwrap(), set(&[0]));
        assert_eq!(r.altiset(Some(&set(&[1, 2]))).unwrap(), set(&[2]));
        assert_eq!(r.altiset(Some(&set(&[0, 2]))).unwrap(), set(&[0, 2]));
        assert_eq!(r.altiset(None).unwrap(), set(&[2]));
        assert_eq!(r.decomposed_altiset(&[set(&[0]), set(&[1, 2])]).unwrap(), set(&[0, 2]));
        assert!(matches!(
            r.decomposed_altiset(&[set(&[0, 1]), set(&[1, 2])]),
            Err(Error::Partition { element: 1 })
        ));
    }
}
