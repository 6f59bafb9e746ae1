//! Heaps: finite labeled posets evaluated in a monoid.
//!
//! A heap assigns each node of a finite strict poset a monoid label. When
//! the labels of every pair of incomparable nodes commute, multiplying the
//! labels along any linear extension gives the same value; [`heap_prod`]
//! computes it by the recursion that strips one maximal node at a time,
//! with the empty poset evaluating to the identity. The commutation
//! hypothesis is checked up front and its failure is an error —
//! [`heap_prod_along`] exists to force an evaluation along one explicit
//! extension when diagnosing such a failure.

use core::fmt::Debug;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use thiserror::Error;

use crate::monoid::Monoid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError<N: Debug> {
    #[error("node {0:?} is declared twice")]
    DuplicateNode(N),
    #[error("node {0:?} is not in the poset")]
    UnknownNode(N),
    /// The declared relation orders some node below itself.
    #[error("the order relation cycles through node {0:?}")]
    Cycle(N),
    /// Linear-extension enumeration refuses large posets.
    #[error("poset with {len} nodes exceeds the enumeration bound of {bound}")]
    TooManyNodes { len: usize, bound: usize },
    /// Two incomparable nodes carry labels that do not commute, so the
    /// product would depend on the chosen linear extension.
    #[error("incomparable nodes {0:?} and {1:?} carry non-commuting labels")]
    NonCommutingPair(N, N),
    /// The sequence handed to [`heap_prod_along`] is not a linear extension
    /// of the poset.
    #[error("the given sequence is not a linear extension of the poset")]
    InvalidExtension,
}

/// A finite strict poset with a label on every node. The relation is kept
/// transitively closed, so `lt` answers the full order, not just the
/// covering pairs given at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoset<N: Ord, A> {
    labels: BTreeMap<N, A>,
    below: BTreeSet<(N, N)>,
}

impl<N: Ord + Clone + Debug, A: Clone> LabeledPoset<N, A> {
    /// Builds a poset from labeled nodes and strict relations `(a, b)`
    /// meaning `a < b`. Relations may be covering pairs or any generating
    /// set; the transitive closure is taken here. Cycles — including
    /// reflexive pairs — are rejected.
    pub fn new<T, R>(labels: T, relations: R) -> Result<Self, PosetError<N>>
    where
        T: IntoIterator<Item = (N, A)>,
        R: IntoIterator<Item = (N, N)>,
    {
        let mut label_map = BTreeMap::new();
        for (node, label) in labels {
            if label_map.insert(node.clone(), label).is_some() {
                return Err(PosetError::DuplicateNode(node));
            }
        }
        let mut below = BTreeSet::new();
        for (a, b) in relations {
            for node in [&a, &b] {
                if !label_map.contains_key(node) {
                    return Err(PosetError::UnknownNode(node.clone()));
                }
            }
            if a == b {
                return Err(PosetError::Cycle(a));
            }
            below.insert((a, b));
        }
        // Warshall closure over the node list.
        let nodes: Vec<N> = label_map.keys().cloned().collect();
        for k in &nodes {
            let into_k: Vec<N> = below
                .iter()
                .filter(|(_, b)| b == k)
                .map(|(a, _)| a.clone())
                .collect();
            let from_k: Vec<N> = below
                .iter()
                .filter(|(a, _)| a == k)
                .map(|(_, b)| b.clone())
                .collect();
            for a in &into_k {
                for b in &from_k {
                    below.insert((a.clone(), b.clone()));
                }
            }
        }
        for node in &nodes {
            if below.contains(&(node.clone(), node.clone())) {
                return Err(PosetError::Cycle(node.clone()));
            }
        }
        Ok(Self { labels: label_map, below })
    }

    /// The poset with no nodes.
    pub fn empty() -> Self {
        Self { labels: BTreeMap::new(), below: BTreeSet::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The nodes in ascending order.
    pub fn nodes(&self) -> impl Iterator<Item = &N> {
        self.labels.keys()
    }

    pub fn contains(&self, node: &N) -> bool {
        self.labels.contains_key(node)
    }

    pub fn label(&self, node: &N) -> Option<&A> {
        self.labels.get(node)
    }

    /// Strict order: true iff `a < b`.
    pub fn lt(&self, a: &N, b: &N) -> bool {
        self.below.contains(&(a.clone(), b.clone()))
    }

    /// True iff the nodes are distinct and unrelated either way.
    pub fn incomparable(&self, a: &N, b: &N) -> bool {
        a != b && !self.lt(a, b) && !self.lt(b, a)
    }

    /// The nodes with nothing above them, in ascending order.
    pub fn maximal_nodes(&self) -> Vec<N> {
        self.labels
            .keys()
            .filter(|m| !self.labels.keys().any(|b| self.lt(m, b)))
            .cloned()
            .collect()
    }

    /// The restriction of the poset to all nodes except `node`. The
    /// relation of a restriction is the restricted relation; closure is
    /// preserved.
    pub fn remove(&self, node: &N) -> Self {
        let labels = self
            .labels
            .iter()
            .filter(|(n, _)| *n != node)
            .map(|(n, l)| (n.clone(), l.clone()))
            .collect();
        let below = self
            .below
            .iter()
            .filter(|(a, b)| a != node && b != node)
            .cloned()
            .collect();
        Self { labels, below }
    }
}

/// True iff `order` lists every node exactly once and never places a node
/// before something below it.
pub fn is_linear_extension<N: Ord + Clone + Debug, A: Clone>(
    poset: &LabeledPoset<N, A>,
    order: &[N],
) -> bool {
    if order.len() != poset.len() {
        return false;
    }
    let distinct: BTreeSet<&N> = order.iter().collect();
    if distinct.len() != order.len() || !order.iter().all(|n| poset.contains(n)) {
        return false;
    }
    for (i, earlier) in order.iter().enumerate() {
        for later in &order[i + 1..] {
            if poset.lt(later, earlier) {
                return false;
            }
        }
    }
    true
}

/// Ceiling on poset size for [`enumerate_linear_extensions`]; an antichain
/// of `n` nodes has `n!` extensions.
pub const LINEAR_EXTENSION_BOUND: usize = 10;

/// All linear extensions of the poset, by backtracking over minimal nodes.
/// The empty poset has exactly one extension, the empty sequence. Posets
/// larger than [`LINEAR_EXTENSION_BOUND`] are refused.
pub fn enumerate_linear_extensions<N: Ord + Clone + Debug, A: Clone>(
    poset: &LabeledPoset<N, A>,
) -> Result<Vec<Vec<N>>, PosetError<N>> {
    if poset.len() > LINEAR_EXTENSION_BOUND {
        return Err(PosetError::TooManyNodes {
            len: poset.len(),
            bound: LINEAR_EXTENSION_BOUND,
        });
    }
    let mut remaining: BTreeSet<N> = poset.nodes().cloned().collect();
    let mut prefix = Vec::with_capacity(poset.len());
    let mut out = Vec::new();
    backtrack(poset, &mut remaining, &mut prefix, &mut out);
    Ok(out)
}

fn backtrack<N: Ord + Clone + Debug, A: Clone>(
    poset: &LabeledPoset<N, A>,
    remaining: &mut BTreeSet<N>,
    prefix: &mut Vec<N>,
    out: &mut Vec<Vec<N>>,
) {
    if remaining.is_empty() {
        out.push(prefix.clone());
        return;
    }
    let minimal: Vec<N> = remaining
        .iter()
        .filter(|m| !remaining.iter().any(|a| poset.lt(a, m)))
        .cloned()
        .collect();
    for node in minimal {
        remaining.remove(&node);
        prefix.push(node.clone());
        backtrack(poset, remaining, prefix, out);
        prefix.pop();
        remaining.insert(node);
    }
}

/// The first pair of incomparable nodes (in ascending pair order) whose
/// labels fail to commute in `monoid`, if any. `None` certifies the
/// hypothesis under which [`heap_prod`] is extension-independent.
pub fn find_non_commuting_incomparable<N, M>(
    poset: &LabeledPoset<N, M::Elem>,
    monoid: &M,
) -> Option<(N, N)>
where
    N: Ord + Clone + Debug,
    M: Monoid,
{
    let nodes: Vec<&N> = poset.nodes().collect();
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            if !poset.incomparable(a, b) {
                continue;
            }
            let la = poset.label(a).expect("node is in the poset");
            let lb = poset.label(b).expect("node is in the poset");
            if !monoid.elem_eq(&monoid.op(la, lb), &monoid.op(lb, la)) {
                return Some(((*a).clone(), (*b).clone()));
            }
        }
    }
    None
}

/// The product of the heap's labels, by the maximal-node recursion: the
/// empty poset gives the identity, and otherwise the value is the product
/// over the poset minus one maximal node, times that node's label. Ties
/// between maximal nodes go to the least node, but under the commutation
/// hypothesis — verified here before evaluating — every choice and indeed
/// every linear extension gives the same value.
pub fn heap_prod<N, M>(
    poset: &LabeledPoset<N, M::Elem>,
    monoid: &M,
) -> Result<M::Elem, PosetError<N>>
where
    N: Ord + Clone + Debug,
    M: Monoid,
{
    if let Some((a, b)) = find_non_commuting_incomparable(poset, monoid) {
        return Err(PosetError::NonCommutingPair(a, b));
    }
    let mut rest = poset.clone();
    let mut peeled = Vec::with_capacity(poset.len());
    while !rest.is_empty() {
        let node = rest.maximal_nodes().first().cloned().expect("nonempty poset has a maximal node");
        peeled.push(poset.label(&node).expect("node is in the poset").clone());
        rest = rest.remove(&node);
    }
    let mut acc = monoid.identity();
    for label in peeled.iter().rev() {
        acc = monoid.op(&acc, label);
    }
    Ok(acc)
}

/// Multiplies the labels along one explicit linear extension, skipping the
/// commutation check. A diagnostic tool: when [`heap_prod`] reports
/// non-commuting labels, this still evaluates each extension so the
/// disagreement can be seen directly.
pub fn heap_prod_along<N, M>(
    poset: &LabeledPoset<N, M::Elem>,
    order: &[N],
    monoid: &M,
) -> Result<M::Elem, PosetError<N>>
where
    N: Ord + Clone + Debug,
    M: Monoid,
{
    if !is_linear_extension(poset, order) {
        return Err(PosetError::InvalidExtension);
    }
    let mut acc = monoid.identity();
    for node in order {
        acc = monoid.op(&acc, poset.label(node).expect("extension nodes are in the poset"));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{Mat2, Mat2Mul, MulMonoid};
    use alloc::vec::Vec;

    fn chain() -> LabeledPoset<u8, i64> {
        LabeledPoset::new([(1, 1i64), (2, 2), (3, 3)], [(1, 2), (2, 3)]).unwrap()
    }

    /// a and b incomparable, both below c.
    fn vee() -> LabeledPoset<char, i64> {
        LabeledPoset::new([('a', 2i64), ('b', 3), ('c', 5)], [('a', 'c'), ('b', 'c')]).unwrap()
    }

    #[test]
    fn closure_extends_the_covering_relation() {
        let poset = chain();
        assert!(poset.lt(&1, &2));
        assert!(poset.lt(&2, &3));
        assert!(poset.lt(&1, &3));
        assert!(!poset.lt(&3, &1));
    }

    #[test]
    fn incomparability_is_what_remains() {
        let poset = vee();
        assert!(poset.incomparable(&'a', &'b'));
        assert!(!poset.incomparable(&'a', &'c'));
        assert!(!poset.incomparable(&'a', &'a'));
    }

    #[test]
    fn cycles_are_rejected() {
        let two_cycle = LabeledPoset::new([(1, 0i64), (2, 0)], [(1, 2), (2, 1)]);
        assert!(matches!(two_cycle.unwrap_err(), PosetError::Cycle(_)));
        let reflexive = LabeledPoset::new([(1, 0i64)], [(1, 1)]);
        assert_eq!(reflexive.unwrap_err(), PosetError::Cycle(1));
    }

    #[test]
    fn bad_declarations_are_rejected() {
        let duplicated = LabeledPoset::new([(1, 0i64), (1, 1)], []);
        assert_eq!(duplicated.unwrap_err(), PosetError::DuplicateNode(1));
        let dangling = LabeledPoset::new([(1, 0i64)], [(1, 9)]);
        assert_eq!(dangling.unwrap_err(), PosetError::UnknownNode(9));
    }

    #[test]
    fn empty_heap_evaluates_to_identity() {
        let poset = LabeledPoset::<u8, i64>::empty();
        assert_eq!(heap_prod(&poset, &MulMonoid::<i64>::new()), Ok(1));
        assert_eq!(enumerate_linear_extensions(&poset), Ok(vec![Vec::new()]));
        assert!(poset.maximal_nodes().is_empty());
    }

    #[test]
    fn chain_has_one_extension_and_the_obvious_product() {
        let poset = chain();
        assert_eq!(enumerate_linear_extensions(&poset), Ok(vec![vec![1, 2, 3]]));
        assert_eq!(heap_prod(&poset, &MulMonoid::<i64>::new()), Ok(6));
    }

    #[test]
    fn vee_is_extension_invariant() {
        let poset = vee();
        let extensions = enumerate_linear_extensions(&poset).unwrap();
        let expected: Vec<Vec<char>> = vec![vec!['a', 'b', 'c'], vec!['b', 'a', 'c']];
        assert_eq!(extensions, expected);
        let monoid = MulMonoid::<i64>::new();
        assert_eq!(heap_prod(&poset, &monoid), Ok(30));
        for order in &extensions {
            assert_eq!(heap_prod_along(&poset, order, &monoid), Ok(30));
        }
    }

    #[test]
    fn extension_recognition() {
        let poset = vee();
        assert!(is_linear_extension(&poset, &['b', 'a', 'c']));
        assert!(!is_linear_extension(&poset, &['c', 'a', 'b']));
        assert!(!is_linear_extension(&poset, &['a', 'b']));
        assert!(!is_linear_extension(&poset, &['a', 'a', 'c']));
    }

    #[test]
    fn comparable_matrix_labels_are_fine() {
        // a chain imposes a unique order, so nothing needs to commute
        let x = Mat2([[1, 1], [0, 1]]);
        let y = Mat2([[1, 0], [1, 1]]);
        let poset = LabeledPoset::new([(1u8, x), (2, y)], [(1, 2)]).unwrap();
        assert_eq!(heap_prod(&poset, &Mat2Mul), Ok(Mat2([[2, 1], [1, 1]])));
    }

    #[test]
    fn incomparable_matrix_labels_are_rejected() {
        let x = Mat2([[1, 1], [0, 1]]);
        let y = Mat2([[1, 0], [1, 1]]);
        let poset = LabeledPoset::new([(1u8, x), (2, y)], []).unwrap();
        assert_eq!(heap_prod(&poset, &Mat2Mul), Err(PosetError::NonCommutingPair(1, 2)));
        assert_eq!(find_non_commuting_incomparable(&poset, &Mat2Mul), Some((1, 2)));
    }

    #[test]
    fn forcing_an_extension_exposes_the_disagreement() {
        let x = Mat2([[1, 1], [0, 1]]);
        let y = Mat2([[1, 0], [1, 1]]);
        let poset = LabeledPoset::new([(1u8, x), (2, y)], []).unwrap();
        let xy = heap_prod_along(&poset, &[1, 2], &Mat2Mul).unwrap();
        let yx = heap_prod_along(&poset, &[2, 1], &Mat2Mul).unwrap();
        assert_eq!(xy, Mat2([[2, 1], [1, 1]]));
        assert_eq!(yx, Mat2([[1, 1], [1, 2]]));
        assert_ne!(xy, yx);
        assert_eq!(
            heap_prod_along(&poset, &[1, 1], &Mat2Mul),
            Err(PosetError::InvalidExtension)
        );
    }

    #[test]
    fn every_extension_of_the_n_poset_agrees() {
        // a < c, b < c, b < d: the four-node "N"
        let poset = LabeledPoset::new(
            [('a', 2i64), ('b', 3), ('c', 5), ('d', 7)],
            [('a', 'c'), ('b', 'c'), ('b', 'd')],
        )
        .unwrap();
        let monoid = MulMonoid::<i64>::new();
        let value = heap_prod(&poset, &monoid).unwrap();
        assert_eq!(value, 210);
        let extensions = enumerate_linear_extensions(&poset).unwrap();
        assert!(extensions.len() > 1);
        for order in &extensions {
            assert_eq!(heap_prod_along(&poset, order, &monoid), Ok(value));
        }
    }

    #[test]
    fn restriction_preserves_the_order() {
        let poset = chain().remove(&2);
        assert_eq!(poset.len(), 2);
        assert!(poset.lt(&1, &3));
        assert_eq!(poset.maximal_nodes(), vec![3]);
    }

    #[test]
    fn oversized_posets_are_refused() {
        let labels = (0u8..11).map(|n| (n, 1i64));
        let poset = LabeledPoset::new(labels, []).unwrap();
        assert_eq!(
            enumerate_linear_extensions(&poset),
            Err(PosetError::TooManyNodes { len: 11, bound: LINEAR_EXTENSION_BOUND })
        );
    }
}
