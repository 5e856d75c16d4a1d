//! Greedy decision trees over the support of a DNF, and their conversion to
//! short-monomial decision lists.

use std::fmt;

use super::{LinearThresholdFunction, ThresholdError};
use crate::boolfn::{floor_log2, DnfSupport};
use crate::field::Field;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn holds_at(&self, index: usize) -> bool {
        (index >> (self.var - 1) & 1 == 1) == self.positive
    }

    /// `X[j]` or `1 - X[j]` over an arbitrary field point.
    pub fn eval_in<F: Field>(&self, field: &F, x: &[F::Elem]) -> F::Elem {
        let xj = &x[self.var - 1];
        if self.positive {
            xj.clone()
        } else {
            field.sub(&field.one(), xj)
        }
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "X[{}]", self.var)
        } else {
            write!(f, "~X[{}]", self.var)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DecisionTree {
    /// Reached by exactly one support vector; labeled with its clause LTF.
    Ltf {
        support_index: usize,
        ltf: LinearThresholdFunction,
    },
    /// Reached by no support vector.
    Zero,
    Node {
        var: usize,
        zero: Box<DecisionTree>,
        one: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn ltf_leaves(&self) -> usize {
        match self {
            DecisionTree::Ltf { .. } => 1,
            DecisionTree::Zero => 0,
            DecisionTree::Node { zero, one, .. } => zero.ltf_leaves() + one.ltf_leaves(),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            DecisionTree::Node { zero, one, .. } => zero.leaves() + one.leaves(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Node { zero, one, .. } => 1 + zero.depth().max(one.depth()),
            _ => 0,
        }
    }

    pub fn eval_index(&self, index: usize) -> bool {
        match self {
            DecisionTree::Ltf { ltf, .. } => ltf.fires_at(index),
            DecisionTree::Zero => false,
            DecisionTree::Node { var, zero, one } => {
                if index >> (var - 1) & 1 == 1 {
                    one.eval_index(index)
                } else {
                    zero.eval_index(index)
                }
            }
        }
    }

    /// Shallowest leaf, zero branch first on ties. Returns the path as
    /// literals.
    fn shallowest_leaf(&self) -> Vec<Literal> {
        let mut frontier: Vec<(&DecisionTree, Vec<Literal>)> = vec![(self, Vec::new())];
        loop {
            let mut next = Vec::new();
            for (node, path) in frontier {
                match node {
                    DecisionTree::Node { var, zero, one } => {
                        for (child, positive) in [(zero, false), (one, true)] {
                            let mut p = path.clone();
                            p.push(Literal {
                                var: *var,
                                positive,
                            });
                            next.push((child.as_ref(), p));
                        }
                    }
                    _ => return path,
                }
            }
            frontier = next;
        }
    }

    fn leaf_at(&self, path: &[Literal]) -> &DecisionTree {
        match (self, path.split_first()) {
            (DecisionTree::Node { zero, one, .. }, Some((lit, rest))) => {
                if lit.positive { one } else { zero }.leaf_at(rest)
            }
            _ => self,
        }
    }

    /// Removes the leaf at `path`, splicing its sibling into the parent's
    /// place. `path` must be non-empty.
    fn remove_leaf(self, path: &[Literal]) -> DecisionTree {
        match self {
            DecisionTree::Node { var, zero, one } => {
                let (lit, rest) = path.split_first().expect("non-empty path");
                match (rest.is_empty(), lit.positive) {
                    (true, true) => *zero,
                    (true, false) => *one,
                    (false, true) => DecisionTree::Node {
                        var,
                        zero,
                        one: Box::new(one.remove_leaf(rest)),
                    },
                    (false, false) => DecisionTree::Node {
                        var,
                        zero: Box::new(zero.remove_leaf(rest)),
                        one,
                    },
                }
            }
            leaf => leaf,
        }
    }

    /// Splices out every constant-0 leaf. Clause LTFs only fire on their own
    /// support vector, so semantics are unchanged.
    fn prune_zero_leaves(self) -> DecisionTree {
        match self {
            DecisionTree::Node { var, zero, one } => {
                match (zero.prune_zero_leaves(), one.prune_zero_leaves()) {
                    (DecisionTree::Zero, other) | (other, DecisionTree::Zero) => other,
                    (z, o) => DecisionTree::Node {
                        var,
                        zero: Box::new(z),
                        one: Box::new(o),
                    },
                }
            }
            leaf => leaf,
        }
    }
}

/// Builds a tree in which every support vector reaches its own leaf.
///
/// Greedy splitter: at each node, among variables not yet on the path, pick
/// the one minimizing the larger child support count (lowest index on ties).
pub fn build_decision_tree(supp: &DnfSupport) -> Result<DecisionTree, ThresholdError> {
    if supp.is_empty() {
        return Err(ThresholdError::EmptySupport);
    }
    let m = supp.vars();
    let indices: Vec<usize> = supp.indices().to_vec();
    Ok(grow(&indices, m, 0))
}

fn grow(indices: &[usize], m: usize, used: u32) -> DecisionTree {
    match indices {
        [] => DecisionTree::Zero,
        [single] => DecisionTree::Ltf {
            support_index: *single,
            ltf: LinearThresholdFunction::for_clause_index(*single, m),
        },
        _ => {
            let var = (1..=m)
                .filter(|v| used >> (v - 1) & 1 == 0)
                .min_by_key(|v| {
                    let ones = indices.iter().filter(|&&i| i >> (v - 1) & 1 == 1).count();
                    ones.max(indices.len() - ones)
                })
                .expect("distinct support vectors differ on an unused variable");
            let (one, zero): (Vec<usize>, Vec<usize>) =
                indices.iter().partition(|&&i| i >> (var - 1) & 1 == 1);
            let used = used | 1 << (var - 1);
            DecisionTree::Node {
                var,
                zero: Box::new(grow(&zero, m, used)),
                one: Box::new(grow(&one, m, used)),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ListEntry {
    pub monomial: Vec<Literal>,
    pub ltf: LinearThresholdFunction,
}

impl ListEntry {
    pub fn monomial_holds_at(&self, index: usize) -> bool {
        self.monomial.iter().all(|l| l.holds_at(index))
    }
}

/// "if C_1(X) then LTF_1(X) else if C_2(X) then ..."
#[derive(Clone, Debug, PartialEq)]
pub struct DecisionList {
    m: usize,
    entries: Vec<ListEntry>,
}

impl DecisionList {
    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[ListEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Longest monomial, in literals.
    pub fn max_monomial_len(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.monomial.len())
            .max()
            .unwrap_or(0)
    }

    pub fn eval_index(&self, index: usize) -> bool {
        self.entries
            .iter()
            .find(|e| e.monomial_holds_at(index))
            .is_some_and(|e| e.ltf.fires_at(index))
    }
}

/// Repeatedly emits the shallowest leaf (depth at most `floor(log2 L)` for a
/// tree with `L` leaves) and splices it out.
pub fn tree_to_decision_list(tree: DecisionTree, m: usize) -> Result<DecisionList, ThresholdError> {
    let mut tree = tree.prune_zero_leaves();
    let mut entries = Vec::new();
    loop {
        let leaves = tree.leaves();
        let path = tree.shallowest_leaf();
        let bound = floor_log2(leaves);
        if path.len() > bound {
            return Err(ThresholdError::NoShallowLeaf {
                depth: path.len(),
                leaves,
            });
        }
        match tree.leaf_at(&path) {
            DecisionTree::Ltf { ltf, .. } => entries.push(ListEntry {
                monomial: path.clone(),
                ltf: ltf.clone(),
            }),
            DecisionTree::Zero => return Err(ThresholdError::EmptySupport),
            DecisionTree::Node { .. } => unreachable!("shallowest_leaf returns a leaf"),
        }
        if path.is_empty() {
            break;
        }
        tree = tree.remove_leaf(&path);
    }
    Ok(DecisionList { m, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{dnf_from_truth_table, BooleanFunction};

    fn supp(m: usize, idx: &[usize]) -> DnfSupport {
        dnf_from_truth_table(&BooleanFunction::from_support(m, idx).unwrap())
    }

    #[test]
    fn single_support_is_a_leaf() {
        let t = build_decision_tree(&supp(3, &[5])).unwrap();
        assert!(matches!(t, DecisionTree::Ltf { support_index: 5, .. }));
        let list = tree_to_decision_list(t, 3).unwrap();
        assert_eq!(list.len(), 1);
        assert!(list.entries()[0].monomial.is_empty());
    }

    #[test]
    fn two_point_support_splits_on_first_variable() {
        let t = build_decision_tree(&supp(4, &[0, 15])).unwrap();
        match &t {
            DecisionTree::Node { var, zero, one } => {
                assert_eq!(*var, 1);
                assert!(matches!(**zero, DecisionTree::Ltf { support_index: 0, .. }));
                assert!(matches!(**one, DecisionTree::Ltf { support_index: 15, .. }));
            }
            other => panic!("expected a split, got {other:?}"),
        }
        let list = tree_to_decision_list(t, 4).unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(
            list.entries()[0].monomial,
            vec![Literal { var: 1, positive: false }]
        );
        assert!(list.max_monomial_len() <= 1);
        for i in 0..16 {
            assert_eq!(list.eval_index(i), i == 0 || i == 15);
        }
    }

    #[test]
    fn full_support_gives_complete_tree() {
        let all: Vec<usize> = (0..8).collect();
        let t = build_decision_tree(&supp(3, &all)).unwrap();
        assert_eq!(t.depth(), 3);
        assert_eq!(t.leaves(), 8);
        assert_eq!(t.ltf_leaves(), 8);
    }

    #[test]
    fn balanced_four_leaf_tree() {
        // Supports differ only on X1, X2.
        let t = build_decision_tree(&supp(4, &[0, 1, 2, 3])).unwrap();
        assert_eq!(t.depth(), 2);
        let list = tree_to_decision_list(t, 4).unwrap();
        assert_eq!(list.len(), 4);
        assert!(list.max_monomial_len() <= 2);
        for i in 0..16 {
            assert_eq!(list.eval_index(i), i < 4);
        }
    }

    #[test]
    fn empty_support_rejected() {
        assert_eq!(
            build_decision_tree(&supp(3, &[])),
            Err(ThresholdError::EmptySupport)
        );
    }

    #[test]
    fn zero_leaves_are_pruned() {
        let t = DecisionTree::Node {
            var: 2,
            zero: Box::new(DecisionTree::Zero),
            one: Box::new(DecisionTree::Ltf {
                support_index: 2,
                ltf: LinearThresholdFunction::for_clause_index(2, 2),
            }),
        };
        let list = tree_to_decision_list(t, 2).unwrap();
        assert_eq!(list.len(), 1);
        for i in 0..4 {
            assert_eq!(list.eval_index(i), i == 2);
        }
    }
}
