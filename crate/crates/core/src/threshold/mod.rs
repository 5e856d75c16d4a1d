//! Threshold-function representations of Boolean functions.
//!
//! * monomial and clause LTFs, for the linear schemes;
//! * DNF support -> greedy decision tree -> decision list -> PTF, whose
//!   degree is at most `floor(log2 w) + 1`;
//! * balanced partitioning of the support into `D` groups.

mod ltf;
mod ptf;
mod tree;

use thiserror::Error;

use crate::boolfn::{dnf_from_truth_table, BooleanFunction, DnfSupport};

pub use ltf::LinearThresholdFunction;
pub use ptf::{build_ptf, PolynomialThresholdFunction, PtfEvaluator};
pub use tree::{
    build_decision_tree, tree_to_decision_list, DecisionList, DecisionTree, ListEntry, Literal,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThresholdError {
    #[error("function has empty support (constant 0)")]
    EmptySupport,
    #[error("partition count {d} outside 1..={w}")]
    PartitionCount { d: usize, w: usize },
    #[error("no leaf within rank bound: shallowest at depth {depth} in a {leaves}-leaf tree")]
    NoShallowLeaf { depth: usize, leaves: usize },
}

/// Splits the support into `d` groups in order, sizes `ceil(w/d)` first and
/// `floor(w/d)` after.
pub fn partition_dnf(supp: &DnfSupport, d: usize) -> Result<Vec<DnfSupport>, ThresholdError> {
    let w = supp.weight();
    if d == 0 || d > w {
        return Err(ThresholdError::PartitionCount { d, w });
    }
    let (base, extra) = (w / d, w % d);
    let mut groups = Vec::with_capacity(d);
    let mut start = 0;
    for g in 0..d {
        let size = base + usize::from(g < extra);
        groups.push(DnfSupport::from_indices(
            supp.vars(),
            supp.indices()[start..start + size].to_vec(),
        ));
        start += size;
    }
    Ok(groups)
}

/// DNF -> tree -> list -> PTF for one support set.
pub fn ptf_for_support(supp: &DnfSupport) -> Result<PolynomialThresholdFunction, ThresholdError> {
    let tree = build_decision_tree(supp)?;
    let list = tree_to_decision_list(tree, supp.vars())?;
    Ok(build_ptf(list))
}

pub fn ptf_for_function(f: &BooleanFunction) -> Result<PolynomialThresholdFunction, ThresholdError> {
    ptf_for_support(&dnf_from_truth_table(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn supp(w: usize) -> DnfSupport {
        DnfSupport::from_indices(4, (0..w).collect())
    }

    #[test]
    fn partition_sizes() {
        let sizes = |w, d| {
            partition_dnf(&supp(w), d)
                .unwrap()
                .iter()
                .map(DnfSupport::weight)
                .collect::<Vec<_>>()
        };
        assert_eq!(sizes(5, 1), vec![5]);
        assert_eq!(sizes(5, 5), vec![1; 5]);
        assert_eq!(sizes(5, 2), vec![3, 2]);
        assert_eq!(sizes(7, 3), vec![3, 2, 2]);
        let groups = partition_dnf(&supp(5), 2).unwrap();
        assert_eq!(groups[0].indices(), &[0, 1, 2]);
        assert_eq!(groups[1].indices(), &[3, 4]);
    }

    #[test]
    fn partition_range() {
        assert_eq!(
            partition_dnf(&supp(3), 0),
            Err(ThresholdError::PartitionCount { d: 0, w: 3 })
        );
        assert_eq!(
            partition_dnf(&supp(3), 4),
            Err(ThresholdError::PartitionCount { d: 4, w: 3 })
        );
    }
}
