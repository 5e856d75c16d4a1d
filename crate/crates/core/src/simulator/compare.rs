//! Side-by-side thresholds for one Boolean function.

use serde::{Deserialize, Serialize};

use crate::boolfn::{stats, BooleanFunction};
use crate::schemes::{outer_bound, security_threshold, SchemeError, SchemeKind, Threshold, ThresholdParams};

/// Complexity columns are quoted asymptotics, never timed.
pub const COMPLEXITY_NOTE: &str = "documented, not measured";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub scheme: String,
    pub threshold: Threshold,
    /// Worker polynomial degree; absent for the bound row.
    pub degree: Option<usize>,
    pub complexity: String,
}

fn complexity(kind: SchemeKind) -> &'static str {
    match kind {
        SchemeKind::LccDirect => "O(m N log^3 N loglog N)",
        SchemeKind::Anf => "O(r(f) N log^2 N loglog N)",
        SchemeKind::Dnf => "O(w(f) N log^2 N loglog N)",
        SchemeKind::Ptf => "O(N log^2 N loglog N)",
        _ => "not tabulated",
    }
}

/// LCC, ANF, DNF, PTF, one D-PTF row per entry of `ds`, then the outer bound.
pub fn comparison_table(
    f: &BooleanFunction,
    n: usize,
    k: usize,
    ds: &[usize],
) -> Result<Vec<ComparisonRow>, SchemeError> {
    let st = stats(f);
    let params = ThresholdParams {
        weight: Some(st.weight),
        degree: Some(st.degree),
        ..ThresholdParams::new(n, k)
    };
    let row = |kind: SchemeKind, p: ThresholdParams, label: String| -> Result<ComparisonRow, SchemeError> {
        Ok(ComparisonRow {
            scheme: label,
            threshold: security_threshold(kind, &p)?,
            degree: Some(crate::schemes::effective_degree(kind, &p)?),
            complexity: complexity(kind).to_string(),
        })
    };
    let mut rows = Vec::new();
    for kind in [SchemeKind::LccDirect, SchemeKind::Anf, SchemeKind::Dnf] {
        rows.push(row(kind, params, kind.to_string())?);
    }
    if st.weight > 0 {
        rows.push(row(SchemeKind::Ptf, params, "ptf".into())?);
        for &d in ds {
            rows.push(row(SchemeKind::DPtf, ThresholdParams { d: Some(d), ..params }, format!("d-ptf (D={d})"))?);
        }
    }
    rows.push(ComparisonRow {
        scheme: "outer bound".into(),
        threshold: Threshold {
            beta: outer_bound(n, k),
            feasible: true,
        },
        degree: None,
        complexity: "-".into(),
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn and3_rows() {
        let f = BooleanFunction::from_support(3, &[7]).unwrap();
        let rows = comparison_table(&f, 10, 2, &[1]).unwrap();
        let betas: Vec<_> = rows.iter().map(|r| (r.scheme.as_str(), r.threshold.beta)).collect();
        assert_eq!(
            betas,
            vec![("lcc-direct", 3), ("anf", 4), ("dnf", 4), ("ptf", 4), ("d-ptf (D=1)", 4), ("outer bound", 4)]
        );
        assert_eq!(rows[0].complexity, "O(m N log^3 N loglog N)");
    }

    #[test]
    fn constant_zero_skips_ptf() {
        let f = BooleanFunction::from_support(2, &[]).unwrap();
        let rows = comparison_table(&f, 6, 2, &[1]).unwrap();
        assert_eq!(rows.len(), 4);
    }
}
