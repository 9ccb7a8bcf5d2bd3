use super::rep::RealRep;
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use serde::Serialize;
use std::ops::Range;

/// Default numerical tolerance for the six properties.
pub const SIX_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct ConditionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    /// For property 5 the smallest restriction norm (must exceed the
    /// tolerance); for the others the largest violation (must stay below it).
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SixReport {
    pub conditions: Vec<ConditionResult>,
}

impl SixReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn passed(&self, index: usize) -> bool {
        self.conditions[index - 1].passed
    }
}

const NAMES: [&str; 6] = [
    "V1 and V2 are invariant under the Cartan part",
    "root elements map V1 into V2",
    "V1 is orthogonal to V2",
    "Cartan elements act skew-symmetrically",
    "root elements restricted to V1 are nonzero",
    "restrictions to V1 are pairwise trace-orthogonal",
];

fn sub_norm(m: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> f64 {
    let mut s = 0.0;
    for &r in rows {
        for &c in cols {
            s += m[(r, c)] * m[(r, c)];
        }
    }
    s.sqrt()
}

/// Check the six properties for `V₁ = ⊕_{μ∈S} V(μ)` and `V₂` its complement
/// in the realified module.
pub fn check_six_conditions(rep: &RealRep, s: &[Vec<i64>], tol: f64) -> Result<SixReport> {
    let mut in_v1 = vec![false; rep.dim];
    for mu in s {
        let b: Range<usize> =
            rep.block_of(mu).ok_or_else(|| Error::InvalidParams(format!("{mu:?} is not a weight of the module")))?;
        for i in b {
            in_v1[i] = true;
        }
    }
    let v1: Vec<usize> = (0..rep.dim).filter(|&i| in_v1[i]).collect();
    let v2: Vec<usize> = (0..rep.dim).filter(|&i| !in_v1[i]).collect();
    let all: Vec<usize> = (0..rep.dim).collect();
    let cartan = &rep.matrices[..rep.rank];
    let roots = &rep.matrices[rep.rank..];

    let r1 = cartan.iter().map(|m| sub_norm(m, &v2, &v1) + sub_norm(m, &v1, &v2)).fold(0.0, f64::max);
    let r2 = roots.iter().map(|m| sub_norm(m, &v1, &v1)).fold(0.0, f64::max);
    // The inner product is the identity in this basis, so its V1×V2 block
    // vanishes; what remains is the orthonormalization error.
    let r3 = rep.orthonormality_residual;
    let r4 = cartan.iter().map(|m| (m + m.transpose()).norm()).fold(0.0, f64::max);
    let r5 = roots.iter().map(|m| sub_norm(m, &all, &v1)).fold(f64::INFINITY, f64::min);
    let mut r6: f64 = 0.0;
    for a in 0..roots.len() {
        for b in a + 1..roots.len() {
            let mut t = 0.0;
            for &c in &v1 {
                t += roots[a].column(c).dot(&roots[b].column(c));
            }
            r6 = r6.max(t.abs());
        }
    }
    let r5 = if roots.is_empty() { 0.0 } else { r5 };
    let residuals = [r1, r2, r3, r4, r5, r6];
    let conditions = residuals
        .iter()
        .enumerate()
        .map(|(i, &r)| ConditionResult {
            index: i + 1,
            name: NAMES[i],
            passed: if i == 4 { r > tol } else { r < tol },
            residual: r,
        })
        .collect();
    Ok(SixReport { conditions })
}
