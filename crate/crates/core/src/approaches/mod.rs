//! Decision procedures certifying that a highest weight admits a splitting
//! of its module with the properties required for negative Ricci curvature.

use crate::error::{Error, Result};
use crate::repweights::{HighestWeight, WeightSystem, SUPPORT_CAP};
use crate::rootsys::{build_root_datum, dominant, RootDatum, SemisimpleType, SimpleType};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

/// Outcome of the three approaches for one highest weight. Witnesses are
/// dominant weights in ω-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproachReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub lambda: Vec<i64>,
    pub dim: u128,
    pub chamber: Option<Vec<i64>>,
    pub orbit: Option<Vec<i64>>,
    pub zero: bool,
    pub certified: bool,
}

impl ApproachReport {
    /// Names of the approaches that succeeded.
    pub fn certified_by(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.chamber.is_some() {
            out.push("chamber");
        }
        if self.orbit.is_some() {
            out.push("orbit");
        }
        if self.zero {
            out.push("zero");
        }
        out
    }
}

/// A strictly dominant weight of the module, if any. A regular weight exists
/// iff one lies in the fundamental chamber, since the support is W-stable.
/// The first such weight in support order is returned, so `λ` when it is
/// itself regular.
pub fn chamber_check(ws: &WeightSystem) -> Option<Vec<i64>> {
    ws.dominant_support().iter().find(|e| e.mu.iter().all(|&a| a > 0)).map(|e| e.mu.clone())
}

/// Whether `dom(μ + α) ≠ μ` for every root `α`. The condition is W-invariant
/// in `μ`, so testing dominant weights suffices.
pub fn orbit_condition(d: &RootDatum, mu: &[i64]) -> Result<bool> {
    for r in d.positive_roots_omega() {
        for sign in [1i64, -1] {
            let shifted: Vec<i64> = mu.iter().zip(r).map(|(a, b)| a + sign * b).collect();
            if dominant(d, &shifted)? == mu {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A nonzero dominant weight whose orbit is never hit by a root shift.
/// Candidates are tried from `λ` downwards. On a product every simple-factor
/// component of the witness must be nonzero, so that the orbit spans the dual
/// Cartan subalgebra.
pub fn orbit_check(ws: &WeightSystem) -> Result<Option<Vec<i64>>> {
    let d = ws.lambda().datum();
    for e in ws.dominant_support() {
        let spans = d.factor_ranges().iter().all(|r| e.mu[r.clone()].iter().any(|&a| a != 0));
        if spans && orbit_condition(d, &e.mu)? {
            return Ok(Some(e.mu.clone()));
        }
    }
    Ok(None)
}

/// Whether `0` and every root are weights. Roots form one W-orbit per root
/// length in each factor, represented by the dominant roots.
pub fn zero_weight_check(ws: &WeightSystem) -> Result<bool> {
    let d = ws.lambda().datum();
    if !ws.is_weight(&vec![0; d.rank()])? {
        return Ok(false);
    }
    for r in d.dominant_roots() {
        if !ws.is_weight(&d.positive_roots_omega()[r])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Run all three approaches.
pub fn classify(lambda: &HighestWeight) -> Result<ApproachReport> {
    classify_with_cap(lambda, SUPPORT_CAP)
}

pub fn classify_with_cap(lambda: &HighestWeight, cap: usize) -> Result<ApproachReport> {
    let ws = WeightSystem::with_cap(lambda, cap)?;
    classify_system(&ws)
}

pub fn classify_system(ws: &WeightSystem) -> Result<ApproachReport> {
    let lambda = ws.lambda();
    let chamber = chamber_check(ws);
    let orbit = orbit_check(ws)?;
    let zero = zero_weight_check(ws)?;
    Ok(ApproachReport {
        ty: lambda.datum().semisimple_type().to_string(),
        lambda: lambda.coords().to_vec(),
        dim: ws.dim(),
        certified: chamber.is_some() || orbit.is_some() || zero,
        chamber,
        orbit,
        zero,
    })
}

/// All highest weights with coordinates in `[0, max_coeff]`, lexicographic.
pub fn lambda_grid(rank: usize, max_coeff: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=max_coeff).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// Classify every highest weight with coordinates in `[0, max_coeff]`.
pub fn scan(ty: &SemisimpleType, max_coeff: i64, cap: usize) -> Result<Vec<ApproachReport>> {
    if max_coeff < 0 {
        return Err(Error::InvalidParams("max_coeff must be nonnegative".into()));
    }
    let d = Arc::new(build_root_datum(ty)?);
    let grid = lambda_grid(d.rank(), max_coeff);
    let points = (max_coeff as u128 + 1).checked_pow(d.rank() as u32);
    if points.is_none_or(|p| p > cap as u128) {
        return Err(Error::CapExceeded { what: "scan grid", cap });
    }
    grid.into_par_iter().map(|l| classify_with_cap(&HighestWeight::new(d.clone(), l)?, cap)).collect()
}

/// Regular weight of an outer tensor product built from per-factor regular
/// weights; `None` as soon as one factor has none.
pub fn product_chamber_check(ty: &SemisimpleType, lambdas: &[Vec<i64>]) -> Result<Option<Vec<i64>>> {
    if lambdas.len() != ty.factors().len() {
        return Err(Error::DimensionMismatch { expected: ty.factors().len(), got: lambdas.len() });
    }
    let mut out = Vec::new();
    for (f, l) in ty.factors().iter().zip(lambdas) {
        let d = Arc::new(build_root_datum(&SemisimpleType::simple(*f))?);
        let ws = WeightSystem::new(&HighestWeight::new(d, l.clone())?)?;
        match chamber_check(&ws) {
            Some(w) => out.extend(w),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Three-valued outcome of the finiteness search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finiteness {
    Holds,
    Fails,
    BudgetExhausted,
}

/// Default number of dominant weights the finiteness search may visit.
pub const FINITENESS_BUDGET: usize = 1_000_000;

/// For each `i`, search for positive roots `β_1, …, β_l` with
/// `rω_i − Σβ_k` strictly dominant. The search walks the dominant weights
/// below `rω_i`, which it reaches completely, so `Fails` is exhaustive.
pub fn finiteness_search(ty: SimpleType, r: i64, budget: usize) -> Result<Finiteness> {
    if r < 1 {
        return Err(Error::InvalidParams("r must be at least 1".into()));
    }
    let d = build_root_datum(&SemisimpleType::simple(ty))?;
    let n = d.rank();
    let mut visited = 0usize;
    for i in 0..n {
        let mut start = vec![0i64; n];
        start[i] = r;
        let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut found = false;
        while let Some(mu) = queue.pop_front() {
            if mu.iter().all(|&a| a > 0) {
                found = true;
                break;
            }
            visited += 1;
            if visited > budget {
                return Ok(Finiteness::BudgetExhausted);
            }
            for root in d.positive_roots_omega() {
                let nu: Vec<i64> = mu.iter().zip(root).map(|(a, b)| a - b).collect();
                if nu.iter().all(|&a| a >= 0) && seen.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
        }
        if !found {
            return Ok(Finiteness::Fails);
        }
    }
    Ok(Finiteness::Holds)
}

/// Whether every `rω_i` reaches the fundamental chamber; budget exhaustion
/// is an error, never `false`.
pub fn verify_finiteness_r(ty: SimpleType, r: i64, budget: usize) -> Result<bool> {
    match finiteness_search(ty, r, budget)? {
        Finiteness::Holds => Ok(true),
        Finiteness::Fails => Ok(false),
        Finiteness::BudgetExhausted => Err(Error::BudgetExceeded(budget)),
    }
}
