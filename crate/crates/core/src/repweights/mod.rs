//! Weight systems of irreducible highest-weight modules.

use crate::error::{Error, Result};
use crate::rootsys::{dominant, orbit_size, weyl_orbit, RootDatum, WeightVec};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

/// Default cap on the number of dominant weights in a support.
pub const SUPPORT_CAP: usize = 1_000_000;

/// Largest accepted highest-weight coordinate.
pub const MAX_COORD: i64 = 1_000_000;

/// A dominant integral weight `λ = Σ a_i ω_i` of a fixed root datum.
#[derive(Debug, Clone)]
pub struct HighestWeight {
    datum: Arc<RootDatum>,
    coords: Vec<i64>,
}

impl PartialEq for HighestWeight {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.datum.semisimple_type() == other.datum.semisimple_type()
    }
}

impl HighestWeight {
    pub fn new(datum: Arc<RootDatum>, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != datum.rank() {
            return Err(Error::DimensionMismatch { expected: datum.rank(), got: coords.len() });
        }
        if coords.iter().any(|&a| a < 0) {
            return Err(Error::NotDominant(coords));
        }
        if coords.iter().any(|&a| a > MAX_COORD) {
            return Err(Error::InvalidParams(format!("highest-weight coordinates are limited to {MAX_COORD}")));
        }
        Ok(HighestWeight { datum, coords })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    /// ω-coordinates.
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn to_weight_vec(&self) -> WeightVec {
        self.datum.from_omega_int(&self.coords)
    }

    /// Simple-root coordinates of `λ − μ` if they are nonnegative integers.
    pub fn depth_of(&self, mu: &[i64]) -> Option<Vec<i64>> {
        let diff: Vec<i64> = self.coords.iter().zip(mu).map(|(a, b)| a - b).collect();
        let c = self.datum.omega_int_to_alpha(&diff);
        if c.iter().all(|x| x.is_integer() && *x.numer() >= 0) {
            Some(c.iter().map(|x| x.to_integer()).collect())
        } else {
            None
        }
    }

    /// Restriction to one simple factor.
    pub fn factor(&self, f: usize, datum: Arc<RootDatum>) -> Result<HighestWeight> {
        let r = self.datum.factor_ranges()[f].clone();
        HighestWeight::new(datum, self.coords[r].to_vec())
    }
}

impl std::fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A dominant weight with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantEntry {
    /// ω-coordinates.
    pub mu: Vec<i64>,
    pub mult: u64,
    /// Height of `λ − μ`.
    pub level: i64,
}

/// The weights of `V_λ` with multiplicities, stored through the dominant
/// chamber. Entries are ordered by level, then by ω-coordinates descending.
#[derive(Debug, Clone)]
pub struct WeightSystem {
    lambda: HighestWeight,
    entries: Vec<DominantEntry>,
    index: HashMap<Vec<i64>, usize>,
    dim: u128,
}

impl WeightSystem {
    pub fn new(lambda: &HighestWeight) -> Result<Self> {
        Self::with_cap(lambda, SUPPORT_CAP)
    }

    pub fn with_cap(lambda: &HighestWeight, cap: usize) -> Result<Self> {
        let support = enumerate_dominant(lambda, cap)?;
        let index: HashMap<Vec<i64>, usize> = support.iter().enumerate().map(|(i, (mu, _))| (mu.clone(), i)).collect();
        let mults = freudenthal(lambda, &support, &index)?;
        let entries: Vec<DominantEntry> =
            support.into_iter().zip(mults).map(|((mu, level), mult)| DominantEntry { mu, mult, level }).collect();
        let d = lambda.datum();
        let mut dim = 0u128;
        for e in &entries {
            let size = orbit_size(d, &e.mu)?;
            dim = size
                .checked_mul(e.mult as u128)
                .and_then(|x| x.checked_add(dim))
                .ok_or(Error::Overflow("module dimension"))?;
        }
        Ok(WeightSystem { lambda: lambda.clone(), entries, index, dim })
    }

    pub fn lambda(&self) -> &HighestWeight {
        &self.lambda
    }

    pub fn dominant_support(&self) -> &[DominantEntry] {
        &self.entries
    }

    /// Sum of all multiplicities.
    pub fn dim(&self) -> u128 {
        self.dim
    }

    /// Multiplicity of an integral weight in ω-coordinates.
    pub fn multiplicity(&self, mu: &[i64]) -> Result<u64> {
        let dom = dominant(self.lambda.datum(), mu)?;
        Ok(self.index.get(&dom).map_or(0, |&i| self.entries[i].mult))
    }

    /// Multiplicity of an arbitrary weight; non-integral weights have none.
    pub fn multiplicity_vec(&self, mu: &WeightVec) -> Result<u64> {
        match self.lambda.datum().to_omega_int(mu)? {
            Some(w) => self.multiplicity(&w),
            None => Ok(0),
        }
    }

    pub fn is_weight(&self, mu: &[i64]) -> Result<bool> {
        Ok(self.multiplicity(mu)? > 0)
    }

    pub fn is_weight_vec(&self, mu: &WeightVec) -> Result<bool> {
        Ok(self.multiplicity_vec(mu)? > 0)
    }

    /// Every weight with its multiplicity, orbit by orbit in support order.
    pub fn all_weights(&self, orbit_cap: usize) -> Result<Vec<(Vec<i64>, u64)>> {
        let mut out = Vec::new();
        for e in &self.entries {
            for w in weyl_orbit(self.lambda.datum(), &e.mu, orbit_cap)? {
                out.push((w, e.mult));
            }
        }
        Ok(out)
    }
}

/// Dominant weights below `λ` with their levels, in canonical order.
///
/// Every dominant `μ < λ` has a positive root `α` with `μ + α` dominant and
/// `≤ λ`, so descending by positive roots through dominant weights reaches
/// the whole support.
fn enumerate_dominant(lambda: &HighestWeight, cap: usize) -> Result<Vec<(Vec<i64>, i64)>> {
    let d = lambda.datum();
    let roots = d.positive_roots_omega();
    let heights: Vec<i64> = d.positive_roots_alpha().iter().map(|c| c.iter().sum()).collect();
    let mut level: HashMap<Vec<i64>, i64> = HashMap::new();
    let mut queue = VecDeque::new();
    level.insert(lambda.coords().to_vec(), 0);
    queue.push_back(lambda.coords().to_vec());
    while let Some(mu) = queue.pop_front() {
        let l = level[&mu];
        for (r, h) in roots.iter().zip(&heights) {
            let nu: Vec<i64> = mu.iter().zip(r).map(|(a, b)| a - b).collect();
            if nu.iter().any(|&x| x < 0) || level.contains_key(&nu) {
                continue;
            }
            if level.len() >= cap {
                return Err(Error::CapExceeded { what: "dominant support", cap });
            }
            level.insert(nu.clone(), l + h);
            queue.push_back(nu);
        }
    }
    let mut out: Vec<(Vec<i64>, i64)> = level.into_iter().collect();
    out.sort_by(|(a, la), (b, lb)| la.cmp(lb).then_with(|| b.cmp(a)));
    Ok(out)
}

/// Freudenthal's recursion over the dominant support:
/// `(|λ+ρ|² − |μ+ρ|²) m(μ) = 2 Σ_{α>0} Σ_{k≥1} ⟨μ+kα, α⟩ m(μ+kα)`.
fn freudenthal(
    lambda: &HighestWeight,
    support: &[(Vec<i64>, i64)],
    index: &HashMap<Vec<i64>, usize>,
) -> Result<Vec<u64>> {
    let d = lambda.datum();
    let n = d.rank();
    let rho = vec![1i64; n];
    let shift = |v: &[i64]| -> Vec<i64> { v.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let lr = shift(lambda.coords());
    let norm_lr = d.scaled_inner(&lr, &lr);
    let mut mult = vec![0u64; support.len()];
    for (idx, (mu, _)) in support.iter().enumerate() {
        if idx == 0 {
            mult[0] = 1;
            continue;
        }
        let mut acc: i128 = 0;
        for alpha in d.positive_roots_omega() {
            let mut cur: Vec<i64> = mu.clone();
            loop {
                for (c, a) in cur.iter_mut().zip(alpha) {
                    *c += a;
                }
                let dom = dominant(d, &cur)?;
                let Some(&j) = index.get(&dom) else { break };
                if j >= idx {
                    return Err(Error::Internal(format!("multiplicity of {dom:?} needed before it is known")));
                }
                acc += d.scaled_inner(&cur, alpha) * mult[j] as i128;
            }
        }
        let mr = shift(mu);
        let denom = norm_lr - d.scaled_inner(&mr, &mr);
        if denom == 0 || (2 * acc) % denom != 0 {
            return Err(Error::Internal(format!(
                "Freudenthal recursion at {mu:?}: numerator {} not divisible by {denom}",
                2 * acc
            )));
        }
        let m = 2 * acc / denom;
        mult[idx] = u64::try_from(m).map_err(|_| Error::Overflow("weight multiplicity"))?;
    }
    Ok(mult)
}

/// The dominant weights of `V_λ` with multiplicities.
pub fn dominant_support(lambda: &HighestWeight) -> Result<Vec<(WeightVec, u64)>> {
    let ws = WeightSystem::new(lambda)?;
    let d = lambda.datum();
    Ok(ws.entries.iter().map(|e| (d.from_omega_int(&e.mu), e.mult)).collect())
}

/// `dim V_λ(μ)`; zero when `μ` is not a weight.
pub fn multiplicity(lambda: &HighestWeight, mu: &WeightVec) -> Result<u64> {
    WeightSystem::new(lambda)?.multiplicity_vec(mu)
}

pub fn is_weight(lambda: &HighestWeight, mu: &WeightVec) -> Result<bool> {
    Ok(multiplicity(lambda, mu)? > 0)
}

/// Weyl's dimension formula `∏_{α>0} ⟨λ+ρ,α⟩ / ⟨ρ,α⟩`.
pub fn dimension(lambda: &HighestWeight) -> Result<u128> {
    let d = lambda.datum();
    // 6⟨ω_i, α_i⟩ is an integer for every simple root
    let sym6: Vec<u64> = d.half_norms().iter().map(|h| (h * 6).to_integer() as u64).collect();
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for c in d.positive_roots_alpha() {
        let mut top = 0u64;
        let mut bottom = 0u64;
        for i in 0..c.len() {
            let w = c[i] as u64 * sym6[i];
            top += (lambda.coords()[i] as u64 + 1) * w;
            bottom += w;
        }
        num *= top;
        den *= bottom;
    }
    let q = &num / &den;
    if !(num % den).is_zero() {
        return Err(Error::Internal("Weyl dimension formula is not integral".into()));
    }
    q.to_u128().ok_or(Error::Overflow("Weyl dimension"))
}

/// Dominant weights in the same root-lattice coset as `λ` that lie below it;
/// these are exactly the dominant weights of `V_λ`.
pub fn dominant_weights_below(lambda: &HighestWeight, cap: usize) -> Result<HashSet<Vec<i64>>> {
    Ok(enumerate_dominant(lambda, cap)?.into_iter().map(|(mu, _)| mu).collect())
}

#[cfg(test)]
mod tests;
