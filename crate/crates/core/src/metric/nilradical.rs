use super::algebra::{MetricLieAlgebra, Role};
use crate::approaches::classify_system;
use crate::error::{Error, Result};
use crate::repbuild::{build_rep, check_six_conditions, REP_DIM_CAP, SIX_TOL};
use crate::repweights::{HighestWeight, WeightSystem};
use crate::rootsys::{weyl_orbit, ORBIT_CAP};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct BlockCheck {
    pub indices: Vec<usize>,
    /// `c` when `ad Z = c · Id` on the block.
    pub z_eigenvalue: Option<f64>,
    pub z_positive: bool,
    /// No proper invariant subspace: the only symmetric operators commuting
    /// with `u` on the block are scalars.
    pub irreducible: bool,
    /// The highest weight proposed for this block, if any.
    pub candidate: Option<Vec<i64>>,
    /// Whether the Cartan spectrum of the block matches the realified
    /// candidate module.
    pub character_matches: Option<bool>,
    pub certified_by: Vec<&'static str>,
    pub six_conditions_pass: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NilradicalReport {
    pub blocks: Vec<BlockCheck>,
    /// `ad Z` is a positive multiple of the identity on every block and some
    /// block passes the six conditions. Blocks need not be irreducible: a
    /// block where `ad Z = c · Id` splits into irreducible summands on which
    /// `ad Z` is still `c · Id`.
    pub hypotheses_hold: bool,
}

fn restrict(m: &DMatrix<f64>, idx: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(idx.len(), idx.len(), |r, c| m[(idx[r], idx[c])])
}

fn leak(m: &DMatrix<f64>, idx: &[usize]) -> f64 {
    let inside: std::collections::HashSet<usize> = idx.iter().copied().collect();
    let mut s: f64 = 0.0;
    for &c in idx {
        for r in 0..m.nrows() {
            if !inside.contains(&r) {
                s = s.max(m[(r, c)].abs());
            }
        }
    }
    s
}

/// Dimension of the space of symmetric matrices commuting with every `a`.
fn symmetric_commutant_dim(actions: &[DMatrix<f64>], m: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|p| (p..m).map(move |q| (p, q))).collect();
    let mut cols = DMatrix::zeros(actions.len() * m * m, pairs.len());
    for (c, &(p, q)) in pairs.iter().enumerate() {
        let mut e = DMatrix::zeros(m, m);
        e[(p, q)] = 1.0;
        e[(q, p)] = 1.0;
        for (k, a) in actions.iter().enumerate() {
            let d = &e * a - a * &e;
            for (i, x) in d.iter().enumerate() {
                cols[(k * m * m + i, c)] = *x;
            }
        }
    }
    let gram = cols.transpose() * &cols;
    let eig = SymmetricEigen::new(gram);
    let top = eig.eigenvalues.amax().max(1.0);
    eig.eigenvalues.iter().filter(|&&x| x < 1e-10 * top).count()
}

/// Check the hypotheses for `(ℝZ ⊕ u) ⋉ n` with a proposed decomposition of
/// `n` into `u`-submodules. `candidates[b]` optionally proposes the highest
/// weight of block `b` (as a realified irreducible module).
pub fn verify_nilradical_hypotheses(
    alg: &MetricLieAlgebra,
    decomposition: &[Vec<usize>],
    candidates: &[Option<HighestWeight>],
) -> Result<NilradicalReport> {
    let z = alg.indices(|r| r == Role::Center);
    if z.len() != 1 {
        return Err(Error::InvalidAlgebra("expected exactly one element Z".into()));
    }
    let u = alg.indices(Role::is_compact);
    let radical = alg.indices(|r| r.radical_block().is_some());
    let mut covered: Vec<usize> = decomposition.iter().flatten().copied().collect();
    covered.sort_unstable();
    if covered != radical {
        return Err(Error::InvalidParams("decomposition must partition the radical".into()));
    }
    if !candidates.is_empty() && candidates.len() != decomposition.len() {
        return Err(Error::DimensionMismatch { expected: decomposition.len(), got: candidates.len() });
    }
    let ad = alg.ad_matrices();
    let zad = &ad[z[0]];
    let mut cartan: Vec<(usize, usize)> = alg
        .roles()
        .iter()
        .enumerate()
        .filter_map(|(k, r)| if let Role::Cartan(i) = r { Some((*i, k)) } else { None })
        .collect();
    cartan.sort_unstable();
    let mut blocks = Vec::new();
    for (b, idx) in decomposition.iter().enumerate() {
        for &k in u.iter().chain(&z) {
            let l = leak(&ad[k], idx);
            if l > 1e-9 {
                return Err(Error::InvalidParams(format!("block {b} is not invariant under {}", alg.labels()[k])));
            }
        }
        let zb = restrict(zad, idx);
        let c = zb.trace() / idx.len() as f64;
        let dev = (&zb - DMatrix::identity(idx.len(), idx.len()) * c).amax();
        let z_eigenvalue = (dev < 1e-9 * (1.0 + c.abs())).then_some(c);
        let actions: Vec<DMatrix<f64>> = u.iter().map(|&k| restrict(&ad[k], idx)).collect();
        if actions.iter().any(|a| (a + a.transpose()).amax() > 1e-9) {
            return Err(Error::InvalidParams(format!(
                "u does not act skew-symmetrically on block {b}; an orthonormal basis is required"
            )));
        }
        let irreducible = symmetric_commutant_dim(&actions, idx.len()) == 1;

        let mut check = BlockCheck {
            indices: idx.clone(),
            z_eigenvalue,
            z_positive: z_eigenvalue.is_some_and(|c| c > 0.0),
            irreducible,
            candidate: None,
            character_matches: None,
            certified_by: Vec::new(),
            six_conditions_pass: None,
        };
        if let Some(Some(l)) = candidates.get(b) {
            check.candidate = Some(l.coords().to_vec());
            let ws = WeightSystem::new(l)?;
            let d = l.datum();
            if cartan.len() != d.rank() {
                return Err(Error::DimensionMismatch { expected: d.rank(), got: cartan.len() });
            }
            let weights: Vec<f64> = (0..d.rank()).map(|i| 1.0 + (i as f64 + 2.0).sqrt() / 7.0).collect();
            let mut h = DMatrix::zeros(idx.len(), idx.len());
            for (i, &(_, k)) in cartan.iter().enumerate() {
                h += restrict(&ad[k], idx) * weights[i];
            }
            let mut got: Vec<f64> = SymmetricEigen::new(-(&h * &h)).eigenvalues.iter().copied().collect();
            let mut want = Vec::new();
            for (mu, m) in ws.all_weights(ORBIT_CAP)? {
                let v: f64 = (0..d.rank())
                    .map(|i| {
                        let half = d.half_norms()[i];
                        weights[i] * mu[i] as f64 * *half.numer() as f64 / *half.denom() as f64
                    })
                    .sum();
                for _ in 0..2 * m {
                    want.push(v * v);
                }
            }
            got.sort_by(|a, b| a.total_cmp(b));
            want.sort_by(|a, b| a.total_cmp(b));
            let matches =
                got.len() == want.len() && got.iter().zip(&want).all(|(a, b)| (a - b).abs() < 1e-6 * (1.0 + b.abs()));
            check.character_matches = Some(matches);
            if matches {
                let report = classify_system(&ws)?;
                check.certified_by = report.certified_by();
                let s: Option<Vec<Vec<i64>>> = if let Some(mu) = &report.chamber {
                    Some(vec![mu.clone()])
                } else if let Some(mu) = &report.orbit {
                    Some(weyl_orbit(d, mu, ORBIT_CAP)?)
                } else if report.zero {
                    Some(vec![vec![0; d.rank()]])
                } else {
                    None
                };
                if let Some(s) = s {
                    let real = build_rep(l, REP_DIM_CAP)?.realify();
                    check.six_conditions_pass = Some(check_six_conditions(&real, &s, SIX_TOL)?.all_pass());
                }
            }
        }
        blocks.push(check);
    }
    let hypotheses_hold =
        blocks.iter().all(|b| b.z_positive) && blocks.iter().any(|b| b.six_conditions_pass == Some(true));
    Ok(NilradicalReport { blocks, hypotheses_hold })
}
