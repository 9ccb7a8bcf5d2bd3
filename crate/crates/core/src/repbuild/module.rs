use super::graded::{BlockOp, WeightBasis};
use crate::error::{Error, Result};
use crate::exact::{column_basis, inverse, matmul, transpose};
use crate::repweights::{HighestWeight, WeightSystem};
use crate::rootsys::ORBIT_CAP;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Reverse;

pub type R = BigRational;

fn int(n: i64) -> R {
    R::from_integer(BigInt::from(n))
}

/// `V_λ` over the rationals, spanned by lowering monomials applied to the
/// highest-weight vector. `gram[k]` is the contravariant form on block `k`,
/// for which `e_i` and `f_i` are adjoint.
#[derive(Debug, Clone)]
pub struct ExactModule {
    pub lambda: HighestWeight,
    pub basis: WeightBasis,
    pub e: Vec<BlockOp<R>>,
    pub f: Vec<BlockOp<R>>,
    pub gram: Vec<Vec<Vec<R>>>,
}

impl ExactModule {
    /// Build `V_λ`; fails when its dimension exceeds `dim_cap`.
    pub fn build(lambda: &HighestWeight, dim_cap: usize) -> Result<Self> {
        let ws = WeightSystem::new(lambda)?;
        if ws.dim() > dim_cap as u128 {
            return Err(Error::CapExceeded { what: "representation dimension", cap: dim_cap });
        }
        let d = lambda.datum().clone();
        let n = d.rank();
        let mut all: Vec<(Vec<i64>, u64, i64)> = ws
            .all_weights(ORBIT_CAP)?
            .into_iter()
            .map(|(w, m)| {
                let depth = lambda.depth_of(&w).map(|c| c.iter().sum()).unwrap_or(i64::MAX);
                (w, m, depth)
            })
            .collect();
        all.sort_by_key(|(w, _, depth)| (*depth, Reverse(w.clone())));
        let expected: Vec<usize> = all.iter().map(|(_, m, _)| *m as usize).collect();
        let weights: Vec<Vec<i64>> = all.into_iter().map(|(w, _, _)| w).collect();
        let count = weights.len();
        let mut basis = WeightBasis::new(weights, vec![0; count]);
        let alpha: Vec<Vec<i64>> = d.cartan_matrix().to_vec();
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<i64>>();

        let mut e: Vec<BlockOp<R>> = (0..n).map(|i| BlockOp::zero(alpha[i].clone(), count)).collect();
        let mut f: Vec<BlockOp<R>> = (0..n).map(|i| BlockOp::zero(neg(&alpha[i]), count)).collect();
        let mut gram: Vec<Vec<Vec<R>>> = vec![Vec::new(); count];
        basis.dims[0] = 1;
        gram[0] = vec![vec![R::one()]];

        for k in 1..count {
            let up: Vec<Option<usize>> = (0..n).map(|i| basis.shifted(k, &alpha[i])).collect();
            let mut sig_offset = vec![0usize; n];
            let mut sig_len = 0;
            for i in 0..n {
                sig_offset[i] = sig_len;
                if let Some(t) = up[i] {
                    sig_len += basis.dims[t];
                }
            }
            // candidates f_j b_m for b_m in V(μ + α_j), with their e-signatures
            let mut cands: Vec<(usize, usize)> = Vec::new();
            let mut sigs: Vec<Vec<R>> = Vec::new();
            for j in 0..n {
                let Some(nu) = up[j] else { continue };
                for m in 0..basis.dims[nu] {
                    let mut sig = vec![R::zero(); sig_len];
                    for i in 0..n {
                        let Some(tau) = up[i] else { continue };
                        // e_i f_j b = f_j e_i b + δ_ij h_j b
                        if let (Some(ei), Some(sigma)) = (&e[i].blocks[nu], basis.shifted(nu, &alpha[i])) {
                            let fj = f[j].blocks[sigma]
                                .as_ref()
                                .ok_or_else(|| Error::Internal("lowering block missing during construction".into()))?;
                            for (r, row) in fj.iter().enumerate() {
                                let mut acc = R::zero();
                                for (s, x) in row.iter().enumerate() {
                                    if !x.is_zero() && !ei[s][m].is_zero() {
                                        acc += x * &ei[s][m];
                                    }
                                }
                                sig[sig_offset[i] + r] += acc;
                            }
                        }
                        if i == j {
                            debug_assert_eq!(tau, nu);
                            sig[sig_offset[i] + m] += int(basis.weights[nu][j]);
                        }
                    }
                    cands.push((j, m));
                    sigs.push(sig);
                }
            }
            let (pivots, coords) = column_basis(&sigs);
            let r = pivots.len();
            if r != expected[k] {
                return Err(Error::Degenerate(format!(
                    "weight {:?}: constructed dimension {r}, expected multiplicity {}",
                    basis.weights[k], expected[k]
                )));
            }
            basis.dims[k] = r;
            for i in 0..n {
                let Some(tau) = up[i] else { continue };
                let block: Vec<Vec<R>> = (0..basis.dims[tau])
                    .map(|row| pivots.iter().map(|&p| sigs[p][sig_offset[i] + row].clone()).collect())
                    .collect();
                e[i].blocks[k] = Some(block);
            }
            for j in 0..n {
                let Some(nu) = up[j] else { continue };
                let mut block = vec![vec![R::zero(); basis.dims[nu]]; r];
                for (c, &(cj, m)) in cands.iter().enumerate() {
                    if cj == j {
                        for (row, x) in coords[c].iter().enumerate() {
                            block[row][m] = x.clone();
                        }
                    }
                }
                f[j].blocks[nu] = Some(block);
            }
            // ⟨f_j b_m, u_l⟩ = ⟨b_m, e_j u_l⟩
            let mut g = vec![vec![R::zero(); r]; r];
            for (p, &pc) in pivots.iter().enumerate() {
                let (j, m) = cands[pc];
                let nu = up[j].expect("candidate from a weight");
                let ej = e[j].blocks[k].as_ref().expect("raising block just built");
                for l in 0..r {
                    let mut acc = R::zero();
                    for (mm, gx) in gram[nu][m].iter().enumerate() {
                        if !gx.is_zero() && !ej[mm][l].is_zero() {
                            acc += gx * &ej[mm][l];
                        }
                    }
                    g[p][l] = acc;
                }
            }
            for p in 0..r {
                for l in 0..p {
                    if g[p][l] != g[l][p] {
                        return Err(Error::Internal(format!(
                            "contravariant form not symmetric at weight {:?}",
                            basis.weights[k]
                        )));
                    }
                }
            }
            gram[k] = g;
        }
        basis = WeightBasis::new(basis.weights, basis.dims);
        Ok(ExactModule { lambda: lambda.clone(), basis, e, f, gram })
    }

    pub fn dim(&self) -> usize {
        self.basis.total_dim()
    }
}

/// `G = L D Lᵀ` with `L` unit lower triangular; `None` unless `G` is positive
/// definite.
pub fn ldl(g: &[Vec<R>]) -> Option<(Vec<Vec<R>>, Vec<R>)> {
    let n = g.len();
    let mut l = vec![vec![R::zero(); n]; n];
    let mut d = vec![R::zero(); n];
    for j in 0..n {
        let mut dj = g[j][j].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        if !dj.is_positive() {
            return None;
        }
        l[j][j] = R::one();
        for i in j + 1..n {
            let mut s = g[i][j].clone();
            for k in 0..j {
                s -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = s / &dj;
        }
        d[j] = dj;
    }
    Some((l, d))
}

/// Change of basis to the orthonormal basis `u = b · L^{-T} D^{-1/2}` of each
/// weight block.
#[derive(Debug, Clone)]
pub struct Orthonormalizer {
    lt: Vec<Vec<Vec<R>>>,
    lt_inv: Vec<Vec<Vec<R>>>,
    d: Vec<Vec<R>>,
}

impl Orthonormalizer {
    pub fn new(module: &ExactModule) -> Result<Self> {
        let mut lt = Vec::new();
        let mut lt_inv = Vec::new();
        let mut diag = Vec::new();
        for (k, g) in module.gram.iter().enumerate() {
            let (l, d) = ldl(g).ok_or_else(|| {
                Error::Degenerate(format!(
                    "contravariant form not positive definite at weight {:?}",
                    module.basis.weights[k]
                ))
            })?;
            let t = transpose(&l);
            lt_inv.push(inverse(&t).expect("unit triangular"));
            lt.push(t);
            diag.push(d);
        }
        Ok(Orthonormalizer { lt, lt_inv, d: diag })
    }

    /// Express an operator in the orthonormal basis.
    pub fn apply(&self, op: &BlockOp<R>, basis: &WeightBasis) -> Result<BlockOp<f64>> {
        let mut out = BlockOp::zero(op.shift.clone(), op.blocks.len());
        for (s, b) in op.blocks.iter().enumerate() {
            let Some(b) = b else { continue };
            let t = basis
                .shifted(s, &op.shift)
                .ok_or_else(|| Error::Internal("operator block into a non-weight".into()))?;
            let m = matmul(&matmul(&self.lt[t], b), &self.lt_inv[s]);
            let block: Vec<Vec<f64>> = m
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, x)| {
                            let ratio = (&self.d[t][r] / &self.d[s][c]).to_f64().unwrap_or(f64::NAN);
                            x.to_f64().unwrap_or(f64::NAN) * ratio.sqrt()
                        })
                        .collect()
                })
                .collect();
            if block.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::Degenerate("orthonormalized entry is not finite".into()));
            }
            out.blocks[s] = Some(block);
        }
        Ok(out)
    }
}

impl Orthonormalizer {
    /// Largest entry of `Uᵀ G U − I` over all blocks, in floating point.
    pub fn residual(&self, module: &ExactModule) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, g) in module.gram.iter().enumerate() {
            let m = matmul(&matmul(&transpose(&self.lt_inv[k]), g), &self.lt_inv[k]);
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    let scale = (&self.d[k][r] * &self.d[k][c]).to_f64().unwrap_or(f64::NAN).sqrt();
                    let v = x.to_f64().unwrap_or(f64::NAN) / scale;
                    let target = if r == c { 1.0 } else { 0.0 };
                    worst = worst.max((v - target).abs());
                }
            }
        }
        worst
    }
}
