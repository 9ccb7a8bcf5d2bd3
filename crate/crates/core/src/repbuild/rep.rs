use super::chevalley::{root_vectors, ChevalleyData};
use super::graded::WeightBasis;
use super::module::{ExactModule, Orthonormalizer};
use crate::error::{Error, Result};
use crate::repweights::HighestWeight;
use nalgebra::{Complex, DMatrix};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::ops::Range;
use std::sync::Arc;

type C64 = Complex<f64>;

/// Default cap on the complex dimension of a constructed module.
pub const REP_DIM_CAP: usize = 256;

/// Matrices of `V_λ` in a unitary basis of weight vectors. The basis is
/// grouped by weight; `basis.offsets[k]` starts the block of `basis.weights[k]`.
#[derive(Debug, Clone)]
pub struct RepMatrices {
    pub lambda: HighestWeight,
    pub chevalley: Arc<ChevalleyData>,
    pub basis: WeightBasis,
    /// `π(e_i)`, real in the unitary basis.
    pub e: Vec<DMatrix<f64>>,
    /// `π(f_i) = π(e_i)ᵀ`.
    pub f: Vec<DMatrix<f64>>,
    /// `π(h_i)`, diagonal with entry `μ_i` on `V(μ)`.
    pub h: Vec<DMatrix<f64>>,
    /// `π(X_α)` for `α > 0`, normalized so that `[X_α, X_{−α}] = H_α`.
    pub root_up: Vec<DMatrix<f64>>,
    /// `π(X_{−α})` for `α > 0`.
    pub root_down: Vec<DMatrix<f64>>,
    /// Largest deviation of the contravariant form from the identity after
    /// orthonormalization.
    pub orthonormality_residual: f64,
}

/// Build `V_λ`, failing when its dimension exceeds `dim_cap`.
pub fn build_rep(lambda: &HighestWeight, dim_cap: usize) -> Result<RepMatrices> {
    let chev = Arc::new(ChevalleyData::build(lambda.datum().clone())?);
    build_rep_with(lambda, chev, dim_cap)
}

/// As [`build_rep`], reusing Chevalley data of the same root datum.
pub fn build_rep_with(lambda: &HighestWeight, chevalley: Arc<ChevalleyData>, dim_cap: usize) -> Result<RepMatrices> {
    let d = lambda.datum().clone();
    if chevalley.datum().semisimple_type() != d.semisimple_type() {
        return Err(Error::InvalidParams("Chevalley data of a different type".into()));
    }
    let module = ExactModule::build(lambda, dim_cap)?;
    let on = Orthonormalizer::new(&module)?;
    let basis = module.basis.clone();
    let dense = |op| -> Result<DMatrix<f64>> {
        let m = on.apply(op, &basis)?.to_dense(&basis);
        let n = basis.total_dim();
        Ok(DMatrix::from_fn(n, n, |r, c| m[r][c]))
    };
    let e = module.e.iter().map(&dense).collect::<Result<Vec<_>>>()?;
    let f = module.f.iter().map(&dense).collect::<Result<Vec<_>>>()?;
    let n = basis.total_dim();
    let h = (0..d.rank())
        .map(|i| {
            let mut m = DMatrix::zeros(n, n);
            for (k, w) in basis.weights.iter().enumerate() {
                for r in 0..basis.dims[k] {
                    let p = basis.offsets[k] + r;
                    m[(p, p)] = w[i] as f64;
                }
            }
            m
        })
        .collect();
    let (up, down) = root_vectors(&d, &module.basis, &module.e, &module.f);
    let mut root_up = Vec::with_capacity(up.len());
    let mut root_down = Vec::with_capacity(up.len());
    for (r, (u, w)) in up.iter().zip(&down).enumerate() {
        let s = 1.0 / chevalley.q(r).to_f64().unwrap_or(f64::NAN).sqrt();
        root_up.push(dense(u)? * s);
        root_down.push(dense(w)? * s);
    }
    Ok(RepMatrices {
        lambda: lambda.clone(),
        chevalley,
        basis,
        e,
        f,
        h,
        root_up,
        root_down,
        orthonormality_residual: on.residual(&module),
    })
}

impl RepMatrices {
    pub fn dim_c(&self) -> usize {
        self.basis.total_dim()
    }

    /// Complex index range of the weight space `V(μ)`.
    pub fn weight_block(&self, mu: &[i64]) -> Option<Range<usize>> {
        let k = *self.basis.index.get(mu)?;
        Some(self.basis.offsets[k]..self.basis.offsets[k] + self.basis.dims[k])
    }

    /// `π(u_k)` for the compact basis `H^{α_i}`, then `X^α`, `Y^α` per
    /// positive root, as complex matrices.
    pub fn compact(&self) -> Vec<DMatrix<C64>> {
        let d = self.lambda.datum();
        let n = self.dim_c();
        let mut out = Vec::with_capacity(self.chevalley.compact_dim());
        for i in 0..d.rank() {
            let half = d.half_norms()[i];
            let hq = *half.numer() as f64 / *half.denom() as f64;
            out.push(self.h[i].map(|x| C64::new(0.0, x * hq)));
        }
        for (u, w) in self.root_up.iter().zip(&self.root_down) {
            out.push(DMatrix::from_fn(n, n, |r, c| C64::new(u[(r, c)] - w[(r, c)], 0.0)));
            out.push(DMatrix::from_fn(n, n, |r, c| C64::new(0.0, u[(r, c)] + w[(r, c)])));
        }
        out
    }

    /// Restriction of scalars: complex index `k` becomes real indices `2k`
    /// (the vector) and `2k+1` (`i` times it).
    pub fn realify(&self) -> RealRep {
        let matrices = self.compact().iter().map(realify_matrix).collect();
        RealRep {
            dim: 2 * self.dim_c(),
            rank: self.lambda.datum().rank(),
            labels: self.chevalley.compact_labels(),
            weights: self.basis.weights.clone(),
            blocks: (0..self.basis.weights.len())
                .map(|k| 2 * self.basis.offsets[k]..2 * (self.basis.offsets[k] + self.basis.dims[k]))
                .collect(),
            matrices,
            orthonormality_residual: self.orthonormality_residual,
        }
    }

    /// JSON dump of the weight partition and the compact-basis matrices.
    pub fn to_json(&self) -> serde_json::Value {
        let real = self.realify();
        let mats: Vec<RepMatrixJson> = real
            .labels
            .iter()
            .zip(&real.matrices)
            .map(|(l, m)| RepMatrixJson {
                label: l.clone(),
                rows: (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect(),
            })
            .collect();
        serde_json::json!({
            "type": self.lambda.datum().semisimple_type().to_string(),
            "lambda": self.lambda.coords(),
            "dim_c": self.dim_c(),
            "dim_r": real.dim,
            "weights": self.basis.weights.iter().zip(&self.basis.dims)
                .map(|(w, m)| serde_json::json!({"weight": w, "mult": m})).collect::<Vec<_>>(),
            "basis": real_basis_labels(&self.basis),
            "compact": mats,
        })
    }
}

/// One label per real coordinate: `v[μ]k.re` and `v[μ]k.im` for the k-th
/// orthonormal vector of the weight space `μ`.
fn real_basis_labels(basis: &WeightBasis) -> Vec<String> {
    let mut out = Vec::new();
    for (w, &m) in basis.weights.iter().zip(&basis.dims) {
        let mu: Vec<String> = w.iter().map(|a| a.to_string()).collect();
        for k in 0..m {
            out.push(format!("v[{}]{k}.re", mu.join(",")));
            out.push(format!("v[{}]{k}.im", mu.join(",")));
        }
    }
    out
}

#[derive(Serialize)]
struct RepMatrixJson {
    label: String,
    rows: Vec<Vec<f64>>,
}

pub fn realify_matrix(m: &DMatrix<C64>) -> DMatrix<f64> {
    let n = m.nrows();
    let mut out = DMatrix::zeros(2 * n, 2 * m.ncols());
    for r in 0..n {
        for c in 0..m.ncols() {
            let z = m[(r, c)];
            out[(2 * r, 2 * c)] = z.re;
            out[(2 * r, 2 * c + 1)] = -z.im;
            out[(2 * r + 1, 2 * c)] = z.im;
            out[(2 * r + 1, 2 * c + 1)] = z.re;
        }
    }
    out
}

/// The module as a real representation of the compact form, with the real
/// part of the unitary form as inner product (the identity in this basis).
#[derive(Debug, Clone)]
pub struct RealRep {
    pub dim: usize,
    pub rank: usize,
    pub labels: Vec<String>,
    pub weights: Vec<Vec<i64>>,
    /// Real index range of each weight space, parallel to `weights`.
    pub blocks: Vec<Range<usize>>,
    /// `π(u_k)` in the compact basis order.
    pub matrices: Vec<DMatrix<f64>>,
    pub orthonormality_residual: f64,
}

impl RealRep {
    pub fn block_of(&self, mu: &[i64]) -> Option<Range<usize>> {
        self.weights.iter().position(|w| w == mu).map(|k| self.blocks[k].clone())
    }

    /// Multiplication by `i` on the realified space.
    pub fn complex_structure(&self) -> DMatrix<f64> {
        let mut j = DMatrix::zeros(self.dim, self.dim);
        for k in 0..self.dim / 2 {
            j[(2 * k + 1, 2 * k)] = 1.0;
            j[(2 * k, 2 * k + 1)] = -1.0;
        }
        j
    }
}
