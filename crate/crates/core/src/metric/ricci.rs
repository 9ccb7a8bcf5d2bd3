use super::algebra::{MetricLieAlgebra, Role};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

/// Positive scalars, one per group of a [`MetricFamily`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnerProductParams {
    pub names: Vec<String>,
    pub scalars: Vec<f64>,
}

impl InnerProductParams {
    pub fn validate(&self) -> Result<()> {
        if self.names.len() != self.scalars.len() {
            return Err(Error::DimensionMismatch { expected: self.names.len(), got: self.scalars.len() });
        }
        match self.scalars.iter().zip(&self.names).find(|(s, _)| !(s.is_finite() && **s > 0.0)) {
            Some((s, n)) => Err(Error::InvalidParams(format!("scalar `{n}` = {s} is not positive"))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RicciReport {
    /// Ricci operator in the orthonormal frame `frame` (symmetric).
    #[serde(skip)]
    pub ricci_matrix: DMatrix<f64>,
    /// Columns are the orthonormal frame in algebra coordinates.
    #[serde(skip)]
    pub frame: DMatrix<f64>,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub negative_definite: bool,
    /// `⟨H, X⟩ = tr ad X`, in algebra coordinates.
    pub mean_curvature: Vec<f64>,
}

impl RicciReport {
    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Ricci operator in algebra coordinates.
    pub fn operator(&self) -> DMatrix<f64> {
        let inv = self.frame.clone().try_inverse().expect("frame is invertible");
        &self.frame * &self.ricci_matrix * inv
    }
}

/// `Ric = M − ½B − S(ad H)` for an orthonormal basis with ad matrices `ad`:
/// `⟨MX,Y⟩ = −½ Σ ⟨[X,e_i],e_j⟩⟨[Y,e_i],e_j⟩ + ¼ Σ ⟨[e_i,e_j],X⟩⟨[e_i,e_j],Y⟩`.
pub fn ricci_orthonormal(ad: &[DMatrix<f64>]) -> DMatrix<f64> {
    let n = ad.len();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let nn = n * n;
    // row a of `flat` is ad_a by rows; row a of `flat_t` is ad_a by columns;
    // row a of `out` lists C_ij^a over (i, j).
    let mut flat = DMatrix::zeros(n, nn);
    let mut flat_t = DMatrix::zeros(n, nn);
    let mut out = DMatrix::zeros(n, nn);
    for (a, m) in ad.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                let x = m[(r, c)];
                flat[(a, r * n + c)] = x;
                flat_t[(a, c * n + r)] = x;
                out[(r, a * n + c)] = x;
            }
        }
    }
    let frob = &flat * flat.transpose();
    let killing = &flat * flat_t.transpose();
    let moment = &out * out.transpose();
    let mut ad_h = DMatrix::zeros(n, n);
    for m in ad {
        let t = m.trace();
        if t != 0.0 {
            ad_h += m * t;
        }
    }
    let sym = (&ad_h + ad_h.transpose()) * 0.5;
    frob * -0.5 + moment * 0.25 - killing * 0.5 - sym
}

fn report(ricci: DMatrix<f64>, frame: DMatrix<f64>, ad: &[DMatrix<f64>]) -> RicciReport {
    let sym = (&ricci + ricci.transpose()) * 0.5;
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(sym.clone()).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.total_cmp(b));
    let h: Vec<f64> = ad.iter().map(|m| m.trace()).collect();
    let mean_curvature = (&frame * nalgebra::DVector::from_vec(h)).iter().copied().collect();
    let negative_definite = eigenvalues.last().is_some_and(|&x| x < 0.0);
    RicciReport { ricci_matrix: sym, frame, eigenvalues, negative_definite, mean_curvature }
}

fn orthonormal_frame(g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let l =
        g.clone().cholesky().ok_or_else(|| Error::InvalidParams("inner product is not positive definite".into()))?.l();
    let linv = l.try_inverse().ok_or_else(|| Error::InvalidParams("singular inner product".into()))?;
    Ok(linv.transpose())
}

/// Ricci operator of the left-invariant metric with Gram matrix `g`.
pub fn ricci(alg: &MetricLieAlgebra, g: &DMatrix<f64>) -> Result<RicciReport> {
    if g.shape() != (alg.dim(), alg.dim()) {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: g.nrows() });
    }
    let p = orthonormal_frame(g)?;
    let ad = alg.change_basis(&p)?;
    Ok(report(ricci_orthonormal(&ad), p, &ad))
}

/// Ricci operator in algebra coordinates from the Koszul formula and the
/// full curvature tensor, in the given (not necessarily orthonormal) basis.
pub fn ricci_oracle(alg: &MetricLieAlgebra, g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = alg.dim();
    let ginv = g.clone().try_inverse().ok_or_else(|| Error::InvalidParams("singular inner product".into()))?;
    let c = |i: usize, j: usize| -> Vec<f64> {
        let mut v = vec![0.0; n];
        for &(k, x) in alg.bracket(i, j) {
            v[k] = x;
        }
        v
    };
    let br: Vec<Vec<Vec<f64>>> = (0..n).map(|i| (0..n).map(|j| c(i, j)).collect()).collect();
    let ip = |v: &[f64], k: usize| -> f64 { (0..n).map(|m| v[m] * g[(m, k)]).sum() };
    // nabla[i][j] = ∇_{e_i} e_j in coordinates, from
    // 2⟨∇_X Y, W⟩ = ⟨[X,Y],W⟩ − ⟨[Y,W],X⟩ + ⟨[W,X],Y⟩.
    let mut nabla = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let low: Vec<f64> =
                (0..n).map(|k| 0.5 * (ip(&br[i][j], k) - ip(&br[j][k], i) + ip(&br[k][i], j))).collect();
            for l in 0..n {
                nabla[i][j][l] = (0..n).map(|k| ginv[(l, k)] * low[k]).sum();
            }
        }
    }
    let nab_vec = |i: usize, v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (j, &x) in v.iter().enumerate() {
            if x != 0.0 {
                for l in 0..n {
                    out[l] += x * nabla[i][j][l];
                }
            }
        }
        out
    };
    // Ric(Y, W) = Σ_i (R(e_i, Y) W)^i with R(X,Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_[X,Y].
    let mut ric = DMatrix::zeros(n, n);
    for y in 0..n {
        for w in 0..n {
            let mut tr = 0.0;
            for i in 0..n {
                let a = nab_vec(i, &nabla[y][w]);
                let b = nab_vec(y, &nabla[i][w]);
                let mut cterm = vec![0.0; n];
                for (k, &x) in br[i][y].iter().enumerate() {
                    if x != 0.0 {
                        for l in 0..n {
                            cterm[l] += x * nabla[k][w][l];
                        }
                    }
                }
                tr += a[i] - b[i] - cterm[i];
            }
            ric[(y, w)] = tr;
        }
    }
    Ok(ginv * ric)
}

/// A family of block-diagonal inner products `⊕_g s_g · base_g` over a
/// partition of the basis into groups.
#[derive(Debug, Clone)]
pub struct MetricFamily {
    names: Vec<String>,
    group_of: Vec<usize>,
    base: DMatrix<f64>,
    frame: DMatrix<f64>,
    ad0: Vec<DMatrix<f64>>,
}

impl MetricFamily {
    pub fn new(alg: &MetricLieAlgebra, groups: Vec<(String, Vec<usize>)>, base: DMatrix<f64>) -> Result<Self> {
        let n = alg.dim();
        if base.shape() != (n, n) {
            return Err(Error::DimensionMismatch { expected: n, got: base.nrows() });
        }
        let mut group_of = vec![usize::MAX; n];
        for (g, (_, idx)) in groups.iter().enumerate() {
            for &i in idx {
                if i >= n || group_of[i] != usize::MAX {
                    return Err(Error::InvalidParams("metric groups must partition the basis".into()));
                }
                group_of[i] = g;
            }
        }
        if group_of.contains(&usize::MAX) || groups.iter().any(|(_, idx)| idx.is_empty()) {
            return Err(Error::InvalidParams("metric groups must partition the basis into nonempty sets".into()));
        }
        let scale = base.amax().max(1.0);
        for i in 0..n {
            for j in 0..n {
                if group_of[i] != group_of[j] && base[(i, j)].abs() > 1e-10 * scale {
                    return Err(Error::InvalidParams(format!(
                        "base inner product couples `{}` and `{}`",
                        groups[group_of[i]].0, groups[group_of[j]].0
                    )));
                }
            }
        }
        let mut clean = base.clone();
        for i in 0..n {
            for j in 0..n {
                if group_of[i] != group_of[j] {
                    clean[(i, j)] = 0.0;
                }
            }
        }
        let frame = orthonormal_frame(&clean)?;
        let ad0 = alg.change_basis(&frame)?;
        let names = groups.into_iter().map(|(s, _)| s).collect();
        Ok(MetricFamily { names, group_of, base: clean, frame, ad0 })
    }

    /// Blocks of the natural grading of `(ℝZ ⊕ u) ⋉ n`: `Z`, the Cartan
    /// part and root parts of `u` (scaled from `−B_u`), and one group per
    /// radical block, with the indices `v1` split off as their own group.
    pub fn standard(alg: &MetricLieAlgebra, v1: &[usize], roots: RootScalars) -> Result<Self> {
        let n = alg.dim();
        let compact = alg.indices(Role::is_compact);
        let mut base = DMatrix::identity(n, n);
        if !compact.is_empty() {
            let ad = alg.ad_matrices();
            for &a in &compact {
                for &b in &compact {
                    let mut t = 0.0;
                    for &x in &compact {
                        for &y in &compact {
                            t += ad[a][(x, y)] * ad[b][(y, x)];
                        }
                    }
                    base[(a, b)] = -t;
                }
            }
        }
        let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
        let mut push = |name: String, idx: Vec<usize>| {
            if !idx.is_empty() {
                groups.push((name, idx));
            }
        };
        push("Z".into(), alg.indices(|r| r == Role::Center));
        push("cartan".into(), alg.indices(|r| matches!(r, Role::Cartan(_))));
        let roots_count = alg.roles().iter().filter(|r| matches!(r, Role::RootX(_))).count();
        match roots {
            RootScalars::Shared => push("roots".into(), alg.indices(|r| matches!(r, Role::RootX(_) | Role::RootY(_)))),
            RootScalars::SplitXY => {
                push("X".into(), alg.indices(|r| matches!(r, Role::RootX(_))));
                push("Y".into(), alg.indices(|r| matches!(r, Role::RootY(_))));
            }
            RootScalars::PerRoot => {
                for a in 0..roots_count {
                    push(format!("X{a}"), alg.indices(|r| r == Role::RootX(a)));
                    push(format!("Y{a}"), alg.indices(|r| r == Role::RootY(a)));
                }
            }
        }
        let in_v1: std::collections::HashSet<usize> = v1.iter().copied().collect();
        for b in 0..alg.radical_blocks() {
            let idx = alg.indices(|r| r == Role::Radical(b));
            let (a, rest): (Vec<usize>, Vec<usize>) = idx.into_iter().partition(|i| in_v1.contains(i));
            if a.is_empty() {
                push(format!("W{b}"), rest);
            } else {
                push(format!("V1[{b}]"), a);
                push(format!("V2[{b}]"), rest);
            }
        }
        push("other".into(), alg.indices(|r| r == Role::Other));
        MetricFamily::new(alg, groups, base)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn params(&self, scalars: Vec<f64>) -> InnerProductParams {
        InnerProductParams { names: self.names.clone(), scalars }
    }

    pub fn unit_params(&self) -> InnerProductParams {
        self.params(vec![1.0; self.len()])
    }

    /// Gram matrix of the inner product.
    pub fn metric(&self, p: &InnerProductParams) -> Result<DMatrix<f64>> {
        self.check(p)?;
        let n = self.group_of.len();
        Ok(DMatrix::from_fn(n, n, |i, j| self.base[(i, j)] * p.scalars[self.group_of[i]]))
    }

    fn check(&self, p: &InnerProductParams) -> Result<()> {
        p.validate()?;
        if p.names != self.names {
            return Err(Error::InvalidParams("parameters belong to a different metric family".into()));
        }
        Ok(())
    }

    /// Ricci report for the given scalars, reusing the base frame:
    /// constants scale as `C_ab^c · √s_c / (√s_a √s_b)`.
    pub fn ricci(&self, p: &InnerProductParams) -> Result<RicciReport> {
        self.check(p)?;
        let root: Vec<f64> = self.group_of.iter().map(|&g| p.scalars[g].sqrt()).collect();
        let n = root.len();
        let ad: Vec<DMatrix<f64>> = self
            .ad0
            .iter()
            .enumerate()
            .map(|(a, m)| DMatrix::from_fn(n, n, |c, b| m[(c, b)] * root[c] / (root[a] * root[b])))
            .collect();
        let frame = DMatrix::from_fn(n, n, |i, a| self.frame[(i, a)] / root[a]);
        Ok(report(ricci_orthonormal(&ad), frame, &ad))
    }
}

/// How the root part of `u` is scaled in [`MetricFamily::standard`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootScalars {
    /// One scalar for all `X^α`, `Y^α`.
    Shared,
    /// One scalar for all `X^α`, another for all `Y^α`.
    SplitXY,
    /// Separate scalars for every `X^α` and every `Y^α`.
    PerRoot,
}
