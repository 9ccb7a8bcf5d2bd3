use super::algebra::{MetricLieAlgebra, Role, Triplet};
use super::ricci::{MetricFamily, RootScalars};
use crate::error::{Error, Result};
use crate::repbuild::{ChevalleyData, RealRep, RepMatrices};
use nalgebra::DMatrix;

/// Relative Jacobi tolerance for assembled algebras.
pub const JACOBI_TOL: f64 = 1e-9;

/// `(ℝZ ⊕ u) ⋉ (W₁ ⊕ … ⊕ W_k)` together with the position of each
/// realified module vector.
#[derive(Debug, Clone)]
pub struct LAlgebra {
    pub algebra: MetricLieAlgebra,
    /// The realified modules `W_b`.
    pub modules: Vec<RealRep>,
    /// `rep_index[b][k]` is the algebra index of real vector `k` of `W_b`.
    pub rep_index: Vec<Vec<usize>>,
    /// `ad Z` eigenvalue per module.
    pub block_scalars: Vec<f64>,
}

impl LAlgebra {
    /// Algebra indices of the realified weight spaces `V(μ)`, `μ ∈ S`, of
    /// module `b`.
    pub fn weight_indices(&self, b: usize, s: &[Vec<i64>]) -> Result<Vec<usize>> {
        let real = self.modules.get(b).ok_or_else(|| Error::InvalidParams(format!("no module with index {b}")))?;
        let mut out = Vec::new();
        for mu in s {
            let r = real
                .block_of(mu)
                .ok_or_else(|| Error::InvalidParams(format!("{mu:?} is not a weight of module {b}")))?;
            out.extend(r.map(|k| self.rep_index[b][k]));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Algebra indices of module `b`.
    pub fn module_indices(&self, b: usize) -> Vec<usize> {
        self.rep_index[b].clone()
    }

    /// The standard metric family with `V₁ = ⊕_{μ∈S} V(μ)` inside module `b`.
    pub fn family(&self, b: usize, s: &[Vec<i64>], roots: RootScalars) -> Result<MetricFamily> {
        MetricFamily::standard(&self.algebra, &self.weight_indices(b, s)?, roots)
    }
}

fn compact_part(chev: &ChevalleyData) -> Result<(Vec<String>, Vec<Role>, Vec<Triplet>)> {
    let n = chev.datum().rank();
    let roles = (0..chev.compact_dim())
        .map(|k| {
            if k < n {
                Role::Cartan(k)
            } else if (k - n).is_multiple_of(2) {
                Role::RootX((k - n) / 2)
            } else {
                Role::RootY((k - n) / 2)
            }
        })
        .collect();
    let triplets = chev.compact_structure()?.into_iter().map(|(i, j, k, c)| Triplet { i, j, k, c }).collect();
    Ok((chev.compact_labels(), roles, triplets))
}

fn check_jacobi(alg: &MetricLieAlgebra) -> Result<()> {
    let r = alg.jacobi_residual();
    let s = alg.scale().max(1.0);
    if r > JACOBI_TOL * s * s {
        return Err(Error::InvalidAlgebra(format!("Jacobi identity fails (residual {r:e})")));
    }
    Ok(())
}

/// `(ℝZ ⊕ u) ⋉ V` with `V = W₁ ⊕ … ⊕ W_k` the realified irreducible
/// modules of the same type, `ad Z = c_b · Id` on `W_b` and `V` abelian.
pub fn build_l(modules: &[&RepMatrices], c: &[f64]) -> Result<LAlgebra> {
    let first = modules.first().ok_or_else(|| Error::InvalidParams("at least one module is required".into()))?;
    if c.len() != modules.len() {
        return Err(Error::DimensionMismatch { expected: modules.len(), got: c.len() });
    }
    if let Some(bad) = c.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::InvalidParams(format!("block scalar {bad} is not positive")));
    }
    let ty = first.lambda.datum().semisimple_type();
    if modules.iter().any(|m| m.lambda.datum().semisimple_type() != ty) {
        return Err(Error::InvalidParams("all modules must be modules of the same algebra".into()));
    }
    let (mut labels, mut roles, mut triplets) = compact_part(&first.chevalley)?;
    for t in triplets.iter_mut() {
        t.i += 1;
        t.j += 1;
        t.k += 1;
    }
    labels.insert(0, "Z".into());
    roles.insert(0, Role::Center);
    let mut next = labels.len();
    let mut reals = Vec::with_capacity(modules.len());
    let mut rep_index = Vec::with_capacity(modules.len());
    for (b, m) in modules.iter().enumerate() {
        let real = m.realify();
        let idx: Vec<usize> = (next..next + real.dim).collect();
        next += real.dim;
        for k in 0..real.dim {
            labels.push(if modules.len() == 1 { format!("v{k}") } else { format!("w{b}.{k}") });
            roles.push(Role::Radical(b));
            triplets.push(Triplet { i: 0, j: idx[k], k: idx[k], c: c[b] });
        }
        for (u, mat) in real.matrices.iter().enumerate() {
            for col in 0..real.dim {
                for row in 0..real.dim {
                    let x = mat[(row, col)];
                    if x != 0.0 {
                        triplets.push(Triplet { i: u + 1, j: idx[col], k: idx[row], c: x });
                    }
                }
            }
        }
        reals.push(real);
        rep_index.push(idx);
    }
    let algebra = MetricLieAlgebra::from_triplets(labels, roles, &triplets)?;
    check_jacobi(&algebra)?;
    Ok(LAlgebra { algebra, modules: reals, rep_index, block_scalars: c.to_vec() })
}

/// Data for `(ℝZ ⊕ u) ⋉ n` with `n` nilpotent.
#[derive(Debug, Clone)]
pub struct GeneralData {
    /// The compact algebra `u`.
    pub u_labels: Vec<String>,
    pub u_roles: Vec<Role>,
    pub u_consts: Vec<Triplet>,
    pub n_labels: Vec<String>,
    pub n_consts: Vec<Triplet>,
    /// Action of each `u` basis element on `n`.
    pub u_action: Vec<DMatrix<f64>>,
    /// Action of `Z` on `n`.
    pub z_action: DMatrix<f64>,
    /// Partition of `n` into blocks for metric scalars; one block when empty.
    pub n_blocks: Vec<Vec<usize>>,
}

fn dense_ad(dim: usize, consts: &[Triplet]) -> Result<Vec<DMatrix<f64>>> {
    let roles = vec![Role::Other; dim];
    let labels = (0..dim).map(|i| i.to_string()).collect();
    Ok(MetricLieAlgebra::from_triplets(labels, roles, consts)?.ad_matrices())
}

fn rank(m: &DMatrix<f64>) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    m.clone().svd(false, false).rank(1e-9 * m.norm().max(1.0))
}

/// Dimensions of the lower central series of an algebra given by its ad
/// matrices, until it vanishes or stabilizes.
pub fn lower_central_series(ad: &[DMatrix<f64>]) -> Vec<usize> {
    let n = ad.len();
    let mut span = DMatrix::<f64>::identity(n, n);
    let mut dims = vec![n];
    loop {
        let cols: Vec<_> = ad
            .iter()
            .flat_map(|a| {
                let prod = a * &span;
                (0..prod.ncols()).map(move |c| prod.column(c).into_owned()).collect::<Vec<_>>()
            })
            .collect();
        if cols.is_empty() {
            dims.push(0);
            return dims;
        }
        let m = DMatrix::from_columns(&cols);
        let r = rank(&m);
        if r == *dims.last().expect("nonempty") || r == 0 {
            dims.push(r);
            return dims;
        }
        let svd = m.svd(true, false);
        let u = svd.u.expect("requested");
        span = u.columns(0, r).into_owned();
        dims.push(r);
    }
}

fn derivation_defect(d: &DMatrix<f64>, ad: &[DMatrix<f64>]) -> f64 {
    // D ad_x − ad_x D = ad_{D x}
    let n = ad.len();
    let mut worst: f64 = 0.0;
    for (x, ax) in ad.iter().enumerate() {
        let mut rhs = DMatrix::zeros(n, n);
        for y in 0..n {
            let w = d[(y, x)];
            if w != 0.0 {
                rhs += &ad[y] * w;
            }
        }
        worst = worst.max((d * ax - ax * d - rhs).norm());
    }
    worst
}

/// Assemble `(ℝZ ⊕ u) ⋉ n`, checking that `n` is nilpotent, that `Z` and
/// `u` act by derivations, that `u` acts by a representation and that `Z`
/// commutes with `u`.
pub fn build_general(data: &GeneralData) -> Result<MetricLieAlgebra> {
    let ud = data.u_labels.len();
    let nd = data.n_labels.len();
    if data.u_roles.len() != ud || data.u_action.len() != ud {
        return Err(Error::DimensionMismatch { expected: ud, got: data.u_action.len() });
    }
    if data.z_action.shape() != (nd, nd) || data.u_action.iter().any(|m| m.shape() != (nd, nd)) {
        return Err(Error::DimensionMismatch { expected: nd, got: data.z_action.nrows() });
    }
    let n_ad = dense_ad(nd, &data.n_consts)?;
    let u_ad = dense_ad(ud, &data.u_consts)?;
    let lcs = lower_central_series(&n_ad);
    if *lcs.last().expect("nonempty") != 0 {
        return Err(Error::InvalidAlgebra(format!("n is not nilpotent (lower central series {lcs:?})")));
    }
    let tol = JACOBI_TOL * (1.0 + data.z_action.norm());
    let dz = derivation_defect(&data.z_action, &n_ad);
    if dz > tol {
        return Err(Error::InvalidAlgebra(format!("Z does not act by a derivation of n (defect {dz:e})")));
    }
    for (i, a) in data.u_action.iter().enumerate() {
        let d = derivation_defect(a, &n_ad);
        if d > tol {
            return Err(Error::InvalidAlgebra(format!(
                "{} does not act by a derivation (defect {d:e})",
                data.u_labels[i]
            )));
        }
        let zc = (a * &data.z_action - &data.z_action * a).norm();
        if zc > tol {
            return Err(Error::InvalidAlgebra(format!("Z does not commute with {}", data.u_labels[i])));
        }
        for (j, b) in data.u_action.iter().enumerate() {
            let mut want = DMatrix::zeros(nd, nd);
            for k in 0..ud {
                let c = u_ad[i][(k, j)];
                if c != 0.0 {
                    want += &data.u_action[k] * c;
                }
            }
            let r = (a * b - b * a - want).norm();
            if r > tol {
                return Err(Error::InvalidAlgebra(format!("u does not act by a representation (residual {r:e})")));
            }
        }
    }
    let blocks: Vec<Vec<usize>> =
        if data.n_blocks.is_empty() { vec![(0..nd).collect()] } else { data.n_blocks.clone() };
    let mut block_of = vec![usize::MAX; nd];
    for (b, idx) in blocks.iter().enumerate() {
        for &i in idx {
            if i >= nd || block_of[i] != usize::MAX {
                return Err(Error::InvalidParams("n blocks must partition n".into()));
            }
            block_of[i] = b;
        }
    }
    if block_of.contains(&usize::MAX) {
        return Err(Error::InvalidParams("n blocks must partition n".into()));
    }

    let mut labels = vec!["Z".to_string()];
    labels.extend(data.u_labels.iter().cloned());
    labels.extend(data.n_labels.iter().cloned());
    let mut roles = vec![Role::Center];
    roles.extend(data.u_roles.iter().copied());
    roles.extend(block_of.iter().map(|&b| Role::Radical(b)));
    let (uo, no) = (1, 1 + ud);
    let mut triplets: Vec<Triplet> =
        data.u_consts.iter().map(|t| Triplet { i: t.i + uo, j: t.j + uo, k: t.k + uo, c: t.c }).collect();
    triplets.extend(data.n_consts.iter().map(|t| Triplet { i: t.i + no, j: t.j + no, k: t.k + no, c: t.c }));
    let mut push_action = |src: usize, m: &DMatrix<f64>| {
        for col in 0..nd {
            for row in 0..nd {
                if m[(row, col)] != 0.0 {
                    triplets.push(Triplet { i: src, j: col + no, k: row + no, c: m[(row, col)] });
                }
            }
        }
    };
    push_action(0, &data.z_action);
    for (i, a) in data.u_action.iter().enumerate() {
        push_action(i + uo, a);
    }
    let alg = MetricLieAlgebra::from_triplets(labels, roles, &triplets)?;
    check_jacobi(&alg)?;
    Ok(alg)
}

/// `[X₁, X₂]_t = [X₁, X₂]/t` for `X₁, X₂` in the radical, all other
/// brackets unchanged.
pub fn degenerate(alg: &MetricLieAlgebra, t: f64) -> Result<MetricLieAlgebra> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidParams(format!("degeneration parameter must be positive, got {t}")));
    }
    Ok(alg.map_brackets(|a, b| match (a, b) {
        (Role::Radical(_), Role::Radical(_)) => 1.0 / t,
        _ => 1.0,
    }))
}

/// The limit of [`degenerate`] as `t → ∞`: the radical becomes abelian.
pub fn degenerate_limit(alg: &MetricLieAlgebra) -> MetricLieAlgebra {
    alg.map_brackets(|a, b| match (a, b) {
        (Role::Radical(_), Role::Radical(_)) => 0.0,
        _ => 1.0,
    })
}

/// `(ℝZ ⊕ su(2)) ⋉ h₅`: `su(2)` acts on the generators `C² = ℝ⁴` of the
/// five-dimensional Heisenberg algebra, `[v, w] = Im h(v, w) z` for the
/// invariant Hermitian form `h`, and `Z` acts by 1 on `C²` and by 2 on `z`.
pub fn heisenberg_showcase() -> Result<GeneralData> {
    use crate::repbuild::{build_rep, REP_DIM_CAP};
    use crate::repweights::HighestWeight;
    use crate::rootsys::build_root_datum;
    use std::sync::Arc;
    let d = Arc::new(build_root_datum(&"A1".parse()?)?);
    let rep = build_rep(&HighestWeight::new(d, vec![1])?, REP_DIM_CAP)?;
    let real = rep.realify();
    let (u_labels, u_roles, u_consts) = compact_part(&rep.chevalley)?;
    let mut u_action = Vec::new();
    for m in &real.matrices {
        let mut a = DMatrix::zeros(5, 5);
        a.view_mut((0, 0), (4, 4)).copy_from(m);
        u_action.push(a);
    }
    let n_consts = vec![Triplet { i: 0, j: 1, k: 4, c: 1.0 }, Triplet { i: 2, j: 3, k: 4, c: 1.0 }];
    let z_action = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, 1.0, 1.0, 2.0]));
    Ok(GeneralData {
        u_labels,
        u_roles,
        u_consts,
        n_labels: vec!["v0".into(), "v1".into(), "v2".into(), "v3".into(), "z".into()],
        n_consts,
        u_action,
        z_action,
        n_blocks: vec![vec![0, 1, 2, 3], vec![4]],
    })
}
