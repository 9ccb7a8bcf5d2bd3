use crate::error::{Error, Result};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// What a basis vector is, used to group scalars of block-diagonal metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", content = "index", rename_all = "snake_case")]
pub enum Role {
    /// The element `Z`.
    Center,
    /// `H^{α_i}`.
    Cartan(usize),
    /// `X^α` for the positive root with this index.
    RootX(usize),
    /// `Y^α` for the positive root with this index.
    RootY(usize),
    /// A vector of radical block `b`.
    Radical(usize),
    Other,
}

impl Role {
    pub fn is_compact(self) -> bool {
        matches!(self, Role::Cartan(_) | Role::RootX(_) | Role::RootY(_))
    }

    pub fn radical_block(self) -> Option<usize> {
        match self {
            Role::Radical(b) => Some(b),
            _ => None,
        }
    }
}

/// One structure constant: `[e_i, e_j]` has coefficient `c` on `e_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triplet {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: f64,
}

/// A real Lie algebra with a distinguished basis. Only brackets with `i < j`
/// are stored; `[e_j, e_i] = −[e_i, e_j]` and `[e_i, e_i] = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricLieAlgebra {
    labels: Vec<String>,
    roles: Vec<Role>,
    table: Vec<Vec<Vec<(usize, f64)>>>,
}

impl MetricLieAlgebra {
    /// Assemble from triplets, which may list `(i,j)` and `(j,i)`; they must
    /// agree up to sign. Does not check Jacobi.
    pub fn from_triplets(labels: Vec<String>, roles: Vec<Role>, triplets: &[Triplet]) -> Result<Self> {
        let n = labels.len();
        if roles.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: roles.len() });
        }
        let mut acc: HashMap<(usize, usize, usize), f64> = HashMap::new();
        let mut seen: HashMap<(usize, usize, usize, bool), f64> = HashMap::new();
        for t in triplets {
            if t.i >= n || t.j >= n || t.k >= n {
                return Err(Error::Format(format!("index out of range in ({}, {}, {})", t.i, t.j, t.k)));
            }
            if !t.c.is_finite() {
                return Err(Error::Format(format!("non-finite constant at ({}, {}, {})", t.i, t.j, t.k)));
            }
            if t.i == t.j {
                if t.c != 0.0 {
                    return Err(Error::InvalidAlgebra(format!("[e{}, e{}] must vanish", t.i, t.i)));
                }
                continue;
            }
            let (a, b, s) = if t.i < t.j { (t.i, t.j, 1.0) } else { (t.j, t.i, -1.0) };
            let key = (a, b, t.k, t.i < t.j);
            if seen.insert(key, t.c).is_some() {
                return Err(Error::Format(format!("duplicate constant ({}, {}, {})", t.i, t.j, t.k)));
            }
            let mirror = (a, b, t.k, t.i > t.j);
            if let Some(&other) = seen.get(&mirror) {
                if (other + t.c).abs() > 1e-12 * (1.0 + t.c.abs()) {
                    return Err(Error::InvalidAlgebra(format!(
                        "constants for [e{a}, e{b}] on e{} are not antisymmetric",
                        t.k
                    )));
                }
                continue;
            }
            *acc.entry((a, b, t.k)).or_insert(0.0) += s * t.c;
        }
        let mut table = vec![vec![Vec::new(); n]; n];
        let mut keys: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0.0).collect();
        keys.sort_by_key(|x| x.0);
        for ((i, j, k), c) in keys {
            table[i][j].push((k, c));
            table[j][i].push((k, -c));
        }
        Ok(MetricLieAlgebra { labels, roles, table })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    /// `[e_i, e_j]` as sparse coordinates.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, f64)] {
        &self.table[i][j]
    }

    /// Stored constants with `i < j`.
    pub fn triplets(&self) -> Vec<Triplet> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for &(k, c) in &self.table[i][j] {
                    out.push(Triplet { i, j, k, c });
                }
            }
        }
        out
    }

    /// Bracket of arbitrary vectors.
    pub fn bracket_vec(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0.0 {
                    continue;
                }
                for &(k, c) in &self.table[i][j] {
                    out[k] += xi * yj * c;
                }
            }
        }
        out
    }

    /// `ad e_i` as dense matrices: column `j` holds `[e_i, e_j]`.
    pub fn ad_matrices(&self) -> Vec<DMatrix<f64>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut m = DMatrix::zeros(n, n);
                for j in 0..n {
                    for &(k, c) in &self.table[i][j] {
                        m[(k, j)] = c;
                    }
                }
                m
            })
            .collect()
    }

    /// Largest Jacobi defect over basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        let mut buf = vec![0.0; n];
        let mut touched = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for &(m, x) in &self.table[a][b] {
                            for &(l, y) in &self.table[m][c] {
                                if buf[l] == 0.0 {
                                    touched.push(l);
                                }
                                buf[l] += x * y;
                            }
                        }
                    }
                    for &l in &touched {
                        worst = worst.max(buf[l].abs());
                        buf[l] = 0.0;
                    }
                    touched.clear();
                }
            }
        }
        worst
    }

    /// Largest constant in absolute value.
    pub fn scale(&self) -> f64 {
        self.table.iter().flatten().flatten().fold(0.0, |m, &(_, c)| m.max(c.abs()))
    }

    /// Indices with a given predicate on their role.
    pub fn indices(&self, f: impl Fn(Role) -> bool) -> Vec<usize> {
        (0..self.dim()).filter(|&i| f(self.roles[i])).collect()
    }

    /// Number of radical blocks.
    pub fn radical_blocks(&self) -> usize {
        self.roles.iter().filter_map(|r| r.radical_block()).max().map_or(0, |b| b + 1)
    }

    /// The same algebra with every bracket rescaled by `f(role_i, role_j)`.
    pub fn map_brackets(&self, f: impl Fn(Role, Role) -> f64) -> MetricLieAlgebra {
        let n = self.dim();
        let mut table = self.table.clone();
        for i in 0..n {
            for j in 0..n {
                let s = f(self.roles[i], self.roles[j]);
                table[i][j] = table[i][j].iter().map(|&(k, c)| (k, c * s)).filter(|(_, c)| *c != 0.0).collect();
            }
        }
        MetricLieAlgebra { labels: self.labels.clone(), roles: self.roles.clone(), table }
    }

    /// Constants in a new basis `f_a = Σ_i p[(i, a)] e_i`.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<Vec<DMatrix<f64>>> {
        let n = self.dim();
        let pinv = p.clone().try_inverse().ok_or_else(|| Error::InvalidParams("singular change of basis".into()))?;
        let ad = self.ad_matrices();
        Ok((0..n)
            .map(|a| {
                let mut m = DMatrix::zeros(n, n);
                for i in 0..n {
                    let w = p[(i, a)];
                    if w != 0.0 {
                        m += &ad[i] * w;
                    }
                }
                &pinv * m * p
            })
            .collect())
    }

    /// Serialize as a label header plus sparse triplets.
    pub fn to_json(&self) -> StructureFile {
        StructureFile { labels: self.labels.clone(), roles: Some(self.roles.clone()), constants: self.triplets() }
    }

    /// Parse and validate a structure-constant file: indices, antisymmetry
    /// and the Jacobi identity up to `jacobi_tol` relative to the largest
    /// constant.
    pub fn from_json_str(s: &str, jacobi_tol: f64) -> Result<Self> {
        let f: StructureFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        let roles = match f.roles {
            Some(r) => r,
            None => vec![Role::Other; f.labels.len()],
        };
        let alg = MetricLieAlgebra::from_triplets(f.labels, roles, &f.constants)?;
        let r = alg.jacobi_residual();
        if r > jacobi_tol * alg.scale().max(1.0).powi(2) {
            return Err(Error::InvalidAlgebra(format!("Jacobi identity fails (residual {r:e})")));
        }
        Ok(alg)
    }
}

/// On-disk form of a structure-constant file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roles: Option<Vec<Role>>,
    pub constants: Vec<Triplet>,
}
