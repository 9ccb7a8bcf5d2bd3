use super::graded::{BlockOp, WeightBasis};
use super::module::{ExactModule, R};
use crate::error::{Error, Result};
use crate::exact::Field;
use crate::repweights::HighestWeight;
use crate::rootsys::{build_root_datum, RootDatum, SemisimpleType, Q};
use nalgebra::Complex;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Arc;

type C64 = Complex<f64>;

/// For each positive root, `None` for a simple root and `Some((i, β))` when
/// the root vector is `E_α = [e_i, E_β]` with `α = α_i + β` and `i` minimal.
pub fn root_recipe(d: &RootDatum) -> Vec<Option<(usize, usize)>> {
    d.positive_roots_alpha()
        .iter()
        .map(|c| {
            if c.iter().sum::<i64>() == 1 {
                return None;
            }
            (0..c.len()).find_map(|i| {
                if c[i] == 0 {
                    return None;
                }
                let mut b = c.clone();
                b[i] -= 1;
                d.root_index(&b).map(|beta| (i, beta))
            })
        })
        .collect()
}

/// Images of the root vectors `E_α` and `E_{−α}`, `α > 0`, in a module given
/// by its simple raising and lowering operators. `E_{−α}` is the image of
/// `E_α` under the anti-involution exchanging `e_i` and `f_i`.
pub fn root_vectors<T: Field>(
    d: &RootDatum,
    basis: &WeightBasis,
    e: &[BlockOp<T>],
    f: &[BlockOp<T>],
) -> (Vec<BlockOp<T>>, Vec<BlockOp<T>>) {
    let recipe = root_recipe(d);
    let mut up: Vec<BlockOp<T>> = Vec::with_capacity(recipe.len());
    let mut down: Vec<BlockOp<T>> = Vec::with_capacity(recipe.len());
    for (r, step) in recipe.iter().enumerate() {
        match step {
            None => {
                let i = d.positive_roots_alpha()[r].iter().position(|&x| x == 1).expect("simple root");
                up.push(e[i].clone());
                down.push(f[i].clone());
            }
            Some((i, beta)) => {
                let u = e[*i].commutator(&up[*beta], basis);
                let v = down[*beta].commutator(&f[*i], basis);
                up.push(u);
                down.push(v);
            }
        }
    }
    (up, down)
}

/// Generators of the complexified algebra: `h_i` (simple coroots) and root
/// vectors `E_a`, with `a < N` positive and `a ≥ N` the negative roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    H(usize),
    E(usize),
}

/// Exact structure constants of the root vectors produced by
/// [`root_vectors`]: `[E_a, E_b] = n_ab E_{a+b}` and
/// `[E_α, E_{−α}] = q_α H_α`, where `H_α` acts on `V(μ)` by `⟨μ, α⟩`.
#[derive(Debug, Clone)]
pub struct ChevalleyData {
    datum: Arc<RootDatum>,
    q: Vec<R>,
    n: HashMap<(usize, usize), R>,
}

impl ChevalleyData {
    pub fn build(datum: Arc<RootDatum>) -> Result<Self> {
        let total = datum.positive_root_count();
        let mut q = vec![R::zero(); total];
        let mut n = HashMap::new();
        for (fi, st) in datum.semisimple_type().factors().iter().enumerate() {
            let fd = Arc::new(build_root_datum(&SemisimpleType::simple(*st))?);
            let theta = fd.positive_roots_omega()[fd.highest_root(0)].clone();
            let module = ExactModule::build(&HighestWeight::new(fd.clone(), theta)?, usize::MAX)?;
            let (ep, em) = root_vectors(&fd, &module.basis, &module.e, &module.f);
            let nl = fd.positive_root_count();
            let offset = datum.factor_ranges()[fi].start;
            let to_global = |a: usize| -> Result<usize> {
                let mut c = vec![0i64; datum.rank()];
                for (i, x) in fd.positive_roots_alpha()[a % nl].iter().enumerate() {
                    c[offset + i] = *x;
                }
                let g =
                    datum.root_index(&c).ok_or_else(|| Error::Internal("factor root missing from product".into()))?;
                Ok(if a < nl { g } else { g + total })
            };
            let vec_of = |a: usize| if a < nl { &ep[a] } else { &em[a - nl] };
            for r in 0..nl {
                let c = ep[r].commutator(&em[r], &module.basis);
                let h = coroot_op(&fd, &module.basis, r);
                let ratio = c
                    .ratio_to(&h)
                    .filter(|x| x.is_positive())
                    .ok_or_else(|| Error::Internal("root vectors do not span an sl2-triple".into()))?;
                q[to_global(r)?] = ratio;
            }
            for a in 0..2 * nl {
                for b in 0..2 * nl {
                    let Some(s) = local_sum(&fd, a, b) else { continue };
                    let c = vec_of(a).commutator(vec_of(b), &module.basis);
                    let ratio = c
                        .ratio_to(vec_of(s))
                        .filter(|x| !x.is_zero())
                        .ok_or_else(|| Error::Internal("bracket of root vectors is not a root vector".into()))?;
                    n.insert((to_global(a)?, to_global(b)?), ratio);
                }
            }
        }
        Ok(ChevalleyData { datum, q, n })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    /// Number of positive roots `N`.
    pub fn positive_count(&self) -> usize {
        self.q.len()
    }

    /// Simple-root coordinates of root `a ∈ 0..2N`.
    pub fn root_alpha(&self, a: usize) -> Vec<i64> {
        let n = self.positive_count();
        let c = &self.datum.positive_roots_alpha()[a % n];
        if a < n {
            c.clone()
        } else {
            c.iter().map(|x| -x).collect()
        }
    }

    pub fn negate(&self, a: usize) -> usize {
        let n = self.positive_count();
        if a < n {
            a + n
        } else {
            a - n
        }
    }

    /// Index of `a + b` when it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let c: Vec<i64> = self.root_alpha(a).iter().zip(self.root_alpha(b)).map(|(x, y)| x + y).collect();
        signed_index(&self.datum, &c)
    }

    /// `q_α` for a positive root.
    pub fn q(&self, r: usize) -> &R {
        &self.q[r]
    }

    /// `n_ab`, zero when `a + b` is not a root.
    pub fn n_exact(&self, a: usize, b: usize) -> R {
        self.n.get(&(a, b)).cloned().unwrap_or_else(R::zero)
    }

    /// Constants for the normalized vectors `X_a = E_a / √q_a`, which satisfy
    /// `[X_α, X_{−α}] = H_α` and `[X_a, X_b] = N_ab X_{a+b}`.
    pub fn n_normalized(&self, a: usize, b: usize) -> f64 {
        let Some(s) = self.sum_index(a, b) else { return 0.0 };
        let np = self.positive_count();
        let qa = self.q[a % np].to_f64().unwrap_or(f64::NAN);
        let qb = self.q[b % np].to_f64().unwrap_or(f64::NAN);
        let qs = self.q[s % np].to_f64().unwrap_or(f64::NAN);
        self.n_exact(a, b).to_f64().unwrap_or(f64::NAN) * (qs / (qa * qb)).sqrt()
    }

    /// `c_{α,β} = ⟨α, β⟩`, the coefficient in `[H^α, X^β] = c_{α,β} Y^β`.
    pub fn c(&self, a: usize, b: usize) -> Q {
        let x = self.root_alpha(a);
        let y = self.root_alpha(b);
        let g = self.datum.gram();
        let mut acc = Q::zero();
        for i in 0..x.len() {
            for j in 0..y.len() {
                acc += g[i][j] * (x[i] * y[j]);
            }
        }
        acc
    }

    /// `H_α = Σ c_i ⟨α_i,α_i⟩/2 · h_i` for a root with simple-root coordinates `c`.
    fn coroot_in_h(&self, a: usize) -> Vec<(Gen, R)> {
        let half = self.datum.half_norms();
        self.root_alpha(a)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (Gen::H(i), q_to_r(&(half[i] * c))))
            .collect()
    }

    /// Exact bracket of two generators.
    pub fn bracket(&self, x: Gen, y: Gen) -> Vec<(Gen, R)> {
        match (x, y) {
            (Gen::H(_), Gen::H(_)) => Vec::new(),
            (Gen::H(i), Gen::E(a)) => {
                let w = self.root_omega(a)[i];
                if w == 0 {
                    Vec::new()
                } else {
                    vec![(Gen::E(a), R::from_integer(BigInt::from(w)))]
                }
            }
            (Gen::E(_), Gen::H(_)) => negate_terms(self.bracket(y, x)),
            (Gen::E(a), Gen::E(b)) => {
                let np = self.positive_count();
                if b == self.negate(a) {
                    let sign = if a < np { R::from_integer(1.into()) } else { R::from_integer((-1).into()) };
                    let qa = &self.q[a % np] * sign;
                    let pos = a % np;
                    self.coroot_in_h(pos).into_iter().map(|(g, c)| (g, c * &qa)).collect()
                } else if let Some(s) = self.sum_index(a, b) {
                    vec![(Gen::E(s), self.n_exact(a, b))]
                } else {
                    Vec::new()
                }
            }
        }
    }

    fn root_omega(&self, a: usize) -> Vec<i64> {
        let np = self.positive_count();
        let c = &self.datum.positive_roots_omega()[a % np];
        if a < np {
            c.clone()
        } else {
            c.iter().map(|x| -x).collect()
        }
    }

    pub fn generators(&self) -> Vec<Gen> {
        let mut out: Vec<Gen> = (0..self.datum.rank()).map(Gen::H).collect();
        out.extend((0..2 * self.positive_count()).map(Gen::E));
        out
    }

    /// Largest Jacobi defect over all generator triples; exactly zero for a
    /// consistent table.
    pub fn jacobi_defect(&self) -> R {
        let gens = self.generators();
        let mut worst = R::zero();
        let br = |u: &[(Gen, R)], z: Gen| -> HashMap<Gen, R> {
            let mut acc: HashMap<Gen, R> = HashMap::new();
            for (g, c) in u {
                for (h, d) in self.bracket(*g, z) {
                    *acc.entry(h).or_insert_with(R::zero) += c * d;
                }
            }
            acc
        };
        for &x in &gens {
            for &y in &gens {
                let xy = self.bracket(x, y);
                for &z in &gens {
                    let yz = self.bracket(y, z);
                    let zx = self.bracket(z, x);
                    let mut total = br(&xy, z);
                    for (g, c) in br(&yz, x) {
                        *total.entry(g).or_insert_with(R::zero) += c;
                    }
                    for (g, c) in br(&zx, y) {
                        *total.entry(g).or_insert_with(R::zero) += c;
                    }
                    for c in total.values() {
                        if c.abs() > worst {
                            worst = c.abs();
                        }
                    }
                }
            }
        }
        worst
    }

    /// Dimension of the compact form.
    pub fn compact_dim(&self) -> usize {
        self.datum.rank() + 2 * self.positive_count()
    }

    /// Labels of the compact basis: `H^{α_i}`, then `X^α`, `Y^α` per positive root.
    pub fn compact_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = (1..=self.datum.rank()).map(|i| format!("H{i}")).collect();
        for c in self.datum.positive_roots_alpha() {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            out.push(format!("X[{}]", s.join(",")));
            out.push(format!("Y[{}]", s.join(",")));
        }
        out
    }

    fn sqrt_q(&self, r: usize) -> f64 {
        self.q[r].to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// A compact basis element as a complex combination of generators.
    pub fn compact_in_generators(&self, k: usize) -> Vec<(Gen, C64)> {
        let n = self.datum.rank();
        let np = self.positive_count();
        if k < n {
            let half = self.datum.half_norms()[k];
            let h = *half.numer() as f64 / *half.denom() as f64;
            return vec![(Gen::H(k), C64::new(0.0, h))];
        }
        let r = (k - n) / 2;
        let s = 1.0 / self.sqrt_q(r);
        if (k - n).is_multiple_of(2) {
            vec![(Gen::E(r), C64::new(s, 0.0)), (Gen::E(r + np), C64::new(-s, 0.0))]
        } else {
            vec![(Gen::E(r), C64::new(0.0, s)), (Gen::E(r + np), C64::new(0.0, s))]
        }
    }

    /// Real coordinates in the compact basis of a complex combination of
    /// generators that lies in the compact form.
    pub fn generators_to_compact(&self, v: &HashMap<Gen, C64>) -> Result<Vec<f64>> {
        let n = self.datum.rank();
        let np = self.positive_count();
        let mut out = vec![0.0; self.compact_dim()];
        let mut imag: f64 = 0.0;
        let mut scale: f64 = 0.0;
        let get = |g: Gen| v.get(&g).copied().unwrap_or_default();
        for (i, o) in out.iter_mut().enumerate().take(n) {
            let half = self.datum.half_norms()[i];
            let h = *half.numer() as f64 / *half.denom() as f64;
            let z = get(Gen::H(i)) * C64::new(0.0, -1.0 / h);
            *o = z.re;
            imag = imag.max(z.im.abs());
            scale = scale.max(z.re.abs());
        }
        for r in 0..np {
            let u = get(Gen::E(r));
            let w = get(Gen::E(r + np));
            let sq = self.sqrt_q(r);
            let x = (u - w) * (sq / 2.0);
            let y = (u + w) * C64::new(0.0, -sq / 2.0);
            out[n + 2 * r] = x.re;
            out[n + 2 * r + 1] = y.re;
            imag = imag.max(x.im.abs()).max(y.im.abs());
            scale = scale.max(x.re.abs()).max(y.re.abs());
        }
        if imag > 1e-9 * scale.max(1.0) {
            return Err(Error::Internal(format!("bracket leaves the compact form (imaginary part {imag:e})")));
        }
        Ok(out)
    }

    /// Structure constants `[u_i, u_j] = Σ c_ij^k u_k` of the compact form for
    /// `i < j`, as sparse triplets.
    pub fn compact_structure(&self) -> Result<Vec<(usize, usize, usize, f64)>> {
        let dim = self.compact_dim();
        let terms: Vec<Vec<(Gen, C64)>> = (0..dim).map(|k| self.compact_in_generators(k)).collect();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let mut acc: HashMap<Gen, C64> = HashMap::new();
                for (g, a) in &terms[i] {
                    for (h, b) in &terms[j] {
                        for (k, c) in self.bracket(*g, *h) {
                            let c = C64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
                            *acc.entry(k).or_default() += a * b * c;
                        }
                    }
                }
                for (k, c) in self.generators_to_compact(&acc)?.into_iter().enumerate() {
                    if c.abs() > 1e-14 {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn negate_terms(v: Vec<(Gen, R)>) -> Vec<(Gen, R)> {
    v.into_iter().map(|(g, c)| (g, -c)).collect()
}

pub(crate) fn q_to_r(x: &Q) -> R {
    R::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn signed_index(d: &RootDatum, c: &[i64]) -> Option<usize> {
    if c.iter().all(|&x| x >= 0) {
        d.root_index(c)
    } else if c.iter().all(|&x| x <= 0) {
        let neg: Vec<i64> = c.iter().map(|x| -x).collect();
        d.root_index(&neg).map(|i| i + d.positive_root_count())
    } else {
        None
    }
}

fn local_sum(d: &RootDatum, a: usize, b: usize) -> Option<usize> {
    let n = d.positive_root_count();
    let coords = |x: usize| -> Vec<i64> {
        let c = &d.positive_roots_alpha()[x % n];
        if x < n {
            c.clone()
        } else {
            c.iter().map(|v| -v).collect()
        }
    };
    let s: Vec<i64> = coords(a).iter().zip(coords(b)).map(|(x, y)| x + y).collect();
    signed_index(d, &s)
}

/// `H_α` for a positive root as a diagonal operator: `⟨μ, α⟩` on `V(μ)`.
pub fn coroot_op(d: &RootDatum, basis: &WeightBasis, r: usize) -> BlockOp<R> {
    let c = &d.positive_roots_alpha()[r];
    let half = d.half_norms();
    let mut op = BlockOp::zero(vec![0; d.rank()], basis.weights.len());
    for (k, mu) in basis.weights.iter().enumerate() {
        let mut v = Q::zero();
        for i in 0..c.len() {
            v += half[i] * (mu[i] * c[i]);
        }
        if !v.is_zero() {
            let dim = basis.dims[k];
            let x = q_to_r(&v);
            op.blocks[k] = Some(
                (0..dim).map(|r| (0..dim).map(|s| if r == s { x.clone() } else { R::zero() }).collect()).collect(),
            );
        }
    }
    op
}
