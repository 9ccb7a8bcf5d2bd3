use super::types::{Family, SemisimpleType, SimpleType, MAX_RANK};
use crate::error::{Error, Result};
use crate::exact;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::ops::Range;

pub type Q = Ratio<i64>;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// An element of the real span of the roots, in ambient ε-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVec(pub Vec<Q>);

impl WeightVec {
    pub fn zero(dim: usize) -> Self {
        WeightVec(vec![Q::zero(); dim])
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn add(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: Q) -> WeightVec {
        WeightVec(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// Per-factor ambient data: dimension, scale of the standard form and the
/// simple roots in local ε-coordinates.
struct FactorFrame {
    dim: usize,
    scale: Q,
    simple: Vec<Vec<Q>>,
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = unit(dim, i);
    v[j] -= Q::one();
    v
}

fn frame(t: &SimpleType) -> FactorFrame {
    let n = t.rank();
    match t.family() {
        Family::A => {
            FactorFrame { dim: n + 1, scale: Q::one(), simple: (0..n).map(|i| diff(n + 1, i, i + 1)).collect() }
        }
        Family::B => {
            let mut simple: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            simple.push(unit(n, n - 1));
            FactorFrame { dim: n, scale: Q::one(), simple }
        }
        Family::C => {
            let mut simple: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            simple.push(unit(n, n - 1).into_iter().map(|x| x * 2).collect());
            // long roots 2ε_i must have squared length 2
            FactorFrame { dim: n, scale: Q::new(1, 2), simple }
        }
        Family::D => {
            let mut simple: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = unit(n, n - 2);
            last[n - 1] = Q::one();
            simple.push(last);
            FactorFrame { dim: n, scale: Q::one(), simple }
        }
        Family::E => {
            // Bourbaki labelling in R^8; E6 and E7 use the first n roots.
            let h = Q::new(1, 2);
            let mut a1 = vec![-h; 8];
            a1[0] = h;
            a1[7] = h;
            let mut a2 = unit(8, 0);
            a2[1] = Q::one();
            let mut simple = vec![a1, a2, diff(8, 1, 0)];
            for i in 2..7 {
                simple.push(diff(8, i, i - 1));
            }
            simple.truncate(n);
            FactorFrame { dim: 8, scale: Q::one(), simple }
        }
        Family::F => {
            let h = Q::new(1, 2);
            FactorFrame {
                dim: 4,
                scale: Q::one(),
                simple: vec![vec![h, -h, -h, -h], unit(4, 3), diff(4, 2, 3), diff(4, 1, 2)],
            }
        }
        Family::G => FactorFrame { dim: 3, scale: Q::new(1, 3), simple: vec![diff(3, 0, 1), vec![q(-2), q(1), q(1)]] },
    }
}

/// Root datum of a (semi)simple type with exact rational data.
///
/// Conventions: `cartan[i][j] = 2⟨α_i,α_j⟩/⟨α_j,α_j⟩`, so the simple root
/// `α_i` has ω-coordinates equal to row `i`. Long roots of every simple factor
/// have squared length 2.
#[derive(Debug, Clone)]
pub struct RootDatum {
    ty: SemisimpleType,
    ambient_dim: usize,
    eps_scale: Vec<Q>,
    simple_roots: Vec<WeightVec>,
    positive_alpha: Vec<Vec<i64>>,
    positive_omega: Vec<Vec<i64>>,
    root_lookup: HashMap<Vec<i64>, usize>,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    fundamental_weights: Vec<WeightVec>,
    gram: Vec<Vec<Q>>,
    omega_gram: Vec<Vec<Q>>,
    omega_gram_int: Vec<Vec<i64>>,
    inner_scale: i64,
    half_norms: Vec<Q>,
    weyl_order: u128,
    factor_ranges: Vec<Range<usize>>,
    ambient_ranges: Vec<Range<usize>>,
}

/// Build the root datum for a (semi)simple type.
pub fn build_root_datum(ty: &SemisimpleType) -> Result<RootDatum> {
    let rank = ty.rank();
    if rank > MAX_RANK {
        return Err(Error::InvalidType(format!("{ty}: total rank {rank} exceeds the supported maximum {MAX_RANK}")));
    }

    let frames: Vec<FactorFrame> = ty.factors().iter().map(frame).collect();
    let ambient_dim: usize = frames.iter().map(|f| f.dim).sum();
    let mut eps_scale = Vec::with_capacity(ambient_dim);
    let mut simple_roots = Vec::with_capacity(rank);
    let mut factor_ranges = Vec::new();
    let mut ambient_ranges = Vec::new();
    let mut offset = 0;
    for f in &frames {
        let start = simple_roots.len();
        for r in &f.simple {
            let mut v = vec![Q::zero(); ambient_dim];
            v[offset..offset + f.dim].clone_from_slice(r);
            simple_roots.push(WeightVec(v));
        }
        eps_scale.extend(std::iter::repeat_n(f.scale, f.dim));
        factor_ranges.push(start..simple_roots.len());
        ambient_ranges.push(offset..offset + f.dim);
        offset += f.dim;
    }

    let form = |a: &[Q], b: &[Q]| -> Q {
        a.iter().zip(b).zip(&eps_scale).map(|((x, y), s)| x * y * s).fold(Q::zero(), |acc, t| acc + t)
    };

    let gram: Vec<Vec<Q>> =
        simple_roots.iter().map(|a| simple_roots.iter().map(|b| form(&a.0, &b.0)).collect()).collect();

    let mut cartan = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            let c = gram[i][j] * 2 / gram[j][j];
            if !c.is_integer() {
                return Err(Error::Internal(format!("non-integral Cartan entry ({i},{j})")));
            }
            cartan[i][j] = c.to_integer();
        }
    }
    let cartan_q: Vec<Vec<Q>> = cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let cartan_inv = exact::inverse(&cartan_q).ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;

    let positive_alpha = positive_roots_from_cartan(&cartan, usize::MAX)?;
    if positive_alpha.len() != ty.positive_root_count() {
        return Err(Error::Internal(format!(
            "{ty}: generated {} positive roots, expected {}",
            positive_alpha.len(),
            ty.positive_root_count()
        )));
    }
    let positive_omega: Vec<Vec<i64>> = positive_alpha
        .iter()
        .map(|c| (0..rank).map(|j| (0..rank).map(|i| c[i] * cartan[i][j]).sum()).collect())
        .collect();
    let root_lookup = positive_alpha.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();

    let combine = |coeffs: &[Q]| -> WeightVec {
        let mut v = vec![Q::zero(); ambient_dim];
        for (c, a) in coeffs.iter().zip(&simple_roots) {
            for (x, y) in v.iter_mut().zip(&a.0) {
                *x += c * y;
            }
        }
        WeightVec(v)
    };
    let fundamental_weights: Vec<WeightVec> = cartan_inv.iter().map(|row| combine(row)).collect();

    let omega_gram: Vec<Vec<Q>> =
        fundamental_weights.iter().map(|a| fundamental_weights.iter().map(|b| form(&a.0, &b.0)).collect()).collect();
    let inner_scale = omega_gram.iter().flatten().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let omega_gram_int =
        omega_gram.iter().map(|r| r.iter().map(|x| (x * inner_scale).to_integer()).collect()).collect();
    let half_norms = (0..rank).map(|i| gram[i][i] / 2).collect();

    Ok(RootDatum {
        ty: ty.clone(),
        ambient_dim,
        eps_scale,
        simple_roots,
        positive_alpha,
        positive_omega,
        root_lookup,
        cartan,
        cartan_inv,
        fundamental_weights,
        gram,
        omega_gram,
        omega_gram_int,
        inner_scale,
        half_norms,
        weyl_order: ty.weyl_order(),
        factor_ranges,
        ambient_ranges,
    })
}

/// Positive roots in simple-root coordinates, generated by root strings and
/// sorted by height, then by coordinates in decreasing lexicographic order.
/// Fails once more than `cap` roots appear, which happens for matrices of
/// non-finite type.
pub fn positive_roots_from_cartan(cartan: &[Vec<i64>], cap: usize) -> Result<Vec<Vec<i64>>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // ⟨β, α_i^∨⟩
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        if roots.len() > cap {
            return Err(Error::CapExceeded { what: "positive roots", cap });
        }
        layer = next;
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    Ok(roots)
}

impl RootDatum {
    pub fn semisimple_type(&self) -> &SemisimpleType {
        &self.ty
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &[Vec<Q>] {
        &self.cartan_inv
    }

    pub fn simple_roots(&self) -> &[WeightVec] {
        &self.simple_roots
    }

    pub fn fundamental_weights(&self) -> &[WeightVec] {
        &self.fundamental_weights
    }

    /// Gram matrix of the form on the simple roots.
    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    /// Gram matrix of the form on the fundamental weights.
    pub fn omega_gram(&self) -> &[Vec<Q>] {
        &self.omega_gram
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    /// `⟨α_i, α_i⟩ / 2` for each simple root.
    pub fn half_norms(&self) -> &[Q] {
        &self.half_norms
    }

    /// Ranges of simple-root indices belonging to each simple factor.
    pub fn factor_ranges(&self) -> &[Range<usize>] {
        &self.factor_ranges
    }

    pub fn ambient_ranges(&self) -> &[Range<usize>] {
        &self.ambient_ranges
    }

    pub fn positive_root_count(&self) -> usize {
        self.positive_alpha.len()
    }

    /// Positive roots in simple-root coordinates, canonical order.
    pub fn positive_roots_alpha(&self) -> &[Vec<i64>] {
        &self.positive_alpha
    }

    /// Positive roots in fundamental-weight coordinates, canonical order.
    pub fn positive_roots_omega(&self) -> &[Vec<i64>] {
        &self.positive_omega
    }

    /// Positive roots in ambient coordinates, canonical order.
    pub fn positive_roots(&self) -> Vec<WeightVec> {
        self.positive_alpha.iter().map(|c| self.from_alpha(&c.iter().map(|&x| q(x)).collect::<Vec<_>>())).collect()
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn root_index(&self, alpha: &[i64]) -> Option<usize> {
        self.root_lookup.get(alpha).copied()
    }

    /// Index of the simple factor a simple root belongs to.
    pub fn factor_of_simple(&self, i: usize) -> usize {
        self.factor_ranges.iter().position(|r| r.contains(&i)).expect("simple root index out of range")
    }

    /// Index of the simple factor a positive root belongs to.
    pub fn factor_of_root(&self, root: usize) -> usize {
        let c = &self.positive_alpha[root];
        let i = c.iter().position(|&x| x != 0).expect("zero root");
        self.factor_of_simple(i)
    }

    /// Height of a root.
    pub fn height(&self, root: usize) -> i64 {
        self.positive_alpha[root].iter().sum()
    }

    /// The positive roots that are dominant: the highest root of every factor
    /// and, for non-simply-laced factors, the highest short root.
    pub fn dominant_roots(&self) -> Vec<usize> {
        (0..self.positive_omega.len()).filter(|&r| self.positive_omega[r].iter().all(|&x| x >= 0)).collect()
    }

    /// Highest root of a factor, as an index into the positive roots.
    pub fn highest_root(&self, factor: usize) -> usize {
        (0..self.positive_alpha.len())
            .filter(|&r| self.factor_of_root(r) == factor)
            .max_by_key(|&r| self.height(r))
            .expect("factor without roots")
    }

    /// Squared length of a positive root.
    pub fn root_norm(&self, root: usize) -> Q {
        let c = &self.positive_alpha[root];
        let mut acc = Q::zero();
        for i in 0..c.len() {
            for j in 0..c.len() {
                acc += self.gram[i][j] * (c[i] * c[j]);
            }
        }
        acc
    }

    fn check_dim(&self, v: &WeightVec) -> Result<()> {
        if v.0.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: v.0.len() });
        }
        Ok(())
    }

    /// The invariant form `⟨μ, ν⟩`.
    pub fn inner(&self, a: &WeightVec, b: &WeightVec) -> Result<Q> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(a.0.iter().zip(&b.0).zip(&self.eps_scale).fold(Q::zero(), |acc, ((x, y), s)| acc + x * y * s))
    }

    /// ω-coordinates `a_i = 2⟨μ,α_i⟩/⟨α_i,α_i⟩`.
    pub fn to_omega(&self, v: &WeightVec) -> Result<Vec<Q>> {
        self.check_dim(v)?;
        self.simple_roots
            .iter()
            .zip(&self.gram)
            .enumerate()
            .map(|(i, (a, row))| Ok(self.inner(v, a)? * 2 / row[i]))
            .collect()
    }

    /// Integral ω-coordinates, or `None` for a non-lattice vector.
    pub fn to_omega_int(&self, v: &WeightVec) -> Result<Option<Vec<i64>>> {
        let w = self.to_omega(v)?;
        Ok(if w.iter().all(|x| x.is_integer()) { Some(w.iter().map(|x| x.to_integer()).collect()) } else { None })
    }

    /// Simple-root coordinates.
    pub fn to_alpha(&self, v: &WeightVec) -> Result<Vec<Q>> {
        let w = self.to_omega(v)?;
        Ok(self.omega_to_alpha(&w))
    }

    pub fn omega_to_alpha(&self, w: &[Q]) -> Vec<Q> {
        let n = self.rank();
        (0..n).map(|j| (0..n).fold(Q::zero(), |acc, i| acc + w[i] * self.cartan_inv[i][j])).collect()
    }

    pub fn from_omega(&self, w: &[Q]) -> WeightVec {
        let mut v = vec![Q::zero(); self.ambient_dim];
        for (c, om) in w.iter().zip(&self.fundamental_weights) {
            for (x, y) in v.iter_mut().zip(&om.0) {
                *x += c * y;
            }
        }
        WeightVec(v)
    }

    pub fn from_omega_int(&self, w: &[i64]) -> WeightVec {
        self.from_omega(&w.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    pub fn from_alpha(&self, c: &[Q]) -> WeightVec {
        let mut v = vec![Q::zero(); self.ambient_dim];
        for (k, a) in c.iter().zip(&self.simple_roots) {
            for (x, y) in v.iter_mut().zip(&a.0) {
                *x += k * y;
            }
        }
        WeightVec(v)
    }

    /// Simple-root coordinates of an integral weight given in ω-coordinates.
    pub fn omega_int_to_alpha(&self, w: &[i64]) -> Vec<Q> {
        self.omega_to_alpha(&w.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    /// `inner_scale() · ⟨μ, ν⟩` for integral ω-coordinates; exact integer.
    pub fn scaled_inner(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut acc = 0i128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc += x as i128 * y as i128 * self.omega_gram_int[i][j] as i128;
            }
        }
        acc
    }

    /// The positive integer `L` with `L·⟨ω_i, ω_j⟩ ∈ ℤ`.
    pub fn inner_scale(&self) -> i64 {
        self.inner_scale
    }

    /// Whether an integral weight lies in the root lattice.
    pub fn in_root_lattice(&self, w: &[i64]) -> bool {
        self.omega_int_to_alpha(w).iter().all(|x| x.is_integer())
    }

    /// Sign of `⟨μ, α⟩` for ω-coordinates `μ` and a positive root index.
    pub fn pairing_sign<T: Clone + Signed + From<i64>>(&self, w: &[T], root: usize) -> T {
        let c = &self.positive_alpha[root];
        let mut acc = T::zero();
        for i in 0..w.len() {
            if c[i] != 0 {
                // ⟨ω_i, α_i⟩ = |α_i|²/2 with denominator dividing 6
                let h = self.half_norms[i] * 6;
                acc = acc + w[i].clone() * T::from(c[i] * h.to_integer());
            }
        }
        acc.signum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        build_root_datum(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn g2_positive_roots_match_listing() {
        let d = datum("G2");
        let expected = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]];
        assert_eq!(d.positive_roots_alpha(), expected.as_slice());
    }

    #[test]
    fn g2_fundamental_weights_in_simple_roots() {
        let d = datum("G2");
        let w1 = d.to_alpha(&d.fundamental_weights()[0]).unwrap();
        let w2 = d.to_alpha(&d.fundamental_weights()[1]).unwrap();
        assert_eq!(w1, vec![q(2), q(1)]);
        assert_eq!(w2, vec![q(3), q(2)]);
    }

    #[test]
    fn a1_fundamental_weight_is_half_root() {
        let d = datum("A1");
        assert_eq!(d.positive_roots_alpha(), &[vec![1]]);
        let w = d.to_alpha(&d.fundamental_weights()[0]).unwrap();
        assert_eq!(w, vec![Q::new(1, 2)]);
    }

    #[test]
    fn f4_fundamental_weights_match_tables() {
        let d = datum("F4");
        let expected = [[2, 3, 2, 1], [3, 6, 4, 2], [4, 8, 6, 3], [2, 4, 3, 2]];
        for (w, e) in d.fundamental_weights().iter().zip(expected) {
            let a = d.to_alpha(w).unwrap();
            assert_eq!(a, e.iter().map(|&x| q(x)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn long_roots_have_norm_two() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4", "E6", "E7", "E8"] {
            let d = datum(t);
            let max = (0..d.positive_root_count()).map(|r| d.root_norm(r)).max().unwrap();
            assert_eq!(max, q(2), "{t}");
        }
    }

    #[test]
    fn fundamental_weights_are_dual_to_coroots() {
        for t in ["A4", "B3", "C4", "D5", "G2", "F4", "E6", "E7", "E8", "A2xB2"] {
            let d = datum(t);
            for (i, w) in d.fundamental_weights().iter().enumerate() {
                for (j, a) in d.simple_roots().iter().enumerate() {
                    let v = d.inner(w, a).unwrap() * 2 / d.inner(a, a).unwrap();
                    assert_eq!(v, if i == j { q(1) } else { q(0) }, "{t} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn coordinate_round_trips_are_exact() {
        let d = datum("B3");
        let w = vec![q(1), Q::new(-3, 2), q(2)];
        let v = d.from_omega(&w);
        assert_eq!(d.to_omega(&v).unwrap(), w);
        let a = d.to_alpha(&v).unwrap();
        assert_eq!(d.from_alpha(&a), v);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let d = datum("A2");
        let bad = WeightVec::zero(2);
        assert!(matches!(d.inner(&bad, &bad), Err(Error::DimensionMismatch { expected: 3, got: 2 })));
    }

    #[test]
    fn rank_guard() {
        let t: SemisimpleType = "A25".parse().unwrap();
        assert!(build_root_datum(&t).is_err());
    }

    #[test]
    fn dominant_roots_are_highest_long_and_short() {
        let d = datum("G2");
        let dom = d.dominant_roots();
        let coords: Vec<_> = dom.iter().map(|&r| d.positive_roots_alpha()[r].clone()).collect();
        assert_eq!(coords, vec![vec![2, 1], vec![3, 2]]);
        let d = datum("A3");
        assert_eq!(d.dominant_roots().len(), 1);
    }

    /// Standard Cartan matrices from Dynkin edge lists `(i, j, A[i][j], A[j][i])`.
    fn table(t: &str) -> Vec<Vec<i64>> {
        let st: SimpleType = t.parse().unwrap();
        let n = st.rank();
        let mut edges: Vec<(usize, usize, i64, i64)> = Vec::new();
        let chain = |k: usize| (0..k).map(|i| (i, i + 1, -1, -1)).collect::<Vec<_>>();
        match st.family() {
            Family::A => edges = chain(n - 1),
            Family::B => {
                edges = chain(n - 2);
                edges.push((n - 2, n - 1, -2, -1));
            }
            Family::C => {
                edges = chain(n - 2);
                edges.push((n - 2, n - 1, -1, -2));
            }
            Family::D => {
                edges = chain(n - 2);
                edges.push((n - 3, n - 1, -1, -1));
            }
            Family::E => {
                edges.push((0, 2, -1, -1));
                edges.push((1, 3, -1, -1));
                for i in 2..n - 1 {
                    edges.push((i, i + 1, -1, -1));
                }
            }
            Family::F => {
                edges = vec![(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)];
            }
            Family::G => edges.push((0, 1, -1, -3)),
        }
        let mut a = vec![vec![0; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j, x, y) in edges {
            a[i][j] = x;
            a[j][i] = y;
        }
        a
    }

    fn all_types_up_to_rank_8() -> Vec<String> {
        let mut out = Vec::new();
        for n in 1..=8 {
            out.push(format!("A{n}"));
            if n >= 2 {
                out.push(format!("B{n}"));
                out.push(format!("C{n}"));
            }
            if n >= 3 {
                out.push(format!("D{n}"));
            }
        }
        out.extend(["E6", "E7", "E8", "F4", "G2"].map(String::from));
        out
    }

    #[test]
    fn cartan_matrices_match_tables() {
        for t in all_types_up_to_rank_8() {
            assert_eq!(datum(&t).cartan_matrix(), table(&t).as_slice(), "{t}");
        }
    }

    #[test]
    fn positive_root_counts() {
        for t in all_types_up_to_rank_8() {
            let st: SimpleType = t.parse().unwrap();
            let n = st.rank();
            let expected = match st.family() {
                Family::A => n * (n + 1) / 2,
                Family::B | Family::C => n * n,
                Family::D => n * (n - 1),
                Family::E => [36, 63, 120][n - 6],
                Family::F => 24,
                Family::G => 6,
            };
            let d = datum(&t);
            assert_eq!(d.positive_root_count(), expected, "{t}");
            assert!(d.positive_roots_alpha().iter().flatten().all(|&c| c >= 0));
        }
    }

    #[test]
    fn simple_reflections_permute_other_positive_roots() {
        for t in ["A3", "B4", "C3", "D4", "G2", "F4", "E6", "A1xG2"] {
            let d = datum(t);
            let set: std::collections::HashSet<_> = d.positive_roots_omega().iter().cloned().collect();
            for i in 0..d.rank() {
                for r in d.positive_roots_omega() {
                    if *r == d.cartan_matrix()[i] {
                        continue;
                    }
                    let img = super::super::reflect(&d, r, i).unwrap();
                    assert!(set.contains(&img), "{t} s_{i}");
                }
            }
        }
    }

    #[test]
    fn product_roots_are_disjoint_union() {
        let d = datum("A2xB2");
        assert_eq!(d.positive_root_count(), 3 + 4);
        assert_eq!(d.factor_ranges(), &[0..2, 2..4]);
        for r in 0..d.positive_root_count() {
            let f = d.factor_of_root(r);
            let c = &d.positive_roots_alpha()[r];
            for (i, &x) in c.iter().enumerate() {
                if x != 0 {
                    assert_eq!(d.factor_of_simple(i), f);
                }
            }
        }
    }
}
