use crate::exact::{matmul, Field};
use num_traits::Zero;
use std::collections::HashMap;

/// The weights of a module in construction order with their multiplicities.
#[derive(Debug, Clone)]
pub struct WeightBasis {
    pub weights: Vec<Vec<i64>>,
    pub index: HashMap<Vec<i64>, usize>,
    pub dims: Vec<usize>,
    pub offsets: Vec<usize>,
}

impl WeightBasis {
    pub fn new(weights: Vec<Vec<i64>>, dims: Vec<usize>) -> Self {
        let index = weights.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for d in &dims {
            offsets.push(acc);
            acc += d;
        }
        WeightBasis { weights, index, dims, offsets }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Index of `weights[k] + shift`, if that is a weight.
    pub fn shifted(&self, k: usize, shift: &[i64]) -> Option<usize> {
        let w: Vec<i64> = self.weights[k].iter().zip(shift).map(|(a, b)| a + b).collect();
        self.index.get(&w).copied()
    }
}

/// An operator of fixed weight: for every source weight block `k` an optional
/// block mapping `V(μ_k)` into `V(μ_k + shift)`. `None` is the zero block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOp<T> {
    pub shift: Vec<i64>,
    pub blocks: Vec<Option<Vec<Vec<T>>>>,
}

impl<T: Field> BlockOp<T> {
    pub fn zero(shift: Vec<i64>, n: usize) -> Self {
        BlockOp { shift, blocks: vec![None; n] }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BlockOp<T>, basis: &WeightBasis) -> BlockOp<T> {
        let shift: Vec<i64> = self.shift.iter().zip(&other.shift).map(|(a, b)| a + b).collect();
        let mut out = BlockOp::zero(shift, basis.weights.len());
        for (k, b) in other.blocks.iter().enumerate() {
            let Some(b) = b else { continue };
            let Some(t) = basis.shifted(k, &other.shift) else { continue };
            if let Some(a) = &self.blocks[t] {
                out.blocks[k] = Some(matmul(a, b));
            }
        }
        out.prune();
        out
    }

    pub fn commutator(&self, other: &BlockOp<T>, basis: &WeightBasis) -> BlockOp<T> {
        let ab = self.compose(other, basis);
        let ba = other.compose(self, basis);
        ab.add_scaled(&ba, -T::one())
    }

    /// `self + c · other` for operators of equal shift.
    pub fn add_scaled(&self, other: &BlockOp<T>, c: T) -> BlockOp<T> {
        debug_assert_eq!(self.shift, other.shift);
        let mut out = self.clone();
        for (k, b) in other.blocks.iter().enumerate() {
            let Some(b) = b else { continue };
            let scaled: Vec<Vec<T>> = b.iter().map(|r| r.iter().map(|x| x.clone() * c.clone()).collect()).collect();
            out.blocks[k] = Some(match out.blocks[k].take() {
                None => scaled,
                Some(a) => a
                    .iter()
                    .zip(&scaled)
                    .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.clone() + y.clone()).collect())
                    .collect(),
            });
        }
        out.prune();
        out
    }

    pub fn scale(&self, c: T) -> BlockOp<T> {
        let mut out = self.clone();
        for b in out.blocks.iter_mut().flatten() {
            for r in b.iter_mut() {
                for x in r.iter_mut() {
                    *x = x.clone() * c.clone();
                }
            }
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        for b in self.blocks.iter_mut() {
            if b.as_ref().is_some_and(|m| m.iter().flatten().all(Zero::is_zero)) {
                *b = None;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Option::is_none)
    }

    /// The scalar `c` with `self = c · other`, if one exists.
    pub fn ratio_to(&self, other: &BlockOp<T>) -> Option<T> {
        if self.shift != other.shift {
            return None;
        }
        let mut c: Option<T> = None;
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            match (a, b) {
                (None, None) => {}
                (Some(_), None) => return None,
                (None, Some(_)) => {
                    if c.as_ref().is_some_and(|c| !c.is_zero()) {
                        return None;
                    }
                    c = Some(T::zero());
                }
                (Some(a), Some(b)) => {
                    for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
                        match &c {
                            None if !y.is_zero() => c = Some(x.clone() / y.clone()),
                            None if !x.is_zero() => return None,
                            None => {}
                            Some(c) if *x != c.clone() * y.clone() => return None,
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        Some(c.unwrap_or_else(T::zero))
    }

    /// Dense matrix in the concatenated weight basis.
    pub fn to_dense(&self, basis: &WeightBasis) -> Vec<Vec<T>> {
        let n = basis.total_dim();
        let mut m = vec![vec![T::zero(); n]; n];
        for (k, b) in self.blocks.iter().enumerate() {
            let Some(b) = b else { continue };
            let t = basis.shifted(k, &self.shift).expect("block into a non-weight");
            for (r, row) in b.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    m[basis.offsets[t] + r][basis.offsets[k] + c] = x.clone();
                }
            }
        }
        m
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> BlockOp<U> {
        BlockOp {
            shift: self.shift.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| b.as_ref().map(|m| m.iter().map(|r| r.iter().map(&f).collect()).collect()))
                .collect(),
        }
    }
}
