use super::datum::{RootDatum, WeightVec, Q};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};
use std::collections::{HashSet, VecDeque};

/// Default cap on the size of an enumerated Weyl orbit.
pub const ORBIT_CAP: usize = 10_000_000;

/// Simple reflection `s_i` on integral ω-coordinates.
pub fn reflect(d: &RootDatum, w: &[i64], i: usize) -> Result<Vec<i64>> {
    let a = w[i];
    w.iter()
        .zip(&d.cartan_matrix()[i])
        .map(|(&x, &c)| a.checked_mul(c).and_then(|t| x.checked_sub(t)).ok_or(Error::Overflow("simple reflection")))
        .collect()
}

fn reflect_q(d: &RootDatum, w: &mut [Q], i: usize) {
    let a = w[i];
    for (x, &c) in w.iter_mut().zip(&d.cartan_matrix()[i]) {
        *x -= a * c;
    }
}

/// Dominant representative of the orbit of an integral weight together with
/// a reduced word `[i_1, ..., i_k]` such that `s_{i_k}⋯s_{i_1} w` is dominant.
pub fn dominant_representative(d: &RootDatum, w: &[i64]) -> Result<(Vec<i64>, Vec<usize>)> {
    check_rank(d, w.len())?;
    let mut cur = w.to_vec();
    let mut word = Vec::new();
    while let Some(i) = cur.iter().position(|&x| x < 0) {
        cur = reflect(d, &cur, i)?;
        word.push(i);
    }
    Ok((cur, word))
}

/// Dominant representative without the word.
pub fn dominant(d: &RootDatum, w: &[i64]) -> Result<Vec<i64>> {
    dominant_representative(d, w).map(|(v, _)| v)
}

/// Dominant representative of an arbitrary real weight.
pub fn dominant_representative_vec(d: &RootDatum, v: &WeightVec) -> Result<(WeightVec, Vec<usize>)> {
    let mut cur = d.to_omega(v)?;
    let mut word = Vec::new();
    while let Some(i) = cur.iter().position(|x| x.is_negative()) {
        reflect_q(d, &mut cur, i);
        word.push(i);
    }
    Ok((d.from_omega(&cur), word))
}

/// Apply `s_{i_k}⋯s_{i_1}` to an arbitrary weight.
pub fn apply_word(d: &RootDatum, v: &WeightVec, word: &[usize]) -> Result<WeightVec> {
    let mut cur = d.to_omega(v)?;
    for &i in word {
        if i >= d.rank() {
            return Err(Error::InvalidParams(format!("reflection index {i} out of range")));
        }
        reflect_q(d, &mut cur, i);
    }
    Ok(d.from_omega(&cur))
}

fn check_rank(d: &RootDatum, len: usize) -> Result<()> {
    if len != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: len });
    }
    Ok(())
}

/// The full Weyl orbit of an integral weight, starting from its dominant
/// representative. Fails once more than `cap` elements have been produced.
pub fn weyl_orbit(d: &RootDatum, w: &[i64], cap: usize) -> Result<Vec<Vec<i64>>> {
    let start = dominant(d, w)?;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(cur) = queue.pop_front() {
        for i in 0..d.rank() {
            // moving down from the dominant chamber only crosses walls with a_i > 0
            if cur[i] > 0 {
                let next = reflect(d, &cur, i)?;
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { what: "Weyl orbit", cap });
                    }
                    queue.push_back(next);
                }
            }
        }
        out.push(cur);
    }
    Ok(out)
}

/// Whether `⟨w, α⟩ ≠ 0` for every root.
pub fn is_regular(d: &RootDatum, w: &[i64]) -> Result<bool> {
    check_rank(d, w.len())?;
    let w: Vec<i128> = w.iter().map(|&x| x as i128).collect();
    Ok((0..d.positive_root_count()).all(|r| !d.pairing_sign(&w, r).is_zero()))
}

/// Whether an arbitrary real weight is regular.
pub fn is_regular_vec(d: &RootDatum, v: &WeightVec) -> Result<bool> {
    Ok(d.positive_roots().iter().map(|a| d.inner(v, a)).collect::<Result<Vec<_>>>()?.iter().all(|x| !x.is_zero()))
}

/// Order of a connected finite Weyl group from its rank and number of
/// positive roots; these two numbers determine the Dynkin type up to B/C.
fn connected_weyl_order(rank: usize, roots: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    match (rank, roots) {
        (6, 36) => 51_840,
        (7, 63) => 2_903_040,
        (8, 120) => 696_729_600,
        (4, 24) => 1_152,
        (2, 6) => 12,
        (k, n) if n == k * (k + 1) / 2 => fact(k + 1),
        (k, n) if n == k * k => (1u128 << k) * fact(k),
        (k, n) if n == k * (k - 1) => (1u128 << (k - 1)) * fact(k),
        _ => unreachable!("not a root system: rank {rank}, {roots} positive roots"),
    }
}

/// Order of the stabilizer of a dominant integral weight, the parabolic
/// subgroup generated by the simple reflections fixing it.
pub fn stabilizer_order(d: &RootDatum, w: &[i64]) -> Result<u128> {
    check_rank(d, w.len())?;
    if w.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(w.to_vec()));
    }
    let n = d.rank();
    let fixed: Vec<bool> = w.iter().map(|&x| x == 0).collect();
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for s in 0..n {
        if !fixed[s] || comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = ncomp;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if fixed[j] && comp[j] == usize::MAX && d.cartan_matrix()[i][j] != 0 {
                    comp[j] = ncomp;
                    stack.push(j);
                }
            }
        }
        ncomp += 1;
    }
    let mut ranks = vec![0usize; ncomp];
    let mut roots = vec![0usize; ncomp];
    for i in 0..n {
        if comp[i] != usize::MAX {
            ranks[comp[i]] += 1;
        }
    }
    for c in d.positive_roots_alpha() {
        let support: Vec<usize> = (0..n).filter(|&i| c[i] != 0).collect();
        if support.iter().all(|&i| fixed[i]) {
            roots[comp[support[0]]] += 1;
        }
    }
    Ok(ranks.iter().zip(&roots).map(|(&k, &m)| connected_weyl_order(k, m)).product())
}

/// Size of the Weyl orbit of an integral weight, without enumerating it.
pub fn orbit_size(d: &RootDatum, w: &[i64]) -> Result<u128> {
    let dom = dominant(d, w)?;
    Ok(d.weyl_order() / stabilizer_order(d, &dom)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_datum;
    use proptest::prelude::*;

    fn datum(s: &str) -> RootDatum {
        build_root_datum(&s.parse().unwrap()).unwrap()
    }

    /// Brute-force Weyl group as the closure of the simple reflections
    /// acting on a regular dominant weight.
    fn group_elements(d: &RootDatum) -> Vec<Vec<usize>> {
        let rho = vec![1i64; d.rank()];
        let mut seen = HashSet::new();
        let mut words = vec![vec![]];
        seen.insert(rho.clone());
        let mut frontier = vec![(rho, vec![])];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (w, word) in frontier {
                for i in 0..d.rank() {
                    let r = reflect(d, &w, i).unwrap();
                    if seen.insert(r.clone()) {
                        let mut wd: Vec<usize> = word.clone();
                        wd.push(i);
                        words.push(wd.clone());
                        next.push((r, wd));
                    }
                }
            }
            frontier = next;
        }
        words
    }

    #[test]
    fn group_order_matches_formula() {
        for t in ["A1", "A3", "B3", "C3", "D4", "G2", "F4", "A1xA2"] {
            let d = datum(t);
            assert_eq!(group_elements(&d).len() as u128, d.weyl_order(), "{t}");
        }
    }

    #[test]
    fn orbit_stabilizer_against_brute_force() {
        for (t, w) in [
            ("A2", vec![1, 0]),
            ("B2", vec![0, 1]),
            ("G2", vec![1, 0]),
            ("G2", vec![0, 0]),
            ("C3", vec![0, 1, 1]),
            ("F4", vec![1, 0, 0, 0]),
        ] {
            let d = datum(t);
            let orbit = weyl_orbit(&d, &w, ORBIT_CAP).unwrap();
            let group = group_elements(&d);
            let mut images = HashSet::new();
            for word in &group {
                let mut cur = w.clone();
                for &i in word {
                    cur = reflect(&d, &cur, i).unwrap();
                }
                images.insert(cur);
            }
            let stab = group
                .iter()
                .filter(|word| {
                    let mut cur = w.clone();
                    for &i in word.iter() {
                        cur = reflect(&d, &cur, i).unwrap();
                    }
                    cur == w
                })
                .count();
            assert_eq!(orbit.len(), images.len(), "{t}");
            assert_eq!(orbit.len() * stab, group.len(), "{t}");
            assert_eq!(stabilizer_order(&d, &w).unwrap(), stab as u128, "{t}");
            assert_eq!(orbit_size(&d, &w).unwrap(), orbit.len() as u128, "{t}");
        }
    }

    #[test]
    fn stabilizers_of_zero_are_whole_group() {
        for t in ["A5", "B4", "C3", "D5", "E6", "E7", "E8", "F4", "G2", "B2xG2"] {
            let d = datum(t);
            assert_eq!(stabilizer_order(&d, &vec![0; d.rank()]).unwrap(), d.weyl_order(), "{t}");
        }
    }

    #[test]
    fn orbit_cap_is_enforced() {
        let d = datum("E8");
        assert!(matches!(weyl_orbit(&d, &[1; 8], 1000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn regularity() {
        let d = datum("A2");
        assert!(is_regular(&d, &[1, 1]).unwrap());
        assert!(!is_regular(&d, &[1, 0]).unwrap());
        assert!(is_regular(&d, &[1, -2]).unwrap());
        assert!(!is_regular(&d, &[1, -1]).unwrap());
    }

    proptest! {
        #[test]
        fn dominant_representative_is_dominant_and_word_reproduces(
            t in prop::sample::select(vec!["A3", "B3", "C3", "D4", "G2", "F4", "A2xG2"]),
            seed in prop::collection::vec(-6i64..=6, 8),
        ) {
            let d = datum(t);
            let w: Vec<i64> = seed[..d.rank()].to_vec();
            let (dom, word) = dominant_representative(&d, &w).unwrap();
            prop_assert!(dom.iter().all(|&x| x >= 0));
            let v = d.from_omega_int(&w);
            let moved = apply_word(&d, &v, &word).unwrap();
            prop_assert_eq!(d.to_omega_int(&moved).unwrap().unwrap(), dom.clone());
            prop_assert_eq!(d.inner(&v, &v).unwrap(), d.inner(&moved, &moved).unwrap());
            let (dv, _) = dominant_representative_vec(&d, &v).unwrap();
            prop_assert_eq!(dv, d.from_omega_int(&dom));
            prop_assert_eq!(is_regular(&d, &w).unwrap(), is_regular_vec(&d, &v).unwrap());
        }
    }

    #[test]
    fn orbit_examples() {
        let d = datum("A2");
        assert_eq!(weyl_orbit(&d, &[0, 0], ORBIT_CAP).unwrap(), vec![vec![0, 0]]);
        assert_eq!(weyl_orbit(&d, &[1, 0], ORBIT_CAP).unwrap().len(), 3);
        // C2: 2ω₁ = 2ε₁ has orbit {±2ε₁, ±2ε₂}
        let d = datum("C2");
        let orbit = weyl_orbit(&d, &[2, 0], ORBIT_CAP).unwrap();
        let mut eps: Vec<Vec<Q>> = orbit.iter().map(|w| d.from_omega_int(w).0).collect();
        eps.sort();
        let two = Q::from_integer(2);
        let z = Q::zero();
        let mut expected = vec![vec![two, z], vec![-two, z], vec![z, two], vec![z, -two]];
        expected.sort();
        assert_eq!(eps, expected);
    }

    #[test]
    fn dominant_representative_examples() {
        let d = datum("A1");
        assert_eq!(dominant_representative(&d, &[-3]).unwrap(), (vec![3], vec![0]));
        assert_eq!(dominant_representative(&d, &[2]).unwrap(), (vec![2], vec![]));
        let d = datum("G2");
        let moved = reflect(&d, &[2, 0], 0).unwrap();
        let (dom, word) = dominant_representative(&d, &moved).unwrap();
        assert_eq!(dom, vec![2, 0]);
        assert_eq!(word.len(), 1);
    }

    #[test]
    fn orbit_elements_share_norm() {
        let d = datum("B3");
        let orbit = weyl_orbit(&d, &[1, 0, 1], ORBIT_CAP).unwrap();
        let n0 = d.scaled_inner(&[1, 0, 1], &[1, 0, 1]);
        assert!(orbit.iter().all(|w| d.scaled_inner(w, w) == n0));
        assert_eq!(d.weyl_order() % orbit.len() as u128, 0);
    }
}
