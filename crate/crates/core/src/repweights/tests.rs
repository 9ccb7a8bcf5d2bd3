use super::*;
use crate::rootsys::{build_root_datum, reflect};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn datum(s: &str) -> Arc<RootDatum> {
    Arc::new(build_root_datum(&s.parse().unwrap()).unwrap())
}

fn hw(t: &str, c: &[i64]) -> HighestWeight {
    HighestWeight::new(datum(t), c.to_vec()).unwrap()
}

fn support_map(l: &HighestWeight) -> BTreeMap<Vec<i64>, u64> {
    WeightSystem::new(l).unwrap().dominant_support().iter().map(|e| (e.mu.clone(), e.mult)).collect()
}

/// Weights of `V_λ` for `A_n` from semistandard tableaux: the weight of a
/// tableau has ε-coordinates equal to its content.
fn ssyt_weights(lambda: &[i64]) -> BTreeMap<Vec<i64>, u64> {
    let n = lambda.len();
    let shape: Vec<usize> = (0..n).map(|k| lambda[k..].iter().sum::<i64>() as usize).collect();
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut out = BTreeMap::new();
    let mut filling = vec![vec![0usize; shape.first().copied().unwrap_or(0)]; n];
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        filling: &mut Vec<Vec<usize>>,
        letters: usize,
        out: &mut BTreeMap<Vec<i64>, u64>,
    ) {
        if k == cells.len() {
            let mut content = vec![0i64; letters];
            for &(r, c) in cells {
                content[filling[r][c]] += 1;
            }
            let omega: Vec<i64> = (0..letters - 1).map(|i| content[i] - content[i + 1]).collect();
            *out.entry(omega).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[k];
        let lo = if c > 0 { filling[r][c - 1] } else { 0 };
        let lo = if r > 0 { lo.max(filling[r - 1][c] + 1) } else { lo };
        for x in lo..letters {
            filling[r][c] = x;
            fill(k + 1, cells, filling, letters, out);
        }
    }
    fill(0, &cells, &mut filling, n + 1, &mut out);
    out
}

#[test]
fn type_a_multiplicities_match_tableaux() {
    for (t, l) in [
        ("A1", vec![3]),
        ("A2", vec![1, 1]),
        ("A2", vec![2, 1]),
        ("A2", vec![3, 0]),
        ("A2", vec![2, 2]),
        ("A3", vec![1, 0, 1]),
        ("A3", vec![2, 1, 0]),
        ("A3", vec![1, 1, 1]),
    ] {
        let lam = hw(t, &l);
        let ws = WeightSystem::new(&lam).unwrap();
        let all: BTreeMap<Vec<i64>, u64> = ws.all_weights(1 << 20).unwrap().into_iter().collect();
        assert_eq!(all, ssyt_weights(&l), "{t} {l:?}");
        let total: u64 = all.values().sum();
        assert_eq!(ws.dim(), total as u128);
        assert_eq!(dimension(&lam).unwrap(), total as u128);
    }
}

#[test]
fn sl2_spin_one() {
    let m = support_map(&hw("A1", &[2]));
    assert_eq!(m, BTreeMap::from([(vec![2], 1), (vec![0], 1)]));
}

#[test]
fn g2_adjoint_support() {
    let l = hw("G2", &[0, 1]);
    let m = support_map(&l);
    assert_eq!(m, BTreeMap::from([(vec![0, 1], 1), (vec![1, 0], 1), (vec![0, 0], 2)]));
    assert_eq!(dimension(&l).unwrap(), 14);
    let ws = WeightSystem::new(&l).unwrap();
    assert_eq!(ws.dim(), 14);
    // weights are the roots and zero
    let d = l.datum();
    let mut roots: Vec<Vec<i64>> = d.positive_roots_omega().to_vec();
    roots.extend(d.positive_roots_omega().iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
    roots.push(vec![0, 0]);
    let mut weights: Vec<Vec<i64>> = ws.all_weights(1000).unwrap().into_iter().map(|(w, _)| w).collect();
    weights.sort();
    roots.sort();
    assert_eq!(weights, roots);
    // highest root 3α₁ + 2α₂ is a weight
    let top = d.from_alpha(&[3.into(), 2.into()]);
    assert!(is_weight(&l, &top).unwrap());
}

#[test]
fn adjoint_zero_weight_is_rank() {
    for (t, l) in [("G2", vec![0, 1]), ("A2", vec![1, 1]), ("B3", vec![0, 1, 0]), ("F4", vec![0, 0, 0, 1])] {
        let lam = hw(t, &l);
        let ws = WeightSystem::new(&lam).unwrap();
        assert_eq!(ws.multiplicity(&vec![0; l.len()]).unwrap() as usize, l.len(), "{t}");
        let dim = lam.datum().rank() + 2 * lam.datum().positive_root_count();
        assert_eq!(dimension(&lam).unwrap(), dim as u128, "{t}");
    }
}

#[test]
fn small_dimensions() {
    assert_eq!(dimension(&hw("G2", &[1, 0])).unwrap(), 7);
    assert_eq!(dimension(&hw("E8", &[0; 8])).unwrap(), 1);
    assert_eq!(dimension(&hw("E8", &[0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), 248);
    assert_eq!(dimension(&hw("E6", &[1, 0, 0, 0, 0, 0])).unwrap(), 27);
    assert_eq!(dimension(&hw("E7", &[0, 0, 0, 0, 0, 0, 1])).unwrap(), 56);
    assert_eq!(dimension(&hw("F4", &[1, 0, 0, 0])).unwrap(), 26);
    assert_eq!(dimension(&hw("B3", &[0, 0, 1])).unwrap(), 8);
    for a in 0..20 {
        assert_eq!(dimension(&hw("A1", &[a])).unwrap(), a as u128 + 1);
    }
}

#[test]
fn standard_module_has_no_zero_weight() {
    let l = hw("A1", &[1]);
    assert!(!is_weight(&l, &l.datum().from_omega_int(&[0])).unwrap());
    assert!(is_weight(&l, &l.to_weight_vec()).unwrap());
    assert_eq!(multiplicity(&l, &l.to_weight_vec()).unwrap(), 1);
}

#[test]
fn non_integral_weight_has_zero_multiplicity() {
    let l = hw("A1", &[2]);
    let half = l.datum().from_omega(&[crate::rootsys::Q::new(1, 2)]);
    assert_eq!(multiplicity(&l, &half).unwrap(), 0);
}

#[test]
fn support_cap() {
    let l = hw("A3", &[6, 6, 6]);
    assert!(matches!(WeightSystem::with_cap(&l, 5), Err(Error::CapExceeded { .. })));
}

#[test]
fn invalid_highest_weights() {
    let d = datum("A2");
    assert!(matches!(HighestWeight::new(d.clone(), vec![1, -1]), Err(Error::NotDominant(_))));
    assert!(matches!(HighestWeight::new(d, vec![1]), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn dimension_is_monotone_on_rank_two_grid() {
    for t in ["A2", "B2", "G2"] {
        for a in 0..6 {
            for b in 0..6 {
                let base = dimension(&hw(t, &[a, b])).unwrap();
                assert!(dimension(&hw(t, &[a + 1, b])).unwrap() > base);
                assert!(dimension(&hw(t, &[a, b + 1])).unwrap() > base);
            }
        }
    }
}

/// Dominant support oracle: box enumeration of `λ − Σ c_i α_i`.
fn box_support(l: &HighestWeight, bound: i64) -> HashSet<Vec<i64>> {
    let d = l.datum();
    let n = d.rank();
    let mut out = HashSet::new();
    let mut c = vec![0i64; n];
    loop {
        let mut mu = l.coords().to_vec();
        for i in 0..n {
            for j in 0..n {
                mu[j] -= c[i] * d.cartan_matrix()[i][j];
            }
        }
        if mu.iter().all(|&x| x >= 0) {
            out.insert(mu);
        }
        let mut k = 0;
        while k < n {
            c[k] += 1;
            if c[k] <= bound {
                break;
            }
            c[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn support_matches_box_and_weights_are_balanced(
        t in prop::sample::select(vec!["A2", "B2", "G2", "A3", "B3", "C3", "A1xA2"]),
        raw in prop::collection::vec(0i64..=2, 3),
    ) {
        let d = datum(t);
        let l = HighestWeight::new(d.clone(), raw[..d.rank()].to_vec()).unwrap();
        let ws = WeightSystem::new(&l).unwrap();
        let ours: HashSet<Vec<i64>> = ws.dominant_support().iter().map(|e| e.mu.clone()).collect();
        prop_assert_eq!(&ours, &box_support(&l, 40));
        prop_assert_eq!(ws.dim(), dimension(&l).unwrap());
        prop_assert_eq!(ws.dominant_support()[0].mult, 1);

        let all = ws.all_weights(1 << 20).unwrap();
        let mut sum = vec![0i64; d.rank()];
        for (w, m) in &all {
            for (s, x) in sum.iter_mut().zip(w) {
                *s += x * *m as i64;
            }
            prop_assert!(l.depth_of(w).is_some());
            for i in 0..d.rank() {
                let r = reflect(&d, w, i).unwrap();
                prop_assert_eq!(ws.multiplicity(&r).unwrap(), *m);
            }
        }
        prop_assert!(sum.iter().all(|&x| x == 0));
    }
}
