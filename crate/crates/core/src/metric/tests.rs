use super::*;
use crate::repbuild::{build_rep, RepMatrices, REP_DIM_CAP};
use crate::repweights::HighestWeight;
use crate::rootsys::build_root_datum;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn rep(t: &str, c: &[i64]) -> RepMatrices {
    let d = Arc::new(build_root_datum(&t.parse().unwrap()).unwrap());
    build_rep(&HighestWeight::new(d, c.to_vec()).unwrap(), REP_DIM_CAP).unwrap()
}

fn hw(t: &str, c: &[i64]) -> HighestWeight {
    let d = Arc::new(build_root_datum(&t.parse().unwrap()).unwrap());
    HighestWeight::new(d, c.to_vec()).unwrap()
}

fn alg(n: usize, triplets: &[(usize, usize, usize, f64)]) -> MetricLieAlgebra {
    let t: Vec<Triplet> = triplets.iter().map(|&(i, j, k, c)| Triplet { i, j, k, c }).collect();
    MetricLieAlgebra::from_triplets((0..n).map(|i| format!("e{i}")).collect(), vec![Role::Other; n], &t).unwrap()
}

fn heisenberg3() -> MetricLieAlgebra {
    alg(3, &[(0, 1, 2, 1.0)])
}

fn sorted_eigs(m: &DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.re).collect();
    e.sort_by(|a, b| a.total_cmp(b));
    e
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn abelian_algebra_is_flat() {
    let a = alg(4, &[]);
    let r = ricci(&a, &DMatrix::identity(4, 4)).unwrap();
    assert!(r.eigenvalues.iter().all(|&x| x == 0.0));
    assert!(ricci_oracle(&a, &DMatrix::identity(4, 4)).unwrap().amax() == 0.0);
    assert!(!r.negative_definite);
}

#[test]
fn heisenberg_spectrum() {
    let r = ricci(&heisenberg3(), &DMatrix::identity(3, 3)).unwrap();
    assert!(close(&r.eigenvalues, &[-0.5, -0.5, 0.5], 1e-12), "{:?}", r.eigenvalues);
    assert!(close(
        &sorted_eigs(&ricci_oracle(&heisenberg3(), &DMatrix::identity(3, 3)).unwrap()),
        &[-0.5, -0.5, 0.5],
        1e-12
    ));
}

fn compact_algebra(t: &str) -> MetricLieAlgebra {
    let r = rep(t, &vec![0; t[1..].parse::<usize>().unwrap_or(1)]);
    let c = &r.chevalley;
    let n = c.compact_dim();
    let t: Vec<Triplet> =
        c.compact_structure().unwrap().into_iter().map(|(i, j, k, c)| Triplet { i, j, k, c }).collect();
    MetricLieAlgebra::from_triplets(c.compact_labels(), vec![Role::Other; n], &t).unwrap()
}

fn killing(a: &MetricLieAlgebra) -> DMatrix<f64> {
    let ad = a.ad_matrices();
    DMatrix::from_fn(a.dim(), a.dim(), |i, j| (&ad[i] * &ad[j]).trace())
}

#[test]
fn bi_invariant_metric_has_ricci_one_quarter() {
    for t in ["A1", "A2", "B2", "G2"] {
        let a = compact_algebra(t);
        let g = -killing(&a);
        let r = ricci(&a, &g).unwrap();
        assert!(r.eigenvalues.iter().all(|x| (x - 0.25).abs() < 1e-9), "{t} {:?}", r.eigenvalues);
        let o = ricci_oracle(&a, &g).unwrap();
        assert!((o - DMatrix::identity(a.dim(), a.dim()) * 0.25).amax() < 1e-9);
        assert!(r.mean_curvature.iter().all(|x| x.abs() < 1e-12));
    }
}

/// Lie algebras with a random basis: `ℝ ⋉_D ℝ^k`, upper triangular
/// matrices, `su(2) ⊕ ℝ ⋉_D ℝ^k` and Heisenberg sums.
fn random_algebra(rng: &mut ChaCha8Rng) -> MetricLieAlgebra {
    let kind = rng.random_range(0..4);
    let base = match kind {
        0 => {
            let k = rng.random_range(1..=8);
            let mut t = Vec::new();
            for i in 0..k {
                for j in 0..k {
                    t.push((0, i + 1, j + 1, rng.random_range(-1.0..1.0)));
                }
            }
            alg(k + 1, &t)
        }
        1 => {
            // upper triangular 3×3 or 4×4 matrices, basis E_pq with p ≤ q
            let m = rng.random_range(3..=4);
            let basis: Vec<(usize, usize)> = (0..m).flat_map(|p| (p..m).map(move |q| (p, q))).collect();
            let idx = |p: usize, q: usize| basis.iter().position(|&b| b == (p, q)).unwrap();
            let mut t = Vec::new();
            for (a, &(p, q)) in basis.iter().enumerate() {
                for (b, &(r, s)) in basis.iter().enumerate() {
                    if a < b {
                        // [E_pq, E_rs] = δ_qr E_ps − δ_sp E_rq
                        if q == r {
                            t.push((a, b, idx(p, s), 1.0));
                        }
                        if s == p {
                            t.push((a, b, idx(r, q), -1.0));
                        }
                    }
                }
            }
            alg(basis.len(), &t)
        }
        2 => {
            let k = rng.random_range(1..=5);
            let mut t = vec![(0, 1, 2, 2.0), (1, 2, 0, 2.0), (2, 0, 1, 2.0)];
            for i in 0..k {
                for j in 0..k {
                    t.push((3, i + 4, j + 4, rng.random_range(-1.0..1.0)));
                }
            }
            alg(k + 4, &t)
        }
        _ => {
            let m = rng.random_range(1..=3);
            let mut t = Vec::new();
            for s in 0..m {
                t.push((3 * s, 3 * s + 1, 3 * s + 2, 1.0));
            }
            alg(3 * m, &t)
        }
    };
    let n = base.dim();
    let p = loop {
        let p: DMatrix<f64> =
            DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0)) + DMatrix::identity(n, n) * 1.5;
        if p.determinant().abs() > 0.2 {
            break p;
        }
    };
    let ad = base.change_basis(&p).unwrap();
    let mut t = Vec::new();
    for (i, m) in ad.iter().enumerate() {
        for j in i + 1..n {
            for k in 0..n {
                if m[(k, j)] != 0.0 {
                    t.push(Triplet { i, j, k, c: m[(k, j)] });
                }
            }
        }
    }
    MetricLieAlgebra::from_triplets(base.labels().to_vec(), vec![Role::Other; n], &t).unwrap()
}

fn random_metric(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    &a * a.transpose() + DMatrix::identity(n, n) * 0.5
}

#[test]
fn ricci_matches_koszul_oracle_on_random_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..100 {
        let a = random_algebra(&mut rng);
        assert!(a.dim() <= 10);
        assert!(a.jacobi_residual() < 1e-9 * a.scale().max(1.0).powi(2), "case {case}");
        let g = random_metric(&mut rng, a.dim());
        let fast = ricci(&a, &g).unwrap().operator();
        let slow = ricci_oracle(&a, &g).unwrap();
        let scale = slow.amax().max(1e-300);
        assert!((fast - &slow).amax() <= 1e-9 * scale, "case {case}");
    }
}

#[test]
fn scaling_the_metric_scales_the_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_algebra(&mut rng);
    let g = random_metric(&mut rng, a.dim());
    let e1 = ricci(&a, &g).unwrap().eigenvalues;
    let e3 = ricci(&a, &(&g * 3.0)).unwrap().eigenvalues;
    assert!(close(&e1.iter().map(|x| x / 3.0).collect::<Vec<_>>(), &e3, 1e-10));
}

#[test]
fn rejects_indefinite_metric() {
    let g = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, 1.0]));
    assert!(matches!(ricci(&heisenberg3(), &g), Err(crate::Error::InvalidParams(_))));
}

#[test]
fn su2_spin_one_algebra_has_dimension_ten() {
    let r = rep("A1", &[2]);
    let l = build_l(&[&r], &[1.0]).unwrap();
    assert_eq!(l.algebra.dim(), 10);
    let a = &l.algebra;
    let z = 0;
    for u in a.indices(Role::is_compact) {
        assert!(a.bracket(z, u).is_empty());
    }
    for v in l.module_indices(0) {
        assert_eq!(a.bracket(z, v), &[(v, 1.0)]);
        for w in l.module_indices(0) {
            assert!(a.bracket(v, w).is_empty());
        }
    }
    assert!(a.jacobi_residual() < 1e-12);
}

#[test]
fn build_l_rejects_bad_scalars_and_mixed_types() {
    let r = rep("A1", &[1]);
    assert!(build_l(&[&r], &[0.0]).is_err());
    assert!(build_l(&[&r], &[1.0, 2.0]).is_err());
    assert!(build_l(&[&r, &rep("A2", &[1, 0])], &[1.0, 1.0]).is_err());
}

#[test]
fn mean_curvature_is_a_multiple_of_z() {
    let (r1, r2) = (rep("A1", &[1]), rep("A1", &[2]));
    let l = build_l(&[&r1, &r2], &[0.5, 3.0]).unwrap();
    let fam = l.family(0, &[vec![1]], RootScalars::SplitXY).unwrap();
    let p = fam.params((0..fam.len()).map(|k| 1.0 + k as f64 / 3.0).collect());
    let r = fam.ricci(&p).unwrap();
    let c = 0.5 * 4.0 + 3.0 * 6.0;
    let zscale = p.scalars[0];
    assert!((r.mean_curvature[0] - c / zscale).abs() < 1e-12);
    assert!(r.mean_curvature[1..].iter().all(|x| x.abs() < 1e-12));
}

#[test]
fn family_ricci_agrees_with_general_ricci() {
    let r = rep("A2", &[1, 0]);
    let l = build_l(&[&r], &[1.0]).unwrap();
    let fam = l.family(0, &[vec![1, 0]], RootScalars::PerRoot).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let p = fam.params((0..fam.len()).map(|_| rng.random_range(0.2..5.0)).collect());
    let g = fam.metric(&p).unwrap();
    let a = fam.ricci(&p).unwrap();
    let b = ricci(&l.algebra, &g).unwrap();
    assert!(close(&a.eigenvalues, &b.eigenvalues, 1e-10));
    let o = ricci_oracle(&l.algebra, &g).unwrap();
    assert!((a.operator() - o).amax() < 1e-9);
}

#[test]
fn params_are_validated() {
    let l = build_l(&[&rep("A1", &[1])], &[1.0]).unwrap();
    let fam = l.family(0, &[vec![1]], RootScalars::SplitXY).unwrap();
    let mut p = fam.unit_params();
    p.scalars[2] = -1.0;
    assert!(fam.ricci(&p).is_err());
    p.scalars.pop();
    assert!(fam.metric(&p).is_err());
}

#[test]
fn rescaling_z_is_an_isometry() {
    // (l_c, a) ≅ (l_1, a/c²) through Z ↦ c Z.
    let r = rep("A1", &[2]);
    let l1 = build_l(&[&r], &[1.0]).unwrap();
    let fam1 = l1.family(0, &[vec![2]], RootScalars::SplitXY).unwrap();
    for c in [0.5, 2.0] {
        let lc = build_l(&[&r], &[c]).unwrap();
        let famc = lc.family(0, &[vec![2]], RootScalars::SplitXY).unwrap();
        let mut p = famc.params(vec![1.3, 0.7, 2.0, 1.1, 0.4, 3.0]);
        let ec = famc.ricci(&p).unwrap().eigenvalues;
        p.scalars[0] /= c * c;
        let e1 = fam1.ricci(&p).unwrap().eigenvalues;
        assert!(close(&ec, &e1, 1e-9), "c={c}");
    }
}

#[test]
fn su2_family_admits_negative_ricci() {
    for a in 1..=3 {
        let r = rep("A1", &[a]);
        let l = build_l(&[&r], &[1.0]).unwrap();
        let fam = l.family(0, &[vec![a]], RootScalars::SplitXY).unwrap();
        let cfg = SearchConfig::default();
        let SearchOutcome::Found(c) = find_negative_ricci(&fam, &cfg).unwrap() else { panic!("a={a}") };
        assert!(c.report.negative_definite);
        assert!(c.report.max_eigenvalue() < -cfg.accept_rel * c.report.spectral_radius());
        // reproducible from the seed
        let SearchOutcome::Found(d) = find_negative_ricci(&fam, &cfg).unwrap() else { panic!() };
        assert_eq!(c.params, d.params);
        // and confirmed by the oracle
        let o = ricci_oracle(&l.algebra, &fam.metric(&c.params).unwrap()).unwrap();
        assert!(sorted_eigs(&o).last().unwrap() < &0.0);
    }
}

#[test]
fn abelian_search_finds_nothing() {
    let a = alg(3, &[]);
    let fam = MetricFamily::new(&a, vec![("all".into(), vec![0, 1, 2])], DMatrix::identity(3, 3)).unwrap();
    assert!(matches!(find_negative_ricci(&fam, &SearchConfig::default()).unwrap(), SearchOutcome::NotFound(_)));
}

#[test]
fn tiny_budget_is_reported() {
    let l = build_l(&[&rep("A1", &[2])], &[1.0]).unwrap();
    let fam = l.family(0, &[vec![2]], RootScalars::SplitXY).unwrap();
    let cfg = SearchConfig { budget: 8, restarts: 1, ..SearchConfig::default() };
    assert!(matches!(find_negative_ricci(&fam, &cfg), Err(crate::Error::BudgetExceeded(8))));
}

#[test]
fn family_rejects_coupled_base() {
    let a = heisenberg3();
    let mut base = DMatrix::identity(3, 3);
    base[(0, 1)] = 0.5;
    base[(1, 0)] = 0.5;
    let groups = vec![("a".to_string(), vec![0]), ("b".to_string(), vec![1, 2])];
    assert!(MetricFamily::new(&a, groups, base).is_err());
}

fn showcase() -> MetricLieAlgebra {
    build_general(&heisenberg_showcase().unwrap()).unwrap()
}

#[test]
fn heisenberg_showcase_is_valid() {
    let a = showcase();
    assert_eq!(a.dim(), 1 + 3 + 5);
    assert!(a.jacobi_residual() < 1e-12);
}

#[test]
fn build_general_checks_hypotheses() {
    // h3 with Z = diag(1,1,2) and su(2) acting trivially
    let mut data = heisenberg_showcase().unwrap();
    data.n_labels = vec!["x".into(), "y".into(), "z".into()];
    data.n_consts = vec![Triplet { i: 0, j: 1, k: 2, c: 1.0 }];
    data.u_action = vec![DMatrix::zeros(3, 3); 3];
    data.z_action = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 2.0]));
    data.n_blocks = vec![];
    assert!(build_general(&data).is_ok());
    // Z = Id on non-abelian n is not a derivation
    let mut bad = data.clone();
    bad.z_action = DMatrix::identity(3, 3);
    assert!(matches!(build_general(&bad), Err(crate::Error::InvalidAlgebra(_))));
    // n = su(2) is not nilpotent
    let mut bad = data.clone();
    bad.n_consts = vec![
        Triplet { i: 0, j: 1, k: 2, c: 1.0 },
        Triplet { i: 1, j: 2, k: 0, c: 1.0 },
        Triplet { i: 2, j: 0, k: 1, c: 1.0 },
    ];
    bad.z_action = DMatrix::zeros(3, 3);
    let e = build_general(&bad).unwrap_err();
    assert!(e.to_string().contains("nilpotent"), "{e}");
    // u must commute with Z
    let mut bad = heisenberg_showcase().unwrap();
    bad.z_action[(4, 4)] = 2.0;
    bad.z_action[(0, 0)] = 3.0;
    assert!(build_general(&bad).is_err());
}

#[test]
fn lower_central_series_of_heisenberg() {
    assert_eq!(lower_central_series(&heisenberg3().ad_matrices()), vec![3, 1, 0]);
    assert_eq!(lower_central_series(&alg(2, &[(0, 1, 1, 1.0)]).ad_matrices()), vec![2, 1, 1]);
}

#[test]
fn degeneration_scales_only_radical_brackets() {
    let a = showcase();
    assert_eq!(degenerate(&a, 1.0).unwrap(), a);
    assert!(degenerate(&a, 0.0).is_err() && degenerate(&a, -1.0).is_err());
    let d = degenerate(&a, 1e3).unwrap();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let both = a.roles()[i].radical_block().is_some() && a.roles()[j].radical_block().is_some();
            let s = if both { 1e-3 } else { 1.0 };
            let want: Vec<(usize, f64)> = a.bracket(i, j).iter().map(|&(k, c)| (k, c * s)).collect();
            assert_eq!(d.bracket(i, j), want.as_slice());
        }
    }
    for t in [1.0, 10.0, 100.0, 1000.0] {
        assert!(degenerate(&a, t).unwrap().jacobi_residual() < 1e-12);
    }
    let l = build_l(&[&rep("A1", &[1])], &[1.0]).unwrap();
    assert_eq!(degenerate(&l.algebra, 50.0).unwrap(), l.algebra);
}

#[test]
fn degeneration_converges_to_the_limit() {
    let a = showcase();
    let lim = degenerate_limit(&a);
    let g = DMatrix::from_diagonal(&DVector::from_fn(a.dim(), |i, _| 1.0 + 0.1 * i as f64));
    let target = ricci(&lim, &g).unwrap().eigenvalues;
    let mut prev = f64::INFINITY;
    for t in [1.0, 10.0, 100.0, 1000.0] {
        let e = ricci(&degenerate(&a, t).unwrap(), &g).unwrap().eigenvalues;
        let err = e.iter().zip(&target).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(err < prev);
        prev = err;
    }
    // tr ad Z on the limit: 4·1 + 1·2
    let ad = lim.ad_matrices();
    assert!((ad[0].trace() - 6.0).abs() < 1e-12);
}

#[test]
fn nilradical_report_for_abelian_module() {
    let l = build_l(&[&rep("A1", &[2])], &[1.0]).unwrap();
    let report = verify_nilradical_hypotheses(&l.algebra, &[l.module_indices(0)], &[Some(hw("A1", &[2]))]).unwrap();
    let b = &report.blocks[0];
    assert_eq!(b.z_eigenvalue, Some(1.0));
    // a real-type module realifies to two copies of its real form
    assert!(!b.irreducible && b.character_matches == Some(true));
    assert_eq!(b.six_conditions_pass, Some(true));
    assert!(report.hypotheses_hold);
    // the wrong highest weight is detected by its character
    let bad = verify_nilradical_hypotheses(&l.algebra, &[l.module_indices(0)], &[Some(hw("A1", &[1]))]).unwrap();
    assert_eq!(bad.blocks[0].character_matches, Some(false));
    assert!(!bad.hypotheses_hold);
}

#[test]
fn nilradical_report_for_showcase() {
    let a = showcase();
    let v: Vec<usize> = (4..8).collect();
    let report =
        verify_nilradical_hypotheses(&a, &[v.clone(), vec![8]], &[Some(hw("A1", &[1])), Some(hw("A1", &[0]))]).unwrap();
    assert_eq!(report.blocks[0].z_eigenvalue, Some(1.0));
    assert_eq!(report.blocks[1].z_eigenvalue, Some(2.0));
    assert!(report.blocks.iter().all(|b| b.irreducible));
    assert_eq!(report.blocks[0].certified_by, vec!["chamber"]);
    assert!(report.hypotheses_hold);
    // one block for all of n: Z is not a multiple of the identity and the
    // block is reducible
    let whole = verify_nilradical_hypotheses(&a, &[(4..9).collect()], &[]).unwrap();
    assert_eq!(whole.blocks[0].z_eigenvalue, None);
    assert!(!whole.blocks[0].irreducible && !whole.hypotheses_hold);
    // C² = ℍ is irreducible as a real su(2)-module, C³ is not
    let l = build_l(&[&rep("A1", &[1]), &rep("A1", &[2])], &[1.0, 1.0]).unwrap();
    let r = verify_nilradical_hypotheses(&l.algebra, &[l.module_indices(0), l.module_indices(1)], &[]).unwrap();
    assert!(r.blocks[0].irreducible && !r.blocks[1].irreducible);
    // blocks must be invariant
    assert!(verify_nilradical_hypotheses(&a, &[vec![4, 5], vec![6, 7, 8]], &[]).is_err());
}

#[test]
fn zero_eigenvalue_block_fails_positivity() {
    let mut data = heisenberg_showcase().unwrap();
    data.n_consts.clear();
    data.z_action[(4, 4)] = 0.0;
    let a = build_general(&data).unwrap();
    let report = verify_nilradical_hypotheses(&a, &[(4..8).collect(), vec![8]], &[]).unwrap();
    assert_eq!(report.blocks[1].z_eigenvalue, Some(0.0));
    assert!(!report.blocks[1].z_positive && !report.hypotheses_hold);
}

#[test]
fn structure_file_round_trip_and_validation() {
    let a = showcase();
    let s = serde_json::to_string(&a.to_json()).unwrap();
    let b = MetricLieAlgebra::from_json_str(&s, 1e-9).unwrap();
    assert_eq!(a, b);
    let bad_jacobi =
        r#"{"labels":["a","b","c"],"constants":[{"i":0,"j":1,"k":2,"c":1.0},{"i":1,"j":2,"k":1,"c":1.0}]}"#;
    assert!(matches!(MetricLieAlgebra::from_json_str(bad_jacobi, 1e-9), Err(crate::Error::InvalidAlgebra(_))));
    let bad_anti = r#"{"labels":["a","b","c"],"constants":[{"i":0,"j":1,"k":2,"c":1.0},{"i":1,"j":0,"k":2,"c":1.0}]}"#;
    assert!(matches!(MetricLieAlgebra::from_json_str(bad_anti, 1e-9), Err(crate::Error::InvalidAlgebra(_))));
    let ok_anti = r#"{"labels":["a","b","c"],"constants":[{"i":0,"j":1,"k":2,"c":1.0},{"i":1,"j":0,"k":2,"c":-1.0}]}"#;
    assert_eq!(MetricLieAlgebra::from_json_str(ok_anti, 1e-9).unwrap(), heisenberg3_labels());
    let bad_index = r#"{"labels":["a"],"constants":[{"i":0,"j":1,"k":0,"c":1.0}]}"#;
    assert!(matches!(MetricLieAlgebra::from_json_str(bad_index, 1e-9), Err(crate::Error::Format(_))));
    assert!(MetricLieAlgebra::from_json_str("{", 1e-9).is_err());
    assert!(MetricLieAlgebra::from_json_str(r#"{"labels":[],"constants":[],"extra":1}"#, 1e-9).is_err());
}

fn heisenberg3_labels() -> MetricLieAlgebra {
    let t = [Triplet { i: 0, j: 1, k: 2, c: 1.0 }];
    MetricLieAlgebra::from_triplets(vec!["a".into(), "b".into(), "c".into()], vec![Role::Other; 3], &t).unwrap()
}
