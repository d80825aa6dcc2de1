mod common;

use common::{assemble_google, reference_eigenvalues};
use googlerank::io::{random_instance, InstanceRng, RandomInstanceSpec};
use googlerank::spectral::{
    eigenvalues_dense, match_multisets, orthogonal_basis, similarity_reduce, singular_residual,
    verify_theorem, ComplexSpectrum, TheoremTolerances,
};
use googlerank::{
    build_transition, DenseMatrix, DirectedGraph, GoogleOperator, PatchPolicy,
    PersonalizationVector,
};
use num_complex::Complex64;

fn dense_random(n: usize, seed: u64) -> (DenseMatrix, Vec<f64>) {
    let (p, v) = random_instance(&RandomInstanceSpec::dense(n, seed)).unwrap();
    (p.to_dense(None).unwrap(), v.as_slice().to_vec())
}

#[test]
fn householder_basis_is_orthogonal() {
    for n in 1..=200 {
        let u = orthogonal_basis(n).unwrap();
        assert!(u.orthogonality_defect() <= n as f64 * 1e-14, "n = {n}");
        let e_hat = 1.0 / (n as f64).sqrt();
        let col_err = u
            .column(0)
            .iter()
            .fold(0.0f64, |m, &x| m.max((x - e_hat).abs()));
        assert!(col_err <= 1e-14, "n = {n}: {col_err:e}");
    }
}

#[test]
fn two_by_two_reduction_matches_hand_product() {
    let p = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
    let u = orthogonal_basis(2).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // UᵀPU with U = [[r, r], [r, −r]] evaluated by hand: diag(1, −1).
    let hand = [
        [r * r + r * r, r * r - r * r],
        [r * r - r * r, -(r * r) - r * r],
    ];
    let rep = similarity_reduce(&p, &u).unwrap();
    assert!((rep.top_left - hand[0][0]).abs() < 1e-15);
    assert!((rep.top_right_norm - hand[0][1].abs()).abs() < 1e-15);
    assert!((rep.w[0] - hand[1][0]).abs() < 1e-15);
    assert!((rep.t[(0, 0)] - hand[1][1]).abs() < 1e-15);
}

#[test]
fn stochastic_top_row_on_random_inputs() {
    for seed in 0..50 {
        let n = 2 + (seed as usize % 30);
        let (p, v) = dense_random(n, seed);
        let u = orthogonal_basis(n).unwrap();
        for m in [p.clone(), assemble_google(&p, 0.7, &v)] {
            let rep = similarity_reduce(&m, &u).unwrap();
            assert!((rep.top_left - 1.0).abs() <= 1e-12);
            assert!(rep.top_right_norm <= 1e-12);
            assert_eq!(rep.w.len(), n - 1);
            assert_eq!((rep.t.rows(), rep.t.cols()), (n - 1, n - 1));
        }
    }
    let (p, _) = dense_random(6, 6);
    let rep = similarity_reduce(&p, &orthogonal_basis(6).unwrap()).unwrap();
    assert!((rep.top_left - 1.0).abs() <= 1e-12 && rep.top_right_norm <= 1e-12);
}

#[test]
fn block_identity_holds() {
    let mut rng = InstanceRng::new(400);
    for _ in 0..40 {
        let n = 1 + (rng.next_u64() % 50) as usize;
        let alpha = 0.01 + 0.98 * rng.uniform();
        let (p, v) = dense_random(n, rng.next_u64());
        let a = assemble_google(&p, alpha, &v);
        let u = orthogonal_basis(n).unwrap();
        let tp = similarity_reduce(&p, &u).unwrap().t;
        let ta = similarity_reduce(&a, &u).unwrap().t;
        let defect = ta.sub(&tp.scaled(alpha)).unwrap().frobenius_norm();
        assert!(defect <= 1e-10 * (1.0 + tp.frobenius_norm()));
    }
}

#[test]
fn reduced_block_carries_remaining_spectrum() {
    for seed in 0..20 {
        let n = 2 + seed as usize;
        let (p, _) = dense_random(n, 900 + seed);
        let t = similarity_reduce(&p, &orthogonal_basis(n).unwrap())
            .unwrap()
            .t;
        let mut with_one = eigenvalues_dense(&t).unwrap().values().to_vec();
        with_one.push(Complex64::new(1.0, 0.0));
        let full = eigenvalues_dense(&p).unwrap();
        let d = match_multisets(&ComplexSpectrum::new(with_one), &full).unwrap();
        assert!(d <= 1e-8, "seed {seed}: {d}");
    }
}

#[test]
fn random_stochastic_spectrum_properties() {
    for seed in 0..30 {
        let (p, _) = dense_random(8, seed);
        let s = eigenvalues_dense(&p).unwrap();
        assert_eq!(s.len(), 8);
        let one = s.nearest(Complex64::new(1.0, 0.0)).unwrap();
        assert!((s.values()[one] - Complex64::new(1.0, 0.0)).norm() <= 1e-8);
        assert!(s.moduli_desc()[0] <= 1.0 + 1e-8);
        assert!(s.conjugation_defect() <= 1e-8);
        let scale = p.frobenius_norm();
        for &lambda in s.values() {
            assert!(singular_residual(&p, lambda).unwrap() <= 1e-6 * scale);
        }
    }
}

#[test]
fn agrees_with_reference_eigensolver() {
    let mut rng = InstanceRng::new(31337);
    for trial in 0..40 {
        let n = 1 + (rng.next_u64() % 40) as usize;
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = rng.uniform() * 2.0 - 1.0;
            }
        }
        let ours = eigenvalues_dense(&m).unwrap();
        let reference = ComplexSpectrum::new(reference_eigenvalues(&m));
        let d = match_multisets(&ours, &reference).unwrap();
        assert!(
            d <= 1e-8 * (1.0 + m.frobenius_norm()),
            "trial {trial}, n = {n}: {d}"
        );
    }
}

#[test]
fn structured_spectra() {
    // Companion matrix of (λ − 1)(λ − 2)(λ − 3) = λ³ − 6λ² + 11λ − 6.
    let c = DenseMatrix::from_rows(&[
        vec![6.0, -11.0, 6.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
    ])
    .unwrap();
    let s = eigenvalues_dense(&c).unwrap();
    let expected = ComplexSpectrum::from_pairs(&[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
    assert!(match_multisets(&s, &expected).unwrap() <= 1e-9);

    // Rotation blocks give complex pairs.
    let (cs, sn) = (0.3f64.cos(), 0.3f64.sin());
    let r = DenseMatrix::from_rows(&[
        vec![cs, -sn, 0.0, 0.0],
        vec![sn, cs, 0.0, 0.0],
        vec![0.0, 0.0, 0.5, 0.0],
        vec![0.0, 0.0, 0.0, -0.25],
    ])
    .unwrap();
    let u = orthogonal_basis(4).unwrap();
    let mixed = u.transpose().matmul(&r).unwrap().matmul(&u).unwrap();
    let s = eigenvalues_dense(&mixed).unwrap();
    let expected = ComplexSpectrum::from_pairs(&[(cs, sn), (cs, -sn), (0.5, 0.0), (-0.25, 0.0)]);
    assert!(match_multisets(&s, &expected).unwrap() <= 1e-12);
}

#[test]
fn three_cycle_google_spectrum() {
    let p = build_transition(&DirectedGraph::cycle(3).unwrap(), PatchPolicy::Uniform);
    let op = GoogleOperator::with_uniform(p, 0.85).unwrap();
    let a = op.materialize_dense().unwrap();
    let s = eigenvalues_dense(&a).unwrap();
    let h = 3f64.sqrt() / 2.0;
    let expected = ComplexSpectrum::from_pairs(&[
        (1.0, 0.0),
        (-0.5 * 0.85, h * 0.85),
        (-0.5 * 0.85, -h * 0.85),
    ]);
    assert!(match_multisets(&s, &expected).unwrap() <= 1e-8);
}

#[test]
fn theorem_on_random_ten_by_ten() {
    let (p, v) = random_instance(&RandomInstanceSpec::dense(10, 17)).unwrap();
    let r = verify_theorem(&p, 0.3, &v, &TheoremTolerances::default()).unwrap();
    assert!(r.passed, "{r:?}");
    assert!(r.block_defect <= 1e-10);
    assert!(r.eig_multiset_defect.unwrap() <= 1e-8);
    assert!(r.rank_one_defect <= 1e-12);
    assert!(r.w1_defect <= 1e-12);
}

#[test]
fn theorem_with_personalization_patch_and_dangling() {
    let g = DirectedGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
    let v = PersonalizationVector::new(vec![0.3, 0.0, 0.2, 0.1, 0.4, 0.0]).unwrap();
    for policy in [PatchPolicy::Uniform, PatchPolicy::Personalization] {
        let p = build_transition(&g, policy);
        let r = verify_theorem(&p, 0.85, &v, &TheoremTolerances::default()).unwrap();
        assert!(r.passed, "{policy:?}: {r:?}");
    }
}
