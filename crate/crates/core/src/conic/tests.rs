// SPDX-License-Identifier: Apache-2.0

use super::*;
use crate::linalg::jacobi_eigen;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn one_block(m: Mat) -> BlockSymMatrix {
    BlockSymMatrix::new(vec![], vec![m]).unwrap()
}

fn random_sym(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let mut m = Mat::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = rng.gen_range(-1.0..1.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn random_gram(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> Mat {
    let g: Vec<Vec<f64>> = (0..rank).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let mut m = Mat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = (0..rank).map(|k| g[k][i] * g[k][j]).sum();
        }
    }
    m
}

#[test]
fn cone_dimension_counts_triangles() {
    let c = ConeSpec::new(3, vec![2, 4]).unwrap();
    assert_eq!(c.total_dim(), 3 + 3 + 10);
    assert_eq!(c.barrier_degree(), 9);
    assert!(ConeSpec::new(1, vec![2, 0]).is_err());
}

#[test]
fn block_matrix_rejects_asymmetry() {
    let m = Mat::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
    assert!(matches!(BlockSymMatrix::new(vec![], vec![m]), Err(Error::NotSymmetric(_))));
}

#[test]
fn trace_inner_identity_and_zero() {
    let i3 = one_block(Mat::identity(3));
    assert_eq!(trace_inner(&i3, &i3).unwrap(), 3.0);
    let z = one_block(Mat::zeros(3));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let y = one_block(random_sym(&mut rng, 3));
    assert_eq!(trace_inner(&z, &y).unwrap(), 0.0);
}

#[test]
fn trace_inner_matches_double_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random_sym(&mut rng, 2);
    let b = random_sym(&mut rng, 2);
    let mut oracle = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            oracle += a[(i, j)] * b[(i, j)];
        }
    }
    let got = trace_inner(&one_block(a), &one_block(b)).unwrap();
    assert!((got - oracle).abs() <= 1e-12);
}

#[test]
fn trace_inner_shape_mismatch() {
    let a = one_block(Mat::identity(2));
    let b = one_block(Mat::identity(3));
    assert!(matches!(trace_inner(&a, &b), Err(Error::ShapeMismatch(_))));
}

proptest! {
    #[test]
    fn trace_inner_is_exactly_symmetric(seed in any::<u64>(), n in 1usize..6, k in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let orth_a: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let orth_b: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a = BlockSymMatrix::new(orth_a, vec![random_sym(&mut rng, n)]).unwrap();
        let b = BlockSymMatrix::new(orth_b, vec![random_sym(&mut rng, n)]).unwrap();
        prop_assert_eq!(trace_inner(&a, &b).unwrap().to_bits(), trace_inner(&b, &a).unwrap().to_bits());
    }
}

fn lp_one_var() -> ConicProblem {
    // max c x  s.t.  a x = b, x ≥ 0
    let cone = ConeSpec::orthant(1);
    let c = BlockSymMatrix::new(vec![2.0], vec![]).unwrap();
    let mut a = SparseBlockSym::new(0);
    a.add_orthant(0, 1.0);
    ConicProblem::new(cone, c, vec![Constraint { a, b: 3.0 }]).unwrap()
}

#[test]
fn dualize_single_orthant_constraint() {
    let p = lp_one_var();
    let d = dualize(&p);
    assert_eq!(d.num_vars(), 1);
    assert_eq!(d.objective(), vec![3.0]);
    // slack y·a − c
    let s = d.slack(&[5.0]).unwrap();
    assert_eq!(s.orthant(), &[3.0]);
    assert!(d.is_feasible(&[2.0], 0.0).unwrap());
    assert!(!d.is_feasible(&[1.0], 0.0).unwrap());
    assert!(d.slack(&[1.0, 2.0]).is_err());
}

fn diagonal_sdp() -> (ConicProblem, ConicProblem) {
    // SDP on one 2×2 block whose data are all diagonal, and the LP on its diagonal.
    let cone = ConeSpec::new(0, vec![2]).unwrap();
    let c = one_block(Mat::from_diag(&[1.0, 3.0]));
    let mut a0 = SparseBlockSym::new(1);
    a0.add_block(0, 0, 0, 1.0);
    a0.add_block(0, 1, 1, 2.0);
    let sdp = ConicProblem::new(cone, c, vec![Constraint { a: a0, b: 4.0 }]).unwrap();

    let lp_cone = ConeSpec::orthant(2);
    let lc = BlockSymMatrix::new(vec![1.0, 3.0], vec![]).unwrap();
    let mut la = SparseBlockSym::new(0);
    la.add_orthant(0, 1.0);
    la.add_orthant(1, 2.0);
    let lp = ConicProblem::new(lp_cone, lc, vec![Constraint { a: la, b: 4.0 }]).unwrap();
    (sdp, lp)
}

#[test]
fn diagonal_sdp_dual_is_lp_dual() {
    let (sdp, lp) = diagonal_sdp();
    let (ds, dl) = (dualize(&sdp), dualize(&lp));
    assert_eq!(ds.objective(), dl.objective());
    for y in [0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
        let s = ds.slack(&[y]).unwrap();
        let l = dl.slack(&[y]).unwrap();
        let blk = s.block(0);
        assert_eq!(blk[(0, 1)], 0.0);
        assert_eq!([blk[(0, 0)], blk[(1, 1)]], [l.orthant()[0], l.orthant()[1]]);
        assert_eq!(ds.is_feasible(&[y], 0.0).unwrap(), dl.is_feasible(&[y], 0.0).unwrap());
    }
}

#[test]
fn weak_duality_on_feasible_pairs() {
    let (sdp, _) = diagonal_sdp();
    let d = dualize(&sdp);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        // primal feasible: X ⪰ 0 with X11 + 2 X22 = 4
        let t: f64 = rng.gen_range(0.0..1.0);
        let (x11, x22) = (4.0 * t, 2.0 * (1.0 - t));
        let off: f64 = rng.gen_range(-1.0..1.0) * (x11 * x22).sqrt();
        let x = one_block(Mat::from_rows(&[vec![x11, off], vec![off, x22]]).unwrap());
        let y: f64 = rng.gen_range(1.5..10.0);
        assert!(d.is_feasible(&[y], 0.0).unwrap());
        assert!(d.value(&[y]) - sdp.primal_objective(&x) >= -1e-12);
    }
}

#[test]
fn duality_report_on_trivial_sdp() {
    // max { x : x ⪰ 0 (1×1), x = 1 }
    let cone = ConeSpec::new(0, vec![1]).unwrap();
    let c = one_block(Mat::identity(1));
    let mut a = SparseBlockSym::new(1);
    a.add_block(0, 0, 0, 1.0);
    let p = ConicProblem::new(cone, c, vec![Constraint { a, b: 1.0 }]).unwrap();
    let sol = Solution {
        x: one_block(Mat::identity(1)),
        y: vec![1.0],
        status: SolveStatus::Optimal,
        primal_value: 1.0,
        dual_value: 1.0,
        gap: 0.0,
    };
    let r = duality_report(&p, &sol).unwrap();
    assert!(r.gap.abs() <= 1e-9);
    assert!(r.compl_slackness.abs() <= 1e-9);
    assert!(r.slack_min_eig.abs() <= 1e-9);
}

#[test]
fn complementary_slackness_grows_with_perturbation() {
    let p = lp_one_var();
    let x = BlockSymMatrix::new(vec![3.0], vec![]).unwrap();
    let base = Solution {
        x,
        y: vec![2.0],
        status: SolveStatus::Optimal,
        primal_value: 6.0,
        dual_value: 6.0,
        gap: 0.0,
    };
    assert_eq!(duality_report(&p, &base).unwrap().compl_slackness, 0.0);
    let mut prev = 0.0;
    for eps in [1e-6, 1e-4, 1e-2, 1.0] {
        let mut s = base.clone();
        s.y[0] += eps;
        let cs = duality_report(&p, &s).unwrap().compl_slackness;
        // ⟨x, y·a − c⟩ = 3·eps exactly for this instance
        assert!((cs - 3.0 * eps).abs() <= 1e-12 * (1.0 + eps));
        assert!(cs > prev);
        prev = cs;
    }
}

#[test]
fn psd_min_eig_examples() {
    assert!((psd_min_eig(&Mat::identity(4)).unwrap() - 1.0).abs() < 1e-14);
    assert!((psd_min_eig(&Mat::from_diag(&[2.0, -3.0])).unwrap() + 3.0).abs() < 1e-14);
    assert!(matches!(psd_min_eig_rows(&[vec![1.0, 2.0]]), Err(Error::NotSquare)));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..12 {
        let g = random_gram(&mut rng, n, n);
        assert!(psd_min_eig(&g).unwrap() >= -1e-10);
        let low = random_gram(&mut rng, n, 1);
        assert!(is_psd(&low).unwrap());
    }
}

#[test]
fn realify_real_diagonal() {
    let h = HermitianMatrix::new(Mat::from_diag(&[1.0, 2.0]), Mat::zeros(2)).unwrap();
    let r = realify_hermitian(&h);
    assert_eq!(r, Mat::from_diag(&[1.0, 2.0, 1.0, 2.0]));
    assert!((psd_min_eig(&r).unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn realify_rank_one_example() {
    let im = Mat::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
    let h = HermitianMatrix::new(Mat::identity(2), im).unwrap();
    let r = realify_hermitian(&h);
    assert!(r.is_symmetric(0.0));
    let ev = jacobi_eigen(&r, false).values;
    for (got, want) in ev.iter().zip([0.0, 0.0, 2.0, 2.0]) {
        assert!((got - want).abs() < 1e-12, "{ev:?}");
    }
}

#[test]
fn hermitian_invariants_enforced() {
    let bad_im = Mat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
    assert!(HermitianMatrix::new(Mat::identity(2), bad_im).is_err());
    let bad_re = Mat::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
    assert!(HermitianMatrix::new(bad_re, Mat::zeros(2)).is_err());
}

/// Closed-form eigenvalues of [[a, b],[b̄, d]] with b = br + i·bi.
fn hermitian_2x2_eigs(a: f64, d: f64, br: f64, bi: f64) -> [f64; 2] {
    let m = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + br * br + bi * bi).sqrt();
    [m - r, m + r]
}

#[test]
fn realify_doubles_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let (a, d, br, bi): (f64, f64, f64, f64) =
            (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let re = Mat::from_rows(&[vec![a, br], vec![br, d]]).unwrap();
        let im = Mat::from_rows(&[vec![0.0, bi], vec![-bi, 0.0]]).unwrap();
        let h = HermitianMatrix::new(re, im).unwrap();
        let ev = jacobi_eigen(&realify_hermitian(&h), false).values;
        let [l0, l1] = hermitian_2x2_eigs(a, d, br, bi);
        let want = [l0, l0, l1, l1];
        for (g, w) in ev.iter().zip(want) {
            assert!((g - w).abs() < 1e-12);
        }
        assert_eq!(psd_min_eig(&realify_hermitian(&h)).unwrap() >= -1e-10, l0 >= -1e-10);
    }
}

#[test]
fn realify_trace_moments_match_larger_hermitian() {
    // Tr(X'^k) = 2·Re Tr(H^k) for k = 1, 2, 3, computed with an independent
    // complex multiplication routine.
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = 4;
    let mut re = random_sym(&mut rng, n);
    let mut im = Mat::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.gen_range(-1.0..1.0);
            im[(i, j)] = v;
            im[(j, i)] = -v;
        }
    }
    re.symmetrize();
    let h = HermitianMatrix::new(re.clone(), im.clone()).unwrap();
    let x = realify_hermitian(&h);
    let cmul = |(ar, ai): (&Mat, &Mat), (br, bi): (&Mat, &Mat)| {
        let mut rr = ar.matmul(br);
        rr.axpy(-1.0, &ai.matmul(bi));
        let mut ii = ar.matmul(bi);
        ii.axpy(1.0, &ai.matmul(br));
        (rr, ii)
    };
    let (h2r, h2i) = cmul((&re, &im), (&re, &im));
    let (h3r, _) = cmul((&h2r, &h2i), (&re, &im));
    let x2 = x.matmul(&x);
    let x3 = x2.matmul(&x);
    assert!((x.trace() - 2.0 * re.trace()).abs() < 1e-12);
    assert!((x2.trace() - 2.0 * h2r.trace()).abs() < 1e-12);
    assert!((x3.trace() - 2.0 * h3r.trace()).abs() < 1e-12);
}

fn cyclic(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn transposition(n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(0, 1);
    p
}

#[test]
fn gamma_average_keeps_invariant_matrix() {
    let x = Mat::from_rows(&[vec![2.0, 1.0, 1.0], vec![1.0, 2.0, 1.0], vec![1.0, 1.0, 2.0]]).unwrap();
    let avg = gamma_average(&x, &[cyclic(3), transposition(3)]).unwrap();
    assert_eq!(avg, x);
}

#[test]
fn gamma_average_symmetric_group_two_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let n = 5;
    let x = random_sym(&mut rng, n);
    let avg = gamma_average(&x, &[cyclic(n), transposition(n)]).unwrap();
    let diag_mean = x.trace() / n as f64;
    let off_mean = (x.as_slice().iter().sum::<f64>() - x.trace()) / (n * n - n) as f64;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { diag_mean } else { off_mean };
            assert!((avg[(i, j)] - want).abs() < 1e-12);
        }
    }
}

#[test]
fn gamma_average_cap() {
    let x = Mat::identity(6);
    let err = gamma_average_with_cap(&x, &[cyclic(6), transposition(6)], 100).unwrap_err();
    assert_eq!(err, Error::GroupTooLarge { cap: 100 });
    assert_eq!(group_closure(6, &[cyclic(6), transposition(6)], 720).unwrap().len(), 720);
    assert!(gamma_average(&x, &[vec![0, 0, 1, 2, 3, 4]]).is_err());
}

#[test]
fn gamma_average_preserves_psd_and_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let gens = vec![cyclic(6), vec![1, 0, 3, 2, 5, 4]];
    for _ in 0..10 {
        let g = random_gram(&mut rng, 6, 2);
        let once = gamma_average(&g, &gens).unwrap();
        assert!(psd_min_eig(&once).unwrap() >= -1e-10);
        let twice = gamma_average(&once, &gens).unwrap();
        for (a, b) in once.as_slice().iter().zip(twice.as_slice()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn gamma_average_preserves_inner_product_with_invariant_c() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let gens = vec![cyclic(5)];
    // circulant C is invariant under the cyclic shift
    let row = [1.0, -0.5, 0.25, 0.25, -0.5];
    let mut c = Mat::zeros(5);
    for i in 0..5 {
        for j in 0..5 {
            c[(i, j)] = row[(j + 5 - i) % 5];
        }
    }
    for _ in 0..10 {
        let x = random_sym(&mut rng, 5);
        let avg = gamma_average(&x, &gens).unwrap();
        assert!((c.dot(&avg) - c.dot(&x)).abs() <= 1e-9);
    }
}

#[test]
fn conic_text_round_trip() {
    let (sdp, _) = diagonal_sdp();
    let mut p = sdp;
    let mut extra = SparseBlockSym::new(1);
    extra.add_block(0, 0, 1, 0.1 + 0.2);
    p.push_constraint(Constraint { a: extra, b: -1.0 / 3.0 }).unwrap();
    let text = text::write_conic(&p);
    assert!(text.starts_with("CONIC v1\n"));
    let back = text::read_conic(&text).unwrap();
    assert_eq!(back, p);
    assert_eq!(text::write_conic(&back), text);
}

#[test]
fn conic_text_errors() {
    assert!(text::read_conic("").is_err());
    assert!(text::read_conic("CONIC v2\n").is_err());
    let bad = "CONIC v1\north 1\npsd\nconstraints 1\n";
    assert!(matches!(text::read_conic(bad), Err(Error::Parse { line: 2, .. })));
    let out_of_block = "CONIC v1\northant 0\npsd 2\nconstraints 1\nb 0 1\nA 0 1 2 2 1\n";
    assert!(text::read_conic(out_of_block).is_err());
}

#[test]
fn lmi_builder_drops_constant_rows_and_zero_block_rows() {
    // maximize x s.t. 1 − x ≥ 0, [[1, x, 0],[x, 1, 0],[0, 0, 0]] ⪰ 0
    let mut b = LmiBuilder::new(1);
    b.set_objective(0, 1.0);
    b.add_row(1.0, vec![(0, -1.0)]);
    b.add_row(2.0, vec![]);
    let k = b.add_block(3);
    b.block_constant(k, 0, 0, 1.0);
    b.block_constant(k, 1, 1, 1.0);
    b.block_term(k, 0, 0, 1, 1.0);
    let prog = b.build().unwrap();
    assert_eq!(prog.problem().cone(), &ConeSpec::new(1, vec![2]).unwrap());
    let chk = prog.check(&[0.5]).unwrap();
    assert!(chk.is_feasible(1e-12));
    assert_eq!(chk.objective, 0.5);
    assert!(!prog.check(&[1.5]).unwrap().is_feasible(1e-12));
}
