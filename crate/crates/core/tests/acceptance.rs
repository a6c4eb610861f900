//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every tolerance is pinned in the assertions; the random sweeps run on
//! fixed seeds so the suite is reproducible bit for bit.

use std::time::Instant;

use rand::Rng;
use sphlevy_core::{
    definiteness, haar, levy, polya, sampling, spherical, DiscreteOmegaMeasure, LevyTriple,
    MatrixPoint, OmegaParam,
};

fn random_points(count: usize, dim: usize, rng: &mut impl Rng) -> Vec<MatrixPoint> {
    (0..count)
        .map(|_| {
            if rng.gen::<f64>() < 0.4 {
                sampling::random_diag_point(dim, rng)
            } else {
                sampling::random_dense_point(dim, 2.0, rng)
            }
        })
        .collect()
}

fn random_triple(rng: &mut impl Rng, max_atoms: usize, max_mass: f64) -> LevyTriple {
    let n_atoms = rng.gen_range(0..=max_atoms);
    let per_atom = if n_atoms > 0 { max_mass / n_atoms as f64 } else { 0.0 };
    let atoms: Vec<(OmegaParam, f64)> = (0..n_atoms)
        .map(|_| {
            let w = per_atom * (1.0 - rng.gen::<f64>());
            (sampling::random_omega(rng, 3, 2.0), w.max(1e-3))
        })
        .collect();
    let nu = DiscreteOmegaMeasure::new(atoms).unwrap();
    let psi0 = rng.gen::<f64>();
    let drift = 2.0 * rng.gen::<f64>();
    LevyTriple::new(psi0, drift, nu).unwrap()
}

#[test]
fn criterion_01_polya_range_and_normalization() {
    let start = Instant::now();
    let mut rng = sampling::seeded_rng(1001);
    for _ in 0..10_000 {
        let w = sampling::random_omega(&mut rng, 5, 5.0);
        let lambda: f64 = rng.gen_range(-5.0..5.0);
        let v = polya::eval(&w, lambda);
        assert!(v > 0.0 && v <= 1.0, "Pi out of (0, 1]: {v}");
        assert_eq!(polya::eval(&w, 0.0), 1.0, "Pi(omega, 0) must be exactly 1");
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "runtime {elapsed:.3}s exceeds 1s");
    println!("[acceptance] C1 polya range/normalization: PASS ({elapsed:.3}s)");
}

#[test]
fn criterion_02_derivative_consistency() {
    let start = Instant::now();
    let mut rng = sampling::seeded_rng(1002);
    let h = 1e-5;
    for _ in 0..1000 {
        let w = sampling::random_omega(&mut rng, 5, 5.0);
        let lambda: f64 = rng.gen_range(-5.0..5.0);
        let fd = (polya::log_eval(&w, lambda + h) - polya::log_eval(&w, lambda - h)) / (2.0 * h);
        let cf = polya::log_deriv(&w, lambda);
        assert!(
            (fd - cf).abs() <= 1e-6 * cf.abs().max(1e-12),
            "finite differences disagree: fd = {fd}, closed = {cf}"
        );

        // series check strictly inside the convergence radius
        let max_alpha = w.alpha().first().copied().unwrap_or(0.0);
        let lam_series = if max_alpha > 0.0 {
            (0.5 * rng.gen::<f64>() / max_alpha).sqrt()
        } else {
            rng.gen_range(0.0..5.0)
        };
        let series = polya::log_deriv_series(&w, lam_series, polya::DEFAULT_SERIES_TERMS).unwrap();
        let closed = polya::log_deriv(&w, lam_series);
        assert!(
            (series - closed).abs() <= 1e-10 * closed.abs().max(1.0),
            "series {series} vs closed {closed}"
        );
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "runtime {elapsed:.3}s exceeds 1s");
    println!("[acceptance] C2 derivative consistency: PASS ({elapsed:.3}s)");
}

#[test]
fn criterion_03_drift_curvature() {
    let mut rng = sampling::seeded_rng(1003);
    let h = 1e-4;
    for _ in 0..1000 {
        let w = sampling::random_omega(&mut rng, 5, 5.0);
        // Pi is even, so (Pi(h) - 2 + Pi(-h))/h^2 = 2 (Pi(h) - 1)/h^2
        let fd2 = 2.0 * polya::log_eval(&w, h).exp_m1() / (h * h);
        let exact = polya::second_deriv_at_zero(&w);
        assert!(
            (fd2 - exact).abs() <= 1e-5 * exact.abs().max(1e-12),
            "curvature mismatch: fd2 = {fd2}, -2||omega|| = {exact}"
        );
    }
    println!("[acceptance] C3 drift curvature: PASS");
}

#[test]
fn criterion_04_spherical_invariance() {
    let mut rng = sampling::seeded_rng(1004);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let w = sampling::random_omega(&mut rng, 5, 3.0);
        let xi = sampling::random_dense_point(n, 2.0, &mut rng);
        let u = haar::sample_unitary_rng(n, &mut rng);
        let v = haar::sample_unitary_rng(n, &mut rng);
        let rotated = u.matmul(&xi).unwrap().matmul(&v.adjoint()).unwrap();
        let dev = (spherical::eval(&w, &rotated) - spherical::eval(&w, &xi)).abs();
        assert!(dev <= 1e-10, "invariance deviation {dev}");
    }
    println!("[acceptance] C4 spherical invariance: PASS");
}

#[test]
fn criterion_05_bochner_positivity() {
    let mut rng = sampling::seeded_rng(1005);
    for _ in 0..100 {
        let n_atoms = rng.gen_range(1..=4);
        let raw: Vec<(OmegaParam, f64)> = (0..n_atoms)
            .map(|_| (sampling::random_omega(&mut rng, 4, 3.0), rng.gen::<f64>() + 0.05))
            .collect();
        let total: f64 = raw.iter().map(|(_, w)| w).sum();
        let mu = DiscreteOmegaMeasure::new(
            raw.into_iter().map(|(o, w)| (o, w / total)).collect(),
        )
        .unwrap();
        let dim = rng.gen_range(1..=4);
        let count = rng.gen_range(2..=12);
        let pts = random_points(count, dim, &mut rng);
        let report = definiteness::positive_type_check(
            |xi| levy::bochner_forward(&mu, xi).unwrap(),
            &pts,
            1e-8,
        )
        .unwrap();
        assert!(report.pass && report.min_eig >= -1e-8, "min_eig = {}", report.min_eig);
    }
    println!("[acceptance] C5 Bochner positivity: PASS");
}

#[test]
fn criterion_06_levy_khinchin_negativity() {
    let mut rng = sampling::seeded_rng(1006);
    for _ in 0..100 {
        let triple = random_triple(&mut rng, 3, 6.0);
        let psi = |xi: &MatrixPoint| levy::lk_forward(&triple, xi);
        let dim = rng.gen_range(1..=4);
        let count = rng.gen_range(3..=10);
        let pts = random_points(count, dim, &mut rng);

        let neg = definiteness::negative_type_check(psi, &pts, 1e-8).unwrap();
        assert!(neg.pass, "max projected eig = {}", neg.max_eig);

        let sch = definiteness::schoenberg_check(psi, &pts, &[0.1, 1.0, 10.0], 1e-8).unwrap();
        assert!(sch.iter().all(|r| r.pass));
    }
    println!("[acceptance] C6 Levy-Khinchin negativity + Schoenberg: PASS");
}

#[test]
fn criterion_07_expansion_remainder_bound() {
    let mut rng = sampling::seeded_rng(1007);
    for _ in 0..10_000 {
        let dim = rng.gen_range(1..=4);
        let xi = sampling::random_dense_point(dim, 1.5, &mut rng);
        let limit = (1.0 / xi.trace_square()).min(1.0);
        let w = sampling::random_omega(&mut rng, 4, 0.999 * limit);
        let bound = spherical::remainder_bound(&w, &xi).unwrap();
        let r = spherical::remainder(&w, &xi).abs();
        assert!(r <= bound + 1e-18, "|R| = {r} exceeds bound {bound}");
    }

    // scaling sweep: |R| / ||omega|| collapses as omega -> 0
    let xi = MatrixPoint::from_diag(&[1.0]).unwrap();
    let ratio = |t: f64| {
        let w = OmegaParam::new(vec![t], t).unwrap();
        spherical::remainder(&w, &xi).abs() / w.norm()
    };
    let start_ratio = ratio(1e-2);
    let mut prev = f64::INFINITY;
    for &t in &[1e-2, 1e-3, 1e-4, 1e-5, 1e-6] {
        let r = ratio(t);
        assert!(r < prev, "ratio not decreasing at t = {t}");
        prev = r;
    }
    assert!(prev <= 1e-3 * start_ratio, "final ratio {prev} vs start {start_ratio}");
    println!("[acceptance] C7 expansion remainder bound: PASS");
}

#[test]
fn criterion_08_one_minus_polya_bound() {
    let mut rng = sampling::seeded_rng(1008);
    for _ in 0..10_000 {
        let w = sampling::random_omega(&mut rng, 5, 5.0);
        let s: f64 = rng.gen_range(-5.0..5.0);
        let one_minus = -polya::log_eval(&w, s).exp_m1();
        assert!(
            one_minus <= polya::one_minus_bound(&w, s) + 1e-15,
            "1 - Pi = {one_minus} exceeds 2||omega||s^2"
        );
    }
    println!("[acceptance] C8 1 - Pi quadratic bound: PASS");
}

#[test]
fn criterion_09_drift_recovery() {
    let mut rng = sampling::seeded_rng(1009);
    for _ in 0..50 {
        let triple = random_triple(&mut rng, 3, 10.0);
        let psi = |xi: &MatrixPoint| levy::lk_forward(&triple, xi);
        let a_hat = levy::recover_drift(psi, 1, &[10.0, 30.0, 100.0]).unwrap();
        let a_true = triple.drift();
        assert!(
            (a_hat - a_true).abs() <= 1e-3 * a_true.max(1.0),
            "drift {a_hat} vs true {a_true}"
        );
    }
    println!("[acceptance] C9 drift recovery: PASS");
}

#[test]
fn criterion_10_measure_recovery_round_trip() {
    let start = Instant::now();
    let mut rng = sampling::seeded_rng(1010);
    let pool: Vec<OmegaParam> = vec![
        OmegaParam::new(vec![0.25], 0.0).unwrap(),
        OmegaParam::new(vec![0.5], 0.0).unwrap(),
        OmegaParam::new(vec![1.0], 0.0).unwrap(),
        OmegaParam::new(vec![2.0], 0.0).unwrap(),
        OmegaParam::new(vec![], 0.75).unwrap(),
        OmegaParam::new(vec![], 2.0).unwrap(),
        OmegaParam::new(vec![0.5, 0.25], 0.1).unwrap(),
        OmegaParam::new(vec![1.5], 0.5).unwrap(),
    ];
    let probes = levy::default_probes();
    let instances = 20;
    for _ in 0..instances {
        // random grid of 3..=6 well-separated atoms, measure on a subset
        let grid_size = rng.gen_range(3..=6);
        let mut indices: Vec<usize> = (0..pool.len()).collect();
        for i in 0..grid_size {
            let j = rng.gen_range(i..indices.len());
            indices.swap(i, j);
        }
        let grid: Vec<OmegaParam> =
            indices[..grid_size].iter().map(|&i| pool[i].clone()).collect();

        let mut true_weights = vec![0.0f64; grid_size];
        let mut atoms: Vec<(OmegaParam, f64)> = Vec::new();
        for (i, omega) in grid.iter().enumerate() {
            if rng.gen::<f64>() < 0.6 {
                let w = 0.2 + 2.8 * rng.gen::<f64>();
                true_weights[i] = w;
                atoms.push((omega.clone(), w));
            }
        }
        let nu = DiscreteOmegaMeasure::new(atoms).unwrap();
        let a_true = 2.0 * rng.gen::<f64>();
        let triple = LevyTriple::new(rng.gen::<f64>(), a_true, nu).unwrap();

        let rec = levy::recover_measure(
            |xi| levy::lk_forward(&triple, xi),
            &probes,
            &grid,
            1e-8,
        )
        .unwrap();

        assert!((rec.drift - a_true).abs() <= 1e-6 * a_true.max(1.0));
        for (got, want) in rec.weights.iter().zip(&true_weights) {
            if *want > 0.0 {
                assert!(
                    (got - want).abs() <= 1e-6 * want,
                    "weight {got} vs true {want}"
                );
            } else {
                assert!(got.abs() <= 1e-8, "phantom weight {got}");
            }
        }
        assert!(rec.residual_rms <= 1e-10, "residual {}", rec.residual_rms);
    }
    let per_instance = start.elapsed().as_secs_f64() / instances as f64;
    assert!(per_instance < 1.0, "runtime {per_instance:.3}s per instance exceeds 1s");
    println!(
        "[acceptance] C10 measure recovery round trip: PASS ({per_instance:.4}s/instance)"
    );
}

#[test]
fn criterion_11_multiplicativity_trend() {
    let start = Instant::now();
    let omega = OmegaParam::new(vec![0.6], 0.4).unwrap();
    assert_eq!(omega.norm(), 1.0);
    let xi = MatrixPoint::from_diag(&[1.0]).unwrap();
    let target = polya::eval(&omega, 1.0) * polya::eval(&omega, 1.0);

    let seeds = [1u64, 2, 3, 4, 5];
    let samples = 4000;
    let mut deviations = Vec::new();
    let mut stderrs = Vec::new();
    for &n in &[5usize, 10, 20] {
        let mut mean_acc = 0.0;
        let mut var_acc = 0.0;
        for &seed in &seeds {
            let est =
                haar::multiplicativity_estimate(&omega, &xi, &xi, n, samples, seed).unwrap();
            mean_acc += est.mean;
            var_acc += est.stderr * est.stderr;
        }
        let pooled_mean = mean_acc / seeds.len() as f64;
        let pooled_stderr = var_acc.sqrt() / seeds.len() as f64;
        deviations.push((pooled_mean - target).abs());
        stderrs.push(pooled_stderr);
        println!(
            "[acceptance] C11 ladder n = {n}: mean = {pooled_mean:.6}, target = {target:.6}, \
             |dev| = {:.2e}, stderr = {:.2e}",
            (pooled_mean - target).abs(),
            pooled_stderr
        );
    }
    assert!(
        deviations[0] > deviations[1] && deviations[1] > deviations[2],
        "deviation ladder not strictly decreasing: {deviations:?}"
    );
    let allowance = (3.0 * stderrs[2]).max(0.05 * target);
    assert!(
        deviations[2] <= allowance,
        "final deviation {} exceeds allowance {allowance}",
        deviations[2]
    );
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "runtime {elapsed:.1}s exceeds 60s");
    println!("[acceptance] C11 multiplicativity trend: PASS ({elapsed:.1}s)");
}
