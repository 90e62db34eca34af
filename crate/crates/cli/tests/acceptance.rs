//! Acceptance gate. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails.

// `!(err <= tol)` keeps NaN counted as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::Path;
use std::process::Command;

use sha2::{Digest, Sha256};

use gammakit_core::analytic::expand;
use gammakit_core::bvp::{basis_gamma, evaluate_fit, fit_dirichlet, sample_boundary};
use gammakit_core::random::TrialRng;
use gammakit_core::theorems::{
    compose_solution, fd_residual_with_tol, gamma_report, goursat_solution, lemma1_residuals,
    theorem1_residual, theorem2_residual,
};
use gammakit_core::{
    algebra_from_operator, APoly, BiPoly, FdOrder, FdScheme, HNum, OperatorParams, Shape,
};

const SEED: u64 = 0xacce_5000;

const LEMMA1_TRIALS: usize = 200;
const LEMMA1_MAX_DEGREE: usize = 6;
const LEMMA1_TOL: f64 = 1e-9;

const THEOREM1_TRIALS: usize = 100;
const THEOREM1_MAX_DEGREE: usize = 4;
const FACTORIZATION_MAX_H_DEGREE: u32 = 4;
const THEOREM1_TOL: f64 = 1e-8;

const THEOREM2_TRIALS: usize = 100;
const THEOREM2_MAX_DEGREE: usize = 5;
const THEOREM2_TOL: f64 = 1e-8;

const FD_SOLUTIONS: usize = 50;
const FD_POINTS: usize = 25;
const FD_GAMMA_STEP: f64 = 1e-3;
const FD_GAMMA_TOL: f64 = 1e-4;
const FD_GAMMA2_STEP: f64 = 1e-2;
const FD_GAMMA2_TOL: f64 = 1e-3;
const FD_GAMMA_MAX_DEGREE: usize = 5;
const FD_GAMMA2_MAX_DEGREE: usize = 4;

const COMPLEX_PAIRS: usize = 1000;
const COMPLEX_TOL: f64 = 1e-12;

const BVP_DEGREE: u32 = 3;
const BVP_SAMPLES: usize = 64;
const BVP_COEFF_TOL: f64 = 1e-8;
const BVP_INTERIOR_POINTS: usize = 100;
const BVP_INTERIOR_TOL: f64 = 1e-6;

const DETERMINISM_RUNS: usize = 3;

const COEFF_RANGE: f64 = 10.0;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn random_map(rng: &mut TrialRng, max_degree: usize) -> (OperatorParams, APoly) {
    let op = rng.operator();
    let alg = algebra_from_operator(op).unwrap();
    (op, rng.apoly_up_to(alg, max_degree, COEFF_RANGE))
}

fn lemma1() -> Outcome {
    let mut rng = TrialRng::new(SEED + 1);
    let (mut failures, mut worst) = (0, 0.0f64);
    for _ in 0..LEMMA1_TRIALS {
        let (op, f) = random_map(&mut rng, LEMMA1_MAX_DEGREE);
        let (ru, rv) = lemma1_residuals(&f, op).unwrap();
        for r in [ru, rv] {
            let rel = r.relative();
            worst = worst.max(rel);
            if !(rel <= LEMMA1_TOL) {
                failures += 1;
            }
        }
    }
    outcome(
        failures == 0,
        format!("{LEMMA1_TRIALS} trials, {failures} failures, worst relative {worst:.2e} (tol {LEMMA1_TOL:e})"),
    )
}

fn theorem1() -> Outcome {
    let mut rng = TrialRng::new(SEED + 2);
    let (mut failures, mut worst) = (0, 0.0f64);
    for _ in 0..THEOREM1_TRIALS {
        let (op, f) = random_map(&mut rng, THEOREM1_MAX_DEGREE);
        let g = rng.apoly_up_to(f.algebra(), THEOREM1_MAX_DEGREE, COEFF_RANGE);
        let h = expand(&g).u;
        let rel = match compose_solution(&h, &f, op) {
            Ok(big_h) => gamma_report(&big_h, op, THEOREM1_TOL).relative(),
            Err(_) => f64::INFINITY,
        };
        worst = worst.max(rel);
        if !(rel <= THEOREM1_TOL) {
            failures += 1;
        }
    }

    let (mut fact_failures, mut fact_worst) = (0, 0.0f64);
    for _ in 0..THEOREM1_TRIALS {
        let (op, f) = random_map(&mut rng, THEOREM1_MAX_DEGREE);
        let deg = rng.below(u64::from(FACTORIZATION_MAX_H_DEGREE) + 1) as u32;
        let h = rng.bipoly(deg, COEFF_RANGE);
        let rel = theorem1_residual(&h, &f, op)
            .unwrap()
            .factorization
            .relative();
        fact_worst = fact_worst.max(rel);
        if !(rel <= THEOREM1_TOL) {
            fact_failures += 1;
        }
    }
    outcome(
        failures == 0 && fact_failures == 0,
        format!(
            "composition {THEOREM1_TRIALS} trials, {failures} failures, worst {worst:.2e}; \
             factorization {THEOREM1_TRIALS} trials, {fact_failures} failures, worst {fact_worst:.2e} \
             (tol {THEOREM1_TOL:e})"
        ),
    )
}

fn theorem2() -> Outcome {
    let mut rng = TrialRng::new(SEED + 3);
    let (mut failures, mut worst) = (0, 0.0f64);
    for _ in 0..THEOREM2_TRIALS {
        let (op, f) = random_map(&mut rng, THEOREM2_MAX_DEGREE);
        let g = rng.apoly_up_to(f.algebra(), THEOREM2_MAX_DEGREE, COEFF_RANGE);
        let rel = theorem2_residual(&f, &g, op).unwrap().relative();
        worst = worst.max(rel);
        if !(rel <= THEOREM2_TOL) {
            failures += 1;
        }
    }

    let op = OperatorParams::new(1.0, 1.0);
    let alg = algebra_from_operator(op).unwrap();
    let y2 = goursat_solution(&APoly::z(alg), &APoly::zero(alg), op).unwrap()
        == BiPoly::from_terms([(0, 2, 1.0)]);

    let op = OperatorParams::laplace();
    let alg = algebra_from_operator(op).unwrap();
    let jz = APoly::monomial(alg.j(), 1);
    let x2y2 = goursat_solution(&jz, &APoly::zero(alg), op).unwrap()
        == BiPoly::from_terms([(2, 0, 1.0), (0, 2, 1.0)]);

    outcome(
        failures == 0 && y2 && x2y2,
        format!(
            "{THEOREM2_TRIALS} trials, {failures} failures, worst {worst:.2e} (tol {THEOREM2_TOL:e}); \
             y^2 instance {}, x^2+y^2 instance {}",
            if y2 { "exact" } else { "MISMATCH" },
            if x2y2 { "exact" } else { "MISMATCH" },
        ),
    )
}

fn fd_oracle() -> Outcome {
    let mut rng = TrialRng::new(SEED + 4);
    let gamma = FdScheme::new(FdOrder::Gamma, FD_GAMMA_STEP);
    let gamma2 = FdScheme::new(FdOrder::GammaSquared, FD_GAMMA2_STEP);
    let (mut failures, mut w1, mut w2) = (0, 0.0f64, 0.0f64);
    for _ in 0..FD_SOLUTIONS {
        let (op, f) = random_map(&mut rng, FD_GAMMA_MAX_DEGREE);
        let pts = rng.points(FD_POINTS, -1.0, 1.0);
        let u = expand(&f).u;
        let rep = fd_residual_with_tol(&|x, y| u.eval(x, y), op, gamma, &pts, FD_GAMMA_TOL);
        w1 = w1.max(rep.relative());
        if !rep.passed {
            failures += 1;
        }

        let alg = f.algebra();
        let f2 = rng.apoly_up_to(alg, FD_GAMMA2_MAX_DEGREE, COEFF_RANGE);
        let g2 = rng.apoly_up_to(alg, FD_GAMMA2_MAX_DEGREE, COEFF_RANGE);
        let h = goursat_solution(&f2, &g2, op).unwrap();
        let rep = fd_residual_with_tol(&|x, y| h.eval(x, y), op, gamma2, &pts, FD_GAMMA2_TOL);
        w2 = w2.max(rep.relative());
        if !rep.passed {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!(
            "{FD_SOLUTIONS} solutions x {FD_POINTS} points, {failures} failures; \
             worst Γ {w1:.2e} (tol {FD_GAMMA_TOL:e}), worst Γ² {w2:.2e} (tol {FD_GAMMA2_TOL:e})"
        ),
    )
}

fn complex_specialization() -> Outcome {
    let alg = algebra_from_operator(OperatorParams::laplace()).unwrap();
    let mut rng = TrialRng::new(SEED + 5);
    let (mut failures, mut worst) = (0, 0.0f64);
    for _ in 0..COMPLEX_PAIRS {
        let [a, b, c, d] = std::array::from_fn(|_| rng.uniform(-COEFF_RANGE, COEFF_RANGE));
        let p = HNum::new(a, b, alg)
            .checked_mul(&HNum::new(c, d, alg))
            .unwrap();
        let err = (p.re() - (a * c - b * d))
            .abs()
            .max((p.im() - (a * d + b * c)).abs());
        worst = worst.max(err);
        if !(err <= COMPLEX_TOL) {
            failures += 1;
        }
    }

    let p = |t: &[(u32, u32, f64)]| BiPoly::from_terms(t.iter().copied());
    let classical = vec![
        p(&[(0, 0, 1.0)]),
        p(&[(1, 0, 1.0)]),
        p(&[(0, 1, 1.0)]),
        p(&[(2, 0, 1.0), (0, 2, -1.0)]),
        p(&[(1, 1, 2.0)]),
        p(&[(3, 0, 1.0), (1, 2, -3.0)]),
        p(&[(2, 1, 3.0), (0, 3, -1.0)]),
        p(&[(4, 0, 1.0), (2, 2, -6.0), (0, 4, 1.0)]),
        p(&[(3, 1, 4.0), (1, 3, -4.0)]),
    ];
    let basis_ok = basis_gamma(OperatorParams::laplace(), 4).unwrap() == classical;
    outcome(
        failures == 0 && basis_ok,
        format!(
            "{COMPLEX_PAIRS} products, {failures} failures, worst {worst:.2e} (tol {COMPLEX_TOL:e}); \
             harmonic basis to degree 4 {}",
            if basis_ok { "exact" } else { "MISMATCH" }
        ),
    )
}

fn span_exact(op: OperatorParams, data: &BiPoly, rng: &mut TrialRng) -> (bool, String) {
    let basis = basis_gamma(op, BVP_DEGREE).unwrap();
    let Some(index) = basis.iter().position(|b| b == data) else {
        return (false, "data is not a basis element".into());
    };
    let sample = sample_boundary(Shape::unit_disc(), BVP_SAMPLES, |x, y| data.eval(x, y)).unwrap();
    let fit = match fit_dirichlet(&basis, &sample) {
        Ok(fit) => fit,
        Err(e) => return (false, e.to_string()),
    };
    let coeff_err = fit
        .coefficients
        .iter()
        .enumerate()
        .map(|(k, &c)| (c - if k == index { 1.0 } else { 0.0 }).abs())
        .fold(0.0f64, f64::max);

    let mut pts = Vec::with_capacity(BVP_INTERIOR_POINTS);
    while pts.len() < BVP_INTERIOR_POINTS {
        let (x, y) = rng.point(-1.0, 1.0);
        if x * x + y * y < 1.0 {
            pts.push((x, y));
        }
    }
    let interior_err = evaluate_fit(&fit, &pts)
        .iter()
        .zip(&pts)
        .map(|(v, &(x, y))| (v - data.eval(x, y)).abs())
        .fold(0.0f64, f64::max);
    let ok = coeff_err <= BVP_COEFF_TOL && interior_err <= BVP_INTERIOR_TOL;
    (
        ok,
        format!("coefficient error {coeff_err:.2e}, interior error {interior_err:.2e}"),
    )
}

fn bvp() -> Outcome {
    let mut rng = TrialRng::new(SEED + 6);
    let (ok1, d1) = span_exact(
        OperatorParams::laplace(),
        &BiPoly::from_terms([(3, 0, 1.0), (1, 2, -3.0)]),
        &mut rng,
    );
    let (ok2, d2) = span_exact(
        OperatorParams::new(1.0, 1.0),
        &BiPoly::from_terms([(1, 1, 2.0), (0, 2, -1.0)]),
        &mut rng,
    );
    outcome(
        ok1 && ok2,
        format!(
            "(0,1) x^3-3xy^2: {d1}; (1,1) 2xy-y^2: {d2} \
             (tol {BVP_COEFF_TOL:e} / {BVP_INTERIOR_TOL:e})"
        ),
    )
}

fn run_hashed(args: &[&str], dir: &Path, outputs: &[&str]) -> Option<Vec<u8>> {
    let out = Command::new(env!("CARGO_BIN_EXE_gammakit"))
        .args(args)
        .current_dir(dir)
        .env_remove("GAMMAKIT_SEED")
        .output()
        .expect("spawn gammakit");
    if !out.status.success() {
        return None;
    }
    let mut hasher = Sha256::new();
    hasher.update(&out.stdout);
    for name in outputs {
        hasher.update(fs::read(dir.join(name)).ok()?);
    }
    Some(hasher.finalize().to_vec())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let setup = Command::new(env!("CARGO_BIN_EXE_gammakit"))
        .args([
            "generate", "--alpha", "1.5", "--beta", "-2", "--degree", "3", "--seed", "11",
        ])
        .output()
        .unwrap();
    fs::write(d.join("f.json"), &setup.stdout).unwrap();
    fs::write(d.join("data.json"), r#"{"terms":[[1,1,2],[0,2,-1]]}"#).unwrap();

    let runs: [(&str, Vec<&str>, Vec<&str>); 4] = [
        (
            "generate",
            vec![
                "generate", "--alpha", "-0.75", "--beta", "2.5", "--degree", "5", "--seed", "42",
            ],
            vec![],
        ),
        (
            "goursat",
            vec![
                "goursat", "--f", "f.json", "--g", "f.json", "--alpha", "1.5", "--beta", "-2",
            ],
            vec![],
        ),
        (
            "fd-verify",
            vec![
                "fd-verify",
                "--field",
                "data.json",
                "--alpha",
                "1",
                "--beta",
                "1",
                "--order",
                "1",
                "--seed",
                "7",
            ],
            vec![],
        ),
        (
            "solve-bvp",
            vec![
                "solve-bvp",
                "--alpha",
                "1",
                "--beta",
                "1",
                "--order",
                "2",
                "--degree",
                "4",
                "--data",
                "data.json",
                "--out",
                "fit.json",
                "--grid",
                "grid.csv",
                "--boundary-out",
                "boundary.csv",
            ],
            vec!["fit.json", "grid.csv", "boundary.csv"],
        ),
    ];

    let mut mismatched = Vec::new();
    for (name, args, outputs) in &runs {
        let hashes: Vec<Option<Vec<u8>>> = (0..DETERMINISM_RUNS)
            .map(|_| run_hashed(args, d, outputs))
            .collect();
        if hashes.iter().any(|h| h.is_none() || h != &hashes[0]) {
            mismatched.push(*name);
        }
    }
    outcome(
        setup.status.success() && mismatched.is_empty(),
        format!(
            "{} commands x {DETERMINISM_RUNS} runs hashed, mismatched or failed: {mismatched:?}",
            runs.len()
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 7] = [
        ("1 lemma 1 suite", lemma1),
        ("2 theorem 1 suite", theorem1),
        ("3 theorem 2 suite", theorem2),
        ("4 finite-difference oracle", fd_oracle),
        ("5 complex specialization", complex_specialization),
        ("6 bvp span-exactness", bvp),
        ("7 cli determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let o = check();
        println!(
            "[{}] {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.passed {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
