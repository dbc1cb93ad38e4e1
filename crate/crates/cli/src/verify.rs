//! The `verify` suite: every check reports its residual against a tolerance.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qcentral::fusion::{
    fuse_spins, fuse_words, Dimension, FreeWord, FusionElement, Letter, SpinLabel,
};
use qcentral::multipliers::{b_coeff, b_coeff_recurrence, locate_summability_boundary};
use qcentral::schedule::{plan, radius, tail_bound};
use qcentral::structure::profile;
use qcentral::suq2::{
    build_alpha_toeplitz, build_jacobi, eta_vector, jacobi_spectrum, tensor_alpha, tensor_gamma,
    theta_pair, BandedOperator, TensorOperator,
};
use qcentral::QParam;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{num, Report, Table};

type C64 = Complex64;

#[derive(Serialize)]
pub struct Check {
    name: &'static str,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
pub struct VerifyReport {
    seed: u64,
    passed: bool,
    checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.passed
    }
}

impl Report for VerifyReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["check", "residual", "tolerance", "status"]);
        for c in &self.checks {
            t.push(vec![
                c.name.to_string(),
                num(c.residual),
                num(c.tolerance),
                if c.pass { "ok" } else { "FAIL" }.to_string(),
            ]);
        }
        t
    }
}

fn check(name: &'static str, residual: f64, tolerance: f64) -> Check {
    Check {
        name,
        residual,
        tolerance,
        pass: residual <= tolerance,
    }
}

fn qp(v: f64) -> QParam {
    QParam::new(v).expect("fixed grid values are admissible")
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn eigen_checks(out: &mut Vec<Check>) {
    let (mut res, mut eig) = (0.0f64, 0.0f64);
    for q in [0.2, 0.5, 0.8] {
        let jac = build_jacobi(&qp(q), 200).unwrap();
        for t in [0.0, 0.3, 0.6, 0.9] {
            let eta = eta_vector(&qp(q), C64::new(t, 0.0), 200).unwrap();
            let c = eta.eigen_check(&jac).unwrap();
            let expect = q.powf(t) + q.powf(-t);
            res = res.max(c.residual_valid);
            eig = eig.max((c.eigenvalue.re - expect).abs() / expect);
        }
    }
    out.push(check("eta eigen-residual", res, 1e-10));
    out.push(check("eta eigenvalue", eig, 1e-12));

    // gauge-side point spectrum is only approximate: eta_t close to t = 1
    let q = qp(0.5);
    let eta = eta_vector(&q, C64::new(0.95, 0.0), 400).unwrap();
    let c = eta.eigen_check(&build_jacobi(&q, 400).unwrap()).unwrap();
    out.push(check(
        "approximate eigenvector near the gauge",
        c.residual_valid,
        1e-10,
    ));

    let mut excess = 0.0f64;
    for q in [0.3, 0.5, 0.7] {
        let gauge = q + 1.0 / q;
        let spec = jacobi_spectrum(&qp(q), 400).unwrap();
        excess = excess
            .max(spec[spec.len() - 1] - gauge)
            .max(-gauge - spec[0]);
    }
    out.push(check("Jacobi spectrum containment", excess.max(0.0), 1e-9));
}

fn theta_checks(rng: &mut ChaCha8Rng, out: &mut Vec<Check>) {
    let q = qp(0.5);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let z = C64::new(rng.random_range(-0.9..=0.9), rng.random_range(-2.0..=2.0));
        let th = theta_pair(&q, z, 8, 300).unwrap();
        for d in 0..=8u32 {
            let b = b_coeff(&q, z, d).unwrap();
            worst = worst.max((th.values()[d as usize] / th.c_z() - b).norm() / b.norm());
        }
    }
    out.push(check("theta / C_z against b_d", worst, 1e-8));
}

fn operator_checks(out: &mut Vec<Check>) {
    let n_tr = 128;
    let (mut toeplitz, mut unit) = (0.0f64, 0.0f64);
    for q in [0.2, -0.2, 0.5, -0.5, 0.9, -0.9] {
        let qq = qp(q);
        let a = build_alpha_toeplitz(&qq, n_tr).unwrap();
        let a_star = a.adjoint();
        let lhs = a
            .matmul(&a_star)
            .unwrap()
            .combine(one(), &a_star.matmul(&a).unwrap(), C64::new(-q * q, 0.0))
            .unwrap();
        let rhs = BandedOperator::identity(n_tr).scale(C64::new(1.0 - q * q, 0.0));
        toeplitz = toeplitz.max(lhs.max_deviation_on_valid_rows(&rhs).unwrap());

        let al = tensor_alpha(&qq, n_tr, -3..=3).unwrap();
        let ga = tensor_gamma(&qq, n_tr, -3..=3).unwrap();
        let sum = al
            .adjoint()
            .matmul(&al)
            .unwrap()
            .combine(one(), &ga.adjoint().matmul(&ga).unwrap(), one())
            .unwrap();
        let id = TensorOperator::identity(n_tr, -3..=3).unwrap();
        unit = unit.max(
            sum.combine(one(), &id, -one())
                .unwrap()
                .max_abs_on_valid_rows(),
        );
    }
    out.push(check("Toeplitz relation", toeplitz, 1e-13));
    out.push(check("unitarity rows", unit, 1e-13));
}

fn multiplier_checks(out: &mut Vec<Check>) {
    let q = qp(0.5);
    let mut decay = 0.0f64;
    for t in [0.3, 0.6, 0.9] {
        let z = C64::new(t, 0.0);
        let r = (b_coeff(&q, z, 81).unwrap() / b_coeff(&q, z, 80).unwrap()).norm();
        decay = decay.max((r - 0.5f64.powf(1.0 - t)).abs());
    }
    out.push(check("decay ratio at d = 80", decay, 1e-6));

    let t = locate_summability_boundary(&q, 3, 1e-6).unwrap();
    out.push(check(
        "summability boundary at 1/3",
        (t - 1.0 / 3.0).abs(),
        1e-3,
    ));

    let mut worst = 0.0f64;
    for q in [0.5, 0.9] {
        for t in [0.1, 0.5, 0.9] {
            let z = C64::new(t, 0.0);
            for d in 0..=300 {
                let a = b_coeff(&qp(q), z, d).unwrap();
                let b = b_coeff_recurrence(&qp(q), z, d);
                worst = worst.max((a - b).norm() / b.norm());
            }
        }
    }
    out.push(check("closed form against recurrence", worst, 1e-10));
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> FreeWord {
    let len = rng.random_range(0..=max_len);
    FreeWord::new(
        (0..len)
            .map(|_| {
                if rng.random::<bool>() {
                    Letter::A
                } else {
                    Letter::B
                }
            })
            .collect(),
    )
}

fn fusion_checks(rng: &mut ChaCha8Rng, out: &mut Vec<Check>) {
    let mut classical_misses = 0usize;
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let q = qp(rng.random_range(0.1..0.95));
        let (a, b) = (
            SpinLabel(rng.random_range(0..=12)),
            SpinLabel(rng.random_range(0..=12)),
        );
        let e = fuse_spins(a, b);
        let classical: u64 = e.iter().map(|(c, m)| m * c.dim()).sum();
        classical_misses += (classical != a.dim() * b.dim()) as usize;
        let lhs = a.qdim(&q) * b.qdim(&q);
        worst = worst.max((lhs - e.evaluate(|c| c.qdim(&q))).abs() / lhs);
        let (w, v) = (random_word(rng, 4), random_word(rng, 4));
        let lhs = w.qdim(&q) * v.qdim(&q);
        worst = worst.max((lhs - fuse_words(&w, &v).evaluate(|x| x.qdim(&q))).abs() / lhs);
    }
    out.push(check(
        "classical dimension homomorphism",
        classical_misses as f64,
        0.0,
    ));
    out.push(check("quantum dimension homomorphism", worst, 1e-9));

    let mut assoc_misses = 0usize;
    let mut unit_misses = 0usize;
    for _ in 0..100 {
        let w = FusionElement::single(random_word(rng, 3));
        let v = FusionElement::single(random_word(rng, 3));
        let u = FusionElement::single(random_word(rng, 3));
        let left = w.product(&v, fuse_words).product(&u, fuse_words);
        let right = w.product(&v.product(&u, fuse_words), fuse_words);
        assoc_misses += (left != right) as usize;
        let x = random_word(rng, 5);
        unit_misses += (fuse_words(&x, &x.bar()).multiplicity(&FreeWord::empty()) != 1) as usize;
    }
    out.push(check("word fusion associativity", assoc_misses as f64, 0.0));
    out.push(check("unit in w * bar(w) once", unit_misses as f64, 0.0));
}

fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<C64> {
    let m = DMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    m.qr().q()
}

fn structure_checks(rng: &mut ChaCha8Rng, out: &mut Vec<Check>) {
    let mut worst = 0.0f64;
    for i in 0..20 {
        let n = 2 + i % 4;
        let f = DMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let Ok(base) = profile(&f) else { continue };
        let lambda = rng.random_range(0.2..5.0);
        let g = random_unitary(rng, n) * &f * random_unitary(rng, n) * C64::new(lambda, 0.0);
        worst = worst.max((profile(&g).unwrap().q_param - base.q_param).abs());
    }
    out.push(check("q invariant under lambda V F W", worst, 1e-9));
}

fn schedule_checks(out: &mut Vec<Check>) {
    let s = plan(0.1).unwrap();
    let nf = s.n as f64;
    let direct = 4.0 * nf * nf * (1.0 - 1.0 / nf.sqrt()).powf(nf);
    let minimal = tail_bound(s.n - 1, radius(s.n - 1)).unwrap() >= 0.1;
    out.push(check(
        "schedule minimality",
        if minimal { 0.0 } else { 1.0 },
        0.0,
    ));
    out.push(check(
        "schedule tail recomputation",
        (s.tail_bound - direct).abs() / direct,
        1e-12,
    ));
    let block: f64 = (1..=s.n)
        .map(|d| 4.0 * d as f64 * 2f64.powi(d as i32) * s.eps)
        .sum();
    out.push(check(
        "schedule block recomputation",
        (s.block_error - block).abs() / block,
        1e-12,
    ));
}

pub fn run(seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    eigen_checks(&mut checks);
    theta_checks(&mut rng, &mut checks);
    operator_checks(&mut checks);
    multiplier_checks(&mut checks);
    fusion_checks(&mut rng, &mut checks);
    structure_checks(&mut rng, &mut checks);
    schedule_checks(&mut checks);
    VerifyReport {
        seed,
        passed: checks.iter().all(|c| c.pass),
        checks,
    }
}
