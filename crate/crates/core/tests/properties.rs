mod common;

use proptest::prelude::*;
use qcentral::fusion::{
    fuse_spins, fuse_words, Dimension, FreeWord, FusionElement, Letter, SpinLabel,
};
use qcentral::multipliers::{b_coeff, truncate_multiplier};
use qcentral::qspecial::{chebyshev_mu_closed, chebyshev_mu_real, q_binomial};
use qcentral::schedule::{plan, radius, tail_bound};
use qcentral::structure::{noninjectivity_check, profile, sd_generators};
use qcentral::suq2::{build_jacobi, eta_vector};
use qcentral::{QParam, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(prop::bool::ANY, 0..=4).prop_map(|bits| {
        FreeWord::new(
            bits.into_iter()
                .map(|b| if b { Letter::A } else { Letter::B })
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn b_is_a_probability_weight(q in 0.05f64..0.95, t in 0.0f64..1.0, d in 0u32..300) {
        let b = b_coeff(&QParam::new(q).unwrap(), C64::new(t, 0.0), d).unwrap();
        prop_assert!(b.im == 0.0);
        prop_assert!(b.re > 0.0 && b.re <= 1.0 + 1e-15);
    }

    #[test]
    fn b_is_monotone_in_t(q in 0.05f64..0.95, t in 0.0f64..0.99, dt in 1e-3f64..0.01, d in 1u32..200) {
        let qq = QParam::new(q).unwrap();
        let lo = b_coeff(&qq, C64::new(t, 0.0), d).unwrap().re;
        let hi = b_coeff(&qq, C64::new(t + dt, 0.0), d).unwrap().re;
        prop_assert!(hi >= lo * (1.0 - 1e-13));
    }

    #[test]
    fn b_is_even(q in -0.95f64..0.95, re in -1.0f64..1.0, im in -3.0f64..3.0, d in 0u32..100) {
        prop_assume!(q.abs() > 0.05);
        let qq = QParam::new(q).unwrap();
        let z = C64::new(re, im);
        let a = b_coeff(&qq, z, d).unwrap();
        let b = b_coeff(&qq, -z, d).unwrap();
        prop_assert!((a - b).norm() <= 1e-14 * a.norm().max(1e-300));
    }

    #[test]
    fn b_matches_closed_form(q in 0.1f64..0.9, re in -0.95f64..0.95, im in -2.0f64..2.0, d in 0u32..60) {
        let qq = QParam::new(q).unwrap();
        let z = C64::new(re, im);
        let y = C64::new(q, 0.0).powc(z);
        let expect = chebyshev_mu_closed(d, y) / chebyshev_mu_real(d, q + 1.0 / q);
        let got = b_coeff(&qq, z, d).unwrap();
        prop_assert!((got - expect).norm() <= 1e-9 * expect.norm().max(1e-300));
    }

    #[test]
    fn q_binomial_is_symmetric(n in 0u32..30, k in 0u32..30, q in 0.0f64..0.99) {
        prop_assume!(k <= n);
        let a = q_binomial(n, k, q).unwrap();
        let b = q_binomial(n, n - k, q).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn eta_is_an_eigenvector(q in 0.2f64..0.8, t in -0.9f64..0.9, s in -1.5f64..1.5) {
        let qq = QParam::new(q).unwrap();
        let eta = eta_vector(&qq, C64::new(t, s), 160).unwrap();
        let check = eta.eigen_check(&build_jacobi(&qq, 160).unwrap()).unwrap();
        prop_assert!(check.residual_valid < 1e-10);
    }

    #[test]
    fn spin_dimensions_are_homomorphic(a in 0u32..20, b in 0u32..20, q in 0.1f64..0.95) {
        let e = fuse_spins(SpinLabel(a), SpinLabel(b));
        let classical: u64 = e.iter().map(|(c, m)| m * c.dim()).sum();
        prop_assert_eq!(classical, (a as u64 + 1) * (b as u64 + 1));
        let qq = QParam::new(q).unwrap();
        let lhs = SpinLabel(a).qdim(&qq) * SpinLabel(b).qdim(&qq);
        prop_assert!((lhs - e.evaluate(|c| c.qdim(&qq))).abs() <= 1e-10 * lhs);
    }

    #[test]
    fn word_fusion_is_associative(w in word(), v in word(), u in word()) {
        let (w, v, u) = (FusionElement::single(w), FusionElement::single(v), FusionElement::single(u));
        let left = w.product(&v, fuse_words).product(&u, fuse_words);
        let right = w.product(&v.product(&u, fuse_words), fuse_words);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn word_dimensions_are_homomorphic(w in word(), v in word(), gauge in 2.0f64..6.0) {
        let lhs = w.dim_at(gauge) * v.dim_at(gauge);
        let rhs = fuse_words(&w, &v).evaluate(|x| x.dim_at(gauge));
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
    }

    #[test]
    fn conjugate_contains_unit_once(w in word()) {
        prop_assert_eq!(fuse_words(&w, &w.bar()).multiplicity(&FreeWord::empty()), 1);
        prop_assert_eq!(w.bar().bar(), w);
    }

    #[test]
    fn truncation_bound_holds(q in 0.3f64..0.8, t in 0.02f64..0.3, eps_exp in -9i32..-1) {
        let qq = QParam::new(q).unwrap();
        let eps = 10f64.powi(eps_exp);
        let cut = truncate_multiplier(&qq, t, 3, eps).unwrap();
        prop_assert!(cut.cb_error_bound < eps);
    }

    #[test]
    fn tail_bound_decreases_past_turning_point(r in 0.5f64..0.99, k in 0usize..200) {
        let n0 = (-1.0 / r.ln()).ceil() as usize + 1;
        let n = n0 + k;
        prop_assert!(tail_bound(n + 1, r).unwrap() <= tail_bound(n, r).unwrap());
    }

    #[test]
    fn plan_meets_both_legs(exp in -8.0f64..-0.1) {
        let delta = 10f64.powf(exp);
        let s = plan(delta).unwrap();
        prop_assert!(s.tail_bound < delta && s.block_error < delta);
        prop_assert!(tail_bound(s.n - 1, radius(s.n - 1)).unwrap() >= delta || s.n == 2);
        prop_assert!(s.ln_eps.is_finite());
        if s.ln_eps > -700.0 {
            prop_assert!(s.eps > 0.0);
        }
    }
}

#[test]
fn q_is_invariant_under_unitary_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..6 {
        let f = common::gaussian_matrix(&mut rng, n);
        let base = profile(&f).unwrap();
        for _ in 0..10 {
            let g = common::random_unitary(&mut rng, n) * &f * common::random_unitary(&mut rng, n);
            let p = profile(&g).unwrap();
            assert!((p.q_param - base.q_param).abs() < 1e-9);
            assert_eq!(
                noninjectivity_check(&p).noninjective,
                noninjectivity_check(&base).noninjective
            );
        }
        let again = profile(&base.f).unwrap();
        assert!((again.q_param - base.q_param).abs() < 1e-12);
    }
}

#[test]
fn generators_are_inversion_symmetric_for_symmetric_spectra() {
    for lambdas in [
        vec![2.0, 0.5],
        vec![3.0, 1.7, 1.0 / 3.0, 1.0 / 1.7],
        vec![5.0, 1.0, 0.2],
    ] {
        let g = sd_generators(&lambdas);
        for x in &g {
            assert!(g.iter().any(|y| (x * y - 1.0).abs() < 1e-10));
        }
    }
}

#[test]
fn noninjectivity_is_monotone_in_n() {
    // Q = diag(a, 1/a, 1, ..., 1) with a + 1/a = T - N + 2 keeps Tr(Q) = T = 12
    let trace = 12.0;
    let mut seen = false;
    for n in 2..=12usize {
        let s = trace - n as f64 + 2.0;
        let a = (s + (s * s - 4.0).sqrt()) / 2.0;
        let mut diag = vec![1.0; n];
        diag[0] = a.sqrt();
        diag[1] = 1.0 / a.sqrt();
        let f = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            C64::new(if i == j { diag[i] } else { 0.0 }, 0.0)
        });
        let p = profile(&f).unwrap();
        assert!((p.trace_ffstar - trace).abs() < 1e-9);
        let v = noninjectivity_check(&p).noninjective;
        assert!(!seen || v, "verdict dropped at N = {n}");
        assert_eq!(v, n * n > 14);
        seen |= v;
    }
}
