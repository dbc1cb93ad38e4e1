//! Central multipliers `Psi_z = sum_d b_d(z) p_d` on the spin-`d/2` blocks.
//!
//! The coefficients are the normalised Chebyshev ratios
//! `b_d(z) = mu_d(|q|^z + |q|^{-z}) / mu_d(|q| + |q|^{-1})`. For `0 < Re z < 1`
//! they decay like `|q|^{d (1 - Re z)}`, while the cb-norm of the isotypic
//! projection `p_d` is only bounded by `mu_d(|q| + |q|^{-1})^2`. Whether
//! `sum_d |b_d|^k ||p_d||_cb` converges is therefore decided by the sign of
//! `k (1 - t) - 2`; this module reports that budget and cuts it off with a
//! certified tail.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qspecial::{chebyshev_mu, chebyshev_mu_real, QParam};
use crate::C64;

/// `exp(w) - 1` without cancellation near `w = 0`.
fn expm1(w: C64) -> C64 {
    let (x, y) = (w.re, w.im);
    let half = (0.5 * y).sin();
    C64::new(x.exp_m1() * y.cos() - 2.0 * half * half, x.exp() * y.sin())
}

/// `b_d(z)` through the simplified closed-form ratio
///
/// `|q|^{d(1-z)} * (1 - |q|^{2(d+1)z}) / (1 - |q|^{2z}) * (1 - |q|^2) / (1 - |q|^{2(d+1)})`,
///
/// evaluated with `Re z >= 0` (the coefficients are even in `z`). Every factor
/// stays bounded, so the evaluation does not overflow for large `d`.
///
/// Accepts the closed strip `|Re z| <= 1`; `z = 1` gives the identity.
pub fn b_coeff(q: &QParam, z: C64, d: u32) -> Result<C64> {
    if z.re.is_nan() || z.re.abs() > 1.0 || !z.im.is_finite() {
        return Err(Error::OutsideStrip {
            re: z.re,
            range: "[-1, 1]",
        });
    }
    if d == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let zz = if z.re < 0.0 { -z } else { z };
    let ln_a = q.abs().ln();
    let dp1 = d as f64 + 1.0;

    let scale = ((C64::new(1.0, 0.0) - zz) * (d as f64 * ln_a)).exp();
    let den = expm1(zz * (2.0 * ln_a));
    let num_ratio = if zz == C64::new(0.0, 0.0) {
        C64::new(dp1, 0.0)
    } else if den.norm() < 1e-13 {
        // |q|^{2z} = 1 off the real axis: mu_d evaluated at +-2.
        let y = q.abs_pow(zz);
        return Ok(chebyshev_mu(d, y + y.inv()) / chebyshev_mu_real(d, q.gauge()));
    } else {
        expm1(zz * (2.0 * dp1 * ln_a)) / den
    };
    let norm_ratio = (2.0 * ln_a).exp_m1() / (2.0 * dp1 * ln_a).exp_m1();
    Ok(scale * num_ratio * norm_ratio)
}

/// `b_d(z)` as the plain ratio of two Chebyshev recurrences. Overflows once
/// `mu_d(|q| + 1/|q|)` leaves the double range; kept as an independent route.
///
/// Near `|q|^z + |q|^{-z} = 2` the recurrence amplifies the rounding of its
/// argument by about `d / |q^{-z} - q^z|`, so at `q = 0.9`, `t = 0.1`,
/// `d = 600` it is only good to a few units in `1e-12`.
pub fn b_coeff_recurrence(q: &QParam, z: C64, d: u32) -> C64 {
    let y = q.abs_pow(z);
    chebyshev_mu(d, y + y.inv()) / chebyshev_mu_real(d, q.gauge())
}

/// `b_0(z), ..., b_{d_max}(z)`.
pub fn b_table(q: &QParam, z: C64, d_max: u32) -> Result<Vec<C64>> {
    (0..=d_max).map(|d| b_coeff(q, z, d)).collect()
}

/// Whether the family carries the coefficients themselves or their cubes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MultiplierKind {
    Raw,
    Cubed,
}

/// The multiplier `Psi_z` (or `Psi_z^3`) as a coefficient sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierFamily {
    q: QParam,
    z: C64,
    kind: MultiplierKind,
}

impl MultiplierFamily {
    pub fn new(q: QParam, z: C64, kind: MultiplierKind) -> Result<Self> {
        if !(z.re > -1.0 && z.re < 1.0) {
            return Err(Error::OutsideStrip {
                re: z.re,
                range: "(-1, 1)",
            });
        }
        Ok(MultiplierFamily { q, z, kind })
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn kind(&self) -> MultiplierKind {
        self.kind
    }

    /// Scalar by which the multiplier acts on the spin-`d/2` block.
    pub fn coeff(&self, d: u32) -> C64 {
        let b = b_coeff(&self.q, self.z, d).expect("z validated on construction");
        match self.kind {
            MultiplierKind::Raw => b,
            MultiplierKind::Cubed => b * b * b,
        }
    }
}

/// `|q|^{1 - Re z}`, the geometric decay rate of `|b_d(z)|`.
pub fn decay_rate(q: &QParam, z: C64) -> Result<f64> {
    if !(z.re > 0.0 && z.re < 1.0) {
        return Err(Error::OutsideStrip {
            re: z.re,
            range: "(0, 1)",
        });
    }
    Ok(q.abs().powf(1.0 - z.re))
}

/// `ln mu_d(|q| + 1/|q|) = -d ln|q| + ln((1 - |q|^{2(d+1)}) / (1 - |q|^2))`.
pub fn ln_quantum_dimension(q: &QParam, d: u32) -> f64 {
    let ln_a = q.abs().ln();
    let dp1 = d as f64 + 1.0;
    -(d as f64) * ln_a + (-(2.0 * dp1 * ln_a).exp_m1()).ln() - (-(2.0 * ln_a).exp_m1()).ln()
}

/// cb-norm budget of one isotypic block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CbBudget {
    pub d: u32,
    /// `mu_d(|q| + 1/|q|)^2`, the upper bound on `||p_d||_cb`.
    pub proj_bound: f64,
    /// `|b_d(t)|^power * proj_bound`.
    pub term: f64,
}

/// Budget entry for block `d` of `Psi_t^power`.
pub fn cb_budget(q: &QParam, t: f64, d: u32, power: u32) -> Result<CbBudget> {
    let b = b_coeff(q, C64::new(t, 0.0), d)?;
    let ln_proj = 2.0 * ln_quantum_dimension(q, d);
    Ok(CbBudget {
        d,
        proj_bound: ln_proj.exp(),
        term: (power as f64 * b.norm().ln() + ln_proj).exp(),
    })
}

/// Exponents within this distance of zero are treated as the boundary case.
const BOUNDARY_EPS: f64 = 1e-12;

/// Ratio-test data for `sum_d |b_d(t)|^power mu_d(gauge)^2`.
///
/// Field order is the serialisation order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummabilityReport {
    pub q: f64,
    pub t_or_z: f64,
    pub power: u32,
    pub d_max: u32,
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub limiting_ratio: f64,
    pub converges: bool,
}

fn check_open_unit(t: f64) -> Result<()> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::OutsideStrip {
            re: t,
            range: "(0, 1)",
        });
    }
    Ok(())
}

fn check_power(power: u32) -> Result<()> {
    if power == 0 {
        return Err(Error::InvalidArgument("power must be positive".into()));
    }
    Ok(())
}

/// `(exponent, ratio)` with `ratio = |q|^{exponent}`, `exponent = power (1 - t) - 2`.
fn limiting_ratio(q: &QParam, t: f64, power: u32) -> (f64, f64) {
    let e = power as f64 * (1.0 - t) - 2.0;
    if e.abs() < BOUNDARY_EPS {
        (0.0, 1.0)
    } else {
        (e, q.abs().powf(e))
    }
}

pub fn summability_report(q: &QParam, t: f64, power: u32, d_max: u32) -> Result<SummabilityReport> {
    check_open_unit(t)?;
    check_power(power)?;
    let mut terms = Vec::with_capacity(d_max as usize + 1);
    let mut partial_sums = Vec::with_capacity(d_max as usize + 1);
    let mut acc = 0.0;
    for d in 0..=d_max {
        let term = cb_budget(q, t, d, power)?.term;
        acc += term;
        terms.push(term);
        partial_sums.push(acc);
    }
    let (e, ratio) = limiting_ratio(q, t, power);
    Ok(SummabilityReport {
        q: q.q(),
        t_or_z: t,
        power,
        d_max,
        terms,
        partial_sums,
        limiting_ratio: ratio,
        converges: e > 0.0,
    })
}

/// Bisection for the largest `t` at which the budget still converges.
pub fn locate_summability_boundary(q: &QParam, power: u32, tol: f64) -> Result<f64> {
    check_power(power)?;
    let converges = |t: f64| limiting_ratio(q, t, power).0 > 0.0;
    let (mut lo, mut hi) = (f64::MIN_POSITIVE, 1.0 - f64::EPSILON);
    if !converges(lo) {
        return Err(Error::Divergent {
            ratio: limiting_ratio(q, lo, power).1,
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if converges(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A finitely supported replacement for `Psi_t^power`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncation {
    pub d_cut: u32,
    /// Certified bound on `sum_{d > d_cut} |b_d(t)|^power mu_d(gauge)^2`.
    pub cb_error_bound: f64,
}

const MAX_DEGREE: u64 = 10_000_000;

/// Smallest `d_cut` whose certified tail is below `eps`.
///
/// The tail is the exact sum up to a far cut-off `D` plus the geometric
/// majorant `C rho^{D+1} / (1 - rho)` from
/// `|b_d(t)|^power mu_d^2 <= (1 - |q|^{2t})^{-power} (1 - |q|^2)^{-2} rho^d`,
/// `rho = |q|^{power (1 - t) - 2}`.
pub fn truncate_multiplier(q: &QParam, t: f64, power: u32, eps: f64) -> Result<Truncation> {
    check_open_unit(t)?;
    check_power(power)?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "eps = {eps} must be positive"
        )));
    }
    let (e, rho) = limiting_ratio(q, t, power);
    if e <= 0.0 {
        return Err(Error::Divergent { ratio: rho });
    }
    let a = q.abs();
    let ln_c = -(power as f64) * (-(2.0 * t * a.ln()).exp_m1()).ln()
        - 2.0 * (-(2.0 * a.ln()).exp_m1()).ln();
    let ln_rho = rho.ln();
    // ln of the majorant tail beyond D
    let ln_major = |big_d: u64| ln_c + (big_d as f64 + 1.0) * ln_rho - (-ln_rho.exp_m1()).ln();

    let target = eps.ln() + (1e-6f64).ln();
    let far = ((target - ln_c + (-ln_rho.exp_m1()).ln()) / ln_rho - 1.0)
        .ceil()
        .max(1.0) as u64;
    if far > MAX_DEGREE {
        return Err(Error::Infeasible(MAX_DEGREE as usize));
    }
    debug_assert!(ln_major(far) <= target + 1e-9);
    let far = far as u32;

    let mut terms = Vec::with_capacity(far as usize + 1);
    for d in 0..=far {
        terms.push(cb_budget(q, t, d, power)?.term);
    }
    // tails[D] = sum_{D < d <= far} terms[d] + majorant beyond far
    let mut tail = ln_major(far as u64).exp();
    let mut tails = vec![0.0; far as usize + 1];
    for d in (0..=far as usize).rev() {
        tails[d] = tail;
        tail += terms[d];
    }
    let d_cut = tails
        .iter()
        .position(|&s| s < eps)
        .expect("far cut-off certifies eps") as u32;
    Ok(Truncation {
        d_cut,
        cb_error_bound: tails[d_cut as usize],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64) -> QParam {
        QParam::new(v).unwrap()
    }

    fn re(t: f64) -> C64 {
        C64::new(t, 0.0)
    }

    #[test]
    fn b_examples() {
        let qq = q(0.5);
        assert_eq!(b_coeff(&qq, C64::new(0.4, 1.3), 0).unwrap(), re(1.0));
        for d in 0..40 {
            assert!((b_coeff(&qq, re(1.0), d).unwrap() - re(1.0)).norm() < 1e-14);
        }
        // mu_3(2) / mu_3(2.5) = 4 / (2.5^3 - 2 * 2.5)
        let expect = 4.0 / (2.5f64.powi(3) - 5.0);
        assert!((b_coeff(&qq, re(0.0), 3).unwrap().re - expect).abs() < 1e-15);
        assert!((expect - 0.3764706).abs() < 1e-7);
    }

    #[test]
    fn b_at_zero_is_dim_over_qdim() {
        let qq = q(0.3);
        for d in 0..30u32 {
            let ratio = (d as f64 + 1.0) / chebyshev_mu_real(d, qq.gauge());
            let b = b_coeff(&qq, re(0.0), d).unwrap();
            assert!((b.re - ratio).abs() < 1e-13 * ratio);
        }
    }

    #[test]
    fn b_rejects_outside_strip() {
        assert!(b_coeff(&q(0.5), re(1.2), 3).is_err());
        assert!(b_coeff(&q(0.5), re(f64::NAN), 3).is_err());
        assert!(MultiplierFamily::new(q(0.5), re(1.0), MultiplierKind::Raw).is_err());
    }

    #[test]
    fn b_near_removable_point() {
        let qq = q(0.5);
        let tiny = b_coeff(&qq, C64::new(1e-9, 1e-9), 5).unwrap();
        let zero = b_coeff(&qq, re(0.0), 5).unwrap();
        assert!((tiny - zero).norm() < 1e-7);
        let period = std::f64::consts::PI / 0.5f64.ln().abs();
        let on = b_coeff(&qq, C64::new(0.0, period), 4).unwrap();
        // |q|^{2z} = 1 there: mu_4(-2) = 5
        assert!((on - re(5.0 / chebyshev_mu_real(4, 2.5))).norm() < 1e-9);
    }

    #[test]
    fn large_degree_does_not_overflow() {
        let b = b_coeff(&q(0.5), re(0.3), 1000).unwrap();
        assert!(b.re.is_finite() && b.re > 0.0);
        assert!((b.re.ln() / 1000.0 - 0.7 * 0.5f64.ln()).abs() < 1e-3);
    }

    #[test]
    fn cubed_family() {
        let f = MultiplierFamily::new(q(0.5), re(0.2), MultiplierKind::Cubed).unwrap();
        let b = b_coeff(&q(0.5), re(0.2), 7).unwrap();
        assert!((f.coeff(7) - b * b * b).norm() < 1e-15);
    }

    #[test]
    fn decay_rate_examples() {
        let qq = q(0.5);
        assert!(
            (decay_rate(&qq, re(0.5)).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15
        );
        let b60 = b_coeff(&qq, re(0.3), 60).unwrap().re;
        let b61 = b_coeff(&qq, re(0.3), 61).unwrap().re;
        assert!(((b61 / b60) - 0.5f64.powf(0.7)).abs() < 1e-6);
        assert!((decay_rate(&q(0.9), re(0.999)).unwrap() - 0.9f64.powf(0.001)).abs() < 1e-15);
        assert!((decay_rate(&q(0.9), re(0.999)).unwrap() - 0.9998946).abs() < 1e-7);
        assert!(decay_rate(&qq, re(0.0)).is_err());
        assert!(decay_rate(&qq, re(-0.2)).is_err());
    }

    #[test]
    fn summability_examples() {
        let qq = q(0.5);
        let r = summability_report(&qq, 0.29, 3, 50).unwrap();
        assert!(r.converges);
        assert!((r.limiting_ratio - 0.5f64.powf(0.13)).abs() < 1e-12);
        assert_eq!(r.terms.len(), 51);
        let r = summability_report(&qq, 0.5, 3, 10).unwrap();
        assert!(!r.converges);
        assert!((r.limiting_ratio - 2f64.sqrt()).abs() < 1e-12);
        let r = summability_report(&q(0.7), 1.0 / 3.0, 3, 5).unwrap();
        assert_eq!(r.limiting_ratio, 1.0);
        assert!(!r.converges);
        assert!(summability_report(&qq, 1.0, 3, 5).is_err());
        assert!(summability_report(&qq, 0.2, 0, 5).is_err());
    }

    #[test]
    fn cb_budget_lower_bound() {
        for d in 0..50 {
            let b = cb_budget(&q(0.6), 0.2, d, 3).unwrap();
            let dd = (d as f64 + 1.0).powi(2);
            assert!(b.proj_bound >= dd * (1.0 - 1e-12));
        }
    }

    #[test]
    fn truncation_examples() {
        let qq = q(0.5);
        let tr = truncate_multiplier(&qq, 0.29, 3, 1e-6).unwrap();
        assert!(tr.cb_error_bound < 1e-6);
        // direct summation past d_cut stays below the certified bound
        let direct: f64 = (tr.d_cut + 1..tr.d_cut + 3000)
            .map(|d| cb_budget(&qq, 0.29, d, 3).unwrap().term)
            .sum();
        assert!(direct <= tr.cb_error_bound);
        // and d_cut - 1 would not have been enough
        let prev: f64 = (tr.d_cut..tr.d_cut + 3000)
            .map(|d| cb_budget(&qq, 0.29, d, 3).unwrap().term)
            .sum();
        assert!(prev >= 1e-6 * 0.999);

        let fast = truncate_multiplier(&qq, 0.1, 3, 1e-3).unwrap();
        let slow = truncate_multiplier(&qq, 0.29, 3, 1e-3).unwrap();
        assert!(fast.d_cut < slow.d_cut);

        let huge = truncate_multiplier(&qq, 0.1, 3, 1e6).unwrap();
        assert_eq!(huge.d_cut, 0);

        assert!(matches!(
            truncate_multiplier(&qq, 0.5, 3, 1e-3),
            Err(Error::Divergent { .. })
        ));
    }

    #[test]
    fn boundary_bisection() {
        let t = locate_summability_boundary(&q(0.5), 3, 1e-6).unwrap();
        assert!((t - 1.0 / 3.0).abs() < 1e-5);
        assert!(locate_summability_boundary(&q(0.5), 2, 1e-6).is_err());
    }
}
