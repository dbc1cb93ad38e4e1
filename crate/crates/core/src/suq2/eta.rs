use crate::error::{Error, Result};
use crate::qspecial::{next_q_pascal_row, q_pochhammer_infinity_lower, QParam};
use crate::C64;

use super::operator::BandedOperator;

/// Truncated coefficient sequence of the eigenvector `eta_z` of the Jacobi
/// operator, with eigenvalue `|q|^z + |q|^{-z}`.
///
/// `p_n(z) = |q|^n / sqrt((q^2; q^2)_n) * H_n(|q|^z + |q|^{-z}; q^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaVector {
    z: C64,
    coeffs: Vec<C64>,
    c_z: C64,
    tail_bound: f64,
    eigenvalue: C64,
}

impl EtaVector {
    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// `C_z = sum_n p_n(z)^2`, the unconjugated square sum.
    pub fn c_z(&self) -> C64 {
        self.c_z
    }

    /// Upper bound on `sum_{n >= len} |p_n(z)|^2`.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// `|q|^z + |q|^{-z}`.
    pub fn eigenvalue(&self) -> C64 {
        self.eigenvalue
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Eigen-equation diagnostics against a Jacobi truncation of the same size.
    pub fn eigen_check(&self, jacobi: &BandedOperator) -> Result<EigenCheck> {
        if jacobi.dim() != self.coeffs.len() {
            return Err(Error::InvalidArgument(format!(
                "Jacobi truncation has size {}, eta has {} coefficients",
                jacobi.dim(),
                self.coeffs.len()
            )));
        }
        let t_eta = jacobi.apply(&self.coeffs);
        let lambda = self.eigenvalue;
        let norm = self.norm();
        let valid = jacobi.valid_rows();

        let mut num = C64::new(0.0, 0.0);
        let mut den = 0.0;
        let mut res_valid = 0.0;
        let mut res_full = 0.0;
        for (n, (te, p)) in t_eta.iter().zip(&self.coeffs).enumerate() {
            let r = (te - lambda * p).norm_sqr();
            res_full += r;
            if valid.contains(&n) {
                res_valid += r;
                num += te * p.conj();
                den += p.norm_sqr();
            }
        }
        Ok(EigenCheck {
            eigenvalue: lambda,
            rayleigh: num / den,
            residual_valid: res_valid.sqrt() / norm,
            residual_full: res_full.sqrt() / norm,
        })
    }
}

/// Result of [`EtaVector::eigen_check`]. Residuals are relative to `||eta||`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenCheck {
    /// Closed-form eigenvalue.
    pub eigenvalue: C64,
    /// Rayleigh quotient over the valid rows.
    pub rayleigh: C64,
    /// `||T eta - lambda eta||` restricted to rows unaffected by truncation.
    pub residual_valid: f64,
    /// The same residual over all rows, dominated by the truncation edge.
    pub residual_full: f64,
}

fn check_strip(z: C64) -> Result<()> {
    if !(z.re > -1.0 && z.re < 1.0) {
        return Err(Error::OutsideStrip {
            re: z.re,
            range: "(-1, 1)",
        });
    }
    Ok(())
}

/// Coefficients `p_0(z), ..., p_{n_tr-1}(z)` together with `C_z` and a tail
/// bound.
pub fn eta_vector(q: &QParam, z: C64, n_tr: usize) -> Result<EtaVector> {
    check_strip(z)?;
    if n_tr == 0 {
        return Err(Error::TruncationTooSmall { got: 0, min: 1 });
    }
    let a = q.abs();
    let ln_a = a.ln();
    let q2 = a * a;
    // p_n is even in z; work with Re(z) >= 0 so that every summand
    // |q|^{n + z(n - 2k)} has modulus at most one.
    let zz = if z.re < 0.0 { -z } else { z };
    let w = (zz * (2.0 * ln_a)).exp();

    let mut coeffs = Vec::with_capacity(n_tr);
    let mut row = vec![1.0];
    let mut poch = 1.0;
    for n in 0..n_tr {
        if n > 0 {
            row = next_q_pascal_row(&row, n as u32, q2);
            poch *= 1.0 - q2.powi(n as i32);
        }
        // k = n term is |q|^{n(1 - z)}; walking k downwards multiplies by w.
        let mut term = ((C64::new(1.0, 0.0) - zz) * (n as f64 * ln_a)).exp();
        let mut acc = C64::new(0.0, 0.0);
        for k in (0..=n).rev() {
            acc += term * row[k];
            term *= w;
        }
        coeffs.push(acc / poch.sqrt());
    }
    let c_z = coeffs.iter().map(|p| p * p).sum();
    Ok(EtaVector {
        z,
        c_z,
        tail_bound: eta_tail_bound(q, z.re, n_tr),
        eigenvalue: q.abs_pow(z) + q.abs_pow(-z),
        coeffs,
    })
}

/// Upper bound on `sum_{n >= from} |p_n(z)|^2` depending only on `Re(z)`.
///
/// Uses `|p_n(z)| <= P^{-3/2} m_n |q|^{(1 - |Re z|) n}` with
/// `P = (q^2; q^2)_infinity` and `m_n = min(n + 1, 1 / (1 - |q|^{2|Re z|}))`.
pub fn eta_tail_bound(q: &QParam, re_z: f64, from: usize) -> f64 {
    let a = q.abs();
    let tau = re_z.abs();
    let p_inf = q_pochhammer_infinity_lower(a * a);
    let k2 = p_inf.powi(-3);
    let x = a.powf(2.0 * (1.0 - tau));
    let xn = x.powi(from as i32);
    // sum_{n >= from} (n + 1)^2 x^n
    let m = from as f64 + 1.0;
    let one_m = 1.0 - x;
    let poly = xn * (m * m / one_m + 2.0 * m * x / (one_m * one_m) + x * (1.0 + x) / one_m.powi(3));
    let bound = if tau > 0.0 {
        let big_m = 1.0 / (1.0 - a.powf(2.0 * tau));
        poly.min(big_m * big_m * xn / one_m)
    } else {
        poly
    };
    k2 * bound
}

/// Smallest `n` with `eta_tail_bound(q, re_z, n) < threshold`.
pub fn decay_length(q: &QParam, re_z: f64, threshold: f64) -> usize {
    // The bound is eventually decreasing; a doubling search then bisection.
    let below = |n: usize| eta_tail_bound(q, re_z, n) < threshold;
    let mut hi = 1usize;
    while !below(hi) {
        hi *= 2;
        if hi > 1 << 40 {
            return usize::MAX;
        }
    }
    let mut lo = 0usize;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if below(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if below(lo) {
        lo
    } else {
        hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qspecial::{q_hermite, q_pochhammer_real};
    use crate::suq2::operator::build_jacobi;

    fn q(v: f64) -> QParam {
        QParam::new(v).unwrap()
    }

    #[test]
    fn first_coefficient_is_one() {
        let e = eta_vector(&q(0.5), C64::new(0.0, 0.0), 1).unwrap();
        assert_eq!(e.coeffs()[0], C64::new(1.0, 0.0));
        assert_eq!(e.c_z(), C64::new(1.0, 0.0));
    }

    #[test]
    fn rejects_outside_strip() {
        assert!(eta_vector(&q(0.5), C64::new(1.0, 0.0), 10).is_err());
        assert!(eta_vector(&q(0.5), C64::new(-1.2, 0.3), 10).is_err());
        assert!(eta_vector(&q(0.5), C64::new(0.2, 0.0), 0).is_err());
    }

    #[test]
    fn matches_q_hermite_recurrence() {
        let qq = q(0.6);
        let z = C64::new(0.35, 0.8);
        let e = eta_vector(&qq, z, 30).unwrap();
        let x = qq.abs_pow(z) + qq.abs_pow(-z);
        for n in 0..30u32 {
            let expect = 0.6f64.powi(n as i32) / q_pochhammer_real(0.36, 0.36, n).sqrt()
                * q_hermite(n, x, 0.36);
            let got = e.coeffs()[n as usize];
            assert!(
                (got - expect).norm() <= 1e-11 * expect.norm().max(1e-300),
                "n={n}"
            );
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let e = eta_vector(&q(0.5), C64::new(0.3, 0.0), 200).unwrap();
        // 0.5^0.3 + 0.5^-0.3
        assert!((e.eigenvalue().re - 2.043396809701152).abs() < 1e-14);
        let t = build_jacobi(&q(0.5), 200).unwrap();
        let check = e.eigen_check(&t).unwrap();
        assert!(check.residual_valid < 1e-10);
        let e = eta_vector(&q(0.5), C64::new(0.5, 0.0), 10).unwrap();
        assert!((e.eigenvalue().re - 2.1213203).abs() < 1e-7);
    }

    #[test]
    fn tail_bound_dominates_actual_tail() {
        for &(qv, t) in &[(0.5, 0.0), (0.5, 0.6), (0.8, 0.9), (0.3, -0.4)] {
            let qq = q(qv);
            let long = eta_vector(&qq, C64::new(t, 0.0), 600).unwrap();
            for &from in &[10usize, 40, 100] {
                let actual: f64 = long.coeffs()[from..].iter().map(|c| c.norm_sqr()).sum();
                assert!(
                    eta_tail_bound(&qq, t, from) >= actual,
                    "q={qv} t={t} from={from}"
                );
            }
        }
    }

    #[test]
    fn decay_length_is_minimal() {
        let qq = q(0.5);
        let n = decay_length(&qq, 0.9, 1e-14);
        assert!(eta_tail_bound(&qq, 0.9, n) < 1e-14);
        assert!(eta_tail_bound(&qq, 0.9, n - 1) >= 1e-14);
    }
}
