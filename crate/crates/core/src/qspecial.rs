//! q-special functions: dilated Chebyshev polynomials of the second kind,
//! q-Pochhammer symbols, q-binomial coefficients and the dilated continuous
//! q-Hermite polynomials.
//!
//! All routines evaluate in double precision. The Chebyshev and q-Hermite
//! recurrences are forward-stable in the parameter ranges used by the rest of
//! the crate (arguments on or outside `[-2, 2]`, where the wanted solution is
//! dominant).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// The deformation parameter `q`, restricted to `0 < |q| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct QParam {
    q: f64,
}

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() || q == 0.0 || q.abs() >= 1.0 {
            return Err(Error::InvalidQ(q));
        }
        Ok(QParam { q })
    }

    /// The positive parameter `0 < q < 1` with `q + 1/q = gauge`.
    pub fn from_gauge(gauge: f64) -> Result<Self> {
        if !gauge.is_finite() || gauge <= 2.0 {
            return Err(Error::InvalidArgument(format!(
                "gauge q + 1/q = {gauge} must exceed 2"
            )));
        }
        // Smaller root of q^2 - g q + 1, written to avoid cancellation.
        let q = 2.0 / (gauge + (gauge * gauge - 4.0).sqrt());
        QParam::new(q)
    }

    /// The signed value.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// `|q|`, the value every multiplier and spectral construction uses.
    pub fn abs(&self) -> f64 {
        self.q.abs()
    }

    /// `|q| + 1/|q|`, the quantum dimension of the fundamental representation.
    pub fn gauge(&self) -> f64 {
        let a = self.abs();
        a + 1.0 / a
    }

    /// Sign of `q`; it only enters as an overall factor of the eigenvalue of
    /// the twisted character.
    pub fn sign(&self) -> f64 {
        self.q.signum()
    }

    /// `|q|^z` for complex `z`.
    pub fn abs_pow(&self, z: C64) -> C64 {
        (z * self.abs().ln()).exp()
    }
}

impl TryFrom<f64> for QParam {
    type Error = Error;
    fn try_from(q: f64) -> Result<Self> {
        QParam::new(q)
    }
}

impl From<QParam> for f64 {
    fn from(q: QParam) -> f64 {
        q.q
    }
}

/// Dilated Chebyshev polynomial of the second kind `mu_d(x)`, defined by
/// `mu_0 = 1`, `mu_1 = x` and `x mu_k = mu_{k-1} + mu_{k+1}`.
pub fn chebyshev_mu(d: u32, x: C64) -> C64 {
    let mut prev = C64::new(1.0, 0.0);
    if d == 0 {
        return prev;
    }
    let mut cur = x;
    for _ in 1..d {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Real-argument version of [`chebyshev_mu`].
pub fn chebyshev_mu_real(d: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if d == 0 {
        return prev;
    }
    let mut cur = x;
    for _ in 1..d {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact `mu_d(n)` at an integer argument, or `None` on overflow.
pub fn chebyshev_mu_int(d: u32, n: i64) -> Option<i128> {
    let x = n as i128;
    let mut prev: i128 = 1;
    if d == 0 {
        return Some(prev);
    }
    let mut cur = x;
    for _ in 1..d {
        let next = x.checked_mul(cur)?.checked_sub(prev)?;
        prev = cur;
        cur = next;
    }
    Some(cur)
}

/// `mu_d(x)` for real `x`, taking the exact integer path whenever `x` is an
/// integer and the result fits; otherwise the floating-point recurrence.
pub fn chebyshev_mu_exact(d: u32, x: f64) -> f64 {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        if let Some(v) = chebyshev_mu_int(d, x as i64) {
            return v as f64;
        }
    }
    chebyshev_mu_real(d, x)
}

/// Closed form `mu_d(y + 1/y) = (y^{d+1} - y^{-(d+1)}) / (y - 1/y)`.
///
/// At `y = +-1` the removable singularity is filled in with `(d+1) y^d`.
pub fn chebyshev_mu_closed(d: u32, y: C64) -> C64 {
    let inv = y.inv();
    let den = y - inv;
    if den.norm() <= 1e-12 * y.norm().max(1.0) {
        return y.powu(d) * (d as f64 + 1.0);
    }
    (y.powu(d + 1) - inv.powu(d + 1)) / den
}

/// q-Pochhammer symbol `(x; q)_k = (1 - x)(1 - xq)...(1 - xq^{k-1})`.
pub fn q_pochhammer(x: C64, q: f64, k: u32) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut xp = x;
    for _ in 0..k {
        acc *= C64::new(1.0, 0.0) - xp;
        xp *= q;
    }
    acc
}

/// Real version of [`q_pochhammer`].
pub fn q_pochhammer_real(x: f64, q: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    let mut xp = x;
    for _ in 0..k {
        acc *= 1.0 - xp;
        xp *= q;
    }
    acc
}

/// A rigorous lower bound for `(q; q)_infinity`, `0 < q < 1`.
///
/// The product is taken until `q^k < 1e-18`; the omitted factors are bounded
/// below through `prod (1 - x_k) >= 1 - sum x_k`.
pub fn q_pochhammer_infinity_lower(q: f64) -> f64 {
    debug_assert!(q > 0.0 && q < 1.0);
    let mut acc = 1.0;
    let mut qk = q;
    while qk >= 1e-18 {
        acc *= 1.0 - qk;
        qk *= q;
    }
    // remaining factors: k with q^k = qk, qk*q, ...
    acc * (1.0 - qk / (1.0 - q))
}

/// q-binomial coefficient `(q;q)_n / ((q;q)_k (q;q)_{n-k})`.
pub fn q_binomial(n: u32, k: u32, q: f64) -> Result<f64> {
    if k > n {
        return Err(Error::BinomialRange { n, k });
    }
    // Use the shorter of the two equal products.
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 1..=k {
        acc *= (1.0 - q.powi((n - k + i) as i32)) / (1.0 - q.powi(i as i32));
    }
    Ok(acc)
}

/// Row `[n 0]_q, ..., [n n]_q` of the q-Pascal triangle, built by
/// `[n k] = [n-1 k-1] + q^k [n-1 k]`.
pub fn q_binomial_row(n: u32, q: f64) -> Vec<f64> {
    let mut row = vec![1.0];
    for m in 1..=n {
        row = next_q_pascal_row(&row, m, q);
    }
    row
}

/// Advances a q-Pascal row from `m - 1` to `m`.
pub(crate) fn next_q_pascal_row(prev: &[f64], m: u32, q: f64) -> Vec<f64> {
    let m = m as usize;
    debug_assert_eq!(prev.len(), m);
    let mut next = vec![1.0; m + 1];
    let mut qk = q;
    for k in 1..m {
        next[k] = prev[k - 1] + qk * prev[k];
        qk *= q;
    }
    next
}

/// Root `y` of `y + 1/y = x` with `|y| >= 1`.
pub fn hermite_branch(x: C64) -> C64 {
    let s = (x * x - 4.0).sqrt();
    let y1 = (x + s) * 0.5;
    let y2 = (x - s) * 0.5;
    if y1.norm() >= y2.norm() {
        y1
    } else {
        y2
    }
}

/// Dilated continuous q-Hermite polynomial `H_n(x; q)` from the three-term
/// recurrence `x H_n = H_{n+1} + (1 - q^n) H_{n-1}`.
pub fn q_hermite(n: u32, x: C64, q: f64) -> C64 {
    let mut prev = C64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    let mut qn = q;
    for _ in 1..n {
        let next = x * cur - prev * (1.0 - qn);
        prev = cur;
        cur = next;
        qn *= q;
    }
    cur
}

/// `H_n(x; q)` from the explicit sum `sum_k [n k]_q y^{n-2k}` with the branch
/// of [`hermite_branch`].
pub fn q_hermite_sum(n: u32, x: C64, q: f64) -> C64 {
    q_hermite_from_y(n, hermite_branch(x), q)
}

/// `H_n(y + 1/y; q)` from the explicit sum, given `y` directly.
pub fn q_hermite_from_y(n: u32, y: C64, q: f64) -> C64 {
    let row = q_binomial_row(n, q);
    hermite_sum_with_row(&row, y)
}

pub(crate) fn hermite_sum_with_row(row: &[f64], y: C64) -> C64 {
    let n = row.len() - 1;
    let inv = y.inv();
    // y^{n-2k} = y^n * (y^{-2})^k
    let step = inv * inv;
    let mut pow = y.powu(n as u32);
    let mut acc = C64::new(0.0, 0.0);
    for &c in row {
        acc += pow * c;
        pow *= step;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn qparam_rejects_out_of_range() {
        assert!(QParam::new(0.0).is_err());
        assert!(QParam::new(1.0).is_err());
        assert!(QParam::new(-1.2).is_err());
        assert!(QParam::new(f64::NAN).is_err());
        let q = QParam::new(-0.5).unwrap();
        assert_eq!(q.abs(), 0.5);
        assert_eq!(q.gauge(), 2.5);
        assert_eq!(q.sign(), -1.0);
    }

    #[test]
    fn qparam_from_gauge_inverts() {
        let q = QParam::from_gauge(2.5).unwrap();
        assert!((q.q() - 0.5).abs() < 1e-15);
        assert!(QParam::from_gauge(2.0).is_err());
    }

    #[test]
    fn chebyshev_examples() {
        let x = C64::new(0.3, -1.7);
        assert_eq!(chebyshev_mu(1, x), x);
        assert_eq!(chebyshev_mu(0, x), c(1.0));
        assert_eq!(chebyshev_mu_real(3, 2.0), 4.0);
        assert!((chebyshev_mu_real(2, 2.5) - 5.25).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_at_two_is_exact() {
        for d in 0..=50 {
            assert_eq!(chebyshev_mu_int(d, 2), Some(d as i128 + 1));
            assert_eq!(chebyshev_mu_exact(d, 2.0), d as f64 + 1.0);
        }
    }

    #[test]
    fn chebyshev_integer_overflow_falls_back() {
        assert_eq!(chebyshev_mu_int(200, 10), None);
        let v = chebyshev_mu_exact(200, 10.0);
        let r = chebyshev_mu_real(200, 10.0);
        assert_eq!(v, r);
    }

    #[test]
    fn chebyshev_closed_form_removable_point() {
        assert_eq!(chebyshev_mu_closed(5, c(1.0)), c(6.0));
        assert_eq!(chebyshev_mu_closed(3, c(-1.0)), c(-4.0));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(q_pochhammer(C64::new(0.7, 0.2), 0.3, 0), c(1.0));
        assert!((q_pochhammer(c(0.25), 0.25, 1) - c(0.75)).norm() < 1e-16);
        assert!((q_pochhammer(c(0.5), 0.5, 2) - c(0.375)).norm() < 1e-16);
        assert_eq!(q_pochhammer_real(0.5, 0.5, 2), 0.375);
    }

    #[test]
    fn pochhammer_infinity_lower_bound() {
        for &q in &[0.04, 0.25, 0.81] {
            let lower = q_pochhammer_infinity_lower(q);
            let finite = q_pochhammer_real(q, q, 2000);
            assert!(lower <= finite);
            assert!((finite - lower) / finite < 1e-14);
        }
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(7, 0, 0.3).unwrap(), 1.0);
        let q = 0.37;
        assert!((q_binomial(2, 1, q).unwrap() - (1.0 + q)).abs() < 1e-15);
        // [4 2]_q = 1 + q + 2q^2 + q^3 + q^4
        let q: f64 = 0.5;
        let expanded = 1.0 + q + 2.0 * q * q + q.powi(3) + q.powi(4);
        assert_eq!(expanded, 2.1875);
        assert!((q_binomial(4, 2, q).unwrap() - expanded).abs() < 1e-15);
        assert_eq!(
            q_binomial(2, 3, 0.5),
            Err(Error::BinomialRange { n: 2, k: 3 })
        );
    }

    #[test]
    fn q_binomial_row_matches_product() {
        let q = 0.64;
        let row = q_binomial_row(9, q);
        for (k, v) in row.iter().enumerate() {
            let p = q_binomial(9, k as u32, q).unwrap();
            assert!((v - p).abs() < 1e-13 * p);
        }
    }

    #[test]
    fn q_hermite_examples() {
        let x = C64::new(2.7, 0.4);
        let q = 0.3;
        assert_eq!(q_hermite(0, x, q), c(1.0));
        assert_eq!(q_hermite(1, x, q), x);
        assert!((q_hermite(2, x, q) - (x * x + q - 1.0)).norm() < 1e-14);
        assert!((q_hermite_sum(1, x, q) - x).norm() < 1e-14);
        assert!((q_hermite_sum(2, x, q) - (x * x + q - 1.0)).norm() < 1e-13);
    }

    #[test]
    fn hermite_branch_has_modulus_at_least_one() {
        for &x in &[c(2.5), c(-3.0), C64::new(0.1, 0.2), C64::new(-1.0, 4.0)] {
            let y = hermite_branch(x);
            assert!(y.norm() >= 1.0 - 1e-12);
            assert!((y + y.inv() - x).norm() < 1e-12);
        }
        assert!((hermite_branch(c(2.5)) - c(2.0)).norm() < 1e-15);
    }
}
