use crate::error::{Error, Result};
use crate::qspecial::{chebyshev_mu_real, QParam};
use crate::C64;

use super::eta::{decay_length, eta_vector};
use super::operator::build_jacobi;

/// Threshold on the eta tail that fixes the decay length used by the
/// truncation guard.
pub const DECAY_TAIL_THRESHOLD: f64 = 1e-14;

/// Extra rows kept between the support of `mu_d(T) eta` and the truncation edge.
pub const GUARD_MARGIN: usize = 8;

/// Values of the holomorphic functional `theta_z` on the spin-`d/2`
/// coefficients, `values[d] = theta_z(u^{(d/2)}_{ii})`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaFunctional {
    z: C64,
    c_z: C64,
    values: Vec<C64>,
    pairings: Vec<C64>,
}

impl ThetaFunctional {
    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn c_z(&self) -> C64 {
        self.c_z
    }

    /// `theta_z(u^{(d/2)}_{ii})` for `d = 0..=d_max`.
    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Raw bilinear pairings `<mu_d(T) eta_z, eta_{conj z}>`, i.e. the values on
    /// the twisted characters before division by the quantum dimension.
    pub fn pairings(&self) -> &[C64] {
        &self.pairings
    }
}

/// Smallest truncation that supports `theta_pair(q, z, d_max, _)`.
pub fn required_truncation(q: &QParam, z: C64, d_max: usize) -> usize {
    decay_length(q, z.re, DECAY_TAIL_THRESHOLD)
        .saturating_add(d_max)
        .saturating_add(GUARD_MARGIN)
}

/// Evaluates `theta_z` on spins `0..=d_max` through the Chebyshev vector
/// recurrence `v_{k+1} = T v_k - v_{k-1}` applied to `eta_z`.
pub fn theta_pair(q: &QParam, z: C64, d_max: usize, n_tr: usize) -> Result<ThetaFunctional> {
    let eta = eta_vector(q, z, n_tr)?;
    let min = required_truncation(q, z, d_max);
    if n_tr < min {
        return Err(Error::TruncationTooSmall { got: n_tr, min });
    }
    let t = build_jacobi(q, n_tr)?;
    let p = eta.coeffs();
    let pair = |v: &[C64]| -> C64 { v.iter().zip(p).map(|(a, b)| a * b).sum() };

    let gauge = q.gauge();
    let mut pairings = Vec::with_capacity(d_max + 1);
    let mut prev = p.to_vec();
    pairings.push(pair(&prev));
    if d_max >= 1 {
        let mut cur = t.apply(&prev);
        pairings.push(pair(&cur));
        for _ in 2..=d_max {
            let mut next = t.apply(&cur);
            for (n, v) in next.iter_mut().enumerate() {
                *v -= prev[n];
            }
            prev = cur;
            cur = next;
            pairings.push(pair(&cur));
        }
    }
    let values = pairings
        .iter()
        .enumerate()
        .map(|(d, v)| v / chebyshev_mu_real(d as u32, gauge))
        .collect();
    Ok(ThetaFunctional {
        z,
        c_z: eta.c_z(),
        values,
        pairings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qspecial::chebyshev_mu_closed;

    fn q(v: f64) -> QParam {
        QParam::new(v).unwrap()
    }

    #[test]
    fn degree_zero_is_c_z() {
        let th = theta_pair(&q(0.4), C64::new(0.2, -0.5), 0, 120).unwrap();
        assert_eq!(th.values()[0], th.c_z());
    }

    #[test]
    fn complex_point_matches_closed_form() {
        let qq = q(0.5);
        let z = C64::new(0.3, 0.7);
        let th = theta_pair(&qq, z, 4, 300).unwrap();
        let y = qq.abs_pow(z);
        let expect = th.c_z() * chebyshev_mu_closed(4, y) / chebyshev_mu_real(4, 2.5);
        let got = th.values()[4];
        assert!(
            (got - expect).norm() < 1e-8 * expect.norm(),
            "{got} vs {expect}"
        );
    }

    #[test]
    fn rejects_insufficient_truncation() {
        let err = theta_pair(&q(0.5), C64::new(0.9, 0.0), 8, 100).unwrap_err();
        assert!(matches!(err, Error::TruncationTooSmall { got: 100, .. }));
    }
}
