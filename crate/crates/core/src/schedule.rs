//! Truncation schedule for approximating a free product of two quantum
//! groups with the approximation property.
//!
//! The radial multiplier `T_r` with `r = 1 - 1/sqrt(N)` is cut at word length
//! `N`; the discarded part costs at most `4 N r^N / (1 - r)^2` and each of the
//! `N` kept blocks costs `4 d 2^d eps` when the factors are approximated to
//! within `eps`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest word length tried by [`plan`].
pub const MAX_N: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FreeProdSchedule {
    pub delta: f64,
    #[serde(rename = "N")]
    pub n: usize,
    /// `1 - 1/sqrt(N)`.
    pub r: f64,
    /// Per-factor cb tolerance. Underflows to zero once `N` exceeds about
    /// 1000; `ln_eps` stays exact.
    pub eps: f64,
    pub ln_eps: f64,
    /// `4 N r^N / (1 - r)^2`.
    pub tail_bound: f64,
    /// `sum_{d=1}^N 4 d 2^d eps`.
    pub block_error: f64,
}

/// `4 n r^n / (1 - r)^2`, evaluated in log space.
pub fn tail_bound(n: usize, r: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidArgument(format!(
            "r = {r} must lie in [0, 1)"
        )));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let n = n as f64;
    Ok(((4.0 * n).ln() + n * r.ln() - 2.0 * (-r).ln_1p()).exp())
}

/// `ln sum_{d=1}^N 4 d 2^d`, from `sum_{d=1}^N d 2^d = (N - 1) 2^{N+1} + 2`.
pub fn ln_block_weight(n: usize) -> f64 {
    let nf = n as f64;
    4f64.ln() + (nf + 1.0) * 2f64.ln() + (nf - 1.0 + (-nf * 2f64.ln()).exp()).ln()
}

/// `(2d + 1)(1 + eps)^d`, the cb bound of one kept block.
pub fn block_cb_bound(d: usize, eps: f64) -> f64 {
    (2.0 * d as f64 + 1.0) * (d as f64 * eps.ln_1p()).exp()
}

/// `r = 1 - 1/sqrt(N)`.
pub fn radius(n: usize) -> f64 {
    1.0 - 1.0 / (n as f64).sqrt()
}

/// Smallest `N >= 2` with `tail_bound(N, 1 - 1/sqrt(N)) < delta`, and the
/// `eps` that makes the block error exactly `delta / 2`.
///
/// `N = 1` is skipped: there `r = 0` and the radial multiplier is the
/// projection onto the unit.
pub fn plan(delta: f64) -> Result<FreeProdSchedule> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "delta = {delta} must lie in (0, 1)"
        )));
    }
    let mut found = None;
    for n in 2..=MAX_N {
        let tail = tail_bound(n, radius(n))?;
        if tail < delta {
            found = Some((n, tail));
            break;
        }
    }
    let (n, tail) = found.ok_or(Error::Infeasible(MAX_N))?;
    let ln_eps = delta.ln() - 2f64.ln() - ln_block_weight(n);
    let block_error = (ln_block_weight(n) + ln_eps).exp();
    let schedule = FreeProdSchedule {
        delta,
        n,
        r: radius(n),
        eps: ln_eps.exp(),
        ln_eps,
        tail_bound: tail,
        block_error,
    };
    debug_assert!(schedule.tail_bound < delta && schedule.block_error < delta);
    Ok(schedule)
}
