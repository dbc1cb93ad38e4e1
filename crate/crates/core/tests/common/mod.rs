#![allow(dead_code)]

use nalgebra::DMatrix;
use qcentral::C64;
use rand::Rng;
use rand_distr::StandardNormal;
use twofloat::TwoFloat;

pub fn gaussian_matrix<R: Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of the diagonal of R moved into Q.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> DMatrix<C64> {
    let qr = gaussian_matrix(rng, n).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `mu_d(x)` by the plain three-term recurrence.
pub fn mu(d: u32, x: C64) -> C64 {
    let (mut prev, mut cur) = (C64::new(1.0, 0.0), x);
    if d == 0 {
        return prev;
    }
    for _ in 1..d {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `b_d(z)` as a ratio of two recurrences in `|q|^z + |q|^{-z}` and `|q| + 1/|q|`.
pub fn b_oracle(q: f64, z: C64, d: u32) -> C64 {
    let a = q.abs();
    let y = C64::new(a, 0.0).powc(z);
    mu(d, y + y.inv()) / mu(d, C64::new(a + 1.0 / a, 0.0)).re
}

/// `1/x` to double-double accuracy; one Newton step on the double reciprocal
/// (the library's own reciprocal is only double accurate).
fn recip_dd(x: TwoFloat) -> TwoFloat {
    let r = TwoFloat::from(1.0 / x.hi());
    r + r * (TwoFloat::from(1.0) - x * r)
}

fn mu_dd(d: u32, x: TwoFloat) -> TwoFloat {
    let (mut prev, mut cur) = (TwoFloat::from(1.0), x);
    if d == 0 {
        return prev;
    }
    for _ in 1..d {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Real `b_d(t)` from the recurrence ratio in double-double arithmetic.
///
/// Near `x = 2` the recurrence amplifies the rounding of `x = y + 1/y` by
/// roughly `d / (1/y - y)`, so the argument is formed in extended precision
/// from the double `y = |q|^t`.
pub fn b_oracle_dd(q: f64, t: f64, d: u32) -> f64 {
    let a = TwoFloat::from(q.abs());
    let y = TwoFloat::from(q.abs().powf(t));
    let num = mu_dd(d, y + recip_dd(y));
    let den = mu_dd(d, a + recip_dd(a));
    f64::from(num / den)
}
