use std::ops::{Range, RangeInclusive};

use crate::error::{Error, Result};
use crate::linalg;
use crate::qspecial::QParam;
use crate::C64;

const MIN_TRUNCATION: usize = 4;

/// A finite banded truncation of an operator on `l^2(N)`.
///
/// Rows `valid_rows()` are exactly the rows of the infinite operator; rows
/// beyond them may be polluted by the truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedOperator {
    dim: usize,
    lower: usize,
    upper: usize,
    // bands[o + lower][i] = A[i, i + o]
    bands: Vec<Vec<C64>>,
    guard: usize,
}

impl BandedOperator {
    pub fn zeros(dim: usize, lower: usize, upper: usize, guard: usize) -> Self {
        BandedOperator {
            dim,
            lower,
            upper,
            bands: vec![vec![C64::new(0.0, 0.0); dim]; lower + upper + 1],
            guard: guard.min(dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut id = BandedOperator::zeros(dim, 0, 0, 0);
        id.bands[0].fill(C64::new(1.0, 0.0));
        id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.lower
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.upper
    }

    pub fn bandwidth(&self) -> usize {
        self.lower.max(self.upper)
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    pub fn valid_rows(&self) -> Range<usize> {
        0..self.dim - self.guard
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        let o = j as isize - i as isize;
        if i >= self.dim || j >= self.dim || o < -(self.lower as isize) || o > self.upper as isize {
            return C64::new(0.0, 0.0);
        }
        self.bands[(o + self.lower as isize) as usize][i]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: C64) {
        let o = j as isize - i as isize;
        assert!(
            i < self.dim && j < self.dim && o >= -(self.lower as isize) && o <= self.upper as isize,
            "entry ({i}, {j}) outside the declared band"
        );
        self.bands[(o + self.lower as isize) as usize][i] = v;
    }

    /// Conjugate transpose. Truncation pollution is tracked conservatively:
    /// the guard is kept at least as large as the new upper bandwidth.
    pub fn adjoint(&self) -> Self {
        let mut out = BandedOperator::zeros(self.dim, self.upper, self.lower, self.guard);
        for i in 0..self.dim {
            for j in self.row_span(i) {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out.guard = out.guard.max(out.upper).min(self.dim);
        out
    }

    fn row_span(&self, i: usize) -> Range<usize> {
        i.saturating_sub(self.lower)..(i + self.upper + 1).min(self.dim)
    }

    /// Matrix product `self * rhs`; bandwidths and guards add.
    pub fn matmul(&self, rhs: &BandedOperator) -> Result<Self> {
        self.check_dims(rhs)?;
        let mut out = BandedOperator::zeros(
            self.dim,
            self.lower + rhs.lower,
            self.upper + rhs.upper,
            self.guard + rhs.guard,
        );
        for i in 0..self.dim {
            for k in self.row_span(i) {
                let a = self.get(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in rhs.row_span(k) {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * rhs.get(k, j));
                }
            }
        }
        Ok(out)
    }

    /// `a * self + b * rhs`.
    pub fn combine(&self, a: C64, rhs: &BandedOperator, b: C64) -> Result<Self> {
        self.check_dims(rhs)?;
        let mut out = BandedOperator::zeros(
            self.dim,
            self.lower.max(rhs.lower),
            self.upper.max(rhs.upper),
            self.guard.max(rhs.guard),
        );
        for i in 0..self.dim {
            let lo = i.saturating_sub(out.lower);
            let hi = (i + out.upper + 1).min(self.dim);
            for j in lo..hi {
                out.set(i, j, a * self.get(i, j) + b * rhs.get(i, j));
            }
        }
        Ok(out)
    }

    fn check_dims(&self, rhs: &BandedOperator) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::InvalidArgument(format!(
                "dimension mismatch: {} vs {}",
                self.dim, rhs.dim
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = self.clone();
        for band in &mut out.bands {
            for v in band.iter_mut() {
                *v *= c;
            }
        }
        out
    }

    /// Applies the operator to a vector of length `dim`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| self.row_span(i).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Largest entry modulus over the valid rows.
    pub fn max_abs_on_valid_rows(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in self.valid_rows() {
            for j in self.row_span(i) {
                m = m.max(self.get(i, j).norm());
            }
        }
        m
    }

    /// Largest entry modulus of `self - rhs` over the rows valid for both.
    pub fn max_deviation_on_valid_rows(&self, rhs: &BandedOperator) -> Result<f64> {
        let diff = self.combine(C64::new(1.0, 0.0), rhs, C64::new(-1.0, 0.0))?;
        Ok(diff.max_abs_on_valid_rows())
    }
}

fn check_truncation(n_tr: usize) -> Result<()> {
    if n_tr < MIN_TRUNCATION {
        return Err(Error::TruncationTooSmall {
            got: n_tr,
            min: MIN_TRUNCATION,
        });
    }
    Ok(())
}

/// `sqrt(1 - q^{2n})`.
fn shift_weight(q: f64, n: usize) -> f64 {
    (1.0 - (q * q).powi(n as i32)).sqrt()
}

/// Truncation of the first-leg representation of the generator `alpha`:
/// `e_n -> sqrt(1 - q^{2n}) e_{n-1}`.
pub fn build_alpha_toeplitz(q: &QParam, n_tr: usize) -> Result<BandedOperator> {
    check_truncation(n_tr)?;
    let mut a = BandedOperator::zeros(n_tr, 0, 1, 1);
    for n in 1..n_tr {
        a.set(n - 1, n, C64::new(shift_weight(q.q(), n), 0.0));
    }
    Ok(a)
}

/// The Jacobi operator `|q|^{-1} alpha + |q| alpha^*` on `l^2(N)`.
pub fn build_jacobi(q: &QParam, n_tr: usize) -> Result<BandedOperator> {
    check_truncation(n_tr)?;
    let a = q.abs();
    let mut t = BandedOperator::zeros(n_tr, 1, 1, 1);
    for n in 0..n_tr - 1 {
        let s = shift_weight(a, n + 1);
        t.set(n, n + 1, C64::new(s / a, 0.0));
        t.set(n + 1, n, C64::new(a * s, 0.0));
    }
    Ok(t)
}

/// Symmetric form of the Jacobi truncation: conjugating by `diag(|q|^n)`
/// turns both off-diagonals into `sqrt(1 - |q|^{2(n+1)})`. Returns
/// `(diagonal, off_diagonal)`.
pub fn jacobi_symmetrized(q: &QParam, n_tr: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_truncation(n_tr)?;
    let a = q.abs();
    let off = (0..n_tr - 1).map(|n| shift_weight(a, n + 1)).collect();
    Ok((vec![0.0; n_tr], off))
}

/// Eigenvalues (ascending) of the `n_tr` Jacobi truncation.
pub fn jacobi_spectrum(q: &QParam, n_tr: usize) -> Result<Vec<f64>> {
    let (d, e) = jacobi_symmetrized(q, n_tr)?;
    linalg::symmetric_tridiagonal_eigenvalues(&d, &e)
}

/// A truncated operator on `l^2(N) (x) l^2(window)`.
///
/// Basis vectors `e_n (x) e_k` are stored at flat index
/// `n * width + (k - window.start())`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorOperator {
    n_tr: usize,
    window: RangeInclusive<i64>,
    op: BandedOperator,
    guard_n: usize,
    guard_k: usize,
}

impl TensorOperator {
    fn width(window: &RangeInclusive<i64>) -> usize {
        (window.end() - window.start() + 1) as usize
    }

    fn new_zero(
        n_tr: usize,
        window: RangeInclusive<i64>,
        guard_n: usize,
        guard_k: usize,
    ) -> Result<Self> {
        check_truncation(n_tr)?;
        if window.is_empty() {
            return Err(Error::InvalidArgument("empty window".into()));
        }
        let w = Self::width(&window);
        Ok(TensorOperator {
            n_tr,
            op: BandedOperator::zeros(n_tr * w, w, w, 0),
            window,
            guard_n,
            guard_k,
        })
    }

    pub fn identity(n_tr: usize, window: RangeInclusive<i64>) -> Result<Self> {
        let mut t = Self::new_zero(n_tr, window, 0, 0)?;
        t.op = BandedOperator::identity(t.op.dim());
        Ok(t)
    }

    pub fn n_tr(&self) -> usize {
        self.n_tr
    }

    pub fn window(&self) -> &RangeInclusive<i64> {
        &self.window
    }

    fn index(&self, n: usize, k: i64) -> usize {
        n * Self::width(&self.window) + (k - self.window.start()) as usize
    }

    pub fn get(&self, (n, k): (usize, i64), (m, l): (usize, i64)) -> C64 {
        if n >= self.n_tr
            || m >= self.n_tr
            || !self.window.contains(&k)
            || !self.window.contains(&l)
        {
            return C64::new(0.0, 0.0);
        }
        self.op.get(self.index(n, k), self.index(m, l))
    }

    /// Whether row `e_n (x) e_k` is unaffected by truncation in either leg.
    pub fn is_valid_row(&self, n: usize, k: i64) -> bool {
        n + self.guard_n < self.n_tr
            && k - (self.guard_k as i64) >= *self.window.start()
            && k + (self.guard_k as i64) <= *self.window.end()
    }

    fn check_same_space(&self, rhs: &TensorOperator) -> Result<()> {
        if self.n_tr != rhs.n_tr || self.window != rhs.window {
            return Err(Error::InvalidArgument(
                "tensor operators act on different spaces".into(),
            ));
        }
        Ok(())
    }

    pub fn matmul(&self, rhs: &TensorOperator) -> Result<Self> {
        self.check_same_space(rhs)?;
        Ok(TensorOperator {
            n_tr: self.n_tr,
            window: self.window.clone(),
            op: self.op.matmul(&rhs.op)?,
            guard_n: self.guard_n + rhs.guard_n,
            guard_k: self.guard_k + rhs.guard_k,
        })
    }

    pub fn combine(&self, a: C64, rhs: &TensorOperator, b: C64) -> Result<Self> {
        self.check_same_space(rhs)?;
        Ok(TensorOperator {
            n_tr: self.n_tr,
            window: self.window.clone(),
            op: self.op.combine(a, &rhs.op, b)?,
            guard_n: self.guard_n.max(rhs.guard_n),
            guard_k: self.guard_k.max(rhs.guard_k),
        })
    }

    pub fn adjoint(&self) -> Self {
        let mut op = self.op.adjoint();
        op.guard = 0;
        TensorOperator {
            n_tr: self.n_tr,
            window: self.window.clone(),
            op,
            guard_n: self.guard_n,
            guard_k: self.guard_k,
        }
    }

    /// Largest entry modulus over the valid rows.
    pub fn max_abs_on_valid_rows(&self) -> f64 {
        let mut m: f64 = 0.0;
        for n in 0..self.n_tr {
            for k in self.window.clone() {
                if !self.is_valid_row(n, k) {
                    continue;
                }
                let i = self.index(n, k);
                for j in self.op.row_span(i) {
                    m = m.max(self.op.get(i, j).norm());
                }
            }
        }
        m
    }
}

/// `rho_q(alpha)`: `e_n (x) e_k -> sqrt(1 - q^{2n}) e_{n-1} (x) e_k`.
pub fn tensor_alpha(
    q: &QParam,
    n_tr: usize,
    window: RangeInclusive<i64>,
) -> Result<TensorOperator> {
    let mut t = TensorOperator::new_zero(n_tr, window, 1, 0)?;
    for n in 1..n_tr {
        let s = C64::new(shift_weight(q.q(), n), 0.0);
        for k in t.window.clone() {
            let (i, j) = (t.index(n - 1, k), t.index(n, k));
            t.op.set(i, j, s);
        }
    }
    Ok(t)
}

/// `rho_q(gamma)`: `e_n (x) e_k -> q^n e_n (x) e_{k-1}`.
pub fn tensor_gamma(
    q: &QParam,
    n_tr: usize,
    window: RangeInclusive<i64>,
) -> Result<TensorOperator> {
    let mut t = TensorOperator::new_zero(n_tr, window, 0, 1)?;
    let (lo, hi) = (*t.window.start(), *t.window.end());
    for n in 0..n_tr {
        let w = C64::new(q.q().powi(n as i32), 0.0);
        for k in lo + 1..=hi {
            let (i, j) = (t.index(n, k - 1), t.index(n, k));
            t.op.set(i, j, w);
        }
    }
    Ok(t)
}

/// Compression `V^* T V` onto the `e_0` column of the second leg.
pub fn conditional_expectation(op: &TensorOperator) -> Result<BandedOperator> {
    if !op.window.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "window {}..={} does not contain 0",
            op.window.start(),
            op.window.end()
        )));
    }
    if !op.is_valid_row(0, 0) {
        return Err(Error::TruncationTooSmall {
            got: op.n_tr,
            min: op.guard_n + 1,
        });
    }
    let w = TensorOperator::width(&op.window);
    let lower = op.op.lower.div_ceil(w);
    let upper = op.op.upper.div_ceil(w);
    let mut out = BandedOperator::zeros(op.n_tr, lower, upper, op.guard_n);
    for n in 0..op.n_tr {
        let lo = n.saturating_sub(lower);
        let hi = (n + upper + 1).min(op.n_tr);
        for m in lo..hi {
            out.set(n, m, op.get((n, 0), (m, 0)));
        }
    }
    Ok(out)
}
