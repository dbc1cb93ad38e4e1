//! Diagnostics of the matrix `F` defining `U_F^+` (and `O_F^+` when `F Fbar`
//! is a real scalar).
//!
//! `F` is first rescaled by the unique `lambda > 0` with
//! `Tr(FF^*) = Tr((FF^*)^{-1})`; the deformation parameter is then read off
//! from `q + 1/q = Tr(FF^*)` and `Q = FF^*` is the balanced positive weight.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::C64;

/// Largest condition number accepted by [`profile`].
pub const MAX_CONDITION: f64 = 1e12;

/// Tolerance of the trace balance and of the `F Fbar` scalar test.
pub const BALANCE_TOL: f64 = 1e-10;

/// Sign of `F Fbar` when it is a real multiple of the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrthogonalCase {
    Plus,
    Minus,
    No,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FMatrixProfile {
    /// Size of `F`.
    pub n: usize,
    /// `F` after rescaling to trace balance.
    pub f: DMatrix<C64>,
    /// The factor `lambda > 0` applied to the input.
    pub scale: f64,
    /// Whether the input was already balanced.
    pub normalized: bool,
    /// `Tr(FF^*)` after rescaling.
    pub trace_ffstar: f64,
    /// `Tr((FF^*)^{-1})` after rescaling.
    pub trace_inv: f64,
    /// `q` in `(0, 1]` with `q + 1/q = Tr(FF^*)`.
    pub q_param: f64,
    /// The balanced weight `Q = FF^*` of the rescaled `F`.
    pub q_matrix: DMatrix<C64>,
    /// Eigenvalues of `Q`, ascending.
    pub q_eigenvalues: Vec<f64>,
    pub condition_number: f64,
    pub orthogonal_case: OrthogonalCase,
    /// The real scalar `c` with `F Fbar = c I`, when it exists.
    pub f_fbar_scalar: Option<f64>,
    pub advisory: Option<String>,
}

impl FMatrixProfile {
    /// Products `lambda_i lambda_j` of eigenvalues of `Q` other than 1.
    pub fn sd_generators(&self) -> Vec<f64> {
        sd_generators(&self.q_eigenvalues)
    }
}

/// `q` in `(0, 1]` with `q + 1/q = trace`, for `trace >= 2`.
pub fn q_from_trace(trace: f64) -> Result<f64> {
    if trace.is_nan() || trace < 2.0 - 1e-12 || !trace.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "trace {trace} is below 2; no q in (0, 1] matches"
        )));
    }
    let disc = (trace * trace - 4.0).max(0.0).sqrt();
    Ok(2.0 / (trace + disc))
}

fn check_square(f: &DMatrix<C64>) -> Result<()> {
    if f.nrows() != f.ncols() || f.nrows() == 0 {
        return Err(Error::InvalidArgument(format!(
            "F must be a non-empty square matrix, got {}x{}",
            f.nrows(),
            f.ncols()
        )));
    }
    if f.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidArgument("F has non-finite entries".into()));
    }
    Ok(())
}

pub fn profile(f: &DMatrix<C64>) -> Result<FMatrixProfile> {
    check_square(f)?;
    let n = f.nrows();
    let sv = f.clone().svd(false, false).singular_values;
    let (smax, smin) = sv.iter().fold((0.0f64, f64::INFINITY), |(hi, lo), &s| {
        (hi.max(s), lo.min(s))
    });
    let condition_number = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    if condition_number.is_nan() || condition_number >= MAX_CONDITION {
        return Err(Error::IllConditioned(condition_number));
    }

    let tr: f64 = sv.iter().map(|s| s * s).sum();
    let tr_inv: f64 = sv.iter().map(|s| 1.0 / (s * s)).sum();
    let normalized = (tr - tr_inv).abs() <= BALANCE_TOL * tr.max(tr_inv);
    // lambda^4 = Tr((FF^*)^{-1}) / Tr(FF^*)
    let scale = (tr_inv / tr).powf(0.25);
    let f = f * C64::new(scale, 0.0);
    let trace_ffstar = scale * scale * tr;
    let trace_inv = tr_inv / (scale * scale);

    let q_matrix = &f * f.adjoint();
    let mut q_eigenvalues: Vec<f64> = sv.iter().map(|s| scale * scale * s * s).collect();
    q_eigenvalues.sort_by(f64::total_cmp);
    let q_param = q_from_trace(trace_ffstar)?;

    let ffbar = &f * f.map(|z| z.conj());
    let c = ffbar.trace() / n as f64;
    let dev = (&ffbar - DMatrix::<C64>::identity(n, n) * c).norm();
    let is_scalar = c.norm() > 0.0
        && dev <= BALANCE_TOL * c.norm().max(1.0)
        && c.im.abs() <= BALANCE_TOL * c.norm();
    let (orthogonal_case, f_fbar_scalar) = if is_scalar {
        let case = if c.re > 0.0 {
            OrthogonalCase::Plus
        } else {
            OrthogonalCase::Minus
        };
        (case, Some(c.re))
    } else {
        (OrthogonalCase::No, None)
    };
    let advisory = (orthogonal_case == OrthogonalCase::No).then(|| {
        "F Fbar is not a real multiple of the identity: U_F^+ decomposes as a \
         nontrivial free product of O_P^+ and U_Q^+ factors"
            .to_string()
    });

    Ok(FMatrixProfile {
        n,
        f,
        scale,
        normalized,
        trace_ffstar,
        trace_inv,
        q_param,
        q_matrix,
        q_eigenvalues,
        condition_number,
        orthogonal_case,
        f_fbar_scalar,
        advisory,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoninjectivityVerdict {
    /// `true` proves the map is not injective; `false` is inconclusive.
    pub noninjective: bool,
    /// `N^2`.
    pub lhs: f64,
    /// `Tr(FF^*) + 2`.
    pub rhs: f64,
}

/// Tests `N^2 > Tr(FF^*) + 2` on the balanced profile. Within relative
/// `1e-10` of equality the trace is treated as on the boundary, which is
/// inconclusive.
pub fn noninjectivity_check(p: &FMatrixProfile) -> NoninjectivityVerdict {
    let lhs = (p.n * p.n) as f64;
    let rhs = p.trace_ffstar + 2.0;
    NoninjectivityVerdict {
        noninjective: lhs > rhs * (1.0 + BALANCE_TOL),
        lhs,
        rhs,
    }
}

/// Distinct products `lambda_i lambda_j` (all ordered pairs, relative
/// tolerance `1e-10`), ascending, with 1 removed.
pub fn sd_generators(eigenvalues: &[f64]) -> Vec<f64> {
    let mut prods: Vec<f64> = eigenvalues
        .iter()
        .flat_map(|a| eigenvalues.iter().map(move |b| a * b))
        .collect();
    prods.sort_by(f64::total_cmp);
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-10 * a.abs().max(b.abs());
    let mut out: Vec<f64> = Vec::new();
    for p in prods {
        if close(p, 1.0) {
            continue;
        }
        if out.last().is_none_or(|&l| !close(l, p)) {
            out.push(p);
        }
    }
    out
}

/// Largest search space `(2 max_exponent + 1)^k` accepted by [`subgroup_member`].
pub const MAX_SEARCH: f64 = 1e8;

/// Whether `target = prod g_i^{e_i}` for some integers `|e_i| <= max_exponent`,
/// up to `|sum e_i ln g_i - ln target| < 1e-9`. A `false` answer only covers
/// the searched box.
pub fn subgroup_member(generators: &[f64], target: f64, max_exponent: u32) -> Result<bool> {
    if generators.is_empty() || generators.iter().any(|&g| g.is_nan() || g <= 0.0) {
        return Err(Error::InvalidArgument(
            "generators must be a non-empty list of positive reals".into(),
        ));
    }
    if target.is_nan() || target <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "target {target} must be positive"
        )));
    }
    let width = 2.0 * max_exponent as f64 + 1.0;
    if width.powi(generators.len() as i32) > MAX_SEARCH {
        return Err(Error::InvalidArgument(format!(
            "search box of {} generators with exponents up to {max_exponent} is too large",
            generators.len()
        )));
    }
    let logs: Vec<f64> = generators.iter().map(|g| g.ln()).collect();
    let m = max_exponent as i64;

    fn search(logs: &[f64], m: i64, residual: f64) -> bool {
        match logs.split_first() {
            None => residual.abs() < 1e-9,
            Some((&l, rest)) => (-m..=m).any(|e| search(rest, m, residual - e as f64 * l)),
        }
    }
    Ok(search(&logs, m, target.ln()))
}
