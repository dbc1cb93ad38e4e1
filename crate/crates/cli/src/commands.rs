use num_complex::Complex64;
use qcentral::fusion::{
    dim_growth_table, fuse_spins, fuse_words, DimGrowthTable, Dimension, FreeWord, FusionElement,
    SpinLabel,
};
use qcentral::multipliers::{
    b_table, decay_rate, summability_report, truncate_multiplier, SummabilityReport, Truncation,
};
use qcentral::qspecial::{chebyshev_mu, chebyshev_mu_real, q_hermite, q_pochhammer_real};
use qcentral::schedule::{plan, FreeProdSchedule};
use qcentral::structure::{noninjectivity_check, profile, NoninjectivityVerdict, OrthogonalCase};
use qcentral::suq2::{build_jacobi, eta_vector, jacobi_spectrum, theta_pair};
use qcentral::QParam;
use serde::Serialize;

use crate::output::{num, Report, Table};

type C64 = Complex64;

fn cplx(z: C64) -> String {
    if z.im == 0.0 {
        num(z.re)
    } else {
        let im = num(z.im);
        let sign = if im.starts_with('-') { "" } else { "+" };
        format!("{}{sign}{im}i", num(z.re))
    }
}

#[derive(Serialize)]
pub struct SpecialRow {
    d: u32,
    mu_gauge: f64,
    mu_x: C64,
    hermite: C64,
    pochhammer: f64,
}

/// Chebyshev, q-Hermite (base `q^2`) and q-Pochhammer values at
/// `x = |q|^z + |q|^{-z}`.
#[derive(Serialize)]
pub struct SpecialReport {
    q: f64,
    z: C64,
    x: C64,
    gauge: f64,
    rows: Vec<SpecialRow>,
}

impl Report for SpecialReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["d", "mu_gauge", "mu_x", "hermite", "pochhammer"]);
        for r in &self.rows {
            t.push(vec![
                r.d.to_string(),
                num(r.mu_gauge),
                cplx(r.mu_x),
                cplx(r.hermite),
                num(r.pochhammer),
            ]);
        }
        t
    }
}

pub fn special(q: QParam, z: C64, d_max: u32) -> SpecialReport {
    let x = q.abs_pow(z) + q.abs_pow(-z);
    let q2 = q.abs() * q.abs();
    let rows = (0..=d_max)
        .map(|d| SpecialRow {
            d,
            mu_gauge: chebyshev_mu_real(d, q.gauge()),
            mu_x: chebyshev_mu(d, x),
            hermite: q_hermite(d, x, q2),
            pochhammer: q_pochhammer_real(q2, q2, d),
        })
        .collect();
    SpecialReport {
        q: q.q(),
        z,
        x,
        gauge: q.gauge(),
        rows,
    }
}

#[derive(Serialize)]
pub struct MultiplierReport {
    q: f64,
    t_or_z: C64,
    power: u32,
    d_max: u32,
    decay_rate: Option<f64>,
    b: Vec<C64>,
    summability: Option<SummabilityReport>,
    truncation: Option<Truncation>,
}

impl Report for MultiplierReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["d", "b", "term", "partial_sum"]);
        for (d, b) in self.b.iter().enumerate() {
            let (term, sum) = match &self.summability {
                Some(s) => (num(s.terms[d]), num(s.partial_sums[d])),
                None => (String::new(), String::new()),
            };
            t.push(vec![d.to_string(), cplx(*b), term, sum]);
        }
        t
    }
}

pub fn multiplier(
    q: QParam,
    z: C64,
    d_max: u32,
    power: u32,
    eps: Option<f64>,
) -> qcentral::Result<MultiplierReport> {
    let b = b_table(&q, z, d_max)?;
    let real_t = z.im == 0.0 && z.re > 0.0 && z.re < 1.0;
    let summability = if real_t {
        Some(summability_report(&q, z.re, power, d_max)?)
    } else {
        None
    };
    let truncation = match (eps, &summability) {
        (Some(eps), Some(s)) if s.converges => Some(truncate_multiplier(&q, z.re, power, eps)?),
        _ => None,
    };
    Ok(MultiplierReport {
        q: q.q(),
        t_or_z: z,
        power,
        d_max,
        decay_rate: decay_rate(&q, z).ok(),
        b,
        summability,
        truncation,
    })
}

#[derive(Serialize)]
pub struct EigenReport {
    q: f64,
    t_or_z: C64,
    n_tr: usize,
    eigenvalue: C64,
    rayleigh: C64,
    residual_valid: f64,
    residual_full: f64,
    c_z: C64,
    tail_bound: f64,
    gauge: f64,
    spectrum_min: f64,
    spectrum_max: f64,
    spectrum_contained: bool,
}

impl Report for EigenReport {
    fn table(&self) -> Table {
        Table::key_value(vec![
            ("q", num(self.q)),
            ("t_or_z", cplx(self.t_or_z)),
            ("n_tr", self.n_tr.to_string()),
            ("eigenvalue", cplx(self.eigenvalue)),
            ("rayleigh", cplx(self.rayleigh)),
            ("residual_valid", num(self.residual_valid)),
            ("residual_full", num(self.residual_full)),
            ("c_z", cplx(self.c_z)),
            ("tail_bound", num(self.tail_bound)),
            ("gauge", num(self.gauge)),
            ("spectrum_min", num(self.spectrum_min)),
            ("spectrum_max", num(self.spectrum_max)),
            ("spectrum_contained", self.spectrum_contained.to_string()),
        ])
    }
}

pub fn eigen(q: QParam, z: C64, n_tr: usize) -> qcentral::Result<EigenReport> {
    let eta = eta_vector(&q, z, n_tr)?;
    let check = eta.eigen_check(&build_jacobi(&q, n_tr)?)?;
    let spec = jacobi_spectrum(&q, n_tr)?;
    let (lo, hi) = (spec[0], spec[spec.len() - 1]);
    let gauge = q.gauge();
    Ok(EigenReport {
        q: q.q(),
        t_or_z: z,
        n_tr,
        eigenvalue: check.eigenvalue,
        rayleigh: check.rayleigh,
        residual_valid: check.residual_valid,
        residual_full: check.residual_full,
        c_z: eta.c_z(),
        tail_bound: eta.tail_bound(),
        gauge,
        spectrum_min: lo,
        spectrum_max: hi,
        spectrum_contained: lo >= -gauge - 1e-9 && hi <= gauge + 1e-9,
    })
}

#[derive(Serialize)]
pub struct ThetaRow {
    d: u32,
    value: C64,
    pairing: C64,
    normalized: C64,
    b: C64,
    relative_deviation: f64,
}

#[derive(Serialize)]
pub struct ThetaReport {
    q: f64,
    z: C64,
    n_tr: usize,
    c_z: C64,
    rows: Vec<ThetaRow>,
}

impl Report for ThetaReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["d", "value", "normalized", "b", "relative_deviation"]);
        for r in &self.rows {
            t.push(vec![
                r.d.to_string(),
                cplx(r.value),
                cplx(r.normalized),
                cplx(r.b),
                num(r.relative_deviation),
            ]);
        }
        t
    }
}

pub fn theta(q: QParam, z: C64, d_max: u32, n_tr: usize) -> qcentral::Result<ThetaReport> {
    let th = theta_pair(&q, z, d_max as usize, n_tr)?;
    let b = b_table(&q, z, d_max)?;
    let rows = (0..=d_max as usize)
        .map(|d| {
            let normalized = th.values()[d] / th.c_z();
            ThetaRow {
                d: d as u32,
                value: th.values()[d],
                pairing: th.pairings()[d],
                normalized,
                b: b[d],
                relative_deviation: (normalized - b[d]).norm() / b[d].norm(),
            }
        })
        .collect();
    Ok(ThetaReport {
        q: q.q(),
        z,
        n_tr,
        c_z: th.c_z(),
        rows,
    })
}

#[derive(Serialize)]
pub struct FusionReport<L: Ord + Serialize> {
    kind: &'static str,
    left: L,
    right: L,
    terms: FusionElement<L>,
    gauge: Option<f64>,
    qdim_product: Option<f64>,
    qdim_sum: Option<f64>,
}

impl<L: Ord + Clone + Serialize + std::fmt::Display> Report for FusionReport<L> {
    fn table(&self) -> Table {
        let mut t = Table::new(&["label", "multiplicity"]);
        for (l, m) in self.terms.iter() {
            t.push(vec![l.to_string(), m.to_string()]);
        }
        t
    }
}

pub fn fusion_spins(a: u32, b: u32, q: Option<QParam>) -> FusionReport<SpinLabel> {
    let (a, b) = (SpinLabel(a), SpinLabel(b));
    let terms = fuse_spins(a, b);
    let qdims = q.map(|q| (a.qdim(&q) * b.qdim(&q), terms.evaluate(|c| c.qdim(&q))));
    FusionReport {
        kind: "spins",
        left: a,
        right: b,
        gauge: q.map(|q| q.gauge()),
        qdim_product: qdims.map(|p| p.0),
        qdim_sum: qdims.map(|p| p.1),
        terms,
    }
}

pub fn fusion_words(w: FreeWord, v: FreeWord, q: Option<QParam>) -> FusionReport<FreeWord> {
    let terms = fuse_words(&w, &v);
    let qdims = q.map(|q| (w.qdim(&q) * v.qdim(&q), terms.evaluate(|c| c.qdim(&q))));
    FusionReport {
        kind: "words",
        gauge: q.map(|q| q.gauge()),
        qdim_product: qdims.map(|p| p.0),
        qdim_sum: qdims.map(|p| p.1),
        left: w,
        right: v,
        terms,
    }
}

#[derive(Serialize)]
pub struct GrowthReport(DimGrowthTable);

impl Report for GrowthReport {
    fn table(&self) -> Table {
        let mut t = Table::new(&["d", "dim", "dim_q", "char_state_value", "ratio"]);
        for r in &self.0.rows {
            t.push(vec![
                r.d.to_string(),
                num(r.dim),
                num(r.dim_q),
                num(r.char_state_value),
                num(r.ratio),
            ]);
        }
        t
    }
}

pub fn growth(q: QParam, n: u32, d_max: u32) -> qcentral::Result<GrowthReport> {
    dim_growth_table(&q, n, d_max).map(GrowthReport)
}

#[derive(Serialize)]
pub struct StructureReport {
    n: usize,
    scale: f64,
    normalized: bool,
    trace_ffstar: f64,
    trace_inv: f64,
    q_param: f64,
    condition_number: f64,
    q_eigenvalues: Vec<f64>,
    q_matrix: Vec<Vec<C64>>,
    orthogonal_case: OrthogonalCase,
    f_fbar_scalar: Option<f64>,
    advisory: Option<String>,
    noninjectivity: NoninjectivityVerdict,
    sd_generators: Vec<f64>,
}

impl Report for StructureReport {
    fn table(&self) -> Table {
        let list = |v: &[f64]| v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(" ");
        Table::key_value(vec![
            ("n", self.n.to_string()),
            ("scale", num(self.scale)),
            ("normalized", self.normalized.to_string()),
            ("trace_ffstar", num(self.trace_ffstar)),
            ("trace_inv", num(self.trace_inv)),
            ("q_param", num(self.q_param)),
            ("condition_number", num(self.condition_number)),
            ("q_eigenvalues", list(&self.q_eigenvalues)),
            (
                "orthogonal_case",
                format!("{:?}", self.orthogonal_case).to_lowercase(),
            ),
            ("noninjective", self.noninjectivity.noninjective.to_string()),
            ("noninjectivity_lhs", num(self.noninjectivity.lhs)),
            ("noninjectivity_rhs", num(self.noninjectivity.rhs)),
            ("sd_generators", list(&self.sd_generators)),
            ("advisory", self.advisory.clone().unwrap_or_default()),
        ])
    }
}

pub fn structure(f: &nalgebra::DMatrix<C64>) -> qcentral::Result<StructureReport> {
    let p = profile(f)?;
    let q_matrix = (0..p.n)
        .map(|i| (0..p.n).map(|j| p.q_matrix[(i, j)]).collect())
        .collect();
    Ok(StructureReport {
        n: p.n,
        scale: p.scale,
        normalized: p.normalized,
        trace_ffstar: p.trace_ffstar,
        trace_inv: p.trace_inv,
        q_param: p.q_param,
        condition_number: p.condition_number,
        sd_generators: p.sd_generators(),
        noninjectivity: noninjectivity_check(&p),
        q_eigenvalues: p.q_eigenvalues,
        q_matrix,
        orthogonal_case: p.orthogonal_case,
        f_fbar_scalar: p.f_fbar_scalar,
        advisory: p.advisory,
    })
}

#[derive(Serialize)]
pub struct ScheduleReport(FreeProdSchedule);

impl Report for ScheduleReport {
    fn table(&self) -> Table {
        let s = &self.0;
        Table::key_value(vec![
            ("delta", num(s.delta)),
            ("N", s.n.to_string()),
            ("r", num(s.r)),
            ("eps", num(s.eps)),
            ("ln_eps", num(s.ln_eps)),
            ("tail_bound", num(s.tail_bound)),
            ("block_error", num(s.block_error)),
        ])
    }
}

pub fn schedule(delta: f64) -> qcentral::Result<ScheduleReport> {
    plan(delta).map(ScheduleReport)
}
