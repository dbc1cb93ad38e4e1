//! Fusion rings with exact integer multiplicities.
//!
//! Two families of labels are supported: spins `d/2` (Clebsch-Gordan ladder,
//! the representation ring of `SU_q(2)` and `O_F^+`) and words over the
//! two-letter alphabet `{a, b}` (the free unitary quantum groups `U_F^+`, whose
//! irreducibles are indexed by the free monoid on `u` and its conjugate).
//! Integer spins form the subring of `SO_q(3)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qspecial::{chebyshev_mu_exact, chebyshev_mu_real, QParam};

/// The irreducible of spin `d/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SpinLabel(pub u32);

impl SpinLabel {
    pub fn d(self) -> u32 {
        self.0
    }

    /// Classical dimension `d + 1`.
    pub fn dim(self) -> u64 {
        self.0 as u64 + 1
    }

    /// Whether the spin is an integer, i.e. the label belongs to `SO_q(3)`.
    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Diagonal of the Woronowicz weight, `|q|^{2i}` for `i = -d/2, ..., d/2`.
    pub fn weights(self, q: &QParam) -> Vec<f64> {
        let a = q.abs();
        let d = self.0 as i32;
        (0..=d).map(|j| a.powi(2 * j - d)).collect()
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Generator of the word monoid: `A` stands for the fundamental
/// representation `u`, `B` for its conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn bar(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }
}

/// A word over `{a, b}`; the empty word is the trivial representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        FreeWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The conjugate word: reversed, with the letters swapped.
    pub fn bar(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.bar()).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeWord(v)
    }

    /// Quantum dimension of every suffix, `out[i] = dim(w[i..])`, for
    /// generator dimension `gauge`.
    ///
    /// Uses `a * v = av + [v starts with b] v[1..]` (and the mirror rule for
    /// `b`), so `dim(av) = gauge dim(v) - [v starts with b] dim(v[1..])`.
    fn suffix_dims(&self, gauge: f64) -> Vec<f64> {
        let n = self.0.len();
        let mut out = vec![1.0; n + 1];
        for i in (0..n).rev() {
            let mut v = gauge * out[i + 1];
            if i + 1 < n && self.0[i + 1] == self.0[i].bar() {
                v -= out[i + 2];
            }
            out[i] = v;
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::A => "a",
                Letter::B => "b",
            })?;
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Parses `a`/`b` (or `α`/`β`); `e` or the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(FreeWord::empty());
        }
        s.chars()
            .map(|c| match c {
                'a' | 'α' => Ok(Letter::A),
                'b' | 'β' => Ok(Letter::B),
                other => Err(Error::InvalidArgument(format!(
                    "invalid letter {other:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(FreeWord)
    }
}

impl Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finitely supported combination of labels with positive integer
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionElement<L: Ord> {
    terms: BTreeMap<L, u64>,
}

impl<L: Ord> Default for FusionElement<L> {
    fn default() -> Self {
        FusionElement {
            terms: BTreeMap::new(),
        }
    }
}

impl<L: Ord + Clone> FusionElement<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(label: L) -> Self {
        let mut e = Self::zero();
        e.add(label, 1);
        e
    }

    pub fn add(&mut self, label: L, mult: u64) {
        if mult > 0 {
            *self.terms.entry(label).or_insert(0) += mult;
        }
    }

    pub fn add_all(&mut self, other: &FusionElement<L>) {
        for (l, &m) in &other.terms {
            self.add(l.clone(), m);
        }
    }

    pub fn multiplicity(&self, label: &L) -> u64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<L, u64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, u64)> {
        self.terms.iter().map(|(l, &m)| (l, m))
    }

    /// Number of distinct labels.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of the multiplicities.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Bilinear extension of a fusion rule on labels.
    pub fn product(
        &self,
        other: &FusionElement<L>,
        rule: impl Fn(&L, &L) -> FusionElement<L>,
    ) -> FusionElement<L> {
        let mut out = Self::zero();
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                for (c, mc) in rule(a, b).iter() {
                    out.add(c.clone(), ma * mb * mc);
                }
            }
        }
        out
    }

    /// Linear extension of a dimension function.
    pub fn evaluate(&self, f: impl Fn(&L) -> f64) -> f64 {
        self.iter().map(|(l, m)| m as f64 * f(l)).sum()
    }
}

impl FusionElement<SpinLabel> {
    /// The part supported on integer spins (the `SO_q(3)` subring).
    pub fn integer_spins(&self) -> Self {
        let mut out = Self::zero();
        for (l, m) in self.iter() {
            if l.is_integer() {
                out.add(*l, m);
            }
        }
        out
    }
}

impl<L: Ord + Serialize> Serialize for FusionElement<L> {
    /// Serialised as a list of `{"label", "multiplicity"}` records in label order.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a, L> {
            label: &'a L,
            multiplicity: u64,
        }
        s.collect_seq(self.terms.iter().map(|(label, &multiplicity)| Term {
            label,
            multiplicity,
        }))
    }
}

/// Clebsch-Gordan rule: spins `|a - b|, |a - b| + 2, ..., a + b`, each once.
pub fn fuse_spins(a: SpinLabel, b: SpinLabel) -> FusionElement<SpinLabel> {
    let mut out = FusionElement::zero();
    let lo = a.0.abs_diff(b.0);
    for c in (lo..=a.0 + b.0).step_by(2) {
        out.add(SpinLabel(c), 1);
    }
    out
}

/// `w v = sum xz` over all splittings `w = xy`, `v = bar(y) z`.
pub fn fuse_words(w: &FreeWord, v: &FreeWord) -> FusionElement<FreeWord> {
    let mut out = FusionElement::zero();
    let (wl, vl) = (w.letters(), v.letters());
    for k in 0..=wl.len().min(vl.len()) {
        let (x, y) = wl.split_at(wl.len() - k);
        let (ybar, z) = vl.split_at(k);
        let matches = y.iter().rev().zip(ybar).all(|(l, r)| l.bar() == *r);
        if matches {
            let mut xz = x.to_vec();
            xz.extend_from_slice(z);
            out.add(FreeWord(xz), 1);
        }
    }
    out
}

/// Dimension functions on irreducible labels.
pub trait Dimension {
    /// Dimension when the fundamental generator has dimension `gauge`.
    /// With `gauge = N` this is the classical dimension for an `N x N`
    /// fundamental representation.
    fn dim_at(&self, gauge: f64) -> f64;

    /// Quantum dimension, evaluated at `gauge = |q| + 1/|q|`.
    fn qdim(&self, q: &QParam) -> f64 {
        self.dim_at(q.gauge())
    }
}

impl Dimension for SpinLabel {
    fn dim_at(&self, gauge: f64) -> f64 {
        chebyshev_mu_exact(self.0, gauge)
    }
}

impl Dimension for FreeWord {
    fn dim_at(&self, gauge: f64) -> f64 {
        self.suffix_dims(gauge)[0]
    }
}

/// One row of [`dim_growth_table`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimGrowthRow {
    pub d: u32,
    /// `mu_d(N)`.
    pub dim: f64,
    /// `mu_d(gauge)`.
    pub dim_q: f64,
    /// `dim^2 / dim_q`, the value of the character state on `chi_{d/2}`.
    pub char_state_value: f64,
    /// `char_state_value / (d + 1)`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimGrowthTable {
    pub n: u32,
    pub gauge: f64,
    pub rows: Vec<DimGrowthRow>,
    /// `gauge < N^2 - 2`, under which `char_state_value / (d + 1)` is unbounded.
    pub diverges: bool,
}

/// Classical versus quantum dimension growth of `O_N^+`-type spins, with the
/// gauge `Tr(F^* F)` supplied as `|q| + 1/|q|`.
pub fn dim_growth_table(q: &QParam, n: u32, d_max: u32) -> Result<DimGrowthTable> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "N = {n} must be at least 2"
        )));
    }
    let gauge = q.gauge();
    let rows = (0..=d_max)
        .map(|d| {
            let dim = chebyshev_mu_exact(d, n as f64);
            let dim_q = chebyshev_mu_real(d, gauge);
            let char_state_value = dim * (dim / dim_q);
            DimGrowthRow {
                d,
                dim,
                dim_q,
                char_state_value,
                ratio: char_state_value / (d as f64 + 1.0),
            }
        })
        .collect();
    let nf = n as f64;
    Ok(DimGrowthTable {
        n,
        gauge,
        rows,
        diverges: gauge < nf * nf - 2.0,
    })
}
