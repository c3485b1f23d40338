//! Closed-form right-hand sides of the coefficient inequalities for
//! `R(a,b;c)`, and the functionals they bound.
//!
//! With `K = (c)₂/((a)₂(b)₂)`:
//!
//! | functional | bound | status |
//! |---|---|---|
//! | `\|a₃ − μa₂²\|`, μ complex | `K·max{1, \|ab(c+1)+μc(a+1)(b+1)\|/(4ab(c+1))}` | proved |
//! | `\|a₃ − μa₂²\|`, μ real | piecewise linear in `ν` (same values) | proved |
//! | `\|a₂\|`, `\|a₃\|` | `c/(2ab)`, `K` | proved |
//! | `\|a₃ − a₂²\|` | FS bound at μ = 1 | proved |
//! | `\|a₂a₄ − a₃²\|` | `K²` (needs `a ≥ c ≥ ½`) | proved |
//! | `\|a₄\|` | `3(c)₃/((a)₃(b)₃)` | proved |
//! | `\|a₅\|`, `\|a₂a₃ − a₄\|`, `\|H₃(1)\|` | printed formulas | report only |

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{pochhammer, HohlovParams, Preset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunctionalId {
    #[serde(rename = "FS_COMPLEX")]
    FsComplex,
    #[serde(rename = "FS_REAL")]
    FsReal,
    #[serde(rename = "A2")]
    A2,
    #[serde(rename = "A3")]
    A3,
    #[serde(rename = "A4")]
    A4,
    #[serde(rename = "A5")]
    A5,
    #[serde(rename = "H2_1")]
    H21,
    #[serde(rename = "H2_2")]
    H22,
    #[serde(rename = "A2A3_A4")]
    A2A3A4,
    #[serde(rename = "H3_1")]
    H31,
}

impl FunctionalId {
    pub const ALL: [FunctionalId; 10] = [
        FunctionalId::FsComplex,
        FunctionalId::FsReal,
        FunctionalId::A2,
        FunctionalId::A3,
        FunctionalId::A4,
        FunctionalId::A5,
        FunctionalId::H21,
        FunctionalId::H22,
        FunctionalId::A2A3A4,
        FunctionalId::H31,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FunctionalId::FsComplex => "FS_COMPLEX",
            FunctionalId::FsReal => "FS_REAL",
            FunctionalId::A2 => "A2",
            FunctionalId::A3 => "A3",
            FunctionalId::A4 => "A4",
            FunctionalId::A5 => "A5",
            FunctionalId::H21 => "H2_1",
            FunctionalId::H22 => "H2_2",
            FunctionalId::A2A3A4 => "A2A3_A4",
            FunctionalId::H31 => "H3_1",
        }
    }

    /// Highest coefficient index the functional reads.
    pub fn max_index(&self) -> usize {
        match self {
            FunctionalId::A2 => 2,
            FunctionalId::FsComplex | FunctionalId::FsReal | FunctionalId::A3 | FunctionalId::H21 => 3,
            FunctionalId::A4 | FunctionalId::H22 | FunctionalId::A2A3A4 => 4,
            FunctionalId::A5 | FunctionalId::H31 => 5,
        }
    }

    pub fn needs_mu(&self) -> bool {
        matches!(self, FunctionalId::FsComplex | FunctionalId::FsReal)
    }

    pub fn status(&self) -> BoundStatus {
        match self {
            FunctionalId::A5 | FunctionalId::A2A3A4 | FunctionalId::H31 => BoundStatus::ReportOnly,
            _ => BoundStatus::Proved,
        }
    }

    /// Whether `p` satisfies the hypotheses the bound is stated under.
    pub fn hypotheses_hold(&self, p: &HohlovParams) -> bool {
        match self {
            FunctionalId::H22 => p.k8_valid() && p.main_theorem_valid(),
            _ => p.main_theorem_valid(),
        }
    }
}

impl fmt::Display for FunctionalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Accepts the canonical ids case-insensitively plus the short aliases
/// `fs_complex`, `fs_real`, `h21`, `h22`, `a2a3a4`, `h31`.
impl FromStr for FunctionalId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.trim().to_ascii_lowercase().chars().filter(|c| *c != '_' && *c != '-').collect();
        Ok(match key.as_str() {
            "fscomplex" => FunctionalId::FsComplex,
            "fsreal" => FunctionalId::FsReal,
            "a2" => FunctionalId::A2,
            "a3" => FunctionalId::A3,
            "a4" => FunctionalId::A4,
            "a5" => FunctionalId::A5,
            "h21" => FunctionalId::H21,
            "h22" => FunctionalId::H22,
            "a2a3a4" => FunctionalId::A2A3A4,
            "h31" => FunctionalId::H31,
            _ => return Err(Error::InvalidConfig(format!("unknown functional '{s}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundStatus {
    #[serde(rename = "PROVED")]
    Proved,
    #[serde(rename = "REPORT_ONLY")]
    ReportOnly,
}

impl BoundStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundStatus::Proved => "PROVED",
            BoundStatus::ReportOnly => "REPORT_ONLY",
        }
    }
}

/// The Fekete–Szegő parameter. Real and complex values select different
/// theorems, so the distinction is kept even when the imaginary part is 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mu {
    Real(f64),
    Complex(Complex64),
}

impl Mu {
    pub fn value(&self) -> Complex64 {
        match *self {
            Mu::Real(r) => Complex64::new(r, 0.0),
            Mu::Complex(c) => c,
        }
    }

    /// The theorem a bare `fs` request maps to.
    pub fn fs_functional(&self) -> FunctionalId {
        match self {
            Mu::Real(_) => FunctionalId::FsReal,
            Mu::Complex(_) => FunctionalId::FsComplex,
        }
    }
}

/// Parses `RE` (real) or `RE,IM` (complex).
impl FromStr for Mu {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::InvalidConfig(format!("cannot parse mu '{s}'")))
        };
        match s.split_once(',') {
            Some((re, im)) => Ok(Mu::Complex(Complex64::new(parse(re)?, parse(im)?))),
            None => Ok(Mu::Real(parse(s)?)),
        }
    }
}

/// `K = (c)₂/((a)₂(b)₂)`.
pub fn k_ratio(p: &HohlovParams) -> f64 {
    p.ratio(2)
}

/// `ν = (5ab(c+1) + μc(a+1)(b+1)) / (8ab(c+1))`.
pub fn fs_nu(p: &HohlovParams, mu: Complex64) -> Complex64 {
    let (a, b, c) = (p.a, p.b, p.c);
    let base = a * b * (c + 1.0);
    (mu * (c * (a + 1.0) * (b + 1.0)) + 5.0 * base) / (8.0 * base)
}

/// `K·max{1, |ab(c+1) + μc(a+1)(b+1)| / (4ab(c+1))}`.
pub fn fs_complex_bound(p: &HohlovParams, mu: Complex64) -> f64 {
    let (a, b, c) = (p.a, p.b, p.c);
    let base = a * b * (c + 1.0);
    let ratio = (mu * (c * (a + 1.0) * (b + 1.0)) + base).norm() / (4.0 * base);
    k_ratio(p) * ratio.max(1.0)
}

/// Real-μ form: `K(1−2ν)` for `ν < 0`, `K` on `[0,1]`, `K(2ν−1)` for `ν > 1`.
///
/// The first branch is the continuous one; the printed `−(c+1)ab + μc(a+1)(b+1)`
/// numerator has the wrong sign on `μ`.
pub fn fs_real_bound(p: &HohlovParams, mu: f64) -> f64 {
    let k = k_ratio(p);
    let nu = fs_nu(p, Complex64::new(mu, 0.0)).re;
    if nu < 0.0 {
        k * (1.0 - 2.0 * nu)
    } else if nu <= 1.0 {
        k
    } else {
        k * (2.0 * nu - 1.0)
    }
}

/// Values of μ where the real-μ bound changes branch (`ν = 0` and `ν = 1`).
pub fn fs_breakpoints(p: &HohlovParams) -> (f64, f64) {
    let (a, b, c) = (p.a, p.b, p.c);
    let t = c * (a + 1.0) * (b + 1.0);
    (-5.0 * (c + 1.0) * a * b / t, 3.0 * (c + 1.0) * a * b / t)
}

pub fn a2_bound(p: &HohlovParams) -> f64 {
    p.c / (2.0 * p.a * p.b)
}

pub fn a3_bound(p: &HohlovParams) -> f64 {
    k_ratio(p)
}

/// `|a₃ − a₂²|`: the complex FS bound at μ = 1. This is `K` only when the
/// max picks 1, which holds for `c ≥ ½` but not on all of `a, b ≥ c > 0`.
pub fn h2_1_bound(p: &HohlovParams) -> f64 {
    fs_complex_bound(p, Complex64::new(1.0, 0.0))
}

pub fn h2_2_bound(p: &HohlovParams) -> f64 {
    k_ratio(p).powi(2)
}

pub fn a4_bound(p: &HohlovParams) -> f64 {
    3.0 * p.ratio(3)
}

/// Printed `|a₅| ≤ (15/16)(c)₄/((a)₄(b)₄)`.
pub fn a5_bound_printed(p: &HohlovParams) -> f64 {
    15.0 / 16.0 * p.ratio(4)
}

/// `c(a+2)(b+2) + 9ab(c+2)` and the square-root factor shared by the
/// printed `|a₂a₃ − a₄|` and `|H₃(1)|` formulas.
fn printed_a2a3_a4_core(p: &HohlovParams) -> f64 {
    let (a, b, c) = (p.a, p.b, p.c);
    let nine = c * (a + 2.0) * (b + 2.0) + 9.0 * a * b * (c + 2.0);
    let eleven = c * (a + 2.0) * (b + 2.0) + 11.0 * a * b * (c + 2.0);
    (nine / eleven).sqrt() * nine
}

/// Printed `|a₂a₃ − a₄| ≤ 13(c)₂/(64 a (a)₃ b (b)₃) · √(N₉/N₁₁) · N₉`.
pub fn a2a3_a4_bound_printed(p: &HohlovParams) -> f64 {
    let (a, b, c) = (p.a, p.b, p.c);
    13.0 * pochhammer(c, 2) / (64.0 * a * pochhammer(a, 3) * b * pochhammer(b, 3)) * printed_a2a3_a4_core(p)
}

/// Printed third Hankel determinant bound, assembled term by term.
pub fn h3_1_bound_printed(p: &HohlovParams) -> f64 {
    let (a, b, c) = (p.a, p.b, p.c);
    let first = k_ratio(p).powi(3);
    let second = 39.0 * pochhammer(c, 2) * pochhammer(c, 3)
        / (64.0 * pochhammer(a, 3).powi(2) * pochhammer(b, 3).powi(2))
        * printed_a2a3_a4_core(p);
    let third = 15.0 * pochhammer(c, 4) * pochhammer(c, 2)
        / (64.0 * pochhammer(a, 2) * pochhammer(a, 4) * pochhammer(b, 2) * pochhammer(b, 4));
    first + second + third
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSpec {
    pub functional: FunctionalId,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mu: Option<[f64; 2]>,
    pub bound: f64,
    pub status: BoundStatus,
    pub hypotheses_hold: bool,
}

impl BoundSpec {
    pub fn params(&self) -> HohlovParams {
        HohlovParams { a: self.a, b: self.b, c: self.c }
    }
}

/// Evaluates the closed-form bound of `id` at `p`.
///
/// Parameters outside the theorem's hypotheses are not an error; the
/// returned spec carries `hypotheses_hold = false` instead.
pub fn bound(id: FunctionalId, p: &HohlovParams, mu: Option<Mu>) -> Result<BoundSpec> {
    let value = match id {
        FunctionalId::FsComplex => fs_complex_bound(p, mu.ok_or(Error::MuRequired(id.as_str()))?.value()),
        FunctionalId::FsReal => match mu.ok_or(Error::MuRequired(id.as_str()))? {
            Mu::Real(m) => fs_real_bound(p, m),
            Mu::Complex(_) => return Err(Error::ComplexMuForRealFunctional),
        },
        FunctionalId::A2 => a2_bound(p),
        FunctionalId::A3 => a3_bound(p),
        FunctionalId::A4 => a4_bound(p),
        FunctionalId::A5 => a5_bound_printed(p),
        FunctionalId::H21 => h2_1_bound(p),
        FunctionalId::H22 => h2_2_bound(p),
        FunctionalId::A2A3A4 => a2a3_a4_bound_printed(p),
        FunctionalId::H31 => h3_1_bound_printed(p),
    };
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("{id} bound at {p}")));
    }
    let mu = if id.needs_mu() { mu.map(|m| [m.value().re, m.value().im]) } else { None };
    Ok(BoundSpec {
        functional: id,
        a: p.a,
        b: p.b,
        c: p.c,
        mu,
        bound: value,
        status: id.status(),
        hypotheses_hold: id.hypotheses_hold(p),
    })
}

/// `|a₃ − μa₂²|`.
#[inline]
pub fn fekete_szego(a2: Complex64, a3: Complex64, mu: Complex64) -> f64 {
    (a3 - mu * a2 * a2).norm()
}

/// `|a₃(a₂a₄ − a₃²) − a₄(a₄ − a₂a₃) + a₅(a₃ − a₂²)|`.
#[inline]
pub fn hankel3_determinant(a: &[Complex64; 4]) -> f64 {
    let [a2, a3, a4, a5] = *a;
    (a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2)).norm()
}

/// Triangle-inequality assembly `|a₃||a₂a₄−a₃²| + |a₄||a₂a₃−a₄| + |a₅||a₃−a₂²|`.
#[inline]
pub fn hankel3_assembly(a: &[Complex64; 4]) -> f64 {
    let [a2, a3, a4, a5] = *a;
    a3.norm() * (a2 * a4 - a3 * a3).norm() + a4.norm() * (a2 * a3 - a4).norm() + a5.norm() * (a3 - a2 * a2).norm()
}

/// Value of the functional on coefficients `coeffs = [a₂, a₃, …]`.
pub fn functional_value(id: FunctionalId, coeffs: &[Complex64], mu: Option<Mu>) -> Result<f64> {
    let needed = id.max_index() - 1;
    if coeffs.len() < needed {
        return Err(Error::MissingCoefficient { functional: id.as_str(), index: coeffs.len() + 2 });
    }
    let mut a = [Complex64::new(0.0, 0.0); 4];
    a[..needed].copy_from_slice(&coeffs[..needed]);
    let mu = match id {
        FunctionalId::FsComplex => Some(mu.ok_or(Error::MuRequired(id.as_str()))?.value()),
        FunctionalId::FsReal => match mu.ok_or(Error::MuRequired(id.as_str()))? {
            Mu::Real(m) => Some(Complex64::new(m, 0.0)),
            Mu::Complex(_) => return Err(Error::ComplexMuForRealFunctional),
        },
        _ => None,
    };
    Ok(functional_kernel(id, &a, mu.unwrap_or_default()))
}

/// Allocation-free evaluation for the search loops; `a = [a₂, a₃, a₄, a₅]`
/// with unused trailing entries ignored.
#[inline]
pub fn functional_kernel(id: FunctionalId, a: &[Complex64; 4], mu: Complex64) -> f64 {
    let [a2, a3, a4, _] = *a;
    match id {
        FunctionalId::FsComplex | FunctionalId::FsReal => fekete_szego(a2, a3, mu),
        FunctionalId::A2 => a2.norm(),
        FunctionalId::A3 => a3.norm(),
        FunctionalId::A4 => a4.norm(),
        FunctionalId::A5 => a[3].norm(),
        FunctionalId::H21 => (a3 - a2 * a2).norm(),
        FunctionalId::H22 => (a2 * a4 - a3 * a3).norm(),
        FunctionalId::A2A3A4 => (a2 * a3 - a4).norm(),
        FunctionalId::H31 => hankel3_determinant(a),
    }
}

/// The preset-specific Fekete–Szegő formulas stated for the Ruscheweyh,
/// Bernardi and Alexander specializations; `None` for other presets.
pub fn remark_fs_bound(preset: &Preset, mu: Complex64) -> Option<f64> {
    match *preset {
        Preset::Ruscheweyh { lambda } => {
            let l1 = lambda + 1.0;
            let ratio = (mu * (lambda + 2.0) + l1).norm() / (4.0 * l1);
            Some(ratio.max(1.0) / pochhammer(l1, 2))
        }
        Preset::Bernardi { eta } => {
            let (e1, e2, e3) = (1.0 + eta, 2.0 + eta, 3.0 + eta);
            let ratio = (mu * (2.0 * e2 * e2) + e1 * e3).norm() / (4.0 * e1 * e3);
            Some(e3 / (2.0 * e1) * ratio.max(1.0))
        }
        Preset::Alexander => Some(((mu * 3.0 + 2.0).norm() / 8.0).max(1.0) / 6.0),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub functional: FunctionalId,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mu_re: Option<f64>,
    pub mu_im: Option<f64>,
    pub bound: f64,
    pub status: BoundStatus,
}

pub const TABLE_HEADER: &str = "functional,a,b,c,mu_re,mu_im,bound,status";

impl TableRow {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.functional,
            self.a,
            self.b,
            self.c,
            opt(self.mu_re),
            opt(self.mu_im),
            self.bound,
            self.status.as_str()
        )
    }
}

/// Evaluates every functional at the preset's parameters; μ-dependent
/// functionals get one row per grid value, the rest a single row.
pub fn specialization_bound_table(
    preset: &Preset,
    mu_grid: &[Mu],
    functionals: &[FunctionalId],
) -> Result<Vec<TableRow>> {
    let p = preset.params()?;
    let mut rows = Vec::new();
    for &id in functionals {
        let mus: Vec<Option<Mu>> = if id.needs_mu() { mu_grid.iter().copied().map(Some).collect() } else { vec![None] };
        for mu in mus {
            let mu = match (id, mu) {
                (FunctionalId::FsComplex, Some(Mu::Real(r))) => Some(Mu::Complex(Complex64::new(r, 0.0))),
                _ => mu,
            };
            let spec = bound(id, &p, mu)?;
            rows.push(TableRow {
                functional: id,
                a: p.a,
                b: p.b,
                c: p.c,
                mu_re: spec.mu.map(|m| m[0]),
                mu_im: spec.mu.map(|m| m[1]),
                bound: spec.bound,
                status: spec.status,
            });
        }
    }
    Ok(rows)
}

pub fn table_to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}
