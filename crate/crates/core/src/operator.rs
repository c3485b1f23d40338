//! The Hohlov operator `I(a,b;c) f = z·₂F₁(a,b;c;z) * f` as a diagonal
//! multiplier on Taylor coefficients.
//!
//! Coefficient `n` of `I f` is `ψ_n a_n` with
//! `ψ_n = (a)_{n−1} (b)_{n−1} / ((c)_{n−1} (n−1)!)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Rising factorial `α(α+1)…(α+n−1)`, with `(α)_0 = 1`.
pub fn pochhammer(alpha: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (alpha + k as f64))
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Real parameters `(a, b, c)` of the operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HohlovParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HohlovParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, value) in [("a", a), ("b", b), ("c", c)] {
            if !value.is_finite() {
                return Err(Error::NonFiniteParameter { name, value });
            }
        }
        if is_nonpositive_integer(c) {
            return Err(Error::InvalidC(c));
        }
        Ok(HohlovParams { a, b, c })
    }

    /// Blanket hypothesis of the main coefficient theorems: `a, b ≥ c > 0`.
    pub fn main_theorem_valid(&self) -> bool {
        self.c > 0.0 && self.a >= self.c && self.b >= self.c
    }

    /// Hypothesis of the second Hankel determinant theorem: `a ≥ c ≥ 1/2`.
    pub fn k8_valid(&self) -> bool {
        self.a >= self.c && self.c >= 0.5
    }

    /// The same triple with `a` replaced by `a + 1`.
    pub fn shifted_a(&self) -> Self {
        HohlovParams { a: self.a + 1.0, ..*self }
    }

    pub fn multipliers(&self, n_max: usize) -> MultiplierSequence {
        MultiplierSequence::new(self, n_max)
    }

    /// `(c)_n / ((a)_n (b)_n)`, the ratio every bound is built from.
    pub fn ratio(&self, n: usize) -> f64 {
        pochhammer(self.c, n) / (pochhammer(self.a, n) * pochhammer(self.b, n))
    }
}

impl fmt::Display for HohlovParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, c={})", self.a, self.b, self.c)
    }
}

/// `ψ_1 … ψ_N`, stored with `psi[0] = ψ_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierSequence {
    psi: Vec<f64>,
}

impl MultiplierSequence {
    /// Built from the term ratio `ψ_{n+1}/ψ_n = (a+n−1)(b+n−1)/((c+n−1) n)`,
    /// which stays finite at orders where the Pochhammer products overflow.
    pub fn new(p: &HohlovParams, n_max: usize) -> Self {
        let mut psi = Vec::with_capacity(n_max);
        let mut current = 1.0;
        for n in 1..=n_max {
            psi.push(current);
            let m = (n - 1) as f64;
            current *= (p.a + m) * (p.b + m) / ((p.c + m) * n as f64);
        }
        MultiplierSequence { psi }
    }

    /// `ψ_n` for `1 ≤ n ≤ N`.
    pub fn get(&self, n: usize) -> f64 {
        self.psi[n - 1]
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.psi
    }

    /// The multipliers as the series `Σ ψ_n z^n`, so that `I f = f * ψ`.
    pub fn as_series(&self) -> TruncatedSeries {
        let mut coeffs = vec![Complex64::new(0.0, 0.0)];
        coeffs.extend(self.psi.iter().map(|&v| Complex64::new(v, 0.0)));
        TruncatedSeries::new(coeffs).expect("non-empty")
    }
}

pub fn multiplier_sequence(p: &HohlovParams, n_max: usize) -> MultiplierSequence {
    MultiplierSequence::new(p, n_max)
}

/// `I f`, the Hadamard product of `f` with `z·₂F₁(a,b;c;z)`.
pub fn apply(p: &HohlovParams, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    Ok(f.hadamard(&p.multipliers(f.order()).as_series()))
}

/// Diagonal inverse of [`apply`]: coefficient `n` becomes `g_n / ψ_n`.
pub fn apply_inverse(p: &HohlovParams, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !g.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let psi = p.multipliers(g.order());
    let mut out = g.clone();
    for n in 2..=g.order() {
        let m = psi.get(n);
        if m == 0.0 || !m.is_finite() {
            return Err(Error::SingularMultiplier { index: n });
        }
        out.set_coeff(n, g.coeff(n) / m);
    }
    Ok(out)
}

/// Max coefficient residual of `z (I f)' = a I_{a+1} f − (a−1) I f`.
///
/// Each residual is divided by `max(1, |a (I_{a+1} f)_n| + |(a−1)(I f)_n|)`,
/// the size of the terms the right side subtracts, so the result measures
/// roundoff rather than the growth of `ψ_n`.
pub fn check_shift_identity(p: &HohlovParams, f: &TruncatedSeries) -> Result<f64> {
    let image = apply(p, f)?;
    let lhs = image.derivative().shift_up();
    let shifted = apply(&p.shifted_a(), f)?.scale(Complex64::new(p.a, 0.0));
    let lowered = image.scale(Complex64::new(p.a - 1.0, 0.0));
    let rhs = &shifted - &lowered;
    Ok((0..=f.order())
        .map(|n| {
            let scale = (shifted.coeff(n).norm() + lowered.coeff(n).norm()).max(1.0);
            (lhs.coeff(n) - rhs.coeff(n)).norm() / scale
        })
        .fold(0.0, f64::max))
}

/// Named specializations of the operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    CarlsonShaffer { a: f64, c: f64 },
    Ruscheweyh { lambda: f64 },
    Bernardi { eta: f64 },
    OwaSrivastava { alpha: f64 },
    Noor { n: u32 },
    ChoiSaigoSrivastava { lambda: f64, mu: f64 },
    Libera,
    Alexander,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::CarlsonShaffer { .. } => "carlson_shaffer",
            Preset::Ruscheweyh { .. } => "ruscheweyh",
            Preset::Bernardi { .. } => "bernardi",
            Preset::OwaSrivastava { .. } => "owa_srivastava",
            Preset::Noor { .. } => "noor",
            Preset::ChoiSaigoSrivastava { .. } => "choi_saigo_srivastava",
            Preset::Libera => "libera",
            Preset::Alexander => "alexander",
        }
    }

    /// The `(a, b, c)` triple of this specialization.
    pub fn params(&self) -> Result<HohlovParams> {
        match *self {
            Preset::CarlsonShaffer { a, c } => HohlovParams::new(a, 1.0, c),
            Preset::Ruscheweyh { lambda } => {
                if !(lambda > -1.0) {
                    return Err(Error::ParamOutOfRange(format!("ruscheweyh needs lambda > -1, got {lambda}")));
                }
                HohlovParams::new(lambda + 1.0, 1.0, 1.0)
            }
            Preset::Bernardi { eta } => {
                if !(eta > -1.0) {
                    return Err(Error::ParamOutOfRange(format!("bernardi needs eta > -1, got {eta}")));
                }
                HohlovParams::new(1.0, 1.0 + eta, 2.0 + eta)
            }
            Preset::OwaSrivastava { alpha } => {
                if !(alpha < 2.0) {
                    return Err(Error::ParamOutOfRange(format!("owa_srivastava needs alpha < 2, got {alpha}")));
                }
                HohlovParams::new(2.0, 1.0, 2.0 - alpha)
            }
            Preset::Noor { n } => HohlovParams::new(2.0, 1.0, n as f64 + 1.0),
            Preset::ChoiSaigoSrivastava { lambda, mu } => {
                if !(lambda > -1.0) || !(mu > 0.0) {
                    return Err(Error::ParamOutOfRange(format!(
                        "choi_saigo_srivastava needs lambda > -1 and mu > 0, got ({lambda}, {mu})"
                    )));
                }
                HohlovParams::new(mu, 1.0, lambda + 1.0)
            }
            Preset::Libera => HohlovParams::new(1.0, 2.0, 3.0),
            Preset::Alexander => HohlovParams::new(2.0, 1.0, 1.0),
        }
    }
}

/// Parses `NAME[:P1[,P2]]`, e.g. `ruscheweyh:1`, `carlson_shaffer:2,1`, `libera`.
impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), a.trim()),
            None => (s.trim(), ""),
        };
        let values: Vec<f64> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::ParamOutOfRange(format!("cannot parse preset parameter '{v}'")))
                })
                .collect::<Result<_>>()?
        };
        let arity = |n: usize| -> Result<()> {
            if values.len() == n {
                Ok(())
            } else {
                Err(Error::ParamOutOfRange(format!("preset {name} takes {n} parameter(s), got {}", values.len())))
            }
        };
        let preset = match name.to_ascii_lowercase().as_str() {
            "carlson_shaffer" => {
                arity(2)?;
                Preset::CarlsonShaffer { a: values[0], c: values[1] }
            }
            "ruscheweyh" => {
                arity(1)?;
                Preset::Ruscheweyh { lambda: values[0] }
            }
            "bernardi" => {
                arity(1)?;
                Preset::Bernardi { eta: values[0] }
            }
            "owa_srivastava" => {
                arity(1)?;
                Preset::OwaSrivastava { alpha: values[0] }
            }
            "noor" => {
                arity(1)?;
                let n = values[0];
                if n < 0.0 || n.fract() != 0.0 {
                    return Err(Error::ParamOutOfRange(format!("noor needs a nonnegative integer, got {n}")));
                }
                Preset::Noor { n: n as u32 }
            }
            "choi_saigo_srivastava" => {
                arity(2)?;
                Preset::ChoiSaigoSrivastava { lambda: values[0], mu: values[1] }
            }
            "libera" => {
                arity(0)?;
                Preset::Libera
            }
            "alexander" => {
                arity(0)?;
                Preset::Alexander
            }
            _ => return Err(Error::UnknownPreset(name.to_string())),
        };
        preset.params()?;
        Ok(preset)
    }
}

pub fn preset(spec: &str) -> Result<HohlovParams> {
    spec.parse::<Preset>()?.params()
}
