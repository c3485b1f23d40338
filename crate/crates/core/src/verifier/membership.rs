//! Pointwise checks on a circle `|z| = r`: class membership, the power
//! subordination conclusion, and the ratio premise of the sufficient condition.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{apply, apply_inverse, HohlovParams};
use crate::series::TruncatedSeries;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Smallest `|I f(z)|/|z|` accepted before a quotient is declared singular.
const DENOMINATOR_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipResult {
    pub member: bool,
    /// `1 − max |s(z)^γ − 1|` over the samples (`γ = 2` for membership).
    pub margin: f64,
    pub max_value: f64,
    /// Where the maximum was seen.
    pub argmax: [f64; 2],
    /// `max |c_k| r^k` over the last four coefficients of `s = I f/z`;
    /// a rough size of the neglected tail.
    pub tail_estimate: f64,
    pub order: usize,
    pub radius: f64,
    pub samples: usize,
}

fn check_circle(radius: f64, samples: usize) -> Result<()> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InvalidConfig(format!("radius must lie in (0, 1), got {radius}")));
    }
    if samples == 0 {
        return Err(Error::InvalidConfig("need at least one sample".into()));
    }
    Ok(())
}

fn circle_point(radius: f64, samples: usize, j: usize) -> Complex64 {
    Complex64::from_polar(radius, TAU * j as f64 / samples as f64)
}

fn fmt_z(z: Complex64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

/// `s = I f/z` as a unit series.
pub fn image_quotient(p: &HohlovParams, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    Ok(apply(p, f)?.shift_down())
}

fn sample_max(
    s: &TruncatedSeries,
    radius: f64,
    samples: usize,
    value: impl Fn(Complex64, Complex64) -> Result<f64>,
) -> Result<MembershipResult> {
    check_circle(radius, samples)?;
    let mut max_value = f64::NEG_INFINITY;
    let mut argmax = Complex64::new(radius, 0.0);
    for j in 0..samples {
        let z = circle_point(radius, samples, j);
        let v = value(z, s.eval(z))?;
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("membership value at z = {}", fmt_z(z))));
        }
        if v > max_value {
            max_value = v;
            argmax = z;
        }
    }
    let n = s.order();
    Ok(MembershipResult {
        member: max_value < 1.0,
        margin: 1.0 - max_value,
        max_value,
        argmax: [argmax.re, argmax.im],
        tail_estimate: (n.saturating_sub(3)..=n).map(|k| s.coeff(k).norm() * radius.powi(k as i32)).fold(0.0, f64::max),
        order: n,
        radius,
        samples,
    })
}

/// Samples `|(I f/z)² − 1|` on `|z| = radius`. The truncated `s` is a
/// polynomial, so by the maximum principle the circle decides the disk.
pub fn membership_test(p: &HohlovParams, f: &TruncatedSeries, radius: f64, samples: usize) -> Result<MembershipResult> {
    let s = image_quotient(p, f)?;
    sample_max(&s, radius, samples, |_, v| Ok((v * v - ONE).norm()))
}

/// Samples `|(I f/z)^γ − 1|` with the principal power.
///
/// Fails with [`Error::BranchFailure`] where `Re(I f/z) ≤ 0`.
pub fn subordination_power_test(
    p: &HohlovParams,
    f: &TruncatedSeries,
    gamma: f64,
    radius: f64,
    samples: usize,
) -> Result<MembershipResult> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidConfig(format!("gamma must be positive, got {gamma}")));
    }
    let s = image_quotient(p, f)?;
    sample_max(&s, radius, samples, |z, v| {
        if v.re <= 0.0 {
            return Err(Error::BranchFailure { z: fmt_z(z) });
        }
        Ok((v.powf(gamma) - ONE).norm())
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SufficientConditionReport {
    pub gamma: f64,
    pub radius: f64,
    pub samples: usize,
    /// `max Re(I_{a+1} f / I f)` over the circle.
    pub premise_max: f64,
    /// `1 + 1/(2aγ)`.
    pub threshold: f64,
    /// Where `premise_max` was seen.
    pub premise_argmax: [f64; 2],
    /// Winding number of `I f/z` around 0 along the circle.
    pub winding: i64,
    pub premise_holds: bool,
    /// `None` when the power conclusion hit a branch failure.
    pub conclusion_max: Option<f64>,
    pub conclusion_holds: bool,
}

impl SufficientConditionReport {
    pub fn counterexample(&self) -> bool {
        self.premise_holds && !self.conclusion_holds
    }
}

/// Evaluates the premise `Re(I_{a+1} f / I f) < 1 + 1/(2aγ)` and the
/// conclusion `|(I f/z)^γ − 1| < 1` on the same circle.
///
/// The premise is only meaningful when `I f/z` has no zeros inside the
/// circle (otherwise the ratio has poles); a nonzero winding number marks
/// the premise false. A conclusion that leaves the right half-plane counts
/// as not holding.
pub fn sufficient_condition_check(
    p: &HohlovParams,
    f: &TruncatedSeries,
    gamma: f64,
    radius: f64,
    samples: usize,
) -> Result<SufficientConditionReport> {
    check_circle(radius, samples)?;
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidConfig(format!("gamma must be positive, got {gamma}")));
    }
    let s = image_quotient(p, f)?;
    let s_next = image_quotient(&p.shifted_a(), f)?;

    let mut premise_max = f64::NEG_INFINITY;
    let mut premise_argmax = Complex64::new(radius, 0.0);
    let mut turn = 0.0;
    let mut prev_arg: Option<f64> = None;
    for j in 0..=samples {
        let z = circle_point(radius, samples, j % samples);
        let den = s.eval(z);
        if den.norm() < DENOMINATOR_FLOOR || !den.is_finite() {
            return Err(Error::DenominatorVanishes { z: fmt_z(z) });
        }
        let arg = den.arg();
        if let Some(prev) = prev_arg {
            let mut d = arg - prev;
            if d > std::f64::consts::PI {
                d -= TAU;
            } else if d < -std::f64::consts::PI {
                d += TAU;
            }
            turn += d;
        }
        prev_arg = Some(arg);
        if j == samples {
            break;
        }
        let ratio = (s_next.eval(z) / den).re;
        if !ratio.is_finite() {
            return Err(Error::NonFinite(format!("ratio at z = {}", fmt_z(z))));
        }
        if ratio > premise_max {
            premise_max = ratio;
            premise_argmax = z;
        }
    }
    let winding = (turn / TAU).round() as i64;
    let threshold = 1.0 + 1.0 / (2.0 * p.a * gamma);
    let premise_holds = winding == 0 && premise_max < threshold;

    let (conclusion_max, conclusion_holds) = match subordination_power_test(p, f, gamma, radius, samples) {
        Ok(r) => (Some(r.max_value), r.member),
        Err(Error::BranchFailure { .. }) => (None, false),
        Err(e) => return Err(e),
    };
    Ok(SufficientConditionReport {
        gamma,
        radius,
        samples,
        premise_max,
        threshold,
        premise_argmax: [premise_argmax.re, premise_argmax.im],
        winding,
        premise_holds,
        conclusion_max,
        conclusion_holds,
    })
}

/// `f = I⁻¹(z√(1 + z^k))`; a member with Schwarz function `z^k`.
pub fn extremal_member(p: &HohlovParams, k: usize, order: usize) -> Result<TruncatedSeries> {
    if k == 0 || k > order {
        return Err(Error::InvalidConfig(format!("need 1 <= k <= order, got k = {k}")));
    }
    let inner = TruncatedSeries::one(order - 1).add(&TruncatedSeries::monomial(ONE, k, order - 1));
    apply_inverse(p, &inner.principal_sqrt()?.shift_up())
}

/// `f = I⁻¹(z(1 + z)^{1/γ})`, the boundary case of the sufficient condition.
pub fn power_extremal_member(p: &HohlovParams, gamma: f64, order: usize) -> Result<TruncatedSeries> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidConfig(format!("gamma must be positive, got {gamma}")));
    }
    if order < 2 {
        return Err(Error::InvalidConfig("order must be at least 2".into()));
    }
    let base = TruncatedSeries::one(order - 1).add(&TruncatedSeries::identity(order - 1));
    apply_inverse(p, &base.unit_power(1.0 / gamma)?.shift_up())
}
