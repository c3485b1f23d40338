//! Numerical checks: class membership, brute-force maximization of the
//! functionals over the Carathéodory body, and comparison with the bounds.

mod membership;
mod report;
mod search;

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundStatus, FunctionalId};
use crate::caratheodory::CaratheodoryPoint;
use crate::error::{Error, Result};

pub use membership::{
    extremal_member, image_quotient, membership_test, power_extremal_member, subordination_power_test,
    sufficient_condition_check, MembershipResult, SufficientConditionReport,
};
pub use report::{discrepancy_report, DiscrepancyReport, DiscrepancyRow};
pub use search::{brute_force_max, certify_point, coefficients_from_p, lz_grid_max};

/// Knobs of [`brute_force_max`]. The defaults give a few million functional
/// evaluations per report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    /// Values of `p` on `[0, 2]`.
    pub grid_p: usize,
    /// Angles for `arg x` and `arg ζ`.
    pub grid_angles: usize,
    /// Radius levels for `|x|`, clustered at 1.
    pub x_radii: usize,
    /// Radius levels for `|ζ|`, clustered at 1.
    pub zeta_radii: usize,
    /// Phase sweep on `p₁`.
    pub phases: usize,
    /// Random Herglotz measures for the functionals that need `p₄`.
    pub atoms: usize,
    pub max_atoms: usize,
    /// Rotations of each symmetric configuration.
    pub rotations: usize,
    /// Best atom configurations refined by local search.
    pub polish_seeds: usize,
    pub polish_steps: usize,
    pub seed: u64,
    pub attain_tol: f64,
    pub consistency_tol: f64,
    /// Truncation order at which a witness is rebuilt for certification.
    pub certify_order: usize,
    pub radius: f64,
    pub samples: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid_p: 41,
            grid_angles: 24,
            x_radii: 6,
            zeta_radii: 3,
            phases: 8,
            atoms: 100_000,
            max_atoms: 4,
            rotations: 24,
            polish_seeds: 4,
            polish_steps: 400,
            seed: 0,
            attain_tol: 1e-3,
            consistency_tol: 1e-9,
            certify_order: 4096,
            radius: 0.999,
            samples: 4096,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.grid_p < 2 {
            return bad("grid_p must be at least 2");
        }
        if self.grid_angles == 0 || self.x_radii == 0 || self.zeta_radii == 0 || self.phases == 0 {
            return bad("grid dimensions must be positive");
        }
        if self.max_atoms == 0 || self.rotations == 0 {
            return bad("max_atoms and rotations must be positive");
        }
        if !(self.attain_tol >= 0.0 && self.consistency_tol >= 0.0) {
            return bad("tolerances must be nonnegative");
        }
        if self.certify_order < 6 {
            return bad("certify_order must be at least 6");
        }
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return bad("radius must lie in (0, 1)");
        }
        if self.samples == 0 {
            return bad("samples must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerificationStatus {
    #[serde(rename = "ATTAINED")]
    Attained,
    #[serde(rename = "CONSISTENT")]
    Consistent,
    #[serde(rename = "VIOLATED")]
    Violated,
}

impl VerificationStatus {
    /// `gap = bound − numeric_max`.
    pub fn classify(gap: f64, attain_tol: f64, consistency_tol: f64) -> Self {
        if gap < -consistency_tol {
            VerificationStatus::Violated
        } else if gap.abs() <= attain_tol {
            VerificationStatus::Attained
        } else {
            VerificationStatus::Consistent
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            VerificationStatus::Attained => "ATTAINED",
            VerificationStatus::Consistent => "CONSISTENT",
            VerificationStatus::Violated => "VIOLATED",
        }
    }
}

/// Membership evidence for a witness, rebuilt at `order`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certification {
    pub certified: bool,
    pub member: bool,
    pub margin: f64,
    pub order: usize,
    pub radius: f64,
    pub samples: usize,
    pub tail_estimate: f64,
    pub toeplitz_min_eigenvalue: f64,
    pub toeplitz_valid: bool,
    /// Largest difference between the searched coefficients and the rebuilt ones.
    pub coefficient_mismatch: f64,
}

/// Minimum membership margin for a certified witness.
pub const CERTIFY_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub point: CaratheodoryPoint,
    /// `p₁, p₂, …` as `[re, im]`.
    pub p: Vec<[f64; 2]>,
    /// `a₂, a₃, …` as `[re, im]`.
    pub coefficients: Vec<[f64; 2]>,
    pub certification: Certification,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub functional: FunctionalId,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mu: Option<[f64; 2]>,
    pub bound: f64,
    pub bound_status: BoundStatus,
    pub hypotheses_hold: bool,
    pub numeric_max: f64,
    pub gap: f64,
    pub status: VerificationStatus,
    pub witness: Witness,
    /// For `H3_1`: the largest triangle-inequality assembly
    /// `|a₃||a₂a₄−a₃²| + |a₄||a₂a₃−a₄| + |a₅||a₃−a₂²|` seen.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h3_assembly_max: Option<f64>,
    pub samples: u64,
    pub seed: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify() {
        use VerificationStatus::*;
        assert_eq!(VerificationStatus::classify(0.0, 1e-3, 1e-9), Attained);
        assert_eq!(VerificationStatus::classify(5e-4, 1e-3, 1e-9), Attained);
        assert_eq!(VerificationStatus::classify(-5e-10, 1e-3, 1e-9), Attained);
        assert_eq!(VerificationStatus::classify(0.01, 1e-3, 1e-9), Consistent);
        assert_eq!(VerificationStatus::classify(-1e-6, 1e-3, 1e-9), Violated);
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::default().validate().is_ok());
        let bad = SearchConfig { grid_p: 1, ..SearchConfig::default() };
        assert!(bad.validate().is_err());
        let bad = SearchConfig { radius: 1.0, ..SearchConfig::default() };
        assert!(bad.validate().is_err());
    }
}
