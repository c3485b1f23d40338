use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::membership::membership_test;
use super::{Certification, SearchConfig, VerificationReport, VerificationStatus, Witness, CERTIFY_MARGIN};
use crate::bounds::{bound, functional_kernel, hankel3_assembly, FunctionalId, Mu};
use crate::caratheodory::{
    member_coeffs_from_phi, phi_from_p, toeplitz_min_eigenvalue, Atom, AtomSampler, CaratheodoryPoint, ClosedForm,
    HerglotzAtoms, LzGrid, PSD_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::operator::HohlovParams;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Polished candidates must beat the incumbent by this much.
const POLISH_EPS: f64 = 1e-13;

/// Values this close to the maximum (relative) count as ties; the witness is
/// the first of them, so roundoff does not decide which extremal is shown.
const TIE_REL: f64 = 1e-14;

fn tie_floor(max: f64) -> f64 {
    max - TIE_REL * max.abs().max(1.0)
}

/// Running maximum with the smallest index winning ties, so the parallel
/// reduction does not depend on scheduling.
#[derive(Debug, Clone, Copy)]
struct Best {
    value: f64,
    index: usize,
    assembly: f64,
    nonfinite: usize,
}

impl Best {
    const EMPTY: Best = Best { value: f64::NEG_INFINITY, index: usize::MAX, assembly: f64::NEG_INFINITY, nonfinite: 0 };

    fn single(value: f64, index: usize, assembly: f64) -> Best {
        if value.is_finite() && !assembly.is_nan() {
            Best { value, index, assembly, nonfinite: 0 }
        } else {
            Best { nonfinite: 1, ..Best::EMPTY }
        }
    }

    fn merge(self, other: Best) -> Best {
        let pick = if other.value > self.value || (other.value == self.value && other.index < self.index) {
            other
        } else {
            self
        };
        Best {
            value: pick.value,
            index: pick.index,
            assembly: self.assembly.max(other.assembly),
            nonfinite: self.nonfinite + other.nonfinite,
        }
    }
}

/// `a₂, …, a_{k+1}` of the member whose `φ` starts `1 + p₁z + … + p_k z^k`.
pub fn coefficients_from_p(p: &HohlovParams, seq: &[Complex64]) -> Result<Vec<Complex64>> {
    let f = member_coeffs_from_phi(p, &phi_from_p(seq))?;
    Ok(f.coeffs()[2..].to_vec())
}

fn kernel_input(coeffs: &[Complex64]) -> [Complex64; 4] {
    let mut a = [ZERO; 4];
    for (slot, v) in a.iter_mut().zip(coeffs) {
        *slot = *v;
    }
    a
}

/// Maximum of an `a₂…a₄` functional over the LZ grid, with the index of the
/// first grid point attaining it up to roundoff.
pub fn lz_grid_max(id: FunctionalId, p: &HohlovParams, mu: Complex64, grid: &LzGrid) -> Result<(f64, usize)> {
    if id.max_index() > 4 {
        return Err(Error::InvalidConfig(format!("{id} needs a5; the LZ grid only covers a2..a4")));
    }
    let cf = ClosedForm::new(p);
    let value = |i: usize| {
        let [p1, p2, p3] = grid.p_triple(i);
        let [a2, a3, a4] = cf.coeffs(p1, p2, p3);
        functional_kernel(id, &[a2, a3, a4, ZERO], mu)
    };
    let best =
        (0..grid.len()).into_par_iter().map(|i| Best::single(value(i), i, 0.0)).reduce(|| Best::EMPTY, Best::merge);
    if best.nonfinite > 0 || best.index == usize::MAX {
        return Err(Error::NonFinite(format!("{} non-finite {id} values on the grid", best.nonfinite)));
    }
    let floor = tie_floor(best.value);
    let first = (0..grid.len()).into_par_iter().find_first(|&i| value(i) >= floor).unwrap_or(best.index);
    Ok((best.value, first))
}

struct AtomOutcome {
    value: f64,
    atoms: HerglotzAtoms,
    coeffs: Vec<Complex64>,
    assembly: f64,
    evaluated: u64,
}

fn eval_atoms(
    id: FunctionalId,
    p: &HohlovParams,
    mu: Complex64,
    h: &HerglotzAtoms,
) -> Result<(f64, f64, Vec<Complex64>)> {
    let coeffs = coefficients_from_p(p, &h.p_sequence(4))?;
    let a = kernel_input(&coeffs);
    Ok((functional_kernel(id, &a, mu), hankel3_assembly(&a), coeffs))
}

fn perturb(rng: &mut ChaCha8Rng, h: &HerglotzAtoms, scale: f64) -> Option<HerglotzAtoms> {
    let mut raw: Vec<(f64, f64)> = h
        .atoms()
        .iter()
        .map(|a| {
            let w = a.weight * (scale * rng.random_range(-1.0..1.0)).exp();
            let t = a.point.arg() + scale * rng.random_range(-1.0..1.0);
            (w, t)
        })
        .collect();
    let total: f64 = raw.iter().map(|r| r.0).sum();
    if !(total > 0.0) {
        return None;
    }
    for r in raw.iter_mut() {
        r.0 /= total;
    }
    let atoms = raw.into_iter().map(|(weight, t)| Atom { weight, point: Complex64::from_polar(1.0, t) }).collect();
    HerglotzAtoms::new(atoms).ok()
}

fn atoms_max(id: FunctionalId, p: &HohlovParams, mu: Complex64, cfg: &SearchConfig) -> Result<AtomOutcome> {
    let configs: Vec<HerglotzAtoms> = AtomSampler::new(cfg.atoms, cfg.max_atoms, cfg.rotations, cfg.seed).collect();
    let values: Vec<Result<(f64, f64)>> =
        configs.par_iter().map(|h| eval_atoms(id, p, mu, h).map(|(v, asm, _)| (v, asm))).collect();
    let mut best = Best::EMPTY;
    let mut scored = Vec::with_capacity(values.len());
    for (i, v) in values.into_iter().enumerate() {
        let (value, assembly) = v?;
        let cand = Best::single(value, i, assembly);
        best = best.merge(cand);
        if cand.nonfinite == 0 {
            scored.push((value, i));
        }
    }
    if best.nonfinite > 0 || best.index == usize::MAX {
        return Err(Error::NonFinite(format!("{} non-finite {id} values over atoms", best.nonfinite)));
    }
    let mut evaluated = configs.len() as u64;

    // local refinement from the best few starting points
    scored.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    let floor = tie_floor(best.value);
    let first = scored.iter().filter(|s| s.0 >= floor).map(|s| s.1).min().unwrap_or(best.index);
    let mut winner = (best.value, configs[first].clone());
    let mut assembly = best.assembly;
    for (rank, &(start_value, idx)) in scored.iter().take(cfg.polish_seeds).enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (0x5eed_0000_u64 + rank as u64));
        let mut current = (start_value, configs[idx].clone());
        for step in 0..cfg.polish_steps {
            let scale = 0.2 * 0.99f64.powi(step as i32);
            let Some(trial) = perturb(&mut rng, &current.1, scale) else { continue };
            let (v, asm, _) = eval_atoms(id, p, mu, &trial)?;
            evaluated += 1;
            if !v.is_finite() || asm.is_nan() {
                return Err(Error::NonFinite(format!("{id} during refinement")));
            }
            assembly = assembly.max(asm);
            if v > current.0 + POLISH_EPS {
                current = (v, trial);
            }
        }
        if current.0 > winner.0 + POLISH_EPS {
            winner = current;
        }
    }
    let (value, atoms) = winner;
    let (_, _, coeffs) = eval_atoms(id, p, mu, &atoms)?;
    Ok(AtomOutcome { value, atoms, coeffs, assembly, evaluated })
}

/// Rebuilds the member of `point` at `cfg.certify_order`, runs the
/// membership test and the Toeplitz check on `p₁…p_k`.
pub fn certify_point(
    p: &HohlovParams,
    point: &CaratheodoryPoint,
    coeffs: &[Complex64],
    k: usize,
    cfg: &SearchConfig,
) -> Result<Certification> {
    let phi = point.phi_series(cfg.certify_order - 1);
    let f = member_coeffs_from_phi(p, &phi)?;
    let m = membership_test(p, &f, cfg.radius, cfg.samples)?;
    let lambda = toeplitz_min_eigenvalue(&point.p_sequence(k));
    let toeplitz_valid = lambda.is_finite() && lambda >= PSD_TOLERANCE;
    let mismatch = coeffs.iter().enumerate().map(|(i, v)| (f.coeff(i + 2) - v).norm()).fold(0.0, f64::max);
    Ok(Certification {
        certified: m.member && m.margin > CERTIFY_MARGIN && toeplitz_valid && mismatch <= 1e-9,
        member: m.member,
        margin: m.margin,
        order: m.order,
        radius: cfg.radius,
        samples: cfg.samples,
        tail_estimate: m.tail_estimate,
        toeplitz_min_eigenvalue: lambda,
        toeplitz_valid,
        coefficient_mismatch: mismatch,
    })
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// Maximizes the functional over sampled Carathéodory data and compares the
/// result with the closed-form bound.
///
/// Functionals of `a₂…a₄` walk the LZ grid through the closed-form
/// coefficients; those needing `a₅` use Herglotz atoms through the series
/// route, followed by a short local refinement. A `VIOLATED` outcome whose
/// witness fails certification is an error.
pub fn brute_force_max(
    id: FunctionalId,
    p: &HohlovParams,
    mu: Option<Mu>,
    cfg: &SearchConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    let spec = bound(id, p, mu)?;
    let mu_value = if id.needs_mu() { mu.map(|m| m.value()).unwrap_or(ZERO) } else { ZERO };

    let (numeric_max, point, p_seq, coeffs, assembly, samples) = if id.max_index() <= 4 {
        let grid = LzGrid::new(cfg.grid_p, cfg.grid_angles, cfg.x_radii, cfg.zeta_radii, cfg.phases)?;
        let (value, index) = lz_grid_max(id, p, mu_value, &grid)?;
        let (lz, phase) = grid.point(index);
        let triple = grid.p_triple(index);
        let coeffs = ClosedForm::new(p).coeffs(triple[0], triple[1], triple[2]).to_vec();
        (value, CaratheodoryPoint::Lz { point: lz, phase }, triple.to_vec(), coeffs, None, grid.len() as u64)
    } else {
        let out = atoms_max(id, p, mu_value, cfg)?;
        let seq = out.atoms.p_sequence(4);
        let assembly = (id == FunctionalId::H31).then_some(out.assembly);
        (out.value, CaratheodoryPoint::Atoms { atoms: out.atoms }, seq, out.coeffs, assembly, out.evaluated)
    };

    let certification = certify_point(p, &point, &coeffs, p_seq.len(), cfg)?;
    let gap = spec.bound - numeric_max;
    let status = VerificationStatus::classify(gap, cfg.attain_tol, cfg.consistency_tol);
    if status == VerificationStatus::Violated && !certification.certified {
        return Err(Error::UncertifiedViolation(format!(
            "{id} at {p}: numeric max {numeric_max} exceeds bound {} but the witness margin is {}",
            spec.bound, certification.margin
        )));
    }
    Ok(VerificationReport {
        functional: id,
        a: p.a,
        b: p.b,
        c: p.c,
        mu: spec.mu,
        bound: spec.bound,
        bound_status: spec.status,
        hypotheses_hold: spec.hypotheses_hold,
        numeric_max,
        gap,
        status,
        witness: Witness { point, p: pairs(&p_seq), coefficients: pairs(&coeffs), certification },
        h3_assembly_max: assembly,
        samples,
        seed: cfg.seed,
    })
}
