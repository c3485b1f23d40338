//! Carathéodory functions `φ = 1 + p₁z + p₂z² + …` with `Re φ > 0`.
//!
//! Two concrete parametrizations are supported: finite Herglotz measures
//! (atoms on the unit circle) and Libera–Zlotkiewicz triples `(p, x, ζ)`.
//! A triple is realized as an explicit rational `φ` through the Schur
//! recursion, so it defines every `p_k`, not only the first three.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{apply_inverse, pochhammer, HohlovParams};
use crate::series::TruncatedSeries;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Smallest Toeplitz eigenvalue still accepted as positive semidefinite.
pub const PSD_TOLERANCE: f64 = -1e-9;

const ATOM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub weight: f64,
    pub point: Complex64,
}

/// `φ(z) = Σ λ_j (1 + η_j z)/(1 − η_j z)` with `Σ λ_j = 1`, `|η_j| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HerglotzAtoms {
    atoms: Vec<Atom>,
}

impl HerglotzAtoms {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidAtoms("empty atom list".into()));
        }
        let mut total = 0.0;
        for atom in &atoms {
            if !(atom.weight >= 0.0) {
                return Err(Error::InvalidAtoms(format!("negative weight {}", atom.weight)));
            }
            if (atom.point.norm() - 1.0).abs() > ATOM_TOLERANCE {
                return Err(Error::InvalidAtoms(format!("|eta| = {} is not 1", atom.point.norm())));
            }
            total += atom.weight;
        }
        if (total - 1.0).abs() > ATOM_TOLERANCE {
            return Err(Error::InvalidAtoms(format!("weights sum to {total}")));
        }
        Ok(HerglotzAtoms { atoms })
    }

    /// Atoms given as `(weight, angle)` pairs.
    pub fn from_angles(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(w, t)| Atom { weight: w, point: Complex64::from_polar(1.0, t) }).collect())
    }

    /// `m` equal atoms at `e^{iθ}·(m-th roots of unity)`, i.e.
    /// `φ = (1 + e^{imθ} z^m)/(1 − e^{imθ} z^m)`.
    pub fn symmetric(m: usize, theta: f64) -> Self {
        let m = m.max(1);
        let atoms = (0..m)
            .map(|j| Atom {
                weight: 1.0 / m as f64,
                point: Complex64::from_polar(1.0, theta + TAU * j as f64 / m as f64),
            })
            .collect();
        HerglotzAtoms { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// `p_k = 2 Σ λ_j η_j^k` for `k = 1..=k_max`.
    pub fn p_sequence(&self, k_max: usize) -> Vec<Complex64> {
        let mut out = vec![ZERO; k_max];
        for atom in &self.atoms {
            let mut power = ONE;
            for slot in out.iter_mut() {
                power *= atom.point;
                *slot += power * (2.0 * atom.weight);
            }
        }
        out
    }

    /// Writes `p_1..=p_k` into `out` without allocating.
    pub fn p_sequence_into(&self, out: &mut [Complex64]) {
        out.iter_mut().for_each(|v| *v = ZERO);
        for atom in &self.atoms {
            let mut power = ONE;
            for slot in out.iter_mut() {
                power *= atom.point;
                *slot += power * (2.0 * atom.weight);
            }
        }
    }

    pub fn phi_series(&self, order: usize) -> TruncatedSeries {
        phi_from_p(&self.p_sequence(order))
    }
}

pub fn atoms_to_p(h: &HerglotzAtoms, k_max: usize) -> Vec<Complex64> {
    h.p_sequence(k_max)
}

/// `1 + p_1 z + … + p_k z^k`.
pub fn phi_from_p(p: &[Complex64]) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(p.len() + 1);
    coeffs.push(ONE);
    coeffs.extend_from_slice(p);
    TruncatedSeries::new(coeffs).expect("non-empty")
}

/// Libera–Zlotkiewicz triple: `p₁ = p ∈ [0,2]`, `|x| ≤ 1`, `|ζ| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LzPoint {
    pub p: f64,
    pub x: Complex64,
    pub zeta: Complex64,
}

impl LzPoint {
    pub fn new(p: f64, x: Complex64, zeta: Complex64) -> Result<Self> {
        if !(0.0..=2.0).contains(&p) {
            return Err(Error::InvalidLzPoint(format!("p = {p} outside [0, 2]")));
        }
        if !(x.norm() <= 1.0 + ATOM_TOLERANCE) || !(zeta.norm() <= 1.0 + ATOM_TOLERANCE) {
            return Err(Error::InvalidLzPoint(format!("|x| = {}, |zeta| = {} must be <= 1", x.norm(), zeta.norm())));
        }
        Ok(LzPoint { p, x, zeta })
    }

    /// `(p₁, p₂, p₃)`.
    pub fn p_triple(&self) -> [Complex64; 3] {
        [Complex64::new(self.p, 0.0), lz_p2(self), lz_p3(self)]
    }

    /// Schwarz function `w = (φ−1)/(φ+1)` realizing this triple.
    ///
    /// `w = z·s` where `s` has Schur parameters `(p/2, x, ζ)` and a constant
    /// tail: `s = T(p/2, z·T(x, z·ζ))` with `T(γ, u) = (γ + u)/(1 + γ̄ u)`.
    pub fn schwarz_series(&self, order: usize) -> TruncatedSeries {
        let z = TruncatedSeries::identity(order);
        let tail = TruncatedSeries::constant(self.zeta, order);
        let inner = schur_step(self.x, &z.cauchy_mul(&tail));
        let s = schur_step(Complex64::new(self.p / 2.0, 0.0), &z.cauchy_mul(&inner));
        z.cauchy_mul(&s)
    }

    pub fn phi_series(&self, order: usize) -> TruncatedSeries {
        phi_from_schwarz(&self.schwarz_series(order))
    }
}

/// `(γ + u)/(1 + γ̄ u)` for a series `u` with zero constant term.
fn schur_step(gamma: Complex64, u: &TruncatedSeries) -> TruncatedSeries {
    let order = u.order();
    let num = TruncatedSeries::constant(gamma, order).add(u);
    let den = TruncatedSeries::one(order).add(&u.scale(gamma.conj()));
    num.div(&den).expect("denominator has unit constant term")
}

/// `φ = (1 + w)/(1 − w)`.
pub fn phi_from_schwarz(w: &TruncatedSeries) -> TruncatedSeries {
    let one = TruncatedSeries::one(w.order());
    one.add(w).div(&one.sub(w)).expect("w has zero constant term")
}

/// `w = (φ − 1)/(φ + 1)`.
pub fn schwarz_from_phi(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !phi.is_unit() {
        return Err(Error::NotUnitSeries(format!("{}", phi.coeff(0))));
    }
    let one = TruncatedSeries::one(phi.order());
    phi.sub(&one).div(&phi.add(&one))
}

/// `p₂ = ½ {p₁² + (4 − p₁²) x}`.
pub fn lz_p2(pt: &LzPoint) -> Complex64 {
    let p = pt.p;
    let q = 4.0 - p * p;
    (pt.x * q + p * p) * 0.5
}

/// `p₃ = ¼ {p₁³ + 2(4−p₁²)p₁x − (4−p₁²)p₁x² + 2(4−p₁²)(1−|x|²)ζ}`.
pub fn lz_p3(pt: &LzPoint) -> Complex64 {
    let p = pt.p;
    let q = 4.0 - p * p;
    let x = pt.x;
    (Complex64::new(p * p * p, 0.0) + x * (2.0 * q * p) - x * x * (q * p) + pt.zeta * (2.0 * q * (1.0 - x.norm_sqr())))
        * 0.25
}

/// A point of the Carathéodory body as used by the searches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CaratheodoryPoint {
    /// LZ triple, rotated by `phase`: `φ(z) → φ(e^{iσ} z)`.
    Lz {
        point: LzPoint,
        phase: f64,
    },
    Atoms {
        atoms: HerglotzAtoms,
    },
}

impl CaratheodoryPoint {
    pub fn p_sequence(&self, k_max: usize) -> Vec<Complex64> {
        match self {
            CaratheodoryPoint::Lz { point, phase } => {
                let raw: Vec<Complex64> = if k_max <= 3 {
                    point.p_triple()[..k_max].to_vec()
                } else {
                    point.phi_series(k_max).coeffs()[1..].to_vec()
                };
                rotate(&raw, *phase)
            }
            CaratheodoryPoint::Atoms { atoms } => atoms.p_sequence(k_max),
        }
    }

    /// The full `φ` to the given order.
    pub fn phi_series(&self, order: usize) -> TruncatedSeries {
        match self {
            CaratheodoryPoint::Lz { point, phase } => {
                let phi = point.phi_series(order);
                phi_from_p(&rotate(&phi.coeffs()[1..], *phase))
            }
            CaratheodoryPoint::Atoms { atoms } => atoms.phi_series(order),
        }
    }
}

/// `p_k → p_k e^{ikσ}`.
pub fn rotate(p: &[Complex64], phase: f64) -> Vec<Complex64> {
    if phase == 0.0 {
        return p.to_vec();
    }
    let step = Complex64::from_polar(1.0, phase);
    let mut factor = ONE;
    p.iter()
        .map(|&v| {
            factor *= step;
            v * factor
        })
        .collect()
}

/// Smallest eigenvalue of the Hermitian Toeplitz matrix
/// `[[2, p₁, p₂, …], [p̄₁, 2, p₁, …], …]`.
pub fn toeplitz_min_eigenvalue(p: &[Complex64]) -> f64 {
    let n = p.len() + 1;
    let entry = |i: usize, j: usize| -> Complex64 {
        match j.cmp(&i) {
            std::cmp::Ordering::Equal => Complex64::new(2.0, 0.0),
            std::cmp::Ordering::Greater => p[j - i - 1],
            std::cmp::Ordering::Less => p[i - j - 1].conj(),
        }
    };
    let m = DMatrix::from_fn(n, n, entry);
    m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

/// Positive-semidefiniteness of the Toeplitz matrix, i.e. admissibility of
/// `(p₁, …, p_k)` as the start of a Carathéodory function.
pub fn toeplitz_validate(p: &[Complex64]) -> bool {
    let lambda = toeplitz_min_eigenvalue(p);
    lambda.is_finite() && lambda >= PSD_TOLERANCE
}

/// Coefficients of the class member whose `φ` is given:
/// `I f(z)/z = (2φ/(1+φ))^{1/2}`, then `a_n = g_{n−1}/ψ_n`.
/// The result has order `phi.order() + 1`.
pub fn member_coeffs_from_phi(p: &HohlovParams, phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !phi.is_unit() {
        return Err(Error::NotUnitSeries(format!("{}", phi.coeff(0))));
    }
    let one = TruncatedSeries::one(phi.order());
    let ratio = phi.scale(Complex64::new(2.0, 0.0)).div(&one.add(phi))?;
    member_from_image_quotient(p, &ratio.principal_sqrt()?)
}

/// Same as [`member_coeffs_from_phi`], starting from the Schwarz function:
/// `I f(z)/z = √(1 + w)`.
pub fn member_from_schwarz(p: &HohlovParams, w: &TruncatedSeries) -> Result<TruncatedSeries> {
    if w.coeff(0) != ZERO {
        return Err(Error::InnerConstantNonzero);
    }
    let one = TruncatedSeries::one(w.order());
    member_from_image_quotient(p, &one.add(w).principal_sqrt()?)
}

/// `f` such that `I f(z)/z = g`.
pub fn member_from_image_quotient(p: &HohlovParams, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !g.is_unit() {
        return Err(Error::NotUnitSeries(format!("{}", g.coeff(0))));
    }
    apply_inverse(p, &g.shift_up())
}

/// Precomputed factors of the closed-form coefficient formulas.
#[derive(Debug, Clone, Copy)]
pub struct ClosedForm {
    k2: f64,
    k3: f64,
    k4: f64,
}

impl ClosedForm {
    pub fn new(p: &HohlovParams) -> Self {
        let (a, b, c) = (p.a, p.b, p.c);
        ClosedForm {
            k2: c / (4.0 * a * b),
            k3: 2.0 * pochhammer(c, 2) / (pochhammer(a, 2) * pochhammer(b, 2)),
            k4: 6.0 * pochhammer(c, 3) / (pochhammer(a, 3) * pochhammer(b, 3)),
        }
    }

    /// `(a₂, a₃, a₄)` from `(p₁, p₂, p₃)`.
    #[inline]
    pub fn coeffs(&self, p1: Complex64, p2: Complex64, p3: Complex64) -> [Complex64; 3] {
        let p1sq = p1 * p1;
        [
            p1 * self.k2,
            (p2 * 0.25 - p1sq * (5.0 / 32.0)) * self.k3,
            (p3 * 0.25 - p1 * p2 * (5.0 / 16.0) + p1sq * p1 * (13.0 / 128.0)) * self.k4,
        ]
    }
}

pub fn closed_form_coeffs(p: &HohlovParams, p1: Complex64, p2: Complex64, p3: Complex64) -> [Complex64; 3] {
    ClosedForm::new(p).coeffs(p1, p2, p3)
}

/// Radii `1 − (1 − t)²` for `t` uniform on `[0, 1]`, clustered at the boundary.
/// A single level means the boundary circle only.
pub fn boundary_radii(levels: usize) -> Vec<f64> {
    match levels {
        0 => Vec::new(),
        1 => vec![1.0],
        n => (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                1.0 - (1.0 - t) * (1.0 - t)
            })
            .collect(),
    }
}

/// Regular LZ grid with a phase sweep. Index order (outermost first):
/// `p`, `|x|`, `arg x`, `|ζ|`, `arg ζ`, phase.
#[derive(Debug, Clone, PartialEq)]
pub struct LzGrid {
    p_values: Vec<f64>,
    x_radii: Vec<f64>,
    x_angles: Vec<Complex64>,
    zeta_radii: Vec<f64>,
    zeta_angles: Vec<Complex64>,
    phases: Vec<f64>,
}

impl LzGrid {
    pub fn new(p_points: usize, angles: usize, x_radii: usize, zeta_radii: usize, phases: usize) -> Result<Self> {
        if p_points < 2 {
            return Err(Error::InvalidConfig(format!("grid needs at least 2 values of p, got {p_points}")));
        }
        if angles == 0 || x_radii == 0 || zeta_radii == 0 || phases == 0 {
            return Err(Error::InvalidConfig("grid dimensions must be positive".into()));
        }
        let circle = |m: usize| (0..m).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / m as f64)).collect();
        Ok(LzGrid {
            p_values: (0..p_points).map(|i| 2.0 * i as f64 / (p_points - 1) as f64).collect(),
            x_radii: boundary_radii(x_radii),
            x_angles: circle(angles),
            zeta_radii: boundary_radii(zeta_radii),
            zeta_angles: circle(angles),
            phases: (0..phases).map(|k| TAU * k as f64 / phases as f64).collect(),
        })
    }

    pub fn p_values(&self) -> &[f64] {
        &self.p_values
    }

    pub fn len(&self) -> usize {
        self.p_values.len()
            * self.x_radii.len()
            * self.x_angles.len()
            * self.zeta_radii.len()
            * self.zeta_angles.len()
            * self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of points sharing one `p` value.
    pub fn block_len(&self) -> usize {
        self.len() / self.p_values.len()
    }

    pub fn point(&self, index: usize) -> (LzPoint, f64) {
        let mut rest = index;
        let mut take = |n: usize| {
            let i = rest % n;
            rest /= n;
            i
        };
        let phase = take(self.phases.len());
        let zeta_arg = take(self.zeta_angles.len());
        let zeta_r = take(self.zeta_radii.len());
        let x_arg = take(self.x_angles.len());
        let x_r = take(self.x_radii.len());
        let p = rest;
        let point = LzPoint {
            p: self.p_values[p],
            x: self.x_angles[x_arg] * self.x_radii[x_r],
            zeta: self.zeta_angles[zeta_arg] * self.zeta_radii[zeta_r],
        };
        (point, self.phases[phase])
    }

    /// Rotated `(p₁, p₂, p₃)` of grid point `index`.
    #[inline]
    pub fn p_triple(&self, index: usize) -> [Complex64; 3] {
        let (point, phase) = self.point(index);
        let [p1, p2, p3] = point.p_triple();
        if phase == 0.0 {
            return [p1, p2, p3];
        }
        let r1 = Complex64::from_polar(1.0, phase);
        let r2 = r1 * r1;
        [p1 * r1, p2 * r2, p3 * r2 * r1]
    }

    pub fn iter(&self) -> impl Iterator<Item = CaratheodoryPoint> + '_ {
        (0..self.len()).map(|i| {
            let (point, phase) = self.point(i);
            CaratheodoryPoint::Lz { point, phase }
        })
    }
}

/// Seeded sampler of finite Herglotz measures.
///
/// Emits the symmetric configurations `(1 + ηz^m)/(1 − ηz^m)` for
/// `m = 1..=max_atoms` at `rotations` evenly spaced rotations first, then
/// `draws` random measures with `1..=max_atoms` atoms, flat-Dirichlet weights
/// and uniform angles.
#[derive(Debug, Clone)]
pub struct AtomSampler {
    max_atoms: usize,
    rotations: usize,
    remaining: usize,
    structured: std::vec::IntoIter<HerglotzAtoms>,
    rng: ChaCha8Rng,
}

impl AtomSampler {
    pub fn new(draws: usize, max_atoms: usize, rotations: usize, seed: u64) -> Self {
        let max_atoms = max_atoms.max(1);
        let mut structured = Vec::with_capacity(max_atoms * rotations);
        for m in 1..=max_atoms {
            for r in 0..rotations {
                structured.push(HerglotzAtoms::symmetric(m, TAU * r as f64 / (rotations * m) as f64));
            }
        }
        AtomSampler {
            max_atoms,
            rotations,
            remaining: draws,
            structured: structured.into_iter(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn structured_len(&self) -> usize {
        self.max_atoms * self.rotations
    }

    /// One random measure from the given generator.
    pub fn random_atoms(rng: &mut impl Rng, max_atoms: usize) -> HerglotzAtoms {
        let m = rng.random_range(1..=max_atoms.max(1));
        let raw: Vec<f64> = (0..m).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let total: f64 = raw.iter().sum();
        let atoms = raw
            .iter()
            .map(|w| Atom {
                weight: if total > 0.0 { w / total } else { 1.0 / m as f64 },
                point: Complex64::from_polar(1.0, TAU * rng.random::<f64>()),
            })
            .collect();
        HerglotzAtoms { atoms }
    }
}

impl Iterator for AtomSampler {
    type Item = HerglotzAtoms;

    fn next(&mut self) -> Option<HerglotzAtoms> {
        if let Some(h) = self.structured.next() {
            return Some(h);
        }
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(Self::random_atoms(&mut self.rng, self.max_atoms))
    }
}

/// `p ~ U[0,2]`, `x, ζ` uniform in the closed disk, phase `U[0, 2π)`.
pub fn random_lz_point(rng: &mut impl Rng) -> (LzPoint, f64) {
    let p = 2.0 * rng.random::<f64>();
    let x = random_in_disk(rng);
    let zeta = random_in_disk(rng);
    let phase = TAU * rng.random::<f64>();
    (LzPoint { p, x, zeta }, phase)
}

fn random_in_disk(rng: &mut impl Rng) -> Complex64 {
    let r = rng.random::<f64>().sqrt();
    Complex64::from_polar(r, TAU * rng.random::<f64>())
}

/// How [`sample_points`] walks the Carathéodory body.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleStrategy {
    Grid { p_points: usize, angles: usize, x_radii: usize, zeta_radii: usize, phases: usize },
    RandomLz { count: usize, seed: u64 },
    RandomAtoms { draws: usize, max_atoms: usize, rotations: usize, seed: u64 },
}

/// A sampled point together with its first `k_max` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPoint {
    pub point: CaratheodoryPoint,
    pub p: Vec<Complex64>,
}

/// Deterministic stream of admissible coefficient sequences.
pub fn sample_points(strategy: &SampleStrategy, k_max: usize) -> Result<Box<dyn Iterator<Item = SampledPoint>>> {
    let with_p = move |point: CaratheodoryPoint| SampledPoint { p: point.p_sequence(k_max), point };
    Ok(match *strategy {
        SampleStrategy::Grid { p_points, angles, x_radii, zeta_radii, phases } => {
            let grid = LzGrid::new(p_points, angles, x_radii, zeta_radii, phases)?;
            Box::new((0..grid.len()).map(move |i| {
                let (point, phase) = grid.point(i);
                with_p(CaratheodoryPoint::Lz { point, phase })
            }))
        }
        SampleStrategy::RandomLz { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new((0..count).map(move |_| {
                let (point, phase) = random_lz_point(&mut rng);
                with_p(CaratheodoryPoint::Lz { point, phase })
            }))
        }
        SampleStrategy::RandomAtoms { draws, max_atoms, rotations, seed } => Box::new(
            AtomSampler::new(draws, max_atoms, rotations, seed)
                .map(move |atoms| with_p(CaratheodoryPoint::Atoms { atoms })),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn atoms_examples() {
        let one = HerglotzAtoms::from_angles(&[(1.0, 0.0)]).unwrap();
        assert!(one.p_sequence(6).iter().all(|&v| close(v, c(2.0, 0.0), 1e-15)));

        let two = HerglotzAtoms::from_angles(&[(0.5, 0.0), (0.5, std::f64::consts::PI)]).unwrap();
        for (k, v) in two.p_sequence(6).iter().enumerate() {
            let expected = if (k + 1) % 2 == 0 { 2.0 } else { 0.0 };
            assert!(close(*v, c(expected, 0.0), 1e-14));
        }

        let half_pi = std::f64::consts::FRAC_PI_2;
        let imag = HerglotzAtoms::from_angles(&[(0.5, half_pi), (0.5, -half_pi)]).unwrap();
        let p = imag.p_sequence(4);
        for (v, e) in p.iter().zip([0.0, -2.0, 0.0, 2.0]) {
            assert!(close(*v, c(e, 0.0), 1e-14));
        }
    }

    #[test]
    fn invalid_atoms() {
        assert!(matches!(HerglotzAtoms::new(vec![]), Err(Error::InvalidAtoms(_))));
        assert!(matches!(HerglotzAtoms::from_angles(&[(0.6, 0.0), (0.6, 1.0)]), Err(Error::InvalidAtoms(_))));
        assert!(matches!(HerglotzAtoms::from_angles(&[(1.5, 0.0), (-0.5, 1.0)]), Err(Error::InvalidAtoms(_))));
        let off = Atom { weight: 1.0, point: c(0.9, 0.0) };
        assert!(matches!(HerglotzAtoms::new(vec![off]), Err(Error::InvalidAtoms(_))));
    }

    #[test]
    fn lz_p2_examples() {
        let pt = |p, x: f64| LzPoint::new(p, c(x, 0.0), c(0.0, 0.0)).unwrap();
        assert!(close(lz_p2(&LzPoint::new(2.0, c(0.3, -0.4), c(0.0, 0.0)).unwrap()), c(2.0, 0.0), 1e-15));
        assert!(close(lz_p2(&pt(0.0, 1.0)), c(2.0, 0.0), 1e-15));
        assert!(close(lz_p2(&pt(1.0, 1.0)), c(2.0, 0.0), 1e-15));
    }

    #[test]
    fn lz_p3_examples() {
        let p0 = LzPoint::new(0.0, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(close(lz_p3(&p0), c(2.0, 0.0), 1e-15));
        let p2 = LzPoint::new(2.0, c(0.5, 0.5), c(-0.3, 0.1)).unwrap();
        assert!(close(lz_p3(&p2), c(2.0, 0.0), 1e-15));
        for zeta in [c(0.0, 0.0), c(1.0, 0.0), c(0.0, -0.7)] {
            let pt = LzPoint::new(1.0, c(1.0, 0.0), zeta).unwrap();
            assert!(close(lz_p3(&pt), c(1.0, 0.0), 1e-15));
        }
    }

    #[test]
    fn invalid_lz_points() {
        assert!(LzPoint::new(2.1, c(0.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(LzPoint::new(1.0, c(1.0, 0.5), c(0.0, 0.0)).is_err());
        assert!(LzPoint::new(1.0, c(0.0, 0.0), c(0.0, 1.01)).is_err());
    }

    #[test]
    fn schur_realization_reproduces_lz_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (pt, _) = random_lz_point(&mut rng);
            let phi = pt.phi_series(3);
            let [p1, p2, p3] = pt.p_triple();
            assert!(close(phi.coeff(1), p1, 1e-13));
            assert!(close(phi.coeff(2), p2, 1e-13));
            assert!(close(phi.coeff(3), p3, 1e-13));
        }
    }

    #[test]
    fn schur_realization_is_a_schwarz_function() {
        let pt = LzPoint::new(0.7, c(0.2, 0.9), c(-0.5, 0.5)).unwrap();
        let w = pt.schwarz_series(256);
        for j in 0..64 {
            let z = Complex64::from_polar(0.95, TAU * j as f64 / 64.0);
            assert!(w.eval(z).norm() < 1.0);
        }
    }

    #[test]
    fn toeplitz_examples() {
        assert!(toeplitz_validate(&[c(2.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)]));
        assert!(!toeplitz_validate(&[c(0.0, 0.0), c(3.0, 0.0)]));
        let pt = LzPoint::new(1.0, c(1.0, 0.0), c(0.4, -0.2)).unwrap();
        let triple = pt.p_triple();
        assert!(close(triple[1], c(2.0, 0.0), 1e-15) && close(triple[2], c(1.0, 0.0), 1e-15));
        assert!(toeplitz_validate(&triple));
    }

    #[test]
    fn toeplitz_rejects_large_first_coefficient() {
        assert!(!toeplitz_validate(&[c(2.2, 0.0)]));
        assert!(toeplitz_validate(&[c(0.0, 2.0)]));
    }

    #[test]
    fn member_from_phi_examples() {
        let unit = HohlovParams::new(1.0, 1.0, 1.0).unwrap();
        let f = member_coeffs_from_phi(&unit, &TruncatedSeries::one(4)).unwrap();
        assert!(f.max_abs_diff(&TruncatedSeries::identity(5)) < 1e-15);

        let even = HerglotzAtoms::symmetric(2, 0.0).phi_series(4);
        let f = member_coeffs_from_phi(&unit, &even).unwrap();
        for (k, e) in [(2, 0.0), (3, 0.5), (4, 0.0), (5, -0.125)] {
            assert!(close(f.coeff(k), c(e, 0.0), 1e-14), "a_{k} = {}", f.coeff(k));
        }

        let koebe = HerglotzAtoms::symmetric(1, 0.0).phi_series(3);
        let f = member_coeffs_from_phi(&unit, &koebe).unwrap();
        for (k, e) in [(2, 0.5), (3, -0.125), (4, 0.0625)] {
            assert!(close(f.coeff(k), c(e, 0.0), 1e-14));
        }
    }

    #[test]
    fn schwarz_route_matches_phi_route() {
        let p = HohlovParams::new(1.5, 1.2, 1.0).unwrap();
        let phi = HerglotzAtoms::from_angles(&[(0.3, 0.4), (0.7, 2.0)]).unwrap().phi_series(6);
        let w = schwarz_from_phi(&phi).unwrap();
        let a = member_coeffs_from_phi(&p, &phi).unwrap();
        let b = member_from_schwarz(&p, &w).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-13);
    }

    #[test]
    fn closed_form_examples() {
        let unit = HohlovParams::new(1.0, 1.0, 1.0).unwrap();
        let [a2, _, _] = closed_form_coeffs(&unit, c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!(close(a2, c(0.5, 0.0), 1e-15));
        let [_, a3, _] = closed_form_coeffs(&unit, c(2.0, 0.0), c(2.0, 0.0), c(0.0, 0.0));
        assert!(close(a3, c(-0.125, 0.0), 1e-15));
        let [_, _, a4] = closed_form_coeffs(&unit, c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0));
        assert!(close(a4, c(0.5, 0.0), 1e-15));
    }

    #[test]
    fn closed_form_factors_are_inverse_multipliers() {
        let p = HohlovParams::new(2.7, 1.3, 0.8).unwrap();
        let psi = p.multipliers(4);
        let [a2, a3, a4] = closed_form_coeffs(&p, c(4.0, 0.0), c(4.0, 0.0), c(4.0, 0.0));
        // g_1 = 1, g_2 = 1 - 2.5 = -1.5, g_3 = 1 - 5 + 6.5 = 2.5 at p_k = 4
        assert!(close(a2 * psi.get(2), c(1.0, 0.0), 1e-13));
        assert!(close(a3 * psi.get(3), c(-1.5, 0.0), 1e-13));
        assert!(close(a4 * psi.get(4), c(2.5, 0.0), 1e-13));
    }

    #[test]
    fn grid_density_three_on_p() {
        let grid = LzGrid::new(3, 1, 1, 1, 1).unwrap();
        assert_eq!(grid.p_values(), &[0.0, 1.0, 2.0]);
        assert_eq!(grid.len(), 3);
        assert!(LzGrid::new(1, 4, 2, 2, 1).is_err());
    }

    #[test]
    fn grid_points_are_admissible() {
        let grid = LzGrid::new(5, 6, 3, 2, 2).unwrap();
        for i in 0..grid.len() {
            assert!(toeplitz_validate(&grid.p_triple(i)), "index {i}");
        }
    }

    #[test]
    fn radii_cluster_at_boundary() {
        let r = boundary_radii(6);
        assert_eq!(r.first(), Some(&0.0));
        assert_eq!(r.last(), Some(&1.0));
        assert!(r[5] - r[4] < r[1] - r[0]);
        assert_eq!(boundary_radii(1), vec![1.0]);
    }

    #[test]
    fn sampler_is_deterministic() {
        let strategy = SampleStrategy::RandomAtoms { draws: 50, max_atoms: 4, rotations: 3, seed: 42 };
        let a: Vec<_> = sample_points(&strategy, 4).unwrap().collect();
        let b: Vec<_> = sample_points(&strategy, 4).unwrap().collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 50 + 12);
        let lz = SampleStrategy::RandomLz { count: 20, seed: 3 };
        let c1: Vec<_> = sample_points(&lz, 3).unwrap().collect();
        let c2: Vec<_> = sample_points(&lz, 3).unwrap().collect();
        assert_eq!(c1, c2);
    }

    #[test]
    fn rotated_lz_sequences_match_rotated_phi() {
        let point = CaratheodoryPoint::Lz { point: LzPoint::new(1.2, c(0.3, -0.5), c(0.1, 0.8)).unwrap(), phase: 1.1 };
        let short = point.p_sequence(3);
        let long = point.p_sequence(5);
        for k in 0..3 {
            assert!(close(short[k], long[k], 1e-13));
        }
        assert!(toeplitz_validate(&long));
    }
}
