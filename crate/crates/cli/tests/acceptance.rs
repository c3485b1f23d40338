//! End-to-end acceptance checks. Prints one `[PASS]`/`[FAIL]` line per
//! criterion and exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use hohlov_core::bounds::{
    a4_bound, fs_breakpoints, fs_complex_bound, fs_real_bound, h2_2_bound, k_ratio, remark_fs_bound,
};
use hohlov_core::caratheodory::{
    closed_form_coeffs, member_coeffs_from_phi, phi_from_p, random_lz_point, rotate, sample_points, toeplitz_validate,
    AtomSampler, SampleStrategy,
};
use hohlov_core::operator::{apply_inverse, check_shift_identity};
use hohlov_core::verifier::{
    brute_force_max, extremal_member, membership_test, power_extremal_member, sufficient_condition_check,
};
use hohlov_core::{
    CaratheodoryPoint, Complex64, FunctionalId, HohlovParams, Mu, Preset, SearchConfig, TruncatedSeries,
    VerificationStatus,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn params(a: f64, b: f64, c: f64) -> HohlovParams {
    HohlovParams::new(a, b, c).unwrap()
}

fn triples() -> Vec<HohlovParams> {
    vec![params(1.0, 1.0, 1.0), params(2.0, 1.0, 1.0), params(1.5, 1.2, 1.0)]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: hohlov_core::Error) -> String {
    e.to_string()
}

fn random_normalized(rng: &mut impl Rng, order: usize) -> TruncatedSeries {
    let tail: Vec<Complex64> = (2..=order)
        .map(|_| Complex64::from_polar(rng.random::<f64>(), std::f64::consts::TAU * rng.random::<f64>()))
        .collect();
    TruncatedSeries::normalized(&tail)
}

fn operator_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let p = params(rng.random_range(0.5..=5.0), rng.random_range(0.5..=5.0), rng.random_range(0.5..=5.0));
        let f = random_normalized(&mut rng, 8);
        worst = worst.max(check_shift_identity(&p, &f).map_err(err)?);
    }
    ensure(worst < 1e-12, || format!("worst residual {worst:e}"))?;
    Ok(format!("worst residual {worst:.2e} over 1000 draws"))
}

fn coefficient_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut sets = triples();
    sets.push(params(3.0, 2.0, 1.0));
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (pt, phase) = random_lz_point(&mut rng);
        let p = rotate(&pt.p_triple(), phase);
        for q in &sets {
            let closed = closed_form_coeffs(q, p[0], p[1], p[2]);
            let series = member_coeffs_from_phi(q, &phi_from_p(&p)).map_err(err)?;
            for (k, v) in closed.iter().enumerate() {
                worst = worst.max((series.coeff(k + 2) - v).norm());
            }
        }
    }
    ensure(worst < 1e-12, || format!("worst mismatch {worst:e}"))?;
    Ok(format!("worst mismatch {worst:.2e} over 1000 points x 4 triples"))
}

fn fs_sharpness() -> Outcome {
    let cfg = SearchConfig::default();
    let mut mus: Vec<Mu> = [-4.0, -2.5, -1.0, 0.0, 1.0, 1.5, 2.0, 4.0].map(Mu::Real).to_vec();
    mus.push(Mu::Complex(Complex64::new(1.0, 1.0)));
    let mut worst_gap = 0.0f64;
    for p in triples() {
        for &mu in &mus {
            let r = brute_force_max(mu.fs_functional(), &p, Some(mu), &cfg).map_err(err)?;
            ensure(r.numeric_max <= r.bound + 1e-9 && r.numeric_max >= r.bound - 1e-3, || {
                format!("{p} mu {mu:?}: max {} bound {}", r.numeric_max, r.bound)
            })?;
            worst_gap = worst_gap.max(r.gap.abs());
        }
    }
    let alex = Preset::Alexander.params().map_err(err)?;
    for i in 0..=200 {
        let mu = -10.0 + 0.1 * i as f64;
        let expected = 1.0f64.max((2.0 + 3.0 * mu).abs() / 8.0) / 6.0;
        let remark = remark_fs_bound(&Preset::Alexander, Complex64::new(mu, 0.0)).unwrap();
        let got = fs_real_bound(&alex, mu);
        ensure((got - expected).abs() <= 1e-15 && (remark - expected).abs() <= 1e-15, || {
            format!("alexander mu {mu}: {got} vs {expected}")
        })?;
    }
    Ok(format!("27 cases attained, worst |gap| {worst_gap:.2e}; alexander closed form on 201 mu"))
}

fn real_complex_consistency() -> Outcome {
    let mut worst = 0.0f64;
    let mut jump = 0.0f64;
    for p in triples() {
        for i in 0..100 {
            let mu = -12.0 + 0.2425 * i as f64;
            worst = worst.max((fs_real_bound(&p, mu) - fs_complex_bound(&p, Complex64::new(mu, 0.0))).abs());
        }
        let (lo, hi) = fs_breakpoints(&p);
        let k = k_ratio(&p);
        for b in [lo, hi] {
            let eps = 1e-13 * b.abs().max(1.0);
            for m in [b - eps, b, b + eps] {
                jump = jump.max((fs_real_bound(&p, m) - k).abs());
            }
        }
    }
    ensure(worst < 1e-12 && jump < 1e-12, || format!("real/complex {worst:e}, breakpoint jump {jump:e}"))?;
    Ok(format!("real/complex {worst:.2e}, breakpoint jump {jump:.2e}"))
}

fn hankel_second() -> Outcome {
    let cfg = SearchConfig::default();
    let mut lines = Vec::new();
    for p in triples() {
        let r = brute_force_max(FunctionalId::H22, &p, None, &cfg).map_err(err)?;
        let target = h2_2_bound(&p);
        ensure(r.status == VerificationStatus::Attained && (r.numeric_max - target).abs() <= 1e-3, || {
            format!("{p}: max {} vs {target}", r.numeric_max)
        })?;
        let CaratheodoryPoint::Lz { point, .. } = &r.witness.point else {
            return Err(format!("{p}: witness is not an LZ point"));
        };
        ensure(point.p.abs() < 1e-9 && (point.x.norm() - 1.0).abs() < 1e-9, || {
            format!("{p}: witness p {} |x| {}", point.p, point.x.norm())
        })?;
        lines.push(format!("{:.6}", r.numeric_max));
    }
    Ok(format!("maxima {} at p=0, |x|=1", lines.join(", ")))
}

fn fourth_coefficient_extremal() -> Outcome {
    let mut worst_margin = f64::INFINITY;
    for p in triples() {
        let f = extremal_member(&p, 3, 4096).map_err(err)?;
        let got = f.coeff(4).norm();
        let want = a4_bound(&p);
        ensure((got - want).abs() < 1e-12, || format!("{p}: |a4| {got} vs {want}"))?;
        let m = membership_test(&p, &f, 0.999, 4096).map_err(err)?;
        ensure(m.member && m.margin > 1e-6, || format!("{p}: margin {}", m.margin))?;
        worst_margin = worst_margin.min(m.margin);
    }
    Ok(format!("|a4| exact, smallest margin {worst_margin:.3e}"))
}

fn discrepancy_findings() -> Outcome {
    let cfg = SearchConfig::default();
    let p = params(1.0, 1.0, 1.0);
    let mut lines = Vec::new();
    for id in [FunctionalId::A5, FunctionalId::A2A3A4] {
        let r = brute_force_max(id, &p, None, &cfg).map_err(err)?;
        let c = &r.witness.certification;
        ensure(r.status == VerificationStatus::Violated && r.numeric_max >= 0.5 - 1e-3, || {
            format!("{id}: {} {} vs printed {}", r.status.as_str(), r.numeric_max, r.bound)
        })?;
        ensure(c.certified && c.margin > 1e-6 && c.toeplitz_valid, || format!("{id}: witness not certified: {c:?}"))?;
        let json = serde_json::to_value(&r).map_err(|e| e.to_string())?;
        ensure(json["witness"]["coefficients"].as_array().is_some_and(|a| !a.is_empty()), || {
            format!("{id}: witness coefficients missing from report")
        })?;
        lines.push(format!("{id} {:.4} vs printed {:.4} (margin {:.1e})", r.numeric_max, r.bound, c.margin));
    }
    Ok(lines.join("; "))
}

fn sufficient_condition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let order = 32;
    let one = TruncatedSeries::one(order);
    let mut premise_true = 0;
    for _ in 0..500 {
        let p = params(rng.random_range(0.5..3.0), rng.random_range(0.5..3.0), rng.random_range(0.5..3.0));
        let phi = AtomSampler::random_atoms(&mut rng, 4).phi_series(order);
        let w = phi.sub(&one).div(&phi.add(&one)).map_err(err)?;
        let t = Complex64::new(rng.random_range(1e-3..=1.0), 0.0);
        let beta = if rng.random_bool(0.5) { 0.5 } else { 1.0 / rng.random_range(1..=3) as f64 };
        let s = one.add(&w.scale(t)).unit_power(beta).map_err(err)?;
        let f = apply_inverse(&p, &s.shift_up()).map_err(err)?;
        for gamma in [1.0, 2.0, 3.0] {
            let rep = sufficient_condition_check(&p, &f, gamma, 0.95, 1024).map_err(err)?;
            ensure(!rep.counterexample(), || format!("{p} gamma {gamma}: {rep:?}"))?;
            premise_true += rep.premise_holds as usize;
        }
    }
    let mut boundary = Vec::new();
    for (p, gamma) in [(params(1.0, 1.0, 1.0), 1.0), (params(2.0, 1.0, 1.0), 2.0), (params(1.5, 1.2, 1.0), 3.0)] {
        let f = power_extremal_member(&p, gamma, 4096).map_err(err)?;
        let rep = sufficient_condition_check(&p, &f, gamma, 0.999, 4096).map_err(err)?;
        let off = (rep.premise_max - rep.threshold).abs();
        ensure(off < 1e-2, || format!("{p} gamma {gamma}: premise max {} vs {}", rep.premise_max, rep.threshold))?;
        boundary.push(format!("{off:.1e}"));
    }
    Ok(format!(
        "no counterexample in 1500 checks ({premise_true} premise-true); boundary offsets {}",
        boundary.join(", ")
    ))
}

fn caratheodory_machinery() -> Outcome {
    let strategies = [
        SampleStrategy::Grid { p_points: 9, angles: 8, x_radii: 3, zeta_radii: 2, phases: 2 },
        SampleStrategy::RandomLz { count: 2000, seed: 9 },
        SampleStrategy::RandomAtoms { draws: 2000, max_atoms: 4, rotations: 6, seed: 9 },
    ];
    let mut checked = 0;
    for s in &strategies {
        let k = if matches!(s, SampleStrategy::RandomAtoms { .. }) { 4 } else { 3 };
        for pt in sample_points(s, k).map_err(err)? {
            ensure(toeplitz_validate(&pt.p), || format!("{:?} fails the Toeplitz check", pt.point))?;
            checked += 1;
        }
    }
    let mut worst_pk = 0.0f64;
    for h in AtomSampler::new(100_000, 4, 1, 10).skip(4) {
        worst_pk = h.p_sequence(6).iter().map(|v| v.norm()).fold(worst_pk, f64::max);
    }
    ensure(worst_pk <= 2.0 + 1e-12, || format!("|p_k| reached {worst_pk}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst_lemma = f64::NEG_INFINITY;
    for _ in 0..100_000 {
        let (pt, phase) = random_lz_point(&mut rng);
        let p = rotate(&pt.p_triple(), phase);
        for i in 1..=20 {
            let nu = i as f64 / 20.0;
            let weight = if nu <= 0.5 { nu } else { 1.0 - nu };
            worst_lemma = worst_lemma.max((p[1] - p[0] * p[0] * nu).norm() + weight * p[0].norm_sqr() - 2.0);
        }
    }
    ensure(worst_lemma <= 1e-12, || format!("refined inequality exceeded by {worst_lemma:e}"))?;
    Ok(format!("{checked} sampler outputs PSD, max |p_k| {worst_pk:.6}, lemma slack {worst_lemma:.1e}"))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hohlov");
    let args = ["search", "a5", "--a", "1", "--b", "1", "--c", "1", "--seed", "11"];
    let run = || Command::new(bin).args(args).output().map_err(|e| e.to_string());
    let (x, y) = (run()?, run()?);
    ensure(x.status.success(), || String::from_utf8_lossy(&x.stderr).into_owned())?;
    ensure(x.stdout == y.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", x.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("operator identity", operator_identity),
        ("closed-form coefficients", coefficient_oracle),
        ("Fekete-Szego sharpness", fs_sharpness),
        ("real/complex Fekete-Szego", real_complex_consistency),
        ("second Hankel determinant", hankel_second),
        ("fourth coefficient extremal", fourth_coefficient_extremal),
        ("printed-bound discrepancies", discrepancy_findings),
        ("sufficient condition", sufficient_condition),
        ("Caratheodory samplers", caratheodory_machinery),
        ("search determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] AC-{} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC-{} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
