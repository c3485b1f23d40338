use std::path::Path;

use hohlov_core::bounds::{self, specialization_bound_table, table_to_csv};
use hohlov_core::series_file::SeriesFile;
use hohlov_core::verifier::{
    brute_force_max, discrepancy_report, extremal_member, membership_test, sufficient_condition_check,
};
use hohlov_core::{Complex64, Error, FunctionalId, HohlovParams, Mu, Preset, SearchConfig, TruncatedSeries};
use serde::Serialize;
use serde_json::json;

use crate::args::{Command, Format, ParamArgs, SearchArgs};
use crate::render::{render, to_value};
use crate::Failure;

pub fn dispatch(cmd: &Command, format: Option<Format>) -> Result<String, Failure> {
    match cmd {
        Command::Psi { params, n } => psi(params, *n, format.unwrap_or(Format::Json)),
        Command::Bound { functional, params, mu } => {
            let p = resolve_params(params)?;
            let (id, mu) = resolve_functional(functional, mu.as_deref())?;
            let spec = bounds::bound(id, &p, mu)?;
            render(&to_value(&spec)?, format.unwrap_or(Format::Json))
        }
        Command::Search { functional, params, mu, search } => {
            let p = resolve_params(params)?;
            let (id, mu) = resolve_functional(functional, mu.as_deref())?;
            let report = brute_force_max(id, &p, mu, &search_config(search))?;
            render(&to_value(&report)?, format.unwrap_or(Format::Json))
        }
        Command::Member { series, params, circle } => {
            let p = resolve_params(params)?;
            let f = read_series(series)?;
            let result = membership_test(&p, &f, circle.radius, circle.samples)?;
            let mut v = to_value(&result)?;
            v["a"] = json!(p.a);
            v["b"] = json!(p.b);
            v["c"] = json!(p.c);
            render(&v, format.unwrap_or(Format::Json))
        }
        Command::Extremal { k, params, order } => extremal(params, *k, *order, format.unwrap_or(Format::Json)),
        Command::Suffcond { series, params, gamma, radius, samples } => {
            let p = resolve_params(params)?;
            let f = read_series(series)?;
            let report = sufficient_condition_check(&p, &f, *gamma, *radius, *samples)?;
            let mut v = to_value(&report)?;
            v["counterexample"] = json!(report.counterexample());
            render(&v, format.unwrap_or(Format::Json))
        }
        Command::Table { preset, functionals, mu_grid } => {
            table(preset, functionals, mu_grid, format.unwrap_or(Format::Csv))
        }
        Command::Discrepancy { params, mu_grid, search } => {
            let triples = parse_triples(params)?;
            let mus = parse_mu_grid(mu_grid)?;
            let report = discrepancy_report(&triples, &mus, &search_config(search))?;
            match format.unwrap_or(Format::Text) {
                Format::Text => Ok(report.to_text()),
                Format::Json => render(&to_value(&report)?, Format::Json),
                Format::Csv => render(&to_value(&report.rows)?, Format::Csv),
            }
        }
    }
}

fn resolve_params(args: &ParamArgs) -> Result<HohlovParams, Failure> {
    if let Some(spec) = &args.preset {
        return Ok(spec.parse::<Preset>()?.params()?);
    }
    match (args.a, args.b, args.c) {
        (Some(a), Some(b), Some(c)) => Ok(HohlovParams::new(a, b, c)?),
        _ => Err(Failure::Usage("give --a, --b and --c, or --preset".into())),
    }
}

/// `fs` picks the real or complex theorem from the form of `mu`.
fn resolve_functional(name: &str, mu: Option<&str>) -> Result<(FunctionalId, Option<Mu>), Failure> {
    let mu = mu.map(str::parse::<Mu>).transpose()?;
    let id = if name.trim().eq_ignore_ascii_case("fs") {
        mu.ok_or(Error::MuRequired("fs"))?.fs_functional()
    } else {
        name.parse::<FunctionalId>()?
    };
    let mu = match (id, mu) {
        (FunctionalId::FsComplex, Some(Mu::Real(r))) => Some(Mu::Complex(Complex64::new(r, 0.0))),
        (_, m) => m,
    };
    Ok((id, mu))
}

fn search_config(s: &SearchArgs) -> SearchConfig {
    SearchConfig {
        grid_p: s.grid_p,
        grid_angles: s.grid_angle,
        x_radii: s.x_radii,
        zeta_radii: s.zeta_radii,
        phases: s.phases,
        atoms: s.atoms,
        max_atoms: s.max_atoms,
        rotations: s.rotations,
        seed: s.seed,
        certify_order: s.certify_order,
        radius: s.radius,
        samples: s.samples,
        ..SearchConfig::default()
    }
}

fn read_series(path: &Path) -> Result<TruncatedSeries, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(SeriesFile::parse(&text)?)
}

fn finite(values: impl IntoIterator<Item = f64>, what: &str) -> Result<(), Failure> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(Error::NonFinite(what.to_string()).into())
    }
}

fn psi(params: &ParamArgs, n: usize, format: Format) -> Result<String, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let p = resolve_params(params)?;
    let psi = p.multipliers(n);
    finite(psi.as_slice().iter().copied(), "multiplier")?;
    match format {
        Format::Csv => {
            let mut out = String::from("n,psi\n");
            for (i, v) in psi.as_slice().iter().enumerate() {
                out.push_str(&format!("{},{}\n", i + 1, v));
            }
            Ok(out)
        }
        f => render(&json!({ "a": p.a, "b": p.b, "c": p.c, "psi": psi.as_slice() }), f),
    }
}

#[derive(Serialize)]
struct ExtremalOut {
    k: usize,
    a: f64,
    b: f64,
    c: f64,
    order: usize,
    a1_implicit: bool,
    coeffs: Vec<[f64; 2]>,
}

/// The JSON form doubles as a series file for `member` and `suffcond`.
fn extremal(params: &ParamArgs, k: usize, order: usize, format: Format) -> Result<String, Failure> {
    let p = resolve_params(params)?;
    let f = extremal_member(&p, k, order)?;
    let file = SeriesFile::from_series(&f)?;
    finite(file.coeffs.iter().flatten().copied(), "extremal coefficient")?;
    match format {
        Format::Csv => {
            let mut out = String::from("n,re,im\n");
            for (i, [re, im]) in file.coeffs.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", i + 2, re, im));
            }
            Ok(out)
        }
        f => {
            let out =
                ExtremalOut { k, a: p.a, b: p.b, c: p.c, order: file.order, a1_implicit: true, coeffs: file.coeffs };
            render(&to_value(&out)?, f)
        }
    }
}

fn table(preset: &str, functionals: &str, mu_grid: &str, format: Format) -> Result<String, Failure> {
    let preset: Preset = preset.parse()?;
    let mus = parse_mu_grid(mu_grid)?;
    let real: Vec<Mu> = mus.iter().copied().filter(|m| matches!(m, Mu::Real(_))).collect();
    let complex: Vec<Mu> = mus.iter().copied().filter(|m| matches!(m, Mu::Complex(_))).collect();
    let mut rows = Vec::new();
    for name in functionals.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name.eq_ignore_ascii_case("fs") {
            // real entries go to the real theorem, complex ones to the complex theorem
            rows.extend(specialization_bound_table(&preset, &real, &[FunctionalId::FsReal])?);
            rows.extend(specialization_bound_table(&preset, &complex, &[FunctionalId::FsComplex])?);
        } else {
            rows.extend(specialization_bound_table(&preset, &mus, &[name.parse::<FunctionalId>()?])?);
        }
    }
    match format {
        Format::Csv => Ok(table_to_csv(&rows)),
        f => render(&to_value(&rows)?, f),
    }
}

fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// `START:STOP:STEP` (real, inclusive) or entries `RE` / `RE,IM` separated by `;`.
pub fn parse_mu_grid(spec: &str) -> Result<Vec<Mu>, Failure> {
    if spec.contains(':') {
        let parts: Vec<f64> = spec
            .split(':')
            .map(|v| v.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("bad mu grid '{spec}'"))))
            .collect::<Result<_, _>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(Failure::Usage(format!("mu grid range needs START:STOP:STEP, got '{spec}'")));
        };
        if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
            return Err(Failure::Usage(format!("bad mu grid range '{spec}'")));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        if count > 1_000_000 {
            return Err(Failure::Usage("mu grid has too many points".into()));
        }
        return Ok((0..count).map(|i| Mu::Real(round12(start + i as f64 * step))).collect());
    }
    let mus: Vec<Mu> =
        spec.split(';').map(str::trim).filter(|s| !s.is_empty()).map(str::parse::<Mu>).collect::<Result<_, _>>()?;
    if mus.is_empty() {
        return Err(Failure::Usage("empty mu grid".into()));
    }
    Ok(mus)
}

fn parse_triples(spec: &str) -> Result<Vec<HohlovParams>, Failure> {
    let mut out = Vec::new();
    for item in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let v: Vec<f64> = item
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("bad parameter triple '{item}'"))))
            .collect::<Result<_, _>>()?;
        let [a, b, c] = v[..] else {
            return Err(Failure::Usage(format!("parameter triple needs a,b,c, got '{item}'")));
        };
        out.push(HohlovParams::new(a, b, c)?);
    }
    if out.is_empty() {
        return Err(Failure::Usage("no parameter triples".into()));
    }
    Ok(out)
}
