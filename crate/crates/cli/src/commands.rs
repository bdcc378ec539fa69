use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use gmb_love::exec::Execution;
use gmb_love::love::{LoveProblem, RelaxationSolution, SphereModel, DEFAULT_NEWTON_G};
use gmb_love::postwidder::{default_digits, pw_invert_grid, Acceleration, PwConfig};
use gmb_love::powerlaw::{
    in_convergence_region, m_closed, m_series, m_truncated, tail_bound, ElementCount, PowerLawGmb,
};
use gmb_love::rheology::{log_grid, GmbModel, ModelSampler};
use gmb_love::Error;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::cli::{
    CompareArgs, GridArgs, InvertArgs, Method, ModelSource, ModulusArgs, PowerlawArgs, ProblemOptions, PwOptions,
    SpectrumArgs,
};
use crate::output::{Csv, InputError};

/// Responses below this fraction of the t = 0⁺ value are left out of the
/// comparison statistics.
const COMPARE_FLOOR: f64 = 1e-6;

fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn save_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

fn rng(seed: Option<u64>) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.expect("clap enforces --seed with --random"))
}

fn earth_sphere() -> SphereModel {
    SphereModel::from_surface_gravity(9.81, 6.371e6, 200e9, DEFAULT_NEWTON_G).expect("valid constants")
}

fn load_gmb(source: &ModelSource) -> anyhow::Result<GmbModel> {
    let model = match (&source.model, source.random) {
        (Some(path), _) => read_json(path)?,
        (None, Some(n)) => ModelSampler::default().sample(&mut rng(source.seed), n.max(1)),
        (None, None) => bail!(InputError("either --model or --random is required".into())),
    };
    if let Some(path) = &source.save_model {
        save_json(path, &model)?;
    }
    Ok(model)
}

fn fluid_limit(choice: &str, degree: u32) -> anyhow::Result<f64> {
    let l = f64::from(degree);
    match choice {
        "h" | "k" if degree < 2 => bail!(InputError(format!("fluid-limit preset `{choice}` needs degree ≥ 2"))),
        "h" => Ok((2.0 * l + 1.0) / (2.0 * (l - 1.0))),
        "k" => Ok(3.0 / (2.0 * (l - 1.0))),
        other => other
            .parse::<f64>()
            .map_err(|_| InputError(format!("fluid limit must be a number, `h` or `k`, got `{other}`")).into()),
    }
}

fn load_problem(source: &ModelSource, options: &ProblemOptions) -> anyhow::Result<LoveProblem> {
    let mut problem: LoveProblem = match (&source.model, source.random) {
        (Some(path), _) => read_json(path)?,
        (None, Some(n)) => {
            let gmb = ModelSampler::default().sample(&mut rng(source.seed), n.max(1));
            LoveProblem::new(earth_sphere(), options.degree, 1.0, gmb)?
        }
        (None, None) => bail!(InputError("either --model or --random is required".into())),
    };
    if let Some(choice) = &options.fluid_limit {
        problem.fluid_limit = fluid_limit(choice, problem.degree())?;
    }
    if let Some(note) = problem.degree_note() {
        eprintln!("note: {note}");
    }
    if let Some(path) = &source.save_model {
        save_json(path, &problem)?;
    }
    Ok(problem)
}

pub fn grid_points(args: &GridArgs) -> anyhow::Result<Option<Vec<f64>>> {
    let Some(values) = &args.grid else { return Ok(None) };
    let (start, stop, points) = (values[0], values[1], values[2]);
    if !(points >= 1.0 && points.fract() == 0.0) {
        bail!(InputError(format!("grid POINTS must be a positive integer, got {points}")));
    }
    let points = points as usize;
    if !(start.is_finite() && stop.is_finite()) {
        bail!(InputError("grid endpoints must be finite".into()));
    }
    if points > 1 && start >= stop {
        bail!(InputError(format!("grid needs START < STOP, got {start} ≥ {stop}")));
    }
    if args.log && start <= 0.0 {
        bail!(InputError("log spacing needs positive endpoints".into()));
    }
    if points == 1 {
        return Ok(Some(vec![start]));
    }
    Ok(Some(if args.log {
        log_grid(start, stop, points)
    } else {
        (0..points)
            .map(|i| start + (stop - start) * i as f64 / (points - 1) as f64)
            .collect()
    }))
}

fn require_grid(args: &GridArgs) -> anyhow::Result<Vec<f64>> {
    grid_points(args)?.ok_or_else(|| InputError("--grid START STOP POINTS is required".into()).into())
}

/// Default time grid: 10 log-spaced points over 0.1·min τ … 10·(1+λ²Σμ′)·max τ.
fn time_grid(args: &GridArgs, problem: &LoveProblem) -> anyhow::Result<Vec<f64>> {
    Ok(match grid_points(args)? {
        Some(times) => times,
        None => log_grid(
            0.1 * problem.gmb().min_tau(),
            10.0 * (1.0 + problem.stiffness()) * problem.gmb().max_tau(),
            10,
        ),
    })
}

fn pw_config(options: &PwOptions) -> anyhow::Result<PwConfig> {
    let config = PwConfig {
        n_max: options.pw_nmax,
        precision_digits: options.pw_digits.unwrap_or_else(|| default_digits(options.pw_nmax)),
        acceleration: if options.no_acceleration { Acceleration::None } else { Acceleration::Rho },
        target_tol: options.pw_tol,
    };
    config.validate()?;
    Ok(config)
}

pub fn modulus(args: &ModulusArgs, mode: Execution, out: &mut dyn Write) -> anyhow::Result<()> {
    let model = load_gmb(&args.source)?;
    let grid = require_grid(&args.grid)?;
    let points: Vec<Complex64> = grid.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    let values = model
        .modulus_on_grid(&points, mode)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = Csv::new(out, &["s", "mu_re", "mu_im"])?;
    for (s, mu) in grid.iter().zip(values) {
        csv.row(&[*s, mu.re, mu.im])?;
    }
    Ok(())
}

pub fn powerlaw(args: &PowerlawArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let (p, q) = (args.pq[0], args.pq[1]);
    let grid = require_grid(&args.grid)?;
    if grid.iter().any(|&z| z < 0.0) {
        bail!(InputError("power-law sweeps take z ≥ 0".into()));
    }
    let closed = args.closed || !args.series;
    if args.series && args.n_terms.is_none() && !in_convergence_region(p, q) {
        PowerLawGmb::new(p, q, 1.0, 1.0, ElementCount::Infinite)?;
    }
    let mut header = vec!["z", "M_re", "M_im"];
    if closed && args.series {
        header.extend(["series_re", "series_im"]);
    }
    if args.series {
        header.push("tail_bound");
    }
    let mut warned = false;
    let mut rows = Vec::with_capacity(grid.len());
    for &x in &grid {
        let z = Complex64::new(x, 0.0);
        let mut row = vec![x];
        if closed {
            let m = m_closed(z, p, q)?;
            row.extend([m.re, m.im]);
        }
        if args.series {
            let (value, bound) = match args.n_terms {
                Some(n) => {
                    let value = m_truncated(z, p, q, n)?;
                    let bound = if in_convergence_region(p, q) {
                        tail_bound(z, p, q, n).unwrap_or(f64::INFINITY)
                    } else {
                        if !warned {
                            eprintln!("warning: the series diverges for (p, q) = ({p}, {q}); partial sums only");
                            warned = true;
                        }
                        f64::INFINITY
                    };
                    (value, bound)
                }
                None => {
                    let sum = m_series(z, p, q, args.tol)?;
                    (sum.value, sum.error_bound)
                }
            };
            row.extend([value.re, value.im, bound]);
        }
        rows.push(row);
    }
    let mut csv = Csv::new(out, &header)?;
    for row in rows {
        csv.row(&row)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ModeReport {
    rate: f64,
    relaxation_time: f64,
    amplitude: f64,
}

#[derive(Serialize)]
struct SpectrumReport {
    degree: u32,
    lambda_squared: f64,
    fluid_limit: f64,
    physical: bool,
    elastic_amp: f64,
    modes: Vec<ModeReport>,
    sum_rule_residual: f64,
    closed_form_roots: Option<Vec<f64>>,
    max_rel_deviation: Option<f64>,
    warning: Option<String>,
}

pub fn spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let problem = load_problem(&args.source, &args.problem)?;
    let checked = problem.cross_checked_spectrum()?;
    if let Some(w) = &checked.warning {
        eprintln!("warning: {w}");
    }
    let residual = checked.solution.sum_rule_residual();
    let shown = if args.physical {
        checked.solution.scaled(problem.fluid_limit)
    } else {
        checked.solution.clone()
    };
    let report = SpectrumReport {
        degree: problem.degree(),
        lambda_squared: problem.lambda_squared(),
        fluid_limit: problem.fluid_limit,
        physical: args.physical,
        elastic_amp: shown.elastic_amp,
        modes: shown
            .modes
            .iter()
            .map(|m| ModeReport { rate: m.rate, relaxation_time: -1.0 / m.rate, amplitude: m.amplitude })
            .collect(),
        sum_rule_residual: residual,
        closed_form_roots: checked.closed_form.clone(),
        max_rel_deviation: checked.max_rel_deviation,
        warning: checked.warning.clone(),
    };

    writeln!(out, "degree {}   lambda^2 = {:.6e}   fluid limit = {}", report.degree, report.lambda_squared, report.fluid_limit)?;
    writeln!(out, "L_e = {:.12e}", report.elastic_amp)?;
    writeln!(out, "{:>4}  {:>22}  {:>22}  {:>22}", "n", "s_n [1/s]", "tau_n [s]", "L_n [1/s]")?;
    for (i, m) in report.modes.iter().enumerate() {
        writeln!(out, "{:>4}  {:>22.14e}  {:>22.14e}  {:>22.14e}", i + 1, m.rate, m.relaxation_time, m.amplitude)?;
    }
    if let (Some(roots), Some(dev)) = (&report.closed_form_roots, report.max_rel_deviation) {
        writeln!(out, "closed-form roots:")?;
        for (i, r) in roots.iter().enumerate() {
            writeln!(out, "{:>4}  {:>22.14e}", i + 1, r)?;
        }
        writeln!(out, "max relative deviation (closed form vs bracketed) = {dev:.3e}")?;
    } else {
        writeln!(out, "closed-form roots: not available for N = {}", report.modes.len())?;
    }
    writeln!(out, "sum-rule residual = {:.3e}", report.sum_rule_residual)?;
    if let Some(path) = &args.out {
        save_json(path, &report)?;
    }
    Ok(())
}

pub fn invert(args: &InvertArgs, mode: Execution, out: &mut dyn Write) -> anyhow::Result<bool> {
    let problem = load_problem(&args.source, &args.problem)?;
    let times = time_grid(&args.grid, &problem)?;
    let scale = if args.physical { problem.fluid_limit } else { 1.0 };
    match args.method {
        Method::Heaviside => {
            if let Some(t) = times.iter().find(|t| !(**t >= 0.0)) {
                return Err(Error::NegativeTime(*t).into());
            }
            let sol = problem.relaxation_spectrum()?;
            let rows = sol.sample(&times, mode)?;
            let mut csv = Csv::new(out, &["t_seconds", "impulse_regular", "heaviside_response"])?;
            for (t, regular, step) in rows {
                csv.row(&[t, regular * scale, step * scale])?;
            }
            Ok(true)
        }
        Method::Postwidder => {
            if let Some(t) = times.iter().find(|t| !(**t > 0.0)) {
                bail!(Error::Domain(format!(
                    "Post–Widder inversion needs every time t > 0; the grid contains t = {t}"
                )));
            }
            let config = pw_config(&args.pw)?;
            let results = pw_invert_grid(&problem, &times, &config, mode);
            let mut all_converged = true;
            let mut csv = Csv::new(out, &["t_seconds", "impulse_regular", "pw_error_estimate"])?;
            for (&t, result) in times.iter().zip(results) {
                let (value, estimate) = match result {
                    Ok(r) => (r.value, r.error_estimate),
                    Err(Error::NonConvergence { value, error_estimate }) => {
                        eprintln!("warning: t = {t}: not converged (estimate {error_estimate:e})");
                        all_converged = false;
                        (value, error_estimate)
                    }
                    Err(e) => return Err(e.into()),
                };
                csv.row(&[t, value * scale, estimate * scale.abs()])?;
            }
            Ok(all_converged)
        }
    }
}

#[derive(Serialize)]
struct CompareReport {
    points: usize,
    compared: usize,
    max_rel_deviation: f64,
    median_rel_deviation: f64,
    non_converged: usize,
    heaviside_seconds: f64,
    postwidder_seconds: f64,
    n_max: u32,
    precision_digits: u32,
}

fn deviations(sol: &RelaxationSolution, times: &[f64], pw: &[f64]) -> anyhow::Result<Vec<f64>> {
    let initial = sol.impulse_response(0.0)?.regular.abs();
    let mut out = Vec::new();
    for (&t, &value) in times.iter().zip(pw) {
        let reference = sol.impulse_response(t)?.regular;
        if reference.abs() > COMPARE_FLOOR * initial {
            out.push(((value - reference) / reference).abs());
        }
    }
    Ok(out)
}

pub fn compare(args: &CompareArgs, mode: Execution, out: &mut dyn Write) -> anyhow::Result<()> {
    let problem = load_problem(&args.source, &args.problem)?;
    let times = time_grid(&args.grid, &problem)?;
    if let Some(t) = times.iter().find(|t| !(**t > 0.0)) {
        bail!(Error::Domain(format!("comparison needs every time t > 0; the grid contains t = {t}")));
    }
    let config = pw_config(&args.pw)?;

    let start = Instant::now();
    let sol = problem.relaxation_spectrum()?;
    sol.sample(&times, mode)?;
    let heaviside_seconds = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let results = pw_invert_grid(&problem, &times, &config, mode);
    let postwidder_seconds = start.elapsed().as_secs_f64();

    let mut non_converged = 0;
    let mut values = Vec::with_capacity(times.len());
    for result in results {
        values.push(match result {
            Ok(r) => r.value,
            Err(Error::NonConvergence { value, .. }) => {
                non_converged += 1;
                value
            }
            Err(e) => return Err(e.into()),
        });
    }
    let mut devs = deviations(&sol, &times, &values)?;
    devs.sort_by(f64::total_cmp);
    let median = match devs.len() {
        0 => 0.0,
        n if n % 2 == 1 => devs[n / 2],
        n => 0.5 * (devs[n / 2 - 1] + devs[n / 2]),
    };
    let report = CompareReport {
        points: times.len(),
        compared: devs.len(),
        max_rel_deviation: devs.last().copied().unwrap_or(0.0),
        median_rel_deviation: median,
        non_converged,
        heaviside_seconds,
        postwidder_seconds,
        n_max: config.n_max,
        precision_digits: config.precision_digits,
    };
    writeln!(out, "points compared       {} of {}", report.compared, report.points)?;
    writeln!(out, "max rel deviation     {:.3e}", report.max_rel_deviation)?;
    writeln!(out, "median rel deviation  {:.3e}", report.median_rel_deviation)?;
    writeln!(out, "not converged         {}", report.non_converged)?;
    writeln!(out, "heaviside wall time   {:.6} s", report.heaviside_seconds)?;
    writeln!(out, "postwidder wall time  {:.6} s  (n_max {}, {} digits)", report.postwidder_seconds, report.n_max, report.precision_digits)?;
    if let Some(path) = &args.out {
        save_json(path, &report)?;
    }
    Ok(())
}
