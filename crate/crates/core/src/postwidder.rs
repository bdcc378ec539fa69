//! Real-axis Laplace inversion of the normalized Love number by the
//! Post–Widder sequence.
//!
//! The n-th approximant of f(t) is
//!
//! f_n(t) = ((−1)^n/n!) (n/t)^{n+1} F^{(n)}(n/t),
//!
//! and F^{(n)} is computed exactly by the Faà di Bruno formula,
//! F^{(n)}(s) = Σ_k (−1)^k k!/(1+g)^{k+1} B_{n,k}(g′, g″, …). For n ≥ 1 the
//! constant L_e drops out of every derivative, so the sequence inverts the
//! regular part F − L_e and the δ(t) amplitude is reported separately.
//!
//! The sequence converges like O(1/n), so it is accelerated by Wynn's rho
//! algorithm, which needs extended precision to survive the differencing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::love::{LoveProblem, SphereModel};
use crate::mp::{Mp, Precision, Scalar};
use crate::powerlaw::PowerLawGmb;
use crate::specfun::bell_triangle;

/// Hard cap on the derivative order.
pub const MAX_ORDER: u32 = 40;

pub const DEFAULT_N_MAX: u32 = 24;

pub const DEFAULT_TARGET_TOL: f64 = 1e-6;

/// Values smaller than this fraction of the t = 0⁺ response are judged on an
/// absolute scale when deciding convergence.
pub const RELATIVE_FLOOR: f64 = 1e-6;

/// Default working precision for a given n_max: max(34, ⌈2.5·n_max⌉) digits.
pub fn default_digits(n_max: u32) -> u32 {
    34.max((2.5 * f64::from(n_max)).ceil() as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Acceleration {
    None,
    #[default]
    Rho,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct PwConfig {
    pub n_max: u32,
    pub precision_digits: u32,
    pub acceleration: Acceleration,
    pub target_tol: f64,
}

#[derive(Deserialize)]
struct RawConfig {
    #[serde(default = "default_n_max")]
    n_max: u32,
    precision_digits: Option<u32>,
    #[serde(default)]
    acceleration: Acceleration,
    #[serde(default = "default_target_tol")]
    target_tol: f64,
}

fn default_n_max() -> u32 {
    DEFAULT_N_MAX
}

fn default_target_tol() -> f64 {
    DEFAULT_TARGET_TOL
}

impl TryFrom<RawConfig> for PwConfig {
    type Error = Error;

    fn try_from(raw: RawConfig) -> Result<Self> {
        let config = PwConfig {
            n_max: raw.n_max,
            precision_digits: raw.precision_digits.unwrap_or_else(|| default_digits(raw.n_max)),
            acceleration: raw.acceleration,
            target_tol: raw.target_tol,
        };
        config.validate()?;
        Ok(config)
    }
}

impl Default for PwConfig {
    fn default() -> Self {
        Self::with_n_max(DEFAULT_N_MAX).expect("default order is valid")
    }
}

impl PwConfig {
    /// Config with the default precision policy for this order.
    pub fn with_n_max(n_max: u32) -> Result<Self> {
        let config = Self {
            n_max,
            precision_digits: default_digits(n_max),
            acceleration: Acceleration::Rho,
            target_tol: DEFAULT_TARGET_TOL,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(Error::Domain("n_max must be ≥ 1".into()));
        }
        if self.n_max > MAX_ORDER {
            return Err(Error::OrderOverflow { order: self.n_max, cap: MAX_ORDER });
        }
        if self.precision_digits < 15 {
            return Err(Error::Domain(format!(
                "precision_digits must be ≥ 15, got {}",
                self.precision_digits
            )));
        }
        if !(self.target_tol.is_finite() && self.target_tol > 0.0) {
            return Err(Error::Domain(format!("target_tol must be positive, got {}", self.target_tol)));
        }
        Ok(())
    }

    pub fn precision(&self) -> Precision {
        Precision::from_digits(self.precision_digits)
    }
}

/// g(s) and its derivatives g^{(1)} … g^{(n)} at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeStack<T> {
    pub g_value: T,
    pub g_derivs: Vec<T>,
}

fn check_positive<T: Scalar>(s: &T) -> Result<()> {
    let v = s.to_f64();
    if v.is_nan() || v <= 0.0 {
        return Err(Error::Domain(format!("derivatives are taken at s > 0, got {v}")));
    }
    Ok(())
}

/// g^{(m)}(s) = λ²(−1)^{m+1} m! Σ_k (μ′_k/τ_k)/(s + 1/τ_k)^{m+1}, in the
/// scalar type of `s`.
pub fn g_derivatives<T: Scalar>(problem: &LoveProblem, s: &T, n: u32) -> Result<DerivativeStack<T>> {
    check_positive(s)?;
    let n = n as usize;
    let mut g_value = s.zero_like();
    let mut g_derivs = vec![s.zero_like(); n];
    for (w, r) in problem.weighted_rates() {
        let (w, r) = (s.lift(w), s.lift(r));
        let u = s.one_like() / (s.clone() + r.clone());
        g_value = g_value + w.clone() * s.clone() * u.clone();
        // a_m = m! w r u^{m+1}
        let mut a = w * r * u.clone();
        for m in 1..=n {
            a = a * u.clone() * s.int_like(m as i64);
            let signed = if m % 2 == 1 { a.clone() } else { -a.clone() };
            g_derivs[m - 1] = g_derivs[m - 1].clone() + signed;
        }
    }
    Ok(DerivativeStack { g_value, g_derivs })
}

/// Faà di Bruno with caller-supplied Bell values: `bell_row[k]` = B_{n,k}.
///
/// # Panics
///
/// Panics if `bell_row` has fewer than n + 1 entries.
pub fn faa_di_bruno<T: Scalar>(stack: &DerivativeStack<T>, n: usize, bell_row: &[T]) -> T {
    let one = stack.g_value.one_like();
    let inv = one.clone() / (one + stack.g_value.clone());
    if n == 0 {
        return inv;
    }
    // outer_k = (−1)^k k!/(1+g)^{k+1}
    let mut outer = inv.clone();
    let mut total = stack.g_value.zero_like();
    for (k, bell) in bell_row.iter().enumerate().take(n + 1).skip(1) {
        outer = -(outer * inv.clone() * stack.g_value.int_like(k as i64));
        total = total + outer.clone() * bell.clone();
    }
    total
}

/// F^{(n)}(s) in the scalar type of `s`, Bell values from the recurrence.
pub fn f_derivative_in<T: Scalar>(problem: &LoveProblem, s: &T, n: u32) -> Result<T> {
    if n > MAX_ORDER {
        return Err(Error::OrderOverflow { order: n, cap: MAX_ORDER });
    }
    let stack = g_derivatives(problem, s, n)?;
    if n == 0 {
        return Ok(faa_di_bruno(&stack, 0, &[]));
    }
    let rows = bell_triangle(&stack.g_derivs);
    Ok(faa_di_bruno(&stack, n as usize, &rows[n as usize]))
}

/// F^{(n)}(s) evaluated at the configured precision.
pub fn f_derivative(problem: &LoveProblem, s: f64, n: u32, config: &PwConfig) -> Result<f64> {
    config.validate()?;
    if n > config.n_max {
        return Err(Error::OrderOverflow { order: n, cap: config.n_max });
    }
    check_positive(&s)?;
    Ok(f_derivative_in(problem, &config.precision().float(s), n)?.to_f64())
}

/// n-th Post–Widder approximant of the transform whose derivatives are given
/// by `derivative(s, n)`.
pub fn pw_term_with<T, D>(t: &T, n: u32, derivative: D) -> Result<T>
where
    T: Scalar,
    D: FnOnce(&T, u32) -> Result<T>,
{
    check_positive(t)?;
    if n == 0 {
        return Err(Error::Domain("Post–Widder approximants start at n = 1".into()));
    }
    let s = t.int_like(i64::from(n)) / t.clone();
    // (n/t)^{n+1}/n! as Π_{j=1}^{n} (s/j) · s
    let mut weight = s.clone();
    for j in 1..=n {
        weight = weight * s.clone() / t.int_like(i64::from(j));
    }
    let value = weight * derivative(&s, n)?;
    Ok(if n % 2 == 1 { -value } else { value })
}

fn pw_term_mp(problem: &LoveProblem, t: &Mp, n: u32) -> Result<Mp> {
    pw_term_with(t, n, |s, n| f_derivative_in(problem, s, n))
}

/// n-th approximant of the normalized impulse-response regular part.
pub fn pw_term(problem: &LoveProblem, t: f64, n: u32, config: &PwConfig) -> Result<f64> {
    config.validate()?;
    check_time(t)?;
    if n > config.n_max {
        return Err(Error::OrderOverflow { order: n, cap: config.n_max });
    }
    Ok(pw_term_mp(problem, &config.precision().float(t), n)?.to_f64())
}

/// Approximants n = 1 … n_max at the configured precision.
pub fn pw_sequence(problem: &LoveProblem, t: f64, config: &PwConfig) -> Result<Vec<Mp>> {
    config.validate()?;
    check_time(t)?;
    let t = config.precision().float(t);
    (1..=config.n_max).map(|n| pw_term_mp(problem, &t, n)).collect()
}

fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    if t == 0.0 || t.is_infinite() {
        return Err(Error::Domain(format!(
            "Post–Widder inversion needs a finite time t > 0, got {t}"
        )));
    }
    Ok(())
}

/// Limit estimate from Wynn's rho algorithm with abscissae x_n = n.
///
/// Returns the last entry of the deepest even column and the last entry of
/// the even column before it; for a single-term sequence both are that term.
/// Columns stop early if a difference vanishes.
///
/// # Panics
///
/// Panics on an empty sequence.
pub fn wynn_rho<T: Scalar>(seq: &[T]) -> (T, T) {
    let m = seq.len();
    let zero = seq[0].zero_like();
    let mut evens = vec![seq[m - 1].clone()];
    let mut before: Vec<T> = vec![zero; m + 1];
    let mut current: Vec<T> = seq.to_vec();
    for k in 1..m {
        let mut next = Vec::with_capacity(m - k);
        for i in 0..(m - k) {
            let diff = current[i + 1].clone() - current[i].clone();
            if diff.to_f64() == 0.0 {
                return last_two(evens);
            }
            next.push(before[i + 1].clone() + seq[0].int_like(k as i64) / diff);
        }
        if k % 2 == 0 {
            evens.push(next[m - k - 1].clone());
        }
        before = std::mem::replace(&mut current, next);
    }
    last_two(evens)
}

fn last_two<T: Clone>(mut evens: Vec<T>) -> (T, T) {
    let last = evens.pop().expect("at least one column");
    let previous = evens.pop().unwrap_or_else(|| last.clone());
    (last, previous)
}

/// Outcome of a converged inversion at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PwResult {
    pub t: f64,
    /// Regular part of the normalized impulse response.
    pub value: f64,
    pub error_estimate: f64,
    /// Amplitude L_e of the δ(t) term, carried symbolically.
    pub delta_amplitude: f64,
}

/// Accelerated Post–Widder inversion at `t`.
///
/// Converged means error_estimate ≤ target_tol·max(|value|, 1e-6·f(0⁺)); the
/// floor keeps the fully relaxed regime, where the value itself tends to 0,
/// from being judged on a purely relative scale. Otherwise the value and
/// estimate come back inside [`Error::NonConvergence`].
pub fn pw_invert(problem: &LoveProblem, t: f64, config: &PwConfig) -> Result<PwResult> {
    let seq = pw_sequence(problem, t, config)?;
    let (last, previous) = match config.acceleration {
        Acceleration::Rho => wynn_rho(&seq),
        Acceleration::None => {
            let m = seq.len();
            (seq[m - 1].clone(), seq[m.saturating_sub(2)].clone())
        }
    };
    let value = last.to_f64();
    let error_estimate = if seq.len() < 2 {
        f64::INFINITY
    } else {
        (last - previous).abs().to_f64()
    };
    let scale = value.abs().max(RELATIVE_FLOOR * problem.impulse_initial_value().abs());
    if !(error_estimate <= config.target_tol * scale) {
        return Err(Error::NonConvergence { value, error_estimate });
    }
    Ok(PwResult {
        t,
        value,
        error_estimate,
        delta_amplitude: 1.0 / (1.0 + problem.stiffness()),
    })
}

/// [`pw_invert`] over a time grid; each point carries its own outcome.
pub fn pw_invert_grid(
    problem: &LoveProblem,
    times: &[f64],
    config: &PwConfig,
    mode: Execution,
) -> Vec<Result<PwResult>> {
    exec::map(times, mode, |&t| pw_invert(problem, t, config))
}

/// Love problem for the first `n_terms` elements of a power-law GMB.
///
/// Experimental: the neglected tail of an infinite body shifts the
/// derivatives by an amount this truncation does not bound.
pub fn experimental_powerlaw_problem(
    sphere: SphereModel,
    degree: u32,
    fluid_limit: f64,
    law: &PowerLawGmb,
    n_terms: usize,
) -> Result<LoveProblem> {
    LoveProblem::new(sphere, degree, fluid_limit, law.truncated(n_terms)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::love::{lambda_squared, SphereModel, DEFAULT_NEWTON_G};
    use crate::rheology::GmbModel;
    use std::f64::consts::PI;

    fn sphere() -> SphereModel {
        let rho = (3.0 / (4.0 * PI * DEFAULT_NEWTON_G * 0.6)).sqrt();
        SphereModel::new(rho, 1.0, 1.0).unwrap()
    }

    /// Models given as (λ²μ′, τ) pairs at ℓ = 2.
    fn problem(pairs: &[(f64, f64)]) -> LoveProblem {
        let s = sphere();
        let l2 = lambda_squared(&s, 2);
        let scaled: Vec<(f64, f64)> = pairs.iter().map(|&(w, tau)| (w / l2, tau * w / l2)).collect();
        LoveProblem::new(s, 2, 1.0, GmbModel::from_pairs(&scaled).unwrap()).unwrap()
    }

    #[test]
    fn config_defaults_and_validation() {
        let c = PwConfig::default();
        assert_eq!((c.n_max, c.precision_digits), (24, 60));
        assert_eq!(c.acceleration, Acceleration::Rho);
        assert_eq!(default_digits(4), 34);
        assert!(PwConfig::with_n_max(0).is_err());
        assert!(matches!(PwConfig::with_n_max(41), Err(Error::OrderOverflow { .. })));
        let low = PwConfig { precision_digits: 10, ..c };
        assert!(low.validate().is_err());
    }

    #[test]
    fn config_json() {
        let c: PwConfig = serde_json::from_str(r#"{"n_max":30,"acceleration":"none","target_tol":1e-5}"#).unwrap();
        assert_eq!(c.precision_digits, 75);
        assert_eq!(c.acceleration, Acceleration::None);
        let back: PwConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<PwConfig>(r#"{"n_max":50}"#).is_err());
    }

    #[test]
    fn low_orders() {
        let p = problem(&[(1.0, 1.0), (0.5, 10.0)]);
        let s = 0.7;
        let g = p.g(num_complex::Complex64::new(s, 0.0)).unwrap().re;
        let stack = g_derivatives(&p, &s, 3).unwrap();
        assert!((stack.g_value - g).abs() < 1e-15);
        let f0 = f_derivative_in(&p, &s, 0).unwrap();
        assert!((f0 - 1.0 / (1.0 + g)).abs() < 1e-15);
        let f1 = f_derivative_in(&p, &s, 1).unwrap();
        let expected = -stack.g_derivs[0] / ((1.0 + g) * (1.0 + g));
        assert!(((f1 - expected) / expected).abs() < 1e-14);
        for (m, d) in stack.g_derivs.iter().enumerate() {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert!(sign * d > 0.0);
        }
        assert!(g_derivatives(&p, &0.0, 2).is_err());
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        let p = problem(&[(0.8, 2.0), (0.3, 0.4)]);
        let s = 1.3;
        let h = 1e-3;
        let g = |x: f64| g_derivatives(&p, &x, 0).unwrap().g_value;
        let fd = (g(s + h) - 2.0 * g(s) + g(s - h)) / (h * h);
        let exact = g_derivatives(&p, &s, 2).unwrap().g_derivs[1];
        assert!(((fd - exact) / exact).abs() < 1e-6);
    }

    #[test]
    fn order_cap() {
        let p = problem(&[(1.0, 1.0)]);
        let c = PwConfig::with_n_max(8).unwrap();
        assert!(matches!(f_derivative(&p, 1.0, 9, &c), Err(Error::OrderOverflow { order: 9, cap: 8 })));
        assert!(matches!(f_derivative_in(&p, &1.0, 41), Err(Error::OrderOverflow { .. })));
    }

    #[test]
    fn constant_over_s_shim_is_exact() {
        let prec = Precision::from_digits(50);
        let c = prec.float(2.5);
        let t = prec.float(0.37);
        for n in 1..=20 {
            let term = pw_term_with(&t, n, |s, n| {
                // d^n/ds^n (c/s) = c (−1)^n n!/s^{n+1}
                let mut v = c.clone() / s.clone();
                for j in 1..=n {
                    v = -(v * s.int_like(i64::from(j)) / s.clone());
                }
                Ok(v)
            })
            .unwrap();
            assert!(((term - c.clone()).abs().to_f64()) < 1e-45);
        }
    }

    #[test]
    fn wynn_rho_on_known_sequences() {
        // S_n = 1 + 1/n is rational in n, so the second column is exact.
        let seq: Vec<f64> = (1..=6).map(|n| 1.0 + 1.0 / f64::from(n)).collect();
        let (v, _) = wynn_rho(&seq);
        assert!((v - 1.0).abs() < 1e-12);

        let prec = Precision::from_digits(60);
        let mut partial = prec.int(0);
        let seq: Vec<Mp> = (1..=20)
            .map(|n| {
                partial = partial.clone() + prec.int(1) / prec.int(n * n);
                partial.clone()
            })
            .collect();
        let (v, prev) = wynn_rho(&seq);
        let target = PI * PI / 6.0;
        assert!((v.to_f64() - target).abs() < 1e-12);
        assert!((v - prev).abs().to_f64() < 1e-8);
        assert_eq!(wynn_rho(&[3.0]), (3.0, 3.0));
    }

    #[test]
    fn single_element_analytic_case() {
        let p = problem(&[(1.0, 1.0)]);
        let config = PwConfig::default();
        for t in [0.5f64, 1.0, 2.0, 5.0] {
            let exact = 0.25 * (-0.5 * t).exp();
            let r = pw_invert(&p, t, &config).unwrap();
            assert!(((r.value - exact) / exact).abs() < 1e-4, "t = {t}: {} vs {exact}", r.value);
            assert_eq!(r.delta_amplitude, 0.5);
        }
    }

    #[test]
    fn unaccelerated_error_decays_like_one_over_n() {
        let p = problem(&[(1.0, 1.0)]);
        let config = PwConfig::with_n_max(32).unwrap();
        let exact = 0.25 * (-0.5f64).exp();
        let seq = pw_sequence(&p, 1.0, &config).unwrap();
        let (xs, ys): (Vec<f64>, Vec<f64>) = (8..32)
            .map(|i| (((i + 1) as f64).ln(), (seq[i].to_f64() - exact).abs().ln()))
            .unzip();
        let n = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
            / xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
        assert!((slope + 1.0).abs() < 0.1, "slope {slope}");
    }

    #[test]
    fn time_preconditions() {
        let p = problem(&[(1.0, 1.0)]);
        let c = PwConfig::default();
        let zero = pw_invert(&p, 0.0, &c).unwrap_err();
        assert!(zero.to_string().contains("t > 0"), "{zero}");
        assert!(matches!(pw_invert(&p, -1.0, &c), Err(Error::NegativeTime(_))));
    }

    #[test]
    fn fully_relaxed_regime() {
        let p = problem(&[(1.0, 1.0)]);
        let r = pw_invert(&p, 200.0, &PwConfig::default()).unwrap();
        assert!(r.value.abs() < 1e-6 * 0.25);
    }

    #[test]
    fn grid_modes_agree() {
        let p = problem(&[(1.0, 1.0), (0.4, 7.0)]);
        let times = [0.3, 1.0, 4.0];
        let c = PwConfig::default();
        let seq = pw_invert_grid(&p, &times, &c, Execution::Sequential);
        let par = pw_invert_grid(&p, &times, &c, Execution::Parallel);
        assert_eq!(seq, par);
    }
}
