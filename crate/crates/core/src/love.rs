//! Love numbers of the homogeneous, incompressible, self-gravitating sphere
//! with a generalized Maxwell rheology.
//!
//! Everything here works with the normalized Love number F(s) = L̃(s)/L_f,
//! where the fluid limit L_f is a user-supplied scalar:
//!
//! F(s) = 1 / (1 + λ² Σ_n μ′_n s/(s + 1/τ_n)) = P(s)/Q(s),  μ′_n = μ_n/μ_e.
//!
//! All poles of F are simple and lie on the negative real axis, so its
//! inverse transform is
//! L_e δ(t) + Σ_n L_n e^{s_n t}.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::poly::{real_roots_closed_form, Polynomial};
use crate::rheology::GmbModel;
use crate::roots::brent;
use crate::specfun::ComplexValue;

/// Newtonian constant of gravitation used when none is given (m³ kg⁻¹ s⁻²).
pub const DEFAULT_NEWTON_G: f64 = 6.67e-11;

const POLE_NUDGE: f64 = 1e-13;

/// Closed-form and bracketed roots must agree to this relative tolerance.
pub const CLOSED_FORM_AGREEMENT: f64 = 1e-10;

fn default_newton_g() -> f64 {
    DEFAULT_NEWTON_G
}

/// Physical constants of the homogeneous sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereModel {
    /// Density (kg/m³).
    pub rho: f64,
    /// Radius (m).
    #[serde(rename = "radius")]
    pub radius_a: f64,
    /// Elastic rigidity (Pa).
    pub mu_e: f64,
    #[serde(default = "default_newton_g")]
    pub newton_g: f64,
}

impl SphereModel {
    pub fn new(rho: f64, radius_a: f64, mu_e: f64) -> Result<Self> {
        Self::with_gravity_constant(rho, radius_a, mu_e, DEFAULT_NEWTON_G)
    }

    pub fn with_gravity_constant(rho: f64, radius_a: f64, mu_e: f64, newton_g: f64) -> Result<Self> {
        let sphere = Self { rho, radius_a, mu_e, newton_g };
        sphere.validate()?;
        Ok(sphere)
    }

    /// Sphere whose density reproduces surface gravity `g`: ρ = 3g/(4πGa).
    pub fn from_surface_gravity(g: f64, radius_a: f64, mu_e: f64, newton_g: f64) -> Result<Self> {
        let rho = 3.0 * g / (4.0 * PI * newton_g * radius_a);
        Self::with_gravity_constant(rho, radius_a, mu_e, newton_g)
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rho", self.rho),
            ("radius", self.radius_a),
            ("mu_e", self.mu_e),
            ("newton_g", self.newton_g),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidModel(format!("{name} must be finite and positive, got {v}")));
            }
        }
        Ok(())
    }

    /// g = (4/3)πGρa.
    pub fn surface_gravity(&self) -> f64 {
        4.0 / 3.0 * PI * self.newton_g * self.rho * self.radius_a
    }

    /// μ_e/(ρ g a), the elastic-to-gravitational stress ratio.
    pub fn stress_ratio(&self) -> f64 {
        self.mu_e / (self.rho * self.surface_gravity() * self.radius_a)
    }
}

/// λ² = ((2ℓ² + 4ℓ + 3)/ℓ)·μ_e/(ρ g a).
pub fn lambda_squared(sphere: &SphereModel, degree: u32) -> f64 {
    assert!(degree >= 1, "harmonic degree must be ≥ 1");
    let l = f64::from(degree);
    (2.0 * l * l + 4.0 * l + 3.0) / l * sphere.stress_ratio()
}

/// A Love-number problem at one harmonic degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProblem")]
pub struct LoveProblem {
    pub sphere: SphereModel,
    #[serde(rename = "degree")]
    degree_l: u32,
    pub fluid_limit: f64,
    gmb: GmbModel,
}

#[derive(Deserialize)]
struct RawProblem {
    sphere: SphereModel,
    degree: u32,
    fluid_limit: f64,
    gmb: GmbModel,
}

impl TryFrom<RawProblem> for LoveProblem {
    type Error = Error;

    fn try_from(raw: RawProblem) -> Result<Self> {
        raw.sphere.validate()?;
        LoveProblem::new(raw.sphere, raw.degree, raw.fluid_limit, raw.gmb)
    }
}

impl LoveProblem {
    /// Elements with coinciding relaxation times are merged.
    pub fn new(sphere: SphereModel, degree_l: u32, fluid_limit: f64, gmb: GmbModel) -> Result<Self> {
        if degree_l < 1 {
            return Err(Error::Domain("harmonic degree must be ≥ 1".into()));
        }
        if !fluid_limit.is_finite() {
            return Err(Error::InvalidModel(format!("fluid limit must be finite, got {fluid_limit}")));
        }
        Ok(Self { sphere, degree_l, fluid_limit, gmb: gmb.merge_duplicate_taus() })
    }

    pub fn degree(&self) -> u32 {
        self.degree_l
    }

    pub fn gmb(&self) -> &GmbModel {
        &self.gmb
    }

    /// Caveat for degree 1, where the response depends on the reference
    /// frame; the formulas still evaluate.
    pub fn degree_note(&self) -> Option<&'static str> {
        (self.degree_l == 1).then_some(
            "degree-1 deformation depends on the choice of reference frame; \
             results are the formal evaluation of F(s) at l = 1",
        )
    }

    pub fn lambda_squared(&self) -> f64 {
        lambda_squared(&self.sphere, self.degree_l)
    }

    /// (λ² μ′_n, 1/τ_n) for each element.
    pub(crate) fn weighted_rates(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let l2 = self.lambda_squared();
        self.gmb.elements().iter().map(move |e| (l2 * e.mu / self.sphere.mu_e, e.rate()))
    }

    /// λ² Σ μ′_n.
    pub fn stiffness(&self) -> f64 {
        self.weighted_rates().map(|(w, _)| w).sum()
    }

    /// Regular part of the impulse response at t = 0⁺, i.e. Σ L_n, from the
    /// large-s expansion F(s) ≈ L_e + Σ λ²μ′_n/τ_n / ((1 + λ²Σμ′) s).
    pub fn impulse_initial_value(&self) -> f64 {
        let k = 1.0 + self.stiffness();
        self.weighted_rates().map(|(w, r)| w * r).sum::<f64>() / (k * k)
    }

    /// g(s) = λ² μ̃(s)/μ_e.
    pub fn g(&self, s: ComplexValue) -> Result<ComplexValue> {
        Ok(self.lambda_squared() * self.gmb.complex_modulus(s)? / self.sphere.mu_e)
    }

    fn g_real(&self, s: f64) -> f64 {
        self.weighted_rates().map(|(w, r)| w * s / (s + r)).sum()
    }

    fn g_prime_real(&self, s: f64) -> f64 {
        self.weighted_rates().map(|(w, r)| w * r / ((s + r) * (s + r))).sum()
    }

    /// Normalized Love number F(s) = 1/(1 + g(s)).
    pub fn love_laplace(&self, s: ComplexValue) -> Result<ComplexValue> {
        let denominator = 1.0 + self.g(s)?;
        if denominator.norm() <= 4.0 * f64::EPSILON {
            return Err(Error::pole("F(s)", s));
        }
        Ok(denominator.inv())
    }

    /// Physical Love number L_f·F(s).
    pub fn love_number(&self, s: ComplexValue) -> Result<ComplexValue> {
        Ok(self.fluid_limit * self.love_laplace(s)?)
    }

    /// F over a batch of points, in input order.
    pub fn love_on_grid(&self, points: &[ComplexValue], mode: Execution) -> Vec<Result<ComplexValue>> {
        exec::map(points, mode, |&s| self.love_laplace(s))
    }

    /// P(s) = Π(s + 1/τ_n) and Q(s) = P(s) + λ² Σ μ′_n s Π_{n′≠n}(s + 1/τ_{n′}),
    /// factors multiplied in order of descending τ.
    pub fn pq_polynomials(&self) -> (Polynomial, Polynomial) {
        let mut terms: Vec<(f64, f64)> = self.weighted_rates().collect();
        terms.sort_by(|a, b| a.1.total_cmp(&b.1));
        let p = terms
            .iter()
            .fold(Polynomial::constant(1.0), |acc, &(_, r)| acc.mul_linear(r));
        let mut q = p.clone();
        for (n, &(w, _)) in terms.iter().enumerate() {
            let others = terms
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != n)
                .fold(Polynomial::constant(1.0), |acc, (_, &(_, r))| acc.mul_linear(r));
            q = q.add(&others.shift_up().scale(w));
        }
        (p, q)
    }

    /// Relaxation spectrum by bracketed root search of 1 + g(s) = 0.
    ///
    /// The poles −1/τ_n of g split the negative axis into N intervals
    /// (between consecutive poles, and between the last pole and 0), each
    /// holding exactly one root.
    pub fn relaxation_spectrum(&self) -> Result<RelaxationSolution> {
        let roots = self.bracketed_roots()?;
        self.solution_from_roots(&roots)
    }

    fn bracketed_roots(&self) -> Result<Vec<f64>> {
        let poles = self.gmb.modulus_poles();
        let h = |s: f64| 1.0 + self.g_real(s);
        let mut roots = Vec::with_capacity(poles.len());
        for (k, &pole) in poles.iter().enumerate() {
            let lo = pole + POLE_NUDGE * pole.abs();
            let hi = match poles.get(k + 1) {
                Some(&next) => next - POLE_NUDGE * next.abs(),
                None => 0.0,
            };
            roots.push(brent(h, lo, hi)?);
        }
        if roots.len() != self.gmb.len() {
            return Err(Error::RootCount { expected: self.gmb.len(), found: roots.len() });
        }
        Ok(roots)
    }

    /// Roots of Q by radicals (N ≤ 4 only), ascending.
    pub fn closed_form_roots(&self) -> Result<Vec<f64>> {
        let (_, q) = self.pq_polynomials();
        real_roots_closed_form(&q)
    }

    /// Bracketed spectrum plus, for N ≤ 4, the radical roots and their
    /// largest relative deviation. The bracketed roots are authoritative.
    pub fn cross_checked_spectrum(&self) -> Result<CrossCheckedSpectrum> {
        let solution = self.relaxation_spectrum()?;
        if self.gmb.len() > 4 {
            return Ok(CrossCheckedSpectrum { solution, closed_form: None, max_rel_deviation: None, warning: None });
        }
        let closed = match self.closed_form_roots() {
            Ok(r) => r,
            Err(e) => {
                return Ok(CrossCheckedSpectrum {
                    solution,
                    closed_form: None,
                    max_rel_deviation: None,
                    warning: Some(format!("closed-form solver failed ({e}); using bracketed roots")),
                })
            }
        };
        let deviation = closed
            .iter()
            .zip(solution.modes.iter().map(|m| m.rate))
            .map(|(c, b)| ((c - b) / b).abs())
            .fold(0.0, f64::max);
        let warning = (deviation > CLOSED_FORM_AGREEMENT).then(|| {
            format!("closed-form roots deviate by {deviation:e} from bracketed roots; using bracketed roots")
        });
        Ok(CrossCheckedSpectrum {
            solution,
            closed_form: Some(closed),
            max_rel_deviation: Some(deviation),
            warning,
        })
    }

    /// Heaviside expansion at the given roots: L_n = P(s_n)/Q′(s_n), which
    /// equals 1/g′(s_n) since Q = P(1 + g).
    fn solution_from_roots(&self, roots: &[f64]) -> Result<RelaxationSolution> {
        let mut modes: Vec<Mode> = roots
            .iter()
            .map(|&s| Mode { rate: s, amplitude: 1.0 / self.g_prime_real(s) })
            .collect();
        modes.sort_by(|a, b| a.rate.total_cmp(&b.rate));
        for pair in modes.windows(2) {
            if pair[0].rate >= pair[1].rate {
                return Err(Error::RootCount { expected: roots.len(), found: roots.len() - 1 });
            }
        }
        if modes.iter().any(|m| m.rate >= 0.0) {
            return Err(Error::Domain("relaxation root on the non-negative axis".into()));
        }
        Ok(RelaxationSolution {
            elastic_amp: 1.0 / (1.0 + self.stiffness()),
            modes,
            normalized: true,
        })
    }
}

/// Spectrum together with the radical-solver cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckedSpectrum {
    pub solution: RelaxationSolution,
    pub closed_form: Option<Vec<f64>>,
    pub max_rel_deviation: Option<f64>,
    pub warning: Option<String>,
}

/// One relaxation mode: amplitude L_n of e^{s_n t}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    /// Inverse relaxation time s_n (1/s, negative).
    pub rate: f64,
    pub amplitude: f64,
}

/// Multi-exponential form L(t) = L_e δ(t) + Σ L_n e^{s_n t}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelaxationSolution {
    pub elastic_amp: f64,
    pub modes: Vec<Mode>,
    pub normalized: bool,
}

/// Impulse response at one time: the regular part and the amplitude of the
/// δ(t) term, which is never sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpulseResponse {
    pub regular: f64,
    pub delta_amplitude: f64,
}

fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

impl RelaxationSolution {
    /// Σ L_n e^{s_n t} and L_e.
    pub fn impulse_response(&self, t: f64) -> Result<ImpulseResponse> {
        check_time(t)?;
        let regular = self.modes.iter().map(|m| m.amplitude * (m.rate * t).exp()).sum();
        Ok(ImpulseResponse { regular, delta_amplitude: self.elastic_amp })
    }

    /// Response to a unit step load: L_e + Σ L_n (1 − e^{s_n t})/(−s_n).
    pub fn heaviside_load_response(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        let transient: f64 = self
            .modes
            .iter()
            .map(|m| m.amplitude * -(m.rate * t).exp_m1() / -m.rate)
            .sum();
        Ok(self.elastic_amp + transient)
    }

    /// L_e + Σ L_n/(s − s_n), the transform of the multi-exponential form.
    pub fn laplace(&self, s: ComplexValue) -> ComplexValue {
        self.modes
            .iter()
            .map(|m| m.amplitude / (s - m.rate))
            .sum::<Complex64>()
            + self.elastic_amp
    }

    /// n-th derivative of the transform: Σ L_k (−1)^n n!/(s − s_k)^{n+1}
    /// (plus L_e for n = 0).
    pub fn laplace_derivative(&self, s: f64, n: u32) -> f64 {
        if n == 0 {
            return self.laplace(Complex64::new(s, 0.0)).re;
        }
        let factorial: f64 = (1..=n).map(f64::from).product();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sign * factorial
            * self
                .modes
                .iter()
                .map(|m| m.amplitude / (s - m.rate).powi(n as i32 + 1))
                .sum::<f64>()
    }

    /// L_e + Σ L_n/(−s_n) − 1, zero for a normalized solution.
    pub fn sum_rule_residual(&self) -> f64 {
        self.elastic_amp + self.modes.iter().map(|m| m.amplitude / -m.rate).sum::<f64>() - 1.0
    }

    /// Amplitudes multiplied by the fluid limit.
    pub fn scaled(&self, fluid_limit: f64) -> RelaxationSolution {
        RelaxationSolution {
            elastic_amp: self.elastic_amp * fluid_limit,
            modes: self
                .modes
                .iter()
                .map(|m| Mode { rate: m.rate, amplitude: m.amplitude * fluid_limit })
                .collect(),
            normalized: false,
        }
    }

    /// Regular impulse part and step response over a time grid.
    pub fn sample(&self, times: &[f64], mode: Execution) -> Result<Vec<(f64, f64, f64)>> {
        exec::map(times, mode, |&t| {
            Ok((t, self.impulse_response(t)?.regular, self.heaviside_load_response(t)?))
        })
        .into_iter()
        .collect()
    }
}
