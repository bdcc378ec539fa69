//! Finite generalized Maxwell bodies: classical Maxwell elements (spring and
//! dashpot in series) assembled in parallel.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::roots::brent;
use crate::specfun::ComplexValue;

/// Relative tolerance under which two relaxation times are treated as equal.
pub const TAU_MERGE_TOLERANCE: f64 = 1e-12;

/// Relative nudge applied to pole endpoints before bracketing.
const POLE_NUDGE: f64 = 1e-13;

/// A classical Maxwell body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawElement")]
pub struct MaxwellElement {
    /// Rigidity (Pa).
    #[serde(rename = "mu_pa")]
    pub mu: f64,
    /// Viscosity (Pa·s).
    #[serde(rename = "eta_pas")]
    pub eta: f64,
}

#[derive(Deserialize)]
struct RawElement {
    mu_pa: f64,
    eta_pas: f64,
}

impl TryFrom<RawElement> for MaxwellElement {
    type Error = Error;

    fn try_from(raw: RawElement) -> Result<Self> {
        MaxwellElement::new(raw.mu_pa, raw.eta_pas)
    }
}

impl MaxwellElement {
    pub fn new(mu: f64, eta: f64) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidModel(format!("rigidity must be finite and positive, got {mu}")));
        }
        if !(eta.is_finite() && eta > 0.0) {
            return Err(Error::InvalidModel(format!("viscosity must be finite and positive, got {eta}")));
        }
        Ok(Self { mu, eta })
    }

    /// Element with rigidity `mu` and Maxwell time `tau`.
    pub fn with_tau(mu: f64, tau: f64) -> Result<Self> {
        Self::new(mu, mu * tau)
    }

    /// Maxwell relaxation time η/μ.
    pub fn tau(&self) -> f64 {
        self.eta / self.mu
    }

    pub fn rate(&self) -> f64 {
        self.mu / self.eta
    }
}

/// Parallel assembly of N ≥ 1 Maxwell elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct GmbModel {
    elements: Vec<MaxwellElement>,
}

#[derive(Deserialize)]
struct RawModel {
    elements: Vec<MaxwellElement>,
}

impl TryFrom<RawModel> for GmbModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        GmbModel::new(raw.elements)
    }
}

impl GmbModel {
    pub fn new(elements: Vec<MaxwellElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidModel("a GMB needs at least one element".into()));
        }
        Ok(Self { elements })
    }

    /// Model from `(mu, eta)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let elements = pairs
            .iter()
            .map(|&(mu, eta)| MaxwellElement::new(mu, eta))
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements)
    }

    pub fn elements(&self) -> &[MaxwellElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Unrelaxed (s → ∞) modulus Σ μ_n.
    pub fn total_rigidity(&self) -> f64 {
        self.elements.iter().map(|e| e.mu).sum()
    }

    pub fn min_tau(&self) -> f64 {
        self.elements.iter().map(MaxwellElement::tau).fold(f64::INFINITY, f64::min)
    }

    pub fn max_tau(&self) -> f64 {
        self.elements.iter().map(MaxwellElement::tau).fold(0.0, f64::max)
    }

    /// Whether all relaxation times are pairwise distinct under
    /// [`TAU_MERGE_TOLERANCE`].
    pub fn has_distinct_taus(&self) -> bool {
        let mut taus: Vec<f64> = self.elements.iter().map(MaxwellElement::tau).collect();
        taus.sort_by(f64::total_cmp);
        taus.windows(2).all(|w| !same_tau(w[0], w[1]))
    }

    /// Replace elements sharing a relaxation time by a single element with
    /// the summed rigidity. Elements come back sorted by ascending τ.
    pub fn merge_duplicate_taus(&self) -> GmbModel {
        let mut sorted = self.elements.clone();
        sorted.sort_by(|a, b| a.tau().total_cmp(&b.tau()));
        let mut merged: Vec<MaxwellElement> = Vec::with_capacity(sorted.len());
        let mut group_tau = f64::NAN;
        for element in sorted {
            match merged.last_mut() {
                Some(last) if same_tau(group_tau, element.tau()) => {
                    last.mu += element.mu;
                    last.eta = last.mu * group_tau;
                }
                _ => {
                    group_tau = element.tau();
                    merged.push(element);
                }
            }
        }
        GmbModel { elements: merged }
    }

    fn check_pole(&self, s: ComplexValue) -> Result<()> {
        for e in &self.elements {
            let rate = e.rate();
            if (s + rate).norm() <= 4.0 * f64::EPSILON * rate {
                return Err(Error::pole("complex modulus", s));
            }
        }
        Ok(())
    }

    /// μ̃(s) = Σ μ_n s / (s + 1/τ_n).
    pub fn complex_modulus(&self, s: ComplexValue) -> Result<ComplexValue> {
        self.check_pole(s)?;
        Ok(self.elements.iter().map(|e| e.mu * s / (s + e.rate())).sum())
    }

    /// Real-axis modulus, without pole checks.
    pub(crate) fn modulus_real(&self, s: f64) -> f64 {
        self.elements.iter().map(|e| e.mu * s / (s + e.rate())).sum()
    }

    /// k-th derivative of μ̃ with respect to s.
    pub fn modulus_derivative(&self, s: ComplexValue, k: u32) -> Result<ComplexValue> {
        if k == 0 {
            return self.complex_modulus(s);
        }
        self.check_pole(s)?;
        let factorial: f64 = (1..=k).map(f64::from).product();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let sum: Complex64 = self
            .elements
            .iter()
            .map(|e| (e.mu * e.rate()) / (s + e.rate()).powu(k + 1))
            .sum();
        Ok(sum * (sign * factorial))
    }

    /// Poles −1/τ_n, ascending. Duplicate times are merged first.
    pub fn modulus_poles(&self) -> Vec<f64> {
        let mut poles: Vec<f64> = self
            .merge_duplicate_taus()
            .elements
            .iter()
            .map(|e| -e.rate())
            .collect();
        poles.sort_by(f64::total_cmp);
        poles
    }

    /// The N real zeros of μ̃ on the closed negative axis, ascending; the
    /// last one is s = 0. Each of the others lies between two consecutive
    /// poles.
    pub fn modulus_zeros(&self) -> Result<Vec<f64>> {
        let model = self.merge_duplicate_taus();
        let poles = model.modulus_poles();
        let mut zeros = Vec::with_capacity(poles.len());
        for pair in poles.windows(2) {
            let lo = pair[0] + POLE_NUDGE * pair[0].abs();
            let hi = pair[1] - POLE_NUDGE * pair[1].abs();
            zeros.push(brent(|s| model.modulus_real(s), lo, hi)?);
        }
        zeros.push(0.0);
        Ok(zeros)
    }

    /// Creep compliance J(s) = 1 / (2 s μ̃(s)).
    pub fn creep_compliance(&self, s: ComplexValue) -> Result<ComplexValue> {
        if s.norm() == 0.0 {
            return Err(Error::pole("creep compliance", s));
        }
        let mu = self.complex_modulus(s)?;
        if mu.norm() == 0.0 {
            return Err(Error::pole("creep compliance", s));
        }
        Ok((2.0 * s * mu).inv())
    }

    /// Relaxation modulus G(s) = 2 μ̃(s) / s.
    pub fn relaxation_modulus(&self, s: ComplexValue) -> Result<ComplexValue> {
        if s.norm() == 0.0 {
            return Err(Error::pole("relaxation modulus", s));
        }
        Ok(2.0 * self.complex_modulus(s)? / s)
    }

    /// μ̃ over a batch of points, in input order.
    pub fn modulus_on_grid(&self, points: &[ComplexValue], mode: Execution) -> Vec<Result<ComplexValue>> {
        exec::map(points, mode, |&s| self.complex_modulus(s))
    }
}

fn same_tau(a: f64, b: f64) -> bool {
    (a - b).abs() <= TAU_MERGE_TOLERANCE * a.abs().max(b.abs())
}

/// `n` points evenly spaced in log10 between `start` and `stop` (both > 0).
pub fn log_grid(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let (a, b) = (start.log10(), stop.log10());
            let mut grid: Vec<f64> = (0..n)
                .map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64))
                .collect();
            grid[0] = start;
            grid[n - 1] = stop;
            grid
        }
    }
}

/// Log-uniform sampling ranges for random models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSampler {
    pub mu_range: (f64, f64),
    pub eta_range: (f64, f64),
}

impl Default for ModelSampler {
    /// Six decades each: μ ∈ [1e8, 1e14] Pa, η ∈ [1e17, 1e23] Pa·s.
    fn default() -> Self {
        Self { mu_range: (1e8, 1e14), eta_range: (1e17, 1e23) }
    }
}

impl ModelSampler {
    /// Random model with `n` elements; duplicate times are merged, so the
    /// result may (rarely) hold fewer elements.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> GmbModel {
        assert!(n >= 1, "a GMB needs at least one element");
        let log_uniform = |rng: &mut R, (lo, hi): (f64, f64)| {
            10f64.powf(rng.gen_range(lo.log10()..=hi.log10()))
        };
        let elements = (0..n)
            .map(|_| MaxwellElement {
                mu: log_uniform(rng, self.mu_range),
                eta: log_uniform(rng, self.eta_range),
            })
            .collect();
        GmbModel { elements }.merge_duplicate_taus()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn merge_examples() {
        let m = GmbModel::from_pairs(&[(1.0, 1.0), (2.0, 2.0)]).unwrap().merge_duplicate_taus();
        assert_eq!(m.len(), 1);
        assert_eq!(m.elements()[0].mu, 3.0);
        assert_eq!(m.elements()[0].tau(), 1.0);

        let distinct = GmbModel::from_pairs(&[(1.0, 1.0), (1.0, 2.0)]).unwrap();
        assert_eq!(distinct.merge_duplicate_taus().len(), 2);
        assert!(distinct.has_distinct_taus());

        let triple = GmbModel::from_pairs(&[(1.0, 1.0); 3]).unwrap();
        assert!(!triple.has_distinct_taus());
        let merged = triple.merge_duplicate_taus();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged.elements()[0].mu, 3.0);
    }

    #[test]
    fn modulus_examples() {
        let cmb = GmbModel::from_pairs(&[(1.0, 1.0)]).unwrap();
        assert_eq!(cmb.complex_modulus(c(0.0)).unwrap(), c(0.0));
        assert!((cmb.complex_modulus(c(1.0)).unwrap() - c(0.5)).norm() < 1e-16);
        let m = GmbModel::from_pairs(&[(1.0, 3.0), (2.0, 0.5), (4.0, 40.0)]).unwrap();
        let far = m.complex_modulus(c(1e15)).unwrap();
        assert!((far.re - 7.0).abs() < 1e-12);
    }

    #[test]
    fn modulus_pole_is_reported() {
        let m = GmbModel::from_pairs(&[(1.0, 2.0)]).unwrap();
        assert!(matches!(m.complex_modulus(c(-0.5)), Err(Error::Pole { .. })));
        assert!(matches!(m.modulus_derivative(c(-0.5), 2), Err(Error::Pole { .. })));
    }

    #[test]
    fn derivative_examples() {
        let cmb = GmbModel::from_pairs(&[(1.0, 1.0)]).unwrap();
        let s = Complex64::new(0.3, 0.2);
        assert_eq!(cmb.modulus_derivative(s, 0).unwrap(), cmb.complex_modulus(s).unwrap());
        assert!((cmb.modulus_derivative(c(1.0), 1).unwrap() - c(0.25)).norm() < 1e-16);
    }

    #[test]
    fn third_derivative_against_finite_differences() {
        let m = GmbModel::from_pairs(&[(1.0, 0.4), (0.5, 2.0), (2.0, 9.0)]).unwrap();
        let s0 = 0.7;
        let exact = m.modulus_derivative(c(s0), 3).unwrap().re;
        let d2 = |s: f64| m.modulus_derivative(c(s), 2).unwrap().re;
        // 4-point central difference of μ̃'' gives μ̃''' with O(h⁴) error
        let best = [1e-2, 5e-3, 2e-3, 1e-3]
            .iter()
            .map(|&h| {
                let fd = (-d2(s0 + 2.0 * h) + 8.0 * d2(s0 + h) - 8.0 * d2(s0 - h) + d2(s0 - 2.0 * h))
                    / (12.0 * h);
                ((fd - exact) / exact).abs()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(best < 1e-6, "best relative error {best}");
    }

    #[test]
    fn poles_examples() {
        assert_eq!(GmbModel::from_pairs(&[(1.0, 1.0)]).unwrap().modulus_poles(), vec![-1.0]);
        let two = GmbModel::from_pairs(&[(1.0, 1.0), (1.0, 2.0)]).unwrap();
        assert_eq!(two.modulus_poles(), vec![-1.0, -0.5]);
        let three = GmbModel::from_pairs(&[(1.0, 10.0), (1.0, 0.1), (1.0, 1.0)]).unwrap();
        let poles = three.modulus_poles();
        for (p, want) in poles.iter().zip([-10.0, -1.0, -0.1]) {
            assert!((p - want).abs() < 1e-14);
        }
    }

    #[test]
    fn zeros_examples() {
        assert_eq!(GmbModel::from_pairs(&[(1.0, 1.0)]).unwrap().modulus_zeros().unwrap(), vec![0.0]);
        // τ = {1, 2}, μ = {1, 1}: numerator s(2s + 3/2)
        let two = GmbModel::from_pairs(&[(1.0, 1.0), (1.0, 2.0)]).unwrap();
        let zeros = two.modulus_zeros().unwrap();
        assert_eq!(zeros.len(), 2);
        assert!((zeros[0] + 0.75).abs() < 1e-15);
        assert_eq!(zeros[1], 0.0);
    }

    #[test]
    fn material_functions() {
        let cmb = GmbModel::from_pairs(&[(1.0, 1.0)]).unwrap();
        assert!((cmb.relaxation_modulus(c(1.0)).unwrap() - c(1.0)).norm() < 1e-16);
        assert!((cmb.creep_compliance(c(1.0)).unwrap() - c(1.0)).norm() < 1e-16);
        assert!(cmb.creep_compliance(c(0.0)).is_err());
        assert!(cmb.relaxation_modulus(c(0.0)).is_err());
    }

    #[test]
    fn sampler_is_reproducible_and_in_range() {
        let sampler = ModelSampler::default();
        let a = sampler.sample(&mut ChaCha8Rng::seed_from_u64(7), 6);
        let b = sampler.sample(&mut ChaCha8Rng::seed_from_u64(7), 6);
        assert_eq!(a, b);
        for e in a.elements() {
            assert!((1e8..=1e14).contains(&e.mu));
        }
    }

    #[test]
    fn rejects_bad_elements() {
        assert!(MaxwellElement::new(0.0, 1.0).is_err());
        assert!(MaxwellElement::new(1.0, -1.0).is_err());
        assert!(MaxwellElement::new(f64::NAN, 1.0).is_err());
        assert!(GmbModel::new(vec![]).is_err());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-3, 1e3, 7);
        assert_eq!(g.len(), 7);
        assert!((g[0] - 1e-3).abs() < 1e-18);
        assert!((g[3] - 1.0).abs() < 1e-15);
        assert!((g[6] - 1e3).abs() < 1e-12);
    }
}
