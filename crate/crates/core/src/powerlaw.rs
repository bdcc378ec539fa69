//! Infinite and truncated generalized Maxwell bodies whose rigidities and
//! viscosities follow power laws, μ_n = μ*/n^p and η_n = η*/n^q.
//!
//! In the normalized variable z = sτ* the modulus is
//! m(z; p, q) = Σ_n z / (n^p z + n^q). The series converges for every z off
//! the poles when (p, q) lies in the region A = {p ≥ 2} ∪ {q ≥ 2}.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mp::NeumaierSum;
use crate::rheology::{GmbModel, MaxwellElement};
use crate::specfun::{
    digamma, digamma_1p_plus_gamma, power_tail, x_coth_x_minus_one, zeta_int, ComplexValue,
};

/// Hard cap on the number of summed terms.
pub const MAX_SERIES_TERMS: usize = 10_000_000;

/// Below this |z| the (0, q) root-sum formula is replaced by its Taylor series.
const SMALL_Z_ROOT_SUM: f64 = 0.25;

/// Whether the infinite series converges, i.e. (p, q) ∈ A.
pub fn in_convergence_region(p: u32, q: u32) -> bool {
    p >= 2 || q >= 2
}

/// Number of Maxwell elements in a power-law body.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementCount {
    Finite(usize),
    Infinite,
}

impl fmt::Display for ElementCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementCount::Finite(n) => write!(f, "{n}"),
            ElementCount::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for ElementCount {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ElementCount::Finite(n) => serializer.serialize_u64(*n as u64),
            ElementCount::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for ElementCount {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Count(u64),
            Word(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Count(0) => Err(serde::de::Error::custom("n_elements must be positive")),
            Repr::Count(n) => Ok(ElementCount::Finite(n as usize)),
            Repr::Word(w) if w == "infinite" => Ok(ElementCount::Infinite),
            Repr::Word(w) => Err(serde::de::Error::custom(format!(
                "n_elements must be a positive integer or \"infinite\", got {w:?}"
            ))),
        }
    }
}

/// The (p, q, μ*, η*, N) power-law family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPowerLaw")]
pub struct PowerLawGmb {
    pub p: u32,
    pub q: u32,
    #[serde(rename = "mu_star_pa")]
    pub mu_star: f64,
    #[serde(rename = "eta_star_pas")]
    pub eta_star: f64,
    pub n_elements: ElementCount,
}

#[derive(Deserialize)]
struct RawPowerLaw {
    p: u32,
    q: u32,
    mu_star_pa: f64,
    eta_star_pas: f64,
    n_elements: ElementCount,
}

impl TryFrom<RawPowerLaw> for PowerLawGmb {
    type Error = Error;

    fn try_from(raw: RawPowerLaw) -> Result<Self> {
        PowerLawGmb::new(raw.p, raw.q, raw.mu_star_pa, raw.eta_star_pas, raw.n_elements)
    }
}

impl PowerLawGmb {
    pub fn new(p: u32, q: u32, mu_star: f64, eta_star: f64, n_elements: ElementCount) -> Result<Self> {
        MaxwellElement::new(mu_star, eta_star)?;
        match n_elements {
            ElementCount::Finite(0) => {
                return Err(Error::InvalidModel("n_elements must be positive".into()))
            }
            ElementCount::Infinite if !in_convergence_region(p, q) => {
                return Err(Error::Divergent { p, q })
            }
            _ => {}
        }
        Ok(Self { p, q, mu_star, eta_star, n_elements })
    }

    /// τ* = η*/μ*.
    pub fn tau_star(&self) -> f64 {
        self.eta_star / self.mu_star
    }

    /// The n-th element (n ≥ 1).
    pub fn element(&self, n: usize) -> MaxwellElement {
        let nf = n as f64;
        MaxwellElement {
            mu: self.mu_star / nf.powi(self.p as i32),
            eta: self.eta_star / nf.powi(self.q as i32),
        }
    }

    /// The first `n` elements as an ordinary finite model.
    pub fn truncated(&self, n: usize) -> Result<GmbModel> {
        GmbModel::new((1..=n).map(|k| self.element(k)).collect())
    }

    /// Normalized modulus m(z) = μ̃(s)/μ* at z = sτ*.
    ///
    /// Infinite bodies use the closed form where one is implemented and the
    /// tail-corrected series (to 1e-12) otherwise.
    pub fn normalized_modulus(&self, z: ComplexValue) -> Result<ComplexValue> {
        match self.n_elements {
            ElementCount::Finite(n) => m_truncated(z, self.p, self.q, n),
            ElementCount::Infinite => match m_closed(z, self.p, self.q) {
                Err(Error::UnsupportedExponents { .. }) => {
                    Ok(m_series(z, self.p, self.q, 1e-12)?.value)
                }
                other => other,
            },
        }
    }

    /// μ̃(s) in Pa.
    pub fn complex_modulus(&self, s: ComplexValue) -> Result<ComplexValue> {
        Ok(self.mu_star * self.normalized_modulus(s * self.tau_star())?)
    }
}

fn term_pole_check(z: ComplexValue, np: f64, nq: f64) -> Result<Complex64> {
    let denominator = np * z + nq;
    if denominator.norm() <= 4.0 * f64::EPSILON * nq {
        return Err(Error::pole("m(z; p, q)", z));
    }
    Ok(z / denominator)
}

/// Partial sum of the first `n_terms` terms of m(z; p, q).
pub fn m_truncated(z: ComplexValue, p: u32, q: u32, n_terms: usize) -> Result<ComplexValue> {
    Ok(head_sum(z, p, q, n_terms)?.0)
}

/// Head sum and Σ|term| (for a rounding-error estimate). Summed from the
/// smallest terms up with compensation.
fn head_sum(z: ComplexValue, p: u32, q: u32, n_terms: usize) -> Result<(ComplexValue, f64)> {
    let (mut re, mut im) = (NeumaierSum::default(), NeumaierSum::default());
    let mut abs_sum = 0.0;
    for n in (1..=n_terms).rev() {
        let nf = n as f64;
        let term = term_pole_check(z, nf.powi(p as i32), nf.powi(q as i32))?;
        re.add(term.re);
        im.add(term.im);
        abs_sum += term.norm();
    }
    Ok((Complex64::new(re.value(), im.value()), abs_sum))
}

/// Upper bound on |Σ_{n>N} z/(n^p z + n^q)| for Re z > 0, from
/// |z|/|n^p z + n^q| ≤ min(n^{−p}, |z| n^{−q}) and integral bounds.
pub fn tail_bound(z: ComplexValue, p: u32, q: u32, n_terms: usize) -> Result<f64> {
    if !in_convergence_region(p, q) {
        return Err(Error::Divergent { p, q });
    }
    if n_terms < 2 {
        return Err(Error::Domain(format!("tail bound needs at least 2 terms, got {n_terms}")));
    }
    if z.re < 0.0 || (z.re == 0.0 && z.im != 0.0) {
        return Err(Error::Domain(format!("tail bound holds for Re z > 0, got z = {z}")));
    }
    let n = n_terms as f64;
    let integral = |r: u32| n.powf(1.0 - f64::from(r)) / (f64::from(r) - 1.0);
    if p == q {
        return Ok((z / (z + 1.0)).norm() * integral(p));
    }
    let mut bound = f64::INFINITY;
    if p >= 2 {
        bound = bound.min(integral(p));
    }
    if q >= 2 {
        bound = bound.min(z.norm() * integral(q));
    }
    Ok(bound)
}

/// A series value together with the number of summed terms and a bound on
/// its total error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: ComplexValue,
    pub n_terms: usize,
    pub error_bound: f64,
}

fn rounding_bound(abs_sum: f64, n_terms: usize) -> f64 {
    // compensated summation: a few ulps of Σ|term| plus per-term rounding
    (4.0 + 1e-6 * n_terms as f64) * f64::EPSILON * abs_sum
}

/// Plain truncation with the number of terms chosen from [`tail_bound`].
/// Fails past [`MAX_SERIES_TERMS`].
pub fn m_series_crude(z: ComplexValue, p: u32, q: u32, tol: f64) -> Result<SeriesSum> {
    let mut n = 2usize;
    while tail_bound(z, p, q, n)? > tol {
        if n >= MAX_SERIES_TERMS {
            return Err(Error::TermCap { cap: MAX_SERIES_TERMS, tol });
        }
        n = (n * 2).min(MAX_SERIES_TERMS);
    }
    // bisect down to the smallest sufficient count
    let (mut lo, mut hi) = (n / 2, n);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail_bound(z, p, q, mid.max(2))? <= tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let n_terms = hi.max(2);
    let (value, abs_sum) = head_sum(z, p, q, n_terms)?;
    Ok(SeriesSum {
        value,
        n_terms,
        error_bound: tail_bound(z, p, q, n_terms)? + rounding_bound(abs_sum, n_terms),
    })
}

/// Tail-corrected series: the first N terms summed directly plus the tail
/// Σ_{n>N} expanded geometrically in n^{−|q−p|} and summed with
/// Euler–Maclaurin power tails. `error_bound` is rigorous: it covers the
/// truncated expansion and its remainders, plus a rounding estimate.
pub fn m_series(z: ComplexValue, p: u32, q: u32, tol: f64) -> Result<SeriesSum> {
    if !in_convergence_region(p, q) {
        return Err(Error::Divergent { p, q });
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(SeriesSum { value: z, n_terms: 0, error_bound: 0.0 });
    }
    let mut n_terms = 1000usize;
    loop {
        if let Some((tail, tail_error)) = asymptotic_tail(z, p, q, n_terms, tol / 2.0) {
            let (head, abs_sum) = head_sum(z, p, q, n_terms)?;
            let error_bound = tail_error + rounding_bound(abs_sum, n_terms);
            if error_bound <= tol {
                return Ok(SeriesSum { value: head + tail, n_terms, error_bound });
            }
        }
        if n_terms >= MAX_SERIES_TERMS {
            return Err(Error::TermCap { cap: MAX_SERIES_TERMS, tol });
        }
        n_terms = (n_terms * 4).min(MAX_SERIES_TERMS);
    }
}

/// Σ_{n>N} z/(n^p z + n^q) and its error bound, if the geometric expansion
/// converges fast enough at this N.
fn asymptotic_tail(z: ComplexValue, p: u32, q: u32, n: usize, tol: f64) -> Option<(ComplexValue, f64)> {
    let nf = n as f64;
    let abs_z = z.norm();
    if p == q {
        let (h, h_err) = power_tail(f64::from(p), n as u64);
        let factor = z / (z + 1.0);
        return Some((factor * h, factor.norm() * h_err));
    }
    let d = f64::from(p.abs_diff(q));
    // ratio w_n = z n^{p−q} (q > p) or 1/(z n^{p−q}) (p > q)
    let (base, rho, ratio) = if q > p {
        (f64::from(q), abs_z / nf.powf(d), -z)
    } else {
        (f64::from(p), 1.0 / (abs_z * nf.powf(d)), -z.inv())
    };
    if rho > 0.5 {
        return None;
    }
    let prefactor = if q > p { z } else { Complex64::new(1.0, 0.0) };
    let mut tail = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut coefficient = prefactor;
    for j in 0..60u32 {
        let exponent = base + f64::from(j) * d;
        // remainder after j terms: |prefactor| |ratio|^j /(1 − ρ) · Σ_{n>N} n^{−exponent}
        let remainder = prefactor.norm() * ratio.norm().powi(j as i32) / (1.0 - rho)
            * nf.powf(1.0 - exponent)
            / (exponent - 1.0);
        if remainder <= tol / 2.0 {
            return Some((tail, error + remainder));
        }
        let (h, h_err) = power_tail(exponent, n as u64);
        tail += coefficient * h;
        error += coefficient.norm() * h_err;
        coefficient *= ratio;
    }
    None
}

/// Pole locations z_n = −n^{q−p}.
pub fn powerlaw_poles(p: u32, q: u32, n: u32) -> f64 {
    -f64::from(n).powi(q as i32 - p as i32)
}

fn check_closed_form_pole(z: ComplexValue, p: u32, q: u32) -> Result<()> {
    if z.im != 0.0 || z.re >= 0.0 {
        return Ok(());
    }
    let hit = if p == q {
        (z.re + 1.0).abs() <= 1e-12
    } else {
        let index = (-z.re).powf(1.0 / (f64::from(q) - f64::from(p)));
        let nearest = index.round();
        nearest >= 1.0 && (index - nearest).abs() <= 1e-12 * nearest
    };
    if hit {
        return Err(Error::pole("M(z; p, q)", z));
    }
    Ok(())
}

/// Closed form of the infinite power-law modulus M(z; p, q).
///
/// Implemented for (0,2), (2,0), (1,2), (2,1), (p,p) with p ≥ 2, and
/// (0,q), (q,0) with q ≥ 3; the (2,0), (2,1) and (q,0) cases are obtained
/// from their duals through m(z; p, q) = z·m(1/z; q, p).
pub fn m_closed(z: ComplexValue, p: u32, q: u32) -> Result<ComplexValue> {
    if !in_convergence_region(p, q) {
        return Err(Error::Divergent { p, q });
    }
    check_closed_form_pole(z, p, q)?;
    match (p, q) {
        (0, 2) => Ok(0.5 * x_coth_x_minus_one(PI * z.sqrt())?),
        (1, 2) => digamma_1p_plus_gamma(z),
        (p, q) if p == q => {
            if (z + 1.0).norm() == 0.0 {
                return Err(Error::pole("M(z; p, p)", z));
            }
            Ok(z * zeta_int(p)? / (1.0 + z))
        }
        (0, q) if q >= 3 => root_sum(z, q),
        (2, 0) | (2, 1) => dual(z, p, q),
        (p, 0) if p >= 3 => dual(z, p, q),
        _ => Err(Error::UnsupportedExponents { p, q }),
    }
}

fn dual(z: ComplexValue, p: u32, q: u32) -> Result<ComplexValue> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    apply_reciprocity(z, p, q)
}

/// m(z; p, q) = z·m(1/z; q, p), evaluating the dual (q, p) in closed form.
pub fn apply_reciprocity(z: ComplexValue, p: u32, q: u32) -> Result<ComplexValue> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("reciprocity map needs z ≠ 0".into()));
    }
    Ok(z * m_closed(z.inv(), q, p)?)
}

/// The q solutions ξ_k of z + (1 + ξ)^q = 0.
pub fn roots_of_unity_xi(z: ComplexValue, q: u32) -> Result<Vec<ComplexValue>> {
    if q == 0 {
        return Err(Error::Domain("q must be positive".into()));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("roots of z + (1 + ξ)^q need z ≠ 0".into()));
    }
    let minus_z = -z;
    let qf = f64::from(q);
    let principal = Complex64::from_polar(minus_z.norm().powf(1.0 / qf), minus_z.arg() / qf);
    Ok((0..q)
        .map(|k| principal * Complex64::from_polar(1.0, 2.0 * PI * f64::from(k) / qf) - 1.0)
        .collect())
}

/// M(z; 0, q) = −(z/q) Σ_k ψ(−ξ_k)/(1 + ξ_k)^{q−1}, q ≥ 3.
fn root_sum(z: ComplexValue, q: u32) -> Result<ComplexValue> {
    if z.norm() < SMALL_Z_ROOT_SUM {
        return small_z_root_sum(z, q);
    }
    root_sum_formula(z, q)
}

fn root_sum_formula(z: ComplexValue, q: u32) -> Result<ComplexValue> {
    let mut sum = Complex64::new(0.0, 0.0);
    for xi in roots_of_unity_xi(z, q)? {
        let shifted = xi + 1.0;
        sum += digamma(-xi)? / shifted.powu(q - 1);
    }
    Ok(-z / f64::from(q) * sum)
}

/// Σ_j (−1)^j ζ(q(j+1)) z^{j+1}, the expansion of Σ_n z/(z + n^q) for |z| < 1.
fn small_z_root_sum(z: ComplexValue, q: u32) -> Result<ComplexValue> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = z;
    for j in 0..60u32 {
        let term = power * zeta_int(q * (j + 1))?;
        sum += if j % 2 == 0 { term } else { -term };
        if power.norm() < 1e-18 * sum.norm() {
            break;
        }
        power *= z;
    }
    Ok(sum)
}

/// lim_{z→∞} M(z; p, q) = ζ(p), bounded only for p ≥ 2.
pub fn high_freq_limit(p: u32) -> Result<f64> {
    if p < 2 {
        return Err(Error::Domain(format!("M(z; p, q) is unbounded at z = ∞ for p = {p}")));
    }
    zeta_int(p)
}
