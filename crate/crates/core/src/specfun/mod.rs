//! Special functions behind the closed-form moduli (complex digamma, zeta at
//! integers, complex `coth`/`cot`) plus the incomplete Bell polynomials.

mod bell;

pub use bell::{bell_incomplete, bell_triangle, binomial_table};

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Complex Laplace-domain value.
pub type ComplexValue = Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// B_2, B_4, …, B_20.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Shift target for the digamma recurrence; the asymptotic series below is
/// accurate to ~1e-18 once Re z ≥ 10.
const DIGAMMA_SHIFT: f64 = 10.0;
const DIGAMMA_ASYMPTOTIC_TERMS: usize = 8;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Digamma function ψ(z) = Γ′(z)/Γ(z) for complex `z`.
///
/// Reflection for Re z < 1/2, upward recurrence to Re z ≥ 10, then the
/// Bernoulli asymptotic series.
pub fn digamma(z: ComplexValue) -> Result<ComplexValue> {
    if is_nonpositive_integer(z) {
        return Err(Error::pole("digamma", z));
    }
    if z.re < 0.5 {
        // ψ(z) = ψ(1 − z) − π cot(πz)
        let reflected = digamma(Complex64::new(1.0, 0.0) - z)?;
        return Ok(reflected - PI * cot_pi(z)?);
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < DIGAMMA_SHIFT {
        acc -= w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().take(DIGAMMA_ASYMPTOTIC_TERMS).enumerate() {
        series += power * (b / (2.0 * (k as f64 + 1.0)));
        power *= inv2;
    }
    Ok(acc + w.ln() - 0.5 * inv - series)
}

/// ψ(1 + w) + γ, accurate near w = 0 where the two terms nearly cancel.
pub fn digamma_1p_plus_gamma(w: ComplexValue) -> Result<ComplexValue> {
    if w.norm() < 0.1 {
        // Σ_{k≥2} (−1)^k ζ(k) w^{k−1}; |w| < 0.1 needs ~16 terms.
        let mut sum = Complex64::new(0.0, 0.0);
        let mut power = w;
        for k in 2..=20u32 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += power * (sign * zeta_int(k)?);
            power *= w;
        }
        return Ok(sum);
    }
    Ok(digamma(w + 1.0)? + EULER_GAMMA)
}

/// Hyperbolic cotangent with pole detection at z = ikπ.
///
/// Uses coth(x+iy) = 2(sinh²x + cos²y) / (sinh 2x + i sin 2y), which has no
/// cancellation near the zeros or poles, and saturates to ±1 for |Re z| > 20.
pub fn coth(z: ComplexValue) -> Result<ComplexValue> {
    let (x, y) = (z.re, z.im);
    if x > 20.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if x < -20.0 {
        return Ok(Complex64::new(-1.0, 0.0));
    }
    let turns = y / PI;
    if x == 0.0 && (turns - turns.round()).abs() <= 4.0 * f64::EPSILON * turns.abs().max(1.0) {
        return Err(Error::pole("coth", z));
    }
    let numerator = 2.0 * (x.sinh().powi(2) + y.cos().powi(2));
    let denominator = Complex64::new((2.0 * x).sinh(), (2.0 * y).sin());
    if denominator.norm_sqr() == 0.0 {
        return Err(Error::pole("coth", z));
    }
    Ok(numerator * denominator.conj() / denominator.norm_sqr())
}

/// cot(πz), with the real part reduced by periodicity before scaling by π.
pub fn cot_pi(z: ComplexValue) -> Result<ComplexValue> {
    let reduced = Complex64::new(z.re - z.re.round(), z.im);
    if reduced.re == 0.0 && reduced.im == 0.0 {
        return Err(Error::pole("cot", z));
    }
    // cot(w) = i·coth(iw)
    let w = reduced * PI;
    Ok(Complex64::i() * coth(Complex64::i() * w)?)
}

/// x·coth(x) − 1, with a Taylor branch for small |x|.
pub fn x_coth_x_minus_one(x: ComplexValue) -> Result<ComplexValue> {
    if x.norm() < 0.5 {
        // x coth x = Σ_k 2^{2k} B_{2k} x^{2k} / (2k)!
        let x2 = x * x;
        let mut power = x2;
        let mut factorial = 2.0;
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let two_k = 2 * (k + 1);
            sum += power * (2f64.powi(two_k as i32) * b / factorial);
            power *= x2;
            factorial *= (two_k + 1) as f64 * (two_k + 2) as f64;
        }
        return Ok(sum);
    }
    Ok(x * coth(x)? - 1.0)
}

/// Σ_{n>N} n^{−r} for real r > 1, by Euler–Maclaurin.
///
/// Returns `(value, bound)` where `bound` is the magnitude of the first
/// omitted correction; for the completely monotone summand this bounds the
/// remainder.
pub fn power_tail(r: f64, n: u64) -> (f64, f64) {
    assert!(r > 1.0, "power tail needs r > 1");
    assert!(n >= 1, "power tail needs N ≥ 1");
    let nf = n as f64;
    let mut value = nf.powf(1.0 - r) / (r - 1.0) - 0.5 * nf.powf(-r);
    // B_{2k}/(2k)! · r(r+1)…(r+2k−2) · N^{−r−2k+1}
    let mut rising = r;
    let mut factorial = 2.0;
    let mut power = nf.powf(-r - 1.0);
    let mut bound = f64::INFINITY;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b / factorial * rising * power;
        if k + 1 == BERNOULLI_EVEN.len() {
            bound = term.abs();
            break;
        }
        value += term;
        let two_k = 2.0 * (k as f64 + 1.0);
        rising *= (r + two_k - 1.0) * (r + two_k);
        factorial *= (two_k + 1.0) * (two_k + 2.0);
        power /= nf * nf;
    }
    (value, bound)
}

/// Riemann ζ(p) for integer p ≥ 2.
pub fn zeta_int(p: u32) -> Result<f64> {
    if p < 2 {
        return Err(Error::Domain(format!("zeta_int needs p ≥ 2, got {p}")));
    }
    let head_terms = 10u64.max(u64::from(p));
    let r = f64::from(p);
    let (tail, _) = power_tail(r, head_terms);
    let mut head = tail;
    for n in (1..=head_terms).rev() {
        head += (n as f64).powf(-r);
    }
    Ok(head)
}
