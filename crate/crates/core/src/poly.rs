//! Real polynomials and radical solvers for degree ≤ 4 with all roots real.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Real polynomial, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().expect("non-empty")
    }

    /// Multiply by (s + a).
    pub fn mul_linear(&self, a: f64) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += a * c;
            out[i + 1] += c;
        }
        Polynomial::new(out)
    }

    /// Multiply by s.
    pub fn shift_up(&self) -> Polynomial {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(0.0);
        out.extend_from_slice(&self.coeffs);
        Polynomial::new(out)
    }

    pub fn scale(&self, k: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).copied().unwrap_or(0.0) + other.coeffs.get(i).copied().unwrap_or(0.0))
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::constant(0.0);
        }
        Polynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect())
    }

    /// Coefficients of p(c·u) divided by the leading one.
    fn scaled_monic(&self, c: f64) -> Vec<f64> {
        let mut power = 1.0;
        let mut out: Vec<f64> = self
            .coeffs
            .iter()
            .map(|&a| {
                let v = a * power;
                power *= c;
                v
            })
            .collect();
        let lead = *out.last().expect("non-empty");
        out.iter_mut().for_each(|v| *v /= lead);
        out
    }
}

/// Real roots, ascending, of a polynomial of degree 1–4 whose roots are all
/// real, by radicals (quadratic formula, trigonometric cubic, Ferrari).
///
/// The polynomial is rescaled so its roots have unit geometric mean. The
/// largest root is taken from the polynomial itself, the smallest from the
/// reversed polynomial, and any middle roots from Vieta's relations, so each
/// root keeps close to full relative accuracy even when they span decades.
pub fn real_roots_closed_form(poly: &Polynomial) -> Result<Vec<f64>> {
    let n = poly.degree();
    if !(1..=4).contains(&n) {
        return Err(Error::Domain(format!(
            "no radical solver for degree {n}; general equations of degree ≥ 5 are not solvable by radicals"
        )));
    }
    let a0 = poly.coeffs()[0];
    if a0 == 0.0 {
        return Err(Error::Domain("closed-form solver needs a nonzero constant term".into()));
    }
    let scale = (a0 / poly.leading()).abs().powf(1.0 / n as f64);
    let monic = poly.scaled_monic(scale);
    let mut roots = if n <= 2 {
        monic_real_roots(&monic)?
    } else {
        let mut reversed: Vec<f64> = monic.iter().rev().copied().collect();
        let lead = reversed[n];
        reversed.iter_mut().for_each(|v| *v /= lead);
        let largest = monic_real_roots(&monic)?
            .into_iter()
            .max_by(|a, b| a.abs().total_cmp(&b.abs()))
            .expect("degree ≥ 3");
        let smallest = 1.0
            / monic_real_roots(&reversed)?
                .into_iter()
                .max_by(|a, b| a.abs().total_cmp(&b.abs()))
                .expect("degree ≥ 3");
        let outer = smallest * largest;
        if n == 3 {
            // x1 x2 x3 = −c0
            vec![smallest, -monic[0] / outer, largest]
        } else {
            // x2 x3 = c0/(x1 x4); x1x4 + (x1 + x4)(x2 + x3) + x2x3 = c2
            let product = monic[0] / outer;
            let pair_sum = smallest + largest;
            if pair_sum.abs() <= 1e-8 * largest.abs() {
                monic_real_roots(&monic)?
            } else {
                let sum = (monic[2] - outer - product) / pair_sum;
                let mut middle = quadratic(1.0, -sum, product)?;
                middle.extend([smallest, largest]);
                middle
            }
        }
    };
    roots.iter_mut().for_each(|r| *r *= scale);
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Roots of x^n + c_{n−1}x^{n−1} + … + c_0 (coefficients ascending, last = 1).
fn monic_real_roots(c: &[f64]) -> Result<Vec<f64>> {
    match c.len() - 1 {
        1 => Ok(vec![-c[0]]),
        2 => quadratic(1.0, c[1], c[0]),
        3 => cubic_three_real(c[2], c[1], c[0]),
        4 => quartic_all_real(c[3], c[2], c[1], c[0]),
        n => unreachable!("degree {n}"),
    }
}

fn clamp_discriminant(disc: f64, scale: f64) -> Result<f64> {
    if disc >= 0.0 {
        Ok(disc)
    } else if disc >= -1e-10 * scale {
        Ok(0.0)
    } else {
        Err(Error::Domain("closed-form solver met complex roots".into()))
    }
}

/// Real roots of a x² + b x + c, cancellation-free.
fn quadratic(a: f64, b: f64, c: f64) -> Result<Vec<f64>> {
    let disc = clamp_discriminant(b * b - 4.0 * a * c, b * b + (4.0 * a * c).abs())?;
    let q = -0.5 * (b + disc.sqrt().copysign(b));
    if q == 0.0 {
        return Ok(vec![0.0, 0.0]);
    }
    Ok(vec![q / a, c / q])
}

/// x³ + a x² + b x + c with three real roots (trigonometric method).
fn cubic_three_real(a: f64, b: f64, c: f64) -> Result<Vec<f64>> {
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = a / 3.0;
    if p >= 0.0 {
        // only possible with a triple root
        if p <= 1e-12 * (a * a + b.abs()) {
            let t = -q.cbrt();
            return Ok(vec![t - shift; 3]);
        }
        return Err(Error::Domain("closed-form solver met complex roots".into()));
    }
    let m = 2.0 * (-p / 3.0).sqrt();
    let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    Ok((0..3)
        .map(|k| m * (theta - 2.0 * PI * k as f64 / 3.0).cos() - shift)
        .collect())
}

/// Largest real root of x³ + a x² + b x + c (Cardano or trigonometric).
fn cubic_largest_real(a: f64, b: f64, c: f64) -> f64 {
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = a / 3.0;
    let disc = q * q / 4.0 + p * p * p / 27.0;
    if disc > 0.0 {
        let u = (-q / 2.0 + disc.sqrt()).cbrt();
        let v = (-q / 2.0 - disc.sqrt()).cbrt();
        return u + v - shift;
    }
    if p == 0.0 {
        return -q.cbrt() - shift;
    }
    let m = 2.0 * (-p / 3.0).sqrt();
    let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
    m * (arg.acos() / 3.0).cos() - shift
}

/// x⁴ + a x³ + b x² + c x + d with four real roots (Ferrari).
fn quartic_all_real(a: f64, b: f64, c: f64, d: f64) -> Result<Vec<f64>> {
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    let shift = a / 4.0;
    let magnitude = a2 + b.abs() + c.abs().sqrt() + d.abs().sqrt();
    let mut ys = Vec::with_capacity(4);
    if q.abs() <= 1e-14 * magnitude.powf(1.5) {
        for y2 in quadratic(1.0, p, r)? {
            let y2 = clamp_discriminant(y2, magnitude)?;
            ys.push(y2.sqrt());
            ys.push(-y2.sqrt());
        }
    } else {
        // resolvent: m³ − (p/2) m² − r m + (p r/2 − q²/8) = 0, root with 2m > p
        let m = cubic_largest_real(-p / 2.0, -r, p * r / 2.0 - q * q / 8.0);
        let s2 = 2.0 * m - p;
        if s2 <= 0.0 {
            return Err(Error::Domain("Ferrari resolvent has no admissible root".into()));
        }
        let s = s2.sqrt();
        ys.extend(quadratic(1.0, -s, m + q / (2.0 * s))?);
        ys.extend(quadratic(1.0, s, m - q / (2.0 * s))?);
    }
    Ok(ys.into_iter().map(|y| y - shift).collect())
}
