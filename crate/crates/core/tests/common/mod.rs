//! Oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

pub mod frozen;

use std::f64::consts::PI;

use gmb_love::love::{lambda_squared, LoveProblem, SphereModel, DEFAULT_NEWTON_G};
use gmb_love::rheology::{GmbModel, ModelSampler};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub fn rel_err(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

pub fn log_space(start: f64, stop: f64, n: usize) -> Vec<f64> {
    let (a, b) = (start.ln(), stop.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// Earth-like sphere: a = 6371 km, g = 9.81 m/s², μ_e = 200 GPa.
pub fn earth_sphere() -> SphereModel {
    SphereModel::from_surface_gravity(9.81, 6.371e6, 200e9, DEFAULT_NEWTON_G).unwrap()
}

/// Unit sphere with μ_e/(ρga) = 0.6.
pub fn unit_sphere() -> SphereModel {
    let rho = (3.0 / (4.0 * PI * DEFAULT_NEWTON_G * 0.6)).sqrt();
    SphereModel::new(rho, 1.0, 1.0).unwrap()
}

/// Single element with λ²μ′ = 1 and τ = 1 at degree 2: s₁ = −1/2,
/// L_e = 1/2, L₁ = 1/4.
pub fn canonical_problem() -> LoveProblem {
    let sphere = unit_sphere();
    let mu = 1.0 / lambda_squared(&sphere, 2);
    let gmb = GmbModel::from_pairs(&[(mu, mu)]).unwrap();
    LoveProblem::new(sphere, 2, 1.0, gmb).unwrap()
}

pub fn random_problem<R: Rng>(rng: &mut R, n: usize, degree: u32) -> LoveProblem {
    let gmb = ModelSampler::default().sample(rng, n);
    LoveProblem::new(earth_sphere(), degree, 1.0, gmb).unwrap()
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// B_{n,0} … B_{n,n} by summing Π x_{|block|} over every set partition of
/// {1, …, n}.
pub fn bell_row_by_enumeration(n: usize, x: &[BigRational]) -> Vec<BigRational> {
    fn walk(i: usize, n: usize, blocks: &mut Vec<usize>, x: &[BigRational], row: &mut [BigRational]) {
        if i == n {
            let product = blocks
                .iter()
                .fold(rational(1, 1), |acc, &size| acc * x[size - 1].clone());
            row[blocks.len()] += product;
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] += 1;
            walk(i + 1, n, blocks, x, row);
            blocks[b] -= 1;
        }
        blocks.push(1);
        walk(i + 1, n, blocks, x, row);
        blocks.pop();
    }
    let mut row = vec![rational(0, 1); n + 1];
    if n == 0 {
        row[0] = rational(1, 1);
        return row;
    }
    walk(0, n, &mut Vec::new(), x, &mut row);
    row
}
