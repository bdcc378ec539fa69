mod common;

use common::frozen;
use gmb_love::love::{LoveProblem, RelaxationSolution};
use gmb_love::postwidder::PwConfig;
use gmb_love::powerlaw::{m_closed, ElementCount, PowerLawGmb};
use gmb_love::rheology::{GmbModel, ModelSampler};
use gmb_love::specfun::{digamma, zeta_int};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn gmb_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=8 {
        let model = ModelSampler::default().sample(&mut rng, n);
        let json = serde_json::to_string(&model).unwrap();
        let back: GmbModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, model);
    }
    let parsed: GmbModel =
        serde_json::from_str(r#"{"elements":[{"mu_pa":1e10,"eta_pas":1e21}]}"#).unwrap();
    assert_eq!(parsed.elements()[0].tau(), 1e11);
}

#[test]
fn invalid_models_are_rejected() {
    for bad in [
        r#"{"elements":[]}"#,
        r#"{"elements":[{"mu_pa":-1.0,"eta_pas":1e21}]}"#,
        r#"{"elements":[{"mu_pa":1e10}]}"#,
        r#"{"sphere":{"rho":5500,"radius":6.4e6,"mu_e":0},"degree":2,"fluid_limit":1,"gmb":{"elements":[{"mu_pa":1,"eta_pas":1}]}}"#,
    ] {
        assert!(
            serde_json::from_str::<GmbModel>(bad).is_err() && serde_json::from_str::<LoveProblem>(bad).is_err(),
            "{bad}"
        );
    }
}

#[test]
fn love_problem_json_round_trip() {
    let json = r#"{"sphere":{"rho":5517.0,"radius":6.371e6,"mu_e":2e11},"degree":2,
        "fluid_limit":-1.0,"gmb":{"elements":[{"mu_pa":7e10,"eta_pas":1e21},{"mu_pa":3e10,"eta_pas":1e19}]}}"#;
    let problem: LoveProblem = serde_json::from_str(json).unwrap();
    assert_eq!(problem.sphere.newton_g, 6.67e-11);
    assert_eq!(problem.degree(), 2);
    let back: LoveProblem = serde_json::from_str(&serde_json::to_string(&problem).unwrap()).unwrap();
    assert_eq!(back, problem);

    let sol = problem.relaxation_spectrum().unwrap();
    let back: RelaxationSolution = serde_json::from_str(&serde_json::to_string(&sol).unwrap()).unwrap();
    assert_eq!(back, sol);
}

#[test]
fn power_law_and_config_json() {
    let law: PowerLawGmb = serde_json::from_str(
        r#"{"p":0,"q":2,"mu_star_pa":1e10,"eta_star_pas":1e21,"n_elements":"infinite"}"#,
    )
    .unwrap();
    assert_eq!(law.n_elements, ElementCount::Infinite);
    let back: PowerLawGmb = serde_json::from_str(&serde_json::to_string(&law).unwrap()).unwrap();
    assert_eq!(back, law);
    assert!(serde_json::from_str::<PowerLawGmb>(
        r#"{"p":1,"q":1,"mu_star_pa":1e10,"eta_star_pas":1e21,"n_elements":"infinite"}"#
    )
    .is_err());

    let config = PwConfig::default();
    let back: PwConfig = serde_json::from_str(&serde_json::to_string(&config).unwrap()).unwrap();
    assert_eq!(back, config);
}

#[test]
fn closed_forms_match_direct_summation() {
    for &(p, q, zr, zi, mr, mi) in frozen::POWERLAW {
        let v = m_closed(Complex64::new(zr, zi), p, q).unwrap();
        let expected = Complex64::new(mr, mi);
        assert!((v - expected).norm() <= 1e-12 * expected.norm().max(1.0), "({p},{q}) z={zr}+{zi}i: {v} vs {expected}");
    }
}

#[test]
fn special_functions_match_reference_values() {
    for &(zr, zi, re, im) in frozen::DIGAMMA {
        let v = digamma(Complex64::new(zr, zi)).unwrap();
        let expected = Complex64::new(re, im);
        assert!((v - expected).norm() <= 1e-12 * expected.norm(), "ψ({zr}+{zi}i) = {v}, expected {expected}");
    }
    for &(p, expected) in frozen::ZETA {
        let v = zeta_int(p).unwrap();
        assert!(((v - expected) / expected).abs() <= 1e-14, "ζ({p}) = {v}, expected {expected}");
    }
}
