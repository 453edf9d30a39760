#![allow(dead_code)]

use flgame_core::model::check_interior_condition;
use flgame_core::{EffectivenessSpec, InformationEndowment, MarketPrimitives, ScenarioConfig};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_family<R: Rng>(rng: &mut R) -> EffectivenessSpec {
    match rng.gen_range(0..3) {
        0 => EffectivenessSpec::SquareRoot,
        1 => EffectivenessSpec::LogPlusOne,
        _ => EffectivenessSpec::SaturatingExp {
            a: rng.gen_range(0.0..5.0),
            b: rng.gen_range(1.0..20.0),
            c: rng.gen_range(20.0..300.0),
        },
    }
}

/// A random instance that may or may not be an interior duopoly.
pub fn random_scenario<R: Rng>(rng: &mut R, gamma_max: f64) -> ScenarioConfig {
    loop {
        let v2 = rng.gen_range(5.0..30.0);
        let v1 = v2 * rng.gen_range(1.0..2.0);
        let gamma = rng.gen_range(0.0..gamma_max);
        let d1 = rng.gen_range(1.0..500.0);
        let d2 = rng.gen_range(1.0..500.0);
        let market = MarketPrimitives::new(v1, v2, gamma).unwrap();
        let endowment = InformationEndowment::new(d1, d2).unwrap();
        if let Ok(s) = ScenarioConfig::new(market, endowment, random_family(rng)) {
            return s;
        }
    }
}

/// `n` random scenarios that pass the interior-duopoly check.
pub fn valid_scenarios(seed: u64, n: usize, gamma_max: f64) -> Vec<ScenarioConfig> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let s = random_scenario(&mut rng, gamma_max);
        if check_interior_condition(&s).passes() {
            out.push(s);
        }
    }
    out
}

pub fn baseline(f: EffectivenessSpec, gamma: f64, d1: f64, d2: f64) -> ScenarioConfig {
    ScenarioConfig::new(
        MarketPrimitives::new(20.0, 15.0, gamma).unwrap(),
        InformationEndowment::new(d1, d2).unwrap(),
        f,
    )
    .unwrap()
}
