#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sgk_core::grassmann::{self, Monomial};
use sgk_core::scalar::q;
use sgk_core::SuperNumber;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic proptest configuration.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn sn(text: &str, n: usize) -> SuperNumber {
    grassmann::parse(text, n).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn int(n: usize, k: i64) -> SuperNumber {
    SuperNumber::from_int(n, k)
}

pub fn gen(n: usize, i: usize) -> SuperNumber {
    SuperNumber::generator(n, i).unwrap()
}

fn coefficient() -> impl Strategy<Value = (i64, i64, i64)> {
    (-5i64..=5, 1i64..=4, -2i64..=2)
}

/// Sparse elements of `Λ_n`, optionally restricted to one parity.
pub fn super_number(n: usize, parity: Option<bool>) -> impl Strategy<Value = SuperNumber> {
    let monos: Vec<u8> = Monomial::all(n)
        .filter(|m| parity.map_or(true, |odd| m.is_odd() == odd))
        .map(|m| m.bits())
        .collect();
    let pick = if monos.is_empty() { vec![0u8] } else { monos };
    let empty = parity == Some(true) && n == 0;
    prop::collection::vec((prop::sample::select(pick), coefficient()), 0..6).prop_map(move |terms| {
        if empty {
            return SuperNumber::zero(n);
        }
        let terms = terms.into_iter().map(|(bits, (re, den, im))| {
            let mut c = q(re, den);
            c.im = q(im, den).re;
            (Monomial::from_bits(bits), c)
        });
        SuperNumber::from_terms(n, terms).unwrap()
    })
}

pub fn any_n() -> impl Strategy<Value = usize> {
    0usize..=6
}
