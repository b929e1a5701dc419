use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgk_cli::value::compare;
use sgk_cli::{eval_str, Value};
use sgk_core::curves::TargetPoint;
use sgk_core::poly::Poly;
use sgk_core::superspace::Chart;
use sgk_core::{sample, ChartPoint, Section};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn corpus() -> impl Iterator<Item = &'static str> {
    include_str!("data/literals.txt")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
}

#[test]
fn corpus_prints_back_verbatim() {
    for line in corpus() {
        let v = eval_str(line, 3).unwrap_or_else(|e| panic!("{line}: {e}"));
        assert_eq!(v.to_string(), line);
    }
}

#[test]
fn corpus_depends_on_generator_count() {
    // g3 is out of range with two generators
    assert!(eval_str("chart2(-1/3; g3)", 2).is_err());
    assert!(eval_str("[0 : 1 : 0]", 0).is_ok());
}

fn random_value(r: &mut ChaCha8Rng, n: usize, depth: u32) -> Value {
    match r.gen_range(0..if depth == 0 { 11 } else { 12 }) {
        0 => Value::Num(sample::super_number(r, n, None, 5)),
        1 => Value::Bool(r.gen()),
        2 => Value::Point(sample::point(r, n)),
        3 => {
            let chart = if r.gen() { Chart::One } else { Chart::Two };
            Value::ChartPt(ChartPoint::new(chart, sample::even(r, n), sample::odd(r, n)).unwrap())
        }
        4 => Value::Matrix(sample::sc_matrix(r, n)),
        5 => Value::Sl2(sample::sl2(r, n)),
        6 => {
            let k = r.gen_range(-1..=3);
            let coeffs = (0..=k).map(|_| sample::super_number(r, n, None, 3)).collect();
            Value::Section(Section::new(k, Poly::from_coeffs(n, coeffs)).unwrap())
        }
        7 => {
            let d = r.gen_range(0..=3);
            Value::Curve(sample::curve(r, n, d))
        }
        8 => {
            let (k, d) = (r.gen_range(0..=4), r.gen_range(0..=2));
            Value::Config(sample::config(r, n, k, d))
        }
        9 => Value::Tree(sample::tree_config(r, n, 3)),
        10 => Value::Target(TargetPoint {
            x: sample::even(r, n),
            y: sample::even_invertible(r, n),
        }),
        _ => {
            let len = r.gen_range(0..=3);
            Value::List((0..len).map(|_| random_value(r, n, depth - 1)).collect())
        }
    }
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn printed_values_evaluate_back(seed in any::<u64>(), n in 0usize..=4) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let v = random_value(&mut r, n, 2);
        let text = v.to_string();
        let back = eval_str(&text, n).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        let c = compare(&v, &back);
        prop_assert!(c.equal, "{} came back unequal: {:?}", text, c.note);
        // Maps print through their stored representative, so the first pass
        // may rescale it; from then on the text is fixed.
        let canonical = back.to_string();
        let again = eval_str(&canonical, n).map_err(|e| TestCaseError::fail(format!("{canonical}: {e}")))?;
        prop_assert_eq!(again.to_string(), canonical);
        if !matches!(v, Value::Curve(_) | Value::Config(_) | Value::Tree(_) | Value::List(_)) {
            prop_assert_eq!(&back.to_string(), &text);
        }
    }
}
