mod common;

use nuca::engine::{iterate, step};
use nuca::random::{random_config, random_rule, random_spec, ConfigShape, SpecShape};
use nuca::spec_file::{parse_spec, spec_to_json};
use nuca::{Alphabet, Budget, Distance, EpConfig, NuCaSpec, Word};
use proptest::prelude::*;

fn q(n: usize) -> Alphabet {
    Alphabet::new(n).unwrap()
}

fn config(seed: u64, alphabet: usize) -> EpConfig {
    random_config(
        &mut common::rng(seed),
        ConfigShape {
            alphabet: q(alphabet),
            max_period: 4,
            max_center: 12,
            max_offset: 15,
        },
    )
}

fn spec(seed: u64, alphabet: usize, radius: usize) -> NuCaSpec {
    random_spec(
        &mut common::rng(seed),
        SpecShape {
            alphabet: q(alphabet),
            radius,
            max_k: 3,
            max_period: 3,
        },
    )
}

fn first_difference(x: &EpConfig, y: &EpConfig, bound: i64) -> Option<i64> {
    (0..=bound).find(|&i| x.sample(i) != y.sample(i) || x.sample(-i) != y.sample(-i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normal_form_is_canonical(seed in any::<u64>(), a in 2usize..5) {
        let x = config(seed, a);
        let n = x.normalize();
        prop_assert_eq!(&n.normalize(), &n);
        for i in -60..=60 {
            prop_assert_eq!(n.sample(i), x.sample(i));
        }
        // a different presentation of the same configuration
        let (lo, hi) = (x.offset() - 3, x.end() + 2);
        let (pl, pr) = (2 * x.left().len() as i64, 2 * x.right().len() as i64);
        let wide = EpConfig::new(x.window(lo - pl, lo - 1), x.window(lo, hi), lo, x.window(hi + 1, hi + pr)).unwrap();
        prop_assert_eq!(wide.normalize(), n);
    }

    #[test]
    fn text_form_round_trips(seed in any::<u64>(), a in 2usize..5) {
        let x = config(seed, a).normalize();
        let back: EpConfig = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x.clone());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<EpConfig>(&json).unwrap(), x);
    }

    #[test]
    fn distance_is_an_ultrametric(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (x, y, z) = (config(s1, 2), config(s2, 2), config(s3, 2));
        let dxy = x.distance_exponent(&y);
        prop_assert_eq!(dxy, y.distance_exponent(&x));
        prop_assert_eq!(x.distance_exponent(&x), Distance::Equal);
        prop_assert_eq!(dxy == Distance::Equal, x.equals(&y));
        let (dyz, dxz) = (y.distance_exponent(&z), x.distance_exponent(&z));
        prop_assert!(dxz.value() <= dxy.value().max(dyz.value()));
        let expected = first_difference(&x, &y, 200).map_or(Distance::Equal, |n| Distance::Exponent(n as u64));
        prop_assert_eq!(dxy, expected);
    }

    #[test]
    fn translation_moves_cells(seed in any::<u64>(), s in -20i64..20, t in -20i64..20) {
        let x = config(seed, 3);
        let y = x.translate(s);
        for i in -40..=40 {
            prop_assert_eq!(y.sample(i), x.sample(i - s));
        }
        prop_assert!(y.translate(t).equals(&x.translate(s + t)));
    }

    #[test]
    fn step_is_pointwise(seed in any::<u64>(), a in 2usize..4, r in 1usize..3) {
        let h = spec(seed, a, r);
        let x = config(seed.wrapping_add(1), a);
        let y = step(&h, &x).unwrap();
        let r = r as i64;
        for i in -50..=50 {
            prop_assert_eq!(y.sample(i), h.eval_at(i, &x.window(i - r, i + r)));
        }
    }

    #[test]
    fn uniform_step_commutes_with_translation(seed in any::<u64>(), s in -10i64..10) {
        let mut rng = common::rng(seed);
        let h = NuCaSpec::uniform(random_rule(&mut rng, q(3), 1));
        let x = config(seed.wrapping_add(7), 3);
        prop_assert!(step(&h, &x.translate(s)).unwrap().equals(&step(&h, &x).unwrap().translate(s)));
    }

    #[test]
    fn composed_rule_matches_iteration(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = common::rng(seed);
        let f = random_rule(&mut rng, q(2), 1);
        let fn_ = f.self_compose(n, &Budget::default()).unwrap();
        prop_assert_eq!(fn_.radius(), n);
        let x = config(seed.wrapping_add(3), 2);
        let lhs = iterate(&NuCaSpec::uniform(f), &x, n).unwrap();
        prop_assert!(lhs.equals(&step(&NuCaSpec::uniform(fn_), &x).unwrap()));
    }

    #[test]
    fn padding_keeps_the_map(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let f = random_rule(&mut rng, q(3), 1);
        let g = f.padded(2).unwrap();
        let x = config(seed.wrapping_add(5), 3);
        prop_assert!(step(&NuCaSpec::uniform(f), &x).unwrap().equals(&step(&NuCaSpec::uniform(g), &x).unwrap()));
    }

    #[test]
    fn spec_files_round_trip(seed in any::<u64>(), a in 2usize..4, r in 1usize..3) {
        let h = spec(seed, a, r);
        prop_assert_eq!(parse_spec(&spec_to_json(&h)).unwrap(), h);
    }

    #[test]
    fn words_over_large_alphabets_round_trip(symbols in proptest::collection::vec(0u16..300, 0..8)) {
        let w = Word::new(symbols);
        let back: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }
}

#[test]
fn composition_exhaustive_on_short_words() {
    // f^2 on every word of length 5 equals f applied twice, for every elementary rule
    let budget = Budget::default();
    for n in 0..=255u8 {
        let f = nuca::LocalRule::elementary(n);
        let f2 = f.self_compose(2, &budget).unwrap();
        for w in q(2).words(5) {
            assert_eq!(f2.extend_word(&w), f.extend_word(&f.extend_word(&w)), "rule {n} on {w}");
        }
    }
}
