mod common;

use nuca::debruijn::decide_surjective;
use nuca::engine::{iterate, orbit_analyze, OrbitReport};
use nuca::random::{random_config, ConfigShape};
use nuca::zoo::{self, checks};
use nuca::{Alphabet, Budget, EpConfig};

fn q(n: usize) -> Alphabet {
    Alphabet::new(n).unwrap()
}

#[test]
fn rewriting_terminates_on_short_words() {
    for len in 0..=4 {
        for u in q(3).words(len) {
            for flag in [false, true] {
                let st = checks::RewriteState::new(u.clone(), flag);
                assert!(checks::rewrite_run(&st, 10_000).is_some(), "({u}, {flag})");
            }
        }
    }
}

#[test]
fn propagation_of_forbidden_factors() {
    let mut rng = common::rng(31);
    let shape = ConfigShape {
        alphabet: q(3),
        max_period: 3,
        max_center: 10,
        max_offset: 6,
    };
    for _ in 0..200 {
        let x = random_config(&mut rng, shape);
        for i in [0, 1, 4] {
            assert!(checks::propagation_check(&x, i, 20), "{x} from {i}");
        }
    }
}

#[test]
fn cylinder_extensions_separate_at_cell_one() {
    // 0-extensions settle to 1 at cell 1 while 2-extensions keep returning to 2
    for len in 0..=4 {
        for u in q(3).words(len) {
            let n0 = checks::zero_tail_settles(&u, 10_000, 100).expect("cell 1 settles");
            assert!(checks::first_two_tail_return(&u, n0, 10_000).is_some(), "{u}");
        }
    }
}

#[test]
fn frozen_two_is_equicontinuous_on_windows() {
    let spec = zoo::frozen_two_spread();
    let mut rng = common::rng(32);
    let shape = ConfigShape {
        alphabet: q(3),
        max_period: 3,
        max_center: 14,
        max_offset: 8,
    };
    for n in 0..=6i64 {
        for _ in 0..20 {
            let x = random_config(&mut rng, shape);
            let y0 = random_config(&mut rng, shape);
            // y agrees with x on [-2n, 2n] and is arbitrary elsewhere
            let center = y0
                .window(-2 * n - 10, -2 * n - 1)
                .concat(&x.window(-2 * n, 2 * n))
                .concat(&y0.window(2 * n + 1, 2 * n + 10));
            let y = EpConfig::new(y0.left().clone(), center, -2 * n - 10, y0.right().clone()).unwrap();
            for k in 0..=n as usize {
                assert_eq!(
                    iterate(&spec, &x, k).unwrap().window(-n, n),
                    iterate(&spec, &y, k).unwrap().window(-n, n)
                );
            }
            assert!(checks::frozen_two_window(&x, n as usize, 20));
        }
    }
}

#[test]
fn shift_with_identity_confines_periodic_points() {
    let spec = zoo::shift_identity_at_origin();
    let mut rng = common::rng(33);
    let shape = ConfigShape {
        alphabet: q(2),
        max_period: 3,
        max_center: 13,
        max_offset: 0,
    };
    let mut confined = 0;
    for _ in 0..200 {
        let y = random_config(&mut rng, shape);
        assert!(checks::origin_prefix_identity(&y, 12), "{y}");
        if (0..=12).any(|m| y.sample(m) != y.sample(0)) {
            confined += 1;
            // the orbit overwrites [0, 12] with y_0 and never restores it
            match orbit_analyze(&spec, &y, 60, 400).unwrap() {
                OrbitReport::UltimatelyPeriodic { preperiod, .. } => assert!(preperiod > 0, "{y}"),
                OrbitReport::BudgetExceeded { .. } => {}
            }
        }
    }
    assert!(confined > 100);
}

#[test]
fn xor_frozen_zero_injective_on_finite_but_not_surjective() {
    let spec = zoo::xor_frozen_zero();
    assert!(checks::injective_on_finite(&spec, 5));
    assert!(!decide_surjective(&spec, &Budget::default()).unwrap().is_surjective());
}

#[test]
fn xor_frozen_zero_separates_distinct_configurations() {
    let spec = zoo::xor_frozen_zero();
    let mut rng = common::rng(34);
    let shape = ConfigShape {
        alphabet: q(2),
        max_period: 2,
        max_center: 12,
        max_offset: 8,
    };
    let mut checked = 0;
    for _ in 0..300 {
        let (x, y) = (random_config(&mut rng, shape), random_config(&mut rng, shape));
        let Some(d) = (1..=40i64).find(|&i| x.sample(i) != y.sample(i) || x.sample(-i) != y.sample(-i)) else {
            continue;
        };
        // a difference at the origin alone is erased by the frozen cell
        checked += 1;
        let n = checks::separation_time(&spec, &x, &y, 2 * d as usize).expect("images separate near the origin");
        assert!(n <= 2 * d as usize);
    }
    assert!(checked > 200);
}
