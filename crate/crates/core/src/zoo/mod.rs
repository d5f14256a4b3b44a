//! Named example automata with their expected verdicts.
//!
//! The map `H(x)_i = x_0` is a νCA without a bounded radius and cannot be
//! described by a [`NuCaSpec`]; it is not part of the catalog.

pub mod checks;

use serde::Serialize;

use crate::budget::Budget;
use crate::config::EpConfig;
use crate::debruijn::{decide_injective, decide_surjective};
use crate::dynamics::{
    classify_ca, classify_nuca, refute_blocking, CaClassification, ClassifyBounds, NuCaClassification,
};
use crate::error::Result;
use crate::rules::{LocalRule, NuCaClass, NuCaSpec};
use crate::word::{Alphabet, Symbol, Word};

/// Coarse outcome of the dynamics classifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DynamicsKind {
    Equicontinuous,
    AlmostEquicontinuous { word: Word },
    NoBlockingWord,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub surjective: bool,
    pub injective: bool,
    pub class: NuCaClass,
    pub dynamics: DynamicsKind,
}

#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub spec: NuCaSpec,
    pub expected: Expected,
}

fn binary() -> Alphabet {
    Alphabet::new(2).expect("binary alphabet")
}

fn ternary() -> Alphabet {
    Alphabet::new(3).expect("ternary alphabet")
}

/// The three-state rule: a 0 next to a 1 becomes 1, a 1 next to a 2
/// becomes 2, a 2 next to a 1 becomes 0; otherwise the cell keeps its state.
pub fn f9_rule() -> LocalRule {
    LocalRule::from_fn(ternary(), 1, |nb| {
        let near = |s: Symbol| nb[0] == s || nb[2] == s;
        match nb[1] {
            0 if near(1) => 1,
            1 if near(2) => 2,
            2 if near(1) => 0,
            c => c,
        }
    })
    .expect("small table")
}

/// `f(x, y, z) = 2` if any argument is 2, else `z`.
pub fn spread_two_rule() -> LocalRule {
    LocalRule::from_fn(ternary(), 1, |nb| if nb.contains(&2) { 2 } else { nb[2] }).expect("small table")
}

pub fn xor_rule() -> LocalRule {
    LocalRule::from_fn(binary(), 1, |nb| nb[0] ^ nb[2]).expect("small table")
}

fn frozen(default: LocalRule, value: Symbol) -> NuCaSpec {
    let q = default.alphabet();
    NuCaSpec::default_perturbed(default, vec![LocalRule::constant(q, 1, value)]).expect("odd window")
}

pub fn constant_one_at_origin() -> NuCaSpec {
    frozen(LocalRule::constant(binary(), 1, 0), 1)
}

pub fn shift_toward_center() -> NuCaSpec {
    let q = binary();
    NuCaSpec::new(
        0,
        vec![LocalRule::identity(q, 1)],
        vec![LocalRule::copy(q, 1, 1)],
        vec![LocalRule::copy(q, 1, -1)],
    )
    .expect("valid spec")
}

/// `H(x)_i = 1` on even cells and 0 on odd cells.
pub fn parity_constants() -> NuCaSpec {
    let q = binary();
    let (one, zero) = (LocalRule::constant(q, 1, 1), LocalRule::constant(q, 1, 0));
    NuCaSpec::new(0, vec![one.clone()], vec![one.clone(), zero.clone()], vec![one, zero]).expect("valid spec")
}

/// `H(x)_0 = x_0`, `H(x)_i = x_{i-1}` elsewhere.
pub fn shift_identity_at_origin() -> NuCaSpec {
    let q = binary();
    NuCaSpec::default_perturbed(LocalRule::copy(q, 1, -1), vec![LocalRule::identity(q, 1)]).expect("odd window")
}

/// `H(x)_0 = 0`, `H(x)_i = x_{i-1} xor x_{i+1}` elsewhere.
pub fn xor_frozen_zero() -> NuCaSpec {
    frozen(xor_rule(), 0)
}

pub fn f9() -> NuCaSpec {
    NuCaSpec::uniform(f9_rule())
}

/// [`f9_rule`] everywhere except a cell frozen to 1 at the origin.
pub fn frozen_one_f9() -> NuCaSpec {
    frozen(f9_rule(), 1)
}

pub fn spread_two() -> NuCaSpec {
    NuCaSpec::uniform(spread_two_rule())
}

/// [`spread_two_rule`] everywhere except a cell frozen to 2 at the origin.
pub fn frozen_two_spread() -> NuCaSpec {
    frozen(spread_two_rule(), 2)
}

pub fn catalog() -> Vec<ZooEntry> {
    use DynamicsKind::*;
    use NuCaClass::*;
    let q2 = binary();
    let e = |surjective, injective, class, dynamics| Expected {
        surjective,
        injective,
        class,
        dynamics,
    };
    let word = |s: &str| AlmostEquicontinuous {
        word: s.parse().expect("word literal"),
    };
    vec![
        ZooEntry {
            name: "constant-one-at-origin",
            summary: "constant 0 everywhere except constant 1 at the origin",
            spec: constant_one_at_origin(),
            expected: e(false, false, DefaultPerturbed, Equicontinuous),
        },
        ZooEntry {
            name: "shift-toward-center",
            summary: "left cells copy their right neighbor, right cells their left neighbor, origin fixed",
            spec: shift_toward_center(),
            expected: e(false, true, PeriodicallyPerturbed, Unknown),
        },
        ZooEntry {
            name: "parity-constants",
            summary: "1 on even cells, 0 on odd cells",
            spec: parity_constants(),
            expected: e(false, false, PeriodicallyPerturbed, Unknown),
        },
        ZooEntry {
            name: "shift-identity-at-origin",
            summary: "right shift with the identity at the origin",
            spec: shift_identity_at_origin(),
            expected: e(false, false, DefaultPerturbed, Unknown),
        },
        ZooEntry {
            name: "xor-frozen-zero",
            summary: "xor of both neighbors with 0 frozen at the origin",
            spec: xor_frozen_zero(),
            expected: e(false, false, DefaultPerturbed, Unknown),
        },
        ZooEntry {
            name: "f9",
            summary: "three-state rule with the plain 1-blocking word 202",
            spec: f9(),
            expected: e(false, false, UniformCA, NoBlockingWord),
        },
        ZooEntry {
            name: "frozen-one-f9",
            summary: "the f9 rule with 1 frozen at the origin",
            spec: frozen_one_f9(),
            expected: e(false, false, DefaultPerturbed, Unknown),
        },
        ZooEntry {
            name: "spread-two",
            summary: "2 spreads to both neighbors, other cells shift left",
            spec: spread_two(),
            expected: e(false, false, UniformCA, word("2")),
        },
        ZooEntry {
            name: "frozen-two-spread",
            summary: "the spread-two rule with 2 frozen at the origin",
            spec: frozen_two_spread(),
            expected: e(false, false, DefaultPerturbed, word("2")),
        },
        ZooEntry {
            name: "identity",
            summary: "identity CA",
            spec: NuCaSpec::uniform(LocalRule::identity(q2, 1)),
            expected: e(true, true, UniformCA, Equicontinuous),
        },
        ZooEntry {
            name: "shift",
            summary: "left shift CA, f(a, b, c) = c",
            spec: NuCaSpec::uniform(LocalRule::copy(q2, 1, 1)),
            expected: e(true, true, UniformCA, NoBlockingWord),
        },
        ZooEntry {
            name: "constant-zero",
            summary: "constant 0 CA",
            spec: NuCaSpec::uniform(LocalRule::constant(q2, 1, 0)),
            expected: e(false, false, UniformCA, Equicontinuous),
        },
    ]
}

pub fn entry(name: &str) -> Option<ZooEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// Classification of a spec: [`classify_ca`] for CA, [`classify_nuca`] otherwise.
pub fn dynamics_of(spec: &NuCaSpec, bounds: &ClassifyBounds, budget: &Budget) -> Result<DynamicsKind> {
    Ok(if spec.class_of() == NuCaClass::UniformCA {
        match classify_ca(&spec.window()[0], bounds, budget)? {
            CaClassification::Equicontinuous { .. } => DynamicsKind::Equicontinuous,
            CaClassification::AlmostEquicontinuousCert { certificate } => {
                DynamicsKind::AlmostEquicontinuous { word: certificate.word }
            }
            CaClassification::NoBlockingWordUpTo { .. } => DynamicsKind::NoBlockingWord,
        }
    } else {
        match classify_nuca(spec, bounds, budget)? {
            NuCaClassification::Equicontinuous { .. } => DynamicsKind::Equicontinuous,
            NuCaClassification::AlmostEquicontinuous { certificate } => {
                DynamicsKind::AlmostEquicontinuous { word: certificate.word }
            }
            NuCaClassification::Unknown { .. } => DynamicsKind::Unknown,
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Runs the entry's verdict suite plus the checks tied to it.
pub fn verify(entry: &ZooEntry, budget: &Budget) -> Result<Vec<Check>> {
    let ex = &entry.expected;
    let spec = &entry.spec;
    let mut out = Vec::new();

    let surj = decide_surjective(spec, budget)?;
    out.push(check(
        "surjective",
        surj.is_surjective() == ex.surjective,
        surj.to_string(),
    ));
    let inj = decide_injective(spec, budget)?;
    out.push(check("injective", inj.is_injective() == ex.injective, inj.to_string()));
    let class = spec.class_of();
    out.push(check("class", class == ex.class, format!("{class:?}")));
    let dynamics = dynamics_of(spec, &ClassifyBounds::default(), budget)?;
    out.push(check("dynamics", dynamics == ex.dynamics, format!("{dynamics:?}")));

    match entry.name {
        "f9" => {
            let refuted = refute_blocking(&f9_rule(), &"202".parse()?, 1, 30, 6, budget)?;
            out.push(check(
                "202 not refuted as 1-blocking",
                refuted.is_none(),
                format!("{refuted:?}"),
            ));
        }
        "shift-identity-at-origin" => {
            let ok = binary().words(7).all(|w| {
                ["0", "1"].iter().all(|bg| {
                    let tail: Word = bg.parse().expect("literal");
                    let y = EpConfig::new(tail.clone(), w.clone(), -3, tail).expect("nonempty tails");
                    checks::origin_prefix_identity(&y, 12)
                })
            });
            out.push(check(
                "H^i(y)[0,i] = y_0^(i+1)",
                ok,
                "y constant outside [-3, 3], i <= 12",
            ));
        }
        "xor-frozen-zero" => {
            let ok = checks::injective_on_finite(spec, 5);
            out.push(check("injective on 0-finite configurations", ok, "support in [-5, 5]"));
        }
        "frozen-two-spread" => {
            let ok = ternary().words(5).all(|w| {
                (0..3).all(|bg| {
                    let x = EpConfig::finite(bg, w.clone(), -2);
                    (0..=6).all(|n| checks::frozen_two_window(&x, n, 20))
                })
            });
            out.push(check("H^k(x)[-n,n] = 2^(2n+1)", ok, "n <= 6, n < k <= n + 20"));
        }
        "frozen-one-f9" => {
            let ok = checks::zero_tail_settles(&Word::new(vec![1]), 100, 20).is_some()
                && checks::two_tail_returns(&Word::empty(), 0, 1000, 5).len() == 5;
            out.push(check(
                "cell 1 separates the 0- and 2-extensions",
                ok,
                "u = 1 and u = empty",
            ));
        }
        _ => {}
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_verifies() {
        let budget = Budget::default();
        let mut failures = Vec::new();
        for e in catalog() {
            for c in verify(&e, &budget).unwrap() {
                if !c.passed {
                    failures.push(format!("{}: {} ({})", e.name, c.name, c.detail));
                }
            }
        }
        assert!(failures.is_empty(), "{failures:#?}");
    }

    #[test]
    fn names_are_unique() {
        let names: std::collections::HashSet<_> = catalog().iter().map(|e| e.name).collect();
        assert_eq!(names.len(), catalog().len());
        assert!(entry("f9").is_some());
    }
}
