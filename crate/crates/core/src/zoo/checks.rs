//! Bounded executable checks of facts about the zoo automata.
//!
//! One-sided configurations `u a^∞` are run on the frozen-1 automaton with
//! cell 0 holding the frozen 1 and `u` starting at cell 1. Cells to the
//! right of the frozen cell never read the left half, so only cells `>= 0`
//! are simulated.

use std::collections::HashSet;

use serde::Serialize;

use super::{f9_rule, frozen_one_f9, frozen_two_spread};
use crate::config::EpConfig;
use crate::engine::{iterate, step};
use crate::rules::{LocalRule, NuCaSpec};
use crate::word::{Symbol, Word};

/// State `(u, x)` of the rewriting system on `A* x {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RewriteState {
    pub word: Word,
    pub flag: bool,
}

impl RewriteState {
    pub fn new(word: Word, flag: bool) -> Self {
        RewriteState { word, flag }
    }

    pub fn is_final(&self) -> bool {
        self.word.is_empty() && self.flag
    }
}

fn f_with(rule: &LocalRule, prefix: &[Symbol], u: &[Symbol], suffix: &[Symbol]) -> Word {
    let w: Vec<Symbol> = prefix.iter().chain(u).chain(suffix).copied().collect();
    rule.extend_word(&w)
}

/// One application of the unique matching rewrite rule.
pub fn rewrite_step(state: &RewriteState) -> RewriteState {
    let f = f9_rule();
    let Some((&last, u)) = state.word.split_last() else {
        return RewriteState::new(Word::empty(), true);
    };
    let (word, flag) = match (last, state.flag) {
        (0, false) => (Word::from(u), false),
        (1, false) => (Word::from(u), true),
        (2, false) => (f_with(&f, &[1], u, &[2, 0]), false),
        (0, true) => (f_with(&f, &[1], u, &[0]), true),
        (1, true) => (Word::from(u), true),
        (2, true) => (f_with(&f, &[1], u, &[2]), false),
        (s, _) => panic!("symbol {s} outside the ternary alphabet"),
    };
    RewriteState::new(word, flag)
}

/// Number of steps to reach `(ε, 1)`, or `None` past `max_steps`.
pub fn rewrite_run(state: &RewriteState, max_steps: usize) -> Option<usize> {
    let mut s = state.clone();
    for m in 0..=max_steps {
        if s.is_final() {
            return Some(m);
        }
        s = rewrite_step(&s);
    }
    None
}

/// Least `m` with `u^(m) = 1^(|u|+1)`, where `u^(0) = u2` and
/// `u^(n+1) = f(1 u^(n) 0)`.
pub fn ones_recurrence(u: &Word, max_steps: usize) -> Option<usize> {
    let f = f9_rule();
    let target = Word::repeat(1, u.len() + 1);
    let mut w = u.concat(&[2]);
    for m in 0..=max_steps {
        if w == target {
            return Some(m);
        }
        w = f_with(&f, &[1], &w, &[0]);
    }
    None
}

/// Factors that, once absent right of a cell, stay absent one cell further right.
pub const FORBIDDEN: [[Symbol; 2]; 4] = [[0, 1], [1, 2], [2, 0], [2, 2]];

pub fn forbidden_free(w: &[Symbol]) -> bool {
    w.windows(2).all(|p| !FORBIDDEN.iter().any(|f| f == p))
}

/// `x_{[i, ∞)}` contains no forbidden factor.
pub fn suffix_forbidden_free(x: &EpConfig, i: i64) -> bool {
    let hi = x.end().max(i) + 2 * x.right().len() as i64;
    forbidden_free(&x.window(i, hi))
}

/// For `t < steps`: if `H^t(x)_{[i+t, ∞)}` avoids the forbidden factors then
/// so does `H^(t+1)(x)_{[i+t+1, ∞)}`, under the frozen-1 automaton.
/// The statement concerns the half line right of the frozen cell, `i >= 0`.
pub fn propagation_check(x: &EpConfig, i: i64, steps: usize) -> bool {
    assert!(i >= 0, "propagation is stated for i >= 0");
    let spec = frozen_one_f9();
    let mut y = x.clone();
    for t in 0..steps as i64 {
        let next = step(&spec, &y).expect("ternary configuration");
        if suffix_forbidden_free(&y, i + t) && !suffix_forbidden_free(&next, i + t + 1) {
            return false;
        }
        y = next;
    }
    true
}

/// Cells `0..` of the frozen-1 automaton started on `1 u a^∞`.
#[derive(Clone, Debug)]
pub struct OneSidedRun {
    f: LocalRule,
    cells: Vec<Symbol>,
    background: Symbol,
}

impl OneSidedRun {
    pub fn new(u: &Word, background: Symbol) -> Self {
        let f = f9_rule();
        assert_eq!(f.eval(&[background; 3]), background, "background must be a fixed point");
        let mut cells = vec![1];
        cells.extend_from_slice(u);
        OneSidedRun { f, cells, background }
    }

    pub fn cell(&self, i: usize) -> Symbol {
        self.cells.get(i).copied().unwrap_or(self.background)
    }

    pub fn step(&mut self) {
        let a = self.background;
        let n = self.cells.len();
        let mut next = Vec::with_capacity(n + 1);
        next.push(1);
        for i in 1..=n {
            next.push(self.f.eval(&[self.cell(i - 1), self.cell(i), self.cell(i + 1)]));
        }
        while next.len() > 1 && next.last() == Some(&a) {
            next.pop();
        }
        self.cells = next;
    }
}

/// First `n0 <= horizon` such that cell 1 of `H^n(1 u 0^∞)` is 1 for every
/// `n` in `(n0, n0 + window]`.
pub fn zero_tail_settles(u: &Word, horizon: usize, window: usize) -> Option<usize> {
    let mut run = OneSidedRun::new(u, 0);
    let mut streak = 0;
    for t in 1..=horizon + window {
        run.step();
        if run.cell(1) == 1 {
            streak += 1;
            if streak == window {
                return Some(t - window);
            }
        } else {
            streak = 0;
        }
    }
    None
}

/// Up to `count` times `m` in `(n, horizon]` with `H^m(1 u 2^∞)_1 = 2`.
pub fn two_tail_returns(u: &Word, n: usize, horizon: usize, count: usize) -> Vec<usize> {
    let mut run = OneSidedRun::new(u, 2);
    let mut out = Vec::new();
    for m in 1..=horizon {
        run.step();
        if m > n && run.cell(1) == 2 {
            out.push(m);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

/// The first `m > n` with `H^m(1 u 2^∞)_1 = 2`.
pub fn first_two_tail_return(u: &Word, n: usize, horizon: usize) -> Option<usize> {
    two_tail_returns(u, n, horizon, 1).first().copied()
}

/// `H^k(x)_{[-n, n]} = 2^(2n+1)` for `n < k <= n + extra` under the frozen-2
/// automaton.
pub fn frozen_two_window(x: &EpConfig, n: usize, extra: usize) -> bool {
    let spec = frozen_two_spread();
    let n = n as i64;
    let target = Word::repeat(2, 2 * n as usize + 1);
    let mut y = iterate(&spec, x, n as usize).expect("ternary configuration");
    (0..extra).all(|_| {
        y = step(&spec, &y).expect("ternary configuration");
        y.window(-n, n) == target
    })
}

/// `H^i(y)_{[0, i]} = y_0^(i+1)` for `i <= max_i` under the shift with the
/// identity at the origin.
pub fn origin_prefix_identity(y: &EpConfig, max_i: usize) -> bool {
    let spec = super::shift_identity_at_origin();
    let mut z = y.clone();
    for i in 0..=max_i as i64 {
        if z.window(0, i) != Word::repeat(y.sample(0), i as usize + 1) {
            return false;
        }
        z = step(&spec, &z).expect("binary configuration");
    }
    true
}

/// Images of all 0-finite configurations with support in `[-radius, radius]`
/// are pairwise distinct.
pub fn injective_on_finite(spec: &NuCaSpec, radius: usize) -> bool {
    let q = spec.alphabet();
    let mut seen = HashSet::new();
    q.words(2 * radius + 1).all(|w| {
        let x = EpConfig::finite(0, w, -(radius as i64));
        seen.insert(step(spec, &x).expect("in-alphabet configuration"))
    })
}

/// Least `n <= max_steps` with `H^n(x)` and `H^n(y)` differing on `[-1, 1]`.
pub fn separation_time(spec: &NuCaSpec, x: &EpConfig, y: &EpConfig, max_steps: usize) -> Option<usize> {
    let (mut a, mut b) = (x.clone(), y.clone());
    for n in 0..=max_steps {
        if a.window(-1, 1) != b.window(-1, 1) {
            return Some(n);
        }
        a = step(spec, &a).ok()?;
        b = step(spec, &b).ok()?;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn rewrite_examples() {
        let st = |s: &str, f| RewriteState::new(w(s), f);
        assert_eq!(rewrite_step(&st("", false)), st("", true));
        assert_eq!(rewrite_step(&st("1", false)), st("", true));
        assert_eq!(rewrite_step(&st("2", false)), st("0", false));
        assert_eq!(rewrite_run(&st("", true), 10), Some(0));
        assert_eq!(rewrite_run(&st("2", false), 10), Some(3));
    }

    #[test]
    fn ones_recurrence_examples() {
        assert_eq!(ones_recurrence(&Word::empty(), 10), Some(2));
        assert!(ones_recurrence(&w("0"), 100).is_some());
    }

    #[test]
    fn forbidden_factors() {
        assert!(!forbidden_free(&w("00110")));
        assert!(!forbidden_free(&w("22")));
        assert!(forbidden_free(&w("1100")));
        assert!(propagation_check(&"1*|10@0|0*".parse().unwrap(), 0, 20));
    }

    #[test]
    fn one_sided_run_matches_engine() {
        let spec = frozen_one_f9();
        for (u, a) in [("1", 0), ("2012", 0), ("10", 2), ("", 2)] {
            let u = w(u);
            let mut run = OneSidedRun::new(&u, a);
            let mut x =
                EpConfig::new(Word::new(vec![a]), Word::new(vec![1]).concat(&u), 0, Word::new(vec![a])).unwrap();
            for _ in 0..40 {
                run.step();
                x = step(&spec, &x).unwrap();
                for i in 0..30 {
                    assert_eq!(run.cell(i), x.sample(i as i64));
                }
            }
        }
    }

    #[test]
    fn sensitivity_examples() {
        assert!(zero_tail_settles(&w("1"), 100, 20).is_some());
        assert!(first_two_tail_return(&Word::empty(), 0, 1000).is_some());
        assert!(first_two_tail_return(&w("10"), 0, 1000).is_some());
    }
}
