//! Exact global-map stepping on eventually periodic configurations.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::config::{lcm, EpConfig};
use crate::error::{Error, Result};
use crate::rules::NuCaSpec;
use crate::word::Word;

/// `H(x)` for the νCA described by `spec`.
///
/// Left of `T = min(-k-1, offset-1-r)` every neighborhood lies in the left
/// tail and every rule comes from the left tail sequence, so the image is
/// periodic there with period `lcm(pL, |left|)`; symmetrically on the right
/// from `S = max(k+1, end+r)`. Only `[T+1, S)` and one block on each side
/// are evaluated.
pub fn step(spec: &NuCaSpec, x: &EpConfig) -> Result<EpConfig> {
    let q = spec.alphabet();
    if !q.contains(x.max_symbol()) {
        return Err(Error::SymbolOutOfRange {
            symbol: x.max_symbol() as usize,
            size: q.size(),
        });
    }
    Ok(step_unchecked(spec, x))
}

pub(crate) fn step_unchecked(spec: &NuCaSpec, x: &EpConfig) -> EpConfig {
    let r = spec.radius() as i64;
    let k = spec.k() as i64;
    let pl = lcm(spec.left_period(), x.left().len()) as i64;
    let pr = lcm(spec.right_period(), x.right().len()) as i64;
    let t = (-k - 1).min(x.offset() - 1 - r);
    let s = (k + 1).max(x.end() + r);

    let lo = t + 1 - pl;
    let hi = s + pr;
    let span = x.window(lo - r, hi - 1 + r);
    let image: Vec<_> = (lo..hi)
        .map(|i| {
            let j = (i - lo) as usize;
            spec.eval_at(i, &span[j..j + 2 * r as usize + 1])
        })
        .collect();
    let split_l = pl as usize;
    let split_r = (s - lo) as usize;
    EpConfig::new(
        Word::from(&image[..split_l]),
        Word::from(&image[split_l..split_r]),
        t + 1,
        Word::from(&image[split_r..]),
    )
    .expect("tails are nonempty")
    .normalize()
}

/// `H^n(x)`.
pub fn iterate(spec: &NuCaSpec, x: &EpConfig, n: usize) -> Result<EpConfig> {
    let mut y = step(spec, x)?;
    for _ in 1..n {
        y = step_unchecked(spec, &y);
    }
    if n == 0 {
        return Ok(x.clone());
    }
    Ok(y)
}

/// Rows `H^t(x)_{[a, b]}` for `t = 0..=T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub window: (i64, i64),
    pub alphabet_size: usize,
    pub rows: Vec<Word>,
}

pub fn trace(spec: &NuCaSpec, x: &EpConfig, window: (i64, i64), steps: usize) -> Result<Trace> {
    let (a, b) = window;
    if a > b {
        return Err(Error::Parse(format!("empty window {a}..{b}")));
    }
    let mut rows = Vec::with_capacity(steps + 1);
    let mut y = x.clone();
    rows.push(y.window(a, b));
    for t in 0..steps {
        y = if t == 0 {
            step(spec, &y)?
        } else {
            step_unchecked(spec, &y)
        };
        rows.push(y.window(a, b));
    }
    Ok(Trace {
        window,
        alphabet_size: spec.alphabet().size(),
        rows,
    })
}

impl Trace {
    /// Column `i` (absolute position) over time.
    pub fn column(&self, i: i64) -> Word {
        let j = (i - self.window.0) as usize;
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Binary PGM (P5), one pixel per cell, symbols scaled to `0..=255`.
    pub fn to_pgm(&self) -> Vec<u8> {
        let width = (self.window.1 - self.window.0 + 1) as usize;
        let height = self.rows.len();
        let scale = 255 / (self.alphabet_size - 1).max(1);
        let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
        for row in &self.rows {
            out.extend(row.iter().map(|&s| (s as usize * scale).min(255) as u8));
        }
        out
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrbitReport {
    /// `H^(preperiod + period)(x) = H^preperiod(x)`.
    UltimatelyPeriodic {
        preperiod: usize,
        period: usize,
    },
    BudgetExceeded {
        steps: usize,
        max_center_width: usize,
    },
}

/// Detects eventual periodicity of the orbit of `x` by hashing canonical forms.
///
/// Gives up after `max_steps` steps or once a canonical center grows beyond
/// `max_center_width`.
pub fn orbit_analyze(spec: &NuCaSpec, x: &EpConfig, max_steps: usize, max_center_width: usize) -> Result<OrbitReport> {
    let exceeded = OrbitReport::BudgetExceeded {
        steps: max_steps,
        max_center_width,
    };
    let mut seen: HashMap<EpConfig, usize> = HashMap::new();
    let mut y = x.normalize();
    for t in 0..=max_steps {
        if y.center().len() > max_center_width {
            return Ok(exceeded);
        }
        if let Some(&first) = seen.get(&y) {
            return Ok(OrbitReport::UltimatelyPeriodic {
                preperiod: first,
                period: t - first,
            });
        }
        if t == max_steps {
            break;
        }
        let next = if t == 0 {
            step(spec, &y)?
        } else {
            step_unchecked(spec, &y)
        };
        seen.insert(std::mem::replace(&mut y, next), t);
    }
    Ok(exceeded)
}
