//! Eventually periodic bi-infinite configurations and the Cantor metric.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{parse_symbols, primitive_period, render_symbols, Symbol, Word};

/// An eventually periodic configuration `x ∈ A^Z`.
///
/// `center` occupies `[offset, offset + |center|)`. The left tail is tiled
/// leftwards so that its last symbol sits at `offset - 1`; the right tail is
/// tiled rightwards starting at `offset + |center|`.
///
/// The derived `PartialEq` compares raw fields. Use [`EpConfig::equals`] to
/// compare the denoted functions, or compare [`EpConfig::normalize`] outputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct EpConfig {
    left: Word,
    center: Word,
    offset: i64,
    right: Word,
}

/// Exponent `n` of the metric `d(x, y) = 2^-n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Distance {
    Exponent(u64),
    Equal,
}

impl Distance {
    /// The metric value `2^-n` (zero for equal configurations).
    pub fn value(self) -> f64 {
        match self {
            Distance::Equal => 0.0,
            Distance::Exponent(n) => 0.5f64.powi(n.min(i32::MAX as u64) as i32),
        }
    }
}

impl EpConfig {
    pub fn new(left: Word, center: Word, offset: i64, right: Word) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::EmptyTail);
        }
        Ok(EpConfig {
            left,
            center,
            offset,
            right,
        })
    }

    /// The constant configuration `a^Z`.
    pub fn constant(a: Symbol) -> Self {
        EpConfig {
            left: Word::new(vec![a]),
            center: Word::empty(),
            offset: 0,
            right: Word::new(vec![a]),
        }
    }

    /// The `a`-finite configuration with `center` placed at `offset`.
    pub fn finite(background: Symbol, center: Word, offset: i64) -> Self {
        EpConfig {
            left: Word::new(vec![background]),
            center,
            offset,
            right: Word::new(vec![background]),
        }
    }

    /// The periodic configuration `...www...` with `w[0]` at position 0.
    pub fn periodic(period: Word) -> Result<Self> {
        EpConfig::new(period.clone(), Word::empty(), 0, period)
    }

    pub fn left(&self) -> &Word {
        &self.left
    }

    pub fn center(&self) -> &Word {
        &self.center
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn right(&self) -> &Word {
        &self.right
    }

    /// First position of the right tail.
    pub fn end(&self) -> i64 {
        self.offset + self.center.len() as i64
    }

    /// `x_i`.
    pub fn sample(&self, i: i64) -> Symbol {
        if i < self.offset {
            let p = self.left.len() as i64;
            let j = (self.offset - 1 - i) % p;
            self.left[(p - 1 - j) as usize]
        } else if i < self.end() {
            self.center[(i - self.offset) as usize]
        } else {
            let p = self.right.len() as i64;
            self.right[((i - self.end()) % p) as usize]
        }
    }

    /// `x_{[a, b]}` (inclusive); empty when `b < a`.
    pub fn window(&self, a: i64, b: i64) -> Word {
        (a..=b).map(|i| self.sample(i)).collect()
    }

    /// Largest symbol appearing anywhere in the configuration.
    pub fn max_symbol(&self) -> Symbol {
        self.left
            .iter()
            .chain(self.center.iter())
            .chain(self.right.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// The configuration `y` with `y_i = x_{i - s}`.
    pub fn translate(&self, s: i64) -> EpConfig {
        EpConfig {
            offset: self.offset + s,
            ..self.clone()
        }
    }

    pub fn map_symbols(&self, f: impl Fn(Symbol) -> Symbol) -> EpConfig {
        let m = |w: &Word| w.iter().map(|&s| f(s)).collect::<Word>();
        EpConfig {
            left: m(&self.left),
            center: m(&self.center),
            offset: self.offset,
            right: m(&self.right),
        }
    }

    /// Canonical representative of the denoted configuration.
    ///
    /// Tails are reduced to their primitive roots. The center is the segment
    /// between the maximal left-periodic prefix and the maximal
    /// right-periodic suffix; when those overlap the center is empty and sits
    /// at the end of the left-periodic prefix. Fully periodic configurations
    /// are anchored at position 0.
    pub fn normalize(&self) -> EpConfig {
        let raw = EpConfig {
            left: Word::new(self.left[..primitive_period(&self.left)].to_vec()),
            center: self.center.clone(),
            offset: self.offset,
            right: Word::new(self.right[..primitive_period(&self.right)].to_vec()),
        };
        let pl = raw.left.len() as i64;
        let pr = raw.right.len() as i64;
        let (start, end) = (raw.offset, raw.end());

        let limit = end + pl + pr;
        let mut bl = start;
        while bl < limit && raw.sample(bl) == raw.sample(bl - pl) {
            bl += 1;
        }
        if bl >= limit {
            return EpConfig {
                left: raw.window(-pl, -1),
                center: Word::empty(),
                offset: 0,
                right: raw.window(0, pl - 1),
            };
        }

        let floor = start - pl - pr;
        let mut br = end;
        while br > floor && raw.sample(br - 1) == raw.sample(br - 1 + pr) {
            br -= 1;
        }
        debug_assert!(br > floor, "right-periodic everywhere but not left-periodic");

        let anchor = bl.max(br);
        EpConfig {
            left: raw.window(bl - pl, bl - 1),
            center: if bl <= br {
                raw.window(bl, br - 1)
            } else {
                Word::empty()
            },
            offset: bl,
            right: raw.window(anchor, anchor + pr - 1),
        }
    }

    /// Whether `self` and `other` denote the same function `Z -> A`.
    pub fn equals(&self, other: &EpConfig) -> bool {
        self.normalize() == other.normalize()
    }

    /// The `n` of `d(x, y) = 2^-n`.
    pub fn distance_exponent(&self, other: &EpConfig) -> Distance {
        let lcm_l = lcm(self.left.len(), other.left.len()) as i64;
        let lcm_r = lcm(self.right.len(), other.right.len()) as i64;
        let reach = [self.offset, self.end(), other.offset, other.end()]
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or(0);
        let bound = reach + lcm_l + lcm_r + 1;
        (0..=bound)
            .find(|&i| self.sample(i) != other.sample(i) || self.sample(-i) != other.sample(-i))
            .map_or(Distance::Equal, |n| Distance::Exponent(n as u64))
    }
}

impl fmt::Display for EpConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}*|{}@{}|{}*",
            render_symbols(&self.left),
            render_symbols(&self.center),
            self.offset,
            render_symbols(&self.right)
        )
    }
}

impl From<EpConfig> for String {
    fn from(x: EpConfig) -> String {
        x.to_string()
    }
}

impl TryFrom<String> for EpConfig {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for EpConfig {
    type Err = Error;

    /// Parses `<left>*|<center>@<offset>|<right>*`, or `<w>*` for the
    /// periodic configuration with `w[0]` at position 0.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed configuration literal {s:?}"));
        let parts: Vec<&str> = s.split('|').collect();
        match parts.as_slice() {
            [only] => {
                let w = only.strip_suffix('*').ok_or_else(bad)?;
                EpConfig::periodic(Word::new(parse_symbols(w)?)).map_err(|_| bad())
            }
            [l, c, r] => {
                let l = l.strip_suffix('*').ok_or_else(bad)?;
                let r = r.strip_suffix('*').ok_or_else(bad)?;
                let (c, off) = c.rsplit_once('@').ok_or_else(bad)?;
                let offset: i64 = off
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad offset {off:?}: {e}")))?;
                EpConfig::new(
                    Word::new(parse_symbols(l)?),
                    Word::new(parse_symbols(c)?),
                    offset,
                    Word::new(parse_symbols(r)?),
                )
                .map_err(|_| bad())
            }
            _ => Err(bad()),
        }
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
