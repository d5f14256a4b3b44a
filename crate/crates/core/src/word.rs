//! Alphabets and finite words.
//!
//! Symbols are small nonnegative integers. The textual form maps a symbol `s`
//! to the `s`-th character of `0-9A-Z` when every symbol is below 36, and
//! falls back to comma-separated integers otherwise.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u16;

const DIGITS: &[u8; 36] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// A finite alphabet `{0, .., q-1}` with `q >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Alphabet(usize);

impl Alphabet {
    pub const MAX_SIZE: usize = 1 << 16;

    pub fn new(size: usize) -> Result<Self> {
        if !(2..=Self::MAX_SIZE).contains(&size) {
            return Err(Error::InvalidAlphabet {
                got: size,
                max: Self::MAX_SIZE,
            });
        }
        Ok(Alphabet(size))
    }

    #[inline]
    pub fn size(self) -> usize {
        self.0
    }

    #[inline]
    pub fn contains(self, s: Symbol) -> bool {
        (s as usize) < self.0
    }

    pub fn symbols(self) -> impl Iterator<Item = Symbol> {
        (0..self.0).map(|s| s as Symbol)
    }

    pub fn check(self, word: &[Symbol]) -> Result<()> {
        match word.iter().find(|&&s| !self.contains(s)) {
            Some(&s) => Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                size: self.0,
            }),
            None => Ok(()),
        }
    }

    /// Number of words of length `len`, or `None` on overflow.
    pub fn count_words(self, len: usize) -> Option<usize> {
        let mut n: usize = 1;
        for _ in 0..len {
            n = n.checked_mul(self.0)?;
        }
        Some(n)
    }

    /// All words of length `len` in lexicographic order.
    pub fn words(self, len: usize) -> impl Iterator<Item = Word> {
        let count = self.count_words(len).expect("word count overflows usize");
        let q = self.0;
        (0..count).map(move |code| Word(decode(q, len, code)))
    }
}

impl TryFrom<usize> for Alphabet {
    type Error = Error;
    fn try_from(size: usize) -> Result<Self> {
        Alphabet::new(size)
    }
}

impl From<Alphabet> for usize {
    fn from(a: Alphabet) -> usize {
        a.0
    }
}

/// Leftmost-most-significant base-`q` code of `word`.
#[inline]
pub fn encode(q: usize, word: &[Symbol]) -> usize {
    word.iter().fold(0usize, |acc, &s| acc * q + s as usize)
}

/// Inverse of [`encode`] for words of length `len`.
pub fn decode(q: usize, len: usize, mut code: usize) -> Vec<Symbol> {
    let mut out = vec![0 as Symbol; len];
    for slot in out.iter_mut().rev() {
        *slot = (code % q) as Symbol;
        code /= q;
    }
    out
}

/// A finite word over some alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn repeat(symbol: Symbol, n: usize) -> Self {
        Word(vec![symbol; n])
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    /// Shortest `w` with `self = w^m`; the empty word is its own root.
    pub fn primitive_root(&self) -> Word {
        Word(self.0[..primitive_period(&self.0)].to_vec())
    }

    pub fn contains_factor(&self, factor: &[Symbol]) -> bool {
        factor.is_empty() || self.0.windows(factor.len()).any(|w| w == factor)
    }
}

/// Length of the primitive root of `w` (smallest `p | |w|` with `w = (w[..p])^(|w|/p)`).
pub(crate) fn primitive_period(w: &[Symbol]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(0)
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_symbols(&self.0))
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_symbols(s).map(Word)
    }
}

pub(crate) fn render_symbols(symbols: &[Symbol]) -> String {
    if symbols.iter().all(|&s| (s as usize) < DIGITS.len()) {
        symbols.iter().map(|&s| DIGITS[s as usize] as char).collect()
    } else {
        let mut out = symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
        if symbols.len() == 1 {
            // keeps a lone large symbol distinguishable from a digit string
            out.push(',');
        }
        out
    }
}

pub(crate) fn parse_symbols(s: &str) -> Result<Vec<Symbol>> {
    let s = s.trim();
    if s.contains(',') {
        return s
            .strip_suffix(',')
            .unwrap_or(s)
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Symbol>()
                    .map_err(|e| Error::Parse(format!("bad symbol {t:?}: {e}")))
            })
            .collect();
    }
    s.chars()
        .map(|c| {
            c.to_digit(36)
                .map(|d| d as Symbol)
                .ok_or_else(|| Error::Parse(format!("bad symbol character {c:?}")))
        })
        .collect()
}
