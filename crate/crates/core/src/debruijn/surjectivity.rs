//! Surjectivity as containment of `(A x {0})* (A x {1})*` in the language of
//! the De Bruijn graph read with every vertex initial and final.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::graph::DeBruijnGraph;
use crate::budget::Budget;
use crate::conjugacy::pack_spec;
use crate::error::Result;
use crate::rules::NuCaSpec;
use crate::word::{Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SurjectivityVerdict {
    Surjective,
    /// No configuration has `word` as its image on `[position, position + |word|)`.
    NotSurjective {
        word: Word,
        position: i64,
    },
}

impl SurjectivityVerdict {
    pub fn is_surjective(&self) -> bool {
        matches!(self, SurjectivityVerdict::Surjective)
    }
}

/// `yes`, or `no witness=<word>@<position>`.
impl fmt::Display for SurjectivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurjectivityVerdict::Surjective => write!(f, "yes"),
            SurjectivityVerdict::NotSurjective { word, position } => write!(f, "no witness={word}@{position}"),
        }
    }
}

/// A pattern word outside the graph's language, as `(symbol, bit)` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissingWord {
    pub letters: Vec<(Symbol, bool)>,
}

impl MissingWord {
    /// Number of bit-0 letters, i.e. cells at index `<= k`.
    pub fn zeros(&self) -> usize {
        self.letters.iter().filter(|(_, b)| !b).count()
    }

    /// Position of the first letter: the first bit-1 letter sits at `k + 1`.
    pub fn position(&self, k: usize) -> i64 {
        k as i64 + 1 - self.zeros() as i64
    }

    pub fn symbols(&self) -> Word {
        self.letters.iter().map(|&(s, _)| s).collect()
    }
}

type Bits = Vec<u64>;

fn set_bit(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

/// Subset construction of `g` in product with the two-phase pattern automaton.
///
/// Breadth-first, so the returned word is shortest; letters are tried in the
/// order `(0,0) .. (q-1,0), (0,1) .. (q-1,1)`.
pub fn find_missing_word(g: &DeBruijnGraph, budget: &Budget) -> Result<Option<MissingWord>> {
    let n = g.vertex_count();
    let q = g.alphabet_size();
    let blocks = n.div_ceil(64);
    let mut all = vec![0u64; blocks];
    for v in 0..n {
        set_bit(&mut all, v);
    }

    // state = (subset, phase); phase 1 once a bit-1 letter was read
    let mut index: HashMap<(Bits, bool), usize> = HashMap::new();
    let mut states: Vec<(Bits, bool)> = Vec::new();
    let mut parent: Vec<Option<(usize, (Symbol, bool))>> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert((all.clone(), false), 0);
    states.push((all, false));
    parent.push(None);
    queue.push_back(0);

    let word_to = |parent: &[Option<(usize, (Symbol, bool))>], mut s: usize, last: (Symbol, bool)| {
        let mut letters = vec![last];
        while let Some((p, l)) = parent[s] {
            letters.push(l);
            s = p;
        }
        letters.reverse();
        MissingWord { letters }
    };

    let mut next: Vec<Bits> = vec![vec![0u64; blocks]; 2 * q];
    while let Some(s) = queue.pop_front() {
        let (subset, phase) = states[s].clone();
        for b in next.iter_mut() {
            b.fill(0);
        }
        for (w, &word) in subset.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let v = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for e in g.edges(v) {
                    set_bit(&mut next[e.symbol as usize + if e.bit { q } else { 0 }], e.to);
                }
            }
        }
        for (slot, target) in next.iter().enumerate() {
            let bit = slot >= q;
            if phase && !bit {
                continue;
            }
            let letter = ((slot % q) as Symbol, bit);
            if target.iter().all(|&w| w == 0) {
                return Ok(Some(word_to(&parent, s, letter)));
            }
            let key = (target.clone(), bit);
            if !index.contains_key(&key) {
                budget.check_states("determinized De Bruijn states", states.len() + 1)?;
                index.insert(key.clone(), states.len());
                states.push(key);
                parent.push(Some((s, letter)));
                queue.push_back(states.len() - 1);
            }
        }
    }
    Ok(None)
}

/// Decides surjectivity of the global map of `spec`.
///
/// The spec is reduced to radius 1 with period-1 tails by block packing; a
/// missing word is decoded back to original cells.
pub fn decide_surjective(spec: &NuCaSpec, budget: &Budget) -> Result<SurjectivityVerdict> {
    let (map, packed) = pack_spec(&spec.with_reduced_tails(), budget)?;
    let g = DeBruijnGraph::new(&packed, budget)?;
    Ok(match find_missing_word(&g, budget)? {
        None => SurjectivityVerdict::Surjective,
        Some(w) => SurjectivityVerdict::NotSurjective {
            word: w.symbols().iter().flat_map(|&s| map.decode(s).into_vec()).collect(),
            position: w.position(packed.k()) * map.block() as i64,
        },
    })
}
