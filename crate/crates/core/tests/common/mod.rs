#![allow(dead_code)]

use nuca::word::encode;
use nuca::{NuCaSpec, Symbol, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Brute force: no word on `[position - r, position + |w| + r)` maps onto `w`.
pub fn is_orphan(spec: &NuCaSpec, w: &Word, position: i64) -> bool {
    let q = spec.alphabet();
    let r = spec.radius();
    let d = 2 * r + 1;
    q.words(w.len() + 2 * r)
        .all(|src| (0..w.len()).any(|j| spec.eval_at(position + j as i64, &src[j..j + d]) != w[j]))
}

/// Images of all words of length `n + 2r` placed so that the image covers `[a, a + n)`.
pub fn image_words(spec: &NuCaSpec, a: i64, n: usize) -> std::collections::HashSet<usize> {
    let q = spec.alphabet();
    let r = spec.radius();
    let d = 2 * r + 1;
    q.words(n + 2 * r)
        .map(|src| {
            let img: Vec<Symbol> = (0..n).map(|j| spec.eval_at(a + j as i64, &src[j..j + d])).collect();
            encode(q.size(), &img)
        })
        .collect()
}
