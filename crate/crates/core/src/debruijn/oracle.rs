//! Brute-force cross-checks for the graph deciders.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::budget::{pow_sat, Budget};
use crate::config::EpConfig;
use crate::conjugacy::pack_spec;
use crate::engine::step;
use crate::error::Result;
use crate::rules::{LocalRule, NuCaSpec};
use crate::word::{decode, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SurjectivityOracle {
    /// `word` placed on `[-n, n]` has no preimage.
    RefutedAt { word: Word, n: usize },
    /// Every word on `[-n, n]` has a preimage for `n <= bound`.
    ConsistentUpTo(usize),
}

impl SurjectivityOracle {
    pub fn is_refuted(&self) -> bool {
        matches!(self, SurjectivityOracle::RefutedAt { .. })
    }
}

/// Enumerates, for `n = k+1 ..= max_half_width`, the images on `[-n, n]` of
/// every word on `[-n-r, n+r]` and reports the least word that is missed.
pub fn surjectivity_oracle(spec: &NuCaSpec, max_half_width: usize, budget: &Budget) -> Result<SurjectivityOracle> {
    let q = spec.alphabet().size();
    let r = spec.radius();
    let d = 2 * r + 1;
    for n in spec.k() + 1..=max_half_width {
        let targets = 2 * n + 1;
        let sources = targets + 2 * r;
        budget.check_enumeration("surjectivity oracle preimages", pow_sat(q, sources))?;
        let rules: Vec<&LocalRule> = (0..targets).map(|j| spec.rule_at(j as i64 - n as i64)).collect();
        let mut hit = vec![false; q.pow(targets as u32)];
        let window_size = q.pow(d as u32);

        // depth-first over preimage symbols; each image cell is computed once its window is complete
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, 0, 0)];
        while let Some((depth, window, image)) = stack.pop() {
            if depth == sources {
                hit[image] = true;
                continue;
            }
            for s in 0..q {
                let w = (window * q + s) % window_size;
                let image = if depth + 1 >= d {
                    image * q + rules[depth + 1 - d].lookup(w) as usize
                } else {
                    image
                };
                stack.push((depth + 1, w, image));
            }
        }
        if let Some(missing) = hit.iter().position(|&h| !h) {
            return Ok(SurjectivityOracle::RefutedAt {
                word: Word::new(decode(q, targets, missing)),
                n,
            });
        }
    }
    Ok(SurjectivityOracle::ConsistentUpTo(max_half_width))
}

/// Looks for two distinct configurations with equal images by searching the
/// full pair graph of the packed spec: from a pair with an infinite past on
/// the left tail, through a differing pair, to a pair with an infinite
/// future on the right tail. Every returned pair has been checked with
/// [`step`].
pub fn injectivity_witness_oracle(spec: &NuCaSpec, budget: &Budget) -> Result<Option<(EpConfig, EpConfig)>> {
    let (map, packed) = pack_spec(&spec.with_reduced_tails(), budget)?;
    let q = packed.alphabet().size();
    let k = packed.k();
    let levels = 2 * k + 2;
    let m = q * q;
    let n = levels * m * m;
    budget.check_states("pair states", n)?;
    let last = levels - 1;
    let id = |l: usize, a: usize, b: usize| (l * m + a) * m + b;
    let split = |v: usize| (v / (m * m), (v / m) % m, v % m);

    let successors = |v: usize| -> Vec<(usize, bool)> {
        let (l, a, b) = split(v);
        let mut moves: Vec<(&LocalRule, usize)> = Vec::new();
        if l == 0 {
            moves.push((&packed.left_tail()[0], 0));
        }
        if l <= 2 * k {
            moves.push((&packed.window()[l], l + 1));
        } else {
            moves.push((&packed.right_tail()[0], l));
        }
        let mut out = Vec::new();
        for (rule, to) in moves {
            for s in 0..q {
                for t in 0..q {
                    let (na, nb) = (a * q + s, b * q + t);
                    if rule.lookup(na) == rule.lookup(nb) {
                        out.push((id(to, na % m, nb % m), na != nb));
                    }
                }
            }
        }
        out
    };

    // level-0 pairs with an infinite past, level-last pairs with an infinite future
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); m * m];
    let mut succs: Vec<Vec<usize>> = vec![Vec::new(); m * m];
    for (v, out) in succs.iter_mut().enumerate() {
        for (w, _) in successors(v) {
            if w < m * m {
                preds[w].push(v);
            }
        }
        out.extend(
            successors(id(last, v / m, v % m))
                .into_iter()
                .map(|(w, _)| w - id(last, 0, 0)),
        );
    }
    let past = greatest_fixed_point(&preds);
    let future = greatest_fixed_point(&succs);

    let mut parent = vec![usize::MAX; 2 * n];
    let mut queue = VecDeque::new();
    for v in (0..m * m).filter(|&v| past[v]) {
        parent[2 * v] = 2 * v;
        queue.push_back(2 * v);
    }
    let mut end = None;
    while let Some(s) = queue.pop_front() {
        let (v, flag) = (s / 2, s % 2 == 1);
        if flag && split(v).0 == last && future[v - id(last, 0, 0)] {
            end = Some(s);
            break;
        }
        for (w, bit) in successors(v) {
            let t = 2 * w + (flag || bit) as usize;
            if parent[t] == usize::MAX {
                parent[t] = s;
                queue.push_back(t);
            }
        }
    }
    let Some(end) = end else {
        return Ok(None);
    };
    let mut path = vec![end / 2];
    let mut s = end;
    while parent[s] != s {
        s = parent[s];
        path.push(s / 2);
    }
    path.reverse();

    // pump: follow least predecessors (successors) inside the fixed point until a repeat
    let walk = |startv: usize, next: &Vec<Vec<usize>>, inside: &Vec<bool>| -> (Vec<usize>, usize) {
        let mut seen = vec![usize::MAX; next.len()];
        let mut trail = vec![startv];
        seen[startv] = 0;
        loop {
            let u = *trail.last().expect("nonempty");
            let w = *next[u]
                .iter()
                .filter(|&&w| inside[w])
                .min()
                .expect("fixed point has a neighbor");
            if seen[w] != usize::MAX {
                return (trail, seen[w]);
            }
            seen[w] = trail.len();
            trail.push(w);
        }
    };
    let (back, i) = walk(path[0], &preds, &past);
    // back = [s, pred(s), ...], back[j] -> back[j-1]; the edge back[i] -> back[last] closes the loop
    let mut lead: Vec<usize> = back.clone();
    lead.reverse();
    let left_cycle: Vec<usize> = lead[..lead.len() - i].to_vec();
    let offset_last = id(last, 0, 0);
    let (fwd, i2) = walk(path[path.len() - 1] - offset_last, &succs, &future);
    let right_cycle: Vec<usize> = fwd[i2..].iter().map(|&v| v + offset_last).collect();
    let trail: Vec<usize> = fwd[..=i2].iter().map(|&v| v + offset_last).collect();

    let mut seq = lead;
    seq.extend_from_slice(&path[1..]);
    seq.extend_from_slice(&trail[1..]);
    let level = |v: usize| split(v).0;
    let j_star = (0..seq.len() - 1)
        .find(|&j| level(seq[j]) == 0 && level(seq[j + 1]) == 1)
        .expect("path crosses the window");
    let offset = -(j_star as i64) - k as i64 - 1;
    let build = |side: usize| -> EpConfig {
        let head = |v: usize| {
            let (_, a, b) = split(v);
            ((if side == 0 { a } else { b }) / q) as u16
        };
        let heads = |vs: &[usize]| -> Word { vs.iter().map(|&v| head(v)).collect() };
        map.unpack_config(
            &EpConfig::new(
                heads(&left_cycle),
                heads(&seq[..seq.len() - 1]),
                offset,
                heads(&right_cycle),
            )
            .expect("cycles are nonempty"),
        )
    };
    let (x, y) = (build(0), build(1));
    assert!(
        !x.equals(&y) && step(spec, &x)?.equals(&step(spec, &y)?),
        "oracle witness failed verification: {x} / {y}"
    );
    Ok(Some((x, y)))
}

/// Vertices with an infinite walk along `next` (greatest fixed point).
fn greatest_fixed_point(next: &[Vec<usize>]) -> Vec<bool> {
    let n = next.len();
    let mut inside = vec![true; n];
    let mut count: Vec<usize> = next.iter().map(Vec::len).collect();
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, ws) in next.iter().enumerate() {
        for &w in ws {
            rev[w].push(v);
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| count[v] == 0).collect();
    for &v in &queue {
        inside[v] = false;
    }
    while let Some(w) = queue.pop() {
        for &v in &rev[w] {
            count[v] -= 1;
            if count[v] == 0 && inside[v] {
                inside[v] = false;
                queue.push(v);
            }
        }
    }
    inside
}

/// Search space for [`count_preimages_bounded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PreimageBounds {
    pub max_period: usize,
    pub max_center: usize,
    pub min_offset: i64,
    pub max_offset: i64,
}

impl Default for PreimageBounds {
    fn default() -> Self {
        PreimageBounds {
            max_period: 2,
            max_center: 4,
            min_offset: -3,
            max_offset: 3,
        }
    }
}

/// All preimages of `y` whose tails, center and offset lie within `bounds`,
/// in canonical form and sorted by their text form.
pub fn count_preimages_bounded(
    spec: &NuCaSpec,
    y: &EpConfig,
    bounds: &PreimageBounds,
    budget: &Budget,
) -> Result<Vec<EpConfig>> {
    let q = spec.alphabet();
    let tails: Vec<Word> = (1..=bounds.max_period).flat_map(|l| q.words(l)).collect();
    let centers: Vec<Word> = (0..=bounds.max_center).flat_map(|l| q.words(l)).collect();
    let offsets = (bounds.max_offset - bounds.min_offset + 1).max(0) as u128;
    let total = (tails.len() as u128).pow(2) * centers.len() as u128 * offsets;
    budget.check_enumeration("bounded preimage candidates", total)?;

    let target = y.normalize();
    let mut found = BTreeSet::new();
    for left in &tails {
        for right in &tails {
            for center in &centers {
                for offset in bounds.min_offset..=bounds.max_offset {
                    let x = EpConfig::new(left.clone(), center.clone(), offset, right.clone())?;
                    if step(spec, &x)? == target {
                        found.insert(x.normalize().to_string());
                    }
                }
            }
        }
    }
    found.into_iter().map(|s| s.parse()).collect()
}
