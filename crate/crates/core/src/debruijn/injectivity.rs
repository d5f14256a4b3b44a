//! Injectivity via bit-1 paths in the reduced product graph.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::graph::DeBruijnGraph;
use super::product::{ProductGraph, ReducedProductGraph};
use super::scc::Csr;
use crate::budget::Budget;
use crate::config::EpConfig;
use crate::conjugacy::pack_spec;
use crate::engine::step;
use crate::error::Result;
use crate::rules::NuCaSpec;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum InjectivityVerdict {
    Injective,
    /// Two distinct configurations with the same image.
    NotInjective {
        left: EpConfig,
        right: EpConfig,
    },
}

impl InjectivityVerdict {
    pub fn is_injective(&self) -> bool {
        matches!(self, InjectivityVerdict::Injective)
    }
}

/// `yes`, or `no witness=<left>;<right>`.
impl fmt::Display for InjectivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InjectivityVerdict::Injective => write!(f, "yes"),
            InjectivityVerdict::NotInjective { left, right } => write!(f, "no witness={left};{right}"),
        }
    }
}

const UNSEEN: usize = usize::MAX;

/// Breadth-first search restricted to `allowed`, from `from` to the first
/// vertex satisfying `goal`; returns the path in search direction.
fn bfs_path(g: &Csr, from: usize, allowed: impl Fn(usize) -> bool, goal: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let mut parent = vec![UNSEEN; g.vertex_count()];
    let mut queue = VecDeque::from([from]);
    parent[from] = from;
    while let Some(v) = queue.pop_front() {
        if goal(v) {
            let mut path = vec![v];
            let mut u = v;
            while u != from {
                u = parent[u];
                path.push(u);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.successors(v) {
            if parent[w] == UNSEEN && allowed(w) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Shortest cycle through `c` inside its component: `[c, w1, .., w_{L-1}]`.
fn shortest_cycle(g: &Csr, c: usize, same: impl Fn(usize) -> bool) -> Vec<usize> {
    if g.successors(c).contains(&c) {
        return vec![c];
    }
    let mut parent = vec![UNSEEN; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &w in g.successors(c) {
        if same(w) && parent[w] == UNSEEN {
            parent[w] = c;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        if g.successors(v).contains(&c) {
            let mut cycle = vec![v];
            let mut u = v;
            while parent[u] != c {
                u = parent[u];
                cycle.push(u);
            }
            cycle.push(c);
            cycle.reverse();
            return cycle;
        }
        for &w in g.successors(v) {
            if parent[w] == UNSEEN && w != c && same(w) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("vertex of a nontrivial component lies on a cycle")
}

/// Decides injectivity of the global map of `spec`.
///
/// Works on the packed radius-1, period-1 form; a witness pair is unpacked
/// and checked against the original spec before it is returned.
pub fn decide_injective(spec: &NuCaSpec, budget: &Budget) -> Result<InjectivityVerdict> {
    let (map, packed) = pack_spec(&spec.with_reduced_tails(), budget)?;
    let g = DeBruijnGraph::new(&packed, budget)?;
    let p = ProductGraph::new(&g, budget)?;
    let d = ReducedProductGraph::new(&p);
    let last = g.levels() - 1;
    let n = p.vertex_count();

    // states (pair, flag) as 2 * pair + flag
    let mut parent = vec![UNSEEN; 2 * n];
    let mut queue = VecDeque::new();
    for v in (0..n).filter(|&v| d.keep[v] && p.level(v) == 0) {
        parent[2 * v] = 2 * v;
        queue.push_back(2 * v);
    }
    let mut found = None;
    while let Some(s) = queue.pop_front() {
        let (v, flag) = (s / 2, s % 2 == 1);
        if flag && p.level(v) == last {
            found = Some(s);
            break;
        }
        for (w, bit) in p.edges(v) {
            if !d.keep[w] {
                continue;
            }
            let t = 2 * w + (flag || bit) as usize;
            if parent[t] == UNSEEN {
                parent[t] = s;
                queue.push_back(t);
            }
        }
    }
    let Some(end) = found else {
        return Ok(InjectivityVerdict::Injective);
    };
    let mut path = vec![end / 2];
    let mut s = end;
    while parent[s] != s {
        s = parent[s];
        path.push(s / 2);
    }
    path.reverse();

    let forward = p.graph();
    let backward = forward.reversed();
    let comps = &d.components;
    let nontrivial = |v: usize| comps.is_nontrivial_vertex(v);
    let kept = |v: usize| d.keep[v];

    let mut lead = bfs_path(&backward, path[0], kept, nontrivial).expect("start is reachable from a cycle");
    lead.reverse();
    let trail = bfs_path(forward, path[path.len() - 1], kept, nontrivial).expect("end reaches a cycle");
    let c = lead[0];
    let z = trail[trail.len() - 1];
    let left_cycle = shortest_cycle(forward, c, |w| comps.component[w] == comps.component[c]);
    let right_cycle = shortest_cycle(forward, z, |w| comps.component[w] == comps.component[z]);

    let mut seq = lead;
    seq.extend_from_slice(&path[1..]);
    seq.extend_from_slice(&trail[1..]);
    let j_star = (0..seq.len() - 1)
        .find(|&j| p.level(seq[j]) == 0 && p.level(seq[j + 1]) == 1)
        .expect("path crosses the window");
    // the edge leaving seq[j] computes cell j - j* - k; its vertex word starts one cell earlier
    let offset = -(j_star as i64) - packed.k() as i64 - 1;

    let build = |side: usize| -> EpConfig {
        let head = |pair: usize| {
            let (a, b) = p.components(pair);
            g.head(if side == 0 { a } else { b })
        };
        let heads = |vs: &[usize]| -> Word { vs.iter().map(|&v| head(v)).collect() };
        let packed_cfg = EpConfig::new(
            heads(&left_cycle),
            heads(&seq[..seq.len() - 1]),
            offset,
            heads(&right_cycle),
        )
        .expect("cycles are nonempty");
        map.unpack_config(&packed_cfg)
    };
    let (x, y) = (build(0), build(1));
    let (hx, hy) = (step(spec, &x)?, step(spec, &y)?);
    assert!(
        !x.equals(&y) && hx.equals(&hy),
        "injectivity witness failed verification: {x} / {y}"
    );
    Ok(InjectivityVerdict::NotInjective { left: x, right: y })
}
