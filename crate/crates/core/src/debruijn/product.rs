//! Pair graph of a De Bruijn graph and its reduction to paths between cycles.

use super::graph::DeBruijnGraph;
use super::scc::{reduced_vertices, strongly_connected_components, Components, Csr};
use crate::budget::{pow_sat, Budget};
use crate::error::Result;

/// Pairs of De Bruijn vertices on the same level; an edge pairs two edges
/// that reach the same level with equal symbols. Its bit is 0 iff both the
/// source and the target pair are diagonal.
///
/// Pair id `level * m^2 + c1 * m + c2` with `m = q^(2r)`.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    words: usize,
    levels: usize,
    graph: Csr,
    bits: Vec<bool>,
}

impl ProductGraph {
    pub fn new(g: &DeBruijnGraph, budget: &Budget) -> Result<Self> {
        let m = g.words_per_level();
        let levels = g.levels();
        let pairs = pow_sat(m, 2).saturating_mul(levels as u128);
        budget.check_states("product graph vertices", pairs.min(usize::MAX as u128) as usize)?;
        let mut start = Vec::with_capacity(pairs as usize + 1);
        let mut targets = Vec::new();
        let mut bits = Vec::new();
        for level in 0..levels {
            for c1 in 0..m {
                let v1 = level * m + c1;
                for c2 in 0..m {
                    let v2 = level * m + c2;
                    start.push(targets.len());
                    for e1 in g.edges(v1) {
                        for e2 in g.edges(v2) {
                            let l1 = g.level(e1.to);
                            if l1 != g.level(e2.to) || e1.symbol != e2.symbol {
                                continue;
                            }
                            targets.push(l1 * m * m + g.code(e1.to) * m + g.code(e2.to));
                            bits.push(!(v1 == v2 && e1.to == e2.to));
                        }
                    }
                }
            }
        }
        start.push(targets.len());
        budget.check_states("product graph edges", targets.len())?;
        Ok(ProductGraph {
            words: m,
            levels,
            graph: Csr::from_parts(start, targets),
            bits,
        })
    }

    pub fn graph(&self) -> &Csr {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn level(&self, p: usize) -> usize {
        p / (self.words * self.words)
    }

    /// The two De Bruijn vertex ids of pair `p`.
    pub fn components(&self, p: usize) -> (usize, usize) {
        let level = self.level(p);
        let rest = p % (self.words * self.words);
        (
            level * self.words + rest / self.words,
            level * self.words + rest % self.words,
        )
    }

    pub fn is_diagonal(&self, p: usize) -> bool {
        let (a, b) = self.components(p);
        a == b
    }

    /// `(target, bit)` for each edge leaving `p`.
    pub fn edges(&self, p: usize) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.graph.edge_range(p).map(move |e| {
            (
                self.graph.successors(p)[e - self.graph.edge_range(p).start],
                self.bits[e],
            )
        })
    }
}

/// The subgraph of a [`ProductGraph`] on the vertices that lie between
/// nontrivial strongly connected components.
#[derive(Clone, Debug)]
pub struct ReducedProductGraph {
    pub components: Components,
    pub keep: Vec<bool>,
}

impl ReducedProductGraph {
    pub fn new(p: &ProductGraph) -> Self {
        let components = strongly_connected_components(p.graph());
        let keep = reduced_vertices(p.graph(), &components);
        ReducedProductGraph { components, keep }
    }

    pub fn vertex_count(&self) -> usize {
        self.keep.iter().filter(|&&k| k).count()
    }

    pub fn nontrivial_component_count(&self) -> usize {
        self.components.nontrivial.iter().filter(|&&n| n).count()
    }
}
