//! Strongly connected components and the reduced subgraph between them.

/// A directed graph in compressed sparse row form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Csr {
    start: Vec<usize>,
    targets: Vec<usize>,
}

impl Csr {
    /// Builds from per-vertex successor lists given in vertex order.
    pub fn from_adjacency(adj: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut start = vec![0];
        let mut targets = Vec::new();
        for succ in adj {
            targets.extend(succ);
            start.push(targets.len());
        }
        Csr { start, targets }
    }

    pub(crate) fn from_parts(start: Vec<usize>, targets: Vec<usize>) -> Self {
        debug_assert_eq!(start.last().copied(), Some(targets.len()));
        Csr { start, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.start.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.targets[self.start[v]..self.start[v + 1]]
    }

    /// Edge ids of `v`, aligned with [`successors`](Self::successors).
    pub fn edge_range(&self, v: usize) -> std::ops::Range<usize> {
        self.start[v]..self.start[v + 1]
    }

    pub fn reversed(&self) -> Csr {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            for &w in self.successors(v) {
                adj[w].push(v);
            }
        }
        Csr::from_adjacency(adj)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Component id per vertex, in reverse topological order of discovery.
    pub component: Vec<usize>,
    pub count: usize,
    /// Whether a component has more than one vertex or a self-loop.
    pub nontrivial: Vec<bool>,
}

impl Components {
    pub fn is_nontrivial_vertex(&self, v: usize) -> bool {
        self.nontrivial[self.component[v]]
    }
}

/// Tarjan's algorithm with an explicit stack.
pub fn strongly_connected_components(g: &Csr) -> Components {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut component = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    let mut sizes: Vec<usize> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, pos)) = call.last() {
            if pos == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            let succ = g.successors(v);
            if pos < succ.len() {
                call.last_mut().expect("frame").1 += 1;
                let w = succ[pos];
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut size = 0;
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    component[w] = count;
                    size += 1;
                    if w == v {
                        break;
                    }
                }
                sizes.push(size);
                count += 1;
            }
        }
    }

    let mut nontrivial: Vec<bool> = sizes.iter().map(|&s| s > 1).collect();
    for v in 0..n {
        if g.successors(v).contains(&v) {
            nontrivial[component[v]] = true;
        }
    }
    Components {
        component,
        count,
        nontrivial,
    }
}

fn reach(g: &Csr, seeds: impl Iterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack: Vec<usize> = seeds.collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in g.successors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Vertices lying on a path from a nontrivial component to a nontrivial
/// component (both ends included). An edge `(v, w)` of `g` belongs to the
/// reduced graph iff both endpoints are kept.
pub fn reduced_vertices(g: &Csr, comps: &Components) -> Vec<bool> {
    let seeds = || (0..g.vertex_count()).filter(|&v| comps.is_nontrivial_vertex(v));
    let forward = reach(g, seeds());
    let backward = reach(&g.reversed(), seeds());
    forward.iter().zip(&backward).map(|(&f, &b)| f && b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_of_a_small_graph() {
        // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 3, 4 -> 0
        let g = Csr::from_adjacency(vec![vec![1], vec![2], vec![0, 3], vec![3], vec![0]]);
        let c = strongly_connected_components(&g);
        assert_eq!(c.count, 3);
        assert_eq!(c.component[0], c.component[1]);
        assert_eq!(c.component[1], c.component[2]);
        assert!(c.is_nontrivial_vertex(0));
        assert!(c.is_nontrivial_vertex(3));
        assert!(!c.is_nontrivial_vertex(4));
        let keep = reduced_vertices(&g, &c);
        assert_eq!(keep, vec![true, true, true, true, false]);
    }

    #[test]
    fn acyclic_graph_reduces_to_nothing() {
        let g = Csr::from_adjacency(vec![vec![1, 2], vec![2], vec![]]);
        let c = strongly_connected_components(&g);
        assert_eq!(c.count, 3);
        assert!(reduced_vertices(&g, &c).iter().all(|&k| !k));
    }

    #[test]
    fn matches_a_reachability_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..12);
            let adj: Vec<Vec<usize>> = (0..n)
                .map(|_| (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..n)).collect())
                .collect();
            let g = Csr::from_adjacency(adj);
            let c = strongly_connected_components(&g);
            let reach_from: Vec<Vec<bool>> = (0..n).map(|v| reach(&g, std::iter::once(v))).collect();
            for (a, from_a) in reach_from.iter().enumerate() {
                for (b, from_b) in reach_from.iter().enumerate() {
                    let same = from_a[b] && from_b[a];
                    assert_eq!(same, c.component[a] == c.component[b]);
                }
                let cyclic = g.successors(a).iter().any(|&w| reach_from[w][a]);
                assert_eq!(cyclic, c.is_nontrivial_vertex(a));
            }
        }
    }
}
