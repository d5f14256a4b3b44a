//! The labeled De Bruijn graph of a radius-r νCA with period-1 tails.

use crate::budget::{pow_sat, Budget};
use crate::error::{Error, Result};
use crate::rules::NuCaSpec;
use crate::word::{decode, Symbol, Word};

/// A labeled edge; `bit` is 1 exactly on the right-tail loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub to: usize,
    pub symbol: Symbol,
    pub bit: bool,
}

/// Vertices are pairs (word of length 2r, level) with level `0..2k+2`
/// standing for the index `level - k` in `[-k, k+1]`; vertex id
/// `level * q^(2r) + code(word)`.
///
/// From `(u, level)` and a symbol `s`, the neighborhood `u s` leads to
/// `(u[1..] s, level')` where
/// - level 0 loops with the left rule (bit 0),
/// - levels `0..=2k` advance with the window rule of their index (bit 0),
/// - level `2k+1` loops with the right rule (bit 1).
#[derive(Clone, Debug)]
pub struct DeBruijnGraph {
    q: usize,
    radius: usize,
    k: usize,
    words: usize,
    start: Vec<usize>,
    edges: Vec<Edge>,
}

impl DeBruijnGraph {
    pub fn new(spec: &NuCaSpec, budget: &Budget) -> Result<Self> {
        if spec.left_period() != 1 || spec.right_period() != 1 {
            return Err(Error::NotNormalForm(format!(
                "tail periods are {} and {}",
                spec.left_period(),
                spec.right_period()
            )));
        }
        if spec.radius() == 0 {
            return Err(Error::NotNormalForm("radius 0".into()));
        }
        let q = spec.alphabet().size();
        let r = spec.radius();
        let k = spec.k();
        let levels = 2 * k + 2;
        let words_u128 = pow_sat(q, 2 * r);
        budget.check_table(
            "De Bruijn edges",
            words_u128.saturating_mul((levels + 1) as u128 * q as u128),
        )?;
        let words = words_u128 as usize;

        let left = &spec.left_tail()[0];
        let right = &spec.right_tail()[0];
        let mut start = Vec::with_capacity(words * levels + 1);
        let mut edges = Vec::with_capacity(words * (levels + 1) * q);
        for level in 0..levels {
            for code in 0..words {
                start.push(edges.len());
                for s in 0..q {
                    let nb = code * q + s;
                    let next = nb % words;
                    if level == 0 {
                        edges.push(Edge {
                            to: next,
                            symbol: left.lookup(nb),
                            bit: false,
                        });
                    }
                    if level <= 2 * k {
                        edges.push(Edge {
                            to: (level + 1) * words + next,
                            symbol: spec.window()[level].lookup(nb),
                            bit: false,
                        });
                    } else {
                        edges.push(Edge {
                            to: level * words + next,
                            symbol: right.lookup(nb),
                            bit: true,
                        });
                    }
                }
            }
        }
        start.push(edges.len());
        Ok(DeBruijnGraph {
            q,
            radius: r,
            k,
            words,
            start,
            edges,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.q
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of levels, `2k + 2`.
    pub fn levels(&self) -> usize {
        2 * self.k + 2
    }

    /// `q^(2r)`.
    pub fn words_per_level(&self) -> usize {
        self.words
    }

    pub fn vertex_count(&self) -> usize {
        self.words * self.levels()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn level(&self, v: usize) -> usize {
        v / self.words
    }

    /// The index `level - k` of a vertex.
    pub fn index(&self, v: usize) -> i64 {
        self.level(v) as i64 - self.k as i64
    }

    pub fn code(&self, v: usize) -> usize {
        v % self.words
    }

    pub fn word(&self, v: usize) -> Word {
        Word::new(decode(self.q, 2 * self.radius, self.code(v)))
    }

    /// First symbol of the vertex word.
    pub fn head(&self, v: usize) -> Symbol {
        (self.code(v) / (self.words / self.q)) as Symbol
    }

    pub fn edges(&self, v: usize) -> &[Edge] {
        &self.edges[self.start[v]..self.start[v + 1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::LocalRule;
    use crate::word::Alphabet;

    #[test]
    fn vertex_and_degree_counts() {
        let q2 = Alphabet::new(2).unwrap();
        let shift_identity =
            NuCaSpec::default_perturbed(LocalRule::copy(q2, 1, -1), vec![LocalRule::identity(q2, 1)]).unwrap();
        let g = DeBruijnGraph::new(&shift_identity, &Budget::default()).unwrap();
        assert_eq!(g.vertex_count(), 8);
        for v in 0..g.vertex_count() {
            let expected = if g.level(v) == 0 { 4 } else { 2 };
            assert_eq!(g.edges(v).len(), expected);
            for e in g.edges(v) {
                // overlap: u[1..] is a prefix of the target word
                assert_eq!(&g.word(v)[1..], &g.word(e.to)[..1]);
                assert_eq!(e.bit, g.level(v) == 1);
            }
        }
    }

    #[test]
    fn rejects_non_normal_specs() {
        let q2 = Alphabet::new(2).unwrap();
        let f = LocalRule::identity(q2, 1);
        let p = NuCaSpec::new(0, vec![f.clone()], vec![f.clone(), f.clone()], vec![f.clone()]).unwrap();
        // tails of period 2 written out explicitly are not accepted as period 1
        assert!(matches!(
            DeBruijnGraph::new(&p, &Budget::default()),
            Err(Error::NotNormalForm(_))
        ));
        let r0 = NuCaSpec::uniform(LocalRule::parse(q2, "01").unwrap());
        assert!(DeBruijnGraph::new(&r0, &Budget::default()).is_err());
    }
}
