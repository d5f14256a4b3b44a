//! Block packing to radius 1 with period-1 tails, and embedding a νCA into a CA.

use crate::budget::{pow_sat, Budget};
use crate::config::{lcm, EpConfig};
use crate::error::{Error, Result};
use crate::rules::{LocalRule, NuCaSpec};
use crate::word::{decode, encode, Alphabet, Symbol, Word};

/// Bijection between `A^b` and the packed alphabet `A^b` read as integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PackedAlphabetMap {
    block: usize,
    source: Alphabet,
    packed: Alphabet,
}

impl PackedAlphabetMap {
    pub fn new(source: Alphabet, block: usize) -> Result<Self> {
        assert!(block >= 1, "block size must be positive");
        let size = pow_sat(source.size(), block);
        if size > Alphabet::MAX_SIZE as u128 {
            return Err(Error::budget("packed alphabet size", size, Alphabet::MAX_SIZE as u128));
        }
        Ok(PackedAlphabetMap {
            block,
            source,
            packed: Alphabet::new(size as usize)?,
        })
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn source(&self) -> Alphabet {
        self.source
    }

    pub fn packed(&self) -> Alphabet {
        self.packed
    }

    pub fn encode(&self, block: &[Symbol]) -> Symbol {
        debug_assert_eq!(block.len(), self.block);
        encode(self.source.size(), block) as Symbol
    }

    pub fn decode(&self, s: Symbol) -> Word {
        Word::new(decode(self.source.size(), self.block, s as usize))
    }

    /// `y_i = encode(x_{[ib, (i+1)b)})`.
    pub fn pack_config(&self, x: &EpConfig) -> EpConfig {
        let b = self.block as i64;
        if b == 1 {
            return x.normalize();
        }
        let lo = x.offset().div_euclid(b);
        let hi = (x.end() + b - 1).div_euclid(b);
        let pl = (lcm(x.left().len(), self.block) / self.block) as i64;
        let pr = (lcm(x.right().len(), self.block) / self.block) as i64;
        let cells = |a: i64, c: i64| -> Word { (a..c).map(|i| self.encode(&x.window(i * b, i * b + b - 1))).collect() };
        EpConfig::new(cells(lo - pl, lo), cells(lo, hi), lo, cells(hi, hi + pr))
            .expect("tails are nonempty")
            .normalize()
    }

    /// Inverse of [`pack_config`](Self::pack_config).
    pub fn unpack_config(&self, y: &EpConfig) -> EpConfig {
        if self.block == 1 {
            return y.normalize();
        }
        let expand = |w: &Word| -> Word { w.iter().flat_map(|&s| self.decode(s).into_vec()).collect() };
        EpConfig::new(
            expand(y.left()),
            expand(y.center()),
            y.offset() * self.block as i64,
            expand(y.right()),
        )
        .expect("tails are nonempty")
        .normalize()
    }
}

/// Block size `lcm(pL, pR) * ceil(r / lcm(pL, pR))` (at least one lcm block).
pub fn pack_block_size(spec: &NuCaSpec) -> usize {
    let l = lcm(spec.left_period(), spec.right_period());
    l * spec.radius().div_ceil(l).max(1)
}

/// An equivalent spec with radius 1 and period-1 tails, conjugate to `spec`
/// through the returned map.
pub fn pack_spec(spec: &NuCaSpec, budget: &Budget) -> Result<(PackedAlphabetMap, NuCaSpec)> {
    let b = pack_block_size(spec);
    let map = PackedAlphabetMap::new(spec.alphabet(), b)?;
    if b == 1 {
        let packed = if spec.radius() == 1 {
            spec.clone()
        } else {
            NuCaSpec::with_radius(
                1,
                spec.k(),
                spec.window().to_vec(),
                spec.left_tail().to_vec(),
                spec.right_tail().to_vec(),
            )?
        };
        return Ok((map, packed));
    }
    let qp = map.packed().size();
    budget.check_table("packed rule table", pow_sat(qp, 3))?;

    let r = spec.radius();
    let bk = b as i64;
    let k2 = (spec.k() + 1).div_ceil(b);
    let rule_for_block = |i: i64| -> Result<LocalRule> {
        let q = spec.alphabet().size();
        let rules: Vec<&LocalRule> = (0..bk).map(|j| spec.rule_at(i * bk + j)).collect();
        let table = (0..qp * qp * qp)
            .map(|code| {
                // three packed symbols read as one base-q word of length 3b
                let uvw = decode(q, 3 * b, code);
                let out: Vec<Symbol> = (0..b).map(|j| rules[j].eval(&uvw[b + j - r..=b + j + r])).collect();
                encode(q, &out) as Symbol
            })
            .collect();
        LocalRule::new(map.packed(), 1, table)
    };
    let window = (-(k2 as i64)..=k2 as i64)
        .map(rule_for_block)
        .collect::<Result<Vec<_>>>()?;
    let left = rule_for_block(-(k2 as i64) - 1)?;
    let right = rule_for_block(k2 as i64 + 1)?;
    Ok((map, NuCaSpec::new(k2, window, vec![left], vec![right])?))
}

/// A CA on `A x {0..n}` whose restriction to correctly annotated
/// configurations is the νCA; `n` counts the distinct rules of the spec.
#[derive(Clone, Debug)]
pub struct Embedding {
    spec: NuCaSpec,
    rules: Vec<LocalRule>,
    ca: LocalRule,
}

/// Symbol `(a, j)` of the product alphabet is encoded as `j * q + a`.
pub fn embed_in_ca(spec: &NuCaSpec, budget: &Budget) -> Result<Embedding> {
    let rules = spec.distinct_rules();
    let q = spec.alphabet().size();
    let n = rules.len();
    let product = Alphabet::new(q * n)?;
    let d = 2 * spec.radius() + 1;
    let r = spec.radius();
    let ca = LocalRule::from_fn_budgeted(product, r, budget, |nb| {
        let letters: Vec<Symbol> = nb.iter().map(|&s| s % q as Symbol).collect();
        let j = nb[r] / q as Symbol;
        debug_assert_eq!(letters.len(), d);
        j * q as Symbol + rules[j as usize].eval(&letters)
    })?;
    Ok(Embedding {
        spec: spec.clone(),
        rules,
        ca,
    })
}

impl Embedding {
    pub fn ca(&self) -> &LocalRule {
        &self.ca
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    fn index_at(&self, i: i64) -> Symbol {
        let rule = self.spec.rule_at(i);
        self.rules.iter().position(|r| r == rule).expect("rule listed") as Symbol
    }

    /// `(x_i, index of the rule at i)`.
    pub fn annotate(&self, x: &EpConfig) -> EpConfig {
        let q = self.spec.alphabet().size() as Symbol;
        let k = self.spec.k() as i64;
        let lo = x.offset().min(-k);
        let hi = x.end().max(k + 1);
        let pl = lcm(x.left().len(), self.spec.left_period()) as i64;
        let pr = lcm(x.right().len(), self.spec.right_period()) as i64;
        let cells = |a: i64, b: i64| -> Word { (a..b).map(|i| self.index_at(i) * q + x.sample(i)).collect() };
        EpConfig::new(cells(lo - pl, lo), cells(lo, hi), lo, cells(hi, hi + pr))
            .expect("tails are nonempty")
            .normalize()
    }

    /// First track.
    pub fn project(&self, y: &EpConfig) -> EpConfig {
        let q = self.spec.alphabet().size() as Symbol;
        y.map_symbols(|s| s % q).normalize()
    }
}
