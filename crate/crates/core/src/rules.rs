//! Local rules as lookup tables and the finitary description of a νCA.

use std::fmt;

use crate::budget::{pow_sat, Budget};
use crate::error::{Error, Result};
use crate::word::{decode, encode, parse_symbols, render_symbols, Alphabet, Symbol, Word};

/// A local rule `f: A^(2r+1) -> A` stored as a table indexed by the
/// leftmost-most-significant code of the neighborhood.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalRule {
    alphabet: Alphabet,
    radius: usize,
    table: Vec<Symbol>,
}

impl fmt::Debug for LocalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LocalRule(q={}, r={}, {})",
            self.alphabet.size(),
            self.radius,
            self.literal()
        )
    }
}

impl LocalRule {
    pub fn new(alphabet: Alphabet, radius: usize, table: Vec<Symbol>) -> Result<Self> {
        let expected = alphabet.count_words(2 * radius + 1).ok_or(Error::BadTableLength {
            len: table.len(),
            q: alphabet.size(),
        })?;
        if table.len() != expected {
            return Err(Error::BadTableLength {
                len: table.len(),
                q: alphabet.size(),
            });
        }
        alphabet.check(&table)?;
        Ok(LocalRule {
            alphabet,
            radius,
            table,
        })
    }

    /// Tabulates `f` over every neighborhood, subject to the default table budget.
    pub fn from_fn(alphabet: Alphabet, radius: usize, f: impl Fn(&[Symbol]) -> Symbol) -> Result<Self> {
        Self::from_fn_budgeted(alphabet, radius, &Budget::default(), f)
    }

    pub fn from_fn_budgeted(
        alphabet: Alphabet,
        radius: usize,
        budget: &Budget,
        f: impl Fn(&[Symbol]) -> Symbol,
    ) -> Result<Self> {
        let d = 2 * radius + 1;
        budget.check_table("rule table", pow_sat(alphabet.size(), d))?;
        let q = alphabet.size();
        let n = alphabet.count_words(d).expect("checked by budget");
        let mut nb = vec![0 as Symbol; d];
        let table = (0..n)
            .map(|code| {
                let mut c = code;
                for slot in nb.iter_mut().rev() {
                    *slot = (c % q) as Symbol;
                    c /= q;
                }
                f(&nb)
            })
            .collect();
        LocalRule::new(alphabet, radius, table)
    }

    pub fn identity(alphabet: Alphabet, radius: usize) -> Self {
        Self::from_fn(alphabet, radius, |nb| nb[radius]).expect("identity table")
    }

    pub fn constant(alphabet: Alphabet, radius: usize, value: Symbol) -> Self {
        assert!(alphabet.contains(value));
        Self::from_fn(alphabet, radius, |_| value).expect("constant table")
    }

    /// `f(x_{-r}..x_r) = x_{offset}` for `-r <= offset <= r`.
    pub fn copy(alphabet: Alphabet, radius: usize, offset: i64) -> Self {
        let idx = (radius as i64 + offset) as usize;
        assert!(idx <= 2 * radius);
        Self::from_fn(alphabet, radius, |nb| nb[idx]).expect("copy table")
    }

    /// Binary radius-1 rule with the given Wolfram number.
    pub fn elementary(number: u8) -> Self {
        let table = (0..8).map(|i| ((number >> i) & 1) as Symbol).collect();
        LocalRule::new(Alphabet::new(2).unwrap(), 1, table).unwrap()
    }

    /// Parses a table literal; the radius is inferred from its length.
    pub fn parse(alphabet: Alphabet, literal: &str) -> Result<Self> {
        let table = parse_symbols(literal)?;
        let q = alphabet.size();
        let mut len = q;
        let mut radius = 0;
        while len < table.len() {
            len = len.saturating_mul(q * q);
            radius += 1;
        }
        if len != table.len() {
            return Err(Error::BadTableLength { len: table.len(), q });
        }
        LocalRule::new(alphabet, radius, table)
    }

    /// Table in ascending neighborhood order.
    pub fn literal(&self) -> String {
        if self.alphabet.size() <= 36 {
            render_symbols(&self.table)
        } else {
            self.table.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn diameter(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    pub fn apply(&self, neighborhood: &[Symbol]) -> Result<Symbol> {
        if neighborhood.len() != self.diameter() {
            return Err(Error::LengthMismatch {
                expected: self.diameter(),
                got: neighborhood.len(),
            });
        }
        self.alphabet.check(neighborhood)?;
        Ok(self.eval(neighborhood))
    }

    /// Unchecked [`apply`](Self::apply).
    #[inline]
    pub fn eval(&self, neighborhood: &[Symbol]) -> Symbol {
        debug_assert_eq!(neighborhood.len(), self.diameter());
        self.table[encode(self.alphabet.size(), neighborhood)]
    }

    #[inline]
    pub fn lookup(&self, code: usize) -> Symbol {
        self.table[code]
    }

    /// `f(u)`: the word of length `|u| - 2r`, or the empty word when `|u| <= 2r`.
    pub fn extend_word(&self, u: &[Symbol]) -> Word {
        u.windows(self.diameter()).map(|w| self.eval(w)).collect()
    }

    /// The iterated rule `f^n` of radius `n r`.
    pub fn self_compose(&self, n: usize, budget: &Budget) -> Result<LocalRule> {
        assert!(n >= 1, "self_compose needs n >= 1");
        if n == 1 {
            return Ok(self.clone());
        }
        let prev = self.self_compose(n - 1, budget)?;
        let q = self.alphabet.size();
        let d = 2 * n * self.radius + 1;
        budget.check_table("self-composed rule table", pow_sat(q, d))?;
        let count = self.alphabet.count_words(d).expect("checked by budget");
        let table = (0..count)
            .map(|code| prev.eval(&self.extend_word(&decode(q, d, code))))
            .collect();
        LocalRule::new(self.alphabet, n * self.radius, table)
    }

    /// The same map seen as a rule of a larger radius.
    pub fn padded(&self, radius: usize) -> Result<LocalRule> {
        if radius < self.radius {
            return Err(Error::RuleMismatch(format!(
                "cannot pad radius {} down to {radius}",
                self.radius
            )));
        }
        if radius == self.radius {
            return Ok(self.clone());
        }
        let extra = radius - self.radius;
        let d = self.diameter();
        LocalRule::from_fn(self.alphabet, radius, |nb| self.eval(&nb[extra..extra + d]))
    }
}

/// Class of a νCA in the chain CA ⊂ dνCA ⊂ pνCA ⊂ rνCA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum NuCaClass {
    UniformCA,
    DefaultPerturbed,
    PeriodicallyPerturbed,
    RadiusUniform,
}

impl NuCaClass {
    /// Whether every member of `self` is also a member of `other`.
    pub fn within(self, other: NuCaClass) -> bool {
        self <= other
    }
}

/// Finitary description of a radius-uniform νCA.
///
/// Position `i` uses `window[i + k]` for `|i| <= k`, `right[i mod pR]` for
/// `i > k` and `left[i mod pL]` for `i < -k`, with `mod` taken into
/// `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuCaSpec {
    alphabet: Alphabet,
    radius: usize,
    k: usize,
    window: Vec<LocalRule>,
    left: Vec<LocalRule>,
    right: Vec<LocalRule>,
}

impl NuCaSpec {
    /// Builds a spec, padding every rule to the largest radius present.
    pub fn new(k: usize, window: Vec<LocalRule>, left: Vec<LocalRule>, right: Vec<LocalRule>) -> Result<Self> {
        let radius = window
            .iter()
            .chain(&left)
            .chain(&right)
            .map(LocalRule::radius)
            .max()
            .unwrap_or(0);
        Self::with_radius(radius, k, window, left, right)
    }

    pub fn with_radius(
        radius: usize,
        k: usize,
        window: Vec<LocalRule>,
        left: Vec<LocalRule>,
        right: Vec<LocalRule>,
    ) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::EmptyTail);
        }
        if window.len() != 2 * k + 1 {
            return Err(Error::LengthMismatch {
                expected: 2 * k + 1,
                got: window.len(),
            });
        }
        let alphabet = window[0].alphabet();
        let pad = |rules: Vec<LocalRule>| -> Result<Vec<LocalRule>> {
            rules
                .into_iter()
                .map(|r| {
                    if r.alphabet() != alphabet {
                        return Err(Error::RuleMismatch(format!(
                            "alphabet {} vs {}",
                            r.alphabet().size(),
                            alphabet.size()
                        )));
                    }
                    r.padded(radius)
                })
                .collect()
        };
        Ok(NuCaSpec {
            alphabet,
            radius,
            k,
            window: pad(window)?,
            left: pad(left)?,
            right: pad(right)?,
        })
    }

    /// The CA with local rule `f` everywhere.
    pub fn uniform(f: LocalRule) -> Self {
        NuCaSpec::new(0, vec![f.clone()], vec![f.clone()], vec![f]).expect("uniform spec")
    }

    /// dνCA with `default` outside `[-k, k]` and `window` inside.
    pub fn default_perturbed(default: LocalRule, window: Vec<LocalRule>) -> Result<Self> {
        if window.len().is_multiple_of(2) {
            return Err(Error::LengthMismatch {
                expected: window.len() + 1,
                got: window.len(),
            });
        }
        let k = window.len() / 2;
        NuCaSpec::new(k, window, vec![default.clone()], vec![default])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn window(&self) -> &[LocalRule] {
        &self.window
    }

    pub fn left_tail(&self) -> &[LocalRule] {
        &self.left
    }

    pub fn right_tail(&self) -> &[LocalRule] {
        &self.right
    }

    pub fn left_period(&self) -> usize {
        self.left.len()
    }

    pub fn right_period(&self) -> usize {
        self.right.len()
    }

    pub fn rule_at(&self, i: i64) -> &LocalRule {
        let k = self.k as i64;
        if i > k {
            &self.right[i.rem_euclid(self.right.len() as i64) as usize]
        } else if i < -k {
            &self.left[i.rem_euclid(self.left.len() as i64) as usize]
        } else {
            &self.window[(i + k) as usize]
        }
    }

    /// `H(x)_i` given the neighborhood `x_{[i-r, i+r]}`.
    #[inline]
    pub fn eval_at(&self, i: i64, neighborhood: &[Symbol]) -> Symbol {
        self.rule_at(i).eval(neighborhood)
    }

    /// Equivalent spec whose tails are their shortest cyclic roots.
    pub fn with_reduced_tails(&self) -> NuCaSpec {
        NuCaSpec {
            left: cyclic_root(&self.left),
            right: cyclic_root(&self.right),
            ..self.clone()
        }
    }

    /// The single default rule when both tails reduce to the same rule.
    pub fn default_rule(&self) -> Option<&LocalRule> {
        let l = cyclic_root(&self.left);
        let r = cyclic_root(&self.right);
        (l.len() == 1 && r.len() == 1 && l[0] == r[0]).then(|| &self.right[0])
    }

    pub fn class_of(&self) -> NuCaClass {
        let first = &self.window[0];
        if self
            .window
            .iter()
            .chain(&self.left)
            .chain(&self.right)
            .all(|r| r == first)
        {
            NuCaClass::UniformCA
        } else if self.default_rule().is_some() {
            NuCaClass::DefaultPerturbed
        } else {
            NuCaClass::PeriodicallyPerturbed
        }
    }

    /// Whether both tails apply `f` on runs of `n` consecutive cells
    /// arbitrarily far from the center.
    pub fn is_n_compatible(&self, f: &LocalRule, n: usize) -> bool {
        max_cyclic_run(&self.left, f) >= n && max_cyclic_run(&self.right, f) >= n
    }

    /// Distinct rules in first-occurrence order over window, left tail, right tail.
    pub fn distinct_rules(&self) -> Vec<LocalRule> {
        let mut out: Vec<LocalRule> = Vec::new();
        for r in self.window.iter().chain(&self.left).chain(&self.right) {
            if !out.contains(r) {
                out.push(r.clone());
            }
        }
        out
    }
}

/// Longest run of `f` in the cyclic sequence `rules`; `usize::MAX` when every entry is `f`.
fn max_cyclic_run(rules: &[LocalRule], f: &LocalRule) -> usize {
    if rules.iter().all(|r| r == f) {
        return usize::MAX;
    }
    let mut best = 0;
    let mut run = 0;
    for r in rules.iter().chain(rules) {
        if r == f {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

fn cyclic_root(rules: &[LocalRule]) -> Vec<LocalRule> {
    let n = rules.len();
    let p = (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| rules[i] == rules[i - p]))
        .unwrap_or(n);
    rules[..p].to_vec()
}

impl fmt::Display for NuCaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |rs: &[LocalRule]| rs.iter().map(|r| r.literal()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "q={} r={} k={} window=[{}] left=[{}] right=[{}]",
            self.alphabet.size(),
            self.radius,
            self.k,
            list(&self.window),
            list(&self.left),
            list(&self.right)
        )
    }
}
