//! Strongly blocking words, blocking refutation, equicontinuity of CA and the
//! classification of νCA built on them.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use serde::Serialize;

use crate::budget::{pow_sat, Budget};
use crate::config::{lcm, EpConfig};
use crate::engine::{orbit_analyze, step, OrbitReport};
use crate::error::{Error, Result};
use crate::random::{random_config, random_rule, ConfigShape};
use crate::rules::{LocalRule, NuCaSpec};
use crate::word::{decode, encode, Word};

/// Evidence that `word` is strongly `width`-blocking.
///
/// Model: every cell of the word updates by the rule, while the `r` cells
/// beyond each end take arbitrary values at every step. `reachable_sizes[t]`
/// is the number of words the block can be in at time `t`; the sequence of
/// reachable sets enters a cycle of length `period` after `preperiod` steps.
/// Every reachable word at time `t` reads `column[t]` on
/// `[offset, offset + width)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingCertificate {
    pub word: Word,
    pub width: usize,
    pub offset: usize,
    pub preperiod: usize,
    pub period: usize,
    pub column: Vec<Word>,
    pub reachable_sizes: Vec<usize>,
}

impl BlockingCertificate {
    /// The column value at any time `t`.
    pub fn column_at(&self, t: usize) -> &Word {
        let idx = if t < self.preperiod {
            t
        } else {
            self.preperiod + (t - self.preperiod) % self.period
        };
        &self.column[idx]
    }
}

/// Sequence of reachable sets (as sorted word codes) until the first repeat.
fn reachable_sets(f: &LocalRule, u: &Word, budget: &Budget) -> Result<(Vec<Vec<usize>>, usize)> {
    let q = f.alphabet().size();
    let r = f.radius();
    let len = u.len();
    budget.check_enumeration("reachable block words", pow_sat(q, len))?;
    let contexts = q.pow((2 * r) as u32);
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![encode(q, u)];
    let mut buf = vec![0; len + 2 * r];
    loop {
        if let Some(&first) = seen.get(&current) {
            return Ok((sets, first));
        }
        seen.insert(current.clone(), sets.len());
        let mut next = BTreeSet::new();
        for &code in &current {
            buf[r..r + len].copy_from_slice(&decode(q, len, code));
            for ctx in 0..contexts {
                let outside = decode(q, 2 * r, ctx);
                buf[..r].copy_from_slice(&outside[..r]);
                buf[r + len..].copy_from_slice(&outside[r..]);
                next.insert(encode(q, &f.extend_word(&buf)));
            }
        }
        budget.check_states("reachable block words", next.len())?;
        sets.push(std::mem::replace(&mut current, next.into_iter().collect()));
    }
}

/// Certifies `u` as strongly `s`-blocking for `f` at the least possible offset.
pub fn certify_strongly_blocking(
    f: &LocalRule,
    u: &Word,
    s: usize,
    budget: &Budget,
) -> Result<Option<BlockingCertificate>> {
    f.alphabet().check(u)?;
    if s == 0 || s > u.len() {
        return Ok(None);
    }
    let q = f.alphabet().size();
    let (sets, first) = reachable_sets(f, u, budget)?;
    for d in 0..=u.len() - s {
        let mut column = Vec::with_capacity(sets.len());
        let single = sets.iter().all(|set| {
            let proj: BTreeSet<Vec<u16>> = set.iter().map(|&c| decode(q, u.len(), c)[d..d + s].to_vec()).collect();
            if proj.len() == 1 {
                column.push(Word::new(proj.into_iter().next().expect("one element")));
                true
            } else {
                false
            }
        });
        if single {
            return Ok(Some(BlockingCertificate {
                word: u.clone(),
                width: s,
                offset: d,
                preperiod: first,
                period: sets.len() - first,
                column,
                reachable_sizes: sets.iter().map(Vec::len).collect(),
            }));
        }
    }
    Ok(None)
}

/// First certified word of length `1..=max_len` in length-lexicographic order.
pub fn find_strongly_blocking(
    f: &LocalRule,
    s: usize,
    max_len: usize,
    budget: &Budget,
) -> Result<Option<BlockingCertificate>> {
    for len in s.max(1)..=max_len {
        for u in f.alphabet().words(len) {
            if let Some(cert) = certify_strongly_blocking(f, &u, s, budget)? {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// Two finite contexts of `word` whose evolutions differ on a column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnSplit {
    pub offset: usize,
    /// Word surrounded by its context; the word starts at index `padding`.
    pub first: Word,
    pub second: Word,
    pub time: usize,
}

/// Witness that `word` is not `width`-blocking at any offset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingRefutation {
    pub word: Word,
    pub width: usize,
    pub padding: usize,
    pub splits: Vec<ColumnSplit>,
}

/// Searches pairs of configurations in the cylinder of `u` that agree on `u`
/// and split every column of width `s` within the horizon.
///
/// Contexts of `m` cells on each side are simulated for
/// `min(horizon, m / r)` steps, during which the cells of `u` are exact.
pub fn refute_blocking(
    f: &LocalRule,
    u: &Word,
    s: usize,
    horizon: usize,
    padding: usize,
    budget: &Budget,
) -> Result<Option<BlockingRefutation>> {
    f.alphabet().check(u)?;
    if s == 0 || s > u.len() {
        return Ok(None);
    }
    let q = f.alphabet().size();
    let r = f.radius();
    let steps = padding.checked_div(r).map_or(horizon, |m| horizon.min(m));
    budget.check_enumeration("refutation contexts", pow_sat(q, 2 * padding))?;
    let contexts = q.pow((2 * padding) as u32);
    let offsets = u.len() - s + 1;

    // per offset: (reference trace, first splitting context, time)
    let trace_of = |ctx: usize| -> (Word, Vec<Word>) {
        let outside = decode(q, 2 * padding, ctx);
        let mut w: Vec<u16> = outside[..padding].to_vec();
        w.extend_from_slice(u);
        w.extend_from_slice(&outside[padding..]);
        let start = Word::new(w);
        let mut rows = vec![start.clone()];
        let mut cur = start.clone();
        for t in 1..=steps {
            cur = f.extend_word(&cur);
            // after t steps the word starts at padding - t r
            let from = padding - t * r;
            rows.push(Word::from(&cur[from..from + u.len()]));
        }
        rows[0] = Word::from(&start[padding..padding + u.len()]);
        (start, rows)
    };
    let (ref_word, ref_rows) = trace_of(0);
    let mut splits: Vec<Option<ColumnSplit>> = vec![None; offsets];
    for ctx in 1..contexts {
        if splits.iter().all(Option::is_some) {
            break;
        }
        let (word, rows) = trace_of(ctx);
        for d in 0..offsets {
            if splits[d].is_some() {
                continue;
            }
            if let Some(t) = (0..rows.len()).find(|&t| rows[t][d..d + s] != ref_rows[t][d..d + s]) {
                splits[d] = Some(ColumnSplit {
                    offset: d,
                    first: ref_word.clone(),
                    second: word.clone(),
                    time: t,
                });
            }
        }
    }
    if splits.iter().all(Option::is_some) {
        Ok(Some(BlockingRefutation {
            word: u.clone(),
            width: s,
            padding,
            splits: splits.into_iter().flatten().collect(),
        }))
    } else {
        Ok(None)
    }
}

/// Least `(q, p)` by `q + p`, then `q`, with `F^(q+p) = F^q`, checked on
/// every word of length `2(q+p)r + 1`.
pub fn equicontinuity_search(
    f: &LocalRule,
    max_q: usize,
    max_p: usize,
    budget: &Budget,
) -> Result<Option<(usize, usize)>> {
    let r = f.radius();
    let mut candidates: Vec<(usize, usize)> = (0..=max_q).flat_map(|q| (1..=max_p).map(move |p| (q, p))).collect();
    candidates.sort_by_key(|&(q, p)| (q + p, q));
    for (qq, p) in candidates {
        let len = 2 * (qq + p) * r + 1;
        budget.check_enumeration("equicontinuity words", pow_sat(f.alphabet().size(), len))?;
        let holds = f.alphabet().words(len).all(|u| {
            let mut long = u.clone();
            for _ in 0..qq + p {
                long = f.extend_word(&long);
            }
            let mut short = Word::from(&u[p * r..p * r + 2 * qq * r + 1]);
            for _ in 0..qq {
                short = f.extend_word(&short);
            }
            long == short
        });
        if holds {
            return Ok(Some((qq, p)));
        }
    }
    Ok(None)
}

/// Search limits for [`classify_ca`] and [`classify_nuca`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyBounds {
    pub max_word_len: usize,
    pub max_q: usize,
    pub max_p: usize,
    pub horizon: usize,
    pub padding: usize,
}

impl Default for ClassifyBounds {
    fn default() -> Self {
        ClassifyBounds {
            max_word_len: 4,
            max_q: 3,
            max_p: 3,
            horizon: 4,
            padding: 4,
        }
    }
}

/// Largest number of words checked when confirming that every block of the
/// equicontinuity length is strongly blocking.
const BLOCK_CHECK_LIMIT: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CaClassification {
    /// `F^(preperiod + period) = F^preperiod`; every word of length
    /// `block_len` is strongly r-blocking (`blocks_certified` is `None` when
    /// there were too many words to check).
    Equicontinuous {
        preperiod: usize,
        period: usize,
        block_len: usize,
        blocks_certified: Option<bool>,
    },
    AlmostEquicontinuousCert {
        certificate: BlockingCertificate,
    },
    /// No certified word up to `max_len`; `refuted` of the `total`
    /// candidates were shown not to be r-blocking within `horizon`.
    NoBlockingWordUpTo {
        max_len: usize,
        horizon: usize,
        refuted: usize,
        total: usize,
    },
}

pub fn classify_ca(f: &LocalRule, bounds: &ClassifyBounds, budget: &Budget) -> Result<CaClassification> {
    let r = f.radius();
    if let Some((qq, p)) = equicontinuity_search(f, bounds.max_q, bounds.max_p, budget)? {
        let block_len = (2 * p + 2 * qq + 1) * r.max(1);
        let blocks_certified = match f.alphabet().count_words(block_len) {
            Some(n) if n <= BLOCK_CHECK_LIMIT => {
                let mut all = true;
                for u in f.alphabet().words(block_len) {
                    if certify_strongly_blocking(f, &u, r.max(1), budget)?.is_none() {
                        all = false;
                        break;
                    }
                }
                Some(all)
            }
            _ => None,
        };
        return Ok(CaClassification::Equicontinuous {
            preperiod: qq,
            period: p,
            block_len,
            blocks_certified,
        });
    }
    let s = r.max(1);
    if let Some(certificate) = find_strongly_blocking(f, s, bounds.max_word_len, budget)? {
        return Ok(CaClassification::AlmostEquicontinuousCert { certificate });
    }
    let mut refuted = 0;
    let mut total = 0;
    for len in s..=bounds.max_word_len {
        for u in f.alphabet().words(len) {
            total += 1;
            if refute_blocking(f, &u, s, bounds.horizon, bounds.padding, budget)?.is_some() {
                refuted += 1;
            }
        }
    }
    Ok(CaClassification::NoBlockingWordUpTo {
        max_len: bounds.max_word_len,
        horizon: bounds.horizon,
        refuted,
        total,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NuCaClassification {
    /// The default rule is equicontinuous and the spec is compatible with it
    /// on runs of `block_len` cells.
    Equicontinuous {
        default: CaClassification,
        block_len: usize,
    },
    /// The default rule has a strongly blocking word and the spec is
    /// compatible with it on runs of the word's length.
    AlmostEquicontinuous {
        certificate: BlockingCertificate,
    },
    Unknown {
        reason: String,
    },
}

pub fn classify_nuca(spec: &NuCaSpec, bounds: &ClassifyBounds, budget: &Budget) -> Result<NuCaClassification> {
    let Some(f) = spec.default_rule() else {
        return Ok(NuCaClassification::Unknown {
            reason: "the tails do not share a single default rule".into(),
        });
    };
    let ca = classify_ca(f, bounds, budget)?;
    if let CaClassification::Equicontinuous { block_len, .. } = ca {
        if spec.is_n_compatible(f, block_len) {
            return Ok(NuCaClassification::Equicontinuous { default: ca, block_len });
        }
    }
    let certificate = match &ca {
        CaClassification::AlmostEquicontinuousCert { certificate } => Some(certificate.clone()),
        CaClassification::Equicontinuous { .. } => {
            find_strongly_blocking(f, f.radius().max(1), bounds.max_word_len, budget)?
        }
        CaClassification::NoBlockingWordUpTo { .. } => None,
    };
    match certificate {
        Some(c) if spec.is_n_compatible(f, c.word.len()) => {
            Ok(NuCaClassification::AlmostEquicontinuous { certificate: c })
        }
        Some(c) => Ok(NuCaClassification::Unknown {
            reason: format!("spec is not {}-compatible with its default rule", c.word.len()),
        }),
        None => Ok(NuCaClassification::Unknown {
            reason: format!(
                "default rule has no certified strongly blocking word up to length {}",
                bounds.max_word_len
            ),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum UltimatePeriodicity {
    /// Every sampled orbit satisfies `H^(preperiod + period)(x) = H^preperiod(x)`.
    Verified {
        preperiod: usize,
        period: usize,
        samples: usize,
    },
    Inconclusive {
        reason: String,
    },
}

/// Sampling limits for [`detect_global_ultimate_periodicity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleBudget {
    pub samples: usize,
    pub max_steps: usize,
    pub max_center_width: usize,
    pub config: ConfigShape,
}

/// Sampled evidence that a dνCA with an equicontinuous default rule is
/// ultimately periodic: the common `(q', p')` of all sampled orbits, checked
/// exactly on each sample.
pub fn detect_global_ultimate_periodicity<R: Rng + ?Sized>(
    spec: &NuCaSpec,
    bounds: &ClassifyBounds,
    sample: &SampleBudget,
    rng: &mut R,
    budget: &Budget,
) -> Result<UltimatePeriodicity> {
    let inconclusive = |reason: &str| Ok(UltimatePeriodicity::Inconclusive { reason: reason.into() });
    let Some(f) = spec.default_rule() else {
        return inconclusive("no single default rule");
    };
    if !matches!(classify_ca(f, bounds, budget)?, CaClassification::Equicontinuous { .. }) {
        return inconclusive("default rule not shown equicontinuous");
    }
    let xs: Vec<EpConfig> = (0..sample.samples).map(|_| random_config(rng, sample.config)).collect();
    let mut pre = 0;
    let mut per = 1;
    for x in &xs {
        match orbit_analyze(spec, x, sample.max_steps, sample.max_center_width)? {
            OrbitReport::UltimatelyPeriodic { preperiod, period } => {
                pre = pre.max(preperiod);
                per = lcm(per, period);
            }
            OrbitReport::BudgetExceeded { .. } => return inconclusive("a sampled orbit exceeded the step budget"),
        }
    }
    for x in &xs {
        let mut a = x.clone();
        for _ in 0..pre {
            a = step(spec, &a)?;
        }
        let mut b = a.clone();
        for _ in 0..per {
            b = step(spec, &b)?;
        }
        if !a.equals(&b) {
            return Err(Error::RuleMismatch(format!(
                "orbit of {x} is not ({pre}, {per})-periodic"
            )));
        }
    }
    Ok(UltimatePeriodicity::Verified {
        preperiod: pre,
        period: per,
        samples: xs.len(),
    })
}

/// Counts column mismatches of a certificate against direct simulation.
///
/// Each trial draws a νCA that applies `f` on the cells of the word (placed
/// at `[0, |u|)`) and random rules of the same radius elsewhere, and a set of
/// configurations in the cylinder of the word; columns are compared with the
/// certificate for `preperiod + 2 period` steps.
pub fn simulate_certificate<R: Rng + ?Sized>(
    f: &LocalRule,
    cert: &BlockingCertificate,
    specs: usize,
    configs: usize,
    rng: &mut R,
) -> Result<usize> {
    let q = f.alphabet();
    let r = f.radius();
    let u = &cert.word;
    let len = u.len() as i64;
    let k = len as usize + 2;
    let steps = cert.preperiod + 2 * cert.period;
    let shape = ConfigShape {
        alphabet: q,
        max_period: 3,
        max_center: 2 * k + 4,
        max_offset: k as i64 + 2,
    };
    let mut mismatches = 0;
    for _ in 0..specs {
        let window: Vec<LocalRule> = (-(k as i64)..=k as i64)
            .map(|i| {
                if (0..len).contains(&i) {
                    f.clone()
                } else {
                    random_rule(rng, q, r)
                }
            })
            .collect();
        let tail = |rng: &mut R| {
            (0..rng.gen_range(1..=2))
                .map(|_| random_rule(rng, q, r))
                .collect::<Vec<_>>()
        };
        let (left, right) = (tail(rng), tail(rng));
        let spec = NuCaSpec::with_radius(r, k, window, left, right)?;
        for _ in 0..configs {
            let base = random_config(rng, shape);
            let mut center = base.window(-(k as i64) - 3, -1).into_vec();
            center.extend_from_slice(u);
            center.extend(base.window(len, len + k as i64 + 3).iter());
            let mut x = EpConfig::new(
                base.left().clone(),
                Word::new(center),
                -(k as i64) - 3,
                base.right().clone(),
            )?;
            for t in 0..=steps {
                let got = x.window(cert.offset as i64, (cert.offset + cert.width) as i64 - 1);
                if &got != cert.column_at(t) {
                    mismatches += 1;
                    break;
                }
                x = step(&spec, &x)?;
            }
        }
    }
    Ok(mismatches)
}
