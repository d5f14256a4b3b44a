//! JSON spec files.
//!
//! ```json
//! {"alphabet": 2, "radius": 1, "k": 0, "window": ["01010101"], "left": ["00001111"], "right": ["00110011"]}
//! ```
//!
//! Rules are table literals in ascending neighborhood order. `radius` is
//! optional and defaults to the largest radius among the rules. Without
//! `window` the spec has `k = 0` and its window rule is the common value of
//! `left[0]` and `right[0]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rules::{LocalRule, NuCaSpec};
use crate::word::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub alphabet: Alphabet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Vec<String>>,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl SpecFile {
    pub fn from_spec(spec: &NuCaSpec) -> SpecFile {
        let lits = |rs: &[LocalRule]| rs.iter().map(LocalRule::literal).collect();
        SpecFile {
            alphabet: spec.alphabet(),
            radius: Some(spec.radius()),
            k: Some(spec.k()),
            window: Some(lits(spec.window())),
            left: lits(spec.left_tail()),
            right: lits(spec.right_tail()),
        }
    }

    pub fn to_spec(&self) -> Result<NuCaSpec> {
        let q = self.alphabet;
        let parse =
            |lits: &[String]| -> Result<Vec<LocalRule>> { lits.iter().map(|l| LocalRule::parse(q, l)).collect() };
        let left = parse(&self.left)?;
        let right = parse(&self.right)?;
        let (k, window) = match &self.window {
            Some(w) => {
                let window = parse(w)?;
                let k = match self.k {
                    Some(k) => k,
                    None if window.len() % 2 == 1 => window.len() / 2,
                    None => return Err(Error::Parse(format!("window has even length {}", window.len()))),
                };
                (k, window)
            }
            None => {
                if self.k.is_some_and(|k| k != 0) {
                    return Err(Error::Parse("nonzero k requires an explicit window".into()));
                }
                let (l, r) = match (left.first(), right.first()) {
                    (Some(l), Some(r)) => (l, r),
                    _ => return Err(Error::EmptyTail),
                };
                if l != r {
                    return Err(Error::RuleMismatch(
                        "without a window, left[0] and right[0] must agree".into(),
                    ));
                }
                (0, vec![r.clone()])
            }
        };
        let natural = window
            .iter()
            .chain(&left)
            .chain(&right)
            .map(LocalRule::radius)
            .max()
            .unwrap_or(0);
        let radius = self.radius.unwrap_or(natural);
        NuCaSpec::with_radius(radius, k, window, left, right)
    }
}

pub fn parse_spec(json: &str) -> Result<NuCaSpec> {
    serde_json::from_str::<SpecFile>(json)?.to_spec()
}

pub fn spec_to_json(spec: &NuCaSpec) -> String {
    serde_json::to_string_pretty(&SpecFile::from_spec(spec)).expect("spec serializes")
}
