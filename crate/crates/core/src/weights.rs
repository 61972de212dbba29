//! Partitions and the label set Θ of simple tensor modules.
//!
//! A simple tensor module is labelled by a pair of partitions for sl(∞)
//! (highest weights stabilize to `a_1 ε_1 + … + a_k ε_k + b_1 ε_{n-k} + … + b_k ε_n`
//! with the `a`s weakly decreasing nonnegative and the `b`s weakly increasing
//! nonpositive) and by a single partition for o(∞) and sp(∞). The norm |λ|
//! is the total box count, i.e. the sum of the absolute values of the
//! stabilized coefficients.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The three finitary families. `Sl` is realized at finite rank n as the
/// rank-n general linear algebra, `O` as the odd orthogonal algebra
/// so(2n+1), `Sp` as sp(2n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Sl,
    O,
    Sp,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Sl, Family::O, Family::Sp];

    pub fn name(self) -> &'static str {
        match self {
            Family::Sl => "sl",
            Family::O => "o",
            Family::Sp => "sp",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(Family::Sl),
            "o" => Ok(Family::O),
            "sp" => Ok(Family::Sp),
            other => Err(Error::Parse(format!(
                "unknown family {other:?}; expected sl, o or sp"
            ))),
        }
    }
}

/// A Young diagram: a weakly decreasing sequence of positive integers.
/// The empty sequence is the unique zero partition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts must be weakly decreasing, got {parts:?}"
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of boxes.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise diagram containment: `other` fits inside `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len()
            && other.0.iter().zip(self.0.iter()).all(|(o, s)| o <= s)
    }

    /// All partitions of exactly `n`, parts bounded by `max_part`, in
    /// lexicographically increasing order.
    fn of_size(n: u32, max_part: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=n.min(max_part) {
            for rest in Partition::of_size(n - first, first) {
                let mut p = Vec::with_capacity(rest.len() + 1);
                p.push(first);
                p.extend(rest);
                out.push(p);
            }
        }
        out.sort();
        out
    }

    /// All partitions with at most `bound` boxes, ordered by size then
    /// lexicographically.
    pub fn up_to(bound: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        for n in 0..=bound {
            for parts in Partition::of_size(n, n.max(1)) {
                out.push(Partition(parts));
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts "2,1" style part lists; "-", "" and "0" all denote the empty
    /// partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad partition part {tok:?} in {s:?}")))?;
            parts.push(p);
        }
        Partition::new(parts)
    }
}

/// A stable simple-tensor-module label: λ ∈ Θ. For `Sl` both diagrams may
/// be nonempty; for `O` and `Sp` only `plus` is used and `minus` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaWeight {
    family: Family,
    plus: Partition,
    minus: Partition,
}

impl ThetaWeight {
    pub fn sl(plus: Partition, minus: Partition) -> Self {
        ThetaWeight {
            family: Family::Sl,
            plus,
            minus,
        }
    }

    /// A one-partition label for the `O` or `Sp` family.
    pub fn single(family: Family, part: Partition) -> Result<Self> {
        if family == Family::Sl {
            return Err(Error::InvalidWeight(
                "sl labels carry two partitions; use ThetaWeight::sl".into(),
            ));
        }
        Ok(ThetaWeight {
            family,
            plus: part,
            minus: Partition::empty(),
        })
    }

    /// The trivial label of the given family.
    pub fn zero(family: Family) -> Self {
        ThetaWeight {
            family,
            plus: Partition::empty(),
            minus: Partition::empty(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn plus(&self) -> &Partition {
        &self.plus
    }

    pub fn minus(&self) -> &Partition {
        &self.minus
    }

    /// The single partition of an `O`/`Sp` label.
    pub fn part(&self) -> &Partition {
        debug_assert!(self.family != Family::Sl || self.minus.is_empty());
        &self.plus
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    /// |λ|: the total box count over both diagrams.
    pub fn norm(&self) -> u32 {
        self.plus.size() + self.minus.size()
    }

    /// The label of the unique simple submodule of the algebraic dual:
    /// swaps the two diagrams for sl, and is the identity for o and sp
    /// (where the natural and conatural modules are isomorphic).
    pub fn star(&self) -> ThetaWeight {
        match self.family {
            Family::Sl => ThetaWeight {
                family: Family::Sl,
                plus: self.minus.clone(),
                minus: self.plus.clone(),
            },
            _ => self.clone(),
        }
    }

    /// Componentwise diagram containment, `other ⊆ self`.
    pub fn contains(&self, other: &ThetaWeight) -> bool {
        self.family == other.family
            && self.plus.contains(&other.plus)
            && self.minus.contains(&other.minus)
    }

    /// Parses the textual weight syntax: `"2,1|1"` for sl (plus parts, bar,
    /// minus parts; an empty side written "-", "" or "0"), `"2,1"` for o/sp.
    pub fn parse(family: Family, s: &str) -> Result<Self> {
        let s = s.trim();
        match family {
            Family::Sl => {
                let (p, m) = s.split_once('|').ok_or_else(|| {
                    Error::Parse(format!(
                        "sl weight {s:?} must be written plus|minus, e.g. \"2,1|1\" or \"-|-\""
                    ))
                })?;
                if m.contains('|') {
                    return Err(Error::Parse(format!("too many '|' in sl weight {s:?}")));
                }
                Ok(ThetaWeight::sl(p.parse()?, m.parse()?))
            }
            fam => {
                if s.contains('|') {
                    return Err(Error::Parse(format!(
                        "{fam} weights carry a single partition, got {s:?}"
                    )));
                }
                ThetaWeight::single(fam, s.parse()?)
            }
        }
    }
}

impl fmt::Display for ThetaWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Sl => write!(f, "{}|{}", self.plus, self.minus),
            _ => write!(f, "{}", self.plus),
        }
    }
}

// Canonical order: family, then norm, then lexicographically on the
// (plus, minus) part sequences. This is the enumeration and output order
// everywhere.
impl Ord for ThetaWeight {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.family
            .cmp(&other.family)
            .then_with(|| self.norm().cmp(&other.norm()))
            .then_with(|| self.plus.cmp(&other.plus))
            .then_with(|| self.minus.cmp(&other.minus))
    }
}

impl PartialOrd for ThetaWeight {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Every λ ∈ Θ with |λ| ≤ k, in the canonical order.
pub fn enumerate_theta(family: Family, k: u32) -> Vec<ThetaWeight> {
    let mut out = Vec::new();
    match family {
        Family::Sl => {
            let parts = Partition::up_to(k);
            for plus in &parts {
                for minus in &parts {
                    if plus.size() + minus.size() <= k {
                        out.push(ThetaWeight::sl(plus.clone(), minus.clone()));
                    }
                }
            }
        }
        fam => {
            for part in Partition::up_to(k) {
                out.push(ThetaWeight::single(fam, part).expect("non-sl family"));
            }
        }
    }
    out.sort();
    out
}
