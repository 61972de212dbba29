//! The partial order on Θ, maximal-chain lengths, the layer sets Θᵏ(λ),
//! and the Ext¹ predicate with its symbolic dimension.
//!
//! μ ≤ λ holds when V_μ at a sufficiently large finite rank occurs in the
//! restriction of V_λ from a higher rank. The "sufficiently large"
//! quantifier is realized by a fixed stable probe (verified separately by
//! the stabilization tests); a wider probe window re-runs the comparison
//! on diagonally shifted rank pairs and insists the verdicts agree.
//!
//! The branching-defined order coincides with componentwise diagram
//! containment on every range the test suite enumerates. That coincidence
//! is kept as a tested conjecture: `ThetaWeight::contains` is never used
//! to answer an order query, only to cross-examine the probe.

use std::fmt;

use num_traits::Zero;

use crate::branching::Restrictor;
use crate::char_oracle::stable_rank;
use crate::duals_inj::Cardinality;
use crate::error::{Error, Result};
use crate::weights::{enumerate_theta, Family, ThetaWeight};

/// Probe configuration: `stable_margin` raises the base rank above the
/// stable threshold, `window` is the number of diagonally shifted rank
/// pairs whose verdicts must agree (1 = the single documented probe).
#[derive(Debug, Clone, Copy)]
pub struct Probe {
    pub stable_margin: u32,
    pub window: u32,
}

impl Default for Probe {
    fn default() -> Self {
        Probe {
            stable_margin: 0,
            window: 1,
        }
    }
}

impl Probe {
    fn pairs(&self, mu: &ThetaWeight, lambda: &ThetaWeight) -> Vec<(u32, u32)> {
        let family = lambda.family();
        let base = stable_rank(family, mu.norm() + lambda.norm(), self.stable_margin);
        (0..self.window.max(1))
            .map(|d| {
                let i = base + d;
                (i, i + lambda.norm().max(1))
            })
            .collect()
    }
}

/// μ ≤ λ in the branching-defined order on Θ.
pub fn leq(mu: &ThetaWeight, lambda: &ThetaWeight, probe: &Probe) -> Result<bool> {
    leq_cached(mu, lambda, probe, &mut Restrictor::new())
}

fn leq_cached(
    mu: &ThetaWeight,
    lambda: &ThetaWeight,
    probe: &Probe,
    restrictor: &mut Restrictor,
) -> Result<bool> {
    if mu.family() != lambda.family() {
        return Err(Error::FamilyMismatch {
            left: mu.family(),
            right: lambda.family(),
        });
    }
    let mut verdict = None;
    for (i, j) in probe.pairs(mu, lambda) {
        let positive = !restrictor.restrict_mult(mu, i, lambda, j)?.is_zero();
        match verdict {
            None => verdict = Some(positive),
            Some(prev) if prev != positive => {
                return Err(Error::UnstableProbe(format!(
                    "{mu} ≤ {lambda} flips at probe ranks ({i},{j})"
                )))
            }
            _ => {}
        }
    }
    Ok(verdict.expect("window is at least 1"))
}

/// Result of a maximal-chain length query. Incomparability is a distinct
/// value, never conflated with a numeric length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainLength {
    /// Number of chain elements inclusive; adjacent μ < λ gives 2 and
    /// chain_length(λ, λ) = 1.
    Length(u32),
    Incomparable,
}

impl fmt::Display for ChainLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainLength::Length(k) => write!(f, "{k}"),
            ChainLength::Incomparable => f.write_str("incomparable"),
        }
    }
}

/// A snapshot of the order on all labels of norm ≤ bound, with the full
/// comparison matrix precomputed through one shared branching cache.
pub struct ThetaPoset {
    family: Family,
    elements: Vec<ThetaWeight>,
    below: Vec<bool>, // below[a * n + b] ⟺ elements[a] ≤ elements[b]
}

impl ThetaPoset {
    pub fn build(family: Family, norm_bound: u32, probe: &Probe) -> Result<Self> {
        let elements = enumerate_theta(family, norm_bound);
        let n = elements.len();
        let mut below = vec![false; n * n];
        let mut restrictor = Restrictor::new();
        for (a, mu) in elements.iter().enumerate() {
            for (b, lambda) in elements.iter().enumerate() {
                below[a * n + b] = leq_cached(mu, lambda, probe, &mut restrictor)?;
            }
        }
        Ok(ThetaPoset {
            family,
            elements,
            below,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn elements(&self) -> &[ThetaWeight] {
        &self.elements
    }

    fn index_of(&self, w: &ThetaWeight) -> Result<usize> {
        if w.family() != self.family {
            return Err(Error::FamilyMismatch {
                left: w.family(),
                right: self.family,
            });
        }
        self.elements
            .iter()
            .position(|e| e == w)
            .ok_or_else(|| Error::InvalidWeight(format!("{w} exceeds the poset norm bound")))
    }

    pub fn leq(&self, mu: &ThetaWeight, lambda: &ThetaWeight) -> Result<bool> {
        let (a, b) = (self.index_of(mu)?, self.index_of(lambda)?);
        Ok(self.below[a * self.elements.len() + b])
    }

    fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.below[a * self.elements.len() + b]
    }

    /// Longest-chain lengths l(λ, ·) for every element below λ, by dynamic
    /// programming downward from λ; entry for λ itself is 1.
    fn chain_lengths_from(&self, lambda_idx: usize) -> Vec<Option<u32>> {
        let n = self.elements.len();
        let mut len: Vec<Option<u32>> = vec![None; n];
        len[lambda_idx] = Some(1);
        // canonical order is norm-ascending, so walk indices downward from λ
        for a in (0..=lambda_idx).rev() {
            if a == lambda_idx || !self.leq_idx(a, lambda_idx) {
                continue;
            }
            // strict relations always lower the norm, hence the canonical
            // index, so every element above `a` is already solved
            let best = len[(a + 1)..=lambda_idx]
                .iter()
                .enumerate()
                .filter(|(off, _)| self.leq_idx(a, a + 1 + off))
                .filter_map(|(_, l)| *l)
                .max()
                .unwrap_or(0);
            len[a] = Some(best + 1);
        }
        len
    }

    /// Number of elements in a longest chain μ < … < λ inclusive.
    pub fn chain_length(&self, lambda: &ThetaWeight, mu: &ThetaWeight) -> Result<ChainLength> {
        let (b, a) = (self.index_of(lambda)?, self.index_of(mu)?);
        if a == b {
            return Ok(ChainLength::Length(1));
        }
        if !self.leq_idx(a, b) {
            return Ok(ChainLength::Incomparable);
        }
        Ok(ChainLength::Length(
            self.chain_lengths_from(b)[a].expect("comparable element has a chain"),
        ))
    }

    /// Θᵏ(λ) = {μ < λ | l(λ,μ) ≥ k+1}. Note the ≥: the layer label sets
    /// nest rather than partition, so Θᵏ(λ) ⊇ Θᵏ⁺¹(λ).
    pub fn theta_k(&self, lambda: &ThetaWeight, k: u32) -> Result<Vec<ThetaWeight>> {
        if k == 0 {
            return Err(Error::InadmissibleRank("theta_k needs k ≥ 1".into()));
        }
        let b = self.index_of(lambda)?;
        let lens = self.chain_lengths_from(b);
        let mut out = Vec::new();
        for (a, len) in lens.iter().enumerate() {
            if a == b {
                continue;
            }
            if let Some(l) = len {
                if *l > k {
                    out.push(self.elements[a].clone());
                }
            }
        }
        Ok(out)
    }

    /// The Hasse diagram in DOT format, one node per label, one edge per
    /// cover relation, drawn upward.
    pub fn hasse_dot(&self) -> String {
        let n = self.elements.len();
        let mut s = String::from("digraph theta {\n  rankdir=BT;\n");
        for e in &self.elements {
            s.push_str(&format!("  \"{e}\";\n"));
        }
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq_idx(a, b) {
                    continue;
                }
                let covered = (0..n).any(|c| {
                    c != a && c != b && self.leq_idx(a, c) && self.leq_idx(c, b)
                });
                if !covered {
                    s.push_str(&format!(
                        "  \"{}\" -> \"{}\";\n",
                        self.elements[a], self.elements[b]
                    ));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// One-shot chain length; builds a poset over norm ≤ max(|λ|, |μ|).
pub fn chain_length(
    lambda: &ThetaWeight,
    mu: &ThetaWeight,
    probe: &Probe,
) -> Result<ChainLength> {
    if lambda.family() != mu.family() {
        return Err(Error::FamilyMismatch {
            left: lambda.family(),
            right: mu.family(),
        });
    }
    let poset = ThetaPoset::build(lambda.family(), lambda.norm().max(mu.norm()), probe)?;
    poset.chain_length(lambda, mu)
}

/// One-shot Θᵏ(λ); builds a poset over norm ≤ |λ|.
pub fn theta_k(lambda: &ThetaWeight, k: u32, probe: &Probe) -> Result<Vec<ThetaWeight>> {
    let poset = ThetaPoset::build(lambda.family(), lambda.norm(), probe)?;
    poset.theta_k(lambda, k)
}

/// Ext¹(V_μ, V_λ) ≠ 0 exactly when μ < λ strictly.
pub fn ext1_nonzero(mu: &ThetaWeight, lambda: &ThetaWeight, probe: &Probe) -> Result<bool> {
    Ok(mu != lambda && leq(mu, lambda, probe)?)
}

/// dim Ext¹(V_μ, V_λ): the cardinality of 2^ℤ when nonzero.
pub fn ext1_dim(mu: &ThetaWeight, lambda: &ThetaWeight, probe: &Probe) -> Result<Cardinality> {
    Ok(if ext1_nonzero(mu, lambda, probe)? {
        Cardinality::beth(1)
    } else {
        Cardinality::finite(0u32)
    })
}
