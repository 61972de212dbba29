//! Direct-limit module descriptors and the window-based semi-decision for
//! dual integrability.
//!
//! A direct system M_i of simple finite-rank modules has an integrable
//! algebraic dual exactly when, for every fixed probe rank i, only
//! finitely many non-isomorphic rank-i simples map into the limit. The
//! artifact probes |types_at(i, j)| over a finite window of rank pairs
//! and certifies the three built-in families against their closed-form
//! type counts: stable labels and spinor systems stay bounded, the
//! symmetric-power tower S^j(V_j) grows without bound (j+1 types at
//! stage j). Free-form explicit descriptors get an honest window verdict
//! that may remain `Inconclusive`.
//!
//! Spinor modules never receive character-level weights: the restriction
//! rule (each even-orthogonal spinor restricts to the sum of both spinors
//! one rank down) is hard-coded on the two symbolic atoms.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::branching::Restrictor;
use crate::char_oracle::{min_rank, truncate, RankedWeight};
use crate::error::{Error, Result};
use crate::weights::{Family, ThetaWeight};

/// The two spinor atoms of an even orthogonal algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpinorKind {
    S1,
    S2,
}

impl fmt::Display for SpinorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinorKind::S1 => f.write_str("S1"),
            SpinorKind::S2 => f.write_str("S2"),
        }
    }
}

/// An eventually-constant sequence over {S1, S2}, indexed from rank 3
/// (the first even orthogonal rank the spinor tower uses): finitely
/// representable as an explicit prefix plus the constant tail value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinorSequence {
    pub prefix: Vec<SpinorKind>,
    pub tail: SpinorKind,
}

impl SpinorSequence {
    pub fn constant(tail: SpinorKind) -> Self {
        SpinorSequence {
            prefix: Vec::new(),
            tail,
        }
    }

    /// Entry t_i for i ≥ 3.
    pub fn at(&self, i: u32) -> Result<SpinorKind> {
        if i < 3 {
            return Err(Error::InadmissibleRank(format!(
                "spinor sequences start at rank 3, got {i}"
            )));
        }
        let idx = (i - 3) as usize;
        Ok(self.prefix.get(idx).copied().unwrap_or(self.tail))
    }
}

/// Two spinor towers give the same limit module exactly when the tails of
/// their defining sequences coincide — decidable from the finite
/// representations since both are eventually constant.
pub fn spinor_equiv(a: &SpinorSequence, b: &SpinorSequence) -> bool {
    a.tail == b.tail
}

/// A rank-i isotypic label: an honest dominant weight, or one of the two
/// symbolic spinor atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum IsoLabel {
    Weight(RankedWeight),
    Spinor(SpinorKind),
}

impl fmt::Display for IsoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoLabel::Weight(w) => write!(f, "{w}"),
            IsoLabel::Spinor(s) => write!(f, "{s}"),
        }
    }
}

/// A locally simple (or explicitly staged) direct system descriptor.
#[derive(Debug, Clone)]
pub enum DirectSystem {
    /// The constant tower of truncations of a stable label.
    Stable(ThetaWeight),
    /// The symmetric-power tower S^j(V_j) over sl.
    SymPower,
    /// A spinor tower over even orthogonal algebras.
    Spinor(SpinorSequence),
    /// Explicit stages: rank → multiset of rank-level weights.
    Explicit {
        family: Family,
        stages: BTreeMap<u32, Vec<(RankedWeight, BigUint)>>,
    },
}

impl DirectSystem {
    pub fn explicit(
        family: Family,
        stages: Vec<(u32, Vec<(RankedWeight, BigUint)>)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut prev: Option<u32> = None;
        for (rank, stage) in stages {
            if let Some(p) = prev {
                if rank <= p {
                    return Err(Error::InvalidWeight(
                        "explicit descriptor ranks must be strictly increasing".into(),
                    ));
                }
            }
            for (w, _) in &stage {
                if w.family() != family {
                    return Err(Error::FamilyMismatch {
                        left: w.family(),
                        right: family,
                    });
                }
                if w.rank() != rank {
                    return Err(Error::RankMismatch {
                        left: w.rank(),
                        right: rank,
                    });
                }
            }
            prev = Some(rank);
            map.insert(rank, stage);
        }
        Ok(DirectSystem::Explicit {
            family,
            stages: map,
        })
    }
}

/// The distinct rank-i isotypic labels of the stage at rank j, restricted
/// through the branching chain (symbolically for spinor towers).
pub fn types_at(desc: &DirectSystem, i: u32, j: u32) -> Result<BTreeSet<IsoLabel>> {
    if i >= j || i == 0 {
        return Err(Error::InadmissibleRank(format!(
            "type probe needs 0 < i < j, got ({i},{j})"
        )));
    }
    let mut restrictor = Restrictor::new();
    types_at_cached(desc, i, j, &mut restrictor)
}

fn types_at_cached(
    desc: &DirectSystem,
    i: u32,
    j: u32,
    restrictor: &mut Restrictor,
) -> Result<BTreeSet<IsoLabel>> {
    match desc {
        DirectSystem::Stable(lambda) => {
            if i < min_rank(lambda) {
                return Err(Error::InadmissibleRank(format!(
                    "{lambda} does not truncate to rank {i}"
                )));
            }
            let top = truncate(lambda, j)?;
            Ok(restrictor
                .restrict(&top, i)?
                .into_keys()
                .map(IsoLabel::Weight)
                .collect())
        }
        DirectSystem::SymPower => {
            let mut coords = vec![0i64; j as usize];
            coords[0] = j as i64;
            let top = RankedWeight::new(Family::Sl, coords)?;
            Ok(restrictor
                .restrict(&top, i)?
                .into_keys()
                .map(IsoLabel::Weight)
                .collect())
        }
        DirectSystem::Spinor(seq) => {
            seq.at(j)?; // validates j ≥ 3
            if i < 3 {
                return Err(Error::InadmissibleRank(format!(
                    "spinor towers live over ranks ≥ 3, got {i}"
                )));
            }
            // S^k_j restricts to S^1_{j-1} ⊕ S^2_{j-1}, so below the top
            // stage both atoms are always present.
            Ok([
                IsoLabel::Spinor(SpinorKind::S1),
                IsoLabel::Spinor(SpinorKind::S2),
            ]
            .into_iter()
            .collect())
        }
        DirectSystem::Explicit { stages, .. } => {
            let stage = stages.get(&j).ok_or(Error::DescriptorUndefined(j))?;
            let mut out = BTreeSet::new();
            for (w, _) in stage {
                for label in restrictor.restrict(w, i)?.into_keys() {
                    out.insert(IsoLabel::Weight(label));
                }
            }
            Ok(out)
        }
    }
}

/// Verdict of the dual-integrability probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Finitely many isotypic types at every probe rank: the dual stays
    /// integrable.
    BoundedTypes,
    /// The number of types grows with the stage: the dual is not
    /// integrable.
    GrowingTypes,
    /// The window does not decide.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::BoundedTypes => f.write_str("BoundedTypes"),
            Verdict::GrowingTypes => f.write_str("GrowingTypes"),
            Verdict::Inconclusive => f.write_str("Inconclusive"),
        }
    }
}

#[derive(PartialEq)]
enum SeriesShape {
    Constant,
    StrictlyIncreasing,
    Mixed,
    TooShort,
}

fn classify(counts: &[usize]) -> SeriesShape {
    if counts.len() < 2 {
        return SeriesShape::TooShort;
    }
    if counts.windows(2).all(|w| w[0] == w[1]) {
        return SeriesShape::Constant;
    }
    if counts.windows(2).all(|w| w[0] < w[1]) {
        return SeriesShape::StrictlyIncreasing;
    }
    SeriesShape::Mixed
}

/// Window-based semi-decision of the dual-integrability criterion. The
/// built-in families are additionally certified against their closed-form
/// type counts, so their verdicts never flip when the window grows;
/// explicit descriptors are judged from the window alone and skip probe
/// pairs whose stage is undefined.
pub fn dual_integrable_verdict(desc: &DirectSystem, window: &[(u32, u32)]) -> Result<Verdict> {
    if window.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let mut restrictor = Restrictor::new();
    // counts grouped by probe rank i, ordered by stage rank j
    let mut groups: BTreeMap<u32, BTreeMap<u32, usize>> = BTreeMap::new();
    for &(i, j) in window {
        match types_at_cached(desc, i, j, &mut restrictor) {
            Ok(types) => {
                groups.entry(i).or_default().insert(j, types.len());
            }
            Err(Error::DescriptorUndefined(_))
                if matches!(desc, DirectSystem::Explicit { .. }) =>
            {
                continue;
            }
            Err(e) => return Err(e),
        }
    }

    match desc {
        DirectSystem::Stable(lambda) => {
            // closed form: the type set stabilizes once j − i ≥ |λ| and is
            // non-decreasing before that
            for (i, by_j) in &groups {
                let counts: Vec<(u32, usize)> = by_j.iter().map(|(j, c)| (*j, *c)).collect();
                for w in counts.windows(2) {
                    if w[1].1 < w[0].1 {
                        return Err(Error::Internal(format!(
                            "stable tower type count dropped at i={i}: {counts:?}"
                        )));
                    }
                }
                for &(j, c) in &counts {
                    if j >= i + lambda.norm() {
                        let stable = counts
                            .iter()
                            .filter(|(jj, _)| *jj >= i + lambda.norm())
                            .map(|(_, cc)| *cc)
                            .max()
                            .expect("nonempty");
                        if c != stable {
                            return Err(Error::Internal(format!(
                                "stable tower types not constant at i={i}, j={j}"
                            )));
                        }
                    }
                }
            }
            Ok(Verdict::BoundedTypes)
        }
        DirectSystem::Spinor(_) => {
            for by_j in groups.values() {
                if by_j.values().any(|&c| c != 2) {
                    return Err(Error::Internal(
                        "spinor towers always expose exactly the two atoms".into(),
                    ));
                }
            }
            Ok(Verdict::BoundedTypes)
        }
        DirectSystem::SymPower => {
            for (i, by_j) in &groups {
                for (j, c) in by_j {
                    if *c != (*j as usize) + 1 {
                        return Err(Error::Internal(format!(
                            "S^j(V_j) must expose j+1 types, got {c} at ({i},{j})"
                        )));
                    }
                }
            }
            Ok(Verdict::GrowingTypes)
        }
        DirectSystem::Explicit { .. } => {
            let mut shapes = Vec::new();
            for by_j in groups.values() {
                let counts: Vec<usize> = by_j.values().copied().collect();
                shapes.push(classify(&counts));
            }
            let decisive: Vec<&SeriesShape> = shapes
                .iter()
                .filter(|s| !matches!(s, SeriesShape::TooShort))
                .collect();
            if decisive.is_empty() {
                return Ok(Verdict::Inconclusive);
            }
            if decisive.iter().all(|s| matches!(s, SeriesShape::Constant)) {
                Ok(Verdict::BoundedTypes)
            } else if decisive
                .iter()
                .all(|s| matches!(s, SeriesShape::StrictlyIncreasing))
            {
                Ok(Verdict::GrowingTypes)
            } else {
                Ok(Verdict::Inconclusive)
            }
        }
    }
}

/// All probe pairs a ≤ i < j ≤ b.
pub fn window_pairs(a: u32, b: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for i in a..=b {
        for j in (i + 1)..=b {
            out.push((i, j));
        }
    }
    out
}

/// Verifies that the canonical constituent of V_λ occurs with multiplicity
/// exactly one across every probed rank pair: restrict_mult(λ, i, λ, j) = 1
/// for all i < j drawn from `ranks`. Ranks below the minimal admissible
/// truncation rank are rejected.
pub fn mult_one_check(lambda: &ThetaWeight, ranks: &[u32]) -> Result<bool> {
    let min = min_rank(lambda);
    let mut sorted: Vec<u32> = ranks.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &r in &sorted {
        if r < min {
            return Err(Error::InadmissibleRank(format!(
                "{lambda} does not truncate to rank {r} (minimal rank {min})"
            )));
        }
    }
    let mut restrictor = Restrictor::new();
    for (a, &i) in sorted.iter().enumerate() {
        for &j in &sorted[a + 1..] {
            if !restrictor.restrict_mult(lambda, i, lambda, j)?.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{enumerate_theta, Partition};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn sl(plus: &[u32], minus: &[u32]) -> ThetaWeight {
        ThetaWeight::sl(p(plus), p(minus))
    }

    fn rw(family: Family, coords: &[i64]) -> RankedWeight {
        RankedWeight::new(family, coords.to_vec()).unwrap()
    }

    #[test]
    fn types_of_a_stable_tower() {
        let desc = DirectSystem::Stable(sl(&[1], &[]));
        let types = types_at(&desc, 2, 5).unwrap();
        let expect: BTreeSet<IsoLabel> = [
            IsoLabel::Weight(rw(Family::Sl, &[1, 0])),
            IsoLabel::Weight(rw(Family::Sl, &[0, 0])),
        ]
        .into_iter()
        .collect();
        assert_eq!(types, expect);
    }

    #[test]
    fn types_of_the_symmetric_power_tower() {
        let types = types_at(&DirectSystem::SymPower, 2, 5).unwrap();
        assert_eq!(types.len(), 6);
        for k in 0..=5i64 {
            assert!(types.contains(&IsoLabel::Weight(rw(Family::Sl, &[k, 0]))));
        }
    }

    #[test]
    fn sympower_type_count_closed_form() {
        for i in 2..=4u32 {
            for j in (i + 1)..=8 {
                let types = types_at(&DirectSystem::SymPower, i, j).unwrap();
                assert_eq!(types.len(), j as usize + 1, "S^{j}(V_{j}) at rank {i}");
            }
        }
    }

    #[test]
    fn types_of_a_spinor_tower() {
        let desc = DirectSystem::Spinor(SpinorSequence::constant(SpinorKind::S1));
        let types = types_at(&desc, 3, 6).unwrap();
        assert_eq!(types.len(), 2);
        assert!(types.contains(&IsoLabel::Spinor(SpinorKind::S1)));
        assert!(types.contains(&IsoLabel::Spinor(SpinorKind::S2)));
        assert!(types_at(&desc, 2, 6).is_err());
    }

    #[test]
    fn types_probe_rejects_bad_ranks() {
        let desc = DirectSystem::Stable(sl(&[1], &[]));
        assert!(types_at(&desc, 5, 5).is_err());
        assert!(types_at(&desc, 0, 3).is_err());
    }

    #[test]
    fn explicit_descriptors_know_their_stages() {
        let desc = DirectSystem::explicit(
            Family::Sl,
            vec![
                (3, vec![(rw(Family::Sl, &[1, 0, 0]), BigUint::one())]),
                (5, vec![(rw(Family::Sl, &[1, 0, 0, 0, 0]), BigUint::one())]),
            ],
        )
        .unwrap();
        assert_eq!(types_at(&desc, 2, 5).unwrap().len(), 2);
        assert!(matches!(
            types_at(&desc, 2, 4),
            Err(Error::DescriptorUndefined(4))
        ));
        assert!(DirectSystem::explicit(
            Family::Sl,
            vec![
                (5, vec![(rw(Family::Sl, &[1, 0, 0, 0, 0]), BigUint::one())]),
                (3, vec![(rw(Family::Sl, &[1, 0, 0]), BigUint::one())]),
            ],
        )
        .is_err());
    }

    #[test]
    fn verdict_examples() {
        let window = window_pairs(3, 8);
        assert_eq!(
            dual_integrable_verdict(&DirectSystem::SymPower, &window).unwrap(),
            Verdict::GrowingTypes
        );
        let spinor = DirectSystem::Spinor(SpinorSequence::constant(SpinorKind::S2));
        assert_eq!(
            dual_integrable_verdict(&spinor, &window).unwrap(),
            Verdict::BoundedTypes
        );
        let stable = DirectSystem::Stable(sl(&[1], &[1]));
        assert_eq!(
            dual_integrable_verdict(&stable, &window).unwrap(),
            Verdict::BoundedTypes
        );
        assert!(dual_integrable_verdict(&stable, &[]).is_err());
    }

    #[test]
    fn verdicts_are_monotone_under_window_growth() {
        let systems = [
            DirectSystem::SymPower,
            DirectSystem::Spinor(SpinorSequence::constant(SpinorKind::S1)),
            DirectSystem::Stable(sl(&[2], &[])),
            DirectSystem::Stable(
                ThetaWeight::single(Family::O, p(&[1, 1])).unwrap(),
            ),
        ];
        for desc in &systems {
            let small = dual_integrable_verdict(desc, &window_pairs(3, 6)).unwrap();
            let large = dual_integrable_verdict(desc, &window_pairs(3, 9)).unwrap();
            assert_eq!(small, large, "verdict must not flip");
        }
    }

    #[test]
    fn explicit_window_classification() {
        // a stable-looking explicit tower: V at ranks 4..7
        let stages: Vec<(u32, Vec<(RankedWeight, BigUint)>)> = (4..=7)
            .map(|r| {
                let mut coords = vec![0i64; r as usize];
                coords[0] = 1;
                (r, vec![(rw(Family::Sl, &coords), BigUint::one())])
            })
            .collect();
        let desc = DirectSystem::explicit(Family::Sl, stages).unwrap();
        assert_eq!(
            dual_integrable_verdict(&desc, &window_pairs(2, 7)).unwrap(),
            Verdict::BoundedTypes
        );
        // a single usable stage cannot decide anything
        let desc = DirectSystem::explicit(
            Family::Sl,
            vec![(6, vec![(rw(Family::Sl, &[1, 0, 0, 0, 0, 0]), BigUint::one())])],
        )
        .unwrap();
        assert_eq!(
            dual_integrable_verdict(&desc, &window_pairs(2, 6)).unwrap(),
            Verdict::Inconclusive
        );
    }

    #[test]
    fn spinor_equivalence_truth_table() {
        let all1 = SpinorSequence::constant(SpinorKind::S1);
        let all2 = SpinorSequence::constant(SpinorKind::S2);
        let mixed = SpinorSequence {
            prefix: vec![SpinorKind::S2, SpinorKind::S2, SpinorKind::S1],
            tail: SpinorKind::S1,
        };
        assert!(spinor_equiv(&all1, &all1));
        assert!(spinor_equiv(&all1, &mixed));
        assert!(!spinor_equiv(&all1, &all2));
    }

    #[test]
    fn spinor_equiv_is_an_equivalence_relation() {
        let seqs = [
            SpinorSequence::constant(SpinorKind::S1),
            SpinorSequence::constant(SpinorKind::S2),
            SpinorSequence {
                prefix: vec![SpinorKind::S2],
                tail: SpinorKind::S1,
            },
            SpinorSequence {
                prefix: vec![SpinorKind::S1, SpinorKind::S1],
                tail: SpinorKind::S2,
            },
        ];
        for a in &seqs {
            assert!(spinor_equiv(a, a));
            for b in &seqs {
                assert_eq!(spinor_equiv(a, b), spinor_equiv(b, a));
                for c in &seqs {
                    if spinor_equiv(a, b) && spinor_equiv(b, c) {
                        assert!(spinor_equiv(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn spinor_sequence_indexing() {
        let mixed = SpinorSequence {
            prefix: vec![SpinorKind::S2, SpinorKind::S1],
            tail: SpinorKind::S1,
        };
        assert_eq!(mixed.at(3).unwrap(), SpinorKind::S2);
        assert_eq!(mixed.at(4).unwrap(), SpinorKind::S1);
        assert_eq!(mixed.at(100).unwrap(), SpinorKind::S1);
        assert!(mixed.at(2).is_err());
    }

    #[test]
    fn mult_one_examples() {
        assert!(mult_one_check(&sl(&[1], &[]), &[2, 3, 4, 5, 6]).unwrap());
        assert!(mult_one_check(&sl(&[1], &[1]), &[3, 4, 5, 6, 7]).unwrap());
        assert!(mult_one_check(&ThetaWeight::zero(Family::O), &[1, 2, 3]).unwrap());
        assert!(mult_one_check(&sl(&[2, 1], &[]), &[2, 5]).is_err());
    }

    #[test]
    fn stable_towers_stabilize_in_both_ranks() {
        for family in Family::ALL {
            for lam in enumerate_theta(family, 3) {
                let desc = DirectSystem::Stable(lam.clone());
                let lo = min_rank(&lam).max(2);
                // j-stabilized: counts constant once j − i ≥ |λ|
                for i in lo..=4 {
                    let mut stabilized = None;
                    for j in (i + lam.norm().max(1))..=9 {
                        let c = types_at(&desc, i, j).unwrap().len();
                        match stabilized {
                            None => stabilized = Some(c),
                            Some(prev) => assert_eq!(prev, c, "{lam} ({family}) i={i} j={j}"),
                        }
                    }
                }
                // i-stabilized: with j − i held at |λ|+1, counts settle in i
                let gap = lam.norm() + 1;
                let mut seen = None;
                for i in (lo + lam.norm())..=7 {
                    let c = types_at(&desc, i, i + gap).unwrap().len();
                    match seen {
                        None => seen = Some(c),
                        Some(prev) => assert_eq!(prev, c, "{lam} ({family}) i={i}"),
                    }
                }
            }
        }
    }
}
