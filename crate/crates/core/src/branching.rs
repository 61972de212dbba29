//! One-step and composite classical branching rules.
//!
//! One rank step means gl(n) ⊃ gl(n-1) for `Sl`, so(2n+1) ⊃ so(2n-1) for
//! `O`, and sp(2n) ⊃ sp(2n-2) for `Sp`. The gl step is the multiplicity-free
//! interlacing rule. The orthogonal and symplectic steps are the classical
//! double-interlacing descriptions: the multiplicity of ν is the number of
//! intermediate sequences interlacing both λ and ν, with each intermediate
//! counted twice in the orthogonal case when its last entry is positive
//! (the two so(2n) weight signs that collapse onto the same magnitude).
//!
//! This module never touches character arithmetic, so its agreement with
//! char_oracle restriction is an independent cross-check.

use std::collections::BTreeMap;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::char_oracle::{truncate, RankedWeight};
use crate::error::{Error, Result};
use crate::weights::{Family, ThetaWeight};

pub type WeightMultiset = BTreeMap<RankedWeight, BigUint>;

fn add(acc: &mut WeightMultiset, w: RankedWeight, mult: BigUint) {
    *acc.entry(w).or_insert_with(BigUint::zero) += mult;
}

fn interlacings(upper: &[i64], lower_floor: Option<i64>) -> Vec<Vec<i64>> {
    // all sequences y with upper[0] ≥ y[0] ≥ upper[1] ≥ y[1] ≥ …;
    // y has length upper.len()-1, or upper.len() when a floor for the
    // trailing entry is supplied
    let n = upper.len();
    let len = if lower_floor.is_some() { n } else { n - 1 };
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(
        upper: &[i64],
        lower_floor: Option<i64>,
        len: usize,
        pos: usize,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if pos == len {
            out.push(cur.clone());
            return;
        }
        let hi = upper[pos];
        let lo = if pos + 1 < upper.len() {
            upper[pos + 1]
        } else {
            lower_floor.expect("trailing entry requires a floor")
        };
        for v in lo..=hi {
            cur.push(v);
            rec(upper, lower_floor, len, pos + 1, cur, out);
            cur.pop();
        }
    }
    rec(upper, lower_floor, len, 0, &mut cur, &mut out);
    out
}

/// Exact restriction of the rank-n irreducible `w` one rank down.
pub fn branch(w: &RankedWeight) -> Result<WeightMultiset> {
    let n = w.rank();
    if n < 2 {
        return Err(Error::InadmissibleRank(
            "branching needs rank at least 2".into(),
        ));
    }
    let lam = w.coords();
    let mut acc = WeightMultiset::new();
    match w.family() {
        Family::Sl => {
            for mu in interlacings(lam, None) {
                add(&mut acc, RankedWeight::new(Family::Sl, mu)?, BigUint::one());
            }
        }
        Family::O => {
            // λ ≥ y interlacing with y_n ≥ 0, then y ≥ ν interlacing with
            // ν_{n-1} ≥ y_n; weight 2 when y_n > 0
            for y in interlacings(lam, Some(0)) {
                let weight = if y[y.len() - 1] > 0 {
                    BigUint::from(2u32)
                } else {
                    BigUint::one()
                };
                for nu in interlacings(&y, None) {
                    add(
                        &mut acc,
                        RankedWeight::new(Family::O, nu)?,
                        weight.clone(),
                    );
                }
            }
        }
        Family::Sp => {
            for x in interlacings(lam, Some(0)) {
                for nu in interlacings(&x, None) {
                    add(&mut acc, RankedWeight::new(Family::Sp, nu)?, BigUint::one());
                }
            }
        }
    }
    Ok(acc)
}

/// Composite restriction with a transparent memo of one-step branchings
/// and full descents. Queries over a Θ-order poset re-descend the same
/// weights repeatedly, so the cache pays for itself immediately.
#[derive(Default)]
pub struct Restrictor {
    one_step: HashMap<RankedWeight, WeightMultiset>,
    descents: HashMap<(RankedWeight, u32), WeightMultiset>,
}

impl Restrictor {
    pub fn new() -> Self {
        Restrictor::default()
    }

    fn step(&mut self, w: &RankedWeight) -> Result<WeightMultiset> {
        if let Some(hit) = self.one_step.get(w) {
            return Ok(hit.clone());
        }
        let computed = branch(w)?;
        self.one_step.insert(w.clone(), computed.clone());
        Ok(computed)
    }

    /// Iterated one-step branching down to `target_rank` (inclusive).
    pub fn restrict(&mut self, w: &RankedWeight, target_rank: u32) -> Result<WeightMultiset> {
        if target_rank == 0 || target_rank > w.rank() {
            return Err(Error::InadmissibleRank(format!(
                "cannot restrict rank {} to rank {target_rank}",
                w.rank()
            )));
        }
        if target_rank == w.rank() {
            let mut only = WeightMultiset::new();
            only.insert(w.clone(), BigUint::one());
            return Ok(only);
        }
        let key = (w.clone(), target_rank);
        if let Some(hit) = self.descents.get(&key) {
            return Ok(hit.clone());
        }
        let mut current = WeightMultiset::new();
        current.insert(w.clone(), BigUint::one());
        let mut rank = w.rank();
        while rank > target_rank {
            let mut next = WeightMultiset::new();
            for (label, mult) in &current {
                for (child, child_mult) in self.step(label)? {
                    add(&mut next, child, child_mult * mult);
                }
            }
            current = next;
            rank -= 1;
            self.descents
                .insert((w.clone(), rank), current.clone());
        }
        Ok(current)
    }

    /// dim Hom of V_μ at rank i inside the restriction of V_λ from rank j.
    pub fn restrict_mult(
        &mut self,
        mu: &ThetaWeight,
        i: u32,
        lambda: &ThetaWeight,
        j: u32,
    ) -> Result<BigUint> {
        if mu.family() != lambda.family() {
            return Err(Error::FamilyMismatch {
                left: mu.family(),
                right: lambda.family(),
            });
        }
        if i >= j {
            return Err(Error::InadmissibleRank(format!(
                "restriction needs i < j, got i={i}, j={j}"
            )));
        }
        let top = truncate(lambda, j)?;
        let target = truncate(mu, i)?;
        let restricted = self.restrict(&top, i)?;
        Ok(restricted
            .get(&target)
            .cloned()
            .unwrap_or_else(BigUint::zero))
    }
}

/// One-shot restriction multiplicity; see `Restrictor` for the cached form.
pub fn restrict_mult(mu: &ThetaWeight, i: u32, lambda: &ThetaWeight, j: u32) -> Result<BigUint> {
    Restrictor::new().restrict_mult(mu, i, lambda, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_oracle::{character, decompose, dim, min_rank, stable_rank};
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

    fn mult(set: &WeightMultiset, w: &RankedWeight) -> u64 {
        use num_traits::ToPrimitive;
        set.get(w).map(|m| m.to_u64().unwrap()).unwrap_or(0)
    }

    #[test]
    fn sl_one_step_is_interlacing() {
        let b = branch(&rw(Family::Sl, &[2, 0])).unwrap();
        assert_eq!(b.len(), 3);
        for c in [[2], [1], [0]] {
            assert_eq!(mult(&b, &rw(Family::Sl, &c)), 1);
        }

        let b = branch(&rw(Family::Sl, &[1, 1, 0])).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(mult(&b, &rw(Family::Sl, &[1, 1])), 1);
        assert_eq!(mult(&b, &rw(Family::Sl, &[1, 0])), 1);
    }

    #[test]
    fn trivial_branches_to_trivial() {
        for family in Family::ALL {
            let b = branch(&RankedWeight::trivial(family, 4)).unwrap();
            assert_eq!(b.len(), 1);
            assert_eq!(mult(&b, &RankedWeight::trivial(family, 3)), 1);
        }
    }

    #[test]
    fn rank_one_input_is_rejected() {
        assert!(branch(&rw(Family::Sl, &[3])).is_err());
    }

    #[test]
    fn orthogonal_vector_and_adjoint_steps() {
        // so(5) ↓ so(3): 5 → 3 + 1 + 1 and 10 → 3·3 + 1
        let b = branch(&rw(Family::O, &[1, 0])).unwrap();
        assert_eq!(mult(&b, &rw(Family::O, &[1])), 1);
        assert_eq!(mult(&b, &rw(Family::O, &[0])), 2);

        let b = branch(&rw(Family::O, &[1, 1])).unwrap();
        assert_eq!(mult(&b, &rw(Family::O, &[1])), 3);
        assert_eq!(mult(&b, &rw(Family::O, &[0])), 1);
    }

    #[test]
    fn symplectic_steps_carry_multiplicities() {
        // sp(4) ↓ sp(2): 4 → 2 + 1 + 1 and adjoint 10 → 3 + 2·2 + 3·1
        let b = branch(&rw(Family::Sp, &[1, 0])).unwrap();
        assert_eq!(mult(&b, &rw(Family::Sp, &[1])), 1);
        assert_eq!(mult(&b, &rw(Family::Sp, &[0])), 2);

        let b = branch(&rw(Family::Sp, &[2, 0])).unwrap();
        assert_eq!(mult(&b, &rw(Family::Sp, &[2])), 1);
        assert_eq!(mult(&b, &rw(Family::Sp, &[1])), 2);
        assert_eq!(mult(&b, &rw(Family::Sp, &[0])), 3);
    }

    #[test]
    fn mass_is_conserved() {
        for family in Family::ALL {
            for lam in enumerate_theta(family, 4) {
                for rank in min_rank(&lam).max(2)..=7 {
                    let w = truncate(&lam, rank).unwrap();
                    let total: BigUint =
                        branch(&w).unwrap().iter().map(|(u, m)| m * dim(u)).sum();
                    assert_eq!(total, dim(&w), "{w} ({family}) at rank {rank}");
                }
            }
        }
    }

    #[test]
    fn restrict_mult_examples() {
        let zero = ThetaWeight::zero(Family::Sl);
        let eps = sl(&[1], &[]);
        let adj = sl(&[1], &[1]);
        let s2 = sl(&[2], &[]);
        assert_eq!(restrict_mult(&zero, 2, &eps, 3).unwrap(), BigUint::one());
        assert_eq!(restrict_mult(&eps, 2, &eps, 5).unwrap(), BigUint::one());
        assert_eq!(restrict_mult(&s2, 3, &adj, 5).unwrap(), BigUint::zero());
    }

    #[test]
    fn restrict_mult_rejects_bad_ranks_and_families() {
        let eps = sl(&[1], &[]);
        assert!(restrict_mult(&eps, 3, &eps, 3).is_err());
        assert!(restrict_mult(&ThetaWeight::zero(Family::O), 2, &eps, 3).is_err());
        assert!(restrict_mult(&sl(&[2, 1], &[]), 2, &eps, 5).is_err());
    }

    // Composite branching must agree with the character oracle: restrict by
    // specializing the extra variables to the neutral exponent, then
    // decompose. The two routes share no code.
    #[test]
    fn iterated_branch_agrees_with_character_restriction() {
        for family in Family::ALL {
            for lam in enumerate_theta(family, 3) {
                let j = 6u32.max(min_rank(&lam));
                for i in (j.saturating_sub(2)).max(1)..j {
                    let top = truncate(&lam, j).unwrap();
                    let via_branch = Restrictor::new().restrict(&top, i).unwrap();
                    let projected = character(&top).project(i).unwrap();
                    let via_oracle: WeightMultiset =
                        decompose(&projected).unwrap().into_iter().collect();
                    assert_eq!(via_branch, via_oracle, "{lam} ({family}) from {j} to {i}");
                }
            }
        }
    }

    // The computational content of "for sufficiently large i". The raw
    // multiplicity is NOT constant in the stage rank j (the trivial label
    // picks up one copy per extra trivial direction), but two things do
    // stabilize above N_stable, and they are what the Θ-order probe relies
    // on: the multiplicity along every fixed-gap diagonal (i, i+g), and
    // the nonvanishing verdict across the whole window.
    #[test]
    fn restriction_multiplicities_stabilize() {
        for family in Family::ALL {
            let labels = enumerate_theta(family, 2);
            for mu in &labels {
                for lam in &labels {
                    let base = stable_rank(family, mu.norm() + lam.norm(), 0);
                    if base > 10 {
                        continue; // probe window capped at rank 10 here
                    }
                    let mut restrictor = Restrictor::new();
                    let gap0 = lam.norm().max(1);
                    for gap in gap0..=gap0 + 2 {
                        let mut diagonal = None;
                        for i in base..=(base + 2).min(10) {
                            let m = restrictor.restrict_mult(mu, i, lam, i + gap).unwrap();
                            match &diagonal {
                                None => diagonal = Some(m),
                                Some(prev) => assert_eq!(
                                    prev, &m,
                                    "{mu} in {lam} ({family}) along gap {gap} at i={i}"
                                ),
                            }
                        }
                    }
                    let mut verdict = None;
                    for i in base..=(base + 2).min(10) {
                        for j in (i + gap0)..=(i + gap0 + 2) {
                            let nonzero =
                                !restrictor.restrict_mult(mu, i, lam, j).unwrap().is_zero();
                            match verdict {
                                None => verdict = Some(nonzero),
                                Some(prev) => assert_eq!(
                                    prev, nonzero,
                                    "{mu} ≤ {lam} ({family}) verdict at ({i},{j})"
                                ),
                            }
                        }
                    }
                }
            }
        }
    }
}
