//! Composition factors, Loewy layers and Loewy lengths of the mixed
//! tensor powers T^{p,q} = V^⊗p ⊗ V_*^⊗q, and stable tensor products of
//! simple labels.
//!
//! Everything is computed by the character oracle at the stable rank, so
//! the multiplicities here are honest finite integers. The layer of a
//! factor is (p+q−|μ|)/2: submodules of T^{p,q} carry the full degree
//! p+q, each contraction lowers the degree by exactly two, and this rule
//! is what reproduces both closed Loewy-length formulas (min{p,q}+1 for
//! sl, ⌊(p+q)/2⌋+1 for o and sp) — the consistency is enforced, not
//! assumed.

use num_bigint::BigUint;

use crate::char_oracle::{character, decompose, read_stable, stable_rank, truncate, FormalCharacter};
use crate::error::{Error, Result};
use crate::weights::{Family, Partition, ThetaWeight};

/// Default cap on p+q (and on |λ|+|μ| for tensor products).
pub const DEFAULT_DEGREE_BOUND: u32 = 6;

fn check_bound(degree: u32, bound: u32) -> Result<()> {
    if degree > bound {
        return Err(Error::BoundExceeded { degree, bound });
    }
    Ok(())
}

fn natural_label(family: Family) -> ThetaWeight {
    let one = Partition::new(vec![1]).expect("single box");
    match family {
        Family::Sl => ThetaWeight::sl(one, Partition::empty()),
        fam => ThetaWeight::single(fam, one).expect("non-sl"),
    }
}

fn conatural_label(family: Family) -> ThetaWeight {
    natural_label(family).star()
}

fn factors_of_product(
    family: Family,
    labels: &[ThetaWeight],
    rank: u32,
) -> Result<Vec<(ThetaWeight, BigUint)>> {
    let mut product = FormalCharacter::unit(family, rank);
    for label in labels {
        product = product.mul(&character(&truncate(label, rank)?))?;
    }
    let mut out = Vec::new();
    for (w, mult) in decompose(&product)? {
        out.push((read_stable(&w)?, mult));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Composition factors of T^{p,q} with their finite multiplicities, in
/// canonical label order. For o and sp the conatural side is identified
/// with the natural one (V ≅ V_*), so T^{p,q} is computed as T^{p+q,0}.
pub fn tpq_factors(
    family: Family,
    p: u32,
    q: u32,
    bound: u32,
    margin: u32,
) -> Result<Vec<(ThetaWeight, BigUint)>> {
    let degree = p + q;
    check_bound(degree, bound)?;
    let rank = stable_rank(family, degree, margin);
    let mut labels = Vec::new();
    match family {
        Family::Sl => {
            labels.extend(std::iter::repeat_n(natural_label(family), p as usize));
            labels.extend(std::iter::repeat_n(conatural_label(family), q as usize));
        }
        _ => labels.extend(std::iter::repeat_n(natural_label(family), degree as usize)),
    }
    let factors = factors_of_product(family, &labels, rank)?;
    for (w, _) in &factors {
        if w.norm() > degree || !(degree - w.norm()).is_multiple_of(2) {
            return Err(Error::Internal(format!(
                "factor {w} of T^{{{p},{q}}} violates the degree/parity rule"
            )));
        }
    }
    Ok(factors)
}

/// Loewy-layer index of a factor of T^{p,q}; layer 0 is the socle.
pub fn tpq_layer(mu: &ThetaWeight, p: u32, q: u32) -> Result<u32> {
    let degree = p + q;
    if mu.norm() > degree {
        return Err(Error::NotAFactor {
            weight: mu.to_string(),
            p,
            q,
        });
    }
    if !(degree - mu.norm()).is_multiple_of(2) {
        return Err(Error::NotAFactor {
            weight: mu.to_string(),
            p,
            q,
        });
    }
    let factors = tpq_factors(mu.family(), p, q, degree.max(DEFAULT_DEGREE_BOUND), 0)?;
    if !factors.iter().any(|(w, _)| w == mu) {
        return Err(Error::NotAFactor {
            weight: mu.to_string(),
            p,
            q,
        });
    }
    Ok((degree - mu.norm()) / 2)
}

/// Loewy length of T^{p,q}: min{p,q}+1 for sl, ⌊(p+q)/2⌋+1 for o/sp. The
/// closed formula is cross-checked against 1 + max layer over the actual
/// factors and any disagreement is an internal error.
pub fn tpq_loewy(family: Family, p: u32, q: u32, bound: u32, margin: u32) -> Result<u32> {
    let formula = match family {
        Family::Sl => p.min(q) + 1,
        _ => (p + q) / 2 + 1,
    };
    let factors = tpq_factors(family, p, q, bound, margin)?;
    let max_layer = factors
        .iter()
        .map(|(w, _)| (p + q - w.norm()) / 2)
        .max()
        .unwrap_or(0);
    if max_layer + 1 != formula {
        return Err(Error::Internal(format!(
            "Loewy length of T^{{{p},{q}}} over {family}: formula gives {formula}, \
             layers give {}",
            max_layer + 1
        )));
    }
    Ok(formula)
}

/// Stable composition factors of V_λ ⊗ V_μ with finite multiplicities.
pub fn tensor_factors(
    lambda: &ThetaWeight,
    mu: &ThetaWeight,
    bound: u32,
    margin: u32,
) -> Result<Vec<(ThetaWeight, BigUint)>> {
    if lambda.family() != mu.family() {
        return Err(Error::FamilyMismatch {
            left: lambda.family(),
            right: mu.family(),
        });
    }
    let degree = lambda.norm() + mu.norm();
    check_bound(degree, bound)?;
    let family = lambda.family();
    let rank = stable_rank(family, degree, margin);
    let factors = factors_of_product(family, &[lambda.clone(), mu.clone()], rank)?;
    for (w, _) in &factors {
        if w.norm() > degree {
            return Err(Error::Internal(format!(
                "factor {w} of {lambda} ⊗ {mu} exceeds the degree bound {degree}"
            )));
        }
    }
    Ok(factors)
}
