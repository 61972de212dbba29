//! Symbolic cardinal arithmetic, Loewy profiles, injective-hull profiles,
//! the lindᵏ membership level, and semisimple dualization.
//!
//! Profiles are label-level shadows of modules: no vector space is ever
//! materialized, only the map (Loewy layer → simple label → cardinal
//! multiplicity). Multiplicities are either exact finite integers (the
//! finite-length T^{p,q} world) or ℶ-cardinals, with ℶ₀ = card ℤ and
//! ℶ₁ = card 2^ℤ; every non-socle layer of an injective hull carries ℶ₁.
//!
//! Membership in the cardinality-bounded subcategory (every multiplicity
//! at most some ℶ_n) is vacuous in this calculus — a `Cardinality` is by
//! construction finite or a ℶ-number with finite index — and is recorded
//! here rather than implemented as a predicate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::tensor_calc;
use crate::theta_order::{Probe, ThetaPoset};
use crate::weights::{Family, ThetaWeight};

/// A symbolic cardinal: either an exact finite count or ℶ_k.
/// Finite(n) < Beth(0) < Beth(1) < … under the derived total order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinality {
    Finite(BigUint),
    Beth(u32),
}

impl Cardinality {
    pub fn finite(n: impl Into<BigUint>) -> Self {
        Cardinality::Finite(n.into())
    }

    pub fn beth(k: u32) -> Self {
        Cardinality::Beth(k)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "finite:{n}"),
            Cardinality::Beth(k) => write!(f, "beth:{k}"),
        }
    }
}

impl FromStr for Cardinality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("cardinal {s:?} must be finite:n or beth:k")))?;
        match kind.to_ascii_lowercase().as_str() {
            "finite" => {
                let n = BigUint::from_str(value.trim())
                    .map_err(|_| Error::Parse(format!("bad finite cardinal {value:?}")))?;
                Ok(Cardinality::Finite(n))
            }
            "beth" => {
                let k: u32 = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad beth index {value:?}")))?;
                Ok(Cardinality::Beth(k))
            }
            other => Err(Error::Parse(format!("unknown cardinal kind {other:?}"))),
        }
    }
}

/// Cardinal addition: exact on finite operands, absorption (max) as soon
/// as one side is infinite.
pub fn card_add(a: &Cardinality, b: &Cardinality) -> Cardinality {
    match (a, b) {
        (Cardinality::Finite(x), Cardinality::Finite(y)) => Cardinality::Finite(x + y),
        _ => a.clone().max(b.clone()),
    }
}

/// Cardinal multiplication: exact on finite operands, zero annihilates,
/// otherwise the maximum.
pub fn card_mul(a: &Cardinality, b: &Cardinality) -> Cardinality {
    match (a, b) {
        (Cardinality::Finite(x), _) if x.is_zero() => Cardinality::finite(0u32),
        (_, Cardinality::Finite(y)) if y.is_zero() => Cardinality::finite(0u32),
        (Cardinality::Finite(x), Cardinality::Finite(y)) => Cardinality::Finite(x * y),
        _ => a.clone().max(b.clone()),
    }
}

/// An ordered list of socle-filtration layers (index 0 = socle), each a
/// mapping from simple labels to cardinal multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoewyProfile {
    family: Family,
    layers: Vec<BTreeMap<ThetaWeight, Cardinality>>,
}

impl LoewyProfile {
    pub fn zero(family: Family) -> Self {
        LoewyProfile {
            family,
            layers: Vec::new(),
        }
    }

    /// A single-layer (semisimple) profile.
    pub fn semisimple(family: Family, layer: BTreeMap<ThetaWeight, Cardinality>) -> Result<Self> {
        LoewyProfile::from_layers(family, vec![layer])
    }

    pub fn from_layers(
        family: Family,
        layers: Vec<BTreeMap<ThetaWeight, Cardinality>>,
    ) -> Result<Self> {
        for layer in &layers {
            if layer.is_empty() {
                return Err(Error::Internal(
                    "no layer of a profile may be empty".into(),
                ));
            }
            for (w, m) in layer {
                if w.family() != family {
                    return Err(Error::FamilyMismatch {
                        left: w.family(),
                        right: family,
                    });
                }
                if matches!(m, Cardinality::Finite(n) if n.is_zero()) {
                    return Err(Error::Internal(
                        "zero multiplicities must be absent from a profile".into(),
                    ));
                }
            }
        }
        Ok(LoewyProfile { family, layers })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn layers(&self) -> &[BTreeMap<ThetaWeight, Cardinality>] {
        &self.layers
    }

    /// Number of layers of the (finite, exhaustive) socle filtration.
    pub fn loewy_length(&self) -> u32 {
        self.layers.len() as u32
    }

    /// All labels occurring in any layer, in canonical order.
    pub fn theta_support(&self) -> Vec<ThetaWeight> {
        let mut out: Vec<ThetaWeight> = Vec::new();
        for layer in &self.layers {
            for w in layer.keys() {
                if !out.contains(w) {
                    out.push(w.clone());
                }
            }
        }
        out.sort();
        out
    }

    /// The least k with all supporting labels of norm ≤ k: the lindᵏ
    /// membership level. (Every lindᵏ is closed under direct sums and
    /// products, so a family of profiles is jointly dualizable exactly
    /// when their levels are uniformly bounded.)
    pub fn lind_level(&self) -> u32 {
        self.theta_support()
            .iter()
            .map(|w| w.norm())
            .max()
            .unwrap_or(0)
    }
}

/// Loewy profile of the injective hull I_λ: the socle is λ with
/// multiplicity one, and layer k consists of Θᵏ(λ), every label with
/// multiplicity ℶ₁. Total length |λ| + 1.
pub fn inj_profile(lambda: &ThetaWeight, probe: &Probe) -> Result<LoewyProfile> {
    let poset = ThetaPoset::build(lambda.family(), lambda.norm(), probe)?;
    inj_profile_in(&poset, lambda)
}

/// `inj_profile` against a prebuilt poset (which must contain all labels
/// of norm ≤ |λ|).
pub fn inj_profile_in(poset: &ThetaPoset, lambda: &ThetaWeight) -> Result<LoewyProfile> {
    let mut layers = Vec::with_capacity(lambda.norm() as usize + 1);
    let mut socle = BTreeMap::new();
    socle.insert(lambda.clone(), Cardinality::finite(1u32));
    layers.push(socle);
    for k in 1..=lambda.norm() {
        let labels = poset.theta_k(lambda, k)?;
        if labels.is_empty() {
            return Err(Error::Internal(format!(
                "Θ^{k}({lambda}) is empty below the norm"
            )));
        }
        layers.push(
            labels
                .into_iter()
                .map(|w| (w, Cardinality::beth(1)))
                .collect(),
        );
    }
    LoewyProfile::from_layers(lambda.family(), layers)
}

/// Loewy profile of T^{p,q} from the oracle: finite multiplicities, each
/// factor placed on its contraction layer.
pub fn tpq_profile(
    family: Family,
    p: u32,
    q: u32,
    bound: u32,
    margin: u32,
) -> Result<LoewyProfile> {
    let factors = tensor_calc::tpq_factors(family, p, q, bound, margin)?;
    if factors.is_empty() {
        return Err(Error::Internal("T^{p,q} has no factors".into()));
    }
    let max_layer = factors
        .iter()
        .map(|(w, _)| (p + q - w.norm()) / 2)
        .max()
        .unwrap_or(0);
    let mut layers: Vec<BTreeMap<ThetaWeight, Cardinality>> =
        vec![BTreeMap::new(); max_layer as usize + 1];
    for (w, mult) in factors {
        let layer = (p + q - w.norm()) / 2;
        layers[layer as usize].insert(w, Cardinality::Finite(mult));
    }
    LoewyProfile::from_layers(family, layers)
}

/// Verdict of the uniform-bound test for a family of modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureVerdict {
    /// The family lies in lindᵏ for this k, so arbitrary direct sums and
    /// products of it stay dualizable.
    Level(u32),
    /// Levels are unbounded; the family leaves the category.
    Unbounded,
}

impl fmt::Display for ClosureVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureVerdict::Level(k) => write!(f, "level:{k}"),
            ClosureVerdict::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// A finite list of profiles, or a description of an infinite family by
/// its declared level behaviour.
#[derive(Debug, Clone)]
pub enum FamilyDescriptor {
    Finite(Vec<LoewyProfile>),
    BoundedInfinite { family: Family, level_bound: u32 },
    UnboundedInfinite { family: Family },
}

/// Decides whether a family of modules admits a uniform lindᵏ level: the
/// maximum level for a finite list (0 for the empty list), the supplied
/// bound for a bounded infinite family, and the failure verdict for a
/// family with unbounded norms.
pub fn family_closure_check(desc: &FamilyDescriptor) -> Result<ClosureVerdict> {
    match desc {
        FamilyDescriptor::Finite(profiles) => {
            if let Some(first) = profiles.first() {
                for p in profiles {
                    if p.family() != first.family() {
                        return Err(Error::FamilyMismatch {
                            left: p.family(),
                            right: first.family(),
                        });
                    }
                }
            }
            Ok(ClosureVerdict::Level(
                profiles.iter().map(|p| p.lind_level()).max().unwrap_or(0),
            ))
        }
        FamilyDescriptor::BoundedInfinite { level_bound, .. } => {
            Ok(ClosureVerdict::Level(*level_bound))
        }
        FamilyDescriptor::UnboundedInfinite { .. } => Ok(ClosureVerdict::Unbounded),
    }
}

/// The semisimple dual M ↦ M_*: same cardinalities, every label starred.
/// Requires a one-layer profile.
pub fn dual_socle_profile(profile: &LoewyProfile) -> Result<LoewyProfile> {
    if profile.layers().len() != 1 {
        return Err(Error::NotSemisimple(format!(
            "dualization at the label level needs one layer, got {}",
            profile.layers().len()
        )));
    }
    let layer: BTreeMap<ThetaWeight, Cardinality> = profile.layers()[0]
        .iter()
        .map(|(w, m)| (w.star(), m.clone()))
        .collect();
    LoewyProfile::semisimple(profile.family(), layer)
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

    fn probe() -> Probe {
        Probe::default()
    }

    #[test]
    fn cardinal_arithmetic_examples() {
        let f = |n: u32| Cardinality::finite(n);
        let b = Cardinality::beth;
        assert_eq!(card_add(&f(2), &f(3)), f(5));
        assert_eq!(card_add(&b(1), &f(7)), b(1));
        assert_eq!(card_mul(&b(1), &b(2)), b(2));
        assert_eq!(card_mul(&f(0), &b(3)), f(0));
        assert_eq!(card_mul(&f(2), &f(3)), f(6));
        assert!(f(1_000_000) < b(0));
        assert!(b(0) < b(1));
    }

    #[test]
    fn cardinal_laws_on_the_small_domain() {
        let mut domain: Vec<Cardinality> = (0u32..=5).map(Cardinality::finite).collect();
        domain.extend((0..=3).map(Cardinality::beth));
        for a in &domain {
            for b in &domain {
                assert_eq!(card_add(a, b), card_add(b, a));
                assert_eq!(card_mul(a, b), card_mul(b, a));
                // absorption
                if !b.is_finite() && a < b {
                    assert_eq!(&card_add(a, b), b);
                }
                for c in &domain {
                    assert_eq!(
                        card_add(&card_add(a, b), c),
                        card_add(a, &card_add(b, c))
                    );
                    assert_eq!(
                        card_mul(&card_mul(a, b), c),
                        card_mul(a, &card_mul(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn cardinal_parse_display_round_trip() {
        for s in ["finite:0", "finite:12", "beth:0", "beth:2"] {
            let c: Cardinality = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("beth".parse::<Cardinality>().is_err());
        assert!("finite:x".parse::<Cardinality>().is_err());
    }

    #[test]
    fn inj_profile_of_the_trivial_label() {
        let zero = ThetaWeight::zero(Family::Sl);
        let prof = inj_profile(&zero, &probe()).unwrap();
        assert_eq!(prof.loewy_length(), 1);
        assert_eq!(prof.layers()[0].len(), 1);
        assert_eq!(
            prof.layers()[0].get(&zero),
            Some(&Cardinality::finite(1u32))
        );
    }

    #[test]
    fn inj_profile_of_the_conatural_label() {
        // socle V_*, one trivial layer of cardinality ℶ₁ above it
        let vstar = sl(&[], &[1]);
        let prof = inj_profile(&vstar, &probe()).unwrap();
        assert_eq!(prof.loewy_length(), 2);
        assert_eq!(
            prof.layers()[0].get(&vstar),
            Some(&Cardinality::finite(1u32))
        );
        assert_eq!(prof.layers()[1].len(), 1);
        assert_eq!(
            prof.layers()[1].get(&ThetaWeight::zero(Family::Sl)),
            Some(&Cardinality::beth(1))
        );
    }

    #[test]
    fn inj_profile_of_the_adjoint_label() {
        let adj = sl(&[1], &[1]);
        let prof = inj_profile(&adj, &probe()).unwrap();
        assert_eq!(prof.loewy_length(), 3);
        assert_eq!(prof.layers()[0].len(), 1);
        assert_eq!(prof.layers()[0].get(&adj), Some(&Cardinality::finite(1u32)));
        let layer1: Vec<&ThetaWeight> = prof.layers()[1].keys().collect();
        assert_eq!(layer1.len(), 3);
        for m in prof.layers()[1].values() {
            assert_eq!(m, &Cardinality::beth(1));
        }
        assert_eq!(prof.layers()[2].len(), 1);
        assert_eq!(
            prof.layers()[2].get(&ThetaWeight::zero(Family::Sl)),
            Some(&Cardinality::beth(1))
        );
        assert_eq!(prof.theta_support().len(), 4);
        assert_eq!(prof.lind_level(), 2);
    }

    #[test]
    fn inj_profile_length_is_norm_plus_one() {
        for family in Family::ALL {
            let poset = ThetaPoset::build(family, 4, &probe()).unwrap();
            for lam in enumerate_theta(family, 4) {
                let prof = inj_profile_in(&poset, &lam).unwrap();
                assert_eq!(prof.loewy_length(), lam.norm() + 1, "{lam} ({family})");
            }
        }
    }

    #[test]
    fn inj_profile_commutes_with_star() {
        for family in Family::ALL {
            let poset = ThetaPoset::build(family, 3, &probe()).unwrap();
            for lam in enumerate_theta(family, 3) {
                let prof = inj_profile_in(&poset, &lam).unwrap();
                let starred = inj_profile_in(&poset, &lam.star()).unwrap();
                let keys: Vec<Vec<ThetaWeight>> = prof
                    .layers()
                    .iter()
                    .map(|l| {
                        let mut ks: Vec<ThetaWeight> =
                            l.keys().map(|w| w.star()).collect();
                        ks.sort();
                        ks
                    })
                    .collect();
                let expect: Vec<Vec<ThetaWeight>> = starred
                    .layers()
                    .iter()
                    .map(|l| l.keys().cloned().collect())
                    .collect();
                assert_eq!(keys, expect, "{lam} ({family})");
            }
        }
    }

    #[test]
    fn loewy_length_examples() {
        assert_eq!(LoewyProfile::zero(Family::Sl).loewy_length(), 0);
        let tpq = tpq_profile(Family::Sl, 2, 2, 6, 0).unwrap();
        assert_eq!(tpq.loewy_length(), 3);
    }

    #[test]
    fn support_and_level_examples() {
        let eps = sl(&[1], &[]);
        let mut layer = BTreeMap::new();
        layer.insert(eps.clone(), Cardinality::finite(1u32));
        let prof = LoewyProfile::semisimple(Family::Sl, layer).unwrap();
        assert_eq!(prof.theta_support(), vec![eps]);
        assert_eq!(prof.lind_level(), 1);
        assert!(LoewyProfile::zero(Family::Sl).theta_support().is_empty());
        assert_eq!(LoewyProfile::zero(Family::Sl).lind_level(), 0);
    }

    #[test]
    fn closure_check_examples() {
        let v = {
            let mut layer = BTreeMap::new();
            layer.insert(sl(&[1], &[]), Cardinality::finite(1u32));
            LoewyProfile::semisimple(Family::Sl, layer).unwrap()
        };
        let vv = tpq_profile(Family::Sl, 2, 0, 6, 0).unwrap();
        assert_eq!(
            family_closure_check(&FamilyDescriptor::Finite(vec![v, vv])).unwrap(),
            ClosureVerdict::Level(2)
        );
        assert_eq!(
            family_closure_check(&FamilyDescriptor::Finite(vec![])).unwrap(),
            ClosureVerdict::Level(0)
        );
        assert_eq!(
            family_closure_check(&FamilyDescriptor::UnboundedInfinite {
                family: Family::Sl
            })
            .unwrap(),
            ClosureVerdict::Unbounded
        );
        assert_eq!(
            family_closure_check(&FamilyDescriptor::BoundedInfinite {
                family: Family::O,
                level_bound: 3
            })
            .unwrap(),
            ClosureVerdict::Level(3)
        );
    }

    #[test]
    fn dual_socle_profile_examples() {
        let mut layer = BTreeMap::new();
        layer.insert(sl(&[1], &[]), Cardinality::beth(0));
        let prof = LoewyProfile::semisimple(Family::Sl, layer).unwrap();
        let dual = dual_socle_profile(&prof).unwrap();
        assert_eq!(
            dual.layers()[0].get(&sl(&[], &[1])),
            Some(&Cardinality::beth(0))
        );

        let mut layer = BTreeMap::new();
        layer.insert(
            ThetaWeight::single(Family::O, p(&[2, 1])).unwrap(),
            Cardinality::finite(5u32),
        );
        let prof = LoewyProfile::semisimple(Family::O, layer).unwrap();
        assert_eq!(dual_socle_profile(&prof).unwrap(), prof);

        let two_layers = inj_profile(&sl(&[], &[1]), &probe()).unwrap();
        assert!(dual_socle_profile(&two_layers).is_err());
        assert!(dual_socle_profile(&LoewyProfile::zero(Family::Sl)).is_err());
    }

    #[test]
    fn inj_layer_one_is_the_strict_down_set() {
        use crate::theta_order::ext1_nonzero;
        for family in Family::ALL {
            let poset = ThetaPoset::build(family, 3, &probe()).unwrap();
            for lam in enumerate_theta(family, 3) {
                let prof = inj_profile_in(&poset, &lam).unwrap();
                let layer1: Vec<ThetaWeight> = if prof.layers().len() > 1 {
                    prof.layers()[1].keys().cloned().collect()
                } else {
                    Vec::new()
                };
                let expected: Vec<ThetaWeight> = enumerate_theta(family, 3)
                    .into_iter()
                    .filter(|mu| ext1_nonzero(mu, &lam, &probe()).unwrap())
                    .collect();
                assert_eq!(layer1, expected, "{lam} ({family})");
            }
        }
    }
}
