//! Exact finite-rank character arithmetic — the brute-force oracle behind
//! every stable claim.
//!
//! Finite ranks are realized as the rank-n general linear algebra for `Sl`,
//! the odd orthogonal algebra so(2n+1) for `O`, and sp(2n) for `Sp`.
//! Dominant weight multiplicities are computed with Freudenthal's recursion
//! over exact big integers and expanded to full characters along Weyl
//! orbits; dimensions come independently from the Weyl dimension formula,
//! so `mass(character(w)) == dim(w)` is a genuine cross-check rather than
//! a tautology. Decomposition repeatedly extracts the lexicographically
//! highest dominant term, which for all three families is a highest weight
//! of some constituent.

use std::collections::HashMap;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::weights::{Family, Partition, ThetaWeight};

/// A dominant integral weight of a rank-n algebra. `coords` always has
/// length n: weakly decreasing integers for `Sl`, a zero-padded partition
/// for `O` and `Sp`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankedWeight {
    family: Family,
    coords: Vec<i64>,
}

impl RankedWeight {
    pub fn new(family: Family, coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidWeight("rank must be positive".into()));
        }
        for w in coords.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidWeight(format!(
                    "coords must be weakly decreasing, got {coords:?}"
                )));
            }
        }
        if family != Family::Sl && coords.last().copied().unwrap_or(0) < 0 {
            return Err(Error::InvalidWeight(format!(
                "{family} weights are zero-padded partitions, got {coords:?}"
            )));
        }
        Ok(RankedWeight { family, coords })
    }

    pub fn trivial(family: Family, rank: u32) -> Self {
        RankedWeight {
            family,
            coords: vec![0; rank as usize],
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Parses "1,0,-1"; the rank is the number of entries.
    pub fn parse(family: Family, s: &str) -> Result<Self> {
        let mut coords = Vec::new();
        for tok in s.trim().split(',') {
            let c: i64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coordinate {tok:?} in weight {s:?}")))?;
            coords.push(c);
        }
        RankedWeight::new(family, coords)
    }
}

impl fmt::Display for RankedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Minimal rank at which λ ∈ Θ truncates: the total box count |λ|, so a
/// label needs at least as many ε-slots as it has boxes. (This is
/// stricter than merely fitting the rows and keeps small-rank truncations
/// away from the orthogonal/symplectic modification rules.)
pub fn min_rank(lambda: &ThetaWeight) -> u32 {
    lambda.norm().max(1)
}

/// The finite-rank truncation V_λⁿ of a stable label: for sl the weight
/// (plus parts, zero padding, negated reversed minus parts), for o/sp the
/// zero-padded partition.
pub fn truncate(lambda: &ThetaWeight, rank: u32) -> Result<RankedWeight> {
    let min = min_rank(lambda);
    if rank < min {
        return Err(Error::RankTooSmall {
            weight: lambda.to_string(),
            given: rank,
            min,
        });
    }
    let n = rank as usize;
    let coords = match lambda.family() {
        Family::Sl => {
            let mut coords = Vec::with_capacity(n);
            coords.extend(lambda.plus().parts().iter().map(|&p| p as i64));
            let pad = n - lambda.plus().len() - lambda.minus().len();
            coords.extend(std::iter::repeat_n(0i64, pad));
            coords.extend(lambda.minus().parts().iter().rev().map(|&p| -(p as i64)));
            coords
        }
        _ => {
            let mut coords: Vec<i64> =
                lambda.part().parts().iter().map(|&p| p as i64).collect();
            coords.resize(n, 0);
            coords
        }
    };
    RankedWeight::new(lambda.family(), coords)
}

/// Reads a dominant weight back as a stable Θ-label: the positive entries
/// form the plus diagram, the negated reversed negative entries the minus
/// diagram. Inverse to `truncate` at any admissible rank.
pub fn read_stable(w: &RankedWeight) -> Result<ThetaWeight> {
    let plus: Vec<u32> = w
        .coords
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| c as u32)
        .collect();
    let plus = Partition::new(plus)
        .map_err(|e| Error::Internal(format!("stable read of {w}: {e}")))?;
    match w.family {
        Family::Sl => {
            let minus: Vec<u32> = w
                .coords
                .iter()
                .rev()
                .filter(|&&c| c < 0)
                .map(|&c| (-c) as u32)
                .collect();
            let minus = Partition::new(minus)
                .map_err(|e| Error::Internal(format!("stable read of {w}: {e}")))?;
            Ok(ThetaWeight::sl(plus, minus))
        }
        fam => ThetaWeight::single(fam, plus),
    }
}

/// Rank at which stable Θ-label arithmetic of the given total norm is
/// faithfully computed: Σ norms + 2 for sl, 2·(Σ norms) + 2 for o/sp.
pub fn stable_rank(family: Family, total_norm: u32, margin: u32) -> u32 {
    match family {
        Family::Sl => total_norm + 2 + margin,
        _ => 2 * total_norm + 2 + margin,
    }
}

fn exact_quotient(num: BigUint, den: BigUint) -> BigUint {
    debug_assert!((&num % &den).is_zero(), "non-exact division in dim");
    num / den
}

/// Dimension of the irreducible with highest weight `w`, by the Weyl
/// dimension formula with exact integer arithmetic.
pub fn dim(w: &RankedWeight) -> BigUint {
    let n = w.coords.len();
    let c = &w.coords;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    match w.family {
        Family::Sl => {
            for i in 0..n {
                for j in (i + 1)..n {
                    num *= BigUint::from((c[i] - c[j]) as u64 + (j - i) as u64);
                    den *= BigUint::from((j - i) as u64);
                }
            }
        }
        Family::O => {
            // shifted weights doubled so the half-integral ρ stays integral
            let a: Vec<u64> = (0..n).map(|i| (2 * c[i]) as u64 + 2 * (n - i - 1) as u64 + 1).collect();
            let b: Vec<u64> = (0..n).map(|i| 2 * (n - i - 1) as u64 + 1).collect();
            for i in 0..n {
                num *= BigUint::from(a[i]);
                den *= BigUint::from(b[i]);
                for j in (i + 1)..n {
                    num *= BigUint::from(a[i] * a[i] - a[j] * a[j]);
                    den *= BigUint::from(b[i] * b[i] - b[j] * b[j]);
                }
            }
        }
        Family::Sp => {
            let l: Vec<u64> = (0..n).map(|i| c[i] as u64 + (n - i) as u64).collect();
            let m: Vec<u64> = (0..n).map(|i| (n - i) as u64).collect();
            for i in 0..n {
                num *= BigUint::from(l[i]);
                den *= BigUint::from(m[i]);
                for j in (i + 1)..n {
                    num *= BigUint::from(l[i] * l[i] - l[j] * l[j]);
                    den *= BigUint::from(m[i] * m[i] - m[j] * m[j]);
                }
            }
        }
    }
    exact_quotient(num, den)
}

fn dot(u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn positive_roots(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    let mut root = |entries: &[(usize, i64)]| {
        let mut v = vec![0i64; n];
        for &(i, x) in entries {
            v[i] = x;
        }
        roots.push(v);
    };
    for i in 0..n {
        for j in (i + 1)..n {
            root(&[(i, 1), (j, -1)]);
            if family != Family::Sl {
                root(&[(i, 1), (j, 1)]);
            }
        }
        match family {
            Family::Sl => {}
            Family::O => root(&[(i, 1)]),
            Family::Sp => root(&[(i, 2)]),
        }
    }
    roots
}

/// 2ρ in ε-coordinates. For `Sl` any constant shift of ρ is valid because
/// weights of one module share their coordinate sum; we use (n-1, …, 0)
/// doubled.
fn two_rho(family: Family, n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| {
            let k = (n - i - 1) as i64;
            match family {
                Family::Sl => 2 * k,
                Family::O => 2 * k + 1,
                Family::Sp => 2 * k + 2,
            }
        })
        .collect()
}

fn dominant_rep(family: Family, v: &[i64]) -> Vec<i64> {
    let mut r: Vec<i64> = match family {
        Family::Sl => v.to_vec(),
        _ => v.iter().map(|&x| x.abs()).collect(),
    };
    r.sort_unstable_by(|a, b| b.cmp(a));
    r
}

fn is_dominant(family: Family, v: &[i64]) -> bool {
    if v.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    family == Family::Sl || v.last().copied().unwrap_or(0) >= 0
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// All dominant weights μ with λ - μ in the nonnegative span of the simple
/// roots. These are exactly the dominant weights of V_λ.
fn dominant_candidates(w: &RankedWeight) -> Vec<Vec<i64>> {
    struct Search<'a> {
        family: Family,
        prefix: &'a [i64],
        total: i64,
        cur: Vec<i64>,
        out: Vec<Vec<i64>>,
    }

    impl Search<'_> {
        fn rec(&mut self, pos: usize, prev: i64, sum: i64) {
            let n = self.prefix.len();
            if pos == n {
                let ok = match self.family {
                    Family::Sl => sum == self.total,
                    Family::O => true,
                    Family::Sp => (self.total - sum) % 2 == 0,
                };
                if ok {
                    self.out.push(self.cur.clone());
                }
                return;
            }
            let hi = prev.min(self.prefix[pos] - sum);
            let lo = match self.family {
                Family::Sl => ceil_div(self.total - sum, (n - pos) as i64),
                _ => 0,
            };
            for v in lo..=hi {
                self.cur.push(v);
                self.rec(pos + 1, v, sum + v);
                self.cur.pop();
            }
        }
    }

    let prefix: Vec<i64> = w
        .coords
        .iter()
        .scan(0i64, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect();
    let mut search = Search {
        family: w.family,
        total: prefix[prefix.len() - 1],
        prefix: &prefix,
        cur: Vec::with_capacity(prefix.len()),
        out: Vec::new(),
    };
    search.rec(0, i64::MAX, 0);
    search.out
}

/// Height of λ - μ in simple-root coordinates; Freudenthal's recursion is
/// processed in increasing height from λ itself.
fn height(family: Family, lam: &[i64], mu: &[i64]) -> i64 {
    let n = lam.len();
    let mut h = 0i64;
    let mut partial = 0i64;
    for k in 0..n {
        partial += lam[k] - mu[k];
        match family {
            Family::Sl => {
                if k + 1 < n {
                    h += partial;
                }
            }
            Family::O => h += partial,
            Family::Sp => {
                if k + 1 < n {
                    h += partial;
                } else {
                    h += partial / 2;
                }
            }
        }
    }
    h
}

/// Weight multiplicities of V_w on the dominant cone, by Freudenthal's
/// recursion. Every multiplicity is an exact big integer.
pub fn dominant_character(w: &RankedWeight) -> BTreeMap<Vec<i64>, BigUint> {
    let lam = &w.coords;
    let n = lam.len();
    let roots = positive_roots(w.family, n);
    let rho2 = two_rho(w.family, n);

    let mut cands = dominant_candidates(w);
    cands.sort_by_key(|mu| height(w.family, lam, mu));

    let mut table: HashMap<Vec<i64>, BigUint> = HashMap::new();
    table.insert(lam.clone(), BigUint::one());

    for mu in &cands {
        if mu == lam {
            continue;
        }
        let mut acc = BigInt::zero();
        for alpha in &roots {
            let mut v = mu.clone();
            loop {
                for (x, a) in v.iter_mut().zip(alpha) {
                    *x += a;
                }
                let rep = dominant_rep(w.family, &v);
                match table.get(&rep) {
                    Some(m) => acc += BigInt::from(m.clone()) * BigInt::from(dot(&v, alpha)),
                    None => break,
                }
            }
        }
        let num: BigInt = acc * BigInt::from(2);
        let den = BigInt::from(dot(lam, lam) - dot(mu, mu) + dot(lam, &rho2) - dot(mu, &rho2));
        debug_assert!(den.is_positive());
        if cfg!(debug_assertions) {
            let rem: BigInt = &num % &den;
            assert!(rem.is_zero(), "Freudenthal division must be exact");
        }
        let m: BigInt = num / den;
        debug_assert!(!m.is_negative());
        if m.is_positive() {
            table.insert(mu.clone(), m.to_biguint().expect("positive"));
        }
    }

    let mut out = BTreeMap::new();
    for (k, v) in table {
        out.insert(k, v);
    }
    out
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn distinct_permutations(sorted_desc: &[i64]) -> Vec<Vec<i64>> {
    let mut v = sorted_desc.to_vec();
    v.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(v.clone());
        if !next_permutation(&mut v) {
            break;
        }
    }
    out
}

fn orbit(family: Family, dominant: &[i64]) -> Vec<Vec<i64>> {
    let perms = distinct_permutations(dominant);
    if family == Family::Sl {
        return perms;
    }
    let mut out = Vec::new();
    for p in perms {
        let nonzero: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for mask in 0u64..(1u64 << nonzero.len()) {
            let mut q = p.clone();
            for (bit, &i) in nonzero.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    q[i] = -q[i];
                }
            }
            out.push(q);
        }
    }
    out
}

/// Finitely supported exponent-vector → multiplicity mapping; the exact
/// oracle's currency. Invariant under the Weyl group of its family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    family: Family,
    rank: u32,
    terms: BTreeMap<Vec<i64>, BigUint>,
}

impl FormalCharacter {
    pub fn from_terms(
        family: Family,
        rank: u32,
        terms: BTreeMap<Vec<i64>, BigUint>,
    ) -> Result<Self> {
        for (k, m) in &terms {
            if k.len() != rank as usize {
                return Err(Error::InvalidWeight(format!(
                    "exponent {k:?} has length {} but rank is {rank}",
                    k.len()
                )));
            }
            if m.is_zero() {
                return Err(Error::InvalidWeight(
                    "zero multiplicities must be absent".into(),
                ));
            }
        }
        Ok(FormalCharacter {
            family,
            rank,
            terms,
        })
    }

    /// The character of the trivial module.
    pub fn unit(family: Family, rank: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; rank as usize], BigUint::one());
        FormalCharacter {
            family,
            rank,
            terms,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigUint> {
        &self.terms
    }

    pub fn get(&self, key: &[i64]) -> BigUint {
        self.terms.get(key).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Total multiplicity mass; equals the module dimension.
    pub fn mass(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Character of a tensor product: convolution of exponent mappings.
    pub fn mul(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch {
                left: self.family,
                right: other.family,
            });
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        // accumulate unordered, sort once at the end
        let mut acc: HashMap<Vec<i64>, BigUint> =
            HashMap::with_capacity(self.terms.len().max(other.terms.len()));
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                let key: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(key).or_insert_with(BigUint::zero) += ma * mb;
            }
        }
        Ok(FormalCharacter {
            family: self.family,
            rank: self.rank,
            terms: acc.into_iter().collect(),
        })
    }

    /// Specializes the trailing variables to the neutral exponent: the
    /// character of the restriction to the rank-`new_rank` subalgebra of
    /// the chain.
    pub fn project(&self, new_rank: u32) -> Result<FormalCharacter> {
        if new_rank == 0 || new_rank > self.rank {
            return Err(Error::InadmissibleRank(format!(
                "cannot project rank {} onto rank {new_rank}",
                self.rank
            )));
        }
        let mut terms: BTreeMap<Vec<i64>, BigUint> = BTreeMap::new();
        for (k, m) in &self.terms {
            let key = k[..new_rank as usize].to_vec();
            *terms.entry(key).or_insert_with(BigUint::zero) += m;
        }
        Ok(FormalCharacter {
            family: self.family,
            rank: new_rank,
            terms,
        })
    }

    /// Checks invariance under the Weyl group action (permutations for sl,
    /// signed permutations for o/sp) by expanding the orbit of every
    /// dominant term.
    pub fn is_weyl_symmetric(&self) -> bool {
        let mut seen = 0usize;
        for (k, m) in &self.terms {
            if !is_dominant(self.family, k) {
                continue;
            }
            for member in orbit(self.family, k) {
                match self.terms.get(&member) {
                    Some(mm) if mm == m => seen += 1,
                    _ => return false,
                }
            }
        }
        seen == self.terms.len()
    }
}

/// The full character of the irreducible with highest weight `w`.
pub fn character(w: &RankedWeight) -> FormalCharacter {
    let mut terms = BTreeMap::new();
    for (k, m) in dominant_character(w) {
        for member in orbit(w.family, &k) {
            terms.insert(member, m.clone());
        }
    }
    FormalCharacter {
        family: w.family,
        rank: w.rank(),
        terms,
    }
}

/// Writes `c` as the unique nonnegative integer combination of irreducible
/// characters, by repeatedly extracting the lexicographically highest
/// dominant term and subtracting its full dominant-sector character.
/// Returns the factors in lexicographically decreasing highest-weight
/// order. Fails with `NotACharacter` if the input is not such a
/// combination.
pub fn decompose(c: &FormalCharacter) -> Result<Vec<(RankedWeight, BigUint)>> {
    let mut dom: BTreeMap<Vec<i64>, BigUint> = c
        .terms
        .iter()
        .filter(|(k, _)| is_dominant(c.family, k))
        .map(|(k, m)| (k.clone(), m.clone()))
        .collect();

    let mut out: Vec<(RankedWeight, BigUint)> = Vec::new();
    while let Some((key, mult)) = dom.iter().next_back().map(|(k, m)| (k.clone(), m.clone())) {
        let w = RankedWeight::new(c.family, key)?;
        for (u, mu) in dominant_character(&w) {
            let need = &mult * &mu;
            match dom.get_mut(&u) {
                Some(have) => {
                    *have = have.checked_sub(&need).ok_or_else(|| {
                        Error::NotACharacter(format!(
                            "subtracting {need}·x^{u:?} of {w} drives the multiplicity negative"
                        ))
                    })?;
                    if have.is_zero() {
                        dom.remove(&u);
                    }
                }
                None => {
                    return Err(Error::NotACharacter(format!(
                        "missing dominant term {u:?} required by constituent {w}"
                    )))
                }
            }
        }
        out.push((w, mult));
    }

    let ledger: BigUint = out.iter().map(|(w, m)| m * dim(w)).sum();
    if ledger != c.mass() {
        return Err(Error::NotACharacter(format!(
            "constituent dimensions sum to {ledger} but the input has mass {}; \
             the input is not Weyl-symmetric",
            c.mass()
        )));
    }
    Ok(out)
}
