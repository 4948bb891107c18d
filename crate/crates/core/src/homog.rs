//! Completely reducible homogeneous bundles on a Grassmannian `G(k,n)`.
//!
//! A summand is `S_α(U^∨) ⊗ S_β(Q^∨) ⊗ O(t)` where `U` is the rank `k`
//! tautological subbundle, `Q` the rank `n−k` quotient and `O(1) = det U^∨`.
//! Consequently `det Q^∨ = O(−1)` (up to the trivial character `det V`).
//!
//! Summands are stored in a canonical form where both `α` and `β` end in `0`;
//! the determinant factors are absorbed into the twist. Two summands are
//! isomorphic (up to `det V`) iff their canonical forms agree.
//!
//! Cohomology follows Bott's theorem: the weight `(α + t, β)` is shifted by
//! `ρ = (n−1,…,1,0)` and sorted. A repeated entry means the bundle is acyclic;
//! otherwise `H^ℓ = S_{sorted−ρ} V^∨` where `ℓ` is the number of inversions.
//! With this block order `H^0(U^∨) = V^∨`, `H^0(∧³Q) = ∧³V` and
//! `H^3(S³Q^∨(−1)) = C`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weights::{bott_sort, lr_product, weyl_dimension, BottSort, Decomposition, GlWeight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomogError {
    #[error("bundles live on different Grassmannians: G({0},{1}) vs G({2},{3})")]
    GrassmannianMismatch(usize, usize, usize, usize),
    #[error("weight block has rank {got}, expected {expected}")]
    BlockRank { expected: usize, got: usize },
    #[error("invalid weight: {0}")]
    Weight(#[from] crate::weights::WeightError),
    #[error("exterior powers are only supported for a single line or (co)vector-type tautological summand, got {0}")]
    UnsupportedExteriorPower(String),
}

/// The Grassmannian `G(k,n)` of `k`-planes in an `n`-dimensional space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Grassmannian {
    pub k: usize,
    pub n: usize,
}

impl Grassmannian {
    pub const G39: Grassmannian = Grassmannian { k: 3, n: 9 };

    pub fn new(k: usize, n: usize) -> Self {
        assert!(0 < k && k < n, "need 0 < k < n");
        Grassmannian { k, n }
    }

    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    /// `K_G = O(−n)`.
    pub fn canonical_twist(&self) -> i64 {
        -(self.n as i64)
    }

    pub fn canonical_bundle(&self) -> HomogeneousBundle {
        HomogeneousBundle::line(*self, self.canonical_twist())
    }
}

/// `S_u(U^∨) ⊗ S_q(Q^∨) ⊗ O(t)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleSummand {
    g: Grassmannian,
    u: GlWeight,
    q: GlWeight,
    twist: i64,
}

impl BundleSummand {
    pub fn new(g: Grassmannian, u: GlWeight, q: GlWeight, twist: i64) -> Result<Self, HomogError> {
        if u.rank() != g.k {
            return Err(HomogError::BlockRank { expected: g.k, got: u.rank() });
        }
        if q.rank() != g.n - g.k {
            return Err(HomogError::BlockRank { expected: g.n - g.k, got: q.rank() });
        }
        // S_{α+c}U^∨ = S_α U^∨ ⊗ O(c);  S_{β+c}Q^∨ = S_β Q^∨ ⊗ O(−c)
        let cu = u.last();
        let cq = q.last();
        Ok(BundleSummand { g, u: u.shifted(-cu), q: q.shifted(-cq), twist: twist + cu - cq })
    }

    pub fn from_parts(g: Grassmannian, u: &[i64], q: &[i64], twist: i64) -> Result<Self, HomogError> {
        Self::new(g, GlWeight::new(u.to_vec())?, GlWeight::new(q.to_vec())?, twist)
    }

    pub fn line(g: Grassmannian, t: i64) -> Self {
        BundleSummand { g, u: GlWeight::trivial(g.k), q: GlWeight::trivial(g.n - g.k), twist: t }
    }

    pub fn grassmannian(&self) -> Grassmannian {
        self.g
    }

    pub fn u(&self) -> &GlWeight {
        &self.u
    }

    pub fn q(&self) -> &GlWeight {
        &self.q
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn rank(&self) -> BigUint {
        weyl_dimension(&self.u) * weyl_dimension(&self.q)
    }

    pub fn twisted(&self, t: i64) -> Self {
        BundleSummand { twist: self.twist + t, ..self.clone() }
    }

    pub fn dual(&self) -> Self {
        BundleSummand::new(self.g, self.u.dual(), self.q.dual(), -self.twist)
            .expect("dual keeps block ranks")
    }

    /// The length-`n` weight fed to Bott's algorithm (before adding `ρ`).
    pub fn bott_weight(&self) -> Vec<i64> {
        self.u
            .entries()
            .iter()
            .map(|x| x + self.twist)
            .chain(self.q.entries().iter().copied())
            .collect()
    }
}

impl fmt::Debug for BundleSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}U^∨⊗S{}Q^∨({})", self.u, self.q, self.twist)
    }
}

impl fmt::Display for BundleSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// JSON form of one summand: `{u:[..], q:[..], t:int, mult:int}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub u: Vec<i64>,
    pub q: Vec<i64>,
    pub t: i64,
    #[serde(default = "one_u64")]
    pub mult: u64,
}

fn one_u64() -> u64 {
    1
}

/// A formal sum of summands with positive multiplicities.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousBundle {
    g: Grassmannian,
    summands: BTreeMap<BundleSummand, BigUint>,
}

impl HomogeneousBundle {
    pub fn zero(g: Grassmannian) -> Self {
        HomogeneousBundle { g, summands: BTreeMap::new() }
    }

    pub fn line(g: Grassmannian, t: i64) -> Self {
        Self::from(BundleSummand::line(g, t))
    }

    /// Trivial bundle `O`.
    pub fn structure_sheaf(g: Grassmannian) -> Self {
        Self::line(g, 0)
    }

    /// `U^∨`.
    pub fn dual_tautological(g: Grassmannian) -> Self {
        let mut u = vec![0; g.k];
        u[0] = 1;
        Self::from(BundleSummand::from_parts(g, &u, &vec![0; g.n - g.k], 0).unwrap())
    }

    /// `U`.
    pub fn tautological(g: Grassmannian) -> Self {
        Self::dual_tautological(g).dual()
    }

    /// `Q^∨`.
    pub fn dual_quotient(g: Grassmannian) -> Self {
        let mut q = vec![0; g.n - g.k];
        q[0] = 1;
        Self::from(BundleSummand::from_parts(g, &vec![0; g.k], &q, 0).unwrap())
    }

    pub fn grassmannian(&self) -> Grassmannian {
        self.g
    }

    pub fn add_summand(&mut self, s: BundleSummand, mult: BigUint) {
        assert_eq!(s.g, self.g, "summand on a different Grassmannian");
        if !mult.is_zero() {
            *self.summands.entry(s).or_default() += mult;
        }
    }

    pub fn direct_sum(&self, other: &HomogeneousBundle) -> Result<Self, HomogError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (s, m) in &other.summands {
            out.add_summand(s.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn summands(&self) -> impl Iterator<Item = (&BundleSummand, &BigUint)> {
        self.summands.iter()
    }

    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn rank(&self) -> BigUint {
        self.summands.iter().map(|(s, m)| m * s.rank()).sum()
    }

    pub fn twisted(&self, t: i64) -> Self {
        HomogeneousBundle {
            g: self.g,
            summands: self.summands.iter().map(|(s, m)| (s.twisted(t), m.clone())).collect(),
        }
    }

    pub fn dual(&self) -> Self {
        HomogeneousBundle {
            g: self.g,
            summands: self.summands.iter().map(|(s, m)| (s.dual(), m.clone())).collect(),
        }
    }

    pub fn tensor(&self, other: &HomogeneousBundle) -> Result<Self, HomogError> {
        self.check_same(other)?;
        let mut out = HomogeneousBundle::zero(self.g);
        for (a, ma) in &self.summands {
            for (b, mb) in &other.summands {
                let mult = ma * mb;
                let us = lr_product(&a.u, &b.u)?;
                let qs = lr_product(&a.q, &b.q)?;
                for (u, mu) in us.iter() {
                    for (q, mq) in qs.iter() {
                        let s = BundleSummand::new(self.g, u.clone(), q.clone(), a.twist + b.twist)?;
                        out.add_summand(s, &mult * mu * mq);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_same(&self, other: &HomogeneousBundle) -> Result<(), HomogError> {
        if self.g != other.g {
            return Err(HomogError::GrassmannianMismatch(self.g.k, self.g.n, other.g.k, other.g.n));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Vec<SummandJson> {
        self.summands
            .iter()
            .map(|(s, m)| SummandJson {
                u: s.u.entries().to_vec(),
                q: s.q.entries().to_vec(),
                t: s.twist,
                mult: m.try_into().expect("multiplicity fits u64"),
            })
            .collect()
    }

    pub fn from_json(g: Grassmannian, items: &[SummandJson]) -> Result<Self, HomogError> {
        let mut out = HomogeneousBundle::zero(g);
        for it in items {
            out.add_summand(BundleSummand::from_parts(g, &it.u, &it.q, it.t)?, BigUint::from(it.mult));
        }
        Ok(out)
    }
}

impl From<BundleSummand> for HomogeneousBundle {
    fn from(s: BundleSummand) -> Self {
        let mut b = HomogeneousBundle::zero(s.g);
        b.add_summand(s, BigUint::one());
        b
    }
}

impl fmt::Debug for HomogeneousBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, m)) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            if !m.is_one() {
                write!(f, "{m}·")?;
            }
            write!(f, "{s:?}")?;
        }
        Ok(())
    }
}

/// Cohomology groups of a homogeneous bundle as `GL(n)`-representations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    groups: BTreeMap<usize, Decomposition>,
}

impl CohomologyTable {
    pub fn group(&self, h: usize) -> Option<&Decomposition> {
        self.groups.get(&h)
    }

    pub fn dim(&self, h: usize) -> BigUint {
        self.groups.get(&h).map(|d| d.dimension()).unwrap_or_default()
    }

    /// Nonzero `(degree, dimension)` pairs in increasing degree.
    pub fn dims(&self) -> Vec<(usize, BigUint)> {
        self.groups.iter().map(|(h, d)| (*h, d.dimension())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.groups
            .iter()
            .map(|(h, d)| {
                let v = BigInt::from(d.dimension());
                if h % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    fn accumulate(&mut self, h: usize, d: &Decomposition, mult: &BigUint) {
        self.groups.entry(h).or_default().merge(d, mult);
    }
}

/// Bott's theorem for one irreducible summand.
pub fn bott_cohomology(s: &BundleSummand) -> CohomologyTable {
    let n = s.g.n;
    let v: Vec<i64> = s
        .bott_weight()
        .iter()
        .enumerate()
        .map(|(i, x)| x + (n - 1 - i) as i64)
        .collect();
    let mut table = CohomologyTable::default();
    if let BottSort::Sorted { weight, inversions } = bott_sort(&v) {
        let lambda: Vec<i64> = weight.iter().enumerate().map(|(i, x)| x - (n - 1 - i) as i64).collect();
        let lambda = GlWeight::new(lambda).expect("sorted minus rho is dominant");
        table.accumulate(inversions, &Decomposition::single(lambda), &BigUint::one());
    }
    table
}

pub fn cohomology(b: &HomogeneousBundle) -> CohomologyTable {
    let mut table = CohomologyTable::default();
    for (s, m) in &b.summands {
        for (h, d) in &bott_cohomology(s).groups {
            table.accumulate(*h, d, m);
        }
    }
    table
}

pub fn euler_characteristic(b: &HomogeneousBundle) -> BigInt {
    cohomology(b).euler_characteristic()
}

/// Minuscule shape of a summand whose exterior powers are computable.
enum ExteriorKind {
    /// Line bundle `O(t)`.
    Line,
    /// `(vector representation of the block) ⊗ O(t)`; `on_u` picks the block.
    Vector { on_u: bool },
    /// `(dual vector representation) ⊗ O(t)` encoded as `(1,…,1,0)`.
    Covector { on_u: bool },
}

fn classify(s: &BundleSummand) -> Option<ExteriorKind> {
    let is_zero = |w: &GlWeight| w.entries().iter().all(|&x| x == 0);
    let is_vector = |w: &GlWeight| w.first() == 1 && w.entries()[1..].iter().all(|&x| x == 0);
    let is_covector = |w: &GlWeight| {
        let e = w.entries();
        e.len() >= 2 && e[..e.len() - 1].iter().all(|&x| x == 1) && e[e.len() - 1] == 0
    };
    match (is_zero(&s.u), is_zero(&s.q)) {
        (true, true) => Some(ExteriorKind::Line),
        (false, true) if is_vector(&s.u) => Some(ExteriorKind::Vector { on_u: true }),
        (false, true) if is_covector(&s.u) => Some(ExteriorKind::Covector { on_u: true }),
        (true, false) if is_vector(&s.q) => Some(ExteriorKind::Vector { on_u: false }),
        (true, false) if is_covector(&s.q) => Some(ExteriorKind::Covector { on_u: false }),
        _ => None,
    }
}

fn exterior_power_of_summand(s: &BundleSummand, a: usize) -> Result<HomogeneousBundle, HomogError> {
    let g = s.g;
    let kind = classify(s).ok_or_else(|| HomogError::UnsupportedExteriorPower(format!("{s:?}")))?;
    if a == 0 {
        return Ok(HomogeneousBundle::structure_sheaf(g));
    }
    let t = s.twist * a as i64;
    let block = |on_u: bool, w: Vec<i64>| -> Result<HomogeneousBundle, HomogError> {
        let (u, q) = if on_u { (w, vec![0; g.n - g.k]) } else { (vec![0; g.k], w) };
        Ok(BundleSummand::from_parts(g, &u, &q, t)?.into())
    };
    match kind {
        ExteriorKind::Line => Ok(if a == 1 { s.clone().into() } else { HomogeneousBundle::zero(g) }),
        ExteriorKind::Vector { on_u } | ExteriorKind::Covector { on_u } => {
            let r = if on_u { g.k } else { g.n - g.k };
            if a > r {
                return Ok(HomogeneousBundle::zero(g));
            }
            let w: Vec<i64> = if matches!(kind, ExteriorKind::Vector { .. }) {
                // ∧^a of the vector representation: (1^a, 0^{r−a})
                (0..r).map(|i| i64::from(i < a)).collect()
            } else {
                // covector (1,…,1,0) = (0,…,0,−1) + 1; ∧^a = (0^{r−a}, (−1)^a) + a
                (0..r).map(|i| if i >= r - a { a as i64 - 1 } else { a as i64 }).collect()
            };
            block(on_u, w)
        }
    }
}

/// `∧^i(⊕ factors)` for factors that are each a single line, vector-type or
/// covector-type tautological summand.
pub fn exterior_power_of_sum(factors: &[HomogeneousBundle], i: usize) -> Result<HomogeneousBundle, HomogError> {
    let g = factors.first().map(|f| f.g).ok_or_else(|| HomogError::UnsupportedExteriorPower("empty sum".into()))?;
    let mut singles = Vec::with_capacity(factors.len());
    for f in factors {
        f.check_same(&HomogeneousBundle::zero(g))?;
        let mut it = f.summands.iter();
        match (it.next(), it.next()) {
            (Some((s, m)), None) if m.is_one() => singles.push(s.clone()),
            _ => return Err(HomogError::UnsupportedExteriorPower(format!("{f:?}"))),
        }
    }
    let ranks: Vec<usize> = singles
        .iter()
        .map(|s| s.rank().try_into().expect("rank fits usize"))
        .collect();
    let mut out = HomogeneousBundle::zero(g);
    let mut comp = vec![0usize; singles.len()];
    compositions(&ranks, i, 0, &mut comp, &mut |c| {
        let mut acc = HomogeneousBundle::structure_sheaf(g);
        for (s, &a) in singles.iter().zip(c) {
            let p = exterior_power_of_summand(s, a)?;
            acc = acc.tensor(&p)?;
        }
        out = out.direct_sum(&acc)?;
        Ok(())
    })?;
    Ok(out)
}

fn compositions<F>(caps: &[usize], total: usize, pos: usize, cur: &mut Vec<usize>, f: &mut F) -> Result<(), HomogError>
where
    F: FnMut(&[usize]) -> Result<(), HomogError>,
{
    if pos == caps.len() {
        return if total == 0 { f(cur) } else { Ok(()) };
    }
    for a in 0..=caps[pos].min(total) {
        cur[pos] = a;
        compositions(caps, total - a, pos + 1, cur, f)?;
    }
    cur[pos] = 0;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: Grassmannian = Grassmannian::G39;

    fn summand(u: &[i64], q: &[i64], t: i64) -> BundleSummand {
        BundleSummand::from_parts(G, u, q, t).unwrap()
    }

    fn single_group(s: &BundleSummand) -> Option<(usize, BigUint)> {
        let d = bott_cohomology(s).dims();
        assert!(d.len() <= 1);
        d.into_iter().next()
    }

    #[test]
    fn convention_anchors() {
        // ∧³Q = S_{(0,0,0,−1,−1,−1)}Q^∨ has H^0 = ∧³V of dimension 84
        let wedge3_q = summand(&[0, 0, 0], &[0, 0, 0, -1, -1, -1], 0);
        assert_eq!(wedge3_q, summand(&[0, 0, 0], &[1, 1, 1, 0, 0, 0], 1));
        assert_eq!(single_group(&wedge3_q), Some((0, 84u32.into())));
        // S³Q^∨(−1) has a single H³ of dimension 1
        assert_eq!(single_group(&summand(&[0, 0, 0], &[3, 0, 0, 0, 0, 0], -1)), Some((3, 1u32.into())));
        assert_eq!(single_group(&BundleSummand::line(G, 0)), Some((0, 1u32.into())));
        assert_eq!(single_group(&BundleSummand::line(G, 1)), Some((0, 84u32.into())));
    }

    #[test]
    fn wedge3_dual_quotient_is_acyclic() {
        assert_eq!(single_group(&summand(&[0, 0, 0], &[1, 1, 1, 0, 0, 0], 0)), None);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&HomogeneousBundle::structure_sheaf(G)), 1.into());
        let s3 = HomogeneousBundle::from(summand(&[0, 0, 0], &[3, 0, 0, 0, 0, 0], -1));
        assert_eq!(euler_characteristic(&s3), (-1).into());
        let w3q = HomogeneousBundle::from(summand(&[0, 0, 0], &[0, 0, 0, -1, -1, -1], 0));
        assert_eq!(euler_characteristic(&w3q), 84.into());
        assert_eq!(euler_characteristic(&HomogeneousBundle::dual_tautological(G)), 9.into());
    }

    #[test]
    fn canonical_bundle_has_top_cohomology() {
        let k = G.canonical_bundle();
        assert_eq!(cohomology(&k).dims(), vec![(18, 1u32.into())]);
    }

    #[test]
    fn tensor_examples() {
        let o2 = HomogeneousBundle::line(G, 2);
        let o3 = HomogeneousBundle::line(G, -5);
        assert_eq!(o2.tensor(&o3).unwrap(), HomogeneousBundle::line(G, -3));
        let ud = HomogeneousBundle::dual_tautological(G);
        let sq = ud.tensor(&ud).unwrap();
        let expected = HomogeneousBundle::from(summand(&[2, 0, 0], &[0; 6], 0))
            .direct_sum(&HomogeneousBundle::from(summand(&[1, 1, 0], &[0; 6], 0)))
            .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn tensor_rank_mismatch_errors() {
        let other = HomogeneousBundle::structure_sheaf(Grassmannian::new(2, 5));
        assert!(matches!(
            HomogeneousBundle::structure_sheaf(G).tensor(&other),
            Err(HomogError::GrassmannianMismatch(..))
        ));
    }

    #[test]
    fn duals() {
        assert_eq!(HomogeneousBundle::line(G, 4).dual(), HomogeneousBundle::line(G, -4));
        let s = HomogeneousBundle::from(summand(&[0, 0, 0], &[2, 1, 1, 1, 1, 0], 0));
        assert_eq!(s.dual(), HomogeneousBundle::from(summand(&[0, 0, 0], &[2, 1, 1, 1, 1, 0], 2)));
        let u = HomogeneousBundle::tautological(G);
        assert_eq!(u, HomogeneousBundle::from(summand(&[0, 0, -1], &[0; 6], 0)));
        assert_eq!(u, HomogeneousBundle::from(summand(&[1, 1, 0], &[0; 6], -1)));
    }

    #[test]
    fn exterior_powers_of_two_copies() {
        let ud = HomogeneousBundle::dual_tautological(G);
        let f = [ud.clone(), ud.clone()];
        assert_eq!(exterior_power_of_sum(&f, 0).unwrap(), HomogeneousBundle::structure_sheaf(G));
        let w2 = exterior_power_of_sum(&f, 2).unwrap();
        let mut expected = HomogeneousBundle::from(summand(&[2, 0, 0], &[0; 6], 0));
        expected.add_summand(summand(&[1, 1, 0], &[0; 6], 0), 3u32.into());
        assert_eq!(w2, expected);
        // rank identity Σ_{a+b=i} C(3,a)C(3,b) = C(6,i)
        let binom = [1u32, 6, 15, 20, 15, 6, 1];
        for (i, &c) in binom.iter().enumerate() {
            assert_eq!(exterior_power_of_sum(&f, i).unwrap().rank(), c.into());
        }
        assert!(exterior_power_of_sum(&f, 7).unwrap().is_zero());
        // ∧⁶(U^∨⊕U^∨) = O(2)
        assert_eq!(exterior_power_of_sum(&f, 6).unwrap(), HomogeneousBundle::line(G, 2));
        let u = HomogeneousBundle::tautological(G);
        assert_eq!(exterior_power_of_sum(&[u.clone(), u], 6).unwrap(), HomogeneousBundle::line(G, -2));
    }

    #[test]
    fn exterior_power_of_quotient_types() {
        let qd = HomogeneousBundle::dual_quotient(G);
        assert_eq!(exterior_power_of_sum(std::slice::from_ref(&qd), 6).unwrap(), HomogeneousBundle::line(G, -1));
        let q = qd.dual();
        let w3 = exterior_power_of_sum(&[q], 3).unwrap();
        assert_eq!(w3, HomogeneousBundle::from(summand(&[0, 0, 0], &[0, 0, 0, -1, -1, -1], 0)));
    }

    #[test]
    fn exterior_power_rejects_composite() {
        let ud = HomogeneousBundle::dual_tautological(G);
        let sq = ud.tensor(&ud).unwrap();
        assert!(matches!(
            exterior_power_of_sum(&[sq], 2),
            Err(HomogError::UnsupportedExteriorPower(_))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let b = HomogeneousBundle::tautological(G).direct_sum(&HomogeneousBundle::line(G, 3)).unwrap();
        let js = serde_json::to_string(&b.to_json()).unwrap();
        let back: Vec<SummandJson> = serde_json::from_str(&js).unwrap();
        assert_eq!(HomogeneousBundle::from_json(G, &back).unwrap(), b);
    }
}
