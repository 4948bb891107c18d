//! Monomial subspaces of `∧³V₉` spanned by wedges of coordinate subspaces.
//!
//! For coordinate subspaces `A, B, C ⊂ V₉` the space `A∧B∧C` is spanned by the
//! monomials `e_a∧e_b∧e_c` with `a∈A, b∈B, c∈C` pairwise distinct, so sums and
//! intersections of such spaces are unions and intersections of monomial sets.

use std::fmt;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const N: usize = 9;
pub const NUM_MONOMIALS: usize = 84;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrivectorError {
    #[error("index {0} out of range 1..=9")]
    IndexOutOfRange(usize),
    #[error("wedge term needs exactly three factors, got {0}")]
    FactorCount(usize),
}

/// A coordinate subspace `⟨e_i : i ∈ S⟩` of `V₉`, `S ⊂ {1,…,9}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSubspace(u16);

impl IndexSubspace {
    pub fn new(indices: &[usize]) -> Result<Self, TrivectorError> {
        let mut mask = 0u16;
        for &i in indices {
            if !(1..=N).contains(&i) {
                return Err(TrivectorError::IndexOutOfRange(i));
            }
            mask |= 1 << (i - 1);
        }
        Ok(IndexSubspace(mask))
    }

    /// `⟨e_1, …, e_k⟩`.
    pub fn initial(k: usize) -> Self {
        assert!(k <= N);
        IndexSubspace(((1u32 << k) - 1) as u16)
    }

    pub fn full() -> Self {
        Self::initial(N)
    }

    pub fn zero() -> Self {
        IndexSubspace(0)
    }

    pub fn from_mask(mask: u16) -> Self {
        IndexSubspace(mask & ((1 << N) - 1))
    }

    pub fn mask(&self) -> u16 {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=N).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn indices(&self) -> Vec<usize> {
        (1..=N).filter(|&i| self.contains(i)).collect()
    }

    pub fn sum(&self, other: &Self) -> Self {
        IndexSubspace(self.0 | other.0)
    }

    pub fn meet(&self, other: &Self) -> Self {
        IndexSubspace(self.0 & other.0)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }
}

impl fmt::Debug for IndexSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        write!(f, "⟩")
    }
}

impl Serialize for IndexSubspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSubspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        IndexSubspace::new(&v).map_err(serde::de::Error::custom)
    }
}

static TRIPLES: LazyLock<Vec<[usize; 3]>> = LazyLock::new(|| {
    let mut t = Vec::with_capacity(NUM_MONOMIALS);
    for a in 1..=N {
        for b in a + 1..=N {
            for c in b + 1..=N {
                t.push([a, b, c]);
            }
        }
    }
    t
});

/// Position of `e_a∧e_b∧e_c` (`a<b<c`) in the lexicographic monomial basis.
pub fn monomial_index(t: [usize; 3]) -> usize {
    TRIPLES.binary_search(&t).expect("sorted distinct triple in 1..=9")
}

pub fn monomial(i: usize) -> [usize; 3] {
    TRIPLES[i]
}

/// A set of monomials `e_a∧e_b∧e_c`, one bit per basis element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MonomialSet(u128);

impl MonomialSet {
    pub fn empty() -> Self {
        MonomialSet(0)
    }

    pub fn all() -> Self {
        MonomialSet((1u128 << NUM_MONOMIALS) - 1)
    }

    pub fn from_triples(ts: &[[usize; 3]]) -> Self {
        let mut s = MonomialSet::empty();
        for t in ts {
            let mut t = *t;
            t.sort_unstable();
            s.0 |= 1u128 << monomial_index(t);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, t: [usize; 3]) -> bool {
        let mut t = t;
        t.sort_unstable();
        self.0 & (1u128 << monomial_index(t)) != 0
    }

    pub fn union(&self, o: &Self) -> Self {
        MonomialSet(self.0 | o.0)
    }

    pub fn intersection(&self, o: &Self) -> Self {
        MonomialSet(self.0 & o.0)
    }

    pub fn difference(&self, o: &Self) -> Self {
        MonomialSet(self.0 & !o.0)
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn triples(&self) -> Vec<[usize; 3]> {
        (0..NUM_MONOMIALS).filter(|i| self.0 & (1u128 << i) != 0).map(monomial).collect()
    }

    /// Monomials as strings such as `"145"`.
    pub fn labels(&self) -> Vec<String> {
        self.triples().iter().map(|t| format!("{}{}{}", t[0], t[1], t[2])).collect()
    }
}

impl fmt::Debug for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

/// `A∧B∧C`, stored with its factors sorted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct WedgeTerm {
    pub factors: [IndexSubspace; 3],
}

impl WedgeTerm {
    pub fn new(a: IndexSubspace, b: IndexSubspace, c: IndexSubspace) -> Self {
        let mut factors = [a, b, c];
        factors.sort();
        WedgeTerm { factors }
    }

    pub fn span(&self) -> MonomialSet {
        let [a, b, c] = self.factors;
        let mut s = 0u128;
        for (i, t) in TRIPLES.iter().enumerate() {
            let [x, y, z] = *t;
            let fits = |p: usize, q: usize, r: usize| a.contains(p) && b.contains(q) && c.contains(r);
            if fits(x, y, z) || fits(x, z, y) || fits(y, x, z) || fits(y, z, x) || fits(z, x, y) || fits(z, y, x) {
                s |= 1u128 << i;
            }
        }
        MonomialSet(s)
    }
}

#[derive(Deserialize)]
struct WedgeTermJson {
    factors: Vec<IndexSubspace>,
}

impl<'de> Deserialize<'de> for WedgeTerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = WedgeTermJson::deserialize(d)?;
        match raw.factors[..] {
            [a, b, c] => Ok(WedgeTerm::new(a, b, c)),
            _ => Err(serde::de::Error::custom(TrivectorError::FactorCount(raw.factors.len()))),
        }
    }
}

/// A sum of wedge terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct TrivectorExpr {
    pub terms: Vec<WedgeTerm>,
}

impl TrivectorExpr {
    pub fn zero() -> Self {
        TrivectorExpr { terms: Vec::new() }
    }

    pub fn wedge(a: IndexSubspace, b: IndexSubspace, c: IndexSubspace) -> Self {
        TrivectorExpr { terms: vec![WedgeTerm::new(a, b, c)] }
    }

    /// `U ∧ ∧²V₉`.
    pub fn u_wedge2v(u: IndexSubspace) -> Self {
        Self::wedge(u, IndexSubspace::full(), IndexSubspace::full())
    }

    /// `∧²U ∧ V₉`.
    pub fn wedge2u_v(u: IndexSubspace) -> Self {
        Self::wedge(u, u, IndexSubspace::full())
    }

    /// `∧³U`.
    pub fn wedge3(u: IndexSubspace) -> Self {
        Self::wedge(u, u, u)
    }

    pub fn plus(mut self, other: TrivectorExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn span(&self) -> MonomialSet {
        self.terms.iter().fold(MonomialSet::empty(), |s, t| s.union(&t.span()))
    }

    pub fn dim(&self) -> usize {
        self.span().len()
    }
}

impl std::ops::Add for TrivectorExpr {
    type Output = TrivectorExpr;
    fn add(self, rhs: TrivectorExpr) -> TrivectorExpr {
        self.plus(rhs)
    }
}

pub fn span(e: &TrivectorExpr) -> MonomialSet {
    e.span()
}

pub fn dim(e: &TrivectorExpr) -> usize {
    e.dim()
}

pub fn intersect_dim(a: &TrivectorExpr, b: &TrivectorExpr) -> usize {
    a.span().intersection(&b.span()).len()
}

/// `dim a − dim(a ∩ b)`.
pub fn quotient_rank(a: &TrivectorExpr, b: &TrivectorExpr) -> usize {
    a.span().difference(&b.span()).len()
}

pub mod oracle {
    //! Dimensions recomputed from actual trivectors after a random change of basis.

    use num_bigint::BigInt;
    use rand::Rng;

    use super::{IndexSubspace, TrivectorExpr, N, NUM_MONOMIALS};
    use crate::linalg::{mat_vec, rank, wedge3, RandomGl};

    /// Decomposable trivectors `u∧v∧w` with `u, v, w` random in `g·A, g·B, g·C`.
    pub fn sample_vectors<R: Rng>(e: &TrivectorExpr, g: &RandomGl, rng: &mut R) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        for t in &e.terms {
            let [a, b, c] = t.factors;
            let bound = (a.dim() * b.dim() * c.dim()).min(NUM_MONOMIALS);
            for _ in 0..bound + 8 {
                let u = random_in(a, g, rng);
                let v = random_in(b, g, rng);
                let w = random_in(c, g, rng);
                out.push(wedge3(&u, &v, &w));
            }
        }
        out
    }

    fn random_in<R: Rng>(s: IndexSubspace, g: &RandomGl, rng: &mut R) -> Vec<BigInt> {
        let x: Vec<BigInt> =
            (1..=N).map(|i| if s.contains(i) { BigInt::from(rng.gen_range(-3i64..=3)) } else { BigInt::from(0) }).collect();
        mat_vec(&g.g, &x)
    }

    pub fn dim<R: Rng>(e: &TrivectorExpr, g: &RandomGl, rng: &mut R) -> usize {
        rank(&sample_vectors(e, g, rng))
    }

    /// `dim a + dim b − dim(a + b)`.
    pub fn intersect_dim<R: Rng>(a: &TrivectorExpr, b: &TrivectorExpr, g: &RandomGl, rng: &mut R) -> usize {
        let va = sample_vectors(a, g, rng);
        let vb = sample_vectors(b, g, rng);
        let both: Vec<_> = va.iter().chain(vb.iter()).cloned().collect();
        rank(&va) + rank(&vb) - rank(&both)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_gl;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s(ix: &[usize]) -> IndexSubspace {
        IndexSubspace::new(ix).unwrap()
    }

    fn space_a() -> TrivectorExpr {
        TrivectorExpr::u_wedge2v(s(&[1, 2])) + TrivectorExpr::wedge2u_v(IndexSubspace::initial(5))
    }

    #[test]
    fn basic_spans() {
        assert_eq!(TrivectorExpr::wedge3(IndexSubspace::full()).dim(), 84);
        assert_eq!(TrivectorExpr::u_wedge2v(s(&[1, 2])).dim(), 49);
        assert_eq!(space_a().dim(), 62);
        assert_eq!(quotient_rank(&TrivectorExpr::wedge3(IndexSubspace::full()), &space_a()), 22);
        let e = TrivectorExpr::u_wedge2v(IndexSubspace::initial(3)) + TrivectorExpr::wedge3(IndexSubspace::initial(6));
        assert_eq!(quotient_rank(&TrivectorExpr::wedge3(IndexSubspace::full()), &e), 19);
    }

    #[test]
    fn open_stratum_basis() {
        let b = TrivectorExpr::u_wedge2v(s(&[3])) + TrivectorExpr::wedge2u_v(s(&[3, 4, 6, 7, 8, 9]));
        assert_eq!(intersect_dim(&space_a(), &b), 46);
        assert_eq!(quotient_rank(&space_a(), &b), 16);
        let p = space_a().span().difference(&b.span());
        let mut labels = p.labels();
        labels.sort();
        let mut expected: Vec<String> = ["145", "156", "157", "158", "159", "245", "256", "257", "258", "259", "124", "125", "126", "127", "128", "129"]
            .iter()
            .map(|x| x.to_string())
            .collect();
        expected.sort();
        assert_eq!(labels, expected);
    }

    #[test]
    fn repeated_factor_needs_distinct_indices() {
        assert!(TrivectorExpr::wedge3(s(&[1, 2])).span().is_empty());
        assert_eq!(TrivectorExpr::wedge3(s(&[1, 2, 3])).dim(), 1);
        assert_eq!(TrivectorExpr::wedge(s(&[1]), s(&[1]), IndexSubspace::full()).dim(), 0);
    }

    #[test]
    fn factor_order_is_irrelevant() {
        let a = WedgeTerm::new(s(&[1, 2]), IndexSubspace::full(), s(&[3]));
        let b = WedgeTerm::new(s(&[3]), s(&[1, 2]), IndexSubspace::full());
        assert_eq!(a, b);
    }

    #[test]
    fn json_format() {
        let js = r#"{"terms":[{"factors":[[1,2],[1,2,3,4,5,6,7,8,9],[1,2,3,4,5,6,7,8,9]]},{"factors":[[1,2,3,4,5],[1,2,3,4,5],[1,2,3,4,5,6,7,8,9]]}]}"#;
        let e: TrivectorExpr = serde_json::from_str(js).unwrap();
        assert_eq!(e.dim(), 62);
        let back: TrivectorExpr = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<TrivectorExpr>(r#"{"terms":[{"factors":[[1],[2]]}]}"#).is_err());
        assert!(serde_json::from_str::<TrivectorExpr>(r#"{"terms":[{"factors":[[0],[2],[3]]}]}"#).is_err());
    }

    #[test]
    fn oracle_matches_on_space_a() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_gl(9, 3, &mut rng);
        assert_eq!(oracle::dim(&space_a(), &g, &mut rng), 62);
        let b = TrivectorExpr::u_wedge2v(s(&[3])) + TrivectorExpr::wedge2u_v(s(&[3, 4, 6, 7, 8, 9]));
        assert_eq!(oracle::intersect_dim(&space_a(), &b, &g, &mut rng), 46);
    }
}
