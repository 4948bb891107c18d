//! Dominant weights of `GL(n)` and the combinatorics built on them.
//!
//! A [`GlWeight`] is a weakly decreasing integer sequence; it labels the
//! irreducible polynomial-times-determinant representation `S_w(C^n)`.
//! Entries may be negative. Tensor products are decomposed with the
//! Littlewood–Richardson rule after translating both factors to partitions
//! (`S_{w + c·1} = S_w ⊗ det^c`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("weight {0:?} is not weakly decreasing")]
    NotDominant(Vec<i64>),
    #[error("weight has rank zero")]
    Empty,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

/// A dominant weight of `GL(n)`, `n = entries.len()`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GlWeight(Vec<i64>);

impl GlWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self, WeightError> {
        if entries.is_empty() {
            return Err(WeightError::Empty);
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(WeightError::NotDominant(entries));
        }
        Ok(GlWeight(entries))
    }

    /// The zero weight of rank `n`.
    pub fn trivial(n: usize) -> Self {
        GlWeight(vec![0; n])
    }

    /// A partition padded with zeros to length `n`. Panics if the partition is
    /// longer than `n` or not weakly decreasing.
    pub fn from_partition(parts: &[i64], n: usize) -> Self {
        assert!(parts.len() <= n, "partition {parts:?} longer than rank {n}");
        let mut v = parts.to_vec();
        v.resize(n, 0);
        GlWeight::new(v).expect("partition must be weakly decreasing")
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn first(&self) -> i64 {
        self.0[0]
    }

    pub fn last(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    /// Sum of the entries (degree of the determinant character of `S_w`).
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_partition(&self) -> bool {
        self.last() >= 0
    }

    /// `w + c·(1,…,1)`.
    pub fn shifted(&self, c: i64) -> Self {
        GlWeight(self.0.iter().map(|x| x + c).collect())
    }

    /// Highest weight of the dual representation: negate and reverse.
    pub fn dual(&self) -> Self {
        GlWeight(self.0.iter().rev().map(|x| -x).collect())
    }

    fn to_partition(&self) -> (Vec<usize>, i64) {
        let m = self.last();
        (self.0.iter().map(|x| (x - m) as usize).collect(), m)
    }
}

impl TryFrom<Vec<i64>> for GlWeight {
    type Error = WeightError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        GlWeight::new(v)
    }
}

impl From<GlWeight> for Vec<i64> {
    fn from(w: GlWeight) -> Self {
        w.0
    }
}

impl fmt::Debug for GlWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for GlWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// An arbitrary integer vector, the input of the Bott sorting step.
pub type WeightVector = Vec<i64>;

/// A completely reducible representation: weights with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    terms: BTreeMap<GlWeight, BigUint>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: GlWeight) -> Self {
        let mut d = Self::new();
        d.add(w, BigUint::one());
        d
    }

    pub fn add(&mut self, w: GlWeight, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        if let Some((first, _)) = self.terms.iter().next() {
            assert_eq!(first.rank(), w.rank(), "mixed ranks in decomposition");
        }
        *self.terms.entry(w).or_default() += mult;
    }

    pub fn merge(&mut self, other: &Decomposition, scale: &BigUint) {
        for (w, m) in &other.terms {
            self.add(w.clone(), m * scale);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GlWeight, &BigUint)> {
        self.terms.iter()
    }

    pub fn multiplicity(&self, w: &GlWeight) -> BigUint {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Total dimension `Σ mult · dim S_w`.
    pub fn dimension(&self) -> BigUint {
        self.terms.iter().map(|(w, m)| m * weyl_dimension(w)).sum()
    }

    pub fn shifted(&self, c: i64) -> Self {
        Decomposition {
            terms: self.terms.iter().map(|(w, m)| (w.shifted(c), m.clone())).collect(),
        }
    }
}

impl FromIterator<(GlWeight, BigUint)> for Decomposition {
    fn from_iter<I: IntoIterator<Item = (GlWeight, BigUint)>>(iter: I) -> Self {
        let mut d = Decomposition::new();
        for (w, m) in iter {
            d.add(w, m);
        }
        d
    }
}

/// Weyl dimension formula: `∏_{i<j} (w_i − w_j + j − i)/(j − i)`.
pub fn weyl_dimension(w: &GlWeight) -> BigUint {
    let e = w.entries();
    let n = e.len();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigUint::from((e[i] - e[j] + (j - i) as i64) as u64);
            den *= BigUint::from((j - i) as u64);
        }
    }
    num / den
}

type LrKey = (Vec<usize>, Vec<usize>, usize);
type LrTerms = Vec<(Vec<usize>, u64)>;

static LR_CACHE: LazyLock<RwLock<HashMap<LrKey, LrTerms>>> =
    LazyLock::new(Default::default);

/// Decompose `S_a ⊗ S_b` for two dominant weights of the same rank.
pub fn lr_product(a: &GlWeight, b: &GlWeight) -> Result<Decomposition, WeightError> {
    if a.rank() != b.rank() {
        return Err(WeightError::RankMismatch(a.rank(), b.rank()));
    }
    let n = a.rank();
    let (pa, sa) = a.to_partition();
    let (pb, sb) = b.to_partition();
    // LR coefficients are symmetric; put the larger partition first so the
    // tableau search fills fewer boxes.
    let (big, small) = if pa.iter().sum::<usize>() >= pb.iter().sum::<usize>() {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let coeffs = lr_partitions_cached(&big, &small, n);
    Ok(coeffs
        .into_iter()
        .map(|(nu, m)| {
            let w: Vec<i64> = nu.iter().map(|&x| x as i64 + sa + sb).collect();
            (GlWeight(w), BigUint::from(m))
        })
        .collect())
}

fn lr_partitions_cached(lambda: &[usize], mu: &[usize], n: usize) -> Vec<(Vec<usize>, u64)> {
    let key = (lambda.to_vec(), mu.to_vec(), n);
    if let Some(hit) = LR_CACHE.read().unwrap().get(&key) {
        return hit.clone();
    }
    let result: Vec<_> = lr_partitions(lambda, mu, n).into_iter().collect();
    LR_CACHE.write().unwrap().insert(key, result.clone());
    result
}

/// Littlewood–Richardson coefficients `c^ν_{λμ}` with `ℓ(ν) ≤ n`, by
/// enumerating LR tableaux of shape `ν/λ` and content `μ`.
///
/// Labels are placed one value at a time. Each label forms a horizontal strip
/// on top of the shape built so far, and the reverse reading word (rows top to
/// bottom, each row right to left) must be a lattice word.
pub fn lr_partitions(lambda: &[usize], mu: &[usize], n: usize) -> BTreeMap<Vec<usize>, u64> {
    let mut shape = lambda.to_vec();
    shape.resize(n, 0);
    let mu: Vec<usize> = mu.iter().copied().filter(|&x| x > 0).collect();
    let mut out = BTreeMap::new();
    if mu.len() > n {
        return out;
    }
    // counts[r] of the previous label per row (for the lattice condition)
    let prev = vec![usize::MAX; n];
    place_label(&mut shape, &mu, 0, &prev, &mut out);
    out
}

fn place_label(
    shape: &mut Vec<usize>,
    mu: &[usize],
    label: usize,
    prev_counts: &[usize],
    out: &mut BTreeMap<Vec<usize>, u64>,
) {
    if label == mu.len() {
        *out.entry(shape.clone()).or_insert(0) += 1;
        return;
    }
    let inner = shape.clone();
    let mut counts = vec![0usize; shape.len()];
    distribute(shape, &inner, mu, label, 0, mu[label], 0, 0, prev_counts, &mut counts, out);
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    shape: &mut Vec<usize>,
    inner: &[usize],
    mu: &[usize],
    label: usize,
    row: usize,
    remaining: usize,
    placed_so_far: usize,
    prev_so_far: usize,
    prev_counts: &[usize],
    counts: &mut Vec<usize>,
    out: &mut BTreeMap<Vec<usize>, u64>,
) {
    let n = shape.len();
    if remaining == 0 {
        let snapshot = counts.clone();
        place_label(shape, mu, label + 1, &snapshot, out);
        return;
    }
    if row >= n {
        return;
    }
    // horizontal strip: the row may grow up to the previous row of `inner`
    let cap_strip = if row == 0 { usize::MAX } else { inner[row - 1] - inner[row] };
    // lattice word: cumulative count of this label through `row` must not
    // exceed the count of the previous label strictly above `row`
    let cap_lattice = if label == 0 {
        usize::MAX
    } else {
        (prev_so_far).saturating_sub(placed_so_far)
    };
    let cap = remaining.min(cap_strip).min(cap_lattice);
    let next_prev = if label == 0 { 0 } else { prev_so_far + prev_counts[row] };
    for c in (0..=cap).rev() {
        counts[row] = c;
        shape[row] = inner[row] + c;
        distribute(
            shape,
            inner,
            mu,
            label,
            row + 1,
            remaining - c,
            placed_so_far + c,
            next_prev,
            prev_counts,
            counts,
            out,
        );
    }
    counts[row] = 0;
    shape[row] = inner[row];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BottSort {
    /// Two entries coincide: the bundle is acyclic.
    Repeat,
    Sorted { weight: Vec<i64>, inversions: usize },
}

/// Sort into strictly decreasing order, counting inverted pairs.
pub fn bott_sort(v: &[i64]) -> BottSort {
    let mut sorted = v.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return BottSort::Repeat;
    }
    let inversions = (0..v.len())
        .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| v[i] < v[j])
        .count();
    BottSort::Sorted { weight: sorted, inversions }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> GlWeight {
        GlWeight::new(v.to_vec()).unwrap()
    }

    fn terms(d: &Decomposition) -> Vec<(Vec<i64>, u64)> {
        d.iter()
            .map(|(w, m)| (w.entries().to_vec(), m.try_into().unwrap()))
            .collect()
    }

    #[test]
    fn rejects_non_dominant() {
        assert!(matches!(GlWeight::new(vec![0, 1]), Err(WeightError::NotDominant(_))));
        assert_eq!(GlWeight::new(vec![]), Err(WeightError::Empty));
    }

    #[test]
    fn weyl_dimension_examples() {
        assert_eq!(weyl_dimension(&w(&[0, 0, 0])), 1u32.into());
        assert_eq!(weyl_dimension(&w(&[1, 1, 1, 0, 0, 0])), 20u32.into());
        assert_eq!(weyl_dimension(&w(&[1, 1, 1])), 1u32.into());
        assert_eq!(weyl_dimension(&w(&[1, 0, 0, 0, 0, 0, 0, 0, -1])), 80u32.into());
    }

    #[test]
    fn small_products() {
        let p = lr_product(&w(&[1, 0, 0]), &w(&[1, 0, 0])).unwrap();
        assert_eq!(terms(&p), vec![(vec![1, 1, 0], 1), (vec![2, 0, 0], 1)]);
        let p = lr_product(&w(&[1, 1, 0]), &w(&[1, 0, 0])).unwrap();
        assert_eq!(terms(&p), vec![(vec![1, 1, 1], 1), (vec![2, 1, 0], 1)]);
    }

    #[test]
    fn adjoint_square_has_multiplicity_two() {
        // (2,1,0)⊗(2,1,0) for GL3 contains (3,2,1) twice
        let p = lr_product(&w(&[2, 1, 0]), &w(&[2, 1, 0])).unwrap();
        assert_eq!(p.multiplicity(&w(&[3, 2, 1])), 2u32.into());
    }

    #[test]
    fn rank_mismatch() {
        assert_eq!(
            lr_product(&w(&[1, 0]), &w(&[1, 0, 0])),
            Err(WeightError::RankMismatch(2, 3))
        );
    }

    #[test]
    fn negative_weights_translate() {
        // V ⊗ V^∨ = adjoint ⊕ trivial for GL3
        let p = lr_product(&w(&[1, 0, 0]), &w(&[0, 0, -1])).unwrap();
        assert_eq!(terms(&p), vec![(vec![0, 0, 0], 1), (vec![1, 0, -1], 1)]);
    }

    #[test]
    fn bott_sort_examples() {
        assert_eq!(bott_sort(&[3, 2, 1]), BottSort::Sorted { weight: vec![3, 2, 1], inversions: 0 });
        assert_eq!(bott_sort(&[1, 2, 3]), BottSort::Sorted { weight: vec![3, 2, 1], inversions: 3 });
        assert_eq!(bott_sort(&[5, 5, 1]), BottSort::Repeat);
    }

    #[test]
    fn json_is_plain_array() {
        let s = serde_json::to_string(&w(&[2, 1, -1])).unwrap();
        assert_eq!(s, "[2,1,-1]");
        assert!(serde_json::from_str::<GlWeight>("[0,1]").is_err());
    }
}
