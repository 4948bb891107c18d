//! The equivariant locally free resolution of the eightfold `D ⊂ G(3,9)` and
//! the quantities derived from it.
//!
//! Two tables ship in `data/resolution.json`: the graded Betti numbers of the
//! ideal of the cone `Z ⊂ ∧³C⁶` (terms `S_λ V₆^∨ ⊗ S(−d)`) and their
//! relativization to `G(3,9)`, where every term is a sum of `S_λ Q^∨(t)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homog::{cohomology, euler_characteristic, BundleSummand, Grassmannian, HomogError, HomogeneousBundle, SummandJson};
use crate::weights::{GlWeight, WeightError};

pub const RESOLUTION_JSON: &str = include_str!("../data/resolution.json");

/// Interpolation nodes for the Hilbert polynomial.
pub const HILBERT_NODES: std::ops::RangeInclusive<i64> = -6..=6;

#[derive(Debug, Error)]
pub enum ResolutionError {
    #[error("malformed resolution data: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Homog(#[from] HomogError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("resolution terms must be indexed 0..{expected} consecutively, found index {found} at position {position}")]
    Indexing { expected: usize, found: usize, position: usize },
    #[error("Hilbert interpolation inconsistent at m = {m}: fitted {fitted}, computed {computed}")]
    Interpolation { m: i64, fitted: Box<BigRational>, computed: Box<BigRational> },
}

/// `S_λ V₆^∨ ⊗ S(−d)` in homological degree `hom_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBettiTerm {
    pub hom_degree: usize,
    pub weight: GlWeight,
    pub internal_degree: u32,
    #[serde(default = "one")]
    pub mult: u64,
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionTerm {
    pub hom_degree: usize,
    pub bundle: HomogeneousBundle,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    hom_degree: usize,
    summands: Vec<SummandJson>,
}

#[derive(Serialize, Deserialize)]
struct ResolutionJson {
    grassmannian: Grassmannian,
    #[serde(default)]
    betti: Vec<GradedBettiTerm>,
    terms: Vec<TermJson>,
}

/// A locally free resolution `0 → F_L → … → F_1 → F_0 = O → O_D → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    g: Grassmannian,
    betti: Vec<GradedBettiTerm>,
    terms: Vec<ResolutionTerm>,
}

pub fn load_resolution() -> Vec<ResolutionTerm> {
    Resolution::standard().terms
}

pub fn load_betti() -> Vec<GradedBettiTerm> {
    Resolution::standard().betti
}

impl Resolution {
    /// The shipped, reviewed transcription.
    pub fn standard() -> Self {
        Self::from_json(RESOLUTION_JSON).expect("bundled resolution data parses")
    }

    pub fn from_json(s: &str) -> Result<Self, ResolutionError> {
        let raw: ResolutionJson = serde_json::from_str(s)?;
        let g = raw.grassmannian;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (position, t) in raw.terms.iter().enumerate() {
            if t.hom_degree != position {
                return Err(ResolutionError::Indexing { expected: raw.terms.len(), found: t.hom_degree, position });
            }
            terms.push(ResolutionTerm { hom_degree: t.hom_degree, bundle: HomogeneousBundle::from_json(g, &t.summands)? });
        }
        Ok(Resolution { g, betti: raw.betti, terms })
    }

    pub fn to_json(&self) -> String {
        let raw = ResolutionJson {
            grassmannian: self.g,
            betti: self.betti.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| TermJson { hom_degree: t.hom_degree, summands: t.bundle.to_json() })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("resolution serializes")
    }

    pub fn grassmannian(&self) -> Grassmannian {
        self.g
    }

    pub fn terms(&self) -> &[ResolutionTerm] {
        &self.terms
    }

    pub fn betti(&self) -> &[GradedBettiTerm] {
        &self.betti
    }

    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn term(&self, j: usize) -> &HomogeneousBundle {
        &self.terms[j].bundle
    }

    /// Twist `t` of the last term when it is a line bundle `O(t)`.
    pub fn last_line_twist(&self) -> Option<i64> {
        let last = &self.terms.last()?.bundle;
        let mut it = last.summands();
        match (it.next(), it.next()) {
            (Some((s, m)), None) if m.is_one() && s.rank().is_one() && s.u().entries().iter().all(|&x| x == 0) => {
                Some(s.twist())
            }
            _ => None,
        }
    }

    pub fn check_self_duality(&self) -> SelfDualityReport {
        let Some(t) = self.last_line_twist() else {
            return SelfDualityReport { twist: None, mismatches: (0..self.terms.len()).collect() };
        };
        let l = self.length();
        let mismatches = (0..=l)
            .filter(|&i| *self.term(i) != self.term(l - i).dual().twisted(t))
            .collect();
        SelfDualityReport { twist: Some(t), mismatches }
    }

    pub fn alternating_rank_sum(&self) -> BigInt {
        self.terms
            .iter()
            .map(|t| {
                let r = BigInt::from(t.bundle.rank());
                if t.hom_degree % 2 == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }

    pub fn canonical_identity(&self) -> CanonicalReport {
        let k_g = self.g.canonical_twist();
        let last = self.last_line_twist();
        let k_d = last.map(|t| k_g - t);
        let codim = self.g.dim() - D_DIM;
        CanonicalReport {
            canonical_twist_g: k_g,
            last_term_twist: last,
            canonical_twist_d: k_d,
            fano_index: k_d.map(|k| -k),
            length: self.length(),
            codimension: codim,
            alternating_rank_sum: self.alternating_rank_sum(),
        }
    }

    /// `χ(O_D(m)) = Σ_j (−1)^j χ(F_j(m))`.
    pub fn chi_structure_sheaf(&self, m: i64) -> BigInt {
        self.terms
            .iter()
            .map(|t| {
                let c = euler_characteristic(&t.bundle.twisted(m));
                if t.hom_degree % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// The polynomial `P(m) = χ(O_D(m−1))`, fitted at nine nodes and checked at the rest.
    pub fn hilbert_polynomial(&self) -> Result<HilbertPolynomial, ResolutionError> {
        let samples: Vec<(i64, BigRational)> = HILBERT_NODES
            .map(|m| (m, BigRational::from_integer(self.chi_structure_sheaf(m - 1))))
            .collect();
        let fit_count = D_DIM + 1;
        let mid = samples.len() / 2;
        let lo = mid - fit_count / 2;
        let fit: Vec<_> = samples[lo..lo + fit_count].to_vec();
        let poly = HilbertPolynomial { coefficients: lagrange(&fit) };
        for (m, v) in &samples {
            let fitted = poly.eval(&BigRational::from_integer((*m).into()));
            if &fitted != v {
                return Err(ResolutionError::Interpolation { m: *m, fitted: Box::new(fitted), computed: Box::new(v.clone()) });
            }
        }
        Ok(poly)
    }

    /// Bott tables of every summand of every `F_j(m)`, with positional conclusions.
    pub fn twisted_cohomology_sweep(&self, m: i64) -> TwistSweep {
        let mut entries = Vec::new();
        for t in &self.terms {
            for (s, mult) in t.bundle.summands() {
                let tw = s.twisted(m);
                for (q, d) in cohomology(&HomogeneousBundle::from(tw.clone())).dims() {
                    entries.push(SweepEntry { j: t.hom_degree, summand: tw.clone(), q, dim: d * mult });
                }
            }
        }
        let structure_sheaf = positional(&entries, |e| e.q as i64 - e.j as i64, |_| true);
        let ideal = positional(&entries, |e| e.q as i64 - e.j as i64 + 1, |e| e.j >= 1);
        TwistSweep { m, entries, structure_sheaf, ideal }
    }

    /// Terms of the equivariant resolution of the cone, relativized by `S_λ V₆^∨ ↦ S_λ Q^∨`, grouped by homological degree.
    pub fn relativized_betti(&self) -> Result<Vec<HomogeneousBundle>, ResolutionError> {
        let len = self.betti.iter().map(|b| b.hom_degree + 1).max().unwrap_or(0);
        let mut out = vec![HomogeneousBundle::zero(self.g); len];
        for b in &self.betti {
            let s = BundleSummand::new(self.g, GlWeight::trivial(self.g.k), b.weight.clone(), 0)?;
            out[b.hom_degree].add_summand(s, BigUint::from(b.mult));
        }
        Ok(out)
    }

    /// Hom degrees where the relativized cone resolution disagrees with the stored terms.
    pub fn relativization_mismatches(&self) -> Result<Vec<usize>, ResolutionError> {
        let rel = self.relativized_betti()?;
        let n = rel.len().max(self.terms.len());
        Ok((0..n)
            .filter(|&i| match (rel.get(i), self.terms.get(i)) {
                (Some(a), Some(b)) => *a != b.bundle,
                _ => true,
            })
            .collect())
    }
}

/// Dimension of the eightfold `D`.
pub const D_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfDualityReport {
    pub twist: Option<i64>,
    pub mismatches: Vec<usize>,
}

impl SelfDualityReport {
    pub fn holds(&self) -> bool {
        self.twist.is_some() && self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalReport {
    pub canonical_twist_g: i64,
    pub last_term_twist: Option<i64>,
    pub canonical_twist_d: Option<i64>,
    pub fano_index: Option<i64>,
    pub length: usize,
    pub codimension: usize,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub alternating_rank_sum: BigInt,
}

impl CanonicalReport {
    pub fn holds(&self) -> bool {
        self.canonical_twist_g == -9
            && self.canonical_twist_d == Some(-2)
            && self.fano_index == Some(2)
            && self.length == self.codimension
            && self.alternating_rank_sum.is_zero()
    }
}

/// A polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertPolynomial {
    #[serde(serialize_with = "crate::serde_util::rationals_str")]
    pub coefficients: Vec<BigRational>,
}

impl HilbertPolynomial {
    pub fn from_descending(c: &[BigRational]) -> Self {
        let mut coefficients: Vec<_> = c.iter().rev().cloned().collect();
        trim(&mut coefficients);
        HilbertPolynomial { coefficients }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn descending(&self) -> Vec<BigRational> {
        self.coefficients.iter().rev().cloned().collect()
    }

    pub fn leading(&self) -> BigRational {
        self.coefficients.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, m: i64) -> BigRational {
        self.eval(&BigRational::from_integer(m.into()))
    }

    pub fn is_even(&self) -> bool {
        self.coefficients.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// `deg · dim!` read off the leading coefficient.
    pub fn projective_degree(&self) -> BigRational {
        let fact: BigInt = (1..=self.degree() as u64).map(BigInt::from).product();
        self.leading() * BigRational::from_integer(fact)
    }
}

impl std::fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a} m")?,
                _ => write!(f, "{a} m^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn trim(c: &mut Vec<BigRational>) {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
}

fn lagrange(points: &[(i64, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let mut result = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer((*xj).into());
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer((*xi).into()) - xj;
        }
        let scale = yi / denom;
        for (k, b) in basis.iter().enumerate() {
            result[k] += b * &scale;
        }
    }
    trim(&mut result);
    result
}

/// One nonzero `H^q(S)` for a summand `S` of `F_j(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEntry {
    pub j: usize,
    pub summand: BundleSummand,
    pub q: usize,
    pub dim: BigUint,
}

/// Hypercohomology read off the first page by position only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    Forced(#[serde(serialize_with = "crate::serde_util::biguint_str")] BigUint),
    Inconclusive,
}

impl Conclusion {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            Conclusion::Forced(v) => Some(v),
            Conclusion::Inconclusive => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSweep {
    pub m: i64,
    pub entries: Vec<SweepEntry>,
    /// `h^p(O_D(m))` for every occupied total degree `p`.
    pub structure_sheaf: BTreeMap<i64, Conclusion>,
    /// `h^p(I_D(m))`, computed from `F_1, …, F_L`.
    pub ideal: BTreeMap<i64, Conclusion>,
}

impl TwistSweep {
    /// `h^p(O_D(m))`; unoccupied degrees are forced to vanish.
    pub fn structure_sheaf_h(&self, p: i64) -> Conclusion {
        self.structure_sheaf.get(&p).cloned().unwrap_or(Conclusion::Forced(BigUint::zero()))
    }

    pub fn ideal_h(&self, p: i64) -> Conclusion {
        self.ideal.get(&p).cloned().unwrap_or(Conclusion::Forced(BigUint::zero()))
    }
}

fn positional<D, F>(entries: &[SweepEntry], degree: D, filter: F) -> BTreeMap<i64, Conclusion>
where
    D: Fn(&SweepEntry) -> i64,
    F: Fn(&SweepEntry) -> bool,
{
    let mut by_degree: BTreeMap<i64, BigUint> = BTreeMap::new();
    for e in entries.iter().filter(|e| filter(e)) {
        *by_degree.entry(degree(e)).or_default() += &e.dim;
    }
    forced_by_position(&by_degree)
}

/// First-page dimensions by total degree of a complex resolving a sheaf, to
/// hypercohomology conclusions by position and Euler characteristic only.
pub fn forced_by_position(by_degree: &BTreeMap<i64, BigUint>) -> BTreeMap<i64, Conclusion> {
    // Maximal runs of consecutive occupied degrees are closed under all
    // differentials, so each run preserves its Euler characteristic. Negative
    // total degrees vanish because the complex is a resolution.
    let mut runs: Vec<Vec<i64>> = Vec::new();
    for &p in by_degree.keys() {
        match runs.last_mut() {
            Some(run) if *run.last().unwrap() + 1 == p => run.push(p),
            _ => runs.push(vec![p]),
        }
    }
    let mut out = BTreeMap::new();
    for run in runs {
        let unknown: Vec<i64> = run.iter().copied().filter(|&p| p >= 0).collect();
        let chi: BigInt = run
            .iter()
            .map(|p| {
                let d = BigInt::from(by_degree[p].clone());
                if p.rem_euclid(2) == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum();
        for &p in &run {
            let c = if p < 0 {
                Conclusion::Forced(BigUint::zero())
            } else if unknown.len() == 1 {
                let v = if p % 2 == 0 { chi.clone() } else { -chi.clone() };
                v.to_biguint().map(Conclusion::Forced).unwrap_or(Conclusion::Inconclusive)
            } else {
                Conclusion::Inconclusive
            };
            out.insert(p, c);
        }
    }
    out
}

/// `h^0(I_D(m))` when forced, as an integer.
pub fn forced_sections(c: &Conclusion) -> Option<u64> {
    c.value().and_then(|v| v.to_u64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use sha2::{Digest, Sha256};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn data_checksum() {
        let digest = Sha256::digest(RESOLUTION_JSON.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(hex, "14a99fe9bda1f147d136a2c65da3b8a962ae800ef6834381083dd23fa5823715");
    }

    #[test]
    fn end_terms() {
        let res = Resolution::standard();
        let g = res.grassmannian();
        assert_eq!(res.length(), 10);
        assert_eq!(*res.term(0), HomogeneousBundle::structure_sheaf(g));
        assert_eq!(*res.term(10), HomogeneousBundle::line(g, -7));
        let s = BundleSummand::from_parts(g, &[0, 0, 0], &[2, 1, 1, 1, 1, 0], 0).unwrap();
        assert_eq!(*res.term(1), HomogeneousBundle::from(s));
        let last = res.betti().last().unwrap();
        assert_eq!((last.hom_degree, last.internal_degree), (10, 14));
        assert_eq!(last.weight.entries(), &[7; 6]);
    }

    #[test]
    fn self_dual() {
        let rep = Resolution::standard().check_self_duality();
        assert_eq!(rep.twist, Some(-7));
        assert!(rep.mismatches.is_empty(), "{rep:?}");
    }

    #[test]
    fn canonical() {
        let rep = Resolution::standard().canonical_identity();
        assert_eq!(rep.canonical_twist_d, Some(-2));
        assert_eq!((rep.length, rep.codimension), (10, 10));
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn relativization_reproduces_terms() {
        assert_eq!(Resolution::standard().relativization_mismatches().unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn hilbert() {
        let p = Resolution::standard().hilbert_polynomial().unwrap();
        let z = BigRational::zero;
        assert_eq!(
            p.descending(),
            vec![r(477, 2240), z(), r(63, 160), z(), r(99, 320), z(), r(47, 560), z(), z()]
        );
        assert_eq!(p.eval_int(1), r(1, 1));
        assert_eq!(p.eval_int(2), r(85, 1));
        assert!(p.is_even());
        assert_eq!(p.projective_degree(), r(8586, 1));
    }

    #[test]
    fn sweep_at_one_has_single_obstruction() {
        let sw = Resolution::standard().twisted_cohomology_sweep(1);
        let higher: Vec<_> = sw.entries.iter().filter(|e| e.q > 0).collect();
        assert_eq!(higher.len(), 1);
        let e = higher[0];
        assert_eq!((e.j, e.q, e.dim.clone()), (3, 3, BigUint::one()));
        assert_eq!(e.summand.q().entries(), &[3, 0, 0, 0, 0, 0]);
        assert_eq!(e.summand.twist(), -1);
        assert_eq!(sw.structure_sheaf_h(0), Conclusion::Forced(85u32.into()));
    }

    #[test]
    fn quadrics() {
        let sw = Resolution::standard().twisted_cohomology_sweep(2);
        assert_eq!(sw.ideal_h(0), Conclusion::Forced(810u32.into()));
    }

    #[test]
    fn structure_sheaf_at_zero() {
        let sw = Resolution::standard().twisted_cohomology_sweep(0);
        assert_eq!(sw.structure_sheaf_h(0), Conclusion::Forced(1u32.into()));
        for p in 1..=8 {
            assert_eq!(sw.structure_sheaf_h(p), Conclusion::Forced(BigUint::zero()), "p = {p}");
        }
    }

    #[test]
    fn ideal_vanishing_from_two() {
        for k in 2..=6 {
            let sw = Resolution::standard().twisted_cohomology_sweep(k);
            assert_eq!(sw.ideal_h(1), Conclusion::Forced(BigUint::zero()), "k = {k}");
        }
    }

    #[test]
    fn literal_plus_one_twist_breaks_checks() {
        let bad = RESOLUTION_JSON.replacen(
            r#""q": [2, 2, 2, 2, 1, 0], "t": 0"#,
            r#""q": [2, 2, 2, 2, 1, 0], "t": 1"#,
            1,
        );
        assert_ne!(bad, RESOLUTION_JSON);
        let res = Resolution::from_json(&bad).unwrap();
        assert!(!res.check_self_duality().holds());
        assert!(!res.relativization_mismatches().unwrap().is_empty());
        assert!(matches!(res.hilbert_polynomial(), Err(ResolutionError::Interpolation { .. })));
    }

    #[test]
    fn bad_indexing_rejected() {
        let bad = RESOLUTION_JSON.replacen(r#""hom_degree": 9, "summands""#, r#""hom_degree": 11, "summands""#, 1);
        assert!(matches!(Resolution::from_json(&bad), Err(ResolutionError::Indexing { .. })));
    }

    /// Semistandard tableaux of shape `λ` with entries in `1..=n`, counted by brute force.
    fn ssyt_count(lambda: &[usize], n: usize) -> u64 {
        let cells: Vec<(usize, usize)> =
            lambda.iter().enumerate().flat_map(|(r, &l)| (0..l).map(move |c| (r, c))).collect();
        let mut grid = vec![vec![0usize; lambda.first().copied().unwrap_or(0)]; lambda.len()];
        fn go(cells: &[(usize, usize)], i: usize, grid: &mut Vec<Vec<usize>>, n: usize) -> u64 {
            if i == cells.len() {
                return 1;
            }
            let (r, c) = cells[i];
            let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
            let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
            let mut total = 0;
            for v in lo_row.max(lo_col)..=n {
                grid[r][c] = v;
                total += go(cells, i + 1, grid, n);
            }
            total
        }
        go(&cells, 0, &mut grid, n)
    }

    #[test]
    fn term_ranks_match_tableau_count() {
        let res = Resolution::standard();
        let mut checked = 0;
        for j in [1, 3, 4, 5, 7] {
            let mut total = 0u64;
            for (s, m) in res.term(j).summands() {
                let lambda: Vec<usize> = s.q().entries().iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
                total += ssyt_count(&lambda, 6) * m.to_u64().unwrap();
            }
            assert_eq!(BigUint::from(total), res.term(j).rank(), "term {j}");
            checked += 1;
        }
        assert_eq!(checked, 5);
        assert_eq!(res.alternating_rank_sum(), BigInt::zero());
    }
}
