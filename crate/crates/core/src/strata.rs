//! Relative position of coordinate flags in `V₉` and orbit dimensions of
//! incidence strata.
//!
//! Two partial flags are in a relative position described by a contingency
//! table: entry `(p,q)` is the dimension of the `p`-th graded piece of flag `A`
//! meeting the `q`-th graded piece of flag `B`. Every table is realized by
//! coordinate subspaces, and the dimension of a `GL₉`-orbit of configurations of
//! coordinate subspaces is `81` minus the number of matrix positions allowed in
//! their common stabilizer.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{rank, RandomGl};
use crate::trivector::{IndexSubspace, TrivectorExpr, N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("infeasible incidence pattern: no relative position realizes the required intersections")]
    Infeasible,
    #[error("flag dimensions must be strictly increasing in 1..9, got {0:?}")]
    InvalidFlag(Vec<usize>),
    #[error("requirement refers to flag position ({0},{1}) which does not exist")]
    InvalidRequirement(usize, usize),
}

/// Dimensions `d₁ < … < d_r` of a partial flag in `V₉`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct FlagSpec(Vec<usize>);

impl FlagSpec {
    pub fn new(dims: Vec<usize>) -> Result<Self, StrataError> {
        let ok = dims.windows(2).all(|w| w[0] < w[1]) && dims.iter().all(|&d| 0 < d && d < N);
        if ok && !dims.is_empty() {
            Ok(FlagSpec(dims))
        } else {
            Err(StrataError::InvalidFlag(dims))
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sizes of the graded pieces, including `V₉/A_r`.
    fn pieces(&self) -> Vec<usize> {
        let mut prev = 0;
        let mut out: Vec<usize> = self
            .0
            .iter()
            .map(|&d| {
                let p = d - prev;
                prev = d;
                p
            })
            .collect();
        out.push(N - prev);
        out
    }

    /// `dim Fl(d₁,…,d_r; 9)`.
    pub fn variety_dim(&self) -> usize {
        let p = self.pieces();
        let total: usize = p.iter().sum();
        (total * total - p.iter().map(|x| x * x).sum::<usize>()) / 2
    }
}

impl TryFrom<Vec<usize>> for FlagSpec {
    type Error = StrataError;
    fn try_from(v: Vec<usize>) -> Result<Self, StrataError> {
        FlagSpec::new(v)
    }
}

impl From<FlagSpec> for Vec<usize> {
    fn from(f: FlagSpec) -> Vec<usize> {
        f.0
    }
}

/// One required value `dim(A_a ∩ B_b) = dim`, positions counted from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Requirement {
    pub a: usize,
    pub b: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidencePattern {
    pub flag_a: FlagSpec,
    pub flag_b: FlagSpec,
    #[serde(default)]
    pub required: Vec<Requirement>,
}

impl IncidencePattern {
    pub fn new(flag_a: &[usize], flag_b: &[usize], required: &[(usize, usize, usize)]) -> Result<Self, StrataError> {
        let p = IncidencePattern {
            flag_a: FlagSpec::new(flag_a.to_vec())?,
            flag_b: FlagSpec::new(flag_b.to_vec())?,
            required: required.iter().map(|&(a, b, dim)| Requirement { a, b, dim }).collect(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), StrataError> {
        for r in &self.required {
            if r.a >= self.flag_a.len() || r.b >= self.flag_b.len() {
                return Err(StrataError::InvalidRequirement(r.a, r.b));
            }
        }
        Ok(())
    }
}

/// Coordinate subspaces realizing a relative position; flag `A` is standard.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigRepresentative {
    pub a: Vec<IndexSubspace>,
    pub b: Vec<IndexSubspace>,
    pub table: Vec<Vec<usize>>,
    /// Number of relative positions meeting the requirements with the same, maximal, orbit dimension.
    pub generic_ties: usize,
}

impl ConfigRepresentative {
    pub fn all(&self) -> Vec<IndexSubspace> {
        self.a.iter().chain(self.b.iter()).copied().collect()
    }
}

/// All contingency tables with the given row and column sums.
pub fn contingency_tables(rows: &[usize], cols: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn go(
        rows: &[usize],
        col_left: &mut Vec<usize>,
        r: usize,
        c: usize,
        row_left: usize,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if r == rows.len() {
            if col_left.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let ncols = col_left.len();
        if c == ncols - 1 {
            if row_left > col_left[c] {
                return;
            }
            cur[r][c] = row_left;
            col_left[c] -= row_left;
            let next = rows.get(r + 1).copied().unwrap_or(0);
            go(rows, col_left, r + 1, 0, next, cur, out);
            col_left[c] += row_left;
            cur[r][c] = 0;
            return;
        }
        for v in 0..=row_left.min(col_left[c]) {
            cur[r][c] = v;
            col_left[c] -= v;
            go(rows, col_left, r, c + 1, row_left - v, cur, out);
            col_left[c] += v;
        }
        cur[r][c] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![vec![0; cols.len()]; rows.len()];
    let mut col_left = cols.to_vec();
    go(rows, &mut col_left, 0, 0, rows[0], &mut cur, &mut out);
    out
}

/// `dim(A_i ∩ B_j)` read from a table.
pub fn intersection_dim(table: &[Vec<usize>], i: usize, j: usize) -> usize {
    table[..=i].iter().map(|row| row[..=j].iter().sum::<usize>()).sum()
}

/// Coordinate subspaces for a table: cells filled with consecutive indices row by row.
pub fn realize(table: &[Vec<usize>]) -> (Vec<IndexSubspace>, Vec<IndexSubspace>) {
    let rows = table.len();
    let cols = table[0].len();
    let mut cell_mask = vec![vec![0u16; cols]; rows];
    let mut next = 0;
    for (p, row) in table.iter().enumerate() {
        for (q, &n) in row.iter().enumerate() {
            for _ in 0..n {
                cell_mask[p][q] |= 1 << next;
                next += 1;
            }
        }
    }
    let a = (0..rows - 1)
        .map(|i| IndexSubspace::from_mask(cell_mask[..=i].iter().flatten().fold(0, |m, x| m | x)))
        .collect();
    let b = (0..cols - 1)
        .map(|j| IndexSubspace::from_mask(cell_mask.iter().flat_map(|r| r[..=j].iter()).fold(0, |m, x| m | x)))
        .collect();
    (a, b)
}

fn satisfies(p: &IncidencePattern, table: &[Vec<usize>]) -> bool {
    p.required.iter().all(|r| intersection_dim(table, r.a, r.b) == r.dim)
}

/// The generic configuration among those meeting the requirements.
pub fn build_representative(p: &IncidencePattern) -> Result<ConfigRepresentative, StrataError> {
    p.validate()?;
    let mut best: Option<(usize, Vec<Vec<usize>>)> = None;
    let mut ties = 0;
    for t in contingency_tables(&p.flag_a.pieces(), &p.flag_b.pieces()) {
        if !satisfies(p, &t) {
            continue;
        }
        let (a, b) = realize(&t);
        let all: Vec<_> = a.iter().chain(b.iter()).copied().collect();
        let stab = pattern_algebra_dim(&all);
        match &best {
            Some((s, _)) if stab > *s => {}
            Some((s, _)) if stab == *s => ties += 1,
            _ => {
                best = Some((stab, t));
                ties = 1;
            }
        }
    }
    let (_, table) = best.ok_or(StrataError::Infeasible)?;
    let (a, b) = realize(&table);
    Ok(ConfigRepresentative { a, b, table, generic_ties: ties })
}

/// Matrix positions `(a,b)` allowed in the stabilizer of all listed coordinate subspaces.
pub fn pattern_algebra_dim(subspaces: &[IndexSubspace]) -> usize {
    (1..=N)
        .map(|b| {
            subspaces
                .iter()
                .filter(|s| s.contains(b))
                .fold(IndexSubspace::full(), |acc, s| acc.meet(s))
                .dim()
        })
        .sum()
}

/// Orbit dimension of `moving` under the stabilizer of `fixed`.
pub fn relative_orbit_dim(fixed: &[IndexSubspace], moving: &[IndexSubspace]) -> usize {
    let all: Vec<_> = fixed.iter().chain(moving.iter()).copied().collect();
    pattern_algebra_dim(fixed) - pattern_algebra_dim(&all)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumDims {
    pub pattern_fixed: usize,
    pub pattern_joint: usize,
    /// Dimension of the locus of `B`-flags in the given position to a fixed `A`.
    pub relative: usize,
    /// Dimension of the `GL₉`-orbit of the pair.
    pub joint: usize,
}

pub fn stratum_dims(rep: &ConfigRepresentative) -> StratumDims {
    let pattern_fixed = pattern_algebra_dim(&rep.a);
    let pattern_joint = pattern_algebra_dim(&rep.all());
    StratumDims { pattern_fixed, pattern_joint, relative: pattern_fixed - pattern_joint, joint: N * N - pattern_joint }
}

pub fn stratum_dim(p: &IncidencePattern) -> Result<usize, StrataError> {
    Ok(stratum_dims(&build_representative(p)?).relative)
}

pub fn joint_stratum_dim(p: &IncidencePattern) -> Result<usize, StrataError> {
    Ok(stratum_dims(&build_representative(p)?).joint)
}

/// Expected dimension of the locus compatible with a general `v`: `dim S − (84 − rank)`.
pub fn incidence_bound(dim_s: i64, dim_cd: i64) -> i64 {
    dim_s - (84 - dim_cd)
}

/// Stabilizer dimension of `g·S₁, …, g·S_m` from the linear conditions `N_S X B_S = 0`.
pub fn stabilizer_dim_oracle(subspaces: &[IndexSubspace], g: &RandomGl) -> usize {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for s in subspaces {
        for b in (1..=N).filter(|&b| s.contains(b)) {
            for a in (1..=N).filter(|&a| !s.contains(a)) {
                // row a of d·g⁻¹ annihilates g·S; column b of g lies in g·S
                let mut row = Vec::with_capacity(N * N);
                for k in 0..N {
                    for l in 0..N {
                        row.push(&g.scaled_inverse[a - 1][k] * &g.g[l][b - 1]);
                    }
                }
                rows.push(row);
            }
        }
    }
    N * N - rank(&rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub pattern: usize,
    pub oracle: usize,
    pub seed: u64,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.pattern == self.oracle
    }
}

/// Relative orbit dimension recomputed in random coordinates.
pub fn relative_orbit_dim_oracle(fixed: &[IndexSubspace], moving: &[IndexSubspace], seed: u64) -> OracleComparison {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let g = crate::linalg::random_gl(N, 1, &mut rng);
    let all: Vec<_> = fixed.iter().chain(moving.iter()).copied().collect();
    let oracle = stabilizer_dim_oracle(fixed, &g) - stabilizer_dim_oracle(&all, &g);
    OracleComparison { pattern: relative_orbit_dim(fixed, moving), oracle, seed }
}

/// Orbit dimension of a whole configuration recomputed in random coordinates.
pub fn orbit_dim_oracle(subspaces: &[IndexSubspace], seed: u64) -> OracleComparison {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let g = crate::linalg::random_gl(N, 1, &mut rng);
    OracleComparison {
        pattern: N * N - pattern_algebra_dim(subspaces),
        oracle: N * N - stabilizer_dim_oracle(subspaces, &g),
        seed,
    }
}

/// Random subset of `{1..9}` of the given size.
pub fn random_subspace<R: Rng>(dim: usize, rng: &mut R) -> IndexSubspace {
    let mut idx: Vec<usize> = (1..=N).collect();
    for i in (1..idx.len()).rev() {
        let j = rng.gen_range(0..=i);
        idx.swap(i, j);
    }
    IndexSubspace::new(&idx[..dim]).expect("indices in range")
}

/// The incidence strata analysed in the classification arguments.
pub mod cases {
    use super::*;
    use crate::trivector::{intersect_dim, quotient_rank, MonomialSet};

    fn v() -> IndexSubspace {
        IndexSubspace::full()
    }

    /// Relative positions of `(W₁ ⊂ W₆)` against a fixed `(U₂ ⊂ U₅)` with
    /// `W₁ ⊂ U₅`, `W₁ ⊄ U₂`, labelled `(dim W₆∩U₂, dim W₆∩U₅)`.
    pub const RULING_LABELS: [(usize, usize); 9] = [(0, 2), (1, 2), (2, 2), (0, 3), (1, 3), (2, 3), (1, 4), (2, 4), (2, 5)];

    pub fn ruling_pattern(x: usize, y: usize) -> IncidencePattern {
        IncidencePattern::new(&[2, 5], &[1, 6], &[(0, 0, 0), (1, 0, 1), (0, 1, x), (1, 1, y)]).expect("valid pattern")
    }

    /// `U₂∧∧²V + ∧²U₅∧V`.
    pub fn ruling_a(u2: IndexSubspace, u5: IndexSubspace) -> TrivectorExpr {
        TrivectorExpr::u_wedge2v(u2) + TrivectorExpr::wedge2u_v(u5)
    }

    /// `W₁∧∧²V + ∧²W₆∧V`.
    pub fn ruling_b(w1: IndexSubspace, w6: IndexSubspace) -> TrivectorExpr {
        TrivectorExpr::u_wedge2v(w1) + TrivectorExpr::wedge2u_v(w6)
    }

    /// Relative positions of `(W₁ ⊂ W₆)` against a fixed `(U₃ ⊂ U₆)` with
    /// `W₁ ⊂ U₃`, labelled `(dim W₆∩U₃, dim W₆∩U₆)`.
    pub const PLANE_LABELS: [(usize, usize); 9] = [(3, 6), (3, 5), (3, 4), (3, 3), (2, 5), (2, 4), (2, 3), (1, 4), (1, 3)];

    pub fn plane_pattern(x: usize, y: usize) -> IncidencePattern {
        IncidencePattern::new(&[3, 6], &[1, 6], &[(0, 0, 1), (0, 1, x), (1, 1, y)]).expect("valid pattern")
    }

    /// `U₃∧∧²V + ∧³U₆`.
    pub fn plane_a(u3: IndexSubspace, u6: IndexSubspace) -> TrivectorExpr {
        TrivectorExpr::u_wedge2v(u3) + TrivectorExpr::wedge3(u6)
    }

    /// Summary of one relative stratum: orbit dimension and the rank of `A/(A∩B)`.
    #[derive(Clone, Debug, PartialEq, Eq, Serialize)]
    pub struct RelativeStratum {
        pub label: (usize, usize),
        pub representative: ConfigRepresentative,
        pub dim: usize,
        pub dim_a: usize,
        pub intersection: usize,
        pub rank: usize,
        /// `span(A∩B) ⊆ span(U∧∧²V)` for the smaller fixed subspace `U`.
        pub inside_first_term: bool,
    }

    fn relative(
        label: (usize, usize),
        p: &IncidencePattern,
        a_of: fn(IndexSubspace, IndexSubspace) -> TrivectorExpr,
    ) -> Result<RelativeStratum, StrataError> {
        let rep = build_representative(p)?;
        let a = a_of(rep.a[0], rep.a[1]);
        let b = ruling_b(rep.b[0], rep.b[1]);
        let first = TrivectorExpr::u_wedge2v(rep.a[0]).span();
        let meet = a.span().intersection(&b.span());
        Ok(RelativeStratum {
            label,
            dim: stratum_dims(&rep).relative,
            dim_a: a.dim(),
            intersection: intersect_dim(&a, &b),
            rank: quotient_rank(&a, &b),
            inside_first_term: meet.is_subset(&first),
            representative: rep,
        })
    }

    pub fn ruling_stratum(x: usize, y: usize) -> Result<RelativeStratum, StrataError> {
        relative((x, y), &ruling_pattern(x, y), ruling_a)
    }

    pub fn plane_stratum(x: usize, y: usize) -> Result<RelativeStratum, StrataError> {
        relative((x, y), &plane_pattern(x, y), plane_a)
    }

    /// A coarser parameter space: subspaces derived from a stratum
    /// representative, their orbit dimension, and the rank of `A/C` for an
    /// intermediate space `A∩B ⊆ C ⊆ A` depending only on them.
    #[derive(Clone, Debug, PartialEq, Eq, Serialize)]
    pub struct AuxSpace {
        pub name: &'static str,
        pub fixed: Vec<IndexSubspace>,
        pub moving: Vec<IndexSubspace>,
        pub dim: usize,
        pub c_dim: usize,
        pub rank: usize,
        pub contains_intersection: bool,
        pub inside_a: bool,
    }

    fn aux(
        name: &'static str,
        fixed: Vec<IndexSubspace>,
        moving: Vec<IndexSubspace>,
        a: &TrivectorExpr,
        b: &TrivectorExpr,
        c: MonomialSet,
    ) -> AuxSpace {
        let meet = a.span().intersection(&b.span());
        AuxSpace {
            name,
            dim: relative_orbit_dim(&fixed, &moving),
            fixed,
            moving,
            c_dim: c.len(),
            rank: a.span().difference(&c).len(),
            contains_intersection: meet.is_subset(&c),
            inside_a: c.is_subset(&a.span()),
        }
    }

    /// The auxiliary parameter spaces used to rule out the large strata.
    pub fn aux_spaces() -> Vec<AuxSpace> {
        let mut out = Vec::new();

        let r = build_representative(&ruling_pattern(0, 2)).expect("feasible");
        let (u2, u5, w1, w6) = (r.a[0], r.a[1], r.b[0], r.b[1]);
        let (a, b) = (ruling_a(u2, u5), ruling_b(w1, w6));
        let w2 = w6.meet(&u5);
        let w4 = w2.sum(&u2);
        let w8 = w6.sum(&u2);
        let c = (TrivectorExpr::wedge(w2, u5, v()) + TrivectorExpr::wedge(u2, w8, w8)).span();
        out.push(aux("ruling (0,2): W1 ⊂ W2 ⊂ W4 ⊂ W8", vec![u2, u5], vec![w1, w2, w4, w8], &a, &b, c));

        let r = build_representative(&ruling_pattern(1, 3)).expect("feasible");
        let (u2, u5, w1, w6) = (r.a[0], r.a[1], r.b[0], r.b[1]);
        let (a, b) = (ruling_a(u2, u5), ruling_b(w1, w6));
        let t1 = w6.meet(&u2);
        let w8 = w6.sum(&u5);
        let c = (TrivectorExpr::wedge(w1.sum(&t1), w8, v()) + TrivectorExpr::wedge3(w8)).span().intersection(&a.span());
        out.push(aux("ruling (1,3): W1, T1, W8", vec![u2, u5], vec![w1, t1, w8], &a, &b, c));

        let r = build_representative(&ruling_pattern(2, 3)).expect("feasible");
        let (u2, u5, w1, w6) = (r.a[0], r.a[1], r.b[0], r.b[1]);
        let (a, b) = (ruling_a(u2, u5), ruling_b(w1, w6));
        let c = (TrivectorExpr::wedge(w1, u5, v()) + TrivectorExpr::u_wedge2v(u2)).span();
        out.push(aux("ruling (2,3): W1", vec![u2, u5], vec![w1], &a, &b, c));

        let r = build_representative(&plane_pattern(1, 3)).expect("feasible");
        let (u3, u6, w1, w6) = (r.a[0], r.a[1], r.b[0], r.b[1]);
        let (a, b) = (plane_a(u3, u6), ruling_b(w1, w6));
        let w8 = w6.sum(&u3);
        let c = (TrivectorExpr::u_wedge2v(w1) + TrivectorExpr::wedge(w8, w8, u3) + TrivectorExpr::wedge3(u6)).span();
        out.push(aux("plane (1,3): W1 ⊂ U3 ⊂ W8", vec![u3, u6], vec![w1, w8], &a, &b, c));

        let r = build_representative(&plane_pattern(2, 4)).expect("feasible");
        let (u3, u6, w1, w6) = (r.a[0], r.a[1], r.b[0], r.b[1]);
        let (a, b) = (plane_a(u3, u6), ruling_b(w1, w6));
        let w2 = w6.meet(&u3);
        let w8 = w6.sum(&u6);
        let c = (TrivectorExpr::u_wedge2v(w2) + TrivectorExpr::wedge(w8, w8, u3) + TrivectorExpr::wedge3(u6)).span();
        out.push(aux("plane (2,4): W2 ⊂ U3 ⊂ U6 ⊂ W8", vec![u3, u6], vec![w2, w8], &a, &b, c));

        out
    }

    /// Pairs of flags `(U₁ ⊂ U₃ ⊂ U₆)`, `(U₁ ⊂ U₂ ⊂ U₅)` sharing `U₁`, labelled by
    /// `(dim U₂∩U₃, dim U₂∩U₆, dim U₅∩U₃, dim U₅∩U₆)`.
    pub fn incidence_pattern(t: [usize; 4]) -> IncidencePattern {
        IncidencePattern::new(&[1, 3, 6], &[1, 2, 5], &[(0, 0, 1), (1, 1, t[0]), (2, 1, t[1]), (1, 2, t[2]), (2, 2, t[3])])
            .expect("valid pattern")
    }

    /// Every label realized by some pair of flags sharing `U₁`.
    pub fn incidence_labels() -> BTreeSet<[usize; 4]> {
        let p = IncidencePattern::new(&[1, 3, 6], &[1, 2, 5], &[(0, 0, 1)]).expect("valid pattern");
        contingency_tables(&p.flag_a.pieces(), &p.flag_b.pieces())
            .into_iter()
            .filter(|t| satisfies(&p, t))
            .map(|t| [intersection_dim(&t, 1, 1), intersection_dim(&t, 2, 1), intersection_dim(&t, 1, 2), intersection_dim(&t, 2, 2)])
            .collect()
    }

    #[derive(Clone, Debug, PartialEq, Eq, Serialize)]
    pub struct IncidenceRow {
        pub label: [usize; 4],
        pub representative: ConfigRepresentative,
        pub dim: usize,
        pub rank: usize,
        /// `span(C∩D) ⊆ span(U₃∧∧²V)`.
        pub excluded: bool,
        /// `U₂∩U₃ = U₂∩U₆` and `dim U₅∩U₆ − dim U₅∩U₃ ≤ 1`.
        pub excluded_by_rule: bool,
        pub bound: i64,
    }

    pub fn incidence_row(t: [usize; 4]) -> Result<IncidenceRow, StrataError> {
        let rep = build_representative(&incidence_pattern(t))?;
        let (u3, u6, u2, u5) = (rep.a[1], rep.a[2], rep.b[1], rep.b[2]);
        let c = plane_a(u3, u6).span();
        let d = ruling_a(u2, u5).span();
        let cd = c.intersection(&d);
        let dim = stratum_dims(&rep).joint;
        Ok(IncidenceRow {
            label: t,
            dim,
            rank: cd.len(),
            excluded: cd.is_subset(&TrivectorExpr::u_wedge2v(u3).span()),
            excluded_by_rule: t[0] == t[1] && t[3] <= t[2] + 1,
            bound: incidence_bound(dim as i64, cd.len() as i64),
            representative: rep,
        })
    }

    pub fn incidence_rows() -> Vec<IncidenceRow> {
        incidence_labels().into_iter().map(|t| incidence_row(t).expect("realized label")).collect()
    }

    /// Every configuration whose orbit dimension is checked against the tangent oracle,
    /// as `(name, fixed, moving)`; a joint orbit has no fixed part.
    pub fn oracle_configurations() -> Vec<(String, Vec<IndexSubspace>, Vec<IndexSubspace>)> {
        let mut out = Vec::new();
        for (x, y) in RULING_LABELS {
            if let Ok(r) = build_representative(&ruling_pattern(x, y)) {
                out.push((format!("ruling ({x},{y})"), r.a.clone(), r.b.clone()));
            }
        }
        for (x, y) in PLANE_LABELS {
            if let Ok(r) = build_representative(&plane_pattern(x, y)) {
                out.push((format!("plane ({x},{y})"), r.a.clone(), r.b.clone()));
            }
        }
        for row in incidence_rows().into_iter().filter(|r| !r.excluded) {
            let t = row.label;
            out.push((format!("incidence {}{}{}{}", t[0], t[1], t[2], t[3]), Vec::new(), row.representative.all()));
        }
        for a in aux_spaces() {
            out.push((a.name.to_string(), a.fixed, a.moving));
        }
        out
    }

    /// Stratum label to value, for quick lookups in reports.
    pub fn ruling_table() -> BTreeMap<(usize, usize), Result<RelativeStratum, StrataError>> {
        RULING_LABELS.iter().map(|&(x, y)| ((x, y), ruling_stratum(x, y))).collect()
    }

    pub fn plane_table() -> BTreeMap<(usize, usize), Result<RelativeStratum, StrataError>> {
        PLANE_LABELS.iter().map(|&(x, y)| ((x, y), plane_stratum(x, y))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::cases::*;
    use super::*;

    fn s(ix: &[usize]) -> IndexSubspace {
        IndexSubspace::new(ix).unwrap()
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(pattern_algebra_dim(&[]), 81);
        let full_flag: Vec<_> = (1..=8).map(IndexSubspace::initial).collect();
        assert_eq!(pattern_algebra_dim(&full_flag), 45);
        assert_eq!(pattern_algebra_dim(&[s(&[1, 2, 3]), IndexSubspace::initial(6)]), 54);
    }

    #[test]
    fn table_enumeration() {
        assert_eq!(contingency_tables(&[1, 8], &[1, 8]).len(), 2);
        assert_eq!(contingency_tables(&[3, 6], &[3, 6]).len(), 4);
    }

    #[test]
    fn unconstrained_flag() {
        let p = IncidencePattern::new(&[2, 5], &[1, 6], &[]).unwrap();
        let rep = build_representative(&p).unwrap();
        assert_eq!(stratum_dims(&rep).relative, 23);
        assert_eq!(FlagSpec::new(vec![1, 6]).unwrap().variety_dim(), 23);
        assert_eq!(rep.generic_ties, 1);
    }

    #[test]
    fn adapted_basis_of_open_stratum() {
        let rep = build_representative(&ruling_pattern(0, 2)).unwrap();
        assert_eq!(rep.a, vec![s(&[1, 2]), s(&[1, 2, 3, 4, 5])]);
        assert_eq!(rep.b, vec![s(&[3]), s(&[3, 4, 6, 7, 8, 9])]);
    }

    #[test]
    fn infeasible_case() {
        assert_eq!(build_representative(&ruling_pattern(2, 2)), Err(StrataError::Infeasible));
        assert!(matches!(ruling_stratum(2, 2), Err(StrataError::Infeasible)));
    }

    #[test]
    fn ruling_strata() {
        let expect = [((0, 2), 19, 46, 16), ((1, 2), 17, 46, 16), ((0, 3), 17, 46, 16), ((1, 3), 16, 49, 13), ((1, 4), 13, 50, 12), ((2, 4), 11, 54, 8)];
        for (label, dim, inter, rank) in expect {
            let st = ruling_stratum(label.0, label.1).unwrap();
            assert_eq!((st.dim, st.intersection, st.rank), (dim, inter, rank), "{label:?}");
            assert_eq!(st.dim_a, 62);
        }
        let st = ruling_stratum(2, 5).unwrap();
        let r = &st.representative;
        let expected = TrivectorExpr::wedge2u_v(r.a[1]) + TrivectorExpr::wedge(r.a[0], r.b[1], IndexSubspace::full());
        assert_eq!(st.intersection, expected.dim());
        assert_eq!((st.dim, st.intersection, st.rank), (7, 56, 6));
        let st = ruling_stratum(2, 3).unwrap();
        assert_eq!(st.dim, 13);
    }

    #[test]
    fn plane_strata() {
        let expect = [((1, 3), 17, 49), ((1, 4), 14, 49), ((2, 3), 15, 52), ((2, 4), 13, 53), ((2, 5), 9, 53), ((3, 3), 11, 58), ((3, 4), 10, 58), ((3, 5), 7, 59), ((3, 6), 2, 59)];
        for (label, dim, inter) in expect {
            let st = plane_stratum(label.0, label.1).unwrap();
            assert_eq!((st.dim, st.intersection), (dim, inter), "{label:?}");
            assert_eq!(st.dim_a, 65);
        }
        for label in [(3, 3), (2, 3), (3, 4)] {
            assert!(plane_stratum(label.0, label.1).unwrap().inside_first_term, "{label:?}");
        }
        for label in [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5), (3, 6)] {
            assert!(!plane_stratum(label.0, label.1).unwrap().inside_first_term, "{label:?}");
        }
    }

    #[test]
    fn auxiliary_spaces() {
        let got: Vec<_> = aux_spaces().into_iter().map(|a| {
            assert!(a.contains_intersection && a.inside_a, "{}", a.name);
            (a.dim, a.c_dim, a.rank)
        }).collect();
        assert_eq!(got, vec![(11, 53, 9), (8, 56, 6), (4, 58, 4), (7, 59, 6), (4, 60, 5)]);
    }

    #[test]
    fn incidence_table() {
        assert_eq!(incidence_labels().len(), 23);
        let rows = incidence_rows();
        let excluded: Vec<_> = rows.iter().filter(|r| r.excluded).collect();
        assert_eq!(excluded.len(), 9);
        assert!(rows.iter().all(|r| r.excluded == r.excluded_by_rule));
        let table: Vec<([usize; 4], usize, usize)> = vec![
            ([1, 1, 1, 3], 46, 46), ([1, 2, 1, 2], 45, 46), ([1, 2, 1, 3], 44, 46), ([1, 1, 1, 4], 42, 46),
            ([1, 2, 1, 4], 41, 46), ([1, 2, 2, 3], 42, 50), ([1, 1, 2, 4], 41, 50), ([1, 2, 2, 4], 40, 50),
            ([1, 2, 2, 5], 36, 50), ([2, 2, 2, 4], 38, 53), ([1, 2, 3, 4], 37, 53), ([1, 2, 3, 5], 34, 53),
            ([2, 2, 2, 5], 33, 53), ([2, 2, 3, 5], 32, 59),
        ];
        let kept: BTreeMap<[usize; 4], (usize, usize)> =
            rows.iter().filter(|r| !r.excluded).map(|r| (r.label, (r.dim, r.rank))).collect();
        assert_eq!(kept.len(), 14);
        for (label, dim, rank) in table {
            assert_eq!(kept.get(&label), Some(&(dim, rank)), "{label:?}");
            assert!(dim + rank <= 92);
        }
    }

    #[test]
    fn monomial_counts_match_random_coordinates() {
        use crate::trivector::oracle;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let g = crate::linalg::random_gl(N, 1, &mut rng);
        for st in [ruling_stratum(0, 3).unwrap(), plane_stratum(1, 3).unwrap()] {
            let r = &st.representative;
            let a = if st.dim_a == 62 { ruling_a(r.a[0], r.a[1]) } else { plane_a(r.a[0], r.a[1]) };
            let b = ruling_b(r.b[0], r.b[1]);
            assert_eq!(oracle::intersect_dim(&a, &b, &g, &mut rng), st.intersection, "{:?}", st.label);
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(incidence_bound(46, 46), 8);
        assert_eq!(incidence_bound(32, 59), 7);
        assert_eq!(incidence_bound(84, 84), 84);
    }

    #[test]
    fn oracle_on_small_cases() {
        let rep = build_representative(&ruling_pattern(0, 2)).unwrap();
        let c = relative_orbit_dim_oracle(&rep.a, &rep.b, 11);
        assert!(c.agrees(), "{c:?}");
        assert_eq!(c.oracle, 19);
        let c = orbit_dim_oracle(&[s(&[1, 2, 3]), IndexSubspace::initial(6)], 3);
        assert_eq!((c.pattern, c.oracle), (27, 27));
    }

    #[test]
    fn json_pattern() {
        let js = r#"{"flag_a":[2,5],"flag_b":[1,6],"required":[{"a":0,"b":0,"dim":0},{"a":1,"b":0,"dim":1},{"a":0,"b":1,"dim":0},{"a":1,"b":1,"dim":2}]}"#;
        let p: IncidencePattern = serde_json::from_str(js).unwrap();
        assert_eq!(p, ruling_pattern(0, 2));
        assert!(serde_json::from_str::<IncidencePattern>(r#"{"flag_a":[5,2],"flag_b":[1]}"#).is_err());
    }
}
