//! The acceptance checks, grouped by criterion and collected into one report.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::homog::{bott_cohomology, BundleSummand, Grassmannian, HomogeneousBundle};
use crate::k3::{chi_on_surface, end0, full_sweep, structure_sheaf_invariants};
use crate::localize::{
    bundle_weights_at, enumerate_fixed_points, integrate, prepare, scenes, BundleExpr, Integrand, LocalizeError, Scene,
    Tower,
};
use crate::properties::{lr_suite, localization_suite, monomial_suite, serre_suite, strata_suite, PropertyReport};
use crate::resolution::{Conclusion, Resolution};
use crate::strata::cases::{self, AuxSpace, RelativeStratum};
use crate::strata::StrataError;
use crate::trivector::{quotient_rank, IndexSubspace, TrivectorExpr};

pub const DEFAULT_SEED: u64 = 1729;

/// Locus dimension left by a rank-8 section on the 11-dimensional ruling tower.
const RULING_LOCUS_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Quoted as a claim about the geometry.
    Stated,
    /// Computed by an independent method and frozen.
    Derived,
    /// Bookkeeping or a negative control.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expected {
    pub value: Value,
    pub provenance: Provenance,
    pub claim: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub criterion: u32,
    pub expected: Expected,
    pub computed: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

pub struct Context<'a> {
    pub resolution: &'a Resolution,
    pub seed: u64,
}

pub struct Checks {
    criterion: u32,
    seed: u64,
    timings: bool,
    last: Instant,
    out: Vec<CheckResult>,
}

impl Checks {
    fn new(criterion: u32, seed: u64, timings: bool) -> Self {
        Checks { criterion, seed, timings, last: Instant::now(), out: Vec::new() }
    }

    fn push(&mut self, id: &str, provenance: Provenance, claim: &str, expected: Value, computed: Value, pass: bool) {
        let now = Instant::now();
        let ms = now.duration_since(self.last).as_millis() as u64;
        self.last = now;
        self.out.push(CheckResult {
            id: format!("{}.{}", self.criterion, id),
            criterion: self.criterion,
            expected: Expected { value: expected, provenance, claim: claim.into() },
            computed,
            pass,
            runtime_ms: self.timings.then_some(ms),
            seed: None,
        });
    }

    fn eq(&mut self, id: &str, provenance: Provenance, claim: &str, expected: Value, computed: Value) {
        let pass = expected == computed;
        self.push(id, provenance, claim, expected, computed, pass);
    }

    /// Marks the last check as depending on the random seed.
    fn seeded(&mut self) {
        if let Some(c) = self.out.last_mut() {
            c.seed = Some(self.seed);
        }
    }
}

pub struct Criterion {
    pub number: u32,
    pub title: &'static str,
    pub tags: &'static [&'static str],
    run: fn(&Context, &mut Checks),
}

impl Criterion {
    /// Selected by its number or any of its tags.
    pub fn matches(&self, token: &str) -> bool {
        token == self.number.to_string() || self.tags.contains(&token)
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { number: 1, title: "ruling space dimension", tags: &["trivector", "ruling"], run: c1 },
        Criterion { number: 2, title: "ruling strata", tags: &["strata", "ruling"], run: c2 },
        Criterion { number: 3, title: "ruling cubic degree", tags: &["localize", "ruling"], run: c3 },
        Criterion { number: 4, title: "ruling planes", tags: &["localize", "ruling"], run: c4 },
        Criterion { number: 5, title: "plane strata and cubic degree", tags: &["strata", "plane", "localize"], run: c5 },
        Criterion { number: 6, title: "plane flag integrals", tags: &["localize", "plane"], run: c6 },
        Criterion { number: 7, title: "incidence table", tags: &["strata", "incidence"], run: c7 },
        Criterion { number: 8, title: "rank and canonical bundle", tags: &["resolution", "hilbert", "canonical"], run: c8 },
        Criterion { number: 9, title: "resolution shape", tags: &["resolution", "hilbert"], run: c9 },
        Criterion { number: 10, title: "Hilbert polynomial", tags: &["resolution", "hilbert"], run: c10 },
        Criterion { number: 11, title: "obstruction and quadrics", tags: &["resolution", "hilbert", "bott"], run: c11 },
        Criterion { number: 12, title: "Plücker degree", tags: &["resolution", "hilbert", "localize"], run: c12 },
        Criterion { number: 13, title: "K3 sweep", tags: &["resolution", "k3"], run: c13 },
        Criterion { number: 14, title: "Euler characteristics on the surface", tags: &["resolution", "k3"], run: c14 },
        Criterion { number: 15, title: "property suites", tags: &["properties"], run: c15 },
    ]
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Criterion numbers or tags; empty runs everything.
    pub only: Vec<String>,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, only: Vec::new(), timings: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }
}

pub fn run(resolution: &Resolution, opts: &VerifyOptions) -> VerifyReport {
    let ctx = Context { resolution, seed: opts.seed };
    let selected: Vec<Criterion> = criteria()
        .into_iter()
        .filter(|c| opts.only.is_empty() || opts.only.iter().any(|t| c.matches(t)))
        .collect();
    let checks: Vec<CheckResult> = selected
        .par_iter()
        .map(|c| {
            let mut out = Checks::new(c.number, opts.seed, opts.timings);
            (c.run)(&ctx, &mut out);
            out.out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    VerifyReport { seed: opts.seed, passed, failed: checks.len() - passed, checks }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            write!(f, "{status}  {:w$}  expected {}  computed {}", c.id, c.expected.value, c.computed)?;
            if let Some(ms) = c.runtime_ms {
                write!(f, "  ({ms} ms)")?;
            }
            writeln!(f)?;
        }
        write!(f, "{} passed, {} failed (seed {})", self.passed, self.failed, self.seed)
    }
}

fn s(ix: &[usize]) -> IndexSubspace {
    IndexSubspace::new(ix).expect("indices in range")
}

fn err(e: impl fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn big(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn conclusion(c: &Conclusion) -> Value {
    match c.value() {
        Some(v) => Value::String(v.to_string()),
        None => Value::String("inconclusive".into()),
    }
}

fn integral(scene: &Scene, seed: u64) -> Value {
    match integrate(&scene.tower, &scene.integrand, seed) {
        Ok(r) => big(&r.value),
        Err(e) => err(e),
    }
}

/// Ranks of a bundle over all fixed points of a tower, deduplicated.
fn ranks(t: &Tower, b: &BundleExpr) -> Result<Vec<i64>, LocalizeError> {
    let mut out: Vec<i64> = enumerate_fixed_points(t)?
        .iter()
        .map(|fp| bundle_weights_at(t, fp, b).map(|w| w.rank()))
        .collect::<Result<_, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn rank_value(t: &Tower, b: &BundleExpr) -> Value {
    match ranks(t, b) {
        Ok(r) => json!(r),
        Err(e) => err(e),
    }
}

fn stratum_value(r: &Result<RelativeStratum, StrataError>) -> Value {
    match r {
        Ok(st) => json!({ "dim": st.dim, "intersection": st.intersection, "rank": st.rank }),
        Err(e) => err(e),
    }
}

fn aux_value(a: &AuxSpace) -> Value {
    json!({ "dim": a.dim, "c_dim": a.c_dim, "rank": a.rank, "between": a.contains_intersection && a.inside_a })
}

fn label(l: (usize, usize)) -> String {
    format!("({},{})", l.0, l.1)
}

fn aux_named<'a>(aux: &'a [AuxSpace], prefix: &str) -> &'a AuxSpace {
    aux.iter().find(|a| a.name.starts_with(prefix)).expect("auxiliary space in catalogue")
}

fn c1(_: &Context, c: &mut Checks) {
    use Provenance::*;
    let a = cases::ruling_a(IndexSubspace::initial(2), IndexSubspace::initial(5));
    c.eq("dim-a", Stated, "U2∧∧²V + ∧²U5∧V has dimension 62", json!(62), json!(a.dim()));
    let q = quotient_rank(&TrivectorExpr::wedge3(IndexSubspace::full()), &a);
    c.eq("quotient-rank", Derived, "∧³V modulo the ruling space has rank 84 − 62", json!(22), json!(q));
    let t = Tower::flag_variety(&[2, 5]);
    c.eq(
        "bundle-rank",
        Derived,
        "the ruling quotient bundle has rank 22 at every fixed point of Fl(2,5,9)",
        json!([22]),
        rank_value(&t, &scenes::ruling_bundle()),
    );
}

fn c2(_: &Context, c: &mut Checks) {
    use Provenance::*;
    let quoted = [
        ((0, 2), 19, 46, 16, "open stratum: dimension 19 = 16 + 3, A∩B of dimension 46"),
        ((1, 2), 17, 46, 16, "dimension 17, A∩B of dimension 46, rank 16"),
        ((0, 3), 17, 45, 17, "dimension 17, A∩B of dimension 45, rank 17"),
        ((1, 3), 16, 49, 13, "dimension 16, A∩B jumps to 49, rank 13"),
        ((1, 4), 13, 50, 12, "dimension 13, A∩B of dimension 50, rank 12"),
    ];
    for (l, dim, inter, rank, claim) in quoted {
        c.eq(
            &format!("ruling-{}", label(l)),
            Stated,
            claim,
            json!({ "dim": dim, "intersection": inter, "rank": rank }),
            stratum_value(&cases::ruling_stratum(l.0, l.1)),
        );
    }
    let frozen = [((2, 4), 11, 54, 8), ((2, 5), 7, 56, 6)];
    for (l, dim, inter, rank) in frozen {
        c.eq(
            &format!("ruling-{}", label(l)),
            Derived,
            "monomial count at the adapted basis, confirmed by the tangent-rank oracle",
            json!({ "dim": dim, "intersection": inter, "rank": rank }),
            stratum_value(&cases::ruling_stratum(l.0, l.1)),
        );
    }
    c.eq(
        "ruling-(2,2)",
        Stated,
        "W6∩U5 = W6∩U2 = U2 forces W1 ⊂ U2, which is excluded",
        json!("infeasible"),
        match cases::ruling_stratum(2, 2) {
            Err(StrataError::Infeasible) => json!("infeasible"),
            other => stratum_value(&other),
        },
    );

    let (u2, u5, w1, w6) = (s(&[1, 2]), s(&[1, 2, 3, 4, 5]), s(&[3]), s(&[3, 4, 6, 7, 8, 9]));
    let basis = cases::ruling_a(u2, u5).span().difference(&cases::ruling_b(w1, w6).span());
    let mut labels = basis.labels();
    labels.sort();
    let mut expected: Vec<&str> =
        vec!["145", "156", "157", "158", "159", "245", "256", "257", "258", "259", "124", "125", "126", "127", "128", "129"];
    expected.sort();
    c.eq("open-basis", Stated, "A/B at the adapted open-stratum basis is spanned by 16 monomials", json!(expected), json!(labels));

    let aux = cases::aux_spaces();
    let aux_quoted = [
        ("ruling (0,2)", 11, 53, 9, Stated, "flags W1 ⊂ W2 ⊂ W4 ⊂ W8: 11 parameters, C of dimension 53, codimension 9"),
        ("ruling (1,3)", 8, 56, 6, Stated, "(W1, T1, W8): eight parameters, C of dimension 56, A/C of rank 6"),
        ("ruling (2,3)", 4, 58, 4, Derived, "W1 alone: four parameters, A/C of rank four"),
    ];
    for (prefix, dim, c_dim, rank, prov, claim) in aux_quoted {
        c.eq(
            &format!("aux-{}", &prefix[7..]),
            prov,
            claim,
            json!({ "dim": dim, "c_dim": c_dim, "rank": rank, "between": true }),
            aux_value(aux_named(&aux, prefix)),
        );
    }

    let table = cases::ruling_table();
    let survivors: Vec<String> = table
        .iter()
        .filter(|(l, st)| {
            let Ok(st) = st else { return false };
            let direct = st.dim < st.rank + RULING_LOCUS_DIM;
            let via_aux = aux
                .iter()
                .find(|a| a.name.starts_with(&format!("ruling {}", label(**l))))
                .is_some_and(|a| a.dim < a.rank + RULING_LOCUS_DIM);
            !(direct || via_aux)
        })
        .map(|(l, _)| label(*l))
        .collect();
    c.eq(
        "survivors",
        Stated,
        "every stratum except (2,4) leaves a locus of dimension below 3",
        json!(["(2,4)"]),
        json!(survivors),
    );
    let locus = table[&(2, 4)].as_ref().map(|st| st.dim - st.rank).ok();
    c.eq("survivor-locus", Derived, "the (2,4) stratum carries a 3-dimensional locus", json!(3), json!(locus));
}

fn c3(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    c.eq(
        "ruling-cubic",
        Stated,
        "the degree of the family of cubics is three",
        json!("3"),
        integral(&scenes::ruling_cubic(), ctx.seed),
    );
    c.seeded();
    let t = scenes::ruling_cubic_tower();
    let naive = Integrand(vec![crate::localize::Factor::Euler(scenes::ruling_cubic_bundle_pointwise())]);
    let computed = match prepare(&t, &naive) {
        Err(LocalizeError::NonConstantRank { .. }) => json!("non-constant rank"),
        Err(e) => err(e),
        Ok(_) => json!("constant rank"),
    };
    c.eq(
        "pointwise-quotient",
        Derived,
        "A/(A∩B) read pointwise jumps rank on the refined tower",
        json!("non-constant rank"),
        computed,
    );
    c.eq(
        "kernel-rank",
        Derived,
        "the kernel bundle has rank 8 on the 11-dimensional tower",
        json!([8]),
        rank_value(&t, &scenes::ruling_cubic_bundle()),
    );
}

fn c4(ctx: &Context, c: &mut Checks) {
    c.eq(
        "ruling-planes",
        Provenance::Stated,
        "∫ e(rank-22 quotient)·c₁(O(1))⁸ over P(U5) on Fl(2,5,9) equals 18",
        json!("18"),
        integral(&scenes::ruling_planes(), ctx.seed),
    );
    c.seeded();
}

fn c5(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    let table = cases::plane_table();
    let quoted = [((1, 3), 17, 49), ((1, 4), 14, 49), ((2, 4), 13, 53), ((2, 5), 9, 53), ((3, 5), 7, 59), ((3, 6), 2, 59)];
    for (l, dim, inter) in quoted {
        let computed = match &table[&l] {
            Ok(st) => json!({ "dim": st.dim, "intersection": st.intersection }),
            Err(e) => err(e),
        };
        c.eq(
            &format!("plane-{}", label(l)),
            Stated,
            "stratum dimension and dimension of A∩B",
            json!({ "dim": dim, "intersection": inter }),
            computed,
        );
    }
    for l in [(2, 3), (3, 3), (3, 4)] {
        let computed = match &table[&l] {
            Ok(st) => json!(st.inside_first_term),
            Err(e) => err(e),
        };
        c.eq(
            &format!("plane-{}-contained", label(l)),
            Stated,
            "A∩B lies in U3∧∧²V, so the section cannot vanish there",
            json!(true),
            computed,
        );
    }

    let aux = cases::aux_spaces();
    c.eq(
        "aux-(1,3)",
        Stated,
        "(W1, W8): 7 parameters, C of dimension 54, A/C of rank 11",
        json!({ "dim": 7, "c_dim": 54, "rank": 11, "between": true }),
        aux_value(aux_named(&aux, "plane (1,3)")),
    );
    c.eq(
        "aux-(2,4)",
        Stated,
        "(W2, W8): 4 parameters, C of dimension 60, A/C of rank 5",
        json!({ "dim": 4, "c_dim": 60, "rank": 5, "between": true }),
        aux_value(aux_named(&aux, "plane (2,4)")),
    );

    let survivors: Vec<String> = table
        .iter()
        .filter(|(l, st)| {
            let Ok(st) = st else { return false };
            let via_aux = aux
                .iter()
                .find(|a| a.name.starts_with(&format!("plane {}", label(**l))))
                .is_some_and(|a| a.rank > a.dim);
            !(st.inside_first_term || st.rank > st.dim || via_aux)
        })
        .map(|(l, _)| label(*l))
        .collect();
    c.eq(
        "survivors",
        Stated,
        "a general section vanishes only on the (3,5) stratum",
        json!(["(3,5)"]),
        json!(survivors),
    );

    c.eq("plane-cubic", Stated, "the degree of the second family of cubics is three", json!("3"), integral(&scenes::plane_cubic(), ctx.seed));
    c.seeded();
}

fn c6(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    c.eq(
        "plane-flags-line",
        Stated,
        "∫ e(E)·c₁(O_G(1))²·c₁(O(1))⁸ over P(U3) on Fl(3,6,9) equals 18",
        json!("18"),
        integral(&scenes::plane_flags_line(), ctx.seed),
    );
    c.seeded();
    c.eq(
        "plane-flags-quotient",
        Stated,
        "replacing c₁(O_G(1))² by c₂ of the dual rank-2 quotient gives 6",
        json!("6"),
        integral(&scenes::plane_flags_quotient(), ctx.seed),
    );
    c.seeded();
}

fn c7(_: &Context, c: &mut Checks) {
    use Provenance::*;
    let rows = cases::incidence_rows();
    c.eq("labels", Derived, "23 relative positions of two flags sharing U1", json!(23), json!(rows.len()));
    let table: Vec<([usize; 4], usize, usize)> = vec![
        ([1, 1, 1, 3], 46, 46),
        ([1, 2, 1, 2], 45, 46),
        ([1, 2, 1, 3], 44, 46),
        ([1, 1, 1, 4], 42, 46),
        ([1, 2, 1, 4], 41, 46),
        ([1, 2, 2, 3], 42, 50),
        ([1, 1, 2, 4], 41, 50),
        ([1, 2, 2, 4], 40, 50),
        ([1, 2, 2, 5], 36, 50),
        ([2, 2, 2, 4], 38, 53),
        ([1, 2, 3, 4], 37, 53),
        ([1, 2, 3, 5], 34, 53),
        ([2, 2, 2, 5], 33, 53),
        ([2, 2, 3, 5], 32, 59),
    ];
    let key = |t: &[usize; 4]| format!("{}{}{}{}", t[0], t[1], t[2], t[3]);
    let expected: Value = table.iter().map(|(t, d, r)| (key(t), json!([d, r]))).collect::<serde_json::Map<_, _>>().into();
    let computed: Value = rows
        .iter()
        .filter(|r| !r.excluded)
        .map(|r| (key(&r.label), json!([r.dim, r.rank])))
        .collect::<serde_json::Map<_, _>>()
        .into();
    c.eq("table", Stated, "the 14 rows (dim S, rank of C∩D)", expected, computed);
    let worst = rows.iter().filter(|r| !r.excluded).map(|r| r.dim + r.rank).max();
    c.push(
        "bound",
        Stated,
        "dim S + rank never exceeds 92",
        json!("≤ 92"),
        json!(worst),
        worst.is_some_and(|w| w <= 92),
    );
    let excluded = rows.iter().filter(|r| r.excluded).count();
    c.eq("excluded", Stated, "nine positions have C∩D inside U3∧∧²V", json!(9), json!(excluded));
    let agree = rows.iter().all(|r| r.excluded == r.excluded_by_rule);
    c.eq(
        "excluded-rule",
        Derived,
        "containment holds exactly when U2∩U3 = U2∩U6 and dim U5∩U6 ≤ dim U5∩U3 + 1",
        json!(true),
        json!(agree),
    );
}

fn c8(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    c.eq(
        "plane-rank",
        Stated,
        "E = ∧³V/(U3∧∧²V + ∧³U6) has rank 19 on Fl(3,6,9)",
        json!([19]),
        rank_value(&Tower::flag_variety(&[3, 6]), &scenes::plane_bundle()),
    );
    let r = ctx.resolution.canonical_identity();
    c.eq(
        "canonical",
        Stated,
        "K_G = O(−9) and K_G ⊗ O(7) = O(−2)",
        json!({ "k_g": -9, "k_d": -2 }),
        json!({ "k_g": r.canonical_twist_g, "k_d": r.canonical_twist_d }),
    );
    c.eq("fano-index", Derived, "the eightfold has index 2", json!(2), json!(r.fano_index));
}

fn c9(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    let res = ctx.resolution;
    let r = res.canonical_identity();
    c.eq("terms", Trivial, "homological degrees 0 through 10", json!(11), json!(res.terms().len()));
    c.eq(
        "length",
        Stated,
        "the resolution has length equal to the codimension",
        json!({ "length": 10, "codimension": 10 }),
        json!({ "length": r.length, "codimension": r.codimension }),
    );
    let sd = res.check_self_duality();
    c.eq(
        "self-duality",
        Stated,
        "F_i ≅ F_{10−i}^∨(−7) for every i",
        json!({ "twist": -7, "mismatches": [] }),
        json!({ "twist": sd.twist, "mismatches": sd.mismatches }),
    );
    c.eq("rank-sum", Derived, "alternating sum of ranks vanishes", json!("0"), big(&r.alternating_rank_sum));
    let rel = res.relativization_mismatches().map(|m| json!(m)).unwrap_or_else(err);
    c.eq(
        "relativization",
        Derived,
        "every term is the relativization of the equivariant resolution of the cone",
        json!([]),
        rel,
    );
}

fn c10(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    match ctx.resolution.hilbert_polynomial() {
        Ok(p) => {
            let coeffs: Vec<Value> = p.descending().iter().map(rational).collect();
            c.eq(
                "polynomial",
                Stated,
                "P(m) = 477/2240 m⁸ + 63/160 m⁶ + 99/320 m⁴ + 47/560 m²",
                json!(["477/2240", "0", "63/160", "0", "99/320", "0", "47/560", "0", "0"]),
                json!(coeffs),
            );
            c.eq("p1", Derived, "P(1) = 1", json!("1"), rational(&p.eval_int(1)));
            c.eq("p2", Stated, "P(2) = 85", json!("85"), rational(&p.eval_int(2)));
            c.eq("even", Derived, "P is even", json!(true), json!(p.is_even()));
        }
        Err(e) => c.eq("polynomial", Stated, "the Euler characteristics interpolate to a polynomial", json!("polynomial"), err(e)),
    }
}

fn c11(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    let s = BundleSummand::from_parts(Grassmannian::G39, &[0, 0, 0], &[3, 0, 0, 0, 0, 0], -1).expect("valid weights");
    let dims: Vec<Value> = bott_cohomology(&s).dims().into_iter().map(|(h, d)| json!({ "h": h, "dim": d.to_string() })).collect();
    c.eq("obstruction", Stated, "h³(S³Q^∨(−1)) = 1 and nothing else", json!([{ "h": 3, "dim": "1" }]), json!(dims));
    c.eq(
        "sections",
        Derived,
        "h⁰(O_D(1)) = 85",
        json!("85"),
        conclusion(&ctx.resolution.twisted_cohomology_sweep(1).structure_sheaf_h(0)),
    );
    c.eq(
        "quadrics",
        Stated,
        "the eightfold lies on 810 quadratic sections",
        json!("810"),
        conclusion(&ctx.resolution.twisted_cohomology_sweep(2).ideal_h(0)),
    );
}

fn c12(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    let from_hilbert = ctx
        .resolution
        .hilbert_polynomial()
        .map(|p| rational(&(p.leading() * BigRational::from_integer(40320.into()))))
        .unwrap_or_else(err);
    c.eq("leading", Derived, "8! times the leading coefficient is 8586", json!("8586"), from_hilbert);
    c.eq(
        "localization",
        Derived,
        "∫ e(E)·σ₁⁸ over Fl(3,6,9) equals 8586",
        json!("8586"),
        integral(&scenes::plucker_degree(), ctx.seed),
    );
    c.seeded();
}

fn c13(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    let sweep = match full_sweep(ctx.resolution) {
        Ok(s) => s,
        Err(e) => return c.eq("groups", Stated, "the Koszul sweep", json!("sweep"), err(e)),
    };
    let groups: Vec<Value> = sweep.nonzero().iter().map(|g| json!([g.i, g.j, g.k, g.dim.to_string()])).collect();
    c.eq(
        "groups",
        Stated,
        "exactly two nonzero groups, at (0,0,0) and (6,10,18), both one-dimensional",
        json!([[0, 0, 0, "1"], [6, 10, 18, "1"]]),
        json!(groups),
    );
    let degree = integrate(&scenes::surface_degree().tower, &scenes::surface_degree().integrand, ctx.seed);
    let degree = match degree {
        Ok(r) => r.value,
        Err(e) => return c.eq("degree", Stated, "the surface has degree 36", json!("36"), err(e)),
    };
    let inv = structure_sheaf_invariants(&sweep, degree);
    c.eq("hodge", Stated, "(h⁰, h¹, h²)(O_S) = (1, 0, 1)", json!([1, 0, 1]), json!([inv.h0, inv.h1, inv.h2]));
    c.eq("degree", Stated, "the surface has degree 36", json!("36"), big(&inv.degree));
    c.seeded();
    c.eq("genus", Stated, "the polarization has genus 19", json!("19"), big(&inv.genus));
    c.eq("euler", Derived, "χ(O_S) = 2", json!("2"), big(&sweep.euler_characteristic()));
}

fn c14(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    let res = ctx.resolution;
    let g = res.grassmannian();
    let chi = |b: &HomogeneousBundle| chi_on_surface(res, b).map(|x| big(&x)).unwrap_or_else(err);
    c.eq("dual-tautological", Stated, "χ(S, U^∨|_S) = 9", json!("9"), chi(&HomogeneousBundle::dual_tautological(g)));
    c.eq("end0", Stated, "χ(S, End₀(U^∨|_S)) = −2", json!("-2"), chi(&end0(g)));
    c.eq("structure-sheaf", Derived, "χ(S, O_S) = 2", json!("2"), chi(&HomogeneousBundle::structure_sheaf(g)));
}

fn suite_value(r: &PropertyReport) -> Value {
    json!({ "trials": r.trials, "failed": r.failed, "examples": r.examples })
}

fn c15(ctx: &Context, c: &mut Checks) {
    use Provenance::*;
    let n_strata = cases::oracle_configurations().len();
    let n_scenes = scenes::catalogue().len();
    let suites: [(&str, &str, PropertyReport); 5] = [
        ("lr", "Littlewood–Richardson conserves dimension on 200 random pairs", lr_suite(ctx.seed, 200)),
        ("serre", "Bott cohomology is Serre dual on 100 random summands", serre_suite(ctx.seed, 100)),
        ("monomial", "monomial spans agree with exact row reduction on 50 random expressions", monomial_suite(ctx.seed, 50)),
        ("strata", "pattern counts agree with the tangent-rank oracle on every configuration", strata_suite(ctx.seed)),
        ("localization", "two torus samples agree on every scene", localization_suite(ctx.seed)),
    ];
    let trials = [200, 100, 50, n_strata, n_scenes];
    for ((id, claim, r), n) in suites.into_iter().zip(trials) {
        let expected = json!({ "trials": n, "failed": 0, "examples": [] });
        c.eq(id, Derived, claim, expected, suite_value(&r));
        c.seeded();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters_by_tag_and_number() {
        let res = Resolution::standard();
        let opts = VerifyOptions { only: vec!["10".into(), "canonical".into()], ..Default::default() };
        let r = run(&res, &opts);
        let crits: std::collections::BTreeSet<u32> = r.checks.iter().map(|c| c.criterion).collect();
        assert_eq!(crits.into_iter().collect::<Vec<_>>(), vec![8, 10]);
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn report_is_deterministic_without_timings() {
        let res = Resolution::standard();
        let opts = VerifyOptions { only: vec!["1".into(), "9".into()], ..Default::default() };
        let a = serde_json::to_string(&run(&res, &opts)).unwrap();
        let b = serde_json::to_string(&run(&res, &opts)).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("runtime_ms"));
    }
}
