//! Randomized consistency suites cross-checking independent computations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::homog::{bott_cohomology, BundleSummand, Grassmannian};
use crate::linalg::random_gl;
use crate::localize::{integrate, scenes};
use crate::strata::{cases, orbit_dim_oracle, random_subspace, relative_orbit_dim_oracle};
use crate::trivector::{oracle, TrivectorExpr, N};
use crate::weights::{lr_product, weyl_dimension, GlWeight};

const REPORTED_FAILURES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub trials: usize,
    pub failed: usize,
    pub examples: Vec<String>,
    pub seed: u64,
}

impl PropertyReport {
    fn new(name: &str, seed: u64) -> Self {
        PropertyReport { name: name.into(), trials: 0, failed: 0, examples: Vec::new(), seed }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < REPORTED_FAILURES {
                self.examples.push(describe());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.failed == 0 && self.trials > 0
    }
}

pub fn random_weight<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> GlWeight {
    let mut e: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    e.sort_unstable_by(|a, b| b.cmp(a));
    GlWeight::new(e).expect("sorted entries are dominant")
}

pub fn random_summand<R: Rng>(rng: &mut R) -> BundleSummand {
    let g = Grassmannian::G39;
    let u = random_weight(rng, g.k, -4, 4);
    let q = random_weight(rng, g.n - g.k, -4, 4);
    BundleSummand::new(g, u, q, rng.gen_range(-5..=5)).expect("weights of the right size")
}

pub fn random_expr<R: Rng>(rng: &mut R) -> TrivectorExpr {
    let terms = rng.gen_range(1..=3);
    let mut e = TrivectorExpr::zero();
    for _ in 0..terms {
        let mut d = || {
            let k = rng.gen_range(1..=N);
            random_subspace(k, rng)
        };
        let (a, b, c) = (d(), d(), d());
        e = e + TrivectorExpr::wedge(a, b, c);
    }
    e
}

/// `dim S_a · dim S_b = Σ c · dim S_ν`.
pub fn lr_conserves(a: &GlWeight, b: &GlWeight) -> bool {
    let d = lr_product(a, b).expect("same rank");
    d.dimension() == weyl_dimension(a) * weyl_dimension(b)
}

/// `H^i(E) ≅ H^{dim−i}(E^∨ ⊗ K)^∨` on `G(3,9)`.
pub fn serre_dual(s: &BundleSummand) -> bool {
    let g = s.grassmannian();
    let dual = s.dual().twisted(g.canonical_twist());
    let (a, b) = (bott_cohomology(s), bott_cohomology(&dual));
    (0..=g.dim()).all(|i| a.dim(i) == b.dim(g.dim() - i))
}

pub fn lr_suite(seed: u64, trials: usize) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = PropertyReport::new("lr-dimension-conservation", seed);
    for _ in 0..trials {
        let n = rng.gen_range(1..=5);
        let a = random_weight(&mut rng, n, -3, 4);
        let b = random_weight(&mut rng, n, -3, 4);
        r.record(lr_conserves(&a, &b), || format!("{a:?} ⊗ {b:?}"));
    }
    r
}

pub fn serre_suite(seed: u64, trials: usize) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = PropertyReport::new("bott-serre-duality", seed);
    for _ in 0..trials {
        let s = random_summand(&mut rng);
        r.record(serre_dual(&s), || format!("{s:?}"));
    }
    r
}

/// Monomial span dimension against row reduction of sampled decomposable trivectors.
pub fn monomial_suite(seed: u64, trials: usize) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = PropertyReport::new("monomial-vs-rational-rank", seed);
    for _ in 0..trials {
        let e = random_expr(&mut rng);
        let g = random_gl(N, 1, &mut rng);
        let exact = oracle::dim(&e, &g, &mut rng);
        let counted = e.dim();
        r.record(exact == counted, || format!("{e:?}: {counted} vs {exact}"));
    }
    r
}

pub fn strata_suite(seed: u64) -> PropertyReport {
    let mut r = PropertyReport::new("stratum-pattern-vs-tangent-rank", seed);
    for (i, (name, fixed, moving)) in cases::oracle_configurations().into_iter().enumerate() {
        let s = seed.wrapping_add(i as u64);
        let c = if fixed.is_empty() { orbit_dim_oracle(&moving, s) } else { relative_orbit_dim_oracle(&fixed, &moving, s) };
        r.record(c.agrees(), || format!("{name}: {} vs {}", c.pattern, c.oracle));
    }
    r
}

pub fn localization_suite(seed: u64) -> PropertyReport {
    let mut r = PropertyReport::new("localization-double-sample", seed);
    for (scene, _) in scenes::catalogue() {
        let res = integrate(&scene.tower, &scene.integrand, seed);
        r.record(res.is_ok(), || format!("{}: {:?}", scene.name, res.err()));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites() {
        assert!(lr_suite(1, 20).holds());
        assert!(serre_suite(1, 20).holds());
        assert!(monomial_suite(1, 3).holds());
    }

    #[test]
    fn report_counts_failures() {
        let mut r = PropertyReport::new("x", 0);
        r.record(true, String::new);
        r.record(false, || "bad".into());
        assert_eq!((r.trials, r.failed, r.examples.clone()), (2, 1, vec!["bad".to_string()]));
        assert!(!r.holds());
    }
}
