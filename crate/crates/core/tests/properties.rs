use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use odlcalc::homog::{BundleSummand, Grassmannian};
use odlcalc::linalg::random_gl;
use odlcalc::properties::{lr_conserves, random_expr, serre_dual};
use odlcalc::trivector::{oracle, N};
use odlcalc::weights::{lr_product, weyl_dimension, GlWeight};

fn weight(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = GlWeight> {
    prop::collection::vec(lo..=hi, n).prop_map(|mut e| {
        e.sort_unstable_by(|a, b| b.cmp(a));
        GlWeight::new(e).unwrap()
    })
}

fn pair(lo: i64, hi: i64) -> impl Strategy<Value = (GlWeight, GlWeight)> {
    (1usize..=4).prop_flat_map(move |n| (weight(n, lo, hi), weight(n, lo, hi)))
}

/// Semistandard tableaux of shape `shape` with entries in `1..=n`, filled cell by cell.
fn count_ssyt(shape: &[usize], n: usize) -> u64 {
    fn go(shape: &[usize], n: usize, grid: &mut Vec<Vec<usize>>, r: usize, c: usize) -> u64 {
        if r == shape.len() {
            return 1;
        }
        if c == shape[r] {
            return go(shape, n, grid, r + 1, 0);
        }
        let left = if c > 0 { grid[r][c - 1] } else { 1 };
        let above = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in left.max(above)..=n {
            grid[r][c] = v;
            total += go(shape, n, grid, r, c + 1);
        }
        total
    }
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    go(shape, n, &mut grid, 0, 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lr_conserves_dimension((a, b) in pair(-2, 3)) {
        prop_assert!(lr_conserves(&a, &b));
    }

    #[test]
    fn lr_is_commutative((a, b) in pair(-2, 3)) {
        prop_assert_eq!(lr_product(&a, &b).unwrap(), lr_product(&b, &a).unwrap());
    }

    #[test]
    fn lr_translation_covariance((a, b) in pair(-2, 3), c in -3i64..=3) {
        prop_assert_eq!(lr_product(&a.shifted(c), &b).unwrap(), lr_product(&a, &b).unwrap().shifted(c));
    }

    #[test]
    fn weyl_counts_tableaux(w in (1usize..=4).prop_flat_map(|n| weight(n, 0, 3))) {
        let shape: Vec<usize> = w.entries().iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
        prop_assert_eq!(weyl_dimension(&w), BigUint::from(count_ssyt(&shape, w.rank())));
    }

    #[test]
    fn weyl_dimension_is_dual_and_shift_invariant(w in (1usize..=5).prop_flat_map(|n| weight(n, -4, 4)), c in -3i64..=3) {
        prop_assert_eq!(weyl_dimension(&w.dual()), weyl_dimension(&w));
        prop_assert_eq!(weyl_dimension(&w.shifted(c)), weyl_dimension(&w));
    }

    #[test]
    fn bott_serre_duality(u in weight(3, -4, 4), q in weight(6, -4, 4), t in -5i64..=5) {
        let s = BundleSummand::new(Grassmannian::G39, u, q, t).unwrap();
        prop_assert!(serre_dual(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn monomial_span_matches_row_reduction(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng);
        let g = random_gl(N, 1, &mut rng);
        prop_assert_eq!(oracle::dim(&e, &g, &mut rng), e.dim());
    }
}

#[test]
fn tableau_oracle_small_cases() {
    assert_eq!(count_ssyt(&[1], 3), 3);
    assert_eq!(count_ssyt(&[2], 2), 3);
    assert_eq!(count_ssyt(&[1, 1], 3), 3);
    assert_eq!(count_ssyt(&[2, 1], 3), 8);
}
