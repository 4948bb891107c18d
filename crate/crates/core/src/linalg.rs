//! Exact dense linear algebra over `Z` and `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Rank of an integer matrix given by rows, via Bareiss fraction-free elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = &pivot_row[c];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for k in c + 1..cols {
                let x = &row[k] * pv - &f * &pivot_row[k];
                row[k] = x / &prev;
            }
        }
        prev = pivot_row[c].clone();
        r += 1;
        // rows that vanished stay zero; move them out of the active block
        let mut i = r;
        let mut end = m.len();
        while i < end {
            if m[i][c + 1..].iter().all(Zero::is_zero) {
                end -= 1;
                m.swap(i, end);
            } else {
                i += 1;
            }
        }
        m.truncate(end);
    }
    r
}

/// Rank of a rational matrix.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    rank(&ints)
}

/// Solves `A x = b` over `Q`; returns one solution or `None` if inconsistent.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for k in c..=n {
                    row[k] -= &f * &pivot_row[k];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix.
pub fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for k in 0..2 * n {
                    row[k] -= &f * &pivot_row[k];
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A random invertible integer matrix `g` together with `d·g⁻¹` for an integer `d ≠ 0`.
pub struct RandomGl {
    pub g: Vec<Vec<BigInt>>,
    pub scaled_inverse: Vec<Vec<BigInt>>,
}

pub fn random_gl<R: Rng>(n: usize, bound: i64, rng: &mut R) -> RandomGl {
    loop {
        let g: Vec<Vec<BigInt>> =
            (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()).collect();
        let q: Vec<Vec<BigRational>> =
            g.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
        if let Some(inv) = inverse(&q) {
            let d = inv.iter().flatten().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let scaled_inverse = inv
                .iter()
                .map(|r| r.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect())
                .collect();
            return RandomGl { g, scaled_inverse };
        }
    }
}

/// `u ∧ v ∧ w` in the monomial basis of `∧³Q^n`, triples in lexicographic order.
pub fn wedge3(u: &[BigInt], v: &[BigInt], w: &[BigInt]) -> Vec<BigInt> {
    let n = u.len();
    let mut out = Vec::with_capacity(n * (n - 1) * (n - 2) / 6);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let det = &u[i] * (&v[j] * &w[k] - &v[k] * &w[j]) - &u[j] * (&v[i] * &w[k] - &v[k] * &w[i])
                    + &u[k] * (&v[i] * &w[j] - &v[j] * &w[i]);
                out.push(det);
            }
        }
    }
    out
}

/// `g · x` for an integer matrix and vector.
pub fn mat_vec(g: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    g.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

pub fn is_zero_vector(v: &[BigInt]) -> bool {
    v.iter().all(|x| !x.is_positive() && !x.is_negative())
}
