//! The surface `S = D ∩ Z(s₁,s₂)` cut by two sections of `U^∨`, studied through
//! the double complex `∧^i G^∨ ⊗ F_j` with `G = U^∨ ⊕ U^∨`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::homog::{cohomology, euler_characteristic, exterior_power_of_sum, BundleSummand, CohomologyTable, Grassmannian, HomogError, HomogeneousBundle};
use crate::resolution::{forced_by_position, Conclusion, Resolution};

/// Rank of `G = U^∨ ⊕ U^∨`.
pub const KOSZUL_LENGTH: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepCell {
    pub i: usize,
    pub j: usize,
    pub table: CohomologyTable,
}

/// One nonzero `H^k(G(3,9), ∧^i G^∨ ⊗ F_j)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct NonzeroGroup {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub dim: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Sweep {
    pub cells: Vec<SweepCell>,
}

impl K3Sweep {
    pub fn nonzero(&self) -> Vec<NonzeroGroup> {
        let mut out: Vec<NonzeroGroup> = self
            .cells
            .iter()
            .flat_map(|c| c.table.dims().into_iter().map(move |(k, dim)| NonzeroGroup { i: c.i, j: c.j, k, dim }))
            .collect();
        out.sort();
        out
    }

    /// `h^p(O_S)` read off at total degree `p = k − i − j`.
    pub fn structure_sheaf(&self) -> BTreeMap<i64, Conclusion> {
        let mut by_degree: BTreeMap<i64, BigUint> = BTreeMap::new();
        for g in self.nonzero() {
            *by_degree.entry(g.k as i64 - g.i as i64 - g.j as i64).or_default() += g.dim;
        }
        forced_by_position(&by_degree)
    }

    /// `Σ (−1)^{k−i−j} dim` over the whole sweep.
    pub fn euler_characteristic(&self) -> BigInt {
        self.nonzero()
            .into_iter()
            .map(|g| {
                let d = BigInt::from(g.dim);
                if (g.k + g.i + g.j) % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }
}

/// `G^∨ = U ⊕ U` as a list of summands.
pub fn koszul_factors(g: Grassmannian) -> Vec<HomogeneousBundle> {
    vec![HomogeneousBundle::tautological(g); 2]
}

/// `End₀(U^∨) = S_{(1,0,−1)}U^∨`.
pub fn end0(g: Grassmannian) -> HomogeneousBundle {
    let mut u = vec![0; g.k];
    u[0] = 1;
    u[g.k - 1] = -1;
    BundleSummand::from_parts(g, &u, &vec![0; g.n - g.k], 0).expect("valid weight").into()
}

fn koszul_terms(g: Grassmannian) -> Result<Vec<HomogeneousBundle>, HomogError> {
    let f = koszul_factors(g);
    (0..=KOSZUL_LENGTH).map(|i| exterior_power_of_sum(&f, i)).collect()
}

pub fn full_sweep(res: &Resolution) -> Result<K3Sweep, HomogError> {
    let wedges = koszul_terms(res.grassmannian())?;
    let pairs: Vec<(usize, usize)> =
        (0..wedges.len()).flat_map(|i| (0..res.terms().len()).map(move |j| (i, j))).collect();
    let cells = pairs
        .par_iter()
        .map(|&(i, j)| {
            let b = wedges[i].tensor(res.term(j))?;
            Ok(SweepCell { i, j, table: cohomology(&b) })
        })
        .collect::<Result<Vec<_>, HomogError>>()?;
    Ok(K3Sweep { cells })
}

/// `χ(S, b|_S) = Σ_{i,j} (−1)^{i+j} χ(∧^i G^∨ ⊗ F_j ⊗ b)`.
pub fn chi_on_surface(res: &Resolution, b: &HomogeneousBundle) -> Result<BigInt, HomogError> {
    let wedges = koszul_terms(res.grassmannian())?;
    let pairs: Vec<(usize, usize)> =
        (0..wedges.len()).flat_map(|i| (0..res.terms().len()).map(move |j| (i, j))).collect();
    let terms = pairs
        .par_iter()
        .map(|&(i, j)| {
            let c = euler_characteristic(&wedges[i].tensor(res.term(j))?.tensor(b)?);
            Ok(if (i + j) % 2 == 0 { c } else { -c })
        })
        .collect::<Result<Vec<BigInt>, HomogError>>()?;
    Ok(terms.into_iter().fold(BigInt::zero(), |a, b| a + b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub h0: Option<u64>,
    pub h1: Option<u64>,
    pub h2: Option<u64>,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub degree: BigInt,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub genus: BigInt,
}

impl SurfaceInvariants {
    pub fn is_k3(&self) -> bool {
        (self.h0, self.h1, self.h2) == (Some(1), Some(0), Some(1))
    }
}

/// Hodge numbers of `O_S` from the sweep, with the polarization degree supplied.
pub fn structure_sheaf_invariants(sweep: &K3Sweep, degree: BigInt) -> SurfaceInvariants {
    let h = sweep.structure_sheaf();
    let get = |p: i64| match h.get(&p) {
        Some(c) => c.value().and_then(|v| u64::try_from(v).ok()),
        None => Some(0),
    };
    let genus = &degree / BigInt::from(2) + 1;
    SurfaceInvariants { h0: get(0), h1: get(1), h2: get(2), degree, genus }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweep() -> K3Sweep {
        full_sweep(&Resolution::standard()).unwrap()
    }

    #[test]
    fn only_two_groups_survive() {
        let s = sweep();
        assert_eq!(s.cells.len(), 7 * 11);
        let nz: Vec<_> = s.nonzero().into_iter().map(|g| (g.i, g.j, g.k, g.dim)).collect();
        assert_eq!(nz, vec![(0, 0, 0, 1u32.into()), (6, 10, 18, 1u32.into())]);
    }

    #[test]
    fn first_koszul_column_is_acyclic() {
        let s = sweep();
        let cell = s.cells.iter().find(|c| c.i == 1 && c.j == 0).unwrap();
        assert!(cell.table.is_zero());
    }

    #[test]
    fn invariants() {
        let inv = structure_sheaf_invariants(&sweep(), 36.into());
        assert!(inv.is_k3());
        assert_eq!(inv.genus, 19.into());
        assert_eq!(sweep().euler_characteristic(), 2.into());
    }

    #[test]
    fn surviving_groups_are_serre_dual() {
        let g = Grassmannian::G39;
        let f = koszul_factors(g);
        let a = exterior_power_of_sum(&f, 0).unwrap();
        let b = exterior_power_of_sum(&f, 6).unwrap().tensor(Resolution::standard().term(10)).unwrap();
        assert_eq!(b, a.dual().tensor(&g.canonical_bundle()).unwrap());
    }

    #[test]
    fn surface_euler_characteristics() {
        let res = Resolution::standard();
        let g = res.grassmannian();
        assert_eq!(chi_on_surface(&res, &HomogeneousBundle::structure_sheaf(g)).unwrap(), 2.into());
        assert_eq!(chi_on_surface(&res, &HomogeneousBundle::dual_tautological(g)).unwrap(), 9.into());
        assert_eq!(chi_on_surface(&res, &end0(g)).unwrap(), (-2).into());
    }
}
