//! Integral (co)homology of the 3-manifolds in play, the Hochschild table of the
//! dual numbers, and rank assemblies for symplectic cohomology and its products.

mod admissibility;
mod complex;
mod hochschild;
mod sh;

use num_bigint::BigInt;

use crate::exact::{cokernel, kernel_rank, GradedZModule, IntMatrix, ZModule};
use crate::toral::{check_hyperbolic, ToralError};

pub use admissibility::{
    all_triples, allowed_triples, product_admissibility, triple_admissible, AdmissibilityReport, AxiomCheck, Component,
    ProductEntry, ProductTable, SplittingRanks,
};
pub use complex::{ChainComplex, CochainComplex};
pub use hochschild::{hh_c_ranks, hochschild_dual_numbers, HochschildTable};
pub use sh::{sh_mcduff, sh_torus_bundle, ShMcDuff, ShTorusBundle, SideBlock};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error(transparent)]
    Toral(#[from] ToralError),
    #[error("genus {0} is below 2")]
    GenusTooSmall(u32),
    #[error("truncation must be at least 1")]
    InvalidTruncation,
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("malformed product table: {0}")]
    MalformedTable(String),
}

/// Integral cohomology of the mapping torus of a hyperbolic `A`, assembled from the
/// Wang sequence with the monodromy acting on `H^1(T^2)` by `A^T`.
pub fn mapping_torus_cohomology(a: &IntMatrix) -> Result<GradedZModule, HomologyError> {
    check_hyperbolic(a)?;
    let zero = IntMatrix::zeros(1, 1);
    // Monodromy minus identity on H^0, H^1, H^2 of the fiber (det A = 1 on H^2).
    let phi: [IntMatrix; 3] = [zero.clone(), a.transpose().sub_identity(), zero];
    let mut h = GradedZModule::new();
    for k in 0..=3usize {
        // 0 -> coker(phi_{k-1}) -> H^k -> ker(phi_k) -> 0, split since kernels are free.
        let co = if k >= 1 { cokernel(&phi[k - 1]) } else { ZModule::zero() };
        let ker = if k <= 2 { kernel_rank(&phi[k]) as u64 } else { 0 };
        h.set(k as i64, co.direct_sum(&ZModule::free(ker)));
    }
    Ok(h)
}

/// Integral cohomology of the unit cotangent bundle of a closed genus-`g` surface,
/// assembled from the Gysin sequence with Euler number `2 - 2g`.
pub fn circle_bundle_cohomology(genus: u32) -> Result<GradedZModule, HomologyError> {
    if genus < 2 {
        return Err(HomologyError::GenusTooSmall(genus));
    }
    let euler = IntMatrix::from_entries(1, 1, vec![BigInt::from(2 - 2 * genus as i64)]).expect("1x1");
    let base = [1usize, 2 * genus as usize, 1];
    let cup = |k: usize| -> Option<&IntMatrix> { if k == 0 { Some(&euler) } else { None } };
    let mut h = GradedZModule::new();
    for k in 0..=3usize {
        // H^{k-2}(S) -e-> H^k(S) -> H^k(E) -> H^{k-1}(S) -e-> H^{k+1}(S)
        let image_part = if k < 3 {
            match k.checked_sub(2).and_then(cup) {
                Some(m) => cokernel(m),
                None => ZModule::free(base[k] as u64),
            }
        } else {
            ZModule::zero()
        };
        let kernel_part = if k >= 1 {
            match cup(k - 1) {
                Some(m) => ZModule::free(kernel_rank(m) as u64),
                None => ZModule::free(base[k - 1] as u64),
            }
        } else {
            ZModule::zero()
        };
        h.set(k as i64, image_part.direct_sum(&kernel_part));
    }
    Ok(h)
}

/// Betti numbers of a cohomology table in degrees `0..=top`.
pub fn betti_numbers(h: &GradedZModule, top: i64) -> Vec<u64> {
    (0..=top).map(|k| h.free_rank(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cat_map_torus_has_no_torsion() {
        let h = mapping_torus_cohomology(&IntMatrix::two_by_two(2, 1, 1, 1)).unwrap();
        assert_eq!(betti_numbers(&h, 3), vec![1, 1, 1, 1]);
        assert!(h.get(2).torsion().is_empty());
        assert_eq!(h.euler_characteristic(), 0);
    }

    #[test]
    fn torsion_two_example() {
        let h = mapping_torus_cohomology(&IntMatrix::two_by_two(3, 1, 2, 1)).unwrap();
        assert_eq!(h.get(2), ZModule::new(1, vec![BigInt::from(2)]));
        assert_eq!(h.get(1), ZModule::free(1));
    }

    #[test]
    fn mapping_torus_rejects_elliptic() {
        assert!(matches!(
            mapping_torus_cohomology(&IntMatrix::two_by_two(0, -1, 1, 0)),
            Err(HomologyError::Toral(ToralError::NotHyperbolic(_)))
        ));
    }

    #[test]
    fn unit_cotangent_bundle_genus_two() {
        let h = circle_bundle_cohomology(2).unwrap();
        assert_eq!(h.get(0), ZModule::free(1));
        assert_eq!(h.get(1), ZModule::free(4));
        assert_eq!(h.get(2), ZModule::new(4, vec![BigInt::from(2)]));
        assert_eq!(h.get(3), ZModule::free(1));
        assert_eq!(circle_bundle_cohomology(1), Err(HomologyError::GenusTooSmall(1)));
    }

    #[test]
    fn unit_cotangent_bundle_genus_five() {
        let h = circle_bundle_cohomology(5).unwrap();
        assert_eq!(h.get(2), ZModule::new(10, vec![BigInt::from(8)]));
    }
}
