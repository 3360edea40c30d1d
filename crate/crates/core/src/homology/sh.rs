use serde::Serialize;

use crate::chords::{enumerate_rational_fibers, RationalFiber, Sign};
use crate::exact::{GradedZModule, IntMatrix, ZModule};
use crate::toral::eigen_data;

use super::{circle_bundle_cohomology, mapping_torus_cohomology, HomologyError};

/// Ranks contributed by closed orbits at one end: a copy of `H*(S^1)` per orbit,
/// recorded ungraded in slots 0 and 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SideBlock {
    pub sign: Sign,
    pub orbit_count: u64,
    pub ranks: GradedZModule,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fibers: Vec<RationalFiber>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<String>,
}

fn circle_copies(n: u64) -> GradedZModule {
    GradedZModule::from_modules([(0, ZModule::free(n)), (1, ZModule::free(n))])
}

/// Rank data of symplectic cohomology for the Liouville filling of a torus bundle:
/// the fiber windows at both ends with `H*(M)` in the middle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShTorusBundle {
    pub max_norm: u64,
    pub minus: SideBlock,
    pub middle: GradedZModule,
    pub plus: SideBlock,
}

pub fn sh_torus_bundle(a: &IntMatrix, max_norm: u64) -> Result<ShTorusBundle, HomologyError> {
    let middle = mapping_torus_cohomology(a)?;
    let e = eigen_data(a)?;
    let block = |sign: Sign| {
        let fibers = enumerate_rational_fibers(&e, sign, max_norm);
        let n = fibers.len() as u64;
        SideBlock { sign, orbit_count: n, ranks: circle_copies(n), fibers, classes: Vec::new() }
    };
    Ok(ShTorusBundle { max_norm, minus: block(Sign::Minus), middle, plus: block(Sign::Plus) })
}

/// Rank data for McDuff's domain over a genus-`g` surface: powers `t^1..t^{t_max}` of
/// `H*(S*Σ)` at the negative end, `H*(S*Σ)` in the middle, and one circle per
/// supplied free homotopy class at the positive end.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShMcDuff {
    pub genus: u32,
    pub t_max: u32,
    pub negative: Vec<GradedZModule>,
    pub negative_total: GradedZModule,
    pub middle: GradedZModule,
    pub positive: SideBlock,
}

pub fn sh_mcduff(genus: u32, t_max: u32, classes: &[String]) -> Result<ShMcDuff, HomologyError> {
    let middle = circle_bundle_cohomology(genus)?;
    let negative: Vec<GradedZModule> = (1..=t_max).map(|_| middle.clone()).collect();
    let negative_total = middle.copies(t_max as u64);
    let positive = SideBlock {
        sign: Sign::Plus,
        orbit_count: classes.len() as u64,
        ranks: circle_copies(classes.len() as u64),
        fibers: Vec::new(),
        classes: classes.to_vec(),
    };
    Ok(ShMcDuff { genus, t_max, negative, negative_total, middle, positive })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_bundle_blocks_match_fibers() {
        let a = IntMatrix::two_by_two(2, 1, 1, 1);
        let sh = sh_torus_bundle(&a, 10).unwrap();
        let e = eigen_data(&a).unwrap();
        assert_eq!(sh.plus.orbit_count, enumerate_rational_fibers(&e, Sign::Plus, 10).len() as u64);
        assert_eq!(sh.plus.ranks.free_rank(0), sh.plus.orbit_count);
        assert_eq!(sh.plus.ranks.free_rank(1), sh.plus.orbit_count);
        assert_eq!(sh.middle.total_free_rank(), 4);
    }

    #[test]
    fn mcduff_negative_block_scales() {
        let sh = sh_mcduff(2, 2, &["a1".into(), "b1".into()]).unwrap();
        assert_eq!(sh.negative.len(), 2);
        assert_eq!(sh.negative_total.total_free_rank(), 2 * sh.middle.total_free_rank());
        assert_eq!(sh.negative_total.get(2).torsion().len(), 2);
        assert_eq!(sh.positive.ranks.free_rank(0), 2);
        assert!(sh_mcduff(1, 2, &[]).is_err());
        assert!(sh_mcduff(3, 0, &[]).unwrap().negative_total.is_zero());
    }
}
