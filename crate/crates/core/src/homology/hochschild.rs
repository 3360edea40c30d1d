use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::exact::{GradedZModule, IntMatrix, ZModule};

use super::{ChainComplex, HomologyError};

/// Degree-one element `left (x⊗1) + right (1⊗x)` of the enveloping algebra of `Z[x]/x^2`.
#[derive(Clone, Copy, Debug)]
struct EnvelopingLinear {
    left: i64,
    right: i64,
}

/// The two maps of the 2-periodic free resolution of `R = Z[x]/x^2` over `R⊗R`.
const ODD_MAP: EnvelopingLinear = EnvelopingLinear { left: 1, right: -1 };
const EVEN_MAP: EnvelopingLinear = EnvelopingLinear { left: 1, right: 1 };

impl EnvelopingLinear {
    /// Coefficient of `x` after applying `R ⊗_{R⊗R} -`, where both factors act by `x`.
    fn collapse(self) -> i64 {
        self.left + self.right
    }
}

/// Hochschild homology of `Z[x]/x^2` with `deg x = 1`, bigraded by homological
/// degree `n` and internal degree `q`; the total degree is `q - n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildTable {
    /// Homological degrees `0..=truncation` are reported.
    pub truncation: u32,
    /// Number of resolution terms actually used; two more than reported so the
    /// top reported degree sees its incoming differential.
    pub computed_terms: u32,
    entries: BTreeMap<(i64, i64), ZModule>,
}

impl HochschildTable {
    pub fn get(&self, homological: i64, internal: i64) -> ZModule {
        self.entries.get(&(homological, internal)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, &ZModule)> {
        self.entries.iter().map(|((n, q), m)| (*n, *q, m))
    }

    /// Collapses to the total degree `internal - homological`.
    pub fn by_total_degree(&self) -> GradedZModule {
        let mut g = GradedZModule::new();
        for ((n, q), m) in &self.entries {
            g.add(q - n, m);
        }
        g
    }

    pub fn total_free_rank(&self) -> u64 {
        self.entries.values().map(|m| m.free_rank()).sum()
    }

    pub fn support_total_degrees(&self) -> Vec<i64> {
        self.by_total_degree().support()
    }

    /// Direct sum of `n` copies.
    pub fn copies(&self, n: u64) -> HochschildTable {
        HochschildTable {
            truncation: self.truncation,
            computed_terms: self.computed_terms,
            entries: self.entries.iter().filter(|_| n > 0).map(|(k, m)| (*k, m.copies(n))).collect(),
        }
    }
}

impl Serialize for HochschildTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            homological: i64,
            internal: i64,
            total: i64,
            #[serde(flatten)]
            module: &'a ZModule,
        }
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for ((n, q), m) in &self.entries {
            seq.serialize_element(&Row { homological: *n, internal: *q, total: q - n, module: m })?;
        }
        seq.end()
    }
}

/// Computes the table in homological degrees `0..=truncation`.
///
/// Resolution term `n` is a free module on one generator of internal degree `n`; after
/// collapsing, term `n` of the complex is `R` with basis `e_n` (degree `n`) and `x e_n`
/// (degree `n + 1`), and `d e_n = c_n x e_{n-1}` with `c_n` from the resolution map.
pub fn hochschild_dual_numbers(truncation: u32) -> Result<HochschildTable, HomologyError> {
    if truncation < 1 {
        return Err(HomologyError::InvalidTruncation);
    }
    let terms = truncation + 2;
    let top = terms as usize;
    let coefficient = |n: usize| if n % 2 == 1 { ODD_MAP.collapse() } else { EVEN_MAP.collapse() };
    let mut entries = BTreeMap::new();
    for q in 0..=(top as i64 + 1) {
        // Basis of term n in internal degree q: e_n when n == q, x e_n when n + 1 == q.
        let dims: Vec<usize> = (0..=top).map(|n| usize::from(n as i64 == q || n as i64 + 1 == q)).collect();
        let boundaries: Vec<IntMatrix> = (1..=top)
            .map(|n| {
                let (rows, cols) = (dims[n - 1], dims[n]);
                let mut m = IntMatrix::zeros(rows, cols);
                if rows == 1 && cols == 1 && n as i64 == q {
                    m.set(0, 0, coefficient(n).into());
                }
                m
            })
            .collect();
        let h = ChainComplex::new(dims, boundaries)?.homology();
        for (n, module) in h.degrees() {
            if n <= truncation as i64 {
                entries.insert((n, q), module.clone());
            }
        }
    }
    Ok(HochschildTable { truncation, computed_terms: terms, entries })
}

/// Hochschild table for a finite set of closed orbits: one copy per orbit.
pub fn hh_c_ranks(orbits: u64, truncation: u32) -> Result<HochschildTable, HomologyError> {
    Ok(hochschild_dual_numbers(truncation)?.copies(orbits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn low_degrees() {
        let t = hochschild_dual_numbers(3).unwrap();
        assert_eq!(t.get(0, 0), ZModule::free(1));
        assert_eq!(t.get(0, 1), ZModule::free(1));
        assert_eq!(t.get(1, 1), ZModule::free(1));
        assert_eq!(t.get(1, 2), ZModule::new(0, vec![BigInt::from(2)]));
        assert_eq!(t.get(2, 2), ZModule::zero());
        assert_eq!(t.get(2, 3), ZModule::free(1));
        assert_eq!(t.get(-1, 0), ZModule::zero());
    }

    #[test]
    fn support_and_growth() {
        let mut last = 0;
        for n in 1..=12 {
            let t = hochschild_dual_numbers(n).unwrap();
            assert!(t.support_total_degrees().iter().all(|d| *d == 0 || *d == 1));
            let r = t.total_free_rank();
            assert!(r > last);
            last = r;
        }
        assert_eq!(hochschild_dual_numbers(0), Err(HomologyError::InvalidTruncation));
    }

    #[test]
    fn copies_scale_linearly() {
        let one = hochschild_dual_numbers(6).unwrap();
        let three = hh_c_ranks(3, 6).unwrap();
        assert_eq!(three.total_free_rank(), 3 * one.total_free_rank());
        assert_eq!(three.get(1, 2).torsion().len(), 3);
        assert_eq!(hh_c_ranks(0, 6).unwrap().total_free_rank(), 0);
    }
}
