use crate::exact::{smith_normal_form, GradedZModule, IntMatrix, ZModule};

use super::HomologyError;

/// Cochain complex of free abelian groups `C^0 -> C^1 -> ...`; `differentials[k]`
/// is the `dims[k+1] x dims[k]` matrix of `C^k -> C^{k+1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    differentials: Vec<IntMatrix>,
}

/// Chain complex `... -> C_1 -> C_0`; `boundaries[k]` is the `dims[k] x dims[k+1]`
/// matrix of `C_{k+1} -> C_k`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

fn check_shapes(dims: &[usize], maps: &[IntMatrix], upward: bool) -> Result<(), HomologyError> {
    if maps.len() + 1 != dims.len() && !(dims.is_empty() && maps.is_empty()) {
        return Err(HomologyError::MalformedComplex(format!("{} maps for {} groups", maps.len(), dims.len())));
    }
    for (k, m) in maps.iter().enumerate() {
        let (r, c) = if upward { (dims[k + 1], dims[k]) } else { (dims[k], dims[k + 1]) };
        if m.rows() != r || m.cols() != c {
            return Err(HomologyError::MalformedComplex(format!(
                "map {k} is {}x{}, expected {r}x{c}",
                m.rows(),
                m.cols()
            )));
        }
    }
    for w in maps.windows(2) {
        let comp = if upward { &w[1] * &w[0] } else { &w[0] * &w[1] };
        if comp.entries().iter().any(|x| x != &num_bigint::BigInt::from(0)) {
            return Err(HomologyError::MalformedComplex("consecutive maps do not compose to zero".into()));
        }
    }
    Ok(())
}

/// `ker(out) / im(incoming)` given the ranks and invariant factors of the two maps.
fn subquotient(dim: usize, out: Option<&IntMatrix>, incoming: Option<&IntMatrix>) -> ZModule {
    let out_rank = out.map_or(0, |m| smith_normal_form(m).rank());
    let (in_rank, torsion) = match incoming {
        Some(m) => {
            let f = smith_normal_form(m);
            (f.rank(), f.invariant_factors())
        }
        None => (0, Vec::new()),
    };
    ZModule::new((dim - out_rank - in_rank) as u64, torsion)
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, differentials: Vec<IntMatrix>) -> Result<Self, HomologyError> {
        check_shapes(&dims, &differentials, true)?;
        Ok(CochainComplex { dims, differentials })
    }

    pub fn cohomology(&self) -> GradedZModule {
        let mut g = GradedZModule::new();
        for k in 0..self.dims.len() {
            let out = self.differentials.get(k);
            let incoming = if k > 0 { self.differentials.get(k - 1) } else { None };
            g.set(k as i64, subquotient(self.dims[k], out, incoming));
        }
        g
    }
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, HomologyError> {
        check_shapes(&dims, &boundaries, false)?;
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn homology(&self) -> GradedZModule {
        let mut g = GradedZModule::new();
        for k in 0..self.dims.len() {
            let out = if k > 0 { self.boundaries.get(k - 1) } else { None };
            let incoming = self.boundaries.get(k);
            g.set(k as i64, subquotient(self.dims[k], out, incoming));
        }
        g
    }

    /// `Hom(-, Z)` of the complex.
    pub fn dual(&self) -> CochainComplex {
        CochainComplex { dims: self.dims.clone(), differentials: self.boundaries.iter().map(|b| b.transpose()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn real_projective_plane() {
        // C_2 -> C_1 -> C_0 with boundaries 2 and 0.
        let c = ChainComplex::new(
            vec![1, 1, 1],
            vec![IntMatrix::from_i64(1, 1, &[0]).unwrap(), IntMatrix::from_i64(1, 1, &[2]).unwrap()],
        )
        .unwrap();
        let h = c.homology();
        assert_eq!(h.get(0), ZModule::free(1));
        assert_eq!(h.get(1), ZModule::new(0, vec![BigInt::from(2)]));
        assert!(h.get(2).is_zero());
        let hc = c.dual().cohomology();
        assert_eq!(hc.get(0), ZModule::free(1));
        assert!(hc.get(1).is_zero());
        assert_eq!(hc.get(2), ZModule::new(0, vec![BigInt::from(2)]));
    }

    #[test]
    fn rejects_non_complex() {
        let one = IntMatrix::from_i64(1, 1, &[1]).unwrap();
        assert!(CochainComplex::new(vec![1, 1, 1], vec![one.clone(), one]).is_err());
        assert!(CochainComplex::new(vec![1, 2], vec![IntMatrix::zeros(1, 1)]).is_err());
    }
}
