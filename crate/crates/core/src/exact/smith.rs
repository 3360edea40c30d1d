use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, ZModule};

/// Smith normal form `U * M * V = S` with unimodular `U`, `V` and diagonal `S`
/// whose nonzero entries are positive and form a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal of `S`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn smallest_nonzero(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Computes the Smith normal form together with its transformation matrices.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = s.get(i, t).div_floor(s.get(t, t));
                if !q.is_zero() {
                    let nq = -q;
                    s.add_row_multiple(i, t, &nq);
                    u.add_row_multiple(i, t, &nq);
                }
                if !s.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = s.get(t, j).div_floor(s.get(t, t));
                if !q.is_zero() {
                    let nq = -q;
                    s.add_col_multiple(j, t, &nq);
                    v.add_col_multiple(j, t, &nq);
                }
                if !s.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder survived: move the smallest entry of row/column t to the pivot.
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = s.get(i, t);
                    if !x.is_zero() && x.abs() < s.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = s.get(t, j);
                    if !x.is_zero() && x.abs() < s.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    s.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    s.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

/// Cokernel of the row-vector action `x -> x M`: free rank `cols - rank`
/// plus the invariant factors exceeding one.
pub fn cokernel(m: &IntMatrix) -> ZModule {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    let free = m.cols() - factors.len();
    ZModule::new(free as u64, factors.into_iter().filter(|d| !d.is_one()).collect())
}

/// Rank of the kernel of the column action `x -> M x`.
pub fn kernel_rank(m: &IntMatrix) -> usize {
    m.cols() - smith_normal_form(m).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_form(m: &IntMatrix) {
        let f = smith_normal_form(m);
        assert_eq!(&(&f.u * m) * &f.v, f.s, "U M V = S");
        assert_eq!(f.u.det().abs(), BigInt::one());
        assert_eq!(f.v.det().abs(), BigInt::one());
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j {
                    assert!(f.s.get(i, j).is_zero());
                }
            }
        }
        let d = f.diagonal();
        for w in d.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(!w[0].is_zero(), "zeros trail");
            assert!(w[1].is_multiple_of(&w[0]), "divisibility chain");
        }
        assert!(d.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn diagonal_zero_three() {
        let m = IntMatrix::two_by_two(0, 0, 0, 3);
        let f = smith_normal_form(&m);
        assert_eq!(f.diagonal(), vec![BigInt::from(3), BigInt::from(0)]);
        let c = cokernel(&m);
        assert_eq!(c.free_rank(), 1);
        assert_eq!(c.torsion(), &[BigInt::from(3)]);
        check_form(&m);
    }

    #[test]
    fn cat_map_minus_identity_is_unimodular() {
        let m = IntMatrix::two_by_two(2, 1, 1, 1).sub_identity();
        assert_eq!(smith_normal_form(&m).diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
        assert!(cokernel(&m).is_zero());
    }

    #[test]
    fn torsion_two_example() {
        let m = IntMatrix::two_by_two(2, 1, 2, 0);
        assert_eq!(smith_normal_form(&m).diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(cokernel(&m).torsion(), &[BigInt::from(2)]);
    }

    #[test]
    fn zero_and_empty_matrices() {
        let z = IntMatrix::zeros(2, 3);
        check_form(&z);
        assert_eq!(cokernel(&z).free_rank(), 3);
        let e = IntMatrix::zeros(0, 2);
        assert_eq!(smith_normal_form(&e).rank(), 0);
    }

    #[test]
    fn classic_three_by_three() {
        let m = IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]).unwrap();
        let f = smith_normal_form(&m);
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        check_form(&m);
    }

    proptest! {
        #[test]
        fn smith_form_is_valid(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..10, 16)) {
            let m = IntMatrix::from_i64(rows, cols, &seed[..rows * cols]).unwrap();
            check_form(&m);
        }
    }
}
