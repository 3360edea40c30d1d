use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data: entries.iter().map(|&x| BigInt::from(x)).collect() })
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data: entries })
    }

    /// Shorthand for the 2x2 matrix [[a, b], [c, d]].
    pub fn two_by_two(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::from_i64(2, 2, &[a, b, c, d]).expect("four entries")
    }

    /// Parses whitespace- or comma-separated row-major entries of a square matrix.
    pub fn parse_square(text: &str) -> Result<Self, ExactError> {
        let entries: Vec<BigInt> = text
            .split(|c: char| c.is_whitespace() || c == ',' || c == ';')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<BigInt>().map_err(|_| ExactError::Parse(s.to_string())))
            .collect::<Result<_, _>>()?;
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != entries.len() {
            return Err(ExactError::Shape(format!("{} entries do not form a square matrix", entries.len())));
        }
        Self::from_entries(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn sub_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let idx = i * self.cols + i;
            m.data[idx] -= 1;
        }
        m
    }

    pub fn pow(&self, n: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(p) => {
                        for j in 0..n {
                            a.swap(k * n + j, p * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    /// Inverse of a matrix with determinant +-1.
    pub fn unimodular_inverse(&self) -> Result<Self, ExactError> {
        let det = self.det();
        if det.abs() != BigInt::one() {
            return Err(ExactError::NotUnimodular(det.to_string()));
        }
        let n = self.rows;
        // Adjugate via cofactors; only used on small matrices.
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let mut c = minor.det();
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                inv.set(i, j, c * &det);
            }
        }
        Ok(inv)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, data: entries }
    }

    /// Applies the matrix to a rational column vector.
    pub fn apply_rational(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for (j, vj) in v.iter().enumerate() {
                    acc += BigRational::from_integer(self.get(i, j).clone()) * vj;
                }
                acc
            })
            .collect()
    }

    pub fn apply_int(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| v.iter().enumerate().map(|(j, vj)| self.get(i, j) * vj).sum()).collect()
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.data.iter().map(|x| x.to_i64()).collect()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] += delta;
        }
    }

    /// col[target] += factor * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * &self.data[i * self.cols + source];
            self.data[i * self.cols + target] += delta;
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shapes must agree")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_small_matrices() {
        assert_eq!(IntMatrix::two_by_two(2, 1, 1, 1).det(), BigInt::from(1));
        assert_eq!(IntMatrix::two_by_two(0, 1, 1, 0).det(), BigInt::from(-1));
        let m = IntMatrix::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 1]).unwrap();
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.det(), BigInt::from(0));
        let m = IntMatrix::from_i64(3, 3, &[0, 2, 1, 1, 0, 0, 3, 1, 5]).unwrap();
        assert_eq!(m.det(), BigInt::from(-9));
    }

    #[test]
    fn cat_map_powers_and_inverse() {
        let a = IntMatrix::two_by_two(2, 1, 1, 1);
        assert_eq!(a.pow(2), IntMatrix::two_by_two(5, 3, 3, 2));
        let inv = a.unimodular_inverse().unwrap();
        assert_eq!(&a * &inv, IntMatrix::identity(2));
    }

    #[test]
    fn parse_square_accepts_separators() {
        let m = IntMatrix::parse_square("2 1, 1 1").unwrap();
        assert_eq!(m, IntMatrix::two_by_two(2, 1, 1, 1));
        assert!(IntMatrix::parse_square("1 2 3").is_err());
        assert!(IntMatrix::parse_square("1 x 3 4").is_err());
    }
}
