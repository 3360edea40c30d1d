//! Pointwise exterior algebra on `R^n` for small `n`.

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

pub fn subset_index(n: usize, set: &[usize]) -> usize {
    subsets(n, set.len()).iter().position(|s| s == set).expect("increasing subset")
}

/// Sign of the permutation sorting `seq` (entries distinct), or 0 on a repeat.
pub fn sort_sign(seq: &[usize]) -> (i8, Vec<usize>) {
    let mut v = seq.to_vec();
    let mut sign = 1i8;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return (0, v);
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return (0, v);
    }
    (sign, v)
}

/// Value of a `k`-form at a point: components on the basis `dx_I`, `I` increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct FormValue {
    pub dim: usize,
    pub degree: usize,
    pub comps: Vec<f64>,
}

impl FormValue {
    pub fn new(dim: usize, degree: usize, comps: Vec<f64>) -> Self {
        assert_eq!(comps.len(), subsets(dim, degree).len(), "component count for a {degree}-form on R^{dim}");
        FormValue { dim, degree, comps }
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        FormValue { dim, degree, comps: vec![0.0; subsets(dim, degree).len()] }
    }

    pub fn component(&self, set: &[usize]) -> f64 {
        let (s, sorted) = sort_sign(set);
        if s == 0 {
            return 0.0;
        }
        s as f64 * self.comps[subset_index(self.dim, &sorted)]
    }

    pub fn wedge(&self, other: &FormValue) -> FormValue {
        assert_eq!(self.dim, other.dim);
        let deg = self.degree + other.degree;
        let mut out = FormValue::zero(self.dim, deg);
        if deg > self.dim {
            return out;
        }
        let left = subsets(self.dim, self.degree);
        let right = subsets(self.dim, other.degree);
        for (i, a) in left.iter().enumerate() {
            if self.comps[i] == 0.0 {
                continue;
            }
            for (j, b) in right.iter().enumerate() {
                let mut seq = a.clone();
                seq.extend_from_slice(b);
                let (s, sorted) = sort_sign(&seq);
                if s != 0 {
                    out.comps[subset_index(self.dim, &sorted)] += s as f64 * self.comps[i] * other.comps[j];
                }
            }
        }
        out
    }

    /// Contraction `ι_v`, inserting `v` in the first slot.
    pub fn interior(&self, v: &[f64]) -> FormValue {
        assert_eq!(v.len(), self.dim);
        assert!(self.degree > 0, "contraction of a function");
        let mut out = FormValue::zero(self.dim, self.degree - 1);
        for (j, rest) in subsets(self.dim, self.degree - 1).iter().enumerate() {
            let mut acc = 0.0;
            for (i, vi) in v.iter().enumerate() {
                let mut seq = vec![i];
                seq.extend_from_slice(rest);
                acc += vi * self.component(&seq);
            }
            out.comps[j] = acc;
        }
        out
    }

    /// Evaluates the form on `degree` vectors.
    pub fn eval(&self, vectors: &[Vec<f64>]) -> f64 {
        assert_eq!(vectors.len(), self.degree);
        let mut f = self.clone();
        for v in vectors {
            f = f.interior(v);
        }
        f.comps[0]
    }

    /// Coefficient of `dx_0 ∧ ... ∧ dx_{n-1}` of a top-degree form.
    pub fn top(&self) -> f64 {
        assert_eq!(self.degree, self.dim, "not a top-degree form");
        self.comps[0]
    }

    /// Antisymmetric matrix `ω_ij = ω(e_i, e_j)` of a 2-form.
    pub fn matrix(&self) -> Vec<Vec<f64>> {
        assert_eq!(self.degree, 2);
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.component(&[i, j])).collect()).collect()
    }

    pub fn sub(&self, other: &FormValue) -> FormValue {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        FormValue { dim: self.dim, degree: self.degree, comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect() }
    }

    pub fn add(&self, other: &FormValue) -> FormValue {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        FormValue { dim: self.dim, degree: self.degree, comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: f64) -> FormValue {
        FormValue { dim: self.dim, degree: self.degree, comps: self.comps.iter().map(|a| c * a).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Determinant of a small square matrix by cofactor expansion.
pub fn det(m: &[Vec<f64>]) -> f64 {
    match m.len() {
        0 => 1.0,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<f64>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| *x).collect()).collect();
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subset_index(4, &[1, 3]), 4);
        assert_eq!(sort_sign(&[2, 0, 1]).0, 1);
        assert_eq!(sort_sign(&[1, 0]).0, -1);
        assert_eq!(sort_sign(&[1, 1]).0, 0);
    }

    #[test]
    fn standard_symplectic_square() {
        // ω = dx0∧dx1 + dx2∧dx3, ω∧ω = 2 dx0∧dx1∧dx2∧dx3
        let mut w = FormValue::zero(4, 2);
        w.comps[subset_index(4, &[0, 1])] = 1.0;
        w.comps[subset_index(4, &[2, 3])] = 1.0;
        assert_eq!(w.wedge(&w).top(), 2.0);
        let m = w.matrix();
        assert_eq!(m[0][1], 1.0);
        assert_eq!(m[1][0], -1.0);
        let i = w.interior(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(i.comps, vec![0.0, 1.0, 0.0, 0.0]);
        assert_eq!(w.eval(&[vec![0.0, 0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]]), 1.0);
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let a = FormValue::new(3, 1, vec![1.0, 2.0, 3.0]);
        let b = FormValue::new(3, 1, vec![-1.0, 0.5, 4.0]);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        assert_eq!(ab.add(&ba).max_abs(), 0.0);
        assert!((det(&[vec![2.0, 0.0, 1.0], vec![1.0, 3.0, 2.0], vec![1.0, 1.0, 1.0]]) - 0.0).abs() < 1e-15);
    }
}
