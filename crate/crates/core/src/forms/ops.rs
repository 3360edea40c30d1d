use nalgebra::{DMatrix, DVector};

use super::algebra::FormValue;
use super::field::{Derivative, FormField, VectorField};
use super::FormsError;

const SINGULAR_TOL: f64 = 1e-10;

/// Pointwise contact data of a pair of 1-forms on a 3-manifold.
#[derive(Clone, Debug, PartialEq)]
pub struct GeigesValues {
    pub plus_volume: f64,
    pub minus_volume: f64,
    pub mixed_plus: f64,
    pub mixed_minus: f64,
}

impl GeigesValues {
    /// `α+∧dα+ + α-∧dα-`, which vanishes for a bi-contact pair of opposite signs.
    pub fn sum(&self) -> f64 {
        self.plus_volume + self.minus_volume
    }
}

pub fn geiges_values(alpha_plus: &FormField, alpha_minus: &FormField, p: &[f64], mode: Derivative) -> GeigesValues {
    let (ap, am) = (alpha_plus.at(p), alpha_minus.at(p));
    let (dp, dm) = (alpha_plus.d(p, mode), alpha_minus.d(p, mode));
    GeigesValues {
        plus_volume: ap.wedge(&dp).top(),
        minus_volume: am.wedge(&dm).top(),
        mixed_plus: ap.wedge(&dm).top(),
        mixed_minus: am.wedge(&dp).top(),
    }
}

fn solve_square(m: DMatrix<f64>, rhs: DVector<f64>) -> Result<Vec<f64>, FormsError> {
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > SINGULAR_TOL * smax.max(1.0)) {
        return Err(FormsError::SingularSystem(smin));
    }
    let x = m.lu().solve(&rhs).ok_or(FormsError::SingularSystem(0.0))?;
    Ok(x.iter().copied().collect())
}

/// Reeb field of a contact form: `α(R) = 1`, `ι_R dα = 0`, solved in the least-squares
/// sense through the normal equations of the stacked system.
pub fn solve_reeb(alpha: &FormField, p: &[f64], mode: Derivative) -> Result<Vec<f64>, FormsError> {
    let n = alpha.dim;
    let a = alpha.at(p);
    let w = alpha.d(p, mode).matrix();
    // Row 0: α; rows 1..=n: (ι_R dα)_j = Σ_i R_i ω_ij.
    let mut m = DMatrix::<f64>::zeros(n + 1, n);
    let mut rhs = DVector::<f64>::zeros(n + 1);
    for i in 0..n {
        m[(0, i)] = a.comps[i];
    }
    rhs[0] = 1.0;
    for j in 0..n {
        for i in 0..n {
            m[(j + 1, i)] = w[i][j];
        }
    }
    let mtm = m.transpose() * &m;
    let mtb = m.transpose() * rhs;
    let r = solve_square(mtm, mtb)?;
    Ok(r)
}

/// Liouville field `X` with `ι_X dλ = λ`.
pub fn solve_liouville(lambda: &FormField, p: &[f64], mode: Derivative) -> Result<Vec<f64>, FormsError> {
    let n = lambda.dim;
    let w = lambda.d(p, mode).matrix();
    let l = lambda.at(p);
    // Σ_i X_i ω_ij = λ_j
    let m = DMatrix::from_fn(n, n, |j, i| w[i][j]);
    solve_square(m, DVector::from_vec(l.comps))
}

/// Top coefficient of `(dλ)^{n/2}`.
pub fn volume_coefficient(lambda: &FormField, p: &[f64], mode: Derivative) -> f64 {
    let w = lambda.d(p, mode);
    let mut acc = w.clone();
    for _ in 1..lambda.dim / 2 {
        acc = acc.wedge(&w);
    }
    acc.top()
}

/// Symplectic frame `{∂s, X_s, X, X_θ}` used to trivialise the tangent bundle, with the
/// pairing matrix `ω(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameReport {
    pub vectors: Vec<Vec<f64>>,
    pub pairing: Vec<Vec<f64>>,
    pub determinant: f64,
    /// `ω(∂s, X_s) - 1`.
    pub normalisation_residual: f64,
    /// `θ'(X_s)` after correction.
    pub corrected_theta_on_xs: f64,
    /// `ω(X, X_θ) - θ(X)`.
    pub anosov_pairing_residual: f64,
}

/// `ω v` as a covector: `(ω v)_i = Σ_j ω_ij v_j`.
fn omega_times(w: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    w.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn solve_omega(w: &[Vec<f64>], covector: &[f64]) -> Result<Vec<f64>, FormsError> {
    // ω(Y, V) = c(Y) for all Y  <=>  ω V = c
    let n = w.len();
    let m = DMatrix::from_fn(n, n, |i, j| w[i][j]);
    solve_square(m, DVector::from_vec(covector.to_vec()))
}

/// Builds the frame at `p` on a symplectisation-like chart whose coordinate `s_index` is
/// the radial coordinate. `alpha_plus`, `alpha_minus` are the contact forms pulled back
/// to the 4-dimensional chart and `theta` a 1-form with `θ(X) = 1`.
pub fn symplectic_frame(
    lambda: &FormField,
    alpha_plus: &FormField,
    alpha_minus: &FormField,
    anosov: &VectorField,
    theta: &FormField,
    s_index: usize,
    p: &[f64],
) -> Result<FrameReport, FormsError> {
    let n = lambda.dim;
    let w = lambda.d(p, Derivative::Analytic).matrix();
    let mut ds = vec![0.0; n];
    ds[s_index] = 1.0;
    let xs = solve_omega(&w, &ds)?;
    let th = theta.at(p).comps;
    let th_xs: f64 = th.iter().zip(&xs).map(|(a, b)| a * b).sum();
    let s = p[s_index];
    let (ap, am) = (alpha_plus.at(p).comps, alpha_minus.at(p).comps);
    let corrected: Vec<f64> = (0..n).map(|i| th[i] - th_xs * (s.exp() * ap[i] - (-s).exp() * am[i])).collect();
    let xth = solve_omega(&w, &corrected)?;
    let x = anosov.at(p);
    let mut e_s = vec![0.0; n];
    e_s[s_index] = 1.0;
    let vectors = vec![e_s.clone(), xs.clone(), x.clone(), xth.clone()];
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let pairing: Vec<Vec<f64>> =
        vectors.iter().map(|u| vectors.iter().map(|v| dot(u, &omega_times(&w, v))).collect()).collect();
    let determinant = super::algebra::det(&pairing);
    Ok(FrameReport {
        normalisation_residual: pairing[0][1] - 1.0,
        corrected_theta_on_xs: dot(&corrected, &xs),
        anosov_pairing_residual: pairing[2][3] - dot(&th, &x),
        vectors,
        pairing,
        determinant,
    })
}

pub fn form_residual(a: &FormValue, b: &FormValue) -> f64 {
    a.sub(b).max_abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard_contact() -> FormField {
        // dz - y dx on R^3, Reeb field ∂z
        FormField::new("dz - y dx", 3, 1, |p| vec![-p[1], 0.0, 1.0]).with_derivative(|_| vec![1.0, 0.0, 0.0])
    }

    #[test]
    fn reeb_of_standard_contact_form() {
        let r = solve_reeb(&standard_contact(), &[0.2, 0.5, -1.0], Derivative::Analytic).unwrap();
        assert!((r[0]).abs() < 1e-12 && (r[1]).abs() < 1e-12 && (r[2] - 1.0).abs() < 1e-12);
        let r = solve_reeb(&standard_contact(), &[0.2, 0.5, -1.0], Derivative::Numeric(1e-5)).unwrap();
        assert!((r[2] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_form_is_singular() {
        let closed = FormField::new("dz", 3, 1, |_| vec![0.0, 0.0, 1.0]).with_derivative(|_| vec![0.0; 3]);
        assert!(matches!(solve_reeb(&closed, &[0.0, 0.0, 0.0], Derivative::Analytic), Err(FormsError::SingularSystem(_))));
    }

    #[test]
    fn radial_liouville_field() {
        // λ = (x dy - y dx)/2 on R^2 has Liouville field (x, y)/2
        let l = FormField::new("λ", 2, 1, |p| vec![-p[1] / 2.0, p[0] / 2.0]).with_derivative(|_| vec![1.0]);
        let x = solve_liouville(&l, &[0.3, -0.8], Derivative::Analytic).unwrap();
        assert!((x[0] - 0.15).abs() < 1e-12 && (x[1] + 0.4).abs() < 1e-12);
        assert_eq!(volume_coefficient(&l, &[0.0, 0.0], Derivative::Analytic), 1.0);
    }
}
