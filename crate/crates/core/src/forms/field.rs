use std::f64::consts::PI;
use std::sync::Arc;

use super::algebra::{det, subsets, FormValue};

pub type PointFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Default central-difference step.
pub const DEFAULT_STEP: f64 = 1e-5;

/// Coordinate box of a chart; angular coordinates are sampled over a full turn
/// and differenced modulo `2π`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub labels: Vec<&'static str>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub angular: Vec<bool>,
}

impl Chart {
    pub fn new(name: &str, coords: &[(&'static str, f64, f64, bool)]) -> Self {
        Chart {
            name: name.to_string(),
            labels: coords.iter().map(|c| c.0).collect(),
            lower: coords.iter().map(|c| c.1).collect(),
            upper: coords.iter().map(|c| c.2).collect(),
            angular: coords.iter().map(|c| c.3).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Maps a point of the unit cube into the chart box.
    pub fn place(&self, unit: &[f64]) -> Vec<f64> {
        unit.iter().enumerate().map(|(i, u)| self.lower[i] + u * (self.upper[i] - self.lower[i])).collect()
    }
}

/// Smooth `k`-form given by its coefficient functions, optionally with a closed-form
/// exterior derivative.
#[derive(Clone)]
pub struct FormField {
    pub name: String,
    pub dim: usize,
    pub degree: usize,
    coeffs: PointFn,
    derivative: Option<PointFn>,
}

/// How exterior derivatives are evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Derivative {
    /// Closed form when registered, central differences with the default step otherwise.
    Analytic,
    Numeric(f64),
}

impl FormField {
    pub fn new(name: &str, dim: usize, degree: usize, coeffs: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        FormField { name: name.to_string(), dim, degree, coeffs: Arc::new(coeffs), derivative: None }
    }

    pub fn with_derivative(mut self, d: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn at(&self, p: &[f64]) -> FormValue {
        FormValue::new(self.dim, self.degree, (self.coeffs)(p))
    }

    /// The registered closed-form derivative as a form field of its own.
    pub fn analytic_derivative(&self) -> Option<FormField> {
        self.derivative.as_ref().map(|d| FormField {
            name: format!("d{}", self.name),
            dim: self.dim,
            degree: self.degree + 1,
            coeffs: d.clone(),
            derivative: None,
        })
    }

    /// `dω` by central differences: `(dω)_S = Σ_j (-1)^j ∂_{s_j} ω_{S \ s_j}`.
    pub fn d_numeric(&self, p: &[f64], h: f64) -> FormValue {
        let base = subsets(self.dim, self.degree);
        let partials: Vec<Vec<f64>> = (0..self.dim)
            .map(|i| {
                let mut fwd = p.to_vec();
                let mut bwd = p.to_vec();
                fwd[i] += h;
                bwd[i] -= h;
                let (a, b) = ((self.coeffs)(&fwd), (self.coeffs)(&bwd));
                a.iter().zip(&b).map(|(x, y)| (x - y) / (2.0 * h)).collect()
            })
            .collect();
        let mut out = FormValue::zero(self.dim, self.degree + 1);
        for (k, s) in subsets(self.dim, self.degree + 1).iter().enumerate() {
            let mut acc = 0.0;
            for (j, &sj) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != sj).collect();
                let idx = base.iter().position(|b| *b == rest).expect("face index");
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * partials[sj][idx];
            }
            out.comps[k] = acc;
        }
        out
    }

    pub fn d(&self, p: &[f64], mode: Derivative) -> FormValue {
        match (mode, &self.derivative) {
            (Derivative::Analytic, Some(d)) => FormValue::new(self.dim, self.degree + 1, d(p)),
            (Derivative::Analytic, None) => self.d_numeric(p, DEFAULT_STEP),
            (Derivative::Numeric(h), _) => self.d_numeric(p, h),
        }
    }

    /// Pointwise linear combination of forms of equal shape.
    pub fn combine(name: &str, terms: Vec<(f64, FormField)>) -> FormField {
        let dim = terms[0].1.dim;
        let degree = terms[0].1.degree;
        let with_d = terms.iter().all(|t| t.1.derivative.is_some());
        let t1 = terms.clone();
        let mut f = FormField::new(name, dim, degree, move |p| {
            let mut acc = vec![0.0; subsets(dim, degree).len()];
            for (c, f) in &t1 {
                for (a, b) in acc.iter_mut().zip((f.coeffs)(p)) {
                    *a += c * b;
                }
            }
            acc
        });
        if with_d {
            let t2 = terms;
            f = f.with_derivative(move |p| {
                let mut acc = vec![0.0; subsets(dim, degree + 1).len()];
                for (c, f) in &t2 {
                    let d = f.derivative.as_ref().expect("checked above");
                    for (a, b) in acc.iter_mut().zip(d(p)) {
                        *a += c * b;
                    }
                }
                acc
            });
        }
        f
    }
}

/// Smooth vector field.
#[derive(Clone)]
pub struct VectorField {
    pub name: String,
    pub dim: usize,
    f: PointFn,
}

impl VectorField {
    pub fn new(name: &str, dim: usize, f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        VectorField { name: name.to_string(), dim, f: Arc::new(f) }
    }

    pub fn at(&self, p: &[f64]) -> Vec<f64> {
        (self.f)(p)
    }
}

/// Smooth map between charts; `angular_target[i]` marks output coordinates that are
/// angles, whose differences are wrapped into `(-π, π]`.
#[derive(Clone)]
pub struct ChartMap {
    pub name: String,
    pub source_dim: usize,
    pub target_dim: usize,
    pub angular_target: Vec<bool>,
    f: PointFn,
}

pub fn wrap_angle(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

impl ChartMap {
    pub fn new(
        name: &str,
        source_dim: usize,
        target_dim: usize,
        angular_target: Vec<bool>,
        f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        ChartMap { name: name.to_string(), source_dim, target_dim, angular_target, f: Arc::new(f) }
    }

    pub fn at(&self, p: &[f64]) -> Vec<f64> {
        (self.f)(p)
    }

    /// Jacobian `J[i][j] = ∂F_i/∂x_j` by central differences with wrap-aware angles.
    pub fn jacobian(&self, p: &[f64], h: f64) -> Vec<Vec<f64>> {
        let mut j = vec![vec![0.0; self.source_dim]; self.target_dim];
        for c in 0..self.source_dim {
            let mut fwd = p.to_vec();
            let mut bwd = p.to_vec();
            fwd[c] += h;
            bwd[c] -= h;
            let (a, b) = ((self.f)(&fwd), (self.f)(&bwd));
            for r in 0..self.target_dim {
                let mut diff = a[r] - b[r];
                if self.angular_target.get(r).copied().unwrap_or(false) {
                    diff = wrap_angle(diff);
                }
                j[r][c] = diff / (2.0 * h);
            }
        }
        j
    }

    /// `(F^*β)_I(p) = Σ_J β_J(F(p)) det J[J, I]`.
    pub fn pullback(&self, form: &FormField, p: &[f64], h: f64) -> FormValue {
        assert_eq!(form.dim, self.target_dim);
        let jac = self.jacobian(p, h);
        let beta = form.at(&self.at(p));
        let k = form.degree;
        let target_sets = subsets(self.target_dim, k);
        let mut out = FormValue::zero(self.source_dim, k);
        for (ii, i_set) in subsets(self.source_dim, k).iter().enumerate() {
            let mut acc = 0.0;
            for (jj, j_set) in target_sets.iter().enumerate() {
                let minor: Vec<Vec<f64>> = j_set.iter().map(|&r| i_set.iter().map(|&c| jac[r][c]).collect()).collect();
                acc += beta.comps[jj] * det(&minor);
            }
            out.comps[ii] = acc;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_derivative_of_exact_form() {
        // d(x y dz) = y dx∧dz + x dy∧dz
        let f = FormField::new("xy dz", 3, 1, |p| vec![0.0, 0.0, p[0] * p[1]]);
        let d = f.d_numeric(&[0.3, -0.7, 1.1], 1e-5);
        assert!((d.component(&[0, 2]) - (-0.7)).abs() < 1e-9);
        assert!((d.component(&[1, 2]) - 0.3).abs() < 1e-9);
        assert!(d.component(&[0, 1]).abs() < 1e-9);
    }

    #[test]
    fn polar_pullback_of_area_form() {
        // (r, θ) -> (r cos θ, r sin θ) pulls dx∧dy back to r dr∧dθ
        let map = ChartMap::new("polar", 2, 2, vec![false, false], |p| vec![p[0] * p[1].cos(), p[0] * p[1].sin()]);
        let area = FormField::new("dx dy", 2, 2, |_| vec![1.0]);
        let pb = map.pullback(&area, &[1.7, 0.4], 1e-5);
        assert!((pb.comps[0] - 1.7).abs() < 1e-9);
    }

    #[test]
    fn angle_differences_wrap() {
        assert!((wrap_angle(2.0 * PI - 0.1) + 0.1).abs() < 1e-15);
        assert_eq!(wrap_angle(-PI), PI);
        let map = ChartMap::new("angle", 1, 1, vec![true], |p| vec![p[0].rem_euclid(2.0 * PI)]);
        let j = map.jacobian(&[0.0], 1e-5);
        assert!((j[0][0] - 1.0).abs() < 1e-9);
    }
}
