//! Closed-form contact pairs, Liouville forms, vector fields and chart maps.
//!
//! Conventions: 3-dimensional charts are `(x, y, z)` for the torus bundle, `(r, t, θ)`
//! for the Fermi chart along a closed geodesic and `(x, y, φ)` for the upper half-plane
//! model of the unit cotangent bundle. Cylinder charts prepend the radial coordinate.

use std::f64::consts::PI;

use super::algebra::{subsets, FormValue};
use super::field::{Chart, ChartMap, FormField, VectorField};

/// A pair of contact forms of opposite signs together with their Reeb fields and the
/// field `X` spanning `ker α+ ∩ ker α-` normalised by `ι_X dα± = -α∓`.
#[derive(Clone)]
pub struct ContactPair {
    pub chart: Chart,
    pub alpha_plus: FormField,
    pub alpha_minus: FormField,
    pub reeb_plus: VectorField,
    pub reeb_minus: VectorField,
    pub anosov: VectorField,
}

pub fn torus_chart() -> Chart {
    Chart::new("torus-bundle", &[("x", 0.0, 1.0, false), ("y", 0.0, 1.0, false), ("z", -1.0, 1.0, false)])
}

pub fn fermi_chart() -> Chart {
    Chart::new("fermi", &[("r", -1.0, 1.0, false), ("t", 0.0, 2.0, false), ("θ", 0.0, 2.0 * PI, true)])
}

pub fn halfplane_chart() -> Chart {
    Chart::new("half-plane", &[("x", -1.0, 1.0, false), ("y", 0.5, 2.0, false), ("φ", 0.0, 2.0 * PI, true)])
}

/// Prepends a radial coordinate to a 3-dimensional chart.
pub fn cylinder_chart(base: &Chart, label: &'static str, lo: f64, hi: f64) -> Chart {
    let mut coords = vec![(label, lo, hi, false)];
    for i in 0..base.dim() {
        coords.push((base.labels[i], base.lower[i], base.upper[i], base.angular[i]));
    }
    Chart::new(&format!("{label}×{}", base.name), &coords)
}

/// `±e^z dx + e^{-z} dy`.
pub fn torus_pair() -> ContactPair {
    let alpha = |sign: f64| {
        FormField::new(if sign > 0.0 { "α+" } else { "α-" }, 3, 1, move |p| vec![sign * p[2].exp(), (-p[2]).exp(), 0.0])
            .with_derivative(move |p| vec![0.0, -sign * p[2].exp(), (-p[2]).exp()])
    };
    let reeb = |sign: f64| {
        VectorField::new(if sign > 0.0 { "R+" } else { "R-" }, 3, move |p| vec![0.5 * sign * (-p[2]).exp(), 0.5 * p[2].exp(), 0.0])
    };
    ContactPair {
        chart: torus_chart(),
        alpha_plus: alpha(1.0),
        alpha_minus: alpha(-1.0),
        reeb_plus: reeb(1.0),
        reeb_minus: reeb(-1.0),
        anosov: VectorField::new("∂z", 3, |_| vec![0.0, 0.0, 1.0]),
    }
}

/// Canonical form `cos θ dr + cosh r sin θ dt` and prequantisation form `sinh r dt + dθ`
/// in Fermi coordinates.
pub fn fermi_pair() -> ContactPair {
    let can = FormField::new("α_can", 3, 1, |p| vec![p[2].cos(), p[0].cosh() * p[2].sin(), 0.0])
        .with_derivative(|p| vec![p[0].sinh() * p[2].sin(), p[2].sin(), -p[0].cosh() * p[2].cos()]);
    let pre = FormField::new("α_pre", 3, 1, |p| vec![0.0, p[0].sinh(), 1.0]).with_derivative(|p| vec![p[0].cosh(), 0.0, 0.0]);
    ContactPair {
        chart: fermi_chart(),
        alpha_plus: can,
        alpha_minus: pre,
        reeb_plus: VectorField::new("R_can", 3, |p| vec![p[2].cos(), p[2].sin() / p[0].cosh(), -p[0].tanh() * p[2].sin()]),
        reeb_minus: VectorField::new("R_pre", 3, |_| vec![0.0, 0.0, 1.0]),
        anosov: VectorField::new("X", 3, |p| vec![-p[2].sin(), p[2].cos() / p[0].cosh(), -p[0].tanh() * p[2].cos()]),
    }
}

/// `(cos φ dx + sin φ dy)/y` and `dx/y + dφ`.
pub fn halfplane_pair() -> ContactPair {
    let can = FormField::new("α̃_can", 3, 1, |p| vec![p[2].cos() / p[1], p[2].sin() / p[1], 0.0])
        .with_derivative(|p| vec![p[2].cos() / (p[1] * p[1]), p[2].sin() / p[1], -p[2].cos() / p[1]]);
    let pre = FormField::new("α̃_pre", 3, 1, |p| vec![1.0 / p[1], 0.0, 1.0]).with_derivative(|p| vec![1.0 / (p[1] * p[1]), 0.0, 0.0]);
    ContactPair {
        chart: halfplane_chart(),
        alpha_plus: can,
        alpha_minus: pre,
        reeb_plus: VectorField::new("R̃_can", 3, |p| vec![p[1] * p[2].cos(), p[1] * p[2].sin(), -p[2].cos()]),
        reeb_minus: VectorField::new("R̃_pre", 3, |_| vec![0.0, 0.0, 1.0]),
        anosov: VectorField::new("X̃", 3, |p| vec![-p[1] * p[2].sin(), p[1] * p[2].cos(), p[2].sin()]),
    }
}

/// Embeds a form on `M` into `R × M`, the new coordinate first.
pub fn lift_value(v: &FormValue) -> FormValue {
    let n = v.dim + 1;
    let mut out = FormValue::zero(n, v.degree);
    let big = subsets(n, v.degree);
    for (i, s) in subsets(v.dim, v.degree).iter().enumerate() {
        let shifted: Vec<usize> = s.iter().map(|x| x + 1).collect();
        let j = big.iter().position(|b| *b == shifted).expect("shifted subset");
        out.comps[j] = v.comps[i];
    }
    out
}

pub fn lift_field(f: &FormField) -> FormField {
    let (g, dg) = (f.clone(), f.clone());
    let lifted = FormField::new(&f.name, f.dim + 1, f.degree, move |p| lift_value(&g.at(&p[1..])).comps);
    if f.has_analytic_derivative() {
        lifted.with_derivative(move |p| lift_value(&dg.analytic_derivative().expect("checked").at(&p[1..])).comps)
    } else {
        lifted
    }
}

pub fn lift_vector(v: &VectorField) -> VectorField {
    let v = v.clone();
    VectorField::new(&v.name.clone(), v.dim + 1, move |p| {
        let mut out = vec![0.0];
        out.extend(v.at(&p[1..]));
        out
    })
}

/// Radial weights `(f, f', g, g')` of `f(s) α+ + g(s) α-`.
pub type Weights = fn(f64, f64) -> [f64; 4];

/// `f(s) α+ + g(s) α-` on `R × M` with its closed-form derivative
/// `f' ds∧α+ + g' ds∧α- + f dα+ + g dα-`; `param` is passed through to the weights.
pub fn cylinder_form(name: &str, pair: &ContactPair, weights: Weights, param: f64) -> FormField {
    let (ap, am) = (pair.alpha_plus.clone(), pair.alpha_minus.clone());
    let (ap2, am2) = (ap.clone(), am.clone());
    FormField::new(name, 4, 1, move |p| {
        let [f, _, g, _] = weights(p[0], param);
        lift_value(&ap.at(&p[1..]).scale(f).add(&am.at(&p[1..]).scale(g))).comps
    })
    .with_derivative(move |p| {
        let q = &p[1..];
        let [f, fp, g, gp] = weights(p[0], param);
        let ds = FormValue::new(4, 1, vec![1.0, 0.0, 0.0, 0.0]);
        let radial = ds.wedge(&lift_value(&ap2.at(q).scale(fp).add(&am2.at(q).scale(gp))));
        let dp = ap2.analytic_derivative().expect("analytic dα+").at(q);
        let dm = am2.analytic_derivative().expect("analytic dα-").at(q);
        radial.add(&lift_value(&dp.scale(f).add(&dm.scale(g)))).comps
    })
}

/// `e^s α+ + e^{-s} α-`.
pub fn exponential_weights(s: f64, _: f64) -> [f64; 4] {
    [s.exp(), s.exp(), (-s).exp(), -(-s).exp()]
}

/// `e^{2s} α+ + α-`, the same form as `ρ α+ + α-` after `ρ = e^{2s}`.
pub fn rescaled_weights(s: f64, _: f64) -> [f64; 4] {
    [(2.0 * s).exp(), 2.0 * (2.0 * s).exp(), 1.0, 0.0]
}

/// `ρ α+ + (t/ρ + 1 - t) α-`.
pub fn homotopy_weights(rho: f64, t: f64) -> [f64; 4] {
    [rho, 1.0, t / rho + 1.0 - t, -t / (rho * rho)]
}

/// `tanh(2s) ∂s - sech(2s) X`.
pub fn liouville_closed_form(pair: &ContactPair) -> VectorField {
    let x = pair.anosov.clone();
    VectorField::new("X_λ", 4, move |p| {
        let s = p[0];
        let mut out = vec![(2.0 * s).tanh()];
        out.extend(x.at(&p[1..]).iter().map(|c| -c / (2.0 * s).cosh()));
        out
    })
}

/// `2 sinh s e^z dx + 2 cosh s e^{-z} dy`, the torus-bundle Liouville form written out.
pub fn torus_lambda_expanded() -> FormField {
    FormField::new("λ0", 4, 1, |p| vec![0.0, 2.0 * p[0].sinh() * p[3].exp(), 2.0 * p[0].cosh() * (-p[3]).exp(), 0.0])
}

/// `x dr + (cosh r y + sinh r) dt + dθ` on `(r, t, x, y)`, `θ` the polar angle of `(x, y)`.
pub fn geodesic_neighbourhood_form() -> FormField {
    FormField::new("λ_C", 4, 1, |p| {
        let (r, x, y) = (p[0], p[2], p[3]);
        let q = x * x + y * y;
        vec![x, r.cosh() * y + r.sinh(), -y / q, x / q]
    })
    .with_derivative(|p| {
        let (r, y) = (p[0], p[3]);
        // [rt, rx, ry, tx, ty, xy]
        vec![r.sinh() * y + r.cosh(), -1.0, 0.0, 0.0, -r.cosh(), 0.0]
    })
}

pub fn geodesic_neighbourhood_chart() -> Chart {
    Chart::new("geodesic-neighbourhood", &[("r", -0.5, 0.5, false), ("t", 0.0, 2.0, false), ("x", 0.5, 1.5, false), ("y", -0.5, 0.5, false)])
}

/// `(r, t, θ) ↦ (tanh r e^t, sech r e^t, θ - arctan sinh r)`.
pub fn fermi_to_halfplane() -> ChartMap {
    ChartMap::new("fermi→half-plane", 3, 3, vec![false, false, true], |p| {
        let (r, t, th) = (p[0], p[1], p[2]);
        vec![r.tanh() * t.exp(), t.exp() / r.cosh(), th - r.sinh().atan()]
    })
}

/// `(r, t, θ) ↦ (-r, -t, θ + π)`.
pub fn fermi_flip() -> ChartMap {
    ChartMap::new("S", 3, 3, vec![false, false, true], |p| vec![-p[0], -p[1], p[2] + PI])
}

/// Action of `z ↦ (az + b)/(cz + d)` on `(x, y, φ)`, rotating `φ` by `arg g'(z)`.
pub fn mobius_action(name: &str, m: [f64; 4]) -> ChartMap {
    let [a, b, c, d] = m;
    ChartMap::new(name, 3, 3, vec![false, false, true], move |p| {
        let (x, y) = (p[0], p[1]);
        // (az + b)/(cz + d) with z = x + iy
        let (nr, ni) = (a * x + b, a * y);
        let (dr, di) = (c * x + d, c * y);
        let q = dr * dr + di * di;
        let (wr, wi) = ((nr * dr + ni * di) / q, (ni * dr - nr * di) / q);
        // g'(z) = 1/(cz + d)^2 when ad - bc = 1
        vec![wr, wi, p[2] - 2.0 * di.atan2(dr)]
    })
}

pub fn identity_map(dim: usize, angular: Vec<bool>) -> ChartMap {
    ChartMap::new("id", dim, dim, angular, |p| p.to_vec())
}

/// Cover of the torus-bundle domain by a twisted plane bundle: monodromy
/// `(v, z) ↦ (D_ν v + v0, z - ν)` with `D_z = diag(e^z, e^{-z})`.
#[derive(Clone, Copy, Debug)]
pub struct TwistedCover {
    pub nu: f64,
    pub v0: [f64; 2],
}

impl TwistedCover {
    /// `(I - D_ν)^{-1} v0`.
    pub fn w0(&self) -> [f64; 2] {
        [self.v0[0] / (1.0 - self.nu.exp()), self.v0[1] / (1.0 - (-self.nu).exp())]
    }

    pub fn monodromy(&self, p: &[f64]) -> Vec<f64> {
        vec![self.nu.exp() * p[0] + self.v0[0], (-self.nu).exp() * p[1] + self.v0[1], p[2] - self.nu]
    }

    /// `(v, z) ↦ (D_z^{-1} v + w0, z)`.
    pub fn trivialise(&self, p: &[f64]) -> Vec<f64> {
        let w = self.w0();
        vec![(-p[2]).exp() * p[0] + w[0], p[2].exp() * p[1] + w[1], p[2]]
    }

    pub fn monodromy_map(&self) -> ChartMap {
        let c = *self;
        ChartMap::new("monodromy", 3, 3, vec![false; 3], move |p| c.monodromy(p))
    }

    /// Trivialisation composed with the fibrewise linear change of coordinates
    /// `(x, y) = M(s)^{-1}(a, b)`, `M(s) = [[-sinh s, cosh s], [-cosh s, -sinh s]]`,
    /// as a map from `(s, a, b, z)`.
    pub fn cotangent_chart(&self) -> ChartMap {
        let c = *self;
        ChartMap::new("cotangent→cover", 4, 4, vec![false; 4], move |p| {
            let (s, a, b) = (p[0], p[1], p[2]);
            let (sh, ch) = (s.sinh(), s.cosh());
            let det = sh * sh + ch * ch;
            let x = (-sh * a - ch * b) / det;
            let y = (ch * a - sh * b) / det;
            let mut out = vec![s];
            out.extend(c.trivialise(&[x, y, p[3]]));
            out
        })
    }
}

/// The torus-bundle Liouville form on `(s, x, y, z)` as a target for pullbacks.
pub fn torus_lambda() -> FormField {
    cylinder_form("λ0", &torus_pair(), exponential_weights, 0.0)
}

/// `sinh s x + cosh s y` in the `(s, a, b, z)` coordinates of [`TwistedCover::cotangent_chart`].
pub fn cover_potential() -> FormField {
    FormField::new("f", 4, 0, |p| {
        let (s, a, b) = (p[0], p[1], p[2]);
        let (sh, ch) = (s.sinh(), s.cosh());
        let det = sh * sh + ch * ch;
        let x = (-sh * a - ch * b) / det;
        let y = (ch * a - sh * b) / det;
        vec![sh * x + ch * y]
    })
}

/// `sinh s e^{-z} dx + cosh s e^z dy`, the lattice-quotient Liouville form with the
/// opposite `z` convention.
pub fn lattice_lambda() -> FormField {
    FormField::new("λ''", 4, 1, |p| vec![0.0, p[0].sinh() * (-p[3]).exp(), p[0].cosh() * p[3].exp(), 0.0])
}

/// `(s, z) ↦ (sinh s e^{-z}, cosh s e^z)`.
pub fn psi0(s: f64, z: f64) -> [f64; 2] {
    [s.sinh() * (-z).exp(), s.cosh() * z.exp()]
}

/// `(s, x, y, z) ↦ (P^{-1}(x, y), P^T ψ0(s, z))` into `(u, v, a, b)`; `p` is column-major.
pub fn lattice_cotangent_map(p: [[f64; 2]; 2]) -> ChartMap {
    // p = [[p00, p01], [p10, p11]] row-major
    let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    ChartMap::new("lattice→T*T²", 4, 4, vec![false; 4], move |q| {
        let (x, y) = (q[1], q[2]);
        let u = (p[1][1] * x - p[0][1] * y) / det;
        let v = (-p[1][0] * x + p[0][0] * y) / det;
        let [a0, b0] = psi0(q[0], q[3]);
        vec![u, v, p[0][0] * a0 + p[1][0] * b0, p[0][1] * a0 + p[1][1] * b0]
    })
}

/// `a du + b dv` on `(u, v, a, b)`.
pub fn canonical_cotangent_form() -> FormField {
    FormField::new("a du + b dv", 4, 1, |p| vec![p[2], p[3], 0.0, 0.0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::field::Derivative;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn torus_volumes_at_origin() {
        let pair = torus_pair();
        let p = [0.0, 0.0, 0.0];
        let plus = pair.alpha_plus.at(&p).wedge(&pair.alpha_plus.d(&p, Derivative::Analytic)).top();
        let minus = pair.alpha_minus.at(&p).wedge(&pair.alpha_minus.d(&p, Derivative::Analytic)).top();
        assert_eq!((plus, minus), (2.0, -2.0));
    }

    #[test]
    fn cylinder_form_matches_expanded_torus_lambda() {
        let generic = torus_lambda();
        let expanded = torus_lambda_expanded();
        for p in [[0.3, 0.1, 0.7, -0.4], [-0.9, 0.5, 0.2, 0.8]] {
            assert!(close(&generic.at(&p).comps, &expanded.at(&p).comps, 1e-14));
            let fd = generic.d_numeric(&p, 1e-5);
            assert!(close(&generic.d(&p, Derivative::Analytic).comps, &fd.comps, 1e-8));
        }
    }

    #[test]
    fn mobius_identity_fixes_points() {
        let m = mobius_action("id", [1.0, 0.0, 0.0, 1.0]);
        assert!(close(&m.at(&[0.2, 1.3, 0.4]), &[0.2, 1.3, 0.4], 1e-15));
        let inv = mobius_action("S", [0.0, -1.0, 1.0, 0.0]);
        // z = i is fixed and the tangent direction turns by π
        let w = inv.at(&[0.0, 1.0, 0.0]);
        assert!(close(&w[..2], &[0.0, 1.0], 1e-15));
    }

    #[test]
    fn psi0_on_zero_slice() {
        let [a, b] = psi0(0.0, 0.7);
        assert_eq!(a, 0.0);
        assert!((b - 0.7f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn trivialisation_is_equivariant() {
        let c = TwistedCover { nu: 0.96, v0: [0.3, -0.2] };
        let p = [0.4, -0.1, 0.25];
        let lhs = c.trivialise(&[p[0], p[1], p[2] - c.nu]);
        let rhs = c.monodromy(&c.trivialise(&p));
        assert!(close(&lhs, &rhs, 1e-13));
    }
}
