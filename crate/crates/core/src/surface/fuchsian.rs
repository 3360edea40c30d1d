use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::Real;
use crate::hyperbolic::Mobius;

use super::words::{Letter, SurfacePresentation, Word};
use super::SurfaceError;

/// Minimal complex arithmetic over any [`Real`] scalar.
#[derive(Clone, Debug)]
struct Cx<R> {
    re: R,
    im: R,
}

impl<R: Real> Cx<R> {
    fn new(re: R, im: R) -> Self {
        Cx { re, im }
    }
    fn real(x: R) -> Self {
        Cx { re: x, im: R::from_i64(0) }
    }
    fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -self.im.clone())
    }
    fn norm_sqr(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
    fn scale(&self, s: &R) -> Self {
        Cx::new(self.re.clone() * s.clone(), self.im.clone() * s.clone())
    }
    fn div(&self, o: &Self) -> Self {
        let n = o.norm_sqr();
        (self.clone() * o.conj()).scale(&(R::from_i64(1) / n))
    }
    fn unit(&self) -> Self {
        self.scale(&(R::from_i64(1) / self.norm_sqr().sqrt()))
    }
    /// Principal square root of a unit complex number.
    fn sqrt_unit(&self) -> Self {
        let one = R::from_i64(1);
        let two = R::from_i64(2);
        // take the larger component from the half-angle formula, the other from sin = 2·re·im
        if self.re.to_f64() >= 0.0 {
            let re = ((one + self.re.clone()) / two.clone()).sqrt();
            let im = self.im.clone() / (two * re.clone());
            Cx::new(re, im)
        } else {
            let mut im = ((one - self.re.clone()) / two.clone()).sqrt();
            if self.im.to_f64() < 0.0 {
                im = -im;
            }
            let re = self.im.clone() / (two * im.clone());
            Cx::new(re, im)
        }
    }
}

impl<R: Real> Add for Cx<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cx::new(self.re + o.re, self.im + o.im)
    }
}

impl<R: Real> Sub for Cx<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cx::new(self.re - o.re, self.im - o.im)
    }
}

impl<R: Real> Mul for Cx<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Cx::new(
            self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            self.re * o.im + self.im * o.re,
        )
    }
}

impl<R: Real> Neg for Cx<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Cx::new(-self.re, -self.im)
    }
}

type CMat<R> = [Cx<R>; 4];

fn cmul<R: Real>(x: &CMat<R>, y: &CMat<R>) -> CMat<R> {
    let [a, b, c, d] = x.clone();
    let [e, f, g, h] = y.clone();
    [
        a.clone() * e.clone() + b.clone() * g.clone(),
        a * f.clone() + b * h.clone(),
        c.clone() * e + d.clone() * g,
        c * f + d * h,
    ]
}

fn capply<R: Real>(m: &CMat<R>, z: &Cx<R>) -> Cx<R> {
    let [a, b, c, d] = m.clone();
    (a * z.clone() + b).div(&(c * z.clone() + d))
}

/// Disc automorphism `z ↦ (z - p)/(1 - p̄z)` (not normalised).
fn to_origin<R: Real>(p: &Cx<R>) -> CMat<R> {
    let one = Cx::real(R::from_i64(1));
    [one.clone(), -p.clone(), -p.conj(), one]
}

/// `cos` and `sin` of `(2k + 1)π/n`, the vertex directions of the regular `n`-gon.
fn vertex_directions<R: Real>(n: usize) -> Vec<(R, R)> {
    if n == 8 {
        // exact radicals keep high-precision scalars honest
        let two = R::from_i64(2);
        let r2 = two.sqrt();
        let c = (two.clone() + r2.clone()).sqrt() / two.clone();
        let s = (two.clone() - r2).sqrt() / two;
        let signs: [(i8, bool, i8); 8] = [(1, false, 1), (1, true, 1), (-1, true, 1), (-1, false, 1), (-1, false, -1), (-1, true, -1), (1, true, -1), (1, false, -1)];
        signs
            .iter()
            .map(|&(sx, swap, sy)| {
                let (x, y) = if swap { (s.clone(), c.clone()) } else { (c.clone(), s.clone()) };
                let x = if sx < 0 { -x } else { x };
                let y = if sy < 0 { -y } else { y };
                (x, y)
            })
            .collect()
    } else {
        (0..n)
            .map(|k| {
                let t = (2 * k + 1) as f64 * std::f64::consts::PI / n as f64;
                (R::from_f64(t.cos()), R::from_f64(t.sin()))
            })
            .collect()
    }
}

/// `cos(2π/n)`: squared Euclidean radius of the vertices of the regular `n`-gon with
/// interior angles `2π/n`.
fn vertex_radius_sqr<R: Real>(n: usize) -> R {
    if n == 8 {
        R::from_i64(2).sqrt() / R::from_i64(2)
    } else {
        R::from_f64((2.0 * std::f64::consts::PI / n as f64).cos())
    }
}

/// A faithful discrete representation of the surface group in `PSL(2, R)`, acting on the
/// upper half-plane.
#[derive(Clone, Debug)]
pub struct FuchsianRep<R> {
    pub genus: u32,
    /// Matrices `[a, b, c, d]` indexed by [`FuchsianRep::slot`].
    mats: Vec<[R; 4]>,
}

fn mat_mul<R: Real>(x: &[R; 4], y: &[R; 4]) -> [R; 4] {
    let [a, b, c, d] = x.clone();
    let [e, f, g, h] = y.clone();
    [
        a.clone() * e.clone() + b.clone() * g.clone(),
        a * f.clone() + b * h.clone(),
        c.clone() * e + d.clone() * g,
        c * f + d * h,
    ]
}

fn mat_inv<R: Real>(x: &[R; 4]) -> [R; 4] {
    let [a, b, c, d] = x.clone();
    [d, -b, -c, a]
}

impl<R: Real> FuchsianRep<R> {
    /// Side pairings of the regular `4g`-gon with all vertices identified (angles `2π/4g`),
    /// conjugated from the disc to the half-plane by the Cayley map. For `g = 2` every
    /// constant is a radical, so high-precision scalars give high-precision matrices; for
    /// larger genus the vertex directions enter at `f64` precision.
    pub fn regular(genus: u32) -> Result<FuchsianRep<R>, SurfaceError> {
        SurfacePresentation::new(genus)?;
        let n = 4 * genus as usize;
        let rad = vertex_radius_sqr::<R>(n).sqrt();
        let verts: Vec<Cx<R>> = vertex_directions::<R>(n).into_iter().map(|(c, s)| Cx::new(c * rad.clone(), s * rad.clone())).collect();
        let one = R::from_i64(1);
        let norm = one.clone() / (one - rad.clone() * rad);
        // maps side (v_j, v_{j+1}) onto side (v_{j+3}, v_{j+2})
        let pairing = |j: usize| -> [R; 4] {
            let (p1, p2) = (&verts[j % n], &verts[(j + 1) % n]);
            let (q1, q2) = (&verts[(j + 3) % n], &verts[(j + 2) % n]);
            let a = to_origin(p1);
            let b = to_origin(q1);
            let u = capply(&a, p2);
            let w = capply(&b, q2);
            let half = w.unit().div(&u.unit()).sqrt_unit();
            let zero = Cx::real(R::from_i64(0));
            let rot = [half.clone(), zero.clone(), zero, Cx::real(R::from_i64(1)).div(&half)];
            let [b0, b1, b2, b3] = b;
            let b_adj = [b3, -b1, -b2, b0];
            let disc = cmul(&cmul(&b_adj, &rot), &a).map(|z| z.scale(&norm));
            // Cayley map C = [[i, i], [-1, 1]]; H = C·M·adj(C)/(2i)
            let i = Cx::new(R::from_i64(0), R::from_i64(1));
            let m1 = Cx::real(R::from_i64(1));
            let cay = [i.clone(), i.clone(), -m1.clone(), m1.clone()];
            let cay_adj = [m1.clone(), -i.clone(), m1, i];
            let h = cmul(&cmul(&cay, &disc), &cay_adj);
            let two_i = Cx::new(R::from_i64(0), R::from_i64(2));
            h.map(|z| z.div(&two_i).re)
        };
        let mut mats = Vec::with_capacity(4 * genus as usize);
        for i in 0..genus as usize {
            let a = mat_inv(&pairing(4 * i));
            let b = pairing(4 * i + 1);
            mats.push(a.clone());
            mats.push(mat_inv(&a));
            mats.push(b.clone());
            mats.push(mat_inv(&b));
        }
        Ok(FuchsianRep { genus, mats })
    }

    fn slot(x: Letter) -> usize {
        2 * (x.unsigned_abs() as usize - 1) + usize::from(x < 0)
    }

    pub fn generator(&self, x: Letter) -> &[R; 4] {
        &self.mats[Self::slot(x)]
    }

    pub fn identity() -> [R; 4] {
        [R::from_i64(1), R::from_i64(0), R::from_i64(0), R::from_i64(1)]
    }

    /// Image of `x_1 x_2 ... x_n` as the matrix product in the same order.
    pub fn eval(&self, w: &Word) -> [R; 4] {
        let mut m = Self::identity();
        for &x in &w.0 {
            m = mat_mul(&m, self.generator(x));
        }
        m
    }

    /// Sup-norm distance of `m` from `±I`, in `f64`.
    pub fn distance_from_identity(m: &[R; 4]) -> f64 {
        let v: Vec<f64> = m.iter().map(|x| x.to_f64()).collect();
        let plus = (v[0] - 1.0).abs().max(v[1].abs()).max(v[2].abs()).max((v[3] - 1.0).abs());
        let minus = (v[0] + 1.0).abs().max(v[1].abs()).max(v[2].abs()).max((v[3] + 1.0).abs());
        plus.min(minus)
    }

    pub fn relator_residual(&self) -> f64 {
        let p = SurfacePresentation::new(self.genus).expect("genus was validated");
        Self::distance_from_identity(&self.eval(p.relator()))
    }

    pub fn trace(&self, w: &Word) -> R {
        let m = self.eval(w);
        m[0].clone() + m[3].clone()
    }
}

impl FuchsianRep<f64> {
    pub fn mobius(&self, w: &Word) -> Mobius {
        let [a, b, c, d] = self.eval(w);
        Mobius { a, b, c, d }
    }

    pub fn generator_mobius(&self, x: Letter) -> Mobius {
        let [a, b, c, d] = *self.generator(x);
        Mobius { a, b, c, d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Fixed;

    #[test]
    fn octagon_relator_is_identity() {
        let rep = FuchsianRep::<f64>::regular(2).unwrap();
        assert!(rep.relator_residual() < 1e-10, "{}", rep.relator_residual());
        for x in 1..=4 {
            let m = rep.generator(x);
            assert!((m[0] * m[3] - m[1] * m[2] - 1.0).abs() < 1e-12);
            assert!((m[0] + m[3]).abs() > 2.0);
        }
    }

    #[test]
    fn octagon_traces_are_two_plus_root_two() {
        let rep = FuchsianRep::<f64>::regular(2).unwrap();
        for x in 1..=4 {
            let t = rep.trace(&Word(vec![x])).abs();
            assert!((t - (2.0 + 2f64.sqrt())).abs() < 1e-12, "{t}");
        }
    }

    #[test]
    fn higher_genus_relator() {
        for g in [3, 4] {
            let rep = FuchsianRep::<f64>::regular(g).unwrap();
            assert!(rep.relator_residual() < 1e-8, "genus {g}: {}", rep.relator_residual());
        }
    }

    #[test]
    fn fixed_point_relator_is_tight() {
        let rep = FuchsianRep::<Fixed<256>>::regular(2).unwrap();
        assert!(rep.relator_residual() < 1e-60);
    }
}
