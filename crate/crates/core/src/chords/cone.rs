use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::exact::{Fixed, QuadNum, Real};
use crate::toral::{det2, EigenData};

use super::ChordError;

/// Which of the two stable/unstable cone fields a chord belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "+" | "plus" | "p" => Some(Sign::Plus),
            "-" | "minus" | "m" => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

/// Integer `p + q sqrt(d)`.
#[derive(Clone, Debug)]
struct IntSurd {
    p: BigInt,
    q: BigInt,
}

fn surd_sign_i128(p: i128, q: i128, d: i128) -> Option<i8> {
    let sp = p.signum() as i8;
    let sq = q.signum() as i8;
    if sq == 0 {
        return Some(sp);
    }
    if sp == 0 || sp == sq {
        return Some(sq);
    }
    let lhs = p.checked_mul(p)?;
    let rhs = q.checked_mul(q)?.checked_mul(d)?;
    Some(match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => sp,
        std::cmp::Ordering::Less => sq,
        std::cmp::Ordering::Equal => 0,
    })
}

fn surd_sign_big(p: &BigInt, q: &BigInt, d: &BigInt) -> i8 {
    let x = QuadNum::new_unchecked(BigRational::from_integer(p.clone()), BigRational::from_integer(q.clone()), d.clone());
    x.sign()
}

/// Scales a pair of quadratic numbers by a positive integer so every coefficient is integral.
fn integral_pair(v: &[QuadNum; 2]) -> [IntSurd; 2] {
    let mut l = BigInt::one();
    for c in v {
        l = l.lcm(c.rational_part().denom());
        l = l.lcm(c.surd_part().denom());
    }
    let lr = BigRational::from_integer(l);
    let conv = |c: &QuadNum| IntSurd {
        p: (c.rational_part() * &lr).to_integer(),
        q: (c.surd_part() * &lr).to_integer(),
    };
    [conv(&v[0]), conv(&v[1])]
}

/// Open cone `{ s*edge0 + t*edge1 : s, t > 0 }` of translation vectors, decided exactly.
#[derive(Clone, Debug)]
pub struct Cone {
    pub sign: Sign,
    pub edge0: [QuadNum; 2],
    pub edge1: [QuadNum; 2],
    /// Sign of `det(edge0, edge1)`; membership tests are taken relative to it.
    pub orientation: i8,
    radicand: BigInt,
    int_edges: [[IntSurd; 2]; 2],
    small: Option<([[i128; 2]; 2], [[i128; 2]; 2], i128)>,
}

impl Cone {
    /// Cone spanned by the directions at the two ends of the slope interval `[0, log_dilation]`:
    /// `edge0 = +-v_x + v_y` and `edge1 = A^-1 edge0`.
    pub fn new(e: &EigenData, sign: Sign) -> Cone {
        let s = QuadNum::from_int(sign.factor(), &e.radicand);
        let edge0 = [&(&s * &e.expanding[0]) + &e.contracting[0], &(&s * &e.expanding[1]) + &e.contracting[1]];
        let sl = &s * &e.lambda_minus;
        let edge1 = [
            &(&sl * &e.expanding[0]) + &(&e.lambda_plus * &e.contracting[0]),
            &(&sl * &e.expanding[1]) + &(&e.lambda_plus * &e.contracting[1]),
        ];
        let orientation = det2(&edge0, &edge1).sign();
        let int_edges = [integral_pair(&edge0), integral_pair(&edge1)];
        let small = (|| {
            let f = |s: &IntSurd| Some([s.p.to_i128()?, s.q.to_i128()?]);
            let e0 = [f(&int_edges[0][0])?, f(&int_edges[0][1])?];
            let e1 = [f(&int_edges[1][0])?, f(&int_edges[1][1])?];
            Some((e0, e1, e.radicand.to_i128()?))
        })();
        Cone { sign, edge0, edge1, orientation, radicand: e.radicand.clone(), int_edges, small }
    }

    /// Exact membership of a rational vector.
    pub fn contains(&self, w: &[BigRational; 2]) -> Result<bool, ChordError> {
        if w[0].is_zero() && w[1].is_zero() {
            return Err(ChordError::ZeroVector);
        }
        let l = w[0].denom().lcm(w[1].denom());
        let wx = (&w[0] * BigRational::from_integer(l.clone())).to_integer();
        let wy = (&w[1] * BigRational::from_integer(l)).to_integer();
        Ok(self.contains_big(&wx, &wy))
    }

    fn contains_big(&self, wx: &BigInt, wy: &BigInt) -> bool {
        // det(edge, w) = (ex wy - ey wx) with ex = p + q sqrt(d)
        let det = |e: &[IntSurd; 2]| -> i8 {
            let p = &e[0].p * wy - &e[1].p * wx;
            let q = &e[0].q * wy - &e[1].q * wx;
            surd_sign_big(&p, &q, &self.radicand)
        };
        let o = self.orientation;
        det(&self.int_edges[0]) == o && -det(&self.int_edges[1]) == o
    }

    /// Exact membership of the integer vector `(wx, wy)`; zero is never inside.
    pub fn contains_int(&self, wx: i64, wy: i64) -> bool {
        if wx == 0 && wy == 0 {
            return false;
        }
        if let Some((e0, e1, d)) = &self.small {
            let (wx, wy) = (wx as i128, wy as i128);
            let det = |e: &[[i128; 2]; 2]| -> Option<i8> {
                let p = e[0][0].checked_mul(wy)?.checked_sub(e[1][0].checked_mul(wx)?)?;
                let q = e[0][1].checked_mul(wy)?.checked_sub(e[1][1].checked_mul(wx)?)?;
                surd_sign_i128(p, q, *d)
            };
            if let (Some(a), Some(b)) = (det(e0), det(e1)) {
                return a == self.orientation && -b == self.orientation;
            }
        }
        self.contains_big(&BigInt::from(wx), &BigInt::from(wy))
    }

    /// Same test evaluated with the edges rounded to `f64`.
    pub fn contains_f64(&self, w: [f64; 2]) -> bool {
        let e0 = [self.edge0[0].to_f64(), self.edge0[1].to_f64()];
        let e1 = [self.edge1[0].to_f64(), self.edge1[1].to_f64()];
        let o = self.orientation as f64;
        o * (e0[0] * w[1] - e0[1] * w[0]) > 0.0 && o * (w[0] * e1[1] - w[1] * e1[0]) > 0.0
    }

    /// Same test evaluated in 200-bit fixed point.
    pub fn contains_fixed200(&self, w: [i64; 2]) -> bool {
        type F = Fixed<200>;
        let conv = |q: &QuadNum| F::from_rational(&q.approx_fixed(240));
        let e0 = [conv(&self.edge0[0]), conv(&self.edge0[1])];
        let e1 = [conv(&self.edge1[0]), conv(&self.edge1[1])];
        let wx = F::from_i64(w[0]);
        let wy = F::from_i64(w[1]);
        let d0 = e0[0].clone() * wy.clone() - e0[1].clone() * wx.clone();
        let d1 = wx * e1[1].clone() - wy * e1[0].clone();
        d0.signum() == self.orientation && d1.signum() == self.orientation
    }
}
