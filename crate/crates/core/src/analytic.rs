//! Polynomials in `z = x + j y` with algebra coefficients.
//!
//! Every [`APoly`] `F(z) = Σ c_k z^k` is A-differentiable: its components
//! `F = u + j v` satisfy `F_y = j F_x`, which unpacks to the generalized
//! Cauchy-Riemann equations `u_x = v_y + l1 v_x`, `u_y = -l2 v_x`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{AlgebraParams, HNum};
use crate::error::{Error, Result};
use crate::json;
use crate::poly2::BiPoly;

/// `F(z) = Σ coeffs[k] z^k` over a single algebra; trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct APoly {
    algebra: AlgebraParams,
    coeffs: Vec<HNum>,
}

/// Real and imaginary component polynomials of an algebra-valued function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentPair {
    pub u: BiPoly,
    pub v: BiPoly,
}

impl APoly {
    pub fn new(algebra: AlgebraParams, coeffs: Vec<HNum>) -> Result<Self> {
        for c in &coeffs {
            algebra.ensure_same(&c.algebra())?;
        }
        Ok(Self::trimmed(algebra, coeffs))
    }

    /// Builds from `(re, im)` coefficient pairs, index = power of `z`.
    pub fn from_pairs(algebra: AlgebraParams, pairs: &[(f64, f64)]) -> Self {
        let coeffs = pairs
            .iter()
            .map(|&(re, im)| HNum::new(re, im, algebra))
            .collect();
        Self::trimmed(algebra, coeffs)
    }

    fn trimmed(algebra: AlgebraParams, mut coeffs: Vec<HNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        APoly { algebra, coeffs }
    }

    pub fn zero(algebra: AlgebraParams) -> Self {
        APoly {
            algebra,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: HNum) -> Self {
        Self::trimmed(c.algebra(), vec![c])
    }

    /// `c z^k`.
    pub fn monomial(c: HNum, k: usize) -> Self {
        let mut coeffs = vec![c.algebra().zero(); k + 1];
        coeffs[k] = c;
        Self::trimmed(c.algebra(), coeffs)
    }

    /// The identity function `z`.
    pub fn z(algebra: AlgebraParams) -> Self {
        Self::monomial(algebra.one(), 1)
    }

    pub fn algebra(&self) -> AlgebraParams {
        self.algebra
    }

    pub fn coeffs(&self) -> &[HNum] {
        &self.coeffs
    }

    /// Degree in `z`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .fold(0.0, |m, c| m.max(c.re.abs()).max(c.im.abs()))
    }

    /// Multiplies every coefficient by the algebra element `c`.
    pub fn mul_scalar(&self, c: &HNum) -> Result<APoly> {
        self.algebra.ensure_same(&c.algebra())?;
        let coeffs = self.coeffs.iter().map(|k| k.mul_unchecked(c)).collect();
        Ok(Self::trimmed(self.algebra, coeffs))
    }

    pub fn expand(&self) -> ComponentPair {
        expand(self)
    }

    pub fn eval(&self, z: &HNum) -> Result<HNum> {
        apoly_eval(self, z)
    }
}

impl ComponentPair {
    pub fn new(u: BiPoly, v: BiPoly) -> Self {
        ComponentPair { u, v }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.u.max_abs_coeff().max(self.v.max_abs_coeff())
    }

    /// Product of `self = a + b j` and `other = c + d j` in `alg`.
    pub fn mul_in(&self, other: &ComponentPair, alg: &AlgebraParams) -> ComponentPair {
        let (u, v) = alg.product(&self.u, &self.v, &other.u, &other.v);
        ComponentPair { u, v }
    }

    fn add_constant(&mut self, c: &HNum) {
        self.u = &self.u + &BiPoly::constant(c.re);
        self.v = &self.v + &BiPoly::constant(c.im);
    }
}

/// Substitutes `z = x + j y` and returns `(u, v)` with `F = u + j v`.
///
/// Horner's scheme over pairs of polynomials, with every product reduced by
/// the algebra's multiplication rule.
pub fn expand(f: &APoly) -> ComponentPair {
    let z = ComponentPair::new(BiPoly::x(), BiPoly::y());
    let mut acc = ComponentPair::new(BiPoly::zero(), BiPoly::zero());
    for c in f.coeffs.iter().rev() {
        acc = acc.mul_in(&z, &f.algebra);
        acc.add_constant(c);
    }
    acc
}

/// `(u_x - v_y - l1 v_x, u_y + l2 v_x)`; both vanish iff `u + j v` is
/// A-differentiable.
pub fn cr_residuals(p: &ComponentPair, alg: &AlgebraParams) -> (BiPoly, BiPoly) {
    let vx = p.v.partial_x();
    let r1 = &(&p.u.partial_x() - &p.v.partial_y()) - &vx.scale(alg.l1());
    let r2 = &p.u.partial_y() + &vx.scale(alg.l2());
    (r1, r2)
}

/// Both Cauchy-Riemann residuals are zero relative to the largest
/// coefficient of `u` and `v`.
pub fn is_a_differentiable(p: &ComponentPair, alg: &AlgebraParams, tol: f64) -> bool {
    let scale = nonzero_scale(p.max_abs_coeff());
    let (r1, r2) = cr_residuals(p, alg);
    r1.is_zero(tol, scale) && r2.is_zero(tol, scale)
}

pub(crate) fn nonzero_scale(s: f64) -> f64 {
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

/// Components of `conj(z) · f(z)` with `conj(z) = x - j y`.
///
/// With `f = uf + j vf` this is `(x uf + l2 y vf) + j (x vf - y uf + l1 y vf)`.
pub fn zbar_times(f: &APoly) -> ComponentPair {
    let zbar = ComponentPair::new(BiPoly::x(), BiPoly::y().scale(-1.0));
    zbar.mul_in(&expand(f), &f.algebra)
}

/// Horner evaluation of `F` at `z`.
pub fn apoly_eval(f: &APoly, z: &HNum) -> Result<HNum> {
    f.algebra.ensure_same(&z.algebra())?;
    let mut acc = f.algebra.zero();
    for c in f.coeffs.iter().rev() {
        let p = acc.mul_unchecked(z);
        acc = HNum::new(p.re + c.re, p.im + c.im, f.algebra);
    }
    Ok(acc)
}

impl Serialize for APoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            #[serde(serialize_with = "json::serialize_f64")]
            l1: f64,
            #[serde(serialize_with = "json::serialize_f64")]
            l2: f64,
            coeffs: Vec<[serde_json::Value; 2]>,
        }
        Repr {
            l1: self.algebra.l1(),
            l2: self.algebra.l2(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [json::number(c.re), json::number(c.im)])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for APoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            l1: f64,
            l2: f64,
            coeffs: Vec<(f64, f64)>,
        }
        let r = Repr::deserialize(d)?;
        Ok(APoly::from_pairs(AlgebraParams::new(r.l1, r.l2), &r.coeffs))
    }
}

impl std::str::FromStr for APoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
