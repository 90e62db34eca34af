//! The algebras `A(l1, l2)`: pairs `t + s j` with `j^2 = -l2 - l1 j`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json;

/// Relative threshold below which `norm_form` is treated as zero.
pub const ZERO_DIVISOR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    /// `l1^2 - 4 l2 < 0`: complex-like, no zero divisors.
    Elliptic,
    /// `l1^2 - 4 l2 = 0`: dual-like.
    Parabolic,
    /// `l1^2 - 4 l2 > 0`: split-like.
    Hyperbolic,
}

impl AlgebraKind {
    pub fn from_discriminant(d: f64) -> Self {
        if d < 0.0 {
            AlgebraKind::Elliptic
        } else if d > 0.0 {
            AlgebraKind::Hyperbolic
        } else {
            AlgebraKind::Parabolic
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The parameters `(l1, l2)` of an algebra together with its classification.
///
/// Two algebras are the same only when both parameters are bitwise equal.
#[derive(Debug, Clone, Copy)]
pub struct AlgebraParams {
    l1: f64,
    l2: f64,
    discriminant: f64,
    kind: AlgebraKind,
}

impl AlgebraParams {
    pub fn new(l1: f64, l2: f64) -> Self {
        // normalise -0.0 so that bitwise comparison means numeric equality
        let (l1, l2) = (l1 + 0.0, l2 + 0.0);
        let discriminant = l1 * l1 - 4.0 * l2;
        AlgebraParams {
            l1,
            l2,
            discriminant,
            kind: AlgebraKind::from_discriminant(discriminant),
        }
    }

    /// The complex numbers, `A(0, 1)`.
    pub fn complex() -> Self {
        Self::new(0.0, 1.0)
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn discriminant(&self) -> f64 {
        self.discriminant
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn same_as(&self, other: &AlgebraParams) -> bool {
        self.l1.to_bits() == other.l1.to_bits() && self.l2.to_bits() == other.l2.to_bits()
    }

    pub fn ensure_same(&self, other: &AlgebraParams) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(self.l1, self.l2, other.l1, other.l2))
        }
    }

    pub fn one(&self) -> HNum {
        HNum::new(1.0, 0.0, *self)
    }

    pub fn zero(&self) -> HNum {
        HNum::new(0.0, 0.0, *self)
    }

    /// The generator `j`.
    pub fn j(&self) -> HNum {
        HNum::new(0.0, 1.0, *self)
    }

    pub fn real(&self, t: f64) -> HNum {
        HNum::new(t, 0.0, *self)
    }

    /// `(a + b j)(c + d j) = (ac - l2 bd) + (ad + bc - l1 bd) j`.
    ///
    /// This is the only place `j^2` gets reduced. It works over any
    /// [`Scalarlike`] ring, so the same rule multiplies numbers and
    /// pairs of polynomials.
    #[inline]
    pub fn product<T: Scalarlike>(&self, a: &T, b: &T, c: &T, d: &T) -> (T, T) {
        let bd = b.mul(d);
        let re = a.mul(c).sub(&bd.scale(self.l2));
        let im = a.mul(d).add(&b.mul(c)).sub(&bd.scale(self.l1));
        (re, im)
    }
}

impl PartialEq for AlgebraParams {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({}, {})", self.l1, self.l2)
    }
}

impl Serialize for AlgebraParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            #[serde(serialize_with = "json::serialize_f64")]
            l1: f64,
            #[serde(serialize_with = "json::serialize_f64")]
            l2: f64,
            kind: AlgebraKind,
        }
        Repr {
            l1: self.l1,
            l2: self.l2,
            kind: self.kind,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraParams {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            l1: f64,
            l2: f64,
        }
        let r = Repr::deserialize(d)?;
        Ok(AlgebraParams::new(r.l1, r.l2))
    }
}

/// Coefficients `(α, β)` of `Γ = ∂x² + α ∂x∂y + β ∂y²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub alpha: f64,
    pub beta: f64,
}

impl OperatorParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        OperatorParams { alpha, beta }
    }

    /// The Laplacian, `Γ(0, 1)`.
    pub fn laplace() -> Self {
        Self::new(0.0, 1.0)
    }

    pub fn discriminant(&self) -> f64 {
        self.alpha * self.alpha - 4.0 * self.beta
    }

    pub fn kind(&self) -> AlgebraKind {
        AlgebraKind::from_discriminant(self.discriminant())
    }

    pub fn algebra(&self) -> Result<AlgebraParams> {
        algebra_from_operator(*self)
    }
}

/// The algebra `A(α/β, 1/β)` whose differentiable functions have
/// `Γ(α, β)`-harmonic components.
pub fn algebra_from_operator(op: OperatorParams) -> Result<AlgebraParams> {
    if op.beta == 0.0 || !op.beta.is_finite() || !op.alpha.is_finite() {
        return Err(Error::DegenerateOperator {
            alpha: op.alpha,
            beta: op.beta,
        });
    }
    Ok(AlgebraParams::new(op.alpha / op.beta, 1.0 / op.beta))
}

/// An element `t + s j` of a specific algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HNum {
    pub re: f64,
    pub im: f64,
    algebra: AlgebraParams,
}

impl HNum {
    pub fn new(re: f64, im: f64, algebra: AlgebraParams) -> Self {
        HNum { re, im, algebra }
    }

    pub fn algebra(&self) -> AlgebraParams {
        self.algebra
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn checked_add(&self, other: &HNum) -> Result<HNum> {
        self.algebra.ensure_same(&other.algebra)?;
        Ok(HNum::new(
            self.re + other.re,
            self.im + other.im,
            self.algebra,
        ))
    }

    pub fn checked_sub(&self, other: &HNum) -> Result<HNum> {
        self.algebra.ensure_same(&other.algebra)?;
        Ok(HNum::new(
            self.re - other.re,
            self.im - other.im,
            self.algebra,
        ))
    }

    pub fn checked_mul(&self, other: &HNum) -> Result<HNum> {
        self.algebra.ensure_same(&other.algebra)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &HNum) -> HNum {
        let (re, im) = self
            .algebra
            .product(&self.re, &self.im, &other.re, &other.im);
        HNum::new(re, im, self.algebra)
    }

    pub fn scale(&self, c: f64) -> HNum {
        HNum::new(c * self.re, c * self.im, self.algebra)
    }

    /// `t - s j`, independent of the algebra.
    pub fn conjugate(&self) -> HNum {
        HNum::new(self.re, -self.im, self.algebra)
    }

    /// `t^2 - l1 t s + l2 s^2`, the determinant of multiplication by `self`
    /// (the matrix `[[t, -l2 s], [s, t - l1 s]]`).
    pub fn norm_form(&self) -> f64 {
        let (t, s) = (self.re, self.im);
        t * t - self.algebra.l1 * t * s + self.algebra.l2 * s * s
    }

    pub fn is_zero_divisor_or_zero(&self) -> bool {
        let (t, s) = (self.re, self.im);
        self.norm_form().abs() <= ZERO_DIVISOR_TOL * (t * t + s * s).max(1.0)
    }

    pub fn inverse(&self) -> Result<HNum> {
        if self.is_zero_divisor_or_zero() {
            return Err(Error::NotInvertible(self.re, self.im));
        }
        let n = self.norm_form();
        let (t, s) = (self.re, self.im);
        Ok(HNum::new(
            (t - self.algebra.l1 * s) / n,
            -s / n,
            self.algebra,
        ))
    }

    pub fn pow(&self, n: u32) -> HNum {
        let mut acc = self.algebra.one();
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }
}

impl std::ops::Neg for HNum {
    type Output = HNum;
    fn neg(self) -> HNum {
        HNum::new(-self.re, -self.im, self.algebra)
    }
}

impl fmt::Display for HNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{} - {}j", self.re, -self.im)
        } else {
            write!(f, "{} + {}j", self.re, self.im)
        }
    }
}

impl Serialize for HNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            #[serde(serialize_with = "json::serialize_f64")]
            re: f64,
            #[serde(serialize_with = "json::serialize_f64")]
            im: f64,
            #[serde(serialize_with = "json::serialize_f64")]
            l1: f64,
            #[serde(serialize_with = "json::serialize_f64")]
            l2: f64,
        }
        Repr {
            re: self.re,
            im: self.im,
            l1: self.algebra.l1,
            l2: self.algebra.l2,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            re: f64,
            im: f64,
            l1: f64,
            l2: f64,
        }
        let r = Repr::deserialize(d)?;
        Ok(HNum::new(r.re, r.im, AlgebraParams::new(r.l1, r.l2)))
    }
}

/// A commutative ring with real scalars, the coefficient domain of
/// [`AlgebraParams::product`].
pub trait Scalarlike: Sized {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: f64) -> Self;
}

impl Scalarlike for f64 {
    #[inline]
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    #[inline]
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    #[inline]
    fn scale(&self, c: f64) -> Self {
        c * self
    }
}
