//! Sparse bivariate real polynomials.
//!
//! A [`BiPoly`] is a map from exponent pairs `(i, j)` (the monomial
//! `x^i y^j`) to nonzero coefficients. Arithmetic only ever prunes exact
//! zeros; deciding whether a floating-point result is "zero enough" is the
//! job of [`BiPoly::is_zero`].
//!
//! Terms are kept in graded lexicographic order: ascending total degree,
//! and within a degree the higher power of `x` first
//! (`1, x, y, x², xy, y², ...`). The same polynomials are reused for
//! functions of `(u, v)`; the variable names are only labels.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{OperatorParams, Scalarlike};
use crate::json;

/// Exponents of a monomial `x^x y^y`, ordered grlex with `x` before `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent {
    pub x: u32,
    pub y: u32,
}

impl Exponent {
    pub fn new(x: u32, y: u32) -> Self {
        Exponent { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x.cmp(&self.x))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BiPoly {
    terms: BTreeMap<Exponent, f64>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: f64, i: u32, j: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(Exponent::new(i, j), c);
        p
    }

    /// The first variable, `x` (or `u`).
    pub fn x() -> Self {
        Self::monomial(1.0, 1, 0)
    }

    /// The second variable, `y` (or `v`).
    pub fn y() -> Self {
        Self::monomial(1.0, 0, 1)
    }

    /// Builds a polynomial from `(i, j, c)` triples; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, f64)>>(terms: I) -> Self {
        let mut p = BiPoly::zero();
        for (i, j, c) in terms {
            p.add_term(Exponent::new(i, j), c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: f64) {
        if c == 0.0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0.0);
        *slot += c;
        if *slot == 0.0 {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.terms.get(&Exponent::new(i, j)).copied().unwrap_or(0.0)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, f64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero_poly(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum `i + j` over stored terms; `None` stands for the `-∞` degree
    /// of the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Exponent::degree)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, c: f64) -> BiPoly {
        if c == 0.0 {
            return BiPoly::zero();
        }
        let mut out = BiPoly::zero();
        for (&e, &v) in &self.terms {
            out.add_term(e, c * v);
        }
        out
    }

    pub fn partial_x(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&e, &c) in &self.terms {
            if e.x > 0 {
                out.add_term(Exponent::new(e.x - 1, e.y), c * e.x as f64);
            }
        }
        out
    }

    pub fn partial_y(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&e, &c) in &self.terms {
            if e.y > 0 {
                out.add_term(Exponent::new(e.x, e.y - 1), c * e.y as f64);
            }
        }
        out
    }

    /// `p_xx + α p_xy + β p_yy`.
    pub fn gamma(&self, op: OperatorParams) -> BiPoly {
        gamma_apply(op, self)
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut acc = BiPoly::constant(1.0);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x <- pu`, `y <- pv`.
    pub fn compose(&self, pu: &BiPoly, pv: &BiPoly) -> BiPoly {
        compose(self, pu, pv)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let terms: Vec<f64> = self
            .terms
            .iter()
            .map(|(e, &c)| c * x.powi(e.x as i32) * y.powi(e.y as i32))
            .collect();
        pairwise_sum(&terms)
    }

    /// True when every coefficient satisfies `|c| <= tol * scale`.
    pub fn is_zero(&self, tol: f64, scale: f64) -> bool {
        debug_assert!(scale > 0.0);
        let bound = tol * scale;
        self.terms.values().all(|c| c.abs() <= bound)
    }
}

/// `Γ(α, β) p = p_xx + α p_xy + β p_yy`, computed term by term.
pub fn gamma_apply(op: OperatorParams, p: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (&e, &c) in &p.terms {
        let (i, j) = (e.x, e.y);
        if i >= 2 {
            out.add_term(Exponent::new(i - 2, j), c * (i * (i - 1)) as f64);
        }
        if i >= 1 && j >= 1 {
            out.add_term(Exponent::new(i - 1, j - 1), op.alpha * c * (i * j) as f64);
        }
        if j >= 2 {
            out.add_term(Exponent::new(i, j - 2), op.beta * c * (j * (j - 1)) as f64);
        }
    }
    out
}

/// Polynomial substitution `h(pu, pv)`.
///
/// Horner in the first variable; the inner polynomials in the second
/// variable are assembled from a table of powers of `pv`.
pub fn compose(h: &BiPoly, pu: &BiPoly, pv: &BiPoly) -> BiPoly {
    let Some(deg) = h.total_degree() else {
        return BiPoly::zero();
    };
    let max_i = h.terms.keys().map(|e| e.x).max().unwrap_or(0);
    let max_j = h.terms.keys().map(|e| e.y).max().unwrap_or(0);
    debug_assert!(max_i <= deg && max_j <= deg);

    let mut pv_pows = Vec::with_capacity(max_j as usize + 1);
    pv_pows.push(BiPoly::constant(1.0));
    for k in 1..=max_j as usize {
        let next = &pv_pows[k - 1] * pv;
        pv_pows.push(next);
    }

    // rows[i] = sum_j c_ij pv^j
    let mut rows = vec![BiPoly::zero(); max_i as usize + 1];
    for (&e, &c) in &h.terms {
        let r = &mut rows[e.x as usize];
        *r = &*r + &pv_pows[e.y as usize].scale(c);
    }

    let mut acc = BiPoly::zero();
    for row in rows.iter().rev() {
        acc = &(&acc * pu) + row;
    }
    acc
}

/// Pairwise (cascade) summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BLOCK: usize = 8;
    if xs.len() <= BLOCK {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &rhs.terms {
                out.add_term(Exponent::new(a.x + b.x, a.y + b.y), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                $tr::$m(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Scalarlike for BiPoly {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: f64) -> Self {
        BiPoly::scale(self, c)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, &c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            }
            let monomial = match (e.x, e.y) {
                (0, 0) => String::new(),
                (i, 0) => var("x", i),
                (0, j) => var("y", j),
                (i, j) => format!("{}*{}", var("x", i), var("y", j)),
            };
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1.0 {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{mag}*{monomial}")?;
            }
        }
        Ok(())
    }
}

fn var(name: &str, p: u32) -> String {
    if p == 1 {
        name.to_string()
    } else {
        format!("{name}^{p}")
    }
}

#[derive(Serialize, Deserialize)]
struct BiPolyRepr {
    #[serde(default = "default_vars")]
    vars: [String; 2],
    terms: Vec<(u32, u32, f64)>,
}

fn default_vars() -> [String; 2] {
    ["x".into(), "y".into()]
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            vars: [&'a str; 2],
            terms: Vec<(u32, u32, serde_json::Value)>,
        }
        Out {
            vars: ["x", "y"],
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.x, e.y, json::number(c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = BiPolyRepr::deserialize(d)?;
        Ok(BiPoly::from_terms(r.terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, u32, f64)]) -> BiPoly {
        BiPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn ring_examples() {
        let x = BiPoly::x();
        let y = BiPoly::y();
        assert_eq!((&x + &y) * (&x - &y), p(&[(2, 0, 1.0), (0, 2, -1.0)]));
        let q = p(&[(3, 1, 2.5), (0, 0, -1.0)]);
        assert_eq!(&q + &BiPoly::zero(), q);
        assert_eq!((&x * &y).scale(2.0), p(&[(1, 1, 2.0)]));
    }

    #[test]
    fn canonical_form_prunes_exact_zeros() {
        let x = BiPoly::x();
        assert!((&x - &x).is_zero_poly());
        assert_eq!(p(&[(1, 0, 1.0), (1, 0, -1.0), (0, 1, 0.0)]).num_terms(), 0);
        assert_eq!(BiPoly::zero().total_degree(), None);
        assert_eq!(p(&[(2, 3, 1.0), (4, 0, 1.0)]).total_degree(), Some(5));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p(&[(2, 1, 1.0)]).partial_x(), p(&[(1, 1, 2.0)]));
        assert!(p(&[(2, 0, 1.0)]).partial_y().is_zero_poly());
    }

    #[test]
    fn gamma_examples() {
        let r2 = p(&[(2, 0, 1.0), (0, 2, 1.0)]);
        assert_eq!(
            gamma_apply(OperatorParams::laplace(), &r2),
            BiPoly::constant(4.0)
        );

        let op = OperatorParams::new(-1.75, 3.0);
        assert_eq!(gamma_apply(op, &p(&[(1, 1, 1.0)])), BiPoly::constant(-1.75));

        let v = p(&[(1, 1, 2.0), (0, 2, -1.0)]);
        assert!(gamma_apply(OperatorParams::new(1.0, 1.0), &v).is_zero_poly());
    }

    #[test]
    fn gamma_matches_partials() {
        let q = p(&[
            (4, 1, 3.0),
            (2, 3, -2.0),
            (0, 5, 0.5),
            (1, 1, 7.0),
            (3, 0, 1.0),
        ]);
        let op = OperatorParams::new(0.75, -2.5);
        let by_parts = &(&q.partial_x().partial_x() + &q.partial_x().partial_y().scale(op.alpha))
            + &q.partial_y().partial_y().scale(op.beta);
        assert_eq!(gamma_apply(op, &q), by_parts);
    }

    #[test]
    fn compose_examples() {
        let pu = p(&[(3, 2, 1.5), (0, 1, -1.0)]);
        let pv = p(&[(1, 0, 2.0)]);
        assert_eq!(BiPoly::x().compose(&pu, &pv), pu);

        let h = p(&[(2, 0, 1.0)]);
        let sum = &BiPoly::x() + &BiPoly::y();
        assert_eq!(
            h.compose(&sum, &BiPoly::zero()),
            p(&[(2, 0, 1.0), (1, 1, 2.0), (0, 2, 1.0)])
        );

        let uv = p(&[(1, 1, 1.0)]);
        let u = p(&[(2, 0, 1.0), (0, 2, -1.0)]);
        let v = p(&[(1, 1, 2.0)]);
        assert_eq!(uv.compose(&u, &v), p(&[(3, 1, 2.0), (1, 3, -2.0)]));

        assert!(BiPoly::zero().compose(&u, &v).is_zero_poly());
        assert_eq!(BiPoly::constant(3.0).compose(&u, &v), BiPoly::constant(3.0));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[(2, 0, 1.0), (0, 2, -1.0)]).eval(2.0, 1.0), 3.0);
        assert_eq!(BiPoly::zero().eval(1.3, -7.0), 0.0);
        assert_eq!(p(&[(3, 1, 2.0), (1, 3, -2.0)]).eval(1.0, 1.0), 0.0);
    }

    #[test]
    fn zero_tests() {
        assert!(BiPoly::zero().is_zero(0.0, 1.0));
        assert!(p(&[(1, 1, 1e-15)]).is_zero(1e-9, 1.0));
        assert!(!p(&[(2, 0, 1.0)]).is_zero(1e-9, 1.0));
    }

    #[test]
    fn canonical_term_order() {
        let q = p(&[
            (0, 2, 1.0),
            (1, 1, 2.0),
            (0, 0, 3.0),
            (2, 0, 4.0),
            (0, 1, 5.0),
            (1, 0, 6.0),
        ]);
        let order: Vec<(u32, u32)> = q.terms().map(|(e, _)| (e.x, e.y)).collect();
        assert_eq!(order, vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]);
    }

    #[test]
    fn json_form() {
        let q = p(&[(0, 2, -1.0), (2, 0, 1.0), (1, 1, 0.5)]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["x","y"],"terms":[[2,0,1],[1,1,0.5],[0,2,-1]]}"#
        );
        let back: BiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        let uv: BiPoly = serde_json::from_str(r#"{"vars":["u","v"],"terms":[[1,1,2]]}"#).unwrap();
        assert_eq!(uv, p(&[(1, 1, 2.0)]));
    }

    #[test]
    fn display() {
        let q = p(&[(0, 2, -1.0), (2, 0, 1.0), (1, 1, 2.5), (0, 0, -3.0)]);
        assert_eq!(q.to_string(), "-3 + x^2 + 2.5*x*y - y^2");
    }
}
