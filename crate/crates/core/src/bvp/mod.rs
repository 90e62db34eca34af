//! Dirichlet problems for `Γ h = 0` and `Γ² h = 0` by least-squares
//! collocation.
//!
//! The bases are built from the algebra `A(α/β, 1/β)`: components of `z^k`
//! for `Γ`, extended by `Im(conj(z) z^k)` and `Im(conj(z) j z^k)` for `Γ²`.
//! Every element is checked symbolically against its target equation when
//! the basis is built. Fitting is a Householder least-squares solve on the
//! boundary collocation matrix; columns whose boundary traces are
//! numerically dependent on earlier ones are dropped and reported.
//!
//! Monomials are evaluated at raw coordinates. Keep domains at unit scale,
//! otherwise the condition estimate degrades quickly with the degree.

mod lsq;

use std::collections::{BTreeSet, HashSet};
use std::f64::consts::PI;
use std::io::{Read, Write};

use serde::Serialize;

use crate::algebra::{algebra_from_operator, AlgebraKind, OperatorParams};
use crate::analytic::{expand, nonzero_scale, zbar_times, APoly};
use crate::error::{Error, Result};
use crate::json;
use crate::poly2::{gamma_apply, BiPoly, Exponent};
use crate::theorems::{LEMMA1_TOL, THEOREM_TOL};

pub use lsq::RANK_TOL;

/// Samples needed per basis function.
pub const OVERDETERMINATION: usize = 2;

pub const HYPERBOLIC_WARNING: &str =
    "hyperbolic operator: the Dirichlet problem is ill-posed, a small boundary residual does not imply a meaningful interior solution";

/// Which equation the basis solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Gamma,
    GammaSquared,
}

/// `[u(z^0)] ++ [u(z^k), v(z^k) for k = 1..=max_degree]`.
pub fn basis_gamma(op: OperatorParams, max_degree: u32) -> Result<Vec<BiPoly>> {
    let alg = algebra_from_operator(op)?;
    let mut out = vec![BiPoly::constant(1.0)];
    for k in 1..=max_degree as usize {
        let pair = expand(&APoly::monomial(alg.one(), k));
        out.push(pair.u);
        out.push(pair.v);
    }
    for b in &out {
        check_element(&gamma_apply(op, b), b, LEMMA1_TOL)?;
    }
    Ok(out)
}

/// [`basis_gamma`] followed by `Im(conj(z) z^k)`, `Im(conj(z) j z^k)` for
/// `k = 0..=max_degree`, with linearly dependent entries removed.
pub fn basis_gamma2(op: OperatorParams, max_degree: u32) -> Result<Vec<BiPoly>> {
    let alg = algebra_from_operator(op)?;
    let mut candidates = basis_gamma(op, max_degree)?;
    for k in 0..=max_degree as usize {
        for c in [alg.one(), alg.j()] {
            let h = zbar_times(&APoly::monomial(c, k)).v;
            check_element(&gamma_apply(op, &gamma_apply(op, &h)), &h, THEOREM_TOL)?;
            candidates.push(h);
        }
    }
    let kept = independent_subset(&candidates);
    Ok(kept.into_iter().map(|i| candidates[i].clone()).collect())
}

pub fn basis(op: OperatorParams, target: Target, max_degree: u32) -> Result<Vec<BiPoly>> {
    match target {
        Target::Gamma => basis_gamma(op, max_degree),
        Target::GammaSquared => basis_gamma2(op, max_degree),
    }
}

fn check_element(residual: &BiPoly, element: &BiPoly, tol: f64) -> Result<()> {
    let scale = nonzero_scale(element.max_abs_coeff());
    if residual.is_zero(tol, scale) {
        Ok(())
    } else {
        Err(Error::NotASolution {
            max_abs: residual.max_abs_coeff(),
            tolerance: tol,
            scale,
        })
    }
}

/// Indices of a maximal linearly independent prefix-greedy subset, judged on
/// coefficient vectors.
pub fn independent_subset(polys: &[BiPoly]) -> Vec<usize> {
    let monomials: Vec<Exponent> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(e, _)| e))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let columns: Vec<Vec<f64>> = polys
        .iter()
        .map(|p| monomials.iter().map(|e| p.coeff(e.x, e.y)).collect())
        .collect();
    lsq::Factorization::new(&columns).kept
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Circle { center: (f64, f64), radius: f64 },
    Rect { min: (f64, f64), max: (f64, f64) },
    Custom,
}

impl Shape {
    pub fn unit_disc() -> Self {
        Shape::Circle {
            center: (0.0, 0.0),
            radius: 1.0,
        }
    }

    pub fn unit_square() -> Self {
        Shape::Rect {
            min: (-1.0, -1.0),
            max: (1.0, 1.0),
        }
    }

    /// Strict interior test; `Custom` shapes have no known interior.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        match *self {
            Shape::Circle { center, radius } => {
                let (dx, dy) = (x - center.0, y - center.1);
                dx * dx + dy * dy < radius * radius
            }
            Shape::Rect { min, max } => x > min.0 && x < max.0 && y > min.1 && y < max.1,
            Shape::Custom => false,
        }
    }

    pub fn bounding_box(&self) -> Option<((f64, f64), (f64, f64))> {
        match *self {
            Shape::Circle { center, radius } => Some((
                (center.0 - radius, center.1 - radius),
                (center.0 + radius, center.1 + radius),
            )),
            Shape::Rect { min, max } => Some((min, max)),
            Shape::Custom => None,
        }
    }
}

/// Dirichlet data on a finite set of distinct boundary points.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySample {
    points: Vec<(f64, f64)>,
    values: Vec<f64>,
    shape: Shape,
}

impl BoundarySample {
    pub fn new(points: Vec<(f64, f64)>, values: Vec<f64>, shape: Shape) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSample("no sample points".into()));
        }
        if points.len() != values.len() {
            return Err(Error::InvalidSample(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        let mut seen = HashSet::with_capacity(points.len());
        for &(x, y) in &points {
            // +0.0 folds -0.0 into 0.0
            if !seen.insert(((x + 0.0).to_bits(), (y + 0.0).to_bits())) {
                return Err(Error::InvalidSample(format!("duplicate point ({x}, {y})")));
            }
        }
        Ok(BoundarySample {
            points,
            values,
            shape,
        })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Writes `x,y,value` rows under a header.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["x", "y", "value"])?;
        for (&(x, y), &v) in self.points.iter().zip(&self.values) {
            out.write_record([fmt_csv(x), fmt_csv(y), fmt_csv(v)])?;
        }
        out.flush().map_err(|e| Error::Malformed(e.to_string()))?;
        Ok(())
    }

    /// Reads the `x,y,value` CSV form; the shape is `Custom`.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(r);
        let header = rdr.headers()?.clone();
        let expected = ["x", "y", "value"];
        if header.len() != 3 || header.iter().zip(expected).any(|(a, b)| a != b) {
            return Err(Error::Malformed(format!(
                "expected header `x,y,value`, found `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut points = Vec::new();
        let mut values = Vec::new();
        for rec in rdr.deserialize::<(f64, f64, f64)>() {
            let (x, y, v) = rec?;
            points.push((x, y));
            values.push(v);
        }
        Self::new(points, values, Shape::Custom)
    }
}

pub(crate) fn fmt_csv(x: f64) -> String {
    json::number(x).to_string()
}

/// `m` boundary points with `data` evaluated at each.
///
/// Circles are sampled at equal angles from angle 0; rectangles at equal
/// perimeter arc length counter-clockwise from `min`.
pub fn sample_boundary<F: Fn(f64, f64) -> f64>(
    shape: Shape,
    m: usize,
    data: F,
) -> Result<BoundarySample> {
    if m == 0 {
        return Err(Error::InvalidSample("m must be positive".into()));
    }
    let points: Vec<(f64, f64)> = match shape {
        Shape::Circle { center, radius } => (0..m)
            .map(|i| {
                let theta = 2.0 * PI * i as f64 / m as f64;
                let (s, c) = theta.sin_cos();
                (center.0 + radius * c, center.1 + radius * s)
            })
            .collect(),
        Shape::Rect { min, max } => {
            let (w, h) = (max.0 - min.0, max.1 - min.1);
            let perimeter = 2.0 * (w + h);
            (0..m)
                .map(|i| {
                    let s = perimeter * i as f64 / m as f64;
                    if s < w {
                        (min.0 + s, min.1)
                    } else if s < w + h {
                        (max.0, min.1 + (s - w))
                    } else if s < 2.0 * w + h {
                        (max.0 - (s - w - h), max.1)
                    } else {
                        (min.0, max.1 - (s - 2.0 * w - h))
                    }
                })
                .collect()
        }
        Shape::Custom => {
            return Err(Error::InvalidSample(
                "custom shapes carry explicit points; build the sample directly".into(),
            ))
        }
    };
    let values = points.iter().map(|&(x, y)| data(x, y)).collect();
    BoundarySample::new(points, values, shape)
}

/// Result of a collocation fit. `coefficients` is aligned with `basis`;
/// dropped columns have coefficient zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationFit {
    pub basis: Vec<BiPoly>,
    pub coefficients: Vec<f64>,
    pub boundary_rms: f64,
    pub condition_estimate: f64,
    pub dropped_columns: Vec<usize>,
    pub warning: Option<String>,
}

/// Least-squares fit of `sample` over `basis`.
pub fn fit_dirichlet(basis: &[BiPoly], sample: &BoundarySample) -> Result<CollocationFit> {
    let required = OVERDETERMINATION * basis.len();
    if basis.is_empty() || sample.len() < required {
        return Err(Error::UnderDetermined {
            samples: sample.len(),
            columns: basis.len(),
            required: required.max(1),
        });
    }
    let columns: Vec<Vec<f64>> = basis
        .iter()
        .map(|b| sample.points.iter().map(|&(x, y)| b.eval(x, y)).collect())
        .collect();
    let qr = lsq::Factorization::new(&columns);
    if qr.rank() == 0 {
        return Err(Error::DegenerateBasis);
    }
    let solved = qr.solve(&sample.values);
    let mut coefficients = vec![0.0; basis.len()];
    for (&j, &c) in qr.kept.iter().zip(&solved) {
        coefficients[j] = c;
    }

    let sq: f64 = (0..sample.len())
        .map(|i| {
            let fitted: f64 = columns
                .iter()
                .zip(&coefficients)
                .map(|(col, c)| c * col[i])
                .sum();
            let r = fitted - sample.values[i];
            r * r
        })
        .sum();
    Ok(CollocationFit {
        basis: basis.to_vec(),
        coefficients,
        boundary_rms: (sq / sample.len() as f64).sqrt(),
        condition_estimate: qr.condition(),
        dropped_columns: qr.dropped.clone(),
        warning: None,
    })
}

/// Builds the basis for `target`, fits, and flags hyperbolic operators.
pub fn solve_dirichlet(
    op: OperatorParams,
    target: Target,
    max_degree: u32,
    sample: &BoundarySample,
) -> Result<CollocationFit> {
    let b = basis(op, target, max_degree)?;
    let mut fit = fit_dirichlet(&b, sample)?;
    if op.kind() == AlgebraKind::Hyperbolic {
        fit.warning = Some(HYPERBOLIC_WARNING.to_string());
    }
    Ok(fit)
}

pub fn evaluate_fit(fit: &CollocationFit, points: &[(f64, f64)]) -> Vec<f64> {
    points.iter().map(|&(x, y)| fit.eval(x, y)).collect()
}

impl CollocationFit {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.basis
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, &c)| c != 0.0)
            .map(|(b, c)| c * b.eval(x, y))
            .sum()
    }

    /// The fitted solution as a single polynomial.
    pub fn solution(&self) -> BiPoly {
        self.basis
            .iter()
            .zip(&self.coefficients)
            .fold(BiPoly::zero(), |acc, (b, &c)| &acc + &b.scale(c))
    }

    pub fn summary(&self) -> FitSummary<'_> {
        FitSummary {
            basis_degrees: self
                .basis
                .iter()
                .map(|b| b.total_degree().unwrap_or(0))
                .collect(),
            coefficients: &self.coefficients,
            boundary_rms: self.boundary_rms,
            condition_estimate: self.condition_estimate,
            dropped_columns: &self.dropped_columns,
            warning: self.warning.as_deref(),
        }
    }
}

/// JSON form of a fit.
#[derive(Debug, Serialize)]
pub struct FitSummary<'a> {
    pub basis_degrees: Vec<u32>,
    #[serde(serialize_with = "json::serialize_f64_seq")]
    pub coefficients: &'a [f64],
    #[serde(serialize_with = "json::serialize_f64")]
    pub boundary_rms: f64,
    #[serde(serialize_with = "json::serialize_f64")]
    pub condition_estimate: f64,
    pub dropped_columns: &'a [usize],
    pub warning: Option<&'a str>,
}
