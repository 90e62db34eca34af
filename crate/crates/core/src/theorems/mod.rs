//! Executable checks for the solution generators.
//!
//! * [`lemma1_residuals`]: both components of an A-differentiable `F` over
//!   `A(α/β, 1/β)` solve `Γ(α, β) h = 0`.
//! * [`compose_solution`] / [`theorem1_residual`]: `h ∘ F` solves
//!   `Γ h = 0` whenever `h` does; more strongly
//!   `Γ(h ∘ F) = J(F) · (Γh) ∘ F` for every `h`, with `J(F) = u_x v_y - u_y v_x`.
//! * [`goursat_solution`] / [`theorem2_residual`]: `Im(conj(z) f(z) + g(z))`
//!   solves `Γ² h = 0`.
//!
//! Each symbolic check has a numerical counterpart in [`fd`].

pub mod fd;

use serde::{Serialize, Serializer};

use crate::algebra::{algebra_from_operator, OperatorParams};
use crate::analytic::{expand, nonzero_scale, zbar_times, APoly};
use crate::error::{Error, Result};
use crate::json;
use crate::poly2::{gamma_apply, BiPoly};

pub use fd::{
    fd_residual, fd_residual_with_tol, gamma_squared_stencil, gamma_stencil, FdOrder, FdScheme,
};

/// Relative tolerance for Γ-residuals of generated components.
pub const LEMMA1_TOL: f64 = 1e-9;
/// Relative tolerance for composed and fourth-order residuals.
pub const THEOREM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum Residual {
    Symbolic(BiPoly),
    Numeric(f64),
}

impl Residual {
    /// Largest coefficient magnitude, or the numeric value itself.
    pub fn max_abs(&self) -> f64 {
        match self {
            Residual::Symbolic(p) => p.max_abs_coeff(),
            Residual::Numeric(v) => v.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub residual: Residual,
    pub scale: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl ResidualReport {
    pub fn symbolic(residual: BiPoly, tolerance: f64, scale: f64) -> Self {
        let scale = nonzero_scale(scale);
        let passed = residual.is_zero(tolerance, scale);
        ResidualReport {
            residual: Residual::Symbolic(residual),
            scale,
            tolerance,
            passed,
        }
    }

    pub fn numeric(max_abs: f64, tolerance: f64, scale: f64) -> Self {
        ResidualReport {
            residual: Residual::Numeric(max_abs),
            scale,
            tolerance,
            passed: max_abs <= tolerance * scale,
        }
    }

    /// Re-judges the same residual against a different tolerance.
    pub fn with_tolerance(self, tolerance: f64) -> Self {
        match self.residual {
            Residual::Symbolic(p) => Self::symbolic(p, tolerance, self.scale),
            Residual::Numeric(v) => Self::numeric(v, tolerance, self.scale),
        }
    }

    /// `max_abs / scale`, the quantity compared against the tolerance.
    pub fn relative(&self) -> f64 {
        self.residual.max_abs() / self.scale
    }
}

impl Serialize for ResidualReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            passed: bool,
            max_abs_or_residual: ResidualRepr<'a>,
            #[serde(serialize_with = "json::serialize_f64")]
            tolerance: f64,
            #[serde(serialize_with = "json::serialize_f64")]
            scale: f64,
        }
        #[derive(Serialize)]
        #[serde(untagged)]
        enum ResidualRepr<'a> {
            Poly(&'a BiPoly),
            Num(serde_json::Value),
        }
        Repr {
            passed: self.passed,
            max_abs_or_residual: match &self.residual {
                Residual::Symbolic(p) => ResidualRepr::Poly(p),
                Residual::Numeric(v) => ResidualRepr::Num(json::number(*v)),
            },
            tolerance: self.tolerance,
            scale: self.scale,
        }
        .serialize(s)
    }
}

fn checked_algebra(op: OperatorParams, fs: &[&APoly]) -> Result<()> {
    let alg = algebra_from_operator(op)?;
    for f in fs {
        alg.ensure_same(&f.algebra())?;
    }
    Ok(())
}

/// `(Γu, Γv)` for `F = u + j v`; zero for every `F` over `A(α/β, 1/β)`.
pub fn lemma1_residuals(f: &APoly, op: OperatorParams) -> Result<(ResidualReport, ResidualReport)> {
    checked_algebra(op, &[f])?;
    let pair = expand(f);
    let scale = pair.max_abs_coeff();
    Ok((
        ResidualReport::symbolic(gamma_apply(op, &pair.u), LEMMA1_TOL, scale),
        ResidualReport::symbolic(gamma_apply(op, &pair.v), LEMMA1_TOL, scale),
    ))
}

/// `H = h(u, v)` for `F = u + j v`, after confirming `Γh = 0` with `h`
/// read as a function of `(u, v)`.
pub fn compose_solution(h: &BiPoly, f: &APoly, op: OperatorParams) -> Result<BiPoly> {
    checked_algebra(op, &[f])?;
    let gh = gamma_apply(op, h);
    let scale = nonzero_scale(h.max_abs_coeff());
    if !gh.is_zero(LEMMA1_TOL, scale) {
        return Err(Error::NotASolution {
            max_abs: gh.max_abs_coeff(),
            tolerance: LEMMA1_TOL,
            scale,
        });
    }
    compose_unchecked(h, f, op)
}

/// [`compose_solution`] without the `Γh = 0` precondition.
pub fn compose_unchecked(h: &BiPoly, f: &APoly, op: OperatorParams) -> Result<BiPoly> {
    checked_algebra(op, &[f])?;
    let pair = expand(f);
    Ok(h.compose(&pair.u, &pair.v))
}

#[derive(Debug, Clone)]
pub struct Theorem1Report {
    /// `H = h ∘ F`.
    pub composition: BiPoly,
    /// `Γ(H)`, judged against zero.
    pub residual: ResidualReport,
    /// `Γ(H) - J(F) · (Γh) ∘ F`, judged against zero.
    pub factorization: ResidualReport,
}

/// Jacobian determinant `u_x v_y - u_y v_x`.
pub fn jacobian(u: &BiPoly, v: &BiPoly) -> BiPoly {
    &(&u.partial_x() * &v.partial_y()) - &(&u.partial_y() * &v.partial_x())
}

/// `Γ(h ∘ F)` for arbitrary `h`, plus the factorization identity.
///
/// `residual` passes only when `h` itself solves `Γh = 0`; `factorization`
/// should pass for every `h`.
pub fn theorem1_residual(h: &BiPoly, f: &APoly, op: OperatorParams) -> Result<Theorem1Report> {
    checked_algebra(op, &[f])?;
    let pair = expand(f);
    let composed = h.compose(&pair.u, &pair.v);
    let lhs = gamma_apply(op, &composed);
    let rhs = &jacobian(&pair.u, &pair.v) * &gamma_apply(op, h).compose(&pair.u, &pair.v);
    let scale = composed.max_abs_coeff();
    let fact_scale = scale.max(lhs.max_abs_coeff()).max(rhs.max_abs_coeff());
    let factorization = ResidualReport::symbolic(&lhs - &rhs, THEOREM_TOL, fact_scale);
    Ok(Theorem1Report {
        residual: ResidualReport::symbolic(lhs, THEOREM_TOL, scale),
        factorization,
        composition: composed,
    })
}

/// Which component of `conj(z) f(z) + g(z)` to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GoursatPart {
    /// The imaginary part; a `Γ²`-solution for every `f, g`.
    #[default]
    Imaginary,
    /// The real part. Experimental: checked empirically only.
    Real,
}

/// `h = Im(conj(z) f(z) + g(z))`.
pub fn goursat_solution(f: &APoly, g: &APoly, op: OperatorParams) -> Result<BiPoly> {
    goursat_part(f, g, op, GoursatPart::Imaginary)
}

pub fn goursat_part(f: &APoly, g: &APoly, op: OperatorParams, part: GoursatPart) -> Result<BiPoly> {
    checked_algebra(op, &[f, g])?;
    let zf = zbar_times(f);
    let eg = expand(g);
    Ok(match part {
        GoursatPart::Imaginary => &zf.v + &eg.v,
        GoursatPart::Real => &zf.u + &eg.u,
    })
}

/// `Γ(Γ(h))` for the generated `h`, relative to `h`'s largest coefficient.
pub fn theorem2_residual(f: &APoly, g: &APoly, op: OperatorParams) -> Result<ResidualReport> {
    let h = goursat_solution(f, g, op)?;
    Ok(gamma_squared_report(&h, op))
}

pub fn gamma_squared_report(h: &BiPoly, op: OperatorParams) -> ResidualReport {
    let g2 = gamma_apply(op, &gamma_apply(op, h));
    ResidualReport::symbolic(g2, THEOREM_TOL, h.max_abs_coeff())
}

pub fn gamma_report(h: &BiPoly, op: OperatorParams, tolerance: f64) -> ResidualReport {
    ResidualReport::symbolic(gamma_apply(op, h), tolerance, h.max_abs_coeff())
}
