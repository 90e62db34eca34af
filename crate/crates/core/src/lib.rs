//! Arithmetic and calculus over the two-parameter commutative algebras
//! `A(l1, l2) = { t + s j : j^2 = -l2 - l1 j }`, and their use for
//! generating, verifying and fitting polynomial solutions of
//!
//! ```text
//! Γ(α, β) h = h_xx + α h_xy + β h_yy = 0      and      Γ(α, β)² h = 0.
//! ```
//!
//! A function `F = u + j v` of `z = x + j y` is *A-differentiable* when its
//! components satisfy `u_x = v_y + l1 v_x` and `u_y = -l2 v_x`. Polynomials in
//! `z` with algebra coefficients ([`APoly`]) are A-differentiable by
//! construction, and for the algebra `A(α/β, 1/β)` their components solve
//! `Γ(α, β) h = 0`.
//!
//! Module map:
//!
//! * [`algebra`]: [`AlgebraParams`], [`HNum`], [`OperatorParams`].
//! * [`poly2`]: exact sparse bivariate polynomials ([`BiPoly`]) and `Γ`.
//! * [`analytic`]: [`APoly`], expansion into `(u, v)` and Cauchy-Riemann residuals.
//! * [`theorems`]: symbolic residual checks with a finite-difference oracle.
//! * [`bvp`]: least-squares Dirichlet collocation over generated solution bases.
//! * [`random`]: the portable seeded generator used by tests and the CLI.

pub mod algebra;
pub mod analytic;
pub mod bvp;
mod error;
pub mod json;
pub mod poly2;
pub mod random;
pub mod theorems;

pub use algebra::{algebra_from_operator, AlgebraKind, AlgebraParams, HNum, OperatorParams};
pub use analytic::{APoly, ComponentPair};
pub use bvp::{BoundarySample, CollocationFit, Shape};
pub use error::{Error, Result};
pub use poly2::BiPoly;
pub use theorems::{FdOrder, FdScheme, Residual, ResidualReport};
