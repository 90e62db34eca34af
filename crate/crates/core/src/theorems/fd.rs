//! Finite-difference oracle for `Γ h` and `Γ² h`.
//!
//! Works on any scalar field given as a closure, so it shares nothing with
//! the symbolic polynomial path it is used to cross-check.

use std::cell::Cell;

use crate::algebra::OperatorParams;

use super::ResidualReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdOrder {
    Gamma,
    /// The `Γ` stencil applied to itself.
    GammaSquared,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdScheme {
    pub step: f64,
    pub order: FdOrder,
}

impl FdScheme {
    pub const GAMMA_STEP: f64 = 1e-3;
    pub const GAMMA_SQUARED_STEP: f64 = 1e-2;
    pub const GAMMA_TOL: f64 = 1e-4;
    pub const GAMMA_SQUARED_TOL: f64 = 1e-3;

    pub fn new(order: FdOrder, step: f64) -> Self {
        assert!(step > 0.0, "finite-difference step must be positive");
        FdScheme { step, order }
    }

    pub fn gamma() -> Self {
        Self::new(FdOrder::Gamma, Self::GAMMA_STEP)
    }

    pub fn gamma_squared() -> Self {
        Self::new(FdOrder::GammaSquared, Self::GAMMA_SQUARED_STEP)
    }

    pub fn default_for(order: FdOrder) -> Self {
        match order {
            FdOrder::Gamma => Self::gamma(),
            FdOrder::GammaSquared => Self::gamma_squared(),
        }
    }

    pub fn default_tolerance(&self) -> f64 {
        match self.order {
            FdOrder::Gamma => Self::GAMMA_TOL,
            FdOrder::GammaSquared => Self::GAMMA_SQUARED_TOL,
        }
    }
}

/// Nine-point central approximation of `f_xx + α f_xy + β f_yy` at `(x, y)`.
pub fn gamma_stencil<F: Fn(f64, f64) -> f64>(
    f: &F,
    op: OperatorParams,
    h: f64,
    x: f64,
    y: f64,
) -> f64 {
    let c = f(x, y);
    let dxx = f(x + h, y) - 2.0 * c + f(x - h, y);
    let dyy = f(x, y + h) - 2.0 * c + f(x, y - h);
    let dxy = f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h);
    (dxx + op.beta * dyy + 0.25 * op.alpha * dxy) / (h * h)
}

pub fn gamma_squared_stencil<F: Fn(f64, f64) -> f64>(
    f: &F,
    op: OperatorParams,
    h: f64,
    x: f64,
    y: f64,
) -> f64 {
    let inner = |a: f64, b: f64| gamma_stencil(f, op, h, a, b);
    gamma_stencil(&inner, op, h, x, y)
}

/// Maximum stencil residual over `points`, judged against
/// `tolerance · (1 + max |field| over every stencil node)`.
pub fn fd_residual<F: Fn(f64, f64) -> f64>(
    field: &F,
    op: OperatorParams,
    scheme: FdScheme,
    points: &[(f64, f64)],
) -> ResidualReport {
    fd_residual_with_tol(field, op, scheme, points, scheme.default_tolerance())
}

pub fn fd_residual_with_tol<F: Fn(f64, f64) -> f64>(
    field: &F,
    op: OperatorParams,
    scheme: FdScheme,
    points: &[(f64, f64)],
    tolerance: f64,
) -> ResidualReport {
    let peak = Cell::new(0.0f64);
    let tracked = |x: f64, y: f64| {
        let v = field(x, y);
        peak.set(peak.get().max(v.abs()));
        v
    };
    let mut worst = 0.0f64;
    let mut saw_nan = false;
    for &(x, y) in points {
        let r = match scheme.order {
            FdOrder::Gamma => gamma_stencil(&tracked, op, scheme.step, x, y),
            FdOrder::GammaSquared => gamma_squared_stencil(&tracked, op, scheme.step, x, y),
        };
        saw_nan |= r.is_nan();
        worst = worst.max(r.abs());
    }
    if saw_nan {
        worst = f64::NAN;
    }
    ResidualReport::numeric(worst, tolerance, 1.0 + peak.get())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_harmonic_quadratic() {
        let f = |x: f64, y: f64| x * x - y * y;
        let pts = [(0.0, 0.0), (0.3, -0.7), (-1.0, 1.0), (5.0, 2.0)];
        let rep = fd_residual(&f, OperatorParams::laplace(), FdScheme::gamma(), &pts);
        assert!(rep.residual.max_abs() <= 1e-8, "{rep:?}");
        assert!(rep.passed);
    }

    #[test]
    fn quartic_is_not_harmonic() {
        // Γ x⁴ = 12 x² = 12 at (1, 0); truncation 2 h² = 2e-6
        let f = |x: f64, _y: f64| x.powi(4);
        let v = gamma_stencil(&f, OperatorParams::laplace(), 1e-3, 1.0, 0.0);
        assert!((v - 12.0).abs() <= 1e-5, "{v}");
        let rep = fd_residual(
            &f,
            OperatorParams::laplace(),
            FdScheme::gamma(),
            &[(1.0, 0.0)],
        );
        assert!(!rep.passed);
    }

    #[test]
    fn cross_term_uses_alpha() {
        // Γ(xy) = α
        let f = |x: f64, y: f64| x * y;
        let v = gamma_stencil(&f, OperatorParams::new(-2.5, 7.0), 1e-2, 0.4, 0.9);
        assert!((v + 2.5).abs() < 1e-10, "{v}");
    }

    #[test]
    fn squared_stencil_on_biharmonic() {
        // Δ(r² x) = 8x, so Δ² vanishes; Δ² x⁴ = 24
        let f = |x: f64, y: f64| (x * x + y * y) * x;
        let op = OperatorParams::laplace();
        let v = gamma_squared_stencil(&f, op, 1e-2, 0.2, -0.3);
        assert!(v.abs() < 1e-6, "{v}");
        let g = |x: f64, _y: f64| x.powi(4);
        let v = gamma_squared_stencil(&g, op, 1e-2, 0.2, -0.3);
        assert!((v - 24.0).abs() < 1e-5, "{v}");
    }

    #[test]
    fn nan_fails() {
        let f = |_x: f64, _y: f64| f64::NAN;
        let rep = fd_residual(
            &f,
            OperatorParams::laplace(),
            FdScheme::gamma(),
            &[(0.0, 0.0)],
        );
        assert!(!rep.passed);
    }
}
