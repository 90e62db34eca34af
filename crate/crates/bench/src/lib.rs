//! Seeded inputs shared by the benchmarks.

use gammakit_core::bvp::sample_boundary;
use gammakit_core::random::TrialRng;
use gammakit_core::{algebra_from_operator, APoly, BiPoly, BoundarySample, OperatorParams, Shape};

pub const SEED: u64 = 0xbe7c;

/// A fixed elliptic operator with a mixed term.
pub fn operator() -> OperatorParams {
    OperatorParams::new(0.75, 1.5)
}

pub fn apoly(degree: usize, stream: u64) -> APoly {
    let alg = algebra_from_operator(operator()).unwrap();
    TrialRng::new(SEED + stream).apoly(alg, degree, 10.0)
}

pub fn bipoly(degree: u32, stream: u64) -> BiPoly {
    TrialRng::new(SEED + stream).bipoly(degree, 10.0)
}

/// Unit-disc samples of `data`, twice as many as `basis_len`.
pub fn disc_sample(data: &BiPoly, basis_len: usize) -> BoundarySample {
    sample_boundary(Shape::unit_disc(), 2 * basis_len, |x, y| data.eval(x, y)).unwrap()
}
