#![allow(dead_code)]

use gammakit_core::{APoly, AlgebraParams, BiPoly, HNum};
use proptest::prelude::*;

pub fn component() -> impl Strategy<Value = f64> {
    -10.0f64..10.0
}

pub fn algebra() -> impl Strategy<Value = AlgebraParams> {
    (-5.0f64..5.0, -5.0f64..5.0).prop_map(|(a, b)| AlgebraParams::new(a, b))
}

pub fn hnum_in(alg: AlgebraParams) -> impl Strategy<Value = HNum> {
    (component(), component()).prop_map(move |(t, s)| HNum::new(t, s, alg))
}

pub fn apoly_in(alg: AlgebraParams, max_degree: usize) -> impl Strategy<Value = APoly> {
    prop::collection::vec((component(), component()), 1..=max_degree + 1)
        .prop_map(move |pairs| APoly::from_pairs(alg, &pairs))
}

/// Integer coefficients in [-8, 8], total degree <= `max_degree`.
pub fn int_bipoly(max_degree: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_degree, 0..=max_degree, -8i32..=8), 0..12).prop_map(
        move |terms| {
            BiPoly::from_terms(
                terms
                    .into_iter()
                    .filter(|(i, j, _)| i + j <= max_degree)
                    .map(|(i, j, c)| (i, j, c as f64)),
            )
        },
    )
}

pub fn close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * scale.max(1.0)
}
