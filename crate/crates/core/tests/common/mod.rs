#![allow(dead_code)]

use corona_core::ring::{GRat, Poly, RFunc, VecFn};
use num::BigRational;
use proptest::prelude::*;

pub fn grat() -> impl Strategy<Value = GRat> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GRat::complex(a, b, c, d))
}

/// Mostly real, often zero: exercises sparse paths.
pub fn sparse_grat() -> impl Strategy<Value = GRat> {
    prop_oneof![
        2 => Just(GRat::zero()),
        3 => (-6i64..=6, 1i64..=4).prop_map(|(a, b)| GRat::ratio(a, b)),
        2 => grat(),
    ]
}

pub fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(sparse_grat(), 0..=max_len).prop_map(Poly::new)
}

pub fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

/// `prod (1 - a_i z)` with `|a_i| <= 1/2`, so every root lies outside the closed disk.
pub fn admissible_den(max_factors: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-2i64..=2, -2i64..=2), 0..=max_factors).prop_map(|pairs| {
        pairs.into_iter().fold(Poly::one(), |acc, (re, im)| {
            let a = GRat::new(BigRational::new(re.into(), 4.into()), BigRational::new(im.into(), 4.into()));
            &acc * &Poly::new(vec![GRat::one(), -a])
        })
    })
}

pub fn rfunc() -> impl Strategy<Value = RFunc> {
    (poly(4), admissible_den(2)).prop_map(|(n, d)| RFunc::new(n, d).expect("admissible denominator"))
}

pub fn poly_rfunc(max_len: usize) -> impl Strategy<Value = RFunc> {
    poly(max_len).prop_map(RFunc::from_poly)
}

pub fn vecfn(n: usize) -> impl Strategy<Value = VecFn> {
    prop::collection::vec(rfunc(), n).prop_map(|v| VecFn::new(v).expect("non-empty"))
}

pub fn poly_vecfn(n: usize, max_len: usize) -> impl Strategy<Value = VecFn> {
    prop::collection::vec(poly_rfunc(max_len), n).prop_map(|v| VecFn::new(v).expect("non-empty"))
}

pub fn cauchy(a: &[GRat], b: &[GRat], order: usize) -> Vec<GRat> {
    (0..=order).map(|k| (0..=k).fold(GRat::zero(), |acc, i| &acc + &(&a[i] * &b[k - i]))).collect()
}
