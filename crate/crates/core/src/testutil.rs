#![allow(dead_code)]

//! Shared test fixtures: curves with known non-torsion points over Q and
//! over prime function fields in characteristics 5, 3, and 2.

use crate::curve::{CurvePoint, CurveSpec};
use crate::field::{FieldConfig, Scalar};
use crate::textio::parse_scalar;
use std::sync::Arc;

pub fn qq() -> FieldConfig {
    FieldConfig::Rationals
}

pub fn qi(n: i64) -> Scalar {
    qq().integer(n)
}

/// y^2 + y = x^3 - x over Q: rank one, generator s = (0, 0), and the
/// small multiples 2s = (1, 0), 3s = (-1, -1), 4s = (2, -3).
pub fn curve37() -> Arc<CurveSpec> {
    CurveSpec::new(qq(), qi(0), qi(0), qi(1), qi(-1), qi(0)).unwrap()
}

pub fn gen37() -> CurvePoint {
    CurvePoint::Affine(qi(0), qi(0))
}

/// y^2 + y = x^3 + x^2 - 2x over Q: rank two with independent points
/// (0, 0) and (1, 0).
pub fn curve389() -> Arc<CurveSpec> {
    CurveSpec::new(qq(), qi(0), qi(1), qi(1), qi(-2), qi(0)).unwrap()
}

pub fn gens389() -> (CurvePoint, CurvePoint) {
    (
        CurvePoint::Affine(qi(0), qi(0)),
        CurvePoint::Affine(qi(1), qi(0)),
    )
}

fn fps(p: u64, src: &str) -> Scalar {
    parse_scalar(src, FieldConfig::PrimeFnField(p), 1).unwrap()
}

/// y^2 = x^3 + x + t^2 over F_5(t): ordinary, with the non-torsion point
/// (0, t); (t^2 + 2, t^3 + 3t) also lies on it.
pub fn curve_f5_ordinary() -> Arc<CurveSpec> {
    let k = FieldConfig::PrimeFnField(5);
    CurveSpec::new(k, k.zero(), k.zero(), k.zero(), k.one(), fps(5, "t^2")).unwrap()
}

pub fn gen_f5_ordinary() -> CurvePoint {
    CurvePoint::Affine(fps(5, "0"), fps(5, "t"))
}

pub fn second_f5_ordinary() -> CurvePoint {
    CurvePoint::Affine(fps(5, "t^2+2"), fps(5, "t^3+3*t"))
}

/// y^2 = x^3 + 3t^2 + 4 over F_5(t): j = 0, supersingular at p = 5, with
/// the point (t^2 + 1, t^3 + 4t).
pub fn curve_f5_supersingular() -> Arc<CurveSpec> {
    let k = FieldConfig::PrimeFnField(5);
    CurveSpec::new(
        k,
        k.zero(),
        k.zero(),
        k.zero(),
        k.zero(),
        fps(5, "3*t^2+4"),
    )
    .unwrap()
}

pub fn gen_f5_supersingular() -> CurvePoint {
    CurvePoint::Affine(fps(5, "t^2+1"), fps(5, "t^3+4*t"))
}

/// y^2 = x^3 + 2x + t^2 over F_3(t), discriminant 1, with point (0, t).
pub fn curve_f3() -> Arc<CurveSpec> {
    let k = FieldConfig::PrimeFnField(3);
    CurveSpec::new(k, k.zero(), k.zero(), k.zero(), fps(3, "2"), fps(3, "t^2")).unwrap()
}

pub fn gen_f3() -> CurvePoint {
    CurvePoint::Affine(fps(3, "0"), fps(3, "t"))
}

/// y^2 + y = x^3 + t x over F_2(t), discriminant 1, with non-torsion
/// point (0, 0); 2P = (t^2, t^3 + 1).
pub fn curve_f2() -> Arc<CurveSpec> {
    let k = FieldConfig::PrimeFnField(2);
    CurveSpec::new(k, k.zero(), k.zero(), k.one(), fps(2, "t"), k.zero()).unwrap()
}

pub fn gen_f2() -> CurvePoint {
    CurvePoint::Affine(fps(2, "0"), fps(2, "0"))
}
