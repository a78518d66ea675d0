//! Local expansions at curve points, exact valuations, and divisors.
//!
//! Every point carries a standard local parameter: x/y at infinity,
//! x - x(a) at an affine point where 2y + a1 x + a3 does not vanish, and
//! y - y(a) on the 2-torsion fiber.  Expansions of x and y in that
//! parameter come from fixed-point or Newton iteration on the curve
//! equation and make every further expansion a series computation.

use crate::curve::{CurvePoint, CurveSpec};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::fnfield::FnElt;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::roots::{fiber_y_values, rational_roots};
use crate::series::Series;
use std::sync::Arc;

/// Expansions of the coordinate functions in the standard parameter at a
/// point, to some absolute precision.
#[derive(Clone, Debug)]
pub struct StdCoords {
    pub x: Series,
    pub y: Series,
}

/// Computes x(u), y(u) at `at` to absolute precision `prec` in the
/// standard local parameter u.
pub fn std_coords(curve: &Arc<CurveSpec>, at: &CurvePoint, prec: i64) -> Result<StdCoords> {
    match at {
        CurvePoint::Infinity => std_coords_infinity(curve, prec),
        CurvePoint::Affine(x0, y0) => std_coords_affine(curve, x0, y0, prec),
    }
}

/// The tangent-direction invariant 2 y(a) + a1 x(a) + a3; the standard
/// parameter is x - x(a) exactly when this is nonzero.
pub fn two_torsion_form(curve: &CurveSpec, x0: &Scalar, y0: &Scalar) -> Scalar {
    let k = curve.field;
    &(&(&k.integer(2) * y0) + &(&curve.a1 * x0)) + &curve.a3
}

fn std_coords_infinity(curve: &Arc<CurveSpec>, prec: i64) -> Result<StdCoords> {
    let k = curve.field;
    // In z = -x/y, w = -1/y the curve reads
    // w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3,
    // and w(z) = z^3 (1 + ...) is found by fixed-point iteration.
    let m = (prec + 6).max(8);
    let z = Series::monomial(k, 1, m);
    let c = |a: &Scalar| Series::constant(a.clone(), m);
    let z2 = &z * &z;
    let z3 = &z2 * &z;
    let mut w = Series::monomial(k, 3, m);
    for _ in 0..(2 * m + 4) {
        let w2 = &w * &w;
        let w3 = &w2 * &w;
        let t1 = &c(&curve.a1) * &(&z * &w);
        let t2 = &c(&curve.a2) * &(&z2 * &w);
        let t3 = &c(&curve.a3) * &w2;
        let t4 = &c(&curve.a4) * &(&z * &w2);
        let t6 = &c(&curve.a6) * &w3;
        let next = &(&(&(&(&z3 + &t1) + &t2) + &t3) + &t4) + &t6;
        if next == w {
            break;
        }
        w = next;
    }
    // x = z/w, y = -1/w, then z = -u since u = x/y = -z.
    let x = z.div(&w)?;
    let y = w.inverse()?.neg();
    Ok(StdCoords {
        x: flip_variable(&x),
        y: flip_variable(&y),
    })
}

/// Substitutes u -> -u.
fn flip_variable(s: &Series) -> Series {
    match s.val() {
        None => s.clone(),
        Some(v) => {
            let mut c = Vec::with_capacity((s.prec() - v) as usize);
            for j in v..s.prec() {
                let a = s.coeff(j).unwrap();
                c.push(if j.rem_euclid(2) == 1 { -&a } else { a });
            }
            Series::new(s.field, v, c, s.prec())
        }
    }
}

fn std_coords_affine(
    curve: &Arc<CurveSpec>,
    x0: &Scalar,
    y0: &Scalar,
    prec: i64,
) -> Result<StdCoords> {
    let k = curve.field;
    let m = prec.max(2);
    let tt = two_torsion_form(curve, x0, y0);
    if !tt.is_zero() {
        // u = x - x0; solve Y^2 + b(u) Y - c(u) = 0 by Newton from y0,
        // where b and c come from substituting x = x0 + u.
        let xu = &Series::constant(x0.clone(), m) + &Series::monomial(k, 1, m);
        let b = poly_at_series(
            &Poly::from_coeffs(k, vec![curve.a3.clone(), curve.a1.clone()]),
            &xu,
        );
        let rhs = poly_at_series(
            &Poly::from_coeffs(
                k,
                vec![curve.a6.clone(), curve.a4.clone(), curve.a2.clone(), k.one()],
            ),
            &xu,
        );
        let mut y = Series::constant(y0.clone(), m);
        loop {
            // F(y) = y^2 + b y - rhs, F'(y) = 2y + b.
            let f = &(&(&y * &y) + &(&b * &y)) - &rhs;
            if f.is_zero_to_prec() {
                break;
            }
            let fp = &(&y + &y) + &b;
            let step = f.div(&fp)?;
            let next = &y - &step;
            if next == y {
                break;
            }
            y = next;
        }
        Ok(StdCoords { x: xu, y })
    } else {
        // u = y - y0; solve the cubic in X by Newton from x0.  The
        // x-derivative 3x^2 + 2 a2 x + a4 - a1 y is nonzero here or the
        // curve would be singular.
        let yu = &Series::constant(y0.clone(), m) + &Series::monomial(k, 1, m);
        let c_a1 = Series::constant(curve.a1.clone(), m);
        let c_a2 = Series::constant(curve.a2.clone(), m);
        let c_a3 = Series::constant(curve.a3.clone(), m);
        let c_a4 = Series::constant(curve.a4.clone(), m);
        let c_a6 = Series::constant(curve.a6.clone(), m);
        let lhs = &(&yu * &yu) + &(&c_a3 * &yu);
        let mut x = Series::constant(x0.clone(), m);
        loop {
            // G(x) = x^3 + a2 x^2 + a4 x + a6 - y^2 - a1 x y - a3 y.
            let x2 = &x * &x;
            let g = &(&(&(&(&x2 * &x) + &(&c_a2 * &x2)) + &(&c_a4 * &x)) + &c_a6)
                - &(&lhs + &(&(&c_a1 * &x) * &yu));
            if g.is_zero_to_prec() {
                break;
            }
            let three = Series::constant(k.integer(3), m);
            let two = Series::constant(k.integer(2), m);
            let gp = &(&(&(&three * &x2) + &(&(&two * &c_a2) * &x)) + &c_a4)
                - &(&c_a1 * &yu);
            let step = g.div(&gp)?;
            let next = &x - &step;
            if next == x {
                break;
            }
            x = next;
        }
        Ok(StdCoords { x, y: yu })
    }
}

fn poly_at_series(p: &Poly, s: &Series) -> Series {
    let k = p.field;
    let prec = s.prec();
    let mut acc = Series::zero_to(k, prec);
    for c in p.c.iter().rev() {
        acc = &(&acc * s) + &Series::constant(c.clone(), prec);
    }
    acc
}

fn ratfn_at_series(r: &RatFn, s: &Series) -> Result<Series> {
    let n = poly_at_series(&r.num, s);
    let d = poly_at_series(&r.den, s);
    n.div(&d)
}

/// Expands f in the standard local parameter at `at`, with absolute
/// precision at least `prec`; retries internally with more working
/// precision until the window is wide enough.
pub fn laurent_expand(f: &FnElt, at: &CurvePoint, prec: i64) -> Result<Series> {
    let k = f.curve.field;
    if f.is_zero() {
        return Ok(Series::zero_to(k, prec));
    }
    let mut work = prec.max(1) + 8;
    for _ in 0..24 {
        let sc = std_coords(&f.curve, at, work)?;
        let part1 = ratfn_at_series(&f.f1, &sc.x)?;
        let part2 = ratfn_at_series(&f.f2, &sc.x)?;
        let total = &part1 + &(&part2 * &sc.y);
        if total.prec() >= prec {
            return Ok(total.truncate(prec));
        }
        work = work * 2 + 8;
    }
    Err(Error::PrecisionLoss(format!(
        "expansion at {} did not reach precision {}",
        at.encode(),
        prec
    )))
}

/// A sound bound on |v_a(f)| over all points: every pole order is at
/// most the negative-part degree of the divisor, and so is every zero
/// order.
fn valuation_bound(f: &FnElt) -> i64 {
    let d1 = f.f1.den.degree().max(0);
    let d2 = f.f2.den.degree().max(0);
    let vo = f.order_at_infinity().unwrap_or(0);
    4 * (d1 + d2) + vo.abs() + 4
}

/// Exact order of vanishing of f at a point; f must be nonzero.
pub fn valuation_at(f: &FnElt, at: &CurvePoint) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if at.is_infinity() {
        return f.order_at_infinity();
    }
    let bound = valuation_bound(f);
    let s = laurent_expand(f, at, bound + 1)?;
    match s.val() {
        Some(v) => Ok(v),
        None => Err(Error::CrossCheckFailure(format!(
            "nonzero function looks zero at {} to precision {}",
            at.encode(),
            bound + 1
        ))),
    }
}

/// The coefficients of f at `at` with respect to an explicit uniformizer
/// (a function of valuation 1 there), for exponents from..=upto.
pub fn coeffs_in_uniformizer(
    f: &FnElt,
    at: &CurvePoint,
    uni: &FnElt,
    from: i64,
    upto: i64,
) -> Result<Vec<Scalar>> {
    let k = f.curve.field;
    if f.is_zero() {
        return Ok((from..=upto).map(|_| k.zero()).collect());
    }
    let vbound = valuation_bound(f);
    let mut prec = (upto + 1).max(-vbound) + 8;
    for _ in 0..24 {
        let fs = laurent_expand(f, at, prec)?;
        let us = laurent_expand(uni, at, prec + 2)?;
        match us.val() {
            Some(1) => {}
            v => {
                return Err(Error::NotAUniformizer(v.unwrap_or(i64::MAX)));
            }
        }
        let rev = us.reversion()?;
        let comp = fs.compose(&rev)?;
        if comp.prec() > upto {
            return (from..=upto).map(|j| comp.coeff(j)).collect();
        }
        prec = prec * 2 + 8;
    }
    Err(Error::PrecisionLoss(format!(
        "coefficients at {} did not stabilize",
        at.encode()
    )))
}

/// Single coefficient convenience wrapper.
pub fn coeff_in_uniformizer(
    f: &FnElt,
    at: &CurvePoint,
    uni: &FnElt,
    j: i64,
) -> Result<Scalar> {
    Ok(coeffs_in_uniformizer(f, at, uni, j, j)?.pop().unwrap())
}

/// The standard local parameter as a field element: x/y at infinity,
/// else x - x0 or y - y0 depending on the 2-torsion form.
pub fn std_uniformizer(curve: &Arc<CurveSpec>, at: &CurvePoint) -> Result<FnElt> {
    match at {
        CurvePoint::Infinity => {
            FnElt::x(curve).div(&FnElt::y(curve))
        }
        CurvePoint::Affine(x0, y0) => {
            if !two_torsion_form(curve, x0, y0).is_zero() {
                Ok(FnElt::x(curve).sub(&FnElt::constant(curve, x0.clone())))
            } else {
                Ok(FnElt::y(curve).sub(&FnElt::constant(curve, y0.clone())))
            }
        }
    }
}

/// The trace of f to k(x): f + conj(f) = 2 f1 - (a1 x + a3) f2.
fn trace_ratfn(f: &FnElt) -> RatFn {
    let k = f.curve.field;
    let lin = RatFn::from_poly(Poly::from_coeffs(
        k,
        vec![f.curve.a3.clone(), f.curve.a1.clone()],
    ));
    &(&f.f1 + &f.f1) - &(&lin * &f.f2)
}

/// The full divisor of a nonzero function.  Pole and zero candidates
/// come from the component denominators of f and 1/f; genuine support at
/// points that are not rational over the base field raises
/// NotRationalPoint.  The result always has degree zero.
pub fn divisor_of(f: &FnElt) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let curve = &f.curve;
    let finv = f.inv()?;
    let mut div = Divisor::zero(curve);

    let vo = f.order_at_infinity()?;
    if vo != 0 {
        div.add_point(&CurvePoint::Infinity, vo)?;
    }

    // Candidate x-coordinates for poles of f and of 1/f.
    let mut cand: Vec<Scalar> = Vec::new();
    let push_roots = |p: &Poly, cand: &mut Vec<Scalar>| -> Result<()> {
        if p.degree() > 0 {
            for (r, _) in rational_roots(p)? {
                if !cand.contains(&r) {
                    cand.push(r);
                }
            }
        }
        Ok(())
    };
    push_roots(&f.f1.den, &mut cand)?;
    push_roots(&f.f2.den, &mut cand)?;
    push_roots(&finv.f1.den, &mut cand)?;
    push_roots(&finv.f2.den, &mut cand)?;

    // Genuine support over an irrational x-locus shows up as a pole of
    // the trace or the norm (of f for poles, of 1/f for zeros) that
    // survives after removing every rational root.
    for g in [f, &finv] {
        for witness in [trace_ratfn(g), g.norm()] {
            let mut rem = witness.den.clone();
            if rem.degree() < 1 {
                continue;
            }
            for (r, m) in rational_roots(&rem)? {
                let lin = Poly::linear_root(&r).pow(m as u64);
                rem = rem.div_exact(&lin)?;
            }
            if rem.degree() > 0 {
                return Err(Error::NotRationalPoint(format!(
                    "support over irrational x-locus {:?}",
                    rem
                )));
            }
        }
    }

    cand.sort_by_key(|s| s.encode());
    for x0 in cand {
        let ys = fiber_y_values(&curve.a1, &curve.a2, &curve.a3, &curve.a4, &curve.a6, &x0);
        if ys.is_empty() {
            // Either nothing actually happens over this x, or the
            // support is at an irrational fiber point.
            let mut genuine = false;
            for g in [f, &finv] {
                for witness in [trace_ratfn(g), g.norm()] {
                    if !witness.is_zero() && witness.den.root_multiplicity(&x0) > 0 {
                        genuine = true;
                    }
                }
            }
            if genuine {
                return Err(Error::NotRationalPoint(format!(
                    "support on the irrational fiber over x = {}",
                    x0.encode()
                )));
            }
            continue;
        }
        for y0 in ys {
            let pt = CurvePoint::Affine(x0.clone(), y0);
            let v = valuation_at(f, &pt)?;
            if v != 0 {
                div.add_point(&pt, v)?;
            }
        }
    }

    if div.degree() != 0 {
        return Err(Error::CrossCheckFailure(format!(
            "divisor {} has degree {}",
            div.encode(),
            div.degree()
        )));
    }
    Ok(div)
}

/// The pole support of a nonzero function as an effective divisor whose
/// multiplicities are the pole orders.  Unlike `divisor_of` this never
/// looks at the zeros, so f may vanish over irrational loci; only the
/// poles themselves must sit at rational points.
pub fn pole_divisor_of(f: &FnElt) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let curve = &f.curve;
    let mut div = Divisor::zero(curve);

    let vo = f.order_at_infinity()?;
    if vo < 0 {
        div.add_point(&CurvePoint::Infinity, -vo)?;
    }

    let mut cand: Vec<Scalar> = Vec::new();
    for p in [&f.f1.den, &f.f2.den] {
        if p.degree() > 0 {
            for (r, _) in rational_roots(p)? {
                if !cand.contains(&r) {
                    cand.push(r);
                }
            }
        }
    }

    // Trace and norm witness every pole: if both are regular over some
    // x-locus then f, a root of T^2 - tr T + nm, is regular there too.
    for witness in [trace_ratfn(f), f.norm()] {
        let mut rem = witness.den.clone();
        if rem.degree() < 1 {
            continue;
        }
        for (r, m) in rational_roots(&rem)? {
            let lin = Poly::linear_root(&r).pow(m as u64);
            rem = rem.div_exact(&lin)?;
        }
        if rem.degree() > 0 {
            return Err(Error::NotRationalPoint(format!(
                "poles over irrational x-locus {:?}",
                rem
            )));
        }
    }

    cand.sort_by_key(|s| s.encode());
    for x0 in cand {
        let ys = fiber_y_values(&curve.a1, &curve.a2, &curve.a3, &curve.a4, &curve.a6, &x0);
        if ys.is_empty() {
            let mut genuine = false;
            for witness in [trace_ratfn(f), f.norm()] {
                if !witness.is_zero() && witness.den.root_multiplicity(&x0) > 0 {
                    genuine = true;
                }
            }
            if genuine {
                return Err(Error::NotRationalPoint(format!(
                    "poles on the irrational fiber over x = {}",
                    x0.encode()
                )));
            }
            continue;
        }
        for y0 in ys {
            let pt = CurvePoint::Affine(x0.clone(), y0);
            let v = valuation_at(f, &pt)?;
            if v < 0 {
                div.add_point(&pt, -v)?;
            }
        }
    }

    Ok(div)
}

/// Value of f at a point where it is regular (order >= 0): the constant
/// coefficient of the local expansion.
pub fn value_at(f: &FnElt, at: &CurvePoint) -> Result<Scalar> {
    if f.is_zero() {
        return Ok(f.curve.field.zero());
    }
    let s = laurent_expand(f, at, 1)?;
    if let Some(v) = s.val() {
        if v < 0 {
            return Err(Error::DivisionByZero);
        }
    }
    s.coeff(0)
}
