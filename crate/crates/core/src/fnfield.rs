//! The function field of a curve: elements f1(x) + f2(x)*y modulo the
//! Weierstrass relation, with translation endomorphisms and the
//! derivation dual to the invariant differential.

use crate::curve::{CurvePoint, CurveSpec};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::field::Scalar;
use std::sync::Arc;

/// An element of k(E) written in the canonical basis 1, y over k(x).
#[derive(Clone, PartialEq)]
pub struct FnElt {
    pub curve: Arc<CurveSpec>,
    pub f1: RatFn,
    pub f2: RatFn,
}

impl std::fmt::Debug for FnElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl FnElt {
    pub fn new(curve: Arc<CurveSpec>, f1: RatFn, f2: RatFn) -> Self {
        debug_assert_eq!(f1.field(), curve.field);
        debug_assert_eq!(f2.field(), curve.field);
        FnElt { curve, f1, f2 }
    }

    pub fn zero(curve: &Arc<CurveSpec>) -> Self {
        let k = curve.field;
        FnElt::new(curve.clone(), RatFn::zero(k), RatFn::zero(k))
    }

    pub fn one(curve: &Arc<CurveSpec>) -> Self {
        let k = curve.field;
        FnElt::new(curve.clone(), RatFn::one(k), RatFn::zero(k))
    }

    pub fn constant(curve: &Arc<CurveSpec>, a: Scalar) -> Self {
        let k = curve.field;
        FnElt::new(curve.clone(), RatFn::constant(a), RatFn::zero(k))
    }

    pub fn x(curve: &Arc<CurveSpec>) -> Self {
        let k = curve.field;
        FnElt::new(curve.clone(), RatFn::x(k), RatFn::zero(k))
    }

    pub fn y(curve: &Arc<CurveSpec>) -> Self {
        let k = curve.field;
        FnElt::new(curve.clone(), RatFn::zero(k), RatFn::one(k))
    }

    pub fn from_ratfn(curve: &Arc<CurveSpec>, f1: RatFn) -> Self {
        let k = curve.field;
        FnElt::new(curve.clone(), f1, RatFn::zero(k))
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.f2.is_zero() && self.f1.is_constant()
    }

    /// The constant value, if this element is one.
    pub fn constant_value(&self) -> Option<Scalar> {
        if !self.is_constant() {
            return None;
        }
        Some(self.f1.num.coeff(0))
    }

    /// x^3 + a2 x^2 + a4 x + a6 as a rational function; y^2 + (a1 x + a3) y
    /// equals this on the curve.
    fn rhs_cubic(&self) -> RatFn {
        let c = &self.curve;
        let k = c.field;
        RatFn::from_poly(Poly::from_coeffs(
            k,
            vec![c.a6.clone(), c.a4.clone(), c.a2.clone(), k.one()],
        ))
    }

    /// a1 x + a3.
    fn y_trace_coeff(&self) -> RatFn {
        let c = &self.curve;
        let k = c.field;
        RatFn::from_poly(Poly::from_coeffs(k, vec![c.a3.clone(), c.a1.clone()]))
    }

    pub fn add(&self, o: &FnElt) -> FnElt {
        self.assert_same_curve(o);
        FnElt::new(self.curve.clone(), &self.f1 + &o.f1, &self.f2 + &o.f2)
    }

    pub fn neg(&self) -> FnElt {
        FnElt::new(self.curve.clone(), -&self.f1, -&self.f2)
    }

    pub fn sub(&self, o: &FnElt) -> FnElt {
        self.assert_same_curve(o);
        FnElt::new(self.curve.clone(), &self.f1 - &o.f1, &self.f2 - &o.f2)
    }

    pub fn mul(&self, o: &FnElt) -> FnElt {
        self.assert_same_curve(o);
        // (f1 + f2 y)(g1 + g2 y) with y^2 = rhs - (a1 x + a3) y.
        let y2_free = &(&self.f1 * &o.f1) + &(&(&self.f2 * &o.f2) * &self.rhs_cubic());
        let y_part = &(&(&self.f1 * &o.f2) + &(&self.f2 * &o.f1))
            - &(&(&self.f2 * &o.f2) * &self.y_trace_coeff());
        FnElt::new(self.curve.clone(), y2_free, y_part)
    }

    pub fn scale(&self, a: &Scalar) -> FnElt {
        let c = RatFn::constant(a.clone());
        FnElt::new(self.curve.clone(), &self.f1 * &c, &self.f2 * &c)
    }

    /// The image under the hyperelliptic involution: y -> -y - a1 x - a3.
    pub fn conj(&self) -> FnElt {
        let adj = &self.f1 - &(&self.f2 * &self.y_trace_coeff());
        FnElt::new(self.curve.clone(), adj, -&self.f2)
    }

    /// Norm down to k(x): f * conj(f), always y-free.
    pub fn norm(&self) -> RatFn {
        let prod = self.mul(&self.conj());
        debug_assert!(prod.f2.is_zero(), "norm must be y-free");
        prod.f1
    }

    pub fn inv(&self) -> Result<FnElt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let ninv = n.inv()?;
        let cj = self.conj();
        Ok(FnElt::new(
            self.curve.clone(),
            &cj.f1 * &ninv,
            &cj.f2 * &ninv,
        ))
    }

    pub fn div(&self, o: &FnElt) -> Result<FnElt> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<FnElt> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FnElt::one(&self.curve);
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            n >>= 1;
        }
        Ok(acc)
    }

    /// Value at an affine point; poles and the point at infinity are
    /// rejected (expansion handles those).
    pub fn eval_affine(&self, pt: &CurvePoint) -> Result<Scalar> {
        match pt {
            CurvePoint::Infinity => Err(Error::DivisionByZero),
            CurvePoint::Affine(x0, y0) => {
                let a = self.f1.eval(x0)?;
                let b = self.f2.eval(x0)?;
                Ok(&a + &(&b * y0))
            }
        }
    }

    /// Substitutes another element for x in a rational function of x.
    pub fn substitute_ratfn(r: &RatFn, x_image: &FnElt) -> Result<FnElt> {
        let curve = &x_image.curve;
        let horner = |p: &Poly| -> FnElt {
            p.eval_with(
                FnElt::zero(curve),
                |a| FnElt::constant(curve, a.clone()),
                |u, v| u.add(v),
                |u| u.mul(x_image),
            )
        };
        let n = horner(&r.num);
        let d = horner(&r.den);
        n.div(&d)
    }

    /// Composition with translation by p: the result evaluates at Q to
    /// self's value at Q + p.
    pub fn translate(&self, p: &CurvePoint) -> Result<FnElt> {
        let (x0, y0) = match p {
            CurvePoint::Infinity => return Ok(self.clone()),
            CurvePoint::Affine(x0, y0) => (x0.clone(), y0.clone()),
        };
        self.curve.check_point(p)?;
        let curve = &self.curve;
        let k = curve.field;
        let x = FnElt::x(curve);
        let y = FnElt::y(curve);
        let c0 = |s: &Scalar| FnElt::constant(curve, s.clone());

        // Chord construction through the generic point (x, y) and p, valid
        // as an identity of rational maps.
        let dx = x.sub(&c0(&x0));
        let dxi = dx.inv()?;
        let lambda = y.sub(&c0(&y0)).mul(&dxi);
        let nu = c0(&y0).mul(&x).sub(&c0(&x0).mul(&y)).mul(&dxi);
        let a1 = c0(&curve.a1);
        let a2 = c0(&curve.a2);
        let a3 = c0(&curve.a3);
        let xim = lambda
            .mul(&lambda)
            .add(&a1.mul(&lambda))
            .sub(&a2)
            .sub(&x)
            .sub(&c0(&x0));
        let yim = lambda.add(&a1).mul(&xim).neg().sub(&nu).sub(&a3);
        debug_assert_eq!(k, xim.curve.field);

        let g1 = FnElt::substitute_ratfn(&self.f1, &xim)?;
        let g2 = FnElt::substitute_ratfn(&self.f2, &xim)?;
        Ok(g1.add(&g2.mul(&yim)))
    }

    /// The derivation dual to the invariant differential: it kills
    /// constants, sends x to 2y + a1 x + a3 and y to 3x^2 + 2 a2 x + a4
    /// - a1 y, and commutes with every translation.
    pub fn delta(&self) -> FnElt {
        let curve = &self.curve;
        let k = curve.field;
        let two = k.integer(2);
        let three = k.integer(3);
        let dx = FnElt::new(
            curve.clone(),
            RatFn::from_poly(Poly::from_coeffs(k, vec![curve.a3.clone(), curve.a1.clone()])),
            RatFn::constant(two.clone()),
        );
        let dy = FnElt::new(
            curve.clone(),
            RatFn::from_poly(Poly::from_coeffs(
                k,
                vec![curve.a4.clone(), &two * &curve.a2, three],
            )),
            RatFn::constant(-&curve.a1),
        );
        // delta(f1 + f2 y) = f1' dx + f2' dx y + f2 dy.
        let d1 = FnElt::from_ratfn(curve, self.f1.deriv()).mul(&dx);
        let d2 = FnElt::new(curve.clone(), RatFn::zero(k), self.f2.deriv()).mul(&dx);
        let d3 = FnElt::from_ratfn(curve, self.f2.clone()).mul(&dy);
        d1.add(&d2).add(&d3)
    }

    /// Exact order of vanishing at the point at infinity: v(x) = -2 and
    /// v(y) = -3, and the two basis parts always have opposite parities,
    /// so no cancellation is possible.
    pub fn order_at_infinity(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let mut v = i64::MAX;
        if !self.f1.is_zero() {
            v = v.min(-2 * self.f1.degree_at_infinity());
        }
        if !self.f2.is_zero() {
            v = v.min(-2 * self.f2.degree_at_infinity() - 3);
        }
        Ok(v)
    }

    pub fn encode(&self) -> String {
        crate::textio::encode_fnelt(self)
    }

    fn assert_same_curve(&self, o: &FnElt) {
        assert!(
            Arc::ptr_eq(&self.curve, &o.curve) || *self.curve == *o.curve,
            "function field elements live on different curves"
        );
    }
}

macro_rules! fnelt_binop {
    ($trait:ident, $method:ident, $call:ident) => {
        impl std::ops::$trait<&FnElt> for &FnElt {
            type Output = FnElt;
            fn $method(self, rhs: &FnElt) -> FnElt {
                self.$call(rhs)
            }
        }
        impl std::ops::$trait<FnElt> for FnElt {
            type Output = FnElt;
            fn $method(self, rhs: FnElt) -> FnElt {
                (&self).$call(&rhs)
            }
        }
    };
}

fnelt_binop!(Add, add, add);
fnelt_binop!(Sub, sub, sub);
fnelt_binop!(Mul, mul, mul);

impl std::ops::Neg for &FnElt {
    type Output = FnElt;
    fn neg(self) -> FnElt {
        FnElt::neg(self)
    }
}
