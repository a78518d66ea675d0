//! Rational functions in x over the base field, kept reduced with monic
//! denominator.

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use crate::poly::Poly;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn zero(field: FieldConfig) -> Self {
        RatFn { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: FieldConfig) -> Self {
        RatFn { num: Poly::one(field), den: Poly::one(field) }
    }

    pub fn from_poly(num: Poly) -> Self {
        let field = num.field;
        RatFn { num, den: Poly::one(field) }
    }

    pub fn constant(a: Scalar) -> Self {
        RatFn::from_poly(Poly::constant(a))
    }

    pub fn x(field: FieldConfig) -> Self {
        RatFn::from_poly(Poly::x(field))
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        let field = num.field;
        if num.is_zero() {
            return RatFn::zero(field);
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).unwrap();
        let den = den.div_exact(&g).unwrap();
        let lead_inv = den.leading().inv().unwrap();
        RatFn { num: num.scale(&lead_inv), den: den.scale(&lead_inv) }
    }

    pub fn field(&self) -> FieldConfig {
        self.num.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// Formal derivative d/dx.
    pub fn deriv(&self) -> RatFn {
        // (n/d)' = (n'd - nd')/d^2
        let n = &(&self.num.deriv() * &self.den) - &(&self.num * &self.den.deriv());
        Self::reduced(n, &self.den * &self.den)
    }

    /// Evaluates at a scalar; errors if the point is a pole.
    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.num.eval(x) / &d)
    }

    /// Order of vanishing at x = a (negative at poles); `None` for the
    /// zero function.
    pub fn order_at(&self, a: &Scalar) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let zn = self.num.root_multiplicity(a) as i64;
        let zd = self.den.root_multiplicity(a) as i64;
        Some(zn - zd)
    }

    /// Degree of the rational function viewed at x = infinity:
    /// deg(num) - deg(den).  Positive means a pole at infinity.
    pub fn degree_at_infinity(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.num.degree() - self.den.degree()
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::textio::encode_ratfn(self, "x"))
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        RatFn::reduced(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self + &(-o)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        RatFn::reduced(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, o: &RatFn) -> RatFn {
        assert!(!o.is_zero(), "rational function division by zero");
        RatFn::reduced(&self.num * &o.den, &self.den * &o.num)
    }
}
