//! Dense univariate polynomials over the base field, used for the x-line
//! of the function field and everywhere a coordinate polynomial is needed.

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients ascending; no trailing zeros; zero polynomial has empty
/// coefficients.  The field tag travels with the polynomial so that empty
/// polynomials still know their scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub field: FieldConfig,
    pub c: Vec<Scalar>,
}

impl Poly {
    pub fn zero(field: FieldConfig) -> Self {
        Poly { field, c: vec![] }
    }

    pub fn one(field: FieldConfig) -> Self {
        Poly::constant(field.one())
    }

    pub fn constant(a: Scalar) -> Self {
        let field = a.field();
        if a.is_zero() {
            Poly::zero(field)
        } else {
            Poly { field, c: vec![a] }
        }
    }

    /// The monomial x.
    pub fn x(field: FieldConfig) -> Self {
        Poly { field, c: vec![field.zero(), field.one()] }
    }

    pub fn from_coeffs(field: FieldConfig, c: Vec<Scalar>) -> Self {
        let mut poly = Poly { field, c };
        poly.trim();
        poly
    }

    fn trim(&mut self) {
        while self.c.last().map_or(false, |a| a.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn leading(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn scale(&self, a: &Scalar) -> Poly {
        if a.is_zero() {
            return Poly::zero(self.field);
        }
        let mut r = Poly { field: self.field, c: self.c.iter().map(|b| a * b).collect() };
        r.trim();
        r
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().unwrap();
        self.scale(&inv)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.degree() < d.degree() {
            return (Poly::zero(self.field), self.clone());
        }
        let mut rem = self.c.clone();
        let dd = d.c.len();
        let lead_inv = d.leading().inv().unwrap();
        let mut quo = vec![self.field.zero(); rem.len() - dd + 1];
        for i in (0..quo.len()).rev() {
            if rem[i + dd - 1].is_zero() {
                continue;
            }
            let q = &rem[i + dd - 1] * &lead_inv;
            for (j, dc) in d.c.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&q * dc);
            }
            quo[i] = q;
        }
        let mut quo = Poly { field: self.field, c: quo };
        let mut rem = Poly { field: self.field, c: rem };
        quo.trim();
        rem.trim();
        (quo, rem)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::ConstructionFailure("inexact polynomial division".into()))
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn deriv(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero(self.field);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| &self.field.integer(i as i64) * a)
            .collect();
        Poly::from_coeffs(self.field, c)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    /// Horner evaluation in any commutative ring that supports the closure
    /// operations; used to substitute function-field elements for x.
    pub fn eval_with<T: Clone>(
        &self,
        zero: T,
        lift: impl Fn(&Scalar) -> T,
        add: impl Fn(&T, &T) -> T,
        mul_x: impl Fn(&T) -> T,
    ) -> T {
        let mut acc = zero;
        for a in self.c.iter().rev() {
            acc = add(&mul_x(&acc), &lift(a));
        }
        acc
    }

    pub fn pow(&self, e: u64) -> Poly {
        let mut acc = Poly::one(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// x - a.
    pub fn linear_root(a: &Scalar) -> Poly {
        Poly::from_coeffs(a.field(), vec![-a, a.field().one()])
    }

    /// Numeric multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &Scalar) -> usize {
        let lin = Poly::linear_root(a);
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(&lin);
            if r.is_zero() && !cur.is_zero() {
                m += 1;
                cur = q;
            } else {
                return m;
            }
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::textio::encode_poly(self, "x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(&self.coeff(i) + &o.coeff(i));
        }
        Poly::from_coeffs(self.field, c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { field: self.field, c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(self.field, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(
            FieldConfig::Rationals,
            coeffs.iter().map(|&n| FieldConfig::Rationals.integer(n)).collect(),
        )
    }

    #[test]
    fn divrem_roundtrip() {
        let a = qp(&[1, 0, -3, 0, 2]);
        let b = qp(&[2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = &qp(&[-1, 1]) * &qp(&[2, 1]);
        let g = &qp(&[-1, 1]) * &qp(&[5, 3]);
        assert_eq!(f.gcd(&g), qp(&[-1, 1]));
    }

    #[test]
    fn root_multiplicity_counts() {
        let one = FieldConfig::Rationals.integer(1);
        let f = &(&qp(&[-1, 1]) * &qp(&[-1, 1])) * &qp(&[3, 1]);
        assert_eq!(f.root_multiplicity(&one), 2);
        assert_eq!(f.root_multiplicity(&FieldConfig::Rationals.integer(-3)), 1);
        assert_eq!(f.root_multiplicity(&FieldConfig::Rationals.integer(7)), 0);
    }

    #[test]
    fn derivative_char5() {
        let k = FieldConfig::PrimeFnField(5);
        // d/dx (x^5 + x^2) = 2x in characteristic 5.
        let f = Poly::from_coeffs(
            k,
            vec![k.zero(), k.zero(), k.one(), k.zero(), k.zero(), k.one()],
        );
        let d = f.deriv();
        assert_eq!(d, Poly::from_coeffs(k, vec![k.zero(), k.integer(2)]));
    }
}
