//! Exact base fields: the rationals and rational function fields F_p(t).
//!
//! Every scalar in the library is a [`Scalar`], an exact element of one of
//! these fields.  Canonical forms are maintained eagerly: rationals are
//! reduced with positive denominator, F_p(t) elements are reduced fractions
//! of polynomials with monic denominator.  Equality of canonical forms is
//! structural equality.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Which base field the computation lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldConfig {
    /// The rational numbers, characteristic 0.
    Rationals,
    /// F_p(t), rational functions over the prime field of size `p`.
    PrimeFnField(u64),
}

impl FieldConfig {
    /// Validates the configuration; `p` must be prime.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldConfig::Rationals => Ok(()),
            FieldConfig::PrimeFnField(p) => {
                if is_prime(p) {
                    Ok(())
                } else {
                    Err(Error::NotPrime(p))
                }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldConfig::Rationals => 0,
            FieldConfig::PrimeFnField(p) => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            FieldConfig::Rationals => Scalar::Rat(BigRational::zero()),
            FieldConfig::PrimeFnField(p) => Scalar::FpT(FpRat::zero(p)),
        }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    /// The image of an integer in the field.
    pub fn integer(&self, n: i64) -> Scalar {
        match *self {
            FieldConfig::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldConfig::PrimeFnField(p) => Scalar::FpT(FpRat::from_int(p, n)),
        }
    }

    /// The generator t of F_p(t); errors over the rationals.
    pub fn gen_t(&self) -> Result<Scalar> {
        match *self {
            FieldConfig::Rationals => Err(Error::Unsupported(
                "the symbol t only exists over a function field".into(),
            )),
            FieldConfig::PrimeFnField(p) => Ok(Scalar::FpT(FpRat {
                num: FpPoly { p, c: vec![0, 1] },
                den: FpPoly::one(p),
            })),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- Arithmetic mod p ----

#[inline]
pub(crate) fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn invm(a: u64, p: u64) -> u64 {
    // Fermat inverse; p is prime and a != 0 mod p.
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

// ---- Polynomials over F_p ----

/// Dense univariate polynomial over F_p in the variable t.
/// Coefficients ascending, no trailing zeros; the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    pub fn constant(p: u64, a: u64) -> Self {
        let a = a % p;
        if a == 0 {
            Self::zero(p)
        } else {
            FpPoly { p, c: vec![a] }
        }
    }

    pub fn from_coeffs(p: u64, c: Vec<u64>) -> Self {
        let mut poly = FpPoly { p, c: c.into_iter().map(|x| x % p).collect() };
        poly.trim();
        poly
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports -1.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn leading(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for (i, item) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *item = addm(a, b, p);
        }
        let mut r = FpPoly { p, c };
        r.trim();
        r
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly { p: self.p, c: self.c.iter().map(|&a| if a == 0 { 0 } else { self.p - a }).collect() }
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = addm(c[i + j], mulm(a, b, p), p);
            }
        }
        let mut r = FpPoly { p, c };
        r.trim();
        r
    }

    pub fn mul_scalar(&self, a: u64) -> FpPoly {
        let a = a % self.p;
        if a == 0 {
            return FpPoly::zero(self.p);
        }
        let mut r = FpPoly { p: self.p, c: self.c.iter().map(|&b| mulm(a, b, self.p)).collect() };
        r.trim();
        r
    }

    /// Quotient and remainder; panics on zero divisor.
    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        if self.degree() < d.degree() {
            return (FpPoly::zero(p), self.clone());
        }
        let mut rem = self.c.clone();
        let dd = d.c.len();
        let lead_inv = invm(d.leading(), p);
        let mut quo = vec![0u64; rem.len() - dd + 1];
        for i in (0..quo.len()).rev() {
            let top = rem[i + dd - 1];
            if top == 0 {
                continue;
            }
            let q = mulm(top, lead_inv, p);
            quo[i] = q;
            for (j, &dc) in d.c.iter().enumerate() {
                rem[i + j] = subm(rem[i + j], mulm(q, dc, p), p);
            }
        }
        let mut quo = FpPoly { p, c: quo };
        let mut rem = FpPoly { p, c: rem };
        quo.trim();
        rem.trim();
        (quo, rem)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.mul_scalar(invm(self.leading(), self.p))
    }

    pub fn deriv(&self) -> FpPoly {
        if self.c.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let mut c = Vec::with_capacity(self.c.len() - 1);
        for (i, &a) in self.c.iter().enumerate().skip(1) {
            c.push(mulm(a, (i as u64) % self.p, self.p));
        }
        let mut r = FpPoly { p: self.p, c };
        r.trim();
        r
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = addm(mulm(acc, x, self.p), a, self.p);
        }
        acc
    }

    pub fn pow(&self, e: u64) -> FpPoly {
        let mut acc = FpPoly::one(self.p);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// x^e modulo self, by repeated squaring.
    pub fn pow_x_mod(&self, e: u64) -> FpPoly {
        let x = FpPoly { p: self.p, c: vec![0, 1] };
        let mut acc = FpPoly::one(self.p);
        let mut base = x.divrem(self).1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divrem(self).1;
            }
            base = base.mul(&base).divrem(self).1;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", encode_fp_poly(self))
    }
}

/// Renders an F_p[t] polynomial, descending powers, e.g. "t^2+4*t+3".
pub fn encode_fp_poly(poly: &FpPoly) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, &a) in poly.c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        if i == 0 {
            out.push_str(&a.to_string());
        } else {
            if a != 1 {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push('t');
            if i > 1 {
                out.push_str(&format!("^{}", i));
            }
        }
    }
    out
}

// ---- Rational functions over F_p ----

/// A reduced fraction num/den in F_p(t); den is monic, gcd(num, den) = 1,
/// and the zero element is 0/1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpRat {
    pub num: FpPoly,
    pub den: FpPoly,
}

impl FpRat {
    pub fn zero(p: u64) -> Self {
        FpRat { num: FpPoly::zero(p), den: FpPoly::one(p) }
    }

    pub fn from_int(p: u64, n: i64) -> Self {
        let m = n.rem_euclid(p as i64) as u64;
        FpRat { num: FpPoly::constant(p, m), den: FpPoly::one(p) }
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.p;
        FpRat { num, den: FpPoly::one(p) }
    }

    pub fn new(num: FpPoly, den: FpPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: FpPoly, den: FpPoly) -> Self {
        let p = num.p;
        if num.is_zero() {
            return FpRat::zero(p);
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lead_inv = invm(den.leading(), p);
        FpRat { num: num.mul_scalar(lead_inv), den: den.mul_scalar(lead_inv) }
    }

    pub fn p(&self) -> u64 {
        self.num.p
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &FpRat) -> FpRat {
        Self::reduced(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> FpRat {
        FpRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &FpRat) -> FpRat {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FpRat) -> FpRat {
        Self::reduced(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<FpRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// True when the element is a constant (degree-0 numerator over 1).
    pub fn is_constant(&self) -> bool {
        self.num.degree() <= 0 && self.den.degree() == 0
    }
}

impl fmt::Debug for FpRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", encode_fp_rat(self))
    }
}

fn needs_parens(s: &str) -> bool {
    s.contains('+') || s.contains('-') || s.contains('*')
}

pub fn encode_fp_rat(r: &FpRat) -> String {
    let n = encode_fp_poly(&r.num);
    if r.den.degree() == 0 {
        return n;
    }
    let d = encode_fp_poly(&r.den);
    let np = if needs_parens(&n) { format!("({})", n) } else { n };
    let dp = if needs_parens(&d) { format!("({})", d) } else { d };
    format!("{}/{}", np, dp)
}

// ---- Scalars ----

/// An exact element of the configured base field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    FpT(FpRat),
}

impl Scalar {
    pub fn field(&self) -> FieldConfig {
        match self {
            Scalar::Rat(_) => FieldConfig::Rationals,
            Scalar::FpT(r) => FieldConfig::PrimeFnField(r.p()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::FpT(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::FpT(r) => !r.is_zero() && r.num == r.den,
        }
    }

    pub fn from_rational(num: i64, den: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::FpT(r) => Scalar::FpT(r.inv()?),
        })
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let k = self.field();
        if e == 0 {
            return Ok(k.one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = k.one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            n >>= 1;
        }
        Ok(acc)
    }

    /// Canonical text form: rationals as "n" or "n/d" with positive d;
    /// F_p(t) elements as reduced fractions of descending-power polynomials.
    pub fn encode(&self) -> String {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::FpT(r) => encode_fp_rat(r),
        }
    }

    fn check_same(&self, o: &Scalar) {
        assert!(
            self.field() == o.field(),
            "scalar field mismatch: {:?} vs {:?}",
            self.field(),
            o.field()
        );
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.check_same(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::FpT(a), Scalar::FpT(b)) => Scalar::FpT(a.add(b)),
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.check_same(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::FpT(a), Scalar::FpT(b)) => Scalar::FpT(a.sub(b)),
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.check_same(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::FpT(a), Scalar::FpT(b)) => Scalar::FpT(a.mul(b)),
            _ => unreachable!(),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        assert!(!o.is_zero(), "scalar division by zero");
        self.check_same(o);
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a / b),
            (Scalar::FpT(a), Scalar::FpT(b)) => Scalar::FpT(a.mul(&b.inv().unwrap())),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::FpT(a) => Scalar::FpT(a.neg()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(n, d)
    }

    #[test]
    fn rational_canonical_form() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(-2, -4), q(1, 2));
        assert_eq!(q(2, -4).encode(), "-1/2");
        assert_eq!(q(6, 3).encode(), "2");
        assert_eq!(q(0, 5), FieldConfig::Rationals.zero());
    }

    #[test]
    fn fp_rat_canonical_form() {
        let k = FieldConfig::PrimeFnField(5);
        let t = k.gen_t().unwrap();
        // (2t + 2)/(4t + 4) reduces to 3 (the constant 1/2 mod 5).
        let num = &(&t + &t) + &k.integer(2);
        let den = &(&(&t + &t) + &(&t + &t)) + &k.integer(4);
        let r = &num / &den;
        assert_eq!(r, k.integer(3));
        // Denominator is normalized monic.
        let e = &k.one() / &(&(&t * &k.integer(2)) + &k.one());
        assert_eq!(e.encode(), "3/(t+3)");
    }

    #[test]
    fn prime_validation() {
        assert!(FieldConfig::PrimeFnField(5).validate().is_ok());
        assert_eq!(FieldConfig::PrimeFnField(6).validate(), Err(Error::NotPrime(6)));
        assert_eq!(FieldConfig::PrimeFnField(1).validate(), Err(Error::NotPrime(1)));
    }

    #[test]
    fn fp_poly_divrem_roundtrip() {
        let p = 7;
        let a = FpPoly::from_coeffs(p, vec![3, 0, 2, 5, 1]);
        let b = FpPoly::from_coeffs(p, vec![4, 1, 2]);
        let (quo, rem) = a.divrem(&b);
        assert_eq!(quo.mul(&b).add(&rem), a);
        assert!(rem.degree() < b.degree());
    }

    #[test]
    fn scalar_pow_negative() {
        let a = q(2, 3);
        assert_eq!(a.pow(-2).unwrap(), q(9, 4));
        assert_eq!(a.pow(0).unwrap(), q(1, 1));
    }

    fn arb_fp_scalar(p: u64) -> impl Strategy<Value = Scalar> {
        (proptest::collection::vec(0..p, 0..4), proptest::collection::vec(0..p, 1..4)).prop_map(
            move |(n, d)| {
                let num = FpPoly::from_coeffs(p, n);
                let mut den = FpPoly::from_coeffs(p, d);
                if den.is_zero() {
                    den = FpPoly::one(p);
                }
                Scalar::FpT(FpRat::new(num, den).unwrap())
            },
        )
    }

    fn arb_q_scalar() -> impl Strategy<Value = Scalar> {
        (-40i64..40, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn q_field_axioms(a in arb_q_scalar(), b in arb_q_scalar(), c in arb_q_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn fp_field_axioms(a in arb_fp_scalar(5), b in arb_fp_scalar(5), c in arb_fp_scalar(5)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn frobenius_is_additive_char5(a in arb_fp_scalar(5), b in arb_fp_scalar(5)) {
            let lhs = (&a + &b).pow(5).unwrap();
            let rhs = &a.pow(5).unwrap() + &b.pow(5).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn frobenius_is_additive_char2(a in arb_fp_scalar(2), b in arb_fp_scalar(2)) {
            let lhs = (&a + &b).pow(2).unwrap();
            let rhs = &a.pow(2).unwrap() + &b.pow(2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonical_encoding_unique(a in arb_fp_scalar(5), b in arb_fp_scalar(5)) {
            // Structural equality and encoded equality coincide.
            prop_assert_eq!(a == b, a.encode() == b.encode());
        }
    }
}
