//! Elliptic curves in general Weierstrass form over an exact field, with
//! the chord-tangent group law and a torsion certificate for the
//! translation point.

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use std::fmt;
use std::sync::Arc;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over `field`.
#[derive(Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub field: FieldConfig,
    pub a1: Scalar,
    pub a2: Scalar,
    pub a3: Scalar,
    pub a4: Scalar,
    pub a6: Scalar,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine(Scalar, Scalar),
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "[{},{}]", x.encode(), y.encode()),
        }
    }
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    /// Canonical text form used for input echo and point ordering.
    pub fn encode(&self) -> String {
        match self {
            CurvePoint::Infinity => "O".into(),
            CurvePoint::Affine(x, y) => format!("[{},{}]", x.encode(), y.encode()),
        }
    }

    /// Total order on points: O first, then lexicographic on the encoded
    /// coordinates.  Used to pick deterministic orbit representatives.
    pub fn cmp_key(&self) -> (u8, String) {
        match self {
            CurvePoint::Infinity => (0, String::new()),
            CurvePoint::Affine(..) => (1, self.encode()),
        }
    }
}

impl CurveSpec {
    pub fn new(
        field: FieldConfig,
        a1: Scalar,
        a2: Scalar,
        a3: Scalar,
        a4: Scalar,
        a6: Scalar,
    ) -> Result<Arc<CurveSpec>> {
        field.validate()?;
        for a in [&a1, &a2, &a3, &a4, &a6] {
            if a.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let curve = CurveSpec { field, a1, a2, a3, a4, a6 };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Arc::new(curve))
    }

    /// Short form y^2 = x^3 + a4 x + a6.
    pub fn short(field: FieldConfig, a4: Scalar, a6: Scalar) -> Result<Arc<CurveSpec>> {
        let z = field.zero();
        CurveSpec::new(field, z.clone(), z.clone(), z, a4, a6)
    }

    pub fn b_invariants(&self) -> (Scalar, Scalar, Scalar, Scalar) {
        let four = self.field.integer(4);
        let two = self.field.integer(2);
        let b2 = &(&self.a1 * &self.a1) + &(&four * &self.a2);
        let b4 = &(&two * &self.a4) + &(&self.a1 * &self.a3);
        let b6 = &(&self.a3 * &self.a3) + &(&four * &self.a6);
        let b8 = &(&(&(&(&self.a1 * &self.a1) * &self.a6) + &(&(&four * &self.a2) * &self.a6))
            - &(&(&self.a1 * &self.a3) * &self.a4))
            + &(&(&self.a2 * &(&self.a3 * &self.a3)) - &(&self.a4 * &self.a4));
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> Scalar {
        let (b2, b4, b6, b8) = self.b_invariants();
        let k = self.field;
        let t1 = -&(&(&b2 * &b2) * &b8);
        let t2 = &k.integer(8) * &(&(&b4 * &b4) * &b4);
        let t3 = &k.integer(27) * &(&b6 * &b6);
        let t4 = &(&k.integer(9) * &b2) * &(&b4 * &b6);
        &(&(&t1 - &t2) - &t3) + &t4
    }

    pub fn c_invariants(&self) -> (Scalar, Scalar) {
        let (b2, b4, b6, _) = self.b_invariants();
        let k = self.field;
        let c4 = &(&b2 * &b2) - &(&k.integer(24) * &b4);
        let c6 = &(&(&k.integer(36) * &b2) * &b4)
            - &(&(&(&b2 * &b2) * &b2) + &(&k.integer(216) * &b6));
        (c4, c6)
    }

    pub fn j_invariant(&self) -> Result<Scalar> {
        let delta = self.discriminant();
        if delta.is_zero() {
            return Err(Error::SingularCurve);
        }
        let (c4, _) = self.c_invariants();
        Ok(&(&(&c4 * &c4) * &c4) / &delta)
    }

    /// Whether j lies in the constant field (always true over Q).
    pub fn j_is_constant(&self) -> Result<bool> {
        let j = self.j_invariant()?;
        Ok(match j {
            Scalar::Rat(_) => true,
            Scalar::FpT(r) => r.is_constant(),
        })
    }

    /// Left-hand side minus right-hand side of the Weierstrass equation.
    pub fn equation_defect(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let lhs = &(&(y * y) + &(&(&self.a1 * x) * y)) + &(&self.a3 * y);
        let x2 = x * x;
        let rhs = &(&(&(&x2 * x) + &(&self.a2 * &x2)) + &(&self.a4 * x)) + &self.a6;
        &lhs - &rhs
    }

    pub fn contains(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => self.equation_defect(x, y).is_zero(),
        }
    }

    pub fn check_point(&self, pt: &CurvePoint) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve)
        }
    }

    pub fn negate(&self, pt: &CurvePoint) -> CurvePoint {
        match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let ny = &(-y) - &(&(&self.a1 * x) + &self.a3);
                CurvePoint::Affine(x.clone(), ny)
            }
        }
    }

    pub fn add_points(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        use CurvePoint::*;
        let (x1, y1) = match p {
            Infinity => return q.clone(),
            Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            Infinity => return p.clone(),
            Affine(x, y) => (x, y),
        };
        if x1 == x2 {
            // Either inverses of one another or a doubling.
            let neg_y1 = match self.negate(p) {
                Affine(_, y) => y,
                Infinity => unreachable!(),
            };
            if *y2 == neg_y1 {
                return Infinity;
            }
        }
        let (lambda, nu) = if x1 == x2 {
            // Tangent line; the denominator is nonzero because the
            // two-torsion case was handled above.
            let den = &(&(&self.field.integer(2) * y1) + &(&self.a1 * x1)) + &self.a3;
            let x1sq = x1 * x1;
            let lam_num = &(&(&(&self.field.integer(3) * &x1sq)
                + &(&(&self.field.integer(2) * &self.a2) * x1))
                + &self.a4)
                - &(&self.a1 * y1);
            let nu_num = &(&(&(-&(&x1sq * x1)) + &(&self.a4 * x1))
                + &(&self.field.integer(2) * &self.a6))
                - &(&self.a3 * y1);
            (&lam_num / &den, &nu_num / &den)
        } else {
            let den = x2 - x1;
            ((&(y2 - y1) / &den), (&(&(y1 * x2) - &(y2 * x1)) / &den))
        };
        let x3 = &(&(&(&lambda * &lambda) + &(&self.a1 * &lambda)) - &self.a2) - &(x1 + x2);
        let y3 = -&(&(&(&(&lambda + &self.a1) * &x3) + &nu) + &self.a3);
        Affine(x3, y3)
    }

    pub fn sub_points(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        self.add_points(p, &self.negate(q))
    }

    pub fn scalar_mul(&self, n: i64, p: &CurvePoint) -> CurvePoint {
        if n == 0 || p.is_infinity() {
            return CurvePoint::Infinity;
        }
        let base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut acc = CurvePoint::Infinity;
        let mut b = base;
        let mut m = n.unsigned_abs();
        loop {
            if m & 1 == 1 {
                acc = self.add_points(&acc, &b);
            }
            m >>= 1;
            if m == 0 {
                break;
            }
            b = self.add_points(&b, &b);
        }
        acc
    }

    /// Certifies that `s` has infinite order by checking n*s != O for
    /// n = 1..=bound.  Over Q a bound of 12 is a complete decision by the
    /// uniform torsion bound for rational elliptic curves; over F_p(t) the
    /// check is a semi-decision and the caller records the bound used.
    pub fn assert_non_torsion(&self, s: &CurvePoint, bound: u32) -> Result<NonTorsionWitness> {
        self.check_point(s)?;
        let mut acc = CurvePoint::Infinity;
        for n in 1..=bound {
            acc = self.add_points(&acc, s);
            if acc.is_infinity() {
                return Err(Error::TorsionPoint(n));
            }
        }
        let complete = self.field == FieldConfig::Rationals && bound >= 12;
        Ok(NonTorsionWitness { bound, complete })
    }
}

/// Result of the bounded torsion check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonTorsionWitness {
    pub bound: u32,
    /// True when the bound certifies infinite order outright (rationals
    /// with bound >= 12).
    pub complete: bool,
}

impl fmt::Debug for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "curve[{},{},{},{},{}]",
            self.a1.encode(),
            self.a2.encode(),
            self.a3.encode(),
            self.a4.encode(),
            self.a6.encode()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> FieldConfig {
        FieldConfig::Rationals
    }

    fn qi(n: i64) -> Scalar {
        k().integer(n)
    }

    use crate::testutil::curve37;

    fn pt(x: i64, y: i64) -> CurvePoint {
        CurvePoint::Affine(qi(x), qi(y))
    }

    #[test]
    fn identity_laws() {
        let e = curve37();
        let p = pt(0, 0);
        assert_eq!(e.add_points(&p, &CurvePoint::Infinity), p);
        assert_eq!(e.add_points(&CurvePoint::Infinity, &p), p);
        assert_eq!(e.add_points(&p, &e.negate(&p)), CurvePoint::Infinity);
    }

    #[test]
    fn doubling_generator() {
        // Doubling (0,0) uses tangent slope -1 and lands on (1,0).
        let e = curve37();
        assert_eq!(e.add_points(&pt(0, 0), &pt(0, 0)), pt(1, 0));
    }

    #[test]
    fn chord_addition() {
        // (0,0) + (1,0) has chord slope 0 and lands on (-1,-1).
        let e = curve37();
        assert_eq!(e.add_points(&pt(0, 0), &pt(1, 0)), pt(-1, -1));
    }

    #[test]
    fn negation() {
        let e = curve37();
        assert_eq!(e.negate(&pt(0, 0)), pt(0, -1));
        assert_eq!(e.negate(&CurvePoint::Infinity), CurvePoint::Infinity);
        // Involution on a sample of multiples.
        let s = pt(0, 0);
        for n in 1..8 {
            let p = e.scalar_mul(n, &s);
            assert_eq!(e.negate(&e.negate(&p)), p);
            assert!(e.contains(&p));
        }
    }

    #[test]
    fn scalar_mul_matches_repeated_addition() {
        let e = curve37();
        let s = pt(0, 0);
        let mut acc = CurvePoint::Infinity;
        for n in 1..=20 {
            acc = e.add_points(&acc, &s);
            assert_eq!(e.scalar_mul(n, &s), acc, "n = {}", n);
            assert_eq!(e.scalar_mul(-n, &s), e.negate(&acc));
        }
    }

    #[test]
    fn scalar_mul_additivity() {
        let e = curve37();
        let s = pt(0, 0);
        for m in -6i64..=6 {
            for n in -6i64..=6 {
                let lhs = e.scalar_mul(m + n, &s);
                let rhs = e.add_points(&e.scalar_mul(m, &s), &e.scalar_mul(n, &s));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn group_axioms_random_triples() {
        let e = curve37();
        let s = pt(0, 0);
        // Associativity and commutativity across a grid of multiples.
        let points: Vec<_> = (-5i64..=5).map(|n| e.scalar_mul(n, &s)).collect();
        for (i, p) in points.iter().enumerate() {
            for (j, q) in points.iter().enumerate() {
                let pq = e.add_points(p, q);
                assert_eq!(pq, e.add_points(q, p));
                assert!(e.contains(&pq));
                for r in points.iter().skip((i + j) % 3) {
                    assert_eq!(
                        e.add_points(&pq, r),
                        e.add_points(p, &e.add_points(q, r))
                    );
                }
            }
        }
    }

    #[test]
    fn non_torsion_certificate() {
        let e = curve37();
        let w = e.assert_non_torsion(&pt(0, 0), 12).unwrap();
        assert!(w.complete);
        assert_eq!(
            e.assert_non_torsion(&CurvePoint::Infinity, 12),
            Err(Error::TorsionPoint(1))
        );
        // (0,0) is two-torsion on y^2 = x^3 - x.
        let e2 = CurveSpec::short(k(), qi(-1), qi(0)).unwrap();
        assert_eq!(
            e2.assert_non_torsion(&pt(0, 0), 12),
            Err(Error::TorsionPoint(2))
        );
    }

    #[test]
    fn j_invariants_of_model_curves() {
        let e1 = CurveSpec::short(k(), qi(1), qi(0)).unwrap();
        assert_eq!(e1.j_invariant().unwrap(), qi(1728));
        let e2 = CurveSpec::short(k(), qi(0), qi(1)).unwrap();
        assert_eq!(e2.j_invariant().unwrap(), qi(0));
        // Formula-chain oracle: c4^3 - c6^2 = 1728 * discriminant, so
        // j = c4^3/disc agrees with 1728*c4^3/(c4^3 - c6^2).
        let e = curve37();
        let (c4, c6) = e.c_invariants();
        let c4cubed = &(&c4 * &c4) * &c4;
        let c6sq = &c6 * &c6;
        let disc = e.discriminant();
        assert_eq!(&c4cubed - &c6sq, &qi(1728) * &disc);
        assert_eq!(e.j_invariant().unwrap(), &c4cubed / &disc);
    }

    #[test]
    fn singular_curve_rejected() {
        // y^2 = x^3 is a cusp.
        assert_eq!(
            CurveSpec::short(k(), qi(0), qi(0)).err(),
            Some(Error::SingularCurve)
        );
    }

    #[test]
    fn curve_equation_exact_after_addition() {
        let e = curve37();
        let s = pt(0, 0);
        let mut p = s.clone();
        for _ in 0..10 {
            p = e.add_points(&p, &s);
            assert!(e.contains(&p));
        }
    }

    #[test]
    fn char5_function_field_curve() {
        let kf = FieldConfig::PrimeFnField(5);
        let t = kf.gen_t().unwrap();
        // y^2 = x^3 + x + t^2 carries the point (0, t).
        let e = CurveSpec::short(kf, kf.one(), &t * &t).unwrap();
        let p = CurvePoint::Affine(kf.zero(), t.clone());
        assert!(e.contains(&p));
        let w = e.assert_non_torsion(&p, 8).unwrap();
        assert!(!w.complete);
        let two_p = e.scalar_mul(2, &p);
        assert!(e.contains(&two_p));
    }
}
