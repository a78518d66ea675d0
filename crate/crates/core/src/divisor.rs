//! Divisors on a curve and explicit functions with prescribed principal
//! divisors.

use crate::curve::{CurvePoint, CurveSpec};
use crate::error::{Error, Result};
use crate::fnfield::FnElt;
use crate::field::Scalar;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A formal Z-linear combination of curve points, stored sparsely with a
/// deterministic point order (infinity first, then affine points by
/// encoding).
#[derive(Clone, PartialEq)]
pub struct Divisor {
    pub curve: Arc<CurveSpec>,
    entries: BTreeMap<(u8, String), (CurvePoint, i64)>,
}

impl std::fmt::Debug for Divisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl Divisor {
    pub fn zero(curve: &Arc<CurveSpec>) -> Self {
        Divisor {
            curve: curve.clone(),
            entries: BTreeMap::new(),
        }
    }

    pub fn from_points(
        curve: &Arc<CurveSpec>,
        points: &[(CurvePoint, i64)],
    ) -> Result<Self> {
        let mut d = Divisor::zero(curve);
        for (p, n) in points {
            d.add_point(p, *n)?;
        }
        Ok(d)
    }

    pub fn single(curve: &Arc<CurveSpec>, p: &CurvePoint, n: i64) -> Result<Self> {
        Divisor::from_points(curve, &[(p.clone(), n)])
    }

    pub fn add_point(&mut self, p: &CurvePoint, n: i64) -> Result<()> {
        self.curve.check_point(p)?;
        if n == 0 {
            return Ok(());
        }
        let key = p.cmp_key();
        let entry = self.entries.entry(key).or_insert_with(|| (p.clone(), 0));
        entry.1 += n;
        if entry.1 == 0 {
            self.entries.remove(&p.cmp_key());
        }
        Ok(())
    }

    pub fn multiplicity(&self, p: &CurvePoint) -> i64 {
        self.entries.get(&p.cmp_key()).map(|(_, n)| *n).unwrap_or(0)
    }

    /// Entries in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&CurvePoint, i64)> {
        self.entries.values().map(|(p, n)| (p, *n))
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|(_, n)| *n > 0)
    }

    pub fn degree(&self) -> i64 {
        self.entries.values().map(|(_, n)| n).sum()
    }

    pub fn neg(&self) -> Divisor {
        let mut d = self.clone();
        for v in d.entries.values_mut() {
            v.1 = -v.1;
        }
        d
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in o.iter() {
            d.add_point(p, n).expect("points already validated");
        }
        d
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.neg())
    }

    pub fn scale(&self, n: i64) -> Divisor {
        if n == 0 {
            return Divisor::zero(&self.curve);
        }
        let mut d = self.clone();
        for v in d.entries.values_mut() {
            v.1 *= n;
        }
        d
    }

    /// The divisor with every point translated by p.
    pub fn translate(&self, p: &CurvePoint) -> Divisor {
        let mut d = Divisor::zero(&self.curve);
        for (q, n) in self.iter() {
            let moved = self.curve.add_points(q, p);
            d.add_point(&moved, n).expect("sum of curve points");
        }
        d
    }

    /// Only the entries with positive (resp. negative) coefficient.
    pub fn positive_part(&self) -> Divisor {
        let mut d = Divisor::zero(&self.curve);
        for (p, n) in self.iter() {
            if n > 0 {
                d.add_point(p, n).unwrap();
            }
        }
        d
    }

    pub fn negative_part(&self) -> Divisor {
        self.neg().positive_part()
    }

    /// The group-law sum of the points with multiplicity; a degree-zero
    /// divisor is principal exactly when this lands on the identity.
    pub fn ev_sum(&self) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        for (p, n) in self.iter() {
            let term = self.curve.scalar_mul(n, p);
            acc = self.curve.add_points(&acc, &term);
        }
        acc
    }

    pub fn is_principal(&self) -> bool {
        self.degree() == 0 && self.ev_sum().is_infinity()
    }

    pub fn encode(&self) -> String {
        if self.entries.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (p, n) in self.iter() {
            if out.is_empty() {
                if n < 0 {
                    out.push_str("-");
                }
            } else {
                out.push_str(if n < 0 { " - " } else { " + " });
            }
            out.push_str(&format!("{}*{}", n.abs(), p.encode()));
        }
        out
    }
}

/// The vertical line function x - x(p); its divisor is
/// [p] + [-p] - 2[O].  Rejects the point at infinity.
pub fn vertical(curve: &Arc<CurveSpec>, p: &CurvePoint) -> Result<FnElt> {
    match p {
        CurvePoint::Infinity => Err(Error::ConstructionFailure(
            "no vertical line through the point at infinity".into(),
        )),
        CurvePoint::Affine(x0, _) => {
            let x = FnElt::x(curve);
            Ok(x.sub(&FnElt::constant(curve, x0.clone())))
        }
    }
}

/// The chord or tangent function y - lambda x - nu through p and q; its
/// divisor is [p] + [q] + [-(p+q)] - 3[O].  Requires p + q != O and both
/// points affine.
pub fn chord(curve: &Arc<CurveSpec>, p: &CurvePoint, q: &CurvePoint) -> Result<FnElt> {
    let (x1, y1) = match p {
        CurvePoint::Affine(x, y) => (x, y),
        CurvePoint::Infinity => {
            return Err(Error::ConstructionFailure("chord needs affine points".into()))
        }
    };
    let (x2, y2) = match q {
        CurvePoint::Affine(x, y) => (x, y),
        CurvePoint::Infinity => {
            return Err(Error::ConstructionFailure("chord needs affine points".into()))
        }
    };
    let lambda: Scalar;
    if x1 == x2 {
        if *q == curve.negate(p) {
            return Err(Error::ConstructionFailure(
                "chord through opposite points degenerates to a vertical".into(),
            ));
        }
        // Tangent at a non-2-torsion point.
        let num = &(&(&curve.field.integer(3) * &(x1 * x1))
            + &(&(&curve.field.integer(2) * &curve.a2) * x1))
            + &(&curve.a4 - &(&curve.a1 * y1));
        let den = &(&(&curve.field.integer(2) * y1) + &(&curve.a1 * x1)) + &curve.a3;
        lambda = &num / &den;
    } else {
        lambda = &(y2 - y1) / &(x2 - x1);
    }
    let nu = y1 - &(&lambda * x1);
    let x = FnElt::x(curve);
    let y = FnElt::y(curve);
    Ok(y
        .sub(&x.mul(&FnElt::constant(curve, lambda)))
        .sub(&FnElt::constant(curve, nu)))
}

/// Constructs the function with divisor exactly `d`, for principal `d`,
/// normalized so its expansion at infinity in the parameter x/y has
/// leading coefficient 1.  Chords and verticals each carry that
/// normalization already, so their products and quotients do too.
pub fn principal_function(d: &Divisor) -> Result<FnElt> {
    let curve = &d.curve;
    if d.degree() != 0 {
        return Err(Error::NotPrincipal(format!(
            "degree {} != 0 for {}",
            d.degree(),
            d.encode()
        )));
    }
    let mut f = FnElt::one(curve);
    let mut work: BTreeMap<(u8, String), (CurvePoint, i64)> = d
        .entries
        .iter()
        .filter(|(_, (p, _))| !p.is_infinity())
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let mut o_coeff = d.multiplicity(&CurvePoint::Infinity);

    // Repeatedly combine two affine points of the same sign:
    // [p] + [q] = [p + q] + [O] + div(chord/vertical).
    loop {
        let mut combined = false;
        for sign in [1i64, -1] {
            let pts: Vec<CurvePoint> = work
                .values()
                .filter(|(_, n)| n.signum() == sign)
                .map(|(p, _)| p.clone())
                .collect();
            let total: i64 = work
                .values()
                .filter(|(_, n)| n.signum() == sign)
                .map(|(_, n)| n.abs())
                .sum();
            if total < 2 {
                continue;
            }
            let p = pts[0].clone();
            let q = if work[&p.cmp_key()].1.abs() >= 2 {
                p.clone()
            } else {
                pts[1].clone()
            };
            // h has divisor [p] + [q] - [p + q] - [O] (with the reduced
            // point dropped when p + q = O).
            let sum = curve.add_points(&p, &q);
            let h = if q == curve.negate(&p) {
                vertical(curve, &p)?
            } else {
                let line = chord(curve, &p, &q)?;
                if sum.is_infinity() {
                    line
                } else {
                    line.div(&vertical(curve, &sum)?)?
                }
            };
            let bump = |pt: &CurvePoint, delta: i64, work: &mut BTreeMap<_, _>| {
                let e = work
                    .entry(pt.cmp_key())
                    .or_insert_with(|| (pt.clone(), 0));
                e.1 += delta;
                if e.1 == 0 {
                    work.remove(&pt.cmp_key());
                }
            };
            bump(&p, -sign, &mut work);
            bump(&q, -sign, &mut work);
            if sum.is_infinity() {
                // The vertical has divisor [p] + [q] - 2[O].
                o_coeff += sign;
            } else {
                bump(&sum, sign, &mut work);
            }
            o_coeff += sign;
            f = if sign > 0 { f.mul(&h) } else { f.div(&h)? };
            combined = true;
            break;
        }
        if !combined {
            break;
        }
    }

    // What remains is at most one simple affine point of each sign; any
    // leftover means the original divisor had a nonzero group-law sum.
    if work.is_empty() && o_coeff == 0 {
        Ok(f)
    } else {
        Err(Error::NotPrincipal(d.encode()))
    }
}
