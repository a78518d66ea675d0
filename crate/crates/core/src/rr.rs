//! Riemann-Roch spaces L(D) = { f : div f + D >= 0 } with explicit,
//! canonically ordered bases.
//!
//! The construction clears affine poles with a product of vertical lines
//! g, so that candidates h = f g live in some L(N[O]).  That space has
//! the monomial basis { x^i y^j : 2i + 3j <= N, j <= 1 }, and membership
//! of h/g in L(D) becomes finitely many vanishing conditions on local
//! expansion coefficients of h, solved exactly.

use crate::curve::CurvePoint;
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::fnfield::FnElt;
use crate::linalg::{echelonize, Matrix};
use crate::localexp::{divisor_of, laurent_expand};

/// Monomials x^i y^j with pole order 2i + 3j <= n at infinity, ordered by
/// pole order.
fn infinity_monomials(curve: &std::sync::Arc<crate::curve::CurveSpec>, n: i64) -> Vec<FnElt> {
    let mut out: Vec<(i64, FnElt)> = Vec::new();
    let x = FnElt::x(curve);
    let y = FnElt::y(curve);
    for j in 0..=1i64 {
        let mut i = 0i64;
        while 2 * i + 3 * j <= n {
            let mut m = x.pow(i).expect("nonnegative power");
            if j == 1 {
                m = m.mul(&y);
            }
            out.push((2 * i + 3 * j, m));
            i += 1;
        }
    }
    out.sort_by_key(|(ord, _)| *ord);
    out.into_iter().map(|(_, m)| m).collect()
}

/// Basis of L(D), echelon-normalized over the monomial coordinates, so
/// the result is canonical for a given divisor.
pub fn rr_basis(d: &Divisor) -> Result<Vec<FnElt>> {
    let curve = &d.curve;
    let k = curve.field;
    let deg = d.degree();
    if deg < 0 {
        return Ok(Vec::new());
    }

    // Multiplier g: verticals through every affine point of the positive
    // part, with the full multiplicity.
    let mut g = FnElt::one(curve);
    let mut has_affine_poles = false;
    for (p, n) in d.iter() {
        if n <= 0 {
            continue;
        }
        if let CurvePoint::Affine(x0, _) = p {
            has_affine_poles = true;
            let line = FnElt::x(curve).sub(&FnElt::constant(curve, x0.clone()));
            g = g.mul(&line.pow(n)?);
        }
    }

    // Excess divisor: h = f g must satisfy div h >= E away from O, and
    // pole order at most N at O.
    let e = if has_affine_poles {
        divisor_of(&g)?.sub(d)
    } else {
        d.neg()
    };
    let n_bound = -e.multiplicity(&CurvePoint::Infinity);
    if n_bound < 0 {
        return Ok(Vec::new());
    }
    let monomials = infinity_monomials(curve, n_bound);

    // Vanishing conditions: at every affine point of E with positive
    // multiplicity r, the first r local coefficients of h are zero.
    let mut rows: Vec<Vec<crate::field::Scalar>> = Vec::new();
    for (p, r) in e.iter() {
        if p.is_infinity() || r <= 0 {
            continue;
        }
        let expansions: Vec<_> = monomials
            .iter()
            .map(|m| laurent_expand(m, p, r))
            .collect::<Result<_>>()?;
        for j in 0..r {
            rows.push(
                expansions
                    .iter()
                    .map(|s| s.coeff(j))
                    .collect::<Result<_>>()?,
            );
        }
    }

    let constraints = Matrix::from_rows_with_cols(k, rows, monomials.len())?;
    let kernel = echelonize(k, constraints.kernel_basis());

    // Dimension is pinned down by the genus-one Riemann-Roch theorem;
    // any mismatch means an upstream computation went wrong.
    let expect = if deg > 0 {
        deg as usize
    } else if d.is_principal() {
        1
    } else {
        0
    };
    if kernel.len() != expect {
        return Err(Error::CrossCheckFailure(format!(
            "L({}) has dimension {} but Riemann-Roch requires {}",
            d.encode(),
            kernel.len(),
            expect
        )));
    }

    let mut basis = Vec::with_capacity(kernel.len());
    for coeffs in kernel {
        let mut h = FnElt::zero(curve);
        for (c, m) in coeffs.iter().zip(&monomials) {
            if !c.is_zero() {
                h = h.add(&m.scale(c));
            }
        }
        basis.push(h.div(&g)?);
    }
    Ok(basis)
}

/// dim L(D); separate entry point so callers can ask for the number
/// without keeping the functions.
pub fn rr_dim(d: &Divisor) -> Result<usize> {
    Ok(rr_basis(d)?.len())
}
