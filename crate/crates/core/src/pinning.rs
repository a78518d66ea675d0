//! Uniformizer pinnings: a reproducible choice of local parameter at
//! every point that residue computations touch.
//!
//! Orbital residues are only meaningful relative to a family of
//! uniformizers that is compatible with the translation by s.  Two
//! families are provided:
//!
//! * tau-compatible: each decomposition anchor gets its standard local
//!   parameter and the rest of the orbit inherits it through translation,
//!   u at (anchor + n s) = u_anchor pulled back along P -> P - n s;
//! * super-compatible: every point gets the translate of the standard
//!   parameter x/y at O, so compatibility holds across orbits too.
//!
//! Every uniformizer can additionally be rescaled by a fixed nonzero
//! constant, which stays translation-compatible.
//!
//! Independent of the uniformizers, the pinning records a representative
//! for each orbit: rep_zs_shift * s for the multiples-of-s orbit and an
//! optional shift off the decomposition anchor for the others.  The
//! representative fixes which point of the orbit counts as shift zero in
//! the residue bookkeeping; it does not affect the uniformizers.

use crate::curve::{CurvePoint, CurveSpec};
use crate::error::Result;
use crate::field::Scalar;
use crate::fnfield::FnElt;
use crate::localexp::std_uniformizer;
use crate::orbits::translate_point;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PinningMode {
    TauCompatible,
    Supercompatible,
}

#[derive(Clone, Debug)]
pub struct Pinning {
    pub curve: Arc<CurveSpec>,
    pub s: CurvePoint,
    pub mode: PinningMode,
    /// The representative of the multiples-of-s orbit is rep_zs_shift * s.
    pub rep_zs_shift: i64,
    /// Representative overrides for other orbits, keyed by decomposition
    /// anchor: the representative is anchor + shift * s.
    pub rep_shifts: Vec<(CurvePoint, i64)>,
    /// Every pinned uniformizer is multiplied by this constant.
    pub scale: Scalar,
    /// Higher reparameterization of the whole family:
    /// u' = scale * u * (1 + jet[0] u + jet[1] u^2 + ...).  Applying the
    /// same jet at every point keeps the family translation-compatible.
    pub jet: Vec<Scalar>,
}

impl Pinning {
    pub fn new(curve: &Arc<CurveSpec>, s: &CurvePoint, mode: PinningMode) -> Self {
        let one = curve.field.one();
        Pinning {
            curve: curve.clone(),
            s: s.clone(),
            mode,
            rep_zs_shift: 0,
            rep_shifts: Vec::new(),
            scale: one,
            jet: Vec::new(),
        }
    }

    pub fn with_rep_zs_shift(mut self, n: i64) -> Self {
        self.rep_zs_shift = n;
        self
    }

    pub fn with_rep_shift(mut self, anchor: &CurvePoint, n: i64) -> Self {
        self.rep_shifts.retain(|(p, _)| p != anchor);
        self.rep_shifts.push((anchor.clone(), n));
        self
    }

    pub fn with_scale(mut self, lambda: &Scalar) -> Self {
        self.scale = lambda.clone();
        self
    }

    pub fn with_jet(mut self, coeffs: &[Scalar]) -> Self {
        self.jet = coeffs.to_vec();
        self
    }

    /// The pinned representative of the multiples-of-s orbit.
    pub fn rep_zs(&self) -> CurvePoint {
        translate_point(&self.curve, &CurvePoint::Infinity, &self.s, self.rep_zs_shift)
    }

    /// The representative shift for the orbit with the given decomposition
    /// anchor (O meaning the multiples-of-s orbit).
    pub fn rep_shift_for(&self, anchor: &CurvePoint) -> i64 {
        if anchor.is_infinity() {
            return self.rep_zs_shift;
        }
        self.rep_shifts
            .iter()
            .find(|(p, _)| p == anchor)
            .map(|(_, n)| *n)
            .unwrap_or(0)
    }

    /// Pulls a function back along P -> P + n s.
    pub fn shift_function(&self, f: &FnElt, n: i64) -> Result<FnElt> {
        let q = translate_point(&self.curve, &CurvePoint::Infinity, &self.s, n);
        f.translate(&q)
    }

    /// The pinned uniformizer at rep + shift * s.  For points on the
    /// multiples-of-s orbit pass rep = O and the absolute multiple as the
    /// shift; other orbits use their decomposition anchor.
    pub fn uniformizer(&self, rep: &CurvePoint, shift: i64) -> Result<FnElt> {
        let point = translate_point(&self.curve, rep, &self.s, shift);
        let u = match self.mode {
            PinningMode::Supercompatible => self.translated_infinity_param(&point)?,
            PinningMode::TauCompatible => {
                let anchor = if rep.is_infinity() { CurvePoint::Infinity } else { rep.clone() };
                let base = std_uniformizer(&self.curve, &anchor)?;
                // u at (anchor + shift s) is the pullback of u_anchor along
                // P -> P - shift s.
                self.shift_function(&base, -shift)?
            }
        };
        let mut out = u.clone();
        if !self.jet.is_empty() {
            let mut factor = FnElt::one(&self.curve);
            let mut pw = FnElt::one(&self.curve);
            for c in &self.jet {
                pw = pw.mul(&u);
                factor = factor.add(&pw.scale(c));
            }
            out = out.mul(&factor);
        }
        if !self.scale.is_one() {
            out = out.scale(&self.scale);
        }
        Ok(out)
    }

    /// T at -point applied to x/y; at O this is x/y itself.
    fn translated_infinity_param(&self, point: &CurvePoint) -> Result<FnElt> {
        let base = std_uniformizer(&self.curve, &CurvePoint::Infinity)?;
        if point.is_infinity() {
            return Ok(base);
        }
        base.translate(&self.curve.negate(point))
    }
}
