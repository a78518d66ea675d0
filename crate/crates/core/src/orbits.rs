//! Decomposition of divisor support into orbits of the translation
//! tau: P -> P + s.
//!
//! Two points lie in the same orbit when they differ by an integer
//! multiple of s.  Multiples are only searched up to a bound, so a
//! decomposition is always tagged with the bound it was computed under:
//! points farther apart than the bound allows are reported as separate
//! orbits, and downstream verdicts that would change if such orbits
//! merged must carry the caveat.

use crate::curve::{CurvePoint, CurveSpec};
use crate::divisor::Divisor;
use crate::error::Result;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitMember {
    pub point: CurvePoint,
    /// point = rep + shift * s.
    pub shift: i64,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    /// Anchor of the orbit.  For the orbit through the multiples of s
    /// this is O itself, whether or not O appears in the support.
    pub rep: CurvePoint,
    /// True for the orbit { n s }, which the residue theory treats
    /// separately.
    pub is_zs: bool,
    pub members: Vec<OrbitMember>,
}

#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub curve: Arc<CurveSpec>,
    pub s: CurvePoint,
    /// Search bound used for relating points; decompositions with
    /// different bounds are not comparable.
    pub bound: u32,
    /// The orbit of the multiples of s comes first when present.
    pub orbits: Vec<Orbit>,
    /// True when some membership search exhausted the bound without a
    /// match, so points placed in distinct orbits might actually be
    /// related by a shift beyond it.
    pub hit_bound: bool,
}

/// Table of the multiples n*s for |n| <= bound, keyed by encoding.  The
/// walk outward from 0 is lazy: over function fields the coordinates of
/// n*s grow quadratically with n, so multiples are only computed as far
/// as a search actually needs them.
pub struct MultipleTable {
    curve: Arc<CurveSpec>,
    s: CurvePoint,
    bound: u32,
    by_key: HashMap<(u8, String), i64>,
    pos: CurvePoint,
    neg: CurvePoint,
    reach: u32,
}

impl MultipleTable {
    pub fn build(curve: &Arc<CurveSpec>, s: &CurvePoint, bound: u32) -> Self {
        let mut by_key = HashMap::new();
        by_key.insert(CurvePoint::Infinity.cmp_key(), 0i64);
        MultipleTable {
            curve: curve.clone(),
            s: s.clone(),
            bound,
            by_key,
            pos: CurvePoint::Infinity,
            neg: CurvePoint::Infinity,
            reach: 0,
        }
    }

    /// Walks one step outward in both directions.  Inserting with
    /// `or_insert` keeps the smallest |n| for any collision; with s of
    /// infinite order there are none, but a torsion point slipping
    /// through keeps the table deterministic.
    fn grow(&mut self) {
        self.reach += 1;
        let n = self.reach as i64;
        self.pos = self.curve.add_points(&self.pos, &self.s);
        self.neg = self.curve.add_points(&self.neg, &self.curve.negate(&self.s));
        self.by_key.entry(self.pos.cmp_key()).or_insert(n);
        self.by_key.entry(self.neg.cmp_key()).or_insert(-n);
    }

    fn lookup_growing(&mut self, key: (u8, String)) -> Option<i64> {
        loop {
            if let Some(n) = self.by_key.get(&key) {
                return Some(*n);
            }
            if self.reach >= self.bound {
                return None;
            }
            self.grow();
        }
    }

    /// n with q = p + n*s and |n| <= bound, when one exists.
    pub fn shift_between(&mut self, p: &CurvePoint, q: &CurvePoint) -> Option<i64> {
        let diff = self.curve.add_points(q, &self.curve.negate(p));
        self.lookup_growing(diff.cmp_key())
    }

    /// n with q = n*s and |n| <= bound, when one exists.
    pub fn multiple_of_s(&mut self, q: &CurvePoint) -> Option<i64> {
        self.lookup_growing(q.cmp_key())
    }
}

/// Splits the support of d into tau-orbits, searching relative shifts up
/// to the bound.  s must have passed a non-torsion check.
pub fn decompose(d: &Divisor, s: &CurvePoint, bound: u32) -> Result<OrbitDecomposition> {
    decompose_seeded(d, s, bound, &[])
}

/// Like `decompose`, but points are matched against the seed anchors
/// first, so repeated runs under one pinning keep using the same orbit
/// anchors (and hence the same uniformizers) even when the anchor itself
/// is not in the support.  Seeded orbits keep the seed as anchor, so
/// member shifts can be negative.
pub fn decompose_seeded(
    d: &Divisor,
    s: &CurvePoint,
    bound: u32,
    seeds: &[CurvePoint],
) -> Result<OrbitDecomposition> {
    let curve = &d.curve;
    let mut table = MultipleTable::build(curve, s, bound);

    let mut zs_members: Vec<OrbitMember> = Vec::new();
    let mut seeded: Vec<(CurvePoint, Vec<(CurvePoint, i64, i64)>)> = seeds
        .iter()
        .filter(|p| !p.is_infinity())
        .map(|p| (p.clone(), Vec::new()))
        .collect();
    let mut others: Vec<Vec<(CurvePoint, i64, i64)>> = Vec::new();
    let mut hit_bound = false;

    for (p, mult) in d.iter() {
        if let Some(n) = table.multiple_of_s(p) {
            zs_members.push(OrbitMember {
                point: p.clone(),
                shift: n,
                mult,
            });
            continue;
        }
        // Not a multiple of s within the bound: that search saturated.
        hit_bound = true;
        let mut placed = false;
        for (anchor, group) in seeded.iter_mut() {
            if let Some(n) = table.shift_between(anchor, p) {
                group.push((p.clone(), n, mult));
                placed = true;
                break;
            } else {
                hit_bound = true;
            }
        }
        if !placed {
            for group in others.iter_mut() {
                let anchor = &group[0].0;
                if let Some(n) = table.shift_between(anchor, p) {
                    group.push((p.clone(), n, mult));
                    placed = true;
                    break;
                } else {
                    hit_bound = true;
                }
            }
        }
        if !placed {
            others.push(vec![(p.clone(), 0, mult)]);
        }
    }

    let mut orbits = Vec::new();
    if !zs_members.is_empty() {
        zs_members.sort_by_key(|m| m.shift);
        orbits.push(Orbit {
            rep: CurvePoint::Infinity,
            is_zs: true,
            members: zs_members,
        });
    }
    let mut plain: Vec<Orbit> = seeded
        .into_iter()
        .filter(|(_, group)| !group.is_empty())
        .map(|(rep, mut group)| {
            group.sort_by_key(|(_, n, _)| *n);
            Orbit {
                rep,
                is_zs: false,
                members: group
                    .into_iter()
                    .map(|(point, n, mult)| OrbitMember {
                        point,
                        shift: n,
                        mult,
                    })
                    .collect(),
            }
        })
        .collect();
    plain.extend(others.into_iter().map(|mut group| {
        // Anchor at the leftmost member so every shift is >= 0.
        let min = group.iter().map(|(_, n, _)| *n).min().unwrap();
        let rep = group
            .iter()
            .find(|(_, n, _)| *n == min)
            .map(|(p, _, _)| p.clone())
            .unwrap();
        group.sort_by_key(|(_, n, _)| *n);
        Orbit {
            rep,
            is_zs: false,
            members: group
                .into_iter()
                .map(|(point, n, mult)| OrbitMember {
                    point,
                    shift: n - min,
                    mult,
                })
                .collect(),
        }
    }));
    plain.sort_by_key(|o| o.rep.cmp_key());
    orbits.extend(plain);

    Ok(OrbitDecomposition {
        curve: curve.clone(),
        s: s.clone(),
        bound,
        orbits,
        hit_bound,
    })
}

impl OrbitDecomposition {
    pub fn zs_orbit(&self) -> Option<&Orbit> {
        self.orbits.first().filter(|o| o.is_zs)
    }

    /// Human-readable one-line-per-orbit description.
    pub fn encode(&self) -> String {
        let mut lines = Vec::new();
        for o in &self.orbits {
            let label = if o.is_zs { "Zs" } else { "orbit" };
            let members: Vec<String> = o
                .members
                .iter()
                .map(|m| format!("{}@{}:{}", m.point.encode(), m.shift, m.mult))
                .collect();
            lines.push(format!(
                "{} rep={} [{}]",
                label,
                o.rep.encode(),
                members.join(" ")
            ));
        }
        lines.join("\n")
    }
}

/// The raw shift search, exposed for callers outside divisor context:
/// finds n with q = p + n*s, |n| <= bound.
pub fn shift_between(
    curve: &Arc<CurveSpec>,
    p: &CurvePoint,
    q: &CurvePoint,
    s: &CurvePoint,
    bound: u32,
) -> Option<i64> {
    let mut table = MultipleTable::build(curve, s, bound);
    table.shift_between(p, q)
}

/// Convenience: evaluates p + n*s.
pub fn translate_point(
    curve: &Arc<CurveSpec>,
    p: &CurvePoint,
    s: &CurvePoint,
    n: i64,
) -> CurvePoint {
    let step = if n >= 0 { s.clone() } else { curve.negate(s) };
    let mut out = p.clone();
    for _ in 0..n.unsigned_abs() {
        out = curve.add_points(&out, &step);
    }
    out
}
