//! Orbital and panorbital residues, the reduced form, and the exact
//! summability decision.
//!
//! For f in the function field and the translation tau by s, the residues
//! are the obstruction to solving f = tau(g) - g:
//!
//! * the orbital residue at (orbit, k) adds up the order-k pole
//!   coefficients of f along the orbit;
//! * the two panorbital residues weigh the same coefficients by the
//!   structural constants d and e of the pinning; pano1 also equals a
//!   shift-weighted sum of honest residues of f against the invariant
//!   differential, and both computations are always run and compared.
//!
//! f is summable exactly when every residue vanishes, and the reduction
//! that proves it is constructive: `reduce` returns a reduced form fbar
//! supported on the pinned representatives together with a correction g0
//! satisfying fbar = f + tau(g0) - g0, an identity that is verified
//! exactly on every run.  When fbar = 0 the certificate g = -g0 solves
//! the original equation and is checked against f before being returned.

use crate::ancillary::Ancillary;
use crate::curve::{CurvePoint, CurveSpec};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::fnfield::FnElt;
use crate::localexp::pole_divisor_of;
use crate::orbits::{decompose_seeded, OrbitDecomposition};
use crate::pinning::{Pinning, PinningMode};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Knobs for the decision procedures.
#[derive(Clone, Debug)]
pub struct Config {
    /// Orbit separation searches run over |n| <= orbit_bound.
    pub orbit_bound: u32,
    /// How far the non-torsion certification of s goes.
    pub torsion_bound: u32,
    pub mode: PinningMode,
    /// Pin the multiples-of-s orbit at rep_zs_shift * s.
    pub rep_zs_shift: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            orbit_bound: 128,
            torsion_bound: 12,
            mode: PinningMode::TauCompatible,
            rep_zs_shift: 0,
        }
    }
}

/// Orbital residues of one orbit: values[k - 1] is the k-th residue.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitResidues {
    /// Decomposition anchor (O for the multiples-of-s orbit).
    pub anchor: CurvePoint,
    pub is_zs: bool,
    /// The pinned representative point of the orbit.
    pub rep: CurvePoint,
    pub values: Vec<Scalar>,
}

impl OrbitResidues {
    pub fn all_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// The full residue data of one function under one pinning.
#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub curve: Arc<CurveSpec>,
    pub s: CurvePoint,
    /// Pole divisor of f (positive multiplicities).
    pub poles: Divisor,
    pub orbits: OrbitDecomposition,
    /// Aligned with orbits.orbits.
    pub ores: Vec<OrbitResidues>,
    pub pano0: Scalar,
    pub pano1: Scalar,
    /// True when an orbit separation or torsion search saturated, so a
    /// negative verdict only holds within the bound.
    pub bound_caveat: bool,
}

impl ResidueReport {
    pub fn all_orbital_vanish(&self) -> bool {
        self.ores.iter().all(|o| o.all_zero())
    }

    pub fn all_vanish(&self) -> bool {
        self.all_orbital_vanish() && self.pano0.is_zero() && self.pano1.is_zero()
    }

    /// Structured-text rendering, one section per bracketed header.
    pub fn encode(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("elliptic-summer v{}\n", crate::VERSION));
        out.push_str("[divisor]\n");
        out.push_str(&format!("poles = {}\n", self.poles.encode()));
        out.push_str("[orbits]\n");
        out.push_str(&format!("bound = {}\n", self.orbits.bound));
        for (i, (orbit, ores)) in self.orbits.orbits.iter().zip(&self.ores).enumerate() {
            let kind = if orbit.is_zs { "zs" } else { "plain" };
            out.push_str(&format!(
                "o{}.kind = {}\no{}.anchor = {}\no{}.rep = {}\n",
                i,
                kind,
                i,
                orbit.rep.encode(),
                i,
                ores.rep.encode()
            ));
            let members: Vec<String> = orbit
                .members
                .iter()
                .map(|m| format!("{}@{}^{}", m.point.encode(), m.shift, m.mult))
                .collect();
            out.push_str(&format!("o{}.members = {}\n", i, members.join(", ")));
        }
        out.push_str("[ores]\n");
        for (i, ores) in self.ores.iter().enumerate() {
            for (j, v) in ores.values.iter().enumerate() {
                out.push_str(&format!("o{}.k{} = {}\n", i, j + 1, v.encode()));
            }
        }
        out.push_str("[pano]\n");
        out.push_str(&format!("pano0 = {}\n", self.pano0.encode()));
        out.push_str(&format!("pano1 = {}\n", self.pano1.encode()));
        out.push_str(&format!("bound_caveat = {}\n", self.bound_caveat));
        out
    }
}

/// The reduced form of f modulo differences tau(g) - g.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub report: ResidueReport,
    /// fbar: constant + pano1 * zeta(1,0) + the phi functions at the
    /// representatives, weighted by the orbital residues.
    pub reduced: FnElt,
    /// g0 with reduced = f + tau(g0) - g0, verified exactly.
    pub correction: FnElt,
}

#[derive(Clone, Debug)]
pub struct SummabilityCertificate {
    /// g with tau(g) - g = f.
    pub witness: FnElt,
    /// Always true on returned certificates; the identity is rechecked.
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub enum Summability {
    Summable(Box<Reduction>, SummabilityCertificate),
    NotSummable(Box<Reduction>),
    /// Residues obstruct within the search bound, but some search
    /// saturated; a larger bound could still merge orbits.
    NotSummableWithinBound(Box<Reduction>),
}

impl Summability {
    pub fn report(&self) -> &ResidueReport {
        match self {
            Summability::Summable(r, _) => &r.report,
            Summability::NotSummable(r) => &r.report,
            Summability::NotSummableWithinBound(r) => &r.report,
        }
    }

    pub fn is_summable(&self) -> bool {
        matches!(self, Summability::Summable(..))
    }

    pub fn certificate(&self) -> Option<&SummabilityCertificate> {
        match self {
            Summability::Summable(_, c) => Some(c),
            _ => None,
        }
    }

    pub fn encode(&self) -> String {
        let mut out = self.report().encode();
        out.push_str("[verdict]\n");
        let verdict = match self {
            Summability::Summable(..) => "summable",
            Summability::NotSummable(_) => "not-summable",
            Summability::NotSummableWithinBound(_) => "not-summable-within-bound",
        };
        out.push_str(&format!("summable = {}\n", verdict));
        out.push_str("[certificate]\n");
        match self {
            Summability::Summable(_, cert) => {
                out.push_str(&format!("witness = {}\n", cert.witness.encode()));
                out.push_str(&format!("verified = {}\n", cert.verified));
            }
            _ => out.push_str("witness = none\n"),
        }
        out
    }
}

/// Per-member local data shared by the residue and reduction passes.
struct MemberData {
    anchor: CurvePoint,
    /// Shift relative to the pinned representative.
    n: i64,
    /// coeffs[k - 1] = c_k at the member point, up to the pole order.
    coeffs: Vec<Scalar>,
}

struct Analysis {
    report: ResidueReport,
    members: Vec<MemberData>,
}

/// The summability engine: a pinning plus its cached ancillary data.
pub struct Summer {
    pub anc: Ancillary,
    pub orbit_bound: u32,
    /// True when the non-torsion certification of s is not exhaustive.
    torsion_caveat: bool,
}

impl Summer {
    /// Certifies s non-torsion (as far as the bound allows) and prepares
    /// the ancillary cache.  Over function fields the certification is
    /// necessarily bounded; the incomplete witness propagates into the
    /// bound caveat on every negative verdict.
    pub fn new(pinning: &Pinning, orbit_bound: u32, torsion_bound: u32) -> Result<Self> {
        let curve = pinning.curve.clone();
        let witness = curve.assert_non_torsion(&pinning.s, torsion_bound)?;
        Ok(Summer {
            anc: Ancillary::new(pinning),
            orbit_bound,
            torsion_caveat: !witness.complete,
        })
    }

    pub fn with_config(curve: &Arc<CurveSpec>, s: &CurvePoint, config: &Config) -> Result<Self> {
        let pinning = Pinning::new(curve, s, config.mode).with_rep_zs_shift(config.rep_zs_shift);
        Summer::new(&pinning, config.orbit_bound, config.torsion_bound)
    }

    pub fn pinning(&self) -> &Pinning {
        &self.anc.pinning
    }

    /// Orbit decomposition of a divisor under this pinning.  Anchors from
    /// earlier decompositions are reused as seeds and new ones recorded,
    /// so repeated runs agree on orbit identities and uniformizers.
    pub fn orbits_of(&mut self, d: &Divisor) -> Result<OrbitDecomposition> {
        let seeds = self.anc.anchors().to_vec();
        let orbits = decompose_seeded(d, &self.anc.pinning.s, self.orbit_bound, &seeds)?;
        for orbit in &orbits.orbits {
            self.anc.register_anchor(&orbit.rep);
        }
        Ok(orbits)
    }

    /// Residues plus the raw member coefficients behind them.
    fn analyze(&mut self, f: &FnElt) -> Result<Analysis> {
        let curve = self.anc.pinning.curve.clone();
        let field = curve.field;
        let s = self.anc.pinning.s.clone();
        let poles = if f.is_zero() {
            Divisor::zero(&curve)
        } else {
            pole_divisor_of(f)?
        };
        let orbits = self.orbits_of(&poles)?;

        let mut members = Vec::new();
        let mut ores = Vec::new();
        let mut pano1 = field.zero();
        let mut pano1_dual = field.zero();
        // pano0 starts from the constant term of f at O.
        let o = CurvePoint::Infinity;
        let mut pano0 = self.anc.pole_coeff(f, &o, 0, 0)?;

        for orbit in &orbits.orbits {
            let rep_shift = self.anc.pinning.rep_shift_for(&orbit.rep);
            let kmax = orbit.members.iter().map(|m| m.mult).max().unwrap_or(0) as usize;
            let mut sums = vec![field.zero(); kmax];
            for m in &orbit.members {
                let n = m.shift - rep_shift;
                let coeffs = self
                    .anc
                    .pole_coeffs(f, &orbit.rep, m.shift, m.mult as u32)?;
                for (k1, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let k = k1 as u32 + 1;
                    sums[k1] = &sums[k1] + c;
                    let d = self.anc.d(&orbit.rep, k)?;
                    let e = self.anc.e(&orbit.rep, n, k)?;
                    pano1 = &pano1 + &(&field.integer(n) * &(c * &d));
                    pano0 = &pano0 - &(c * &e);
                }
                // The dual pano1: shift-weighted residues of f against
                // the normalized invariant differential.
                if n != 0 {
                    let r = self.anc.point_residue(f, &orbit.rep, m.shift)?;
                    pano1_dual = &pano1_dual + &(&field.integer(n) * &r);
                }
                members.push(MemberData {
                    anchor: orbit.rep.clone(),
                    n,
                    coeffs,
                });
            }
            ores.push(OrbitResidues {
                anchor: orbit.rep.clone(),
                is_zs: orbit.is_zs,
                rep: self.anc.rep_point(&orbit.rep),
                values: sums,
            });
        }

        if pano1 != pano1_dual {
            return Err(Error::CrossCheckFailure(format!(
                "pano1 disagreement: structural {} vs differential {}",
                pano1.encode(),
                pano1_dual.encode()
            )));
        }
        // The d-weighted orbital residues always cancel.
        let mut balance = field.zero();
        for or in &ores {
            for (k1, v) in or.values.iter().enumerate() {
                let d = self.anc.d(&or.anchor, k1 as u32 + 1)?;
                balance = &balance + &(v * &d);
            }
        }
        if !balance.is_zero() {
            return Err(Error::CrossCheckFailure(format!(
                "d-weighted orbital residues sum to {}, want 0",
                balance.encode()
            )));
        }

        let report = ResidueReport {
            curve,
            s,
            poles,
            bound_caveat: orbits.hit_bound || self.torsion_caveat,
            orbits,
            ores,
            pano0,
            pano1,
        };
        Ok(Analysis { report, members })
    }

    /// The residue report of f.
    pub fn residues(&mut self, f: &FnElt) -> Result<ResidueReport> {
        Ok(self.analyze(f)?.report)
    }

    /// Reduces f modulo differences tau(g) - g to its normal form
    /// supported at the pinned representatives, with the correction g0
    /// and the exact identity reduced = f + tau(g0) - g0 verified.
    pub fn reduce(&mut self, f: &FnElt) -> Result<Reduction> {
        let analysis = self.analyze(f)?;
        let curve = self.anc.pinning.curve.clone();
        let field = curve.field;
        let mut g0 = FnElt::zero(&curve);

        // Concentrate every pole onto its representative: the telescoped
        // sums turning phi(., n, k) into phi(., 0, k).
        let mut ctilde: BTreeMap<i64, Scalar> = BTreeMap::new();
        for m in &analysis.members {
            for (k1, c) in m.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let k = k1 as u32 + 1;
                if m.n > 0 {
                    let mut acc = FnElt::zero(&curve);
                    for t in 1..=m.n {
                        acc = acc.add(&self.anc.phi(&m.anchor, t, k)?);
                    }
                    g0 = g0.add(&acc.scale(c));
                } else if m.n < 0 {
                    let mut acc = FnElt::zero(&curve);
                    for t in 0..-m.n {
                        acc = acc.add(&self.anc.phi(&m.anchor, -t, k)?);
                    }
                    g0 = g0.sub(&acc.scale(c));
                }
                let d = self.anc.d(&m.anchor, k)?;
                let w = c * &d;
                if !w.is_zero() {
                    let slot = ctilde.entry(m.n).or_insert_with(|| field.zero());
                    *slot = &*slot + &w;
                }
            }
        }
        // Trade the leftover zeta(n, 0) pieces for multiples of
        // zeta(1, 0); each swap is itself a telescoped difference.
        for (n, w) in &ctilde {
            if w.is_zero() {
                continue;
            }
            if *n >= 2 {
                let mut acc = FnElt::zero(&curve);
                for j in 2..=*n {
                    acc = acc.add(&self.anc.zeta(j, 1)?);
                }
                g0 = g0.add(&acc.scale(w));
            } else if *n <= -1 {
                let mut acc = FnElt::zero(&curve);
                for j in *n..=-1 {
                    acc = acc.sub(&self.anc.zeta(j + 1, 1)?);
                }
                g0 = g0.add(&acc.scale(w));
            }
        }

        // The reduced form straight from the residues.
        let report = &analysis.report;
        let mut reduced = FnElt::constant(&curve, report.pano0.clone());
        if !report.pano1.is_zero() {
            reduced = reduced.add(&self.anc.zeta10()?.scale(&report.pano1));
        }
        for or in &report.ores {
            for (k1, v) in or.values.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                reduced = reduced.add(&self.anc.phi(&or.anchor, 0, k1 as u32 + 1)?.scale(v));
            }
        }

        let check = f
            .add(&self.anc.pinning.shift_function(&g0, 1)?)
            .sub(&g0);
        if check != reduced {
            return Err(Error::CrossCheckFailure(
                "reduced form does not match f + tau(g0) - g0".into(),
            ));
        }
        Ok(Reduction {
            report: analysis.report,
            reduced,
            correction: g0,
        })
    }

    /// Decides whether f = tau(g) - g has a solution and produces the
    /// verified witness when it does.
    pub fn decide(&mut self, f: &FnElt) -> Result<Summability> {
        let reduction = self.reduce(f)?;
        if reduction.report.all_vanish() {
            let witness = reduction.correction.neg();
            let back = self
                .anc
                .pinning
                .shift_function(&witness, 1)?
                .sub(&witness);
            if back != *f {
                return Err(Error::CrossCheckFailure(
                    "witness fails tau(g) - g = f".into(),
                ));
            }
            let cert = SummabilityCertificate {
                witness,
                verified: true,
            };
            return Ok(Summability::Summable(Box::new(reduction), cert));
        }
        if reduction.report.bound_caveat {
            Ok(Summability::NotSummableWithinBound(Box::new(reduction)))
        } else {
            Ok(Summability::NotSummable(Box::new(reduction)))
        }
    }
}

/// The two sides of one pinning-change comparison.
#[derive(Clone, Debug)]
pub struct PinningChangeCheck {
    pub kind: &'static str,
    /// True when the exceptional branch (multiples-of-s orbit pinned at
    /// O) contributed its correction term.
    pub exceptional: bool,
    pub pano0_law: Scalar,
    pub pano0_direct: Scalar,
    pub pano1_law: Scalar,
    pub pano1_direct: Scalar,
}

/// Recomputes the residues of f under two pinnings of the same curve and
/// translation, transports the first report across the change with the
/// transformation laws, and asserts it matches the second.
pub fn pinning_change_check(
    f: &FnElt,
    first: &Pinning,
    second: &Pinning,
    orbit_bound: u32,
    torsion_bound: u32,
) -> Result<PinningChangeCheck> {
    if *first.curve != *second.curve || first.s != second.s {
        return Err(Error::ConstructionFailure(
            "pinning change needs a common curve and translation".into(),
        ));
    }
    let mut s1 = Summer::new(first, orbit_bound, torsion_bound)?;
    let mut s2 = Summer::new(second, orbit_bound, torsion_bound)?;
    let r1 = s1.residues(f)?;
    let r2 = s2.residues(f)?;
    let field = first.curve.field;

    let same_u = first.mode == second.mode && first.scale == second.scale && first.jet == second.jet;
    let mut rep_deltas: Vec<(CurvePoint, i64)> = Vec::new();
    for orbit in &r1.orbits.orbits {
        let a = first.rep_shift_for(&orbit.rep);
        let b = second.rep_shift_for(&orbit.rep);
        if a != b {
            rep_deltas.push((orbit.rep.clone(), b - a));
        }
    }
    // Also an off-support change of the multiples-of-s representative
    // matters (it moves the zeta normalization).
    if first.rep_zs_shift != second.rep_zs_shift
        && !rep_deltas.iter().any(|(p, _)| p.is_infinity())
    {
        rep_deltas.push((
            CurvePoint::Infinity,
            second.rep_zs_shift - first.rep_zs_shift,
        ));
    }
    let same_r = rep_deltas.is_empty();

    if !same_u && !same_r {
        // Split the change in two and let each law run separately.
        let mut mid = first.clone();
        mid.rep_zs_shift = second.rep_zs_shift;
        mid.rep_shifts = second.rep_shifts.clone();
        pinning_change_check(f, first, &mid, orbit_bound, torsion_bound)?;
        let tail = pinning_change_check(f, &mid, second, orbit_bound, torsion_bound)?;
        return Ok(PinningChangeCheck {
            kind: "composite",
            ..tail
        });
    }

    let (kind, exceptional, pano0_law, pano1_law) = if same_u && same_r {
        ("identity", false, r1.pano0.clone(), r1.pano1.clone())
    } else if same_u {
        // Representative change: the orbital residues stay put and the
        // pano residues absorb d- and e-weighted corrections.
        for (a, b) in r1.ores.iter().zip(&r2.ores) {
            if a.values != b.values {
                return Err(Error::CrossCheckFailure(
                    "orbital residues moved under a representative change".into(),
                ));
            }
        }
        let mut p1 = r1.pano1.clone();
        let mut p0 = r1.pano0.clone();
        for (anchor, delta) in &rep_deltas {
            if let Some(or) = r1.ores.iter().find(|o| o.anchor == *anchor) {
                for (k1, v) in or.values.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let k = k1 as u32 + 1;
                    let d = s1.anc.d(anchor, k)?;
                    p1 = &p1 - &(&field.integer(*delta) * &(v * &d));
                    let e = s1.anc.e(anchor, *delta, k)?;
                    p0 = &p0 + &(v * &e);
                }
            }
        }
        ("representatives", false, p0, p1)
    } else {
        // Uniformizer change: the laws only see the h coefficients at O.
        let o = CurvePoint::Infinity;
        let u1 = s1.anc.uni(&o, 0)?;
        let u1_inv = u1.inv()?;
        let h0 = s2.anc.pole_coeff(&u1_inv, &o, 0, 1)?;
        let h1 = s2.anc.pole_coeff(&u1_inv, &o, 0, 0)?;
        let p1 = &h0 * &r1.pano1;
        let mut p0 = &r1.pano0 - &(&h1 * &r1.pano1);
        let zs_rep_is_o = first.rep_zs_shift == 0;
        let mut exceptional = false;
        if zs_rep_is_o {
            if let Some(pos) = r1.orbits.orbits.iter().position(|orb| orb.is_zs) {
                exceptional = true;
                // Direct form: the shift in the constant terms of f along
                // the orbit, summed over the pole members.
                let orbit = r1.orbits.orbits[pos].clone();
                let mut corr = field.zero();
                for m in &orbit.members {
                    let c_new = s2.anc.pole_coeff(f, &o, m.shift, 0)?;
                    let c_old = s1.anc.pole_coeff(f, &o, m.shift, 0)?;
                    corr = &corr + &(&c_new - &c_old);
                }
                // Alternative form through the h expansion of the
                // parameter change, weighted by the orbital residues.
                let u2 = s2.anc.uni(&o, 0)?;
                let q = u2.div(&u1)?;
                let mut corr_alt = field.zero();
                for (k1, v) in r1.ores[pos].values.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let k = k1 as i64 + 1;
                    let qk = q.pow(k)?;
                    let hkk = s2.anc.pole_coeff(&qk, &o, 0, -k)?;
                    corr_alt = &corr_alt + &(&hkk * v);
                }
                if corr != corr_alt {
                    return Err(Error::CrossCheckFailure(format!(
                        "exceptional correction disagreement: direct {} vs h-series {}",
                        corr.encode(),
                        corr_alt.encode()
                    )));
                }
                p0 = &p0 + &corr;
            }
        }
        ("uniformizers", exceptional, p0, p1)
    };

    let check = PinningChangeCheck {
        kind,
        exceptional,
        pano0_law,
        pano0_direct: r2.pano0.clone(),
        pano1_law,
        pano1_direct: r2.pano1.clone(),
    };
    if check.pano0_law != check.pano0_direct || check.pano1_law != check.pano1_direct {
        return Err(Error::CrossCheckFailure(format!(
            "pinning change law mismatch ({}): pano0 {} vs {}, pano1 {} vs {}",
            check.kind,
            check.pano0_law.encode(),
            check.pano0_direct.encode(),
            check.pano1_law.encode(),
            check.pano1_direct.encode()
        )));
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;

    fn summer37() -> Summer {
        let e = curve37();
        let s = gen37();
        Summer::with_config(&e, &s, &Config::default()).unwrap()
    }

    fn qscal(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(n, d)
    }

    #[test]
    fn zeta_residues_match_the_model() {
        let mut sm = summer37();
        for (l, m) in [(1i64, 0i64), (2, 0), (3, 1), (-1, 0), (2, -1)] {
            let z = sm.anc.zeta(l, m).unwrap();
            let r = sm.residues(&z).unwrap();
            assert!(r.all_orbital_vanish(), "zeta({}, {})", l, m);
            assert!(r.pano0.is_zero(), "zeta({}, {})", l, m);
            assert_eq!(r.pano1, qi(l - m), "zeta({}, {})", l, m);
        }
    }

    #[test]
    fn phi_residues_match_the_model() {
        let e = curve389();
        let (s, q) = gens389();
        let mut sm =
            Summer::new(&Pinning::new(&e, &s, PinningMode::TauCompatible), 128, 12).unwrap();
        for k in 1..=3u32 {
            for n in [-1i64, 0, 2] {
                let f = sm.anc.phi(&q, n, k).unwrap();
                let r = sm.residues(&f).unwrap();
                assert!(r.pano1.is_zero(), "phi n={} k={}", n, k);
                // One unit of residue at (orbit of q, k), minus d at
                // (multiples of s, 1), nothing else.
                let d = sm.anc.d(&q, k).unwrap();
                for or in &r.ores {
                    for (j1, v) in or.values.iter().enumerate() {
                        let want = if !or.is_zs && j1 as u32 + 1 == k {
                            qi(1)
                        } else if or.is_zs && j1 == 0 {
                            -&d
                        } else {
                            qi(0)
                        };
                        assert_eq!(*v, want, "phi n={} k={} orbit zs={}", n, k, or.is_zs);
                    }
                }
                // pano0 vanishes: e-weights exactly cancel the constant.
                assert!(r.pano0.is_zero(), "phi n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn psi_is_summable_with_certificate() {
        let mut sm = summer37();
        for n in [-3i64, -1, 2, 4] {
            let f = sm.anc.psi(n).unwrap();
            match sm.decide(&f).unwrap() {
                Summability::Summable(_, cert) => {
                    assert!(cert.verified);
                    let g = cert.witness;
                    let back = sm.pinning().shift_function(&g, 1).unwrap().sub(&g);
                    assert_eq!(back, f, "psi({})", n);
                }
                other => panic!("psi({}) should be summable, got {:?}", n, other.report()),
            }
        }
    }

    #[test]
    fn x_minus_shift_is_summable() {
        let mut sm = summer37();
        let x = FnElt::x(&curve37());
        let shifted = sm.pinning().shift_function(&x, -1).unwrap();
        let f = x.sub(&shifted);
        let v = sm.decide(&f).unwrap();
        assert!(v.is_summable());
    }

    #[test]
    fn random_differences_have_no_residues() {
        let e = curve37();
        let mut sm = summer37();
        // g with poles spread over two orbits.
        let x = FnElt::x(&e);
        let y = FnElt::y(&e);
        let g = x
            .mul(&y)
            .add(&x.scale(&qscal(3, 7)))
            .add(&sm.pinning().shift_function(&x, 2).unwrap())
            .add(&x.mul(&y).div(&x.sub(&FnElt::constant(&e, qi(2)))).unwrap());
        let f = sm.pinning().shift_function(&g, 1).unwrap().sub(&g);
        let r = sm.residues(&f).unwrap();
        assert!(r.all_vanish());
        let v = sm.decide(&f).unwrap();
        assert!(v.is_summable());
        // The recovered witness differs from g by a constant at most.
        let cert = v.certificate().unwrap();
        let diff = cert.witness.sub(&g);
        assert!(diff.is_constant());
    }

    #[test]
    fn single_simple_pole_is_obstructed() {
        let mut sm = summer37();
        // zeta(1, 0) itself: pano1 = 1 blocks summability.
        let z = sm.anc.zeta10().unwrap();
        match sm.decide(&z).unwrap() {
            Summability::NotSummable(r) => {
                assert_eq!(r.report.pano1, qi(1));
                assert!(r.report.all_orbital_vanish());
            }
            other => panic!("zeta10 must not be summable: {:?}", other.report()),
        }
    }

    #[test]
    fn x_is_not_summable() {
        let mut sm = summer37();
        let x = FnElt::x(&curve37());
        match sm.decide(&x).unwrap() {
            Summability::NotSummable(r) => {
                // Double pole at O: the order-2 orbital residue survives.
                let zs = &r.report.ores[0];
                assert!(zs.is_zs);
                assert_eq!(zs.values.len(), 2);
                assert!(zs.values[1].is_one());
            }
            other => panic!("x must not be summable: {:?}", other.report()),
        }
    }

    #[test]
    fn reduction_identity_holds_for_mixed_input() {
        let e = curve37();
        let mut sm = summer37();
        let x = FnElt::x(&e);
        let y = FnElt::y(&e);
        // A deliberately messy f, all poles on the multiples of s:
        // x gives O twice, zeta(2, 0) gives 2s, y/x gives -s and O.
        let z = sm.anc.zeta(2, 0).unwrap();
        let f = x
            .scale(&qscal(1, 3))
            .add(&z)
            .add(&y.div(&x).unwrap())
            .add(&FnElt::constant(&e, qi(5)));
        let red = sm.reduce(&f).unwrap();
        // reduce() verifies reduced = f + tau(g0) - g0 internally; on top
        // of that, the reduced form may only keep poles at the orbit
        // representative O and the zeta anchor s.
        let s = gen37();
        use crate::localexp::valuation_at;
        for n in [-2i64, -1, 2, 3] {
            let q = e.scalar_mul(n, &s);
            assert!(
                valuation_at(&red.reduced, &q).unwrap() >= 0,
                "stray pole at {}s",
                n
            );
        }
        assert!(valuation_at(&red.reduced, &CurvePoint::Infinity).unwrap() < 0);
        assert!(!red.report.all_vanish());
    }

    #[test]
    fn decide_rejects_torsion_translation() {
        // (0, 0) is 3-torsion on y^2 + y = x^3.
        let e = CurveSpec::new(qq(), qi(0), qi(0), qi(1), qi(0), qi(0)).unwrap();
        let s = CurvePoint::Affine(qi(0), qi(0));
        match Summer::with_config(&e, &s, &Config::default()) {
            Err(Error::TorsionPoint(n)) => assert_eq!(n, 3),
            Err(other) => panic!("expected torsion rejection, got {:?}", other),
            Ok(_) => panic!("expected torsion rejection"),
        }
    }

    #[test]
    fn fp_curve_residues_and_caveat() {
        let e = curve_f5_ordinary();
        let s = gen_f5_ordinary();
        let mut sm = Summer::with_config(&e, &s, &Config::default()).unwrap();
        let x = FnElt::x(&e);
        match sm.decide(&x).unwrap() {
            // Non-torsion certification over F_p(t) is bounded, so the
            // negative verdict carries the caveat.
            Summability::NotSummableWithinBound(r) => {
                assert!(r.report.bound_caveat);
            }
            other => panic!("expected bounded verdict, got {:?}", other.report()),
        }
        let g = x.mul(&x).add(&FnElt::y(&e));
        let f = sm.pinning().shift_function(&g, 1).unwrap().sub(&g);
        let v = sm.decide(&f).unwrap();
        assert!(v.is_summable(), "difference must stay summable");
    }

    #[test]
    fn rep_change_law_holds() {
        let e = curve389();
        let (s, q) = gens389();
        // Poles: O twice and at -q, so both the multiples-of-s orbit and
        // a plain orbit move their representative.
        let minus_q = e.negate(&q);
        let base = Pinning::new(&e, &s, PinningMode::TauCompatible);
        let moved = Pinning::new(&e, &s, PinningMode::TauCompatible)
            .with_rep_zs_shift(1)
            .with_rep_shift(&minus_q, 1);
        let x = FnElt::x(&e);
        let y = FnElt::y(&e);
        let xq = x.sub(&FnElt::constant(&e, qi(1)));
        let f = y.div(&xq).unwrap().add(&x);
        let check = pinning_change_check(&f, &base, &moved, 64, 12).unwrap();
        assert_eq!(check.kind, "representatives");
        assert_eq!(check.pano0_law, check.pano0_direct);
        assert_eq!(check.pano1_law, check.pano1_direct);
    }

    #[test]
    fn uniformizer_rescale_law_holds() {
        let e = curve37();
        let s = gen37();
        let base = Pinning::new(&e, &s, PinningMode::TauCompatible);
        let scaled = base.clone().with_scale(&qscal(7, 2));
        let x = FnElt::x(&e);
        let z = {
            let mut a = Ancillary::new(&base);
            a.zeta(2, 0).unwrap()
        };
        let f = x.add(&z);
        let check = pinning_change_check(&f, &base, &scaled, 64, 12).unwrap();
        assert_eq!(check.kind, "uniformizers");
        assert!(check.exceptional, "poles on the multiples of s at rep O");
    }

    #[test]
    fn mode_change_law_holds_with_exceptional_branch() {
        let e = curve37();
        let s = gen37();
        let tau = Pinning::new(&e, &s, PinningMode::TauCompatible);
        let sup = Pinning::new(&e, &s, PinningMode::Supercompatible);
        let x = FnElt::x(&e);
        let y = FnElt::y(&e);
        let f = x.mul(&y).add(&x);
        let check = pinning_change_check(&f, &tau, &sup, 64, 12).unwrap();
        assert_eq!(check.kind, "uniformizers");
        assert!(check.exceptional);
    }

    #[test]
    fn mode_change_law_holds_off_the_zs_orbit() {
        let e = curve389();
        let (s, q) = gens389();
        let tau = Pinning::new(&e, &s, PinningMode::TauCompatible);
        let sup = Pinning::new(&e, &s, PinningMode::Supercompatible);
        // Double poles at q and -q plus their O contribution: on plain
        // orbits the two modes pick genuinely different uniformizers yet
        // the pano residues must come out the same (the h coefficients at
        // O are trivial here).
        let xq = FnElt::x(&e).sub(&FnElt::constant(&e, qi(1)));
        let f = FnElt::y(&e).div(&xq.mul(&xq)).unwrap();
        let q2 = crate::orbits::translate_point(&e, &q, &s, 1);
        let CurvePoint::Affine(x2, _) = &q2 else {
            panic!("q + s is affine")
        };
        let xq2 = FnElt::x(&e).sub(&FnElt::constant(&e, x2.clone()));
        let f = f.add(&FnElt::y(&e).div(&xq2).unwrap());
        let check = pinning_change_check(&f, &tau, &sup, 64, 12).unwrap();
        assert_eq!(check.kind, "uniformizers");
    }

    #[test]
    fn jet_change_exceptional_correction_is_nonzero() {
        let e = curve37();
        let s = gen37();
        let base = Pinning::new(&e, &s, PinningMode::TauCompatible);
        let warped = base.clone().with_jet(&[qscal(2, 1), qscal(-1, 3)]);
        // Double pole at O: reparameterizing the uniformizer family mixes
        // the order-2 coefficient into the constant term, so the
        // exceptional correction genuinely fires.
        let f = FnElt::x(&e).add(&{
            let mut a = Ancillary::new(&base);
            a.zeta(2, 0).unwrap()
        });
        let check = pinning_change_check(&f, &base, &warped, 64, 12).unwrap();
        assert_eq!(check.kind, "uniformizers");
        assert!(check.exceptional);
        // The law-transported pano0 moved away from the original value,
        // which only happens through a nonzero correction term.
        let mut s1 = Summer::new(&base, 64, 12).unwrap();
        let r1 = s1.residues(&f).unwrap();
        assert_ne!(&check.pano0_direct, &r1.pano0);
    }

    #[test]
    fn composite_pinning_change() {
        let e = curve37();
        let s = gen37();
        let a = Pinning::new(&e, &s, PinningMode::TauCompatible);
        let b = Pinning::new(&e, &s, PinningMode::Supercompatible).with_rep_zs_shift(1);
        let f = FnElt::x(&e);
        let check = pinning_change_check(&f, &a, &b, 64, 12).unwrap();
        assert_eq!(check.kind, "composite");
    }

    #[test]
    fn report_encoding_is_stable() {
        let mut sm = summer37();
        let f = FnElt::x(&curve37());
        let r1 = sm.residues(&f).unwrap().encode();
        let r2 = sm.residues(&f).unwrap().encode();
        assert_eq!(r1, r2);
        assert!(r1.starts_with("elliptic-summer v"));
        for section in ["[divisor]", "[orbits]", "[ores]", "[pano]"] {
            assert!(r1.contains(section), "missing {}", section);
        }
        let v = sm.decide(&f).unwrap().encode();
        assert!(v.contains("[verdict]") && v.contains("[certificate]"));
    }
}
