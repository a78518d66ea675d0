//! Exact root extraction and square roots in the base field.
//!
//! Over Q, roots are found by Hensel lifting modulo a well-chosen small
//! prime followed by rational reconstruction; every candidate is verified
//! by exact evaluation, so reconstruction can never produce a false root.
//! Over F_p(t), candidates come from the rational root theorem applied in
//! F_p[t], which requires factoring the extreme coefficients; the factor
//! engine is squarefree decomposition, distinct-degree splitting, and
//! Cantor-Zassenhaus (a trace-map variant in characteristic 2).

use crate::error::{Error, Result};
use crate::field::{mulm, powm, FieldConfig, FpPoly, FpRat, Scalar};
use crate::poly::Poly;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Roots of `p` in its base field, with multiplicities, sorted by the
/// canonical encoding of the root.  The zero polynomial is rejected.
pub fn rational_roots(p: &Poly) -> Result<Vec<(Scalar, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut roots = match p.field {
        FieldConfig::Rationals => roots_over_q(p)?,
        FieldConfig::PrimeFnField(_) => roots_over_fpt(p)?,
    };
    roots.sort_by(|a, b| a.0.encode().cmp(&b.0.encode()));
    Ok(roots)
}

// ---- Rationals ----

fn roots_over_q(p: &Poly) -> Result<Vec<(Scalar, usize)>> {
    let mut found: Vec<(Scalar, usize)> = Vec::new();
    let k = p.field;

    // Zero roots come off first so the trailing coefficient is nonzero.
    let zero = k.zero();
    let zmult = p.root_multiplicity(&zero);
    if zmult > 0 {
        found.push((zero.clone(), zmult));
    }
    if p.degree() as usize == zmult {
        return Ok(found);
    }

    // Squarefree part over Q, then cleared to a primitive integer poly.
    let sf = {
        let d = p.deriv();
        let g = p.gcd(&d);
        p.div_exact(&g).expect("gcd divides")
    };
    let sf = strip_zero_roots(&sf);
    let ic = integer_coeffs(&sf);
    let n = ic.len() - 1;
    if n == 0 {
        return Ok(found);
    }
    if n == 1 {
        let r = Scalar::Rat(BigRational::new(-ic[0].clone(), ic[1].clone()));
        let m = p.root_multiplicity(&r);
        debug_assert!(m > 0);
        found.push((r, m));
        return Ok(found);
    }

    // Any rational root a/b in lowest terms has a | ic[0], b | ic[n], so a
    // residue modulo m > 2*|ic[0]|*|ic[n]| pins it down uniquely.
    let bound_a = ic[0].abs();
    let bound_b = ic[n].abs();
    let target: BigInt = BigInt::from(2) * &bound_a * &bound_b + 1;

    let q = choose_hensel_prime(&ic);
    let ic_mod: Vec<u64> = ic.iter().map(|c| bigint_mod_u64(c, q)).collect();
    let fq = FpPoly::from_coeffs(q, ic_mod);

    for r0 in 0..q {
        if fq.eval(r0) != 0 {
            continue;
        }
        let mut m = BigInt::from(q);
        let mut r = BigInt::from(r0);
        while m < target {
            m = &m * &m;
            // Newton step; the derivative stays invertible because the
            // reduction mod q is squarefree.
            let fr = eval_bigint_mod(&ic, &r, &m);
            let dfr = eval_deriv_bigint_mod(&ic, &r, &m);
            let inv = mod_inverse(&dfr, &m).expect("simple root stays simple");
            r = ((&r - fr * inv) % &m + &m) % &m;
        }
        if let Some(cand) = rational_reconstruct(&r, &m, &bound_a, &bound_b) {
            let s = Scalar::Rat(cand);
            let mult = p.root_multiplicity(&s);
            if mult > 0 {
                found.push((s, mult));
            }
        }
    }
    Ok(found)
}

fn strip_zero_roots(p: &Poly) -> Poly {
    let k = p.field;
    let skip = p.c.iter().take_while(|c| c.is_zero()).count();
    Poly::from_coeffs(k, p.c[skip..].to_vec())
}

/// Clears denominators and content: the result is primitive in Z[x] with
/// the same roots.
fn integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = p
        .c
        .iter()
        .map(|s| match s {
            Scalar::Rat(r) => r.clone(),
            _ => unreachable!("rationals only"),
        })
        .collect();
    let mut lcm = BigInt::one();
    for r in &rats {
        lcm = lcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &lcm).to_integer()).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    ints.iter().map(|c| c / &content).collect()
}

fn bigint_mod_u64(c: &BigInt, q: u64) -> u64 {
    let m = ((c % q) + q) % q;
    m.to_u64().expect("reduced")
}

fn choose_hensel_prime(ic: &[BigInt]) -> u64 {
    let lead = ic.last().unwrap();
    let mut q = 3u64;
    loop {
        q = next_prime(q + 1);
        if (lead % q).is_zero() {
            continue;
        }
        let fq = FpPoly::from_coeffs(q, ic.iter().map(|c| bigint_mod_u64(c, q)).collect());
        if fq.degree() != ic.len() as i64 - 1 {
            continue;
        }
        let g = fq.gcd(&fq.deriv());
        if g.degree() == 0 {
            return q;
        }
    }
}

fn next_prime(from: u64) -> u64 {
    let mut n = from.max(2);
    loop {
        if is_prime_u64(n) {
            return n;
        }
        n += 1;
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn eval_bigint_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for ci in c.iter().rev() {
        acc = (acc * x + ci) % m;
    }
    ((acc % m) + m) % m
}

fn eval_deriv_bigint_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for i in (1..c.len()).rev() {
        acc = (acc * x + &c[i] * BigInt::from(i)) % m;
    }
    ((acc % m) + m) % m
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(((e.x % m) + m) % m)
}

/// Recovers a/b from its residue mod m, given |a| <= bound_a and
/// 0 < b <= bound_b with 2*bound_a*bound_b < m.
fn rational_reconstruct(
    r: &BigInt,
    m: &BigInt,
    bound_a: &BigInt,
    bound_b: &BigInt,
) -> Option<BigRational> {
    let mut r0 = m.clone();
    let mut r1 = r.clone();
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1.abs() > *bound_a {
        if r1.is_zero() {
            return None;
        }
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound_b {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

// ---- Prime function fields ----

fn roots_over_fpt(poly: &Poly) -> Result<Vec<(Scalar, usize)>> {
    let k = poly.field;
    let p = k.characteristic();
    let mut found: Vec<(Scalar, usize)> = Vec::new();

    let zero = k.zero();
    let zmult = poly.root_multiplicity(&zero);
    if zmult > 0 {
        found.push((zero, zmult));
    }
    if poly.degree() as usize == zmult {
        return Ok(found);
    }

    // Clear denominators to land in F_p[t][x], then divide out the content.
    let stripped = strip_zero_roots(poly);
    let rats: Vec<FpRat> = stripped
        .c
        .iter()
        .map(|s| match s {
            Scalar::FpT(r) => r.clone(),
            _ => unreachable!("function field only"),
        })
        .collect();
    let mut den_lcm = FpPoly::one(p);
    for r in &rats {
        let g = den_lcm.gcd(&r.den);
        den_lcm = den_lcm.mul(&r.den).divrem(&g).0;
    }
    let ints: Vec<FpPoly> = rats
        .iter()
        .map(|r| r.num.mul(&den_lcm.divrem(&r.den).0))
        .collect();
    let mut content = FpPoly::zero(p);
    for c in &ints {
        content = content.gcd(c);
    }
    let prim: Vec<FpPoly> = ints.iter().map(|c| c.divrem(&content).0).collect();

    let n = prim.len() - 1;
    if n == 0 {
        return Ok(found);
    }
    if n == 1 {
        let r = FpRat::new(prim[0].neg(), prim[1].clone())?;
        let s = Scalar::FpT(r);
        let m = poly.root_multiplicity(&s);
        debug_assert!(m > 0);
        found.push((s, m));
        return Ok(found);
    }

    // Rational root theorem in F_p[t]: a root c*u/v in lowest terms (u, v
    // monic coprime, c a unit) has u | prim[0] and v | prim[n].
    let us = monic_divisors(p, &fp_factor(&prim[0]));
    let vs = monic_divisors(p, &fp_factor(&prim[n]));
    for u in &us {
        for v in &vs {
            if u.gcd(v).degree() != 0 {
                continue;
            }
            for c in 1..p {
                let cand = Scalar::FpT(FpRat::new(u.mul_scalar(c), v.clone())?);
                let m = poly.root_multiplicity(&cand);
                if m > 0 {
                    found.push((cand, m));
                }
            }
        }
    }
    Ok(found)
}

/// All monic divisors of the polynomial with the given factorization.
fn monic_divisors(p: u64, factors: &[(FpPoly, usize)]) -> Vec<FpPoly> {
    let mut out = vec![FpPoly::one(p)];
    for (f, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(f);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out
}

// ---- Factorization in F_p[t] ----

/// Monic irreducible factorization (the unit is discarded).  Input must
/// be nonzero; constants factor as the empty product.
pub(crate) fn fp_factor(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    assert!(!f.is_zero(), "cannot factor zero");
    let f = f.monic();
    let mut out: Vec<(FpPoly, usize)> = Vec::new();
    if f.degree() <= 0 {
        return out;
    }
    for (g, mult) in squarefree_parts(&f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d) {
                merge_factor(&mut out, irr, mult);
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), crate::field::encode_fp_poly(&a.0))
            .cmp(&(b.0.degree(), crate::field::encode_fp_poly(&b.0)))
    });
    out
}

fn merge_factor(out: &mut Vec<(FpPoly, usize)>, f: FpPoly, m: usize) {
    for (g, e) in out.iter_mut() {
        if *g == f {
            *e += m;
            return;
        }
    }
    out.push((f, m));
}

/// Squarefree decomposition in characteristic p: pairs (g_i, i) with
/// f = prod g_i^i and each g_i squarefree.
fn squarefree_parts(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let df = f.deriv();
    if df.is_zero() {
        // f = u(t^p) = (p-th root of u)^p; coefficients live in the prime
        // field where Frobenius is the identity.
        let u = pth_root(f);
        for (g, m) in squarefree_parts(&u) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.divrem(&c).0;
    let mut i = 1usize;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.degree() > 0 {
            out.push((z, i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if c.degree() > 0 {
        let u = pth_root(&c);
        for (g, m) in squarefree_parts(&u) {
            out.push((g, m * p as usize));
        }
    }
    out
}

fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.p as usize;
    let mut c = Vec::new();
    for (i, &a) in f.c.iter().enumerate() {
        if i % p == 0 {
            c.push(a);
        } else {
            debug_assert_eq!(a, 0, "not a p-th power");
        }
    }
    FpPoly::from_coeffs(f.p, c)
}

/// Splits a squarefree monic f into products of irreducibles of equal
/// degree: pairs (h, d) with h the product of all degree-d factors.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut f = f.clone();
    let t = FpPoly::from_coeffs(p, vec![0, 1]);
    let mut xq = t.clone();
    let mut d = 0usize;
    while f.degree() > 0 {
        d += 1;
        if (f.degree() as usize) < 2 * d {
            out.push((f.clone(), f.degree() as usize));
            break;
        }
        xq = fp_powmod(&xq, &BigUint::from(p), &f);
        let g = f.gcd(&xq.sub(&t));
        if g.degree() > 0 {
            out.push((g.clone(), d));
            f = f.divrem(&g).0;
            xq = xq.divrem(&f).1;
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: f is monic squarefree, a
/// product of irreducibles all of degree d.
fn equal_degree(f: &FpPoly, d: usize) -> Vec<FpPoly> {
    let p = f.p;
    if f.degree() as usize == d {
        return vec![f.clone()];
    }
    let mut rng = XorShift64::new(0x9e3779b97f4a7c15 ^ f.c.iter().sum::<u64>());
    loop {
        let deg = f.degree() as usize;
        let a = FpPoly::from_coeffs(p, (0..deg).map(|_| rng.next() % p).collect());
        if a.degree() < 1 {
            continue;
        }
        let g = f.gcd(&a);
        let split = if g.degree() > 0 && g.degree() < f.degree() {
            g
        } else if p == 2 {
            // Trace map over F_2: T(a) = a + a^2 + ... + a^(2^(d-1)).
            let mut tr = a.clone();
            let mut pw = a.clone();
            for _ in 1..d {
                pw = fp_powmod(&pw, &BigUint::from(2u32), f);
                tr = tr.add(&pw);
            }
            let g = f.gcd(&tr);
            if g.degree() > 0 && g.degree() < f.degree() {
                g
            } else {
                continue;
            }
        } else {
            // b = a^((p^d-1)/2) mod f sends each factor to +-1.
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = fp_powmod(&a, &e, f);
            let g = f.gcd(&b.sub(&FpPoly::one(p)));
            if g.degree() > 0 && g.degree() < f.degree() {
                g
            } else {
                continue;
            }
        };
        let rest = f.divrem(&split).0;
        let mut out = equal_degree(&split, d);
        out.extend(equal_degree(&rest, d));
        return out;
    }
}

pub(crate) fn fp_powmod(base: &FpPoly, e: &BigUint, m: &FpPoly) -> FpPoly {
    let p = base.p;
    let mut acc = FpPoly::one(p);
    let mut b = base.divrem(m).1;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = acc.mul(&b).divrem(m).1;
        }
        b = b.mul(&b).divrem(m).1;
    }
    acc
}

struct XorShift64 {
    s: u64,
}

impl XorShift64 {
    fn new(seed: u64) -> Self {
        XorShift64 { s: seed | 1 }
    }

    fn next(&mut self) -> u64 {
        let mut x = self.s;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.s = x;
        x
    }
}

// ---- Square roots ----

/// Exact square root in the base field, if one exists.  Over Q the
/// nonnegative root is returned; over F_p(t) the root with leading
/// numerator coefficient in 1..=(p-1)/2 (either root in char 2).
pub fn scalar_sqrt(s: &Scalar) -> Option<Scalar> {
    if s.is_zero() {
        return Some(s.clone());
    }
    match s {
        Scalar::Rat(r) => {
            if r.is_negative() {
                return None;
            }
            let n = r.numer().sqrt();
            let d = r.denom().sqrt();
            if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
                Some(Scalar::Rat(BigRational::new(n, d)))
            } else {
                None
            }
        }
        Scalar::FpT(r) => fp_rat_sqrt(r).map(Scalar::FpT),
    }
}

fn fp_rat_sqrt(r: &FpRat) -> Option<FpRat> {
    let p = r.p();
    let c = r.num.leading();
    let num_m = r.num.monic();
    let sc = if p == 2 {
        1
    } else {
        sqrt_mod_p(c, p)?
    };
    let ns = fp_poly_sqrt(&num_m)?;
    let ds = fp_poly_sqrt(&r.den)?;
    let sc = if p > 2 && sc > (p - 1) / 2 { p - sc } else { sc };
    Some(FpRat::new(ns.mul_scalar(sc), ds).expect("den nonzero"))
}

fn fp_poly_sqrt(f: &FpPoly) -> Option<FpPoly> {
    if f.is_zero() {
        return Some(f.clone());
    }
    if f.p == 2 {
        // Squaring is t |-> t^2 on monomials in char 2.
        let mut c = Vec::new();
        for (i, &a) in f.c.iter().enumerate() {
            if i % 2 == 0 {
                c.push(a);
            } else if a != 0 {
                return None;
            }
        }
        return Some(FpPoly::from_coeffs(2, c));
    }
    let mut root = FpPoly::one(f.p);
    for (g, e) in fp_factor(f) {
        if e % 2 != 0 {
            return None;
        }
        root = root.mul(&g.pow((e / 2) as u64));
    }
    Some(root)
}

/// Square root in F_p for odd p, by Tonelli-Shanks; returns the smaller
/// of the two roots.
pub(crate) fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if powm(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        powm(a, (p + 1) / 4, p)
    } else {
        // Tonelli-Shanks for p = 1 mod 4.
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while powm(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = powm(z, q, p);
        let mut t = powm(a, q, p);
        let mut r = powm(a, (q + 1) / 2, p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mulm(tt, tt, p);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = mulm(b, b, p);
            }
            m = i;
            c = mulm(b, b, p);
            t = mulm(t, c, p);
            r = mulm(r, b, p);
        }
        r
    };
    Some(r.min(p - r))
}

// ---- Fiber solving ----

/// The y-coordinates of curve points over a given x-coordinate, in the
/// base field, sorted by encoding.  Empty when the fiber is irrational.
pub fn fiber_y_values(
    a1: &Scalar,
    a2: &Scalar,
    a3: &Scalar,
    a4: &Scalar,
    a6: &Scalar,
    x0: &Scalar,
) -> Vec<Scalar> {
    let k = x0.field();
    let b = &(a1 * x0) + a3;
    let x2 = x0 * x0;
    let rhs = &(&(&(&x2 * x0) + &(a2 * &x2)) + &(a4 * x0)) + a6;
    let mut ys: Vec<Scalar> = if k.characteristic() == 2 {
        match solve_char2_fiber(&b, &rhs) {
            Some(v) => v,
            None => Vec::new(),
        }
    } else {
        let four = k.integer(4);
        let disc = &(&b * &b) + &(&four * &rhs);
        let half = k.integer(2).inv().expect("char != 2");
        match scalar_sqrt(&disc) {
            None => Vec::new(),
            Some(r) if r.is_zero() => vec![&(-&b) * &half],
            Some(r) => vec![&(&(-&b) + &r) * &half, &(&(-&b) - &r) * &half],
        }
    };
    ys.sort_by_key(|y| y.encode());
    ys.dedup();
    ys
}

/// Solves y^2 + b*y = w in characteristic 2.
fn solve_char2_fiber(b: &Scalar, w: &Scalar) -> Option<Vec<Scalar>> {
    if b.is_zero() {
        // Inseparable fiber: y^2 = w has at most one solution.
        return scalar_sqrt(w).map(|y| vec![y]);
    }
    // Substitute y = b*z: z^2 + z = w / b^2.
    let v = &(w / b) / b;
    let vr = match &v {
        Scalar::FpT(r) => r.clone(),
        _ => unreachable!("char 2 scalars"),
    };
    let z = artin_schreier_solve(&vr)?;
    let z = Scalar::FpT(z);
    let one = b.field().one();
    Some(vec![b * &z, b * &(&z + &one)])
}

/// Solves z^2 + z = v over F_2(t), if a solution exists.  The map
/// p |-> p^2 + p*q is F_2-linear, so with the denominator pinned to the
/// square root of den(v) this reduces to a linear system over F_2.
fn artin_schreier_solve(v: &FpRat) -> Option<FpRat> {
    assert_eq!(v.p(), 2);
    if v.is_zero() {
        return Some(FpRat::zero(2));
    }
    // z = a/q in lowest terms forces den(z^2 + z) = q^2 exactly.
    let q = fp_poly_sqrt(&v.den)?;
    let n = &v.num;
    let dn = n.degree().max(0) as usize;
    let dq = q.degree().max(0) as usize;
    let dim = dn.max(dq) + 1;
    let rows = (2 * (dim - 1)).max(dim - 1 + dq).max(dn) + 1;

    // Column j is the coefficient vector of t^(2j) + t^j * q.
    let mut cols: Vec<Vec<u8>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut col = vec![0u8; rows];
        col[2 * j] ^= 1;
        for (i, &qc) in q.c.iter().enumerate() {
            if qc != 0 {
                col[j + i] ^= 1;
            }
        }
        cols.push(col);
    }
    let mut rhs = vec![0u8; rows];
    for (i, &nc) in n.c.iter().enumerate() {
        rhs[i] = nc as u8;
    }

    // Gaussian elimination over F_2.
    let mut mat: Vec<Vec<u8>> = (0..rows)
        .map(|i| (0..dim).map(|j| cols[j][i]).collect())
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; dim];
    let mut row = 0;
    for col in 0..dim {
        let Some(pr) = (row..rows).find(|&r| mat[r][col] == 1) else {
            continue;
        };
        mat.swap(row, pr);
        rhs.swap(row, pr);
        for r in 0..rows {
            if r != row && mat[r][col] == 1 {
                for c in col..dim {
                    mat[r][c] ^= mat[row][c];
                }
                rhs[r] ^= rhs[row];
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    // Inconsistent rows mean no solution.
    for r in row..rows {
        if rhs[r] == 1 {
            return None;
        }
    }
    let mut a = vec![0u64; dim];
    for col in 0..dim {
        if let Some(pr) = pivot_of_col[col] {
            a[col] = rhs[pr] as u64;
        }
    }
    let z = FpRat::new(FpPoly::from_coeffs(2, a), q).ok()?;
    // Exact check guards against an undersized degree bound.
    let back = z.mul(&z).add(&z);
    if back == *v {
        Some(z)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_scalar;

    fn qpoly(coeffs: &[(i64, i64)]) -> Poly {
        let k = FieldConfig::Rationals;
        Poly::from_coeffs(
            k,
            coeffs.iter().map(|&(n, d)| Scalar::from_rational(n, d)).collect(),
        )
    }

    #[test]
    fn roots_q_small() {
        // (x - 2)^2 (x + 1/3) x
        let p = qpoly(&[(0, 1), (4, 3), (8, 3), (-11, 3), (1, 1)]);
        let r = rational_roots(&p).unwrap();
        let got: Vec<(String, usize)> =
            r.iter().map(|(s, m)| (s.encode(), *m)).collect();
        assert_eq!(
            got,
            vec![
                ("-1/3".to_string(), 1),
                ("0".to_string(), 1),
                ("2".to_string(), 2)
            ]
        );
    }

    #[test]
    fn roots_q_no_rational() {
        // x^2 + 1 and x^2 - 2 have no rational roots.
        assert!(rational_roots(&qpoly(&[(1, 1), (0, 1), (1, 1)])).unwrap().is_empty());
        assert!(rational_roots(&qpoly(&[(-2, 1), (0, 1), (1, 1)])).unwrap().is_empty());
    }

    #[test]
    fn roots_q_big_coefficients() {
        // (x - 1000003)(x + 7/1000033): exercises the lifting bound.
        let k = FieldConfig::Rationals;
        let r1 = parse_scalar("1000003", k, 1).unwrap();
        let r2 = parse_scalar("-7/1000033", k, 1).unwrap();
        let p = &Poly::linear_root(&r1) * &Poly::linear_root(&r2);
        let r = rational_roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().any(|(s, m)| *m == 1 && s == &r1));
        assert!(r.iter().any(|(s, m)| *m == 1 && s == &r2));
    }

    #[test]
    fn roots_fpt() {
        let k = FieldConfig::PrimeFnField(5);
        // (x - t)(x - (t^2+1)/(t+1)) * (x^2 - t) over F_5(t); the last
        // factor contributes no rational roots.
        let t = parse_scalar("t", k, 1).unwrap();
        let r2 = parse_scalar("(t^2+1)/(t+1)", k, 1).unwrap();
        let sq = Poly::from_coeffs(k, vec![-&t, k.zero(), k.one()]);
        let p = &(&Poly::linear_root(&t) * &Poly::linear_root(&r2)) * &sq;
        let roots = rational_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|(s, _)| s == &t));
        assert!(roots.iter().any(|(s, _)| s == &r2));
    }

    #[test]
    fn factor_fp_examples() {
        // t^4 + t^2 = t^2 (t+1)^2 (t^2+... over F_2: t^2(t^2+1) = t^2(t+1)^2.
        let f = FpPoly::from_coeffs(2, vec![0, 0, 1, 0, 1]);
        let fac = fp_factor(&f);
        let enc: Vec<(String, usize)> = fac
            .iter()
            .map(|(g, e)| (crate::field::encode_fp_poly(g), *e))
            .collect();
        assert_eq!(enc, vec![("t".to_string(), 2), (("t+1").to_string(), 2)]);

        // Irreducible quadratic over F_5: t^2+2 (2 and 3 are non-residues).
        let g = FpPoly::from_coeffs(5, vec![2, 0, 1]);
        let fac = fp_factor(&g);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 1);
        assert_eq!(fac[0].0.degree(), 2);

        // Frobenius power: (t+1)^5 over F_5.
        let h = FpPoly::from_coeffs(5, vec![1, 1]).pow(5);
        let fac = fp_factor(&h);
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 5);
        assert_eq!(crate::field::encode_fp_poly(&fac[0].0), "t+1");
    }

    #[test]
    fn factor_roundtrip_random() {
        let mut rng = XorShift64::new(42);
        for p in [2u64, 3, 5, 7] {
            for _ in 0..8 {
                let deg = 2 + (rng.next() % 6) as usize;
                let mut c: Vec<u64> = (0..deg).map(|_| rng.next() % p).collect();
                c.push(1 + rng.next() % (p - 1).max(1));
                let f = FpPoly::from_coeffs(p, c);
                if f.degree() < 1 {
                    continue;
                }
                let fac = fp_factor(&f);
                let mut prod = FpPoly::constant(p, f.leading());
                for (g, e) in &fac {
                    assert!(g.is_monic());
                    prod = prod.mul(&g.pow(*e as u64));
                }
                assert_eq!(prod, f, "p={} f={:?}", p, f.c);
            }
        }
    }

    #[test]
    fn sqrt_rational() {
        let k = FieldConfig::Rationals;
        let s = parse_scalar("49/16", k, 1).unwrap();
        assert_eq!(scalar_sqrt(&s).unwrap().encode(), "7/4");
        assert!(scalar_sqrt(&parse_scalar("2", k, 1).unwrap()).is_none());
        assert!(scalar_sqrt(&parse_scalar("-4", k, 1).unwrap()).is_none());
    }

    #[test]
    fn sqrt_fpt() {
        let k = FieldConfig::PrimeFnField(5);
        let s = parse_scalar("4*t^2+4*t+1", k, 1).unwrap();
        let r = scalar_sqrt(&s).unwrap();
        assert_eq!(&r * &r, s);
        assert!(scalar_sqrt(&parse_scalar("t", k, 1).unwrap()).is_none());
        // 2 is not a square mod 5.
        assert!(scalar_sqrt(&parse_scalar("2", k, 1).unwrap()).is_none());

        let k2 = FieldConfig::PrimeFnField(2);
        let s = parse_scalar("t^4+t^2", k2, 1).unwrap();
        assert_eq!(scalar_sqrt(&s).unwrap().encode(), "t^2+t");
        assert!(scalar_sqrt(&parse_scalar("t^3", k2, 1).unwrap()).is_none());
    }

    #[test]
    fn sqrt_mod_p_cases() {
        assert_eq!(sqrt_mod_p(4, 5), Some(2));
        assert_eq!(sqrt_mod_p(2, 5), None);
        assert_eq!(sqrt_mod_p(2, 7), Some(3));
        // p = 13 is 1 mod 4, exercises Tonelli-Shanks.
        let r = sqrt_mod_p(10, 13).unwrap();
        assert_eq!(mulm(r, r, 13), 10);
        for a in 1..13 {
            if let Some(r) = sqrt_mod_p(a, 13) {
                assert_eq!(mulm(r, r, 13), a);
            }
        }
    }

    #[test]
    fn fiber_char0() {
        // y^2 + y = x^3 - x at x = 0: y^2 + y = 0 has roots 0 and -1.
        let k = FieldConfig::Rationals;
        let (a1, a2, a3, a4, a6) = (
            k.zero(),
            k.zero(),
            k.one(),
            k.integer(-1),
            k.zero(),
        );
        let ys = fiber_y_values(&a1, &a2, &a3, &a4, &a6, &k.zero());
        let got: Vec<String> = ys.iter().map(|y| y.encode()).collect();
        assert_eq!(got, vec!["-1", "0"]);
        // x = 2: y^2 + y - 6 = 0 has roots 2, -3.
        let ys = fiber_y_values(&a1, &a2, &a3, &a4, &a6, &k.integer(2));
        let got: Vec<String> = ys.iter().map(|y| y.encode()).collect();
        assert_eq!(got, vec!["-3", "2"]);
        // x = 3: y^2 + y - 24 = 0, disc 97 not a square.
        assert!(fiber_y_values(&a1, &a2, &a3, &a4, &a6, &k.integer(3)).is_empty());
    }

    #[test]
    fn fiber_char2_artin_schreier() {
        // y^2 + y = x^3 + t*x over F_2(t) at x = t: y^2 + y = t^3 + t^2.
        // z = t^2 + t... check: (t^2+t)^2 + (t^2+t) = t^4+t^2+t^2+t = t^4+t.
        // Hmm, solve exactly and verify by substitution instead.
        let k = FieldConfig::PrimeFnField(2);
        let t = parse_scalar("t", k, 1).unwrap();
        let (a1, a2, a3, a4, a6) =
            (k.zero(), k.zero(), k.one(), t.clone(), k.zero());
        // x = 0: y^2 + y = 0.
        let ys = fiber_y_values(&a1, &a2, &a3, &a4, &a6, &k.zero());
        let got: Vec<String> = ys.iter().map(|y| y.encode()).collect();
        assert_eq!(got, vec!["0", "1"]);
        // x = t^2: y^2 + y = t^6 + t^3 = (t^3+t... verify solutions satisfy
        // the equation rather than guessing the closed form.
        let x0 = &t * &t;
        let ys = fiber_y_values(&a1, &a2, &a3, &a4, &a6, &x0);
        assert_eq!(ys.len(), 2);
        for y in &ys {
            let lhs = &(y * y) + y;
            let rhs = &(&(&x0 * &x0) * &x0) + &(&t * &x0);
            assert_eq!(lhs, rhs);
        }
        // x = t has no rational fiber: z^2 + z = t^3 + t^2 needs den 1,
        // and comparing degrees t^3 forces deg z = 3/2.
        assert!(fiber_y_values(&a1, &a2, &a3, &a4, &a6, &t).is_empty());
    }

    #[test]
    fn artin_schreier_structure() {
        // Solutions to z^2 + z = v come in pairs z, z+1.
        let k = FieldConfig::PrimeFnField(2);
        let v = parse_scalar("(t^2+t)/(t^4+t^2+1)", k, 1).unwrap();
        let vr = match &v {
            Scalar::FpT(r) => r.clone(),
            _ => unreachable!(),
        };
        if let Some(z) = artin_schreier_solve(&vr) {
            let z = Scalar::FpT(z);
            assert_eq!(&(&z * &z) + &z, v);
        }
        // v = w^2 + w always solvable: w = t/(t+1).
        let w = parse_scalar("t/(t+1)", k, 1).unwrap();
        let v = &(&w * &w) + &w;
        let vr = match &v {
            Scalar::FpT(r) => r.clone(),
            _ => unreachable!(),
        };
        let z = Scalar::FpT(artin_schreier_solve(&vr).unwrap());
        let back = &(&z * &z) + &z;
        assert_eq!(back, v);
    }
}
