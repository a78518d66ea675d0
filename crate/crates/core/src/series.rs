//! Truncated Laurent series with explicit precision accounting.
//!
//! A series stores exact coefficients for the exponent window
//! `[lead, prec)` plus an unknown tail `O(u^prec)`.  Every operation
//! propagates precision pessimistically: a coefficient is stored only when
//! it is fully determined by the known windows of the operands.  The zero
//! series keeps an empty window and remembers only its precision.

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    pub field: FieldConfig,
    /// Exponent of the first stored coefficient; meaningful when the
    /// window is nonempty, in which case the first coefficient is nonzero.
    lead: i64,
    /// Coefficients for exponents `lead..lead + c.len()`, with
    /// `lead + c.len() == prec` whenever nonempty.
    c: Vec<Scalar>,
    /// Exponent of the O(u^prec) tail.
    prec: i64,
}

impl Series {
    pub fn zero_to(field: FieldConfig, prec: i64) -> Self {
        Series { field, lead: prec, c: vec![], prec }
    }

    /// Builds a series from coefficients starting at exponent `lead`,
    /// truncated or zero-padded to precision `prec`.
    pub fn new(field: FieldConfig, lead: i64, coeffs: Vec<Scalar>, prec: i64) -> Self {
        let mut s = Series { field, lead, c: coeffs, prec };
        s.normalize();
        s
    }

    pub fn monomial(field: FieldConfig, exp: i64, prec: i64) -> Self {
        Series::new(field, exp, vec![field.one()], prec)
    }

    pub fn constant(a: Scalar, prec: i64) -> Self {
        let field = a.field();
        Series::new(field, 0, vec![a], prec)
    }

    fn normalize(&mut self) {
        // Clamp the window to end exactly at prec.
        let want = (self.prec - self.lead).max(0) as usize;
        self.c.truncate(want);
        while self.c.len() < want {
            self.c.push(self.field.zero());
        }
        // Advance lead past leading zeros.
        let mut drop = 0;
        while drop < self.c.len() && self.c[drop].is_zero() {
            drop += 1;
        }
        if drop == self.c.len() {
            self.c.clear();
            self.lead = self.prec;
        } else if drop > 0 {
            self.c.drain(..drop);
            self.lead += drop as i64;
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Leading exponent, or `None` when the series is zero to precision.
    pub fn val(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.lead)
        }
    }

    /// Lower bound for the valuation: the leading exponent, or the
    /// precision for a window that is all zero.
    pub fn val_bound(&self) -> i64 {
        self.val().unwrap_or(self.prec)
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.c.is_empty()
    }

    /// Coefficient at exponent `j`; errors when `j` is at or past the
    /// precision horizon.
    pub fn coeff(&self, j: i64) -> Result<Scalar> {
        if j >= self.prec {
            return Err(Error::PrecisionLoss(format!(
                "coefficient of u^{} requested but series only known to O(u^{})",
                j, self.prec
            )));
        }
        if self.c.is_empty() || j < self.lead {
            return Ok(self.field.zero());
        }
        Ok(self.c[(j - self.lead) as usize].clone())
    }

    pub fn truncate(&self, new_prec: i64) -> Series {
        assert!(new_prec <= self.prec, "cannot extend precision by truncation");
        Series::new(self.field, self.lead, self.c.clone(), new_prec)
    }

    /// Multiplies by u^k.
    pub fn shift(&self, k: i64) -> Series {
        Series { field: self.field, lead: self.lead + k, c: self.c.clone(), prec: self.prec + k }
    }

    pub fn scale(&self, a: &Scalar) -> Series {
        if a.is_zero() {
            return Series::zero_to(self.field, self.prec);
        }
        Series::new(self.field, self.lead, self.c.iter().map(|b| a * b).collect(), self.prec)
    }

    pub fn add(&self, o: &Series) -> Series {
        let prec = self.prec.min(o.prec);
        if self.c.is_empty() && o.c.is_empty() {
            return Series::zero_to(self.field, prec);
        }
        let lead = self.val_bound().min(o.val_bound()).min(prec);
        let mut c = Vec::with_capacity((prec - lead).max(0) as usize);
        for j in lead..prec {
            c.push(&self.coeff(j).unwrap() + &o.coeff(j).unwrap());
        }
        Series::new(self.field, lead, c, prec)
    }

    pub fn neg(&self) -> Series {
        Series { field: self.field, lead: self.lead, c: self.c.iter().map(|a| -a).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Series) -> Series {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Series) -> Series {
        let va = self.val_bound();
        let vb = o.val_bound();
        let prec = (self.prec + vb).min(o.prec + va);
        if self.c.is_empty() || o.c.is_empty() {
            return Series::zero_to(self.field, prec);
        }
        let lead = va + vb;
        let n = (prec - lead).max(0) as usize;
        let mut c = vec![self.field.zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Series::new(self.field, lead, c, prec)
    }

    /// Multiplicative inverse.  The relative precision of the input is
    /// preserved, so the absolute precision becomes `prec - 2*lead`.
    pub fn inverse(&self) -> Result<Series> {
        if self.c.is_empty() {
            return Err(Error::ZeroSeries);
        }
        let v = self.lead;
        let rel = (self.prec - v) as usize;
        let c0 = &self.c[0];
        let c0_inv = c0.inv()?;
        // Normalized tail n_i = c_i / c0; inverse tail by convolution.
        let mut inv = Vec::with_capacity(rel);
        inv.push(self.field.one());
        for j in 1..rel {
            let mut acc = self.field.zero();
            for i in 1..=j {
                let ni = if i < self.c.len() { &self.c[i] / c0 } else { self.field.zero() };
                if ni.is_zero() {
                    continue;
                }
                acc = &acc + &(&ni * &inv[j - i]);
            }
            inv.push(-acc);
        }
        let coeffs = inv.into_iter().map(|m| &m * &c0_inv).collect();
        Ok(Series::new(self.field, -v, coeffs, self.prec - 2 * v))
    }

    pub fn div(&self, o: &Series) -> Result<Series> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Integer power; `e` may be negative when the series is invertible.
    pub fn pow(&self, e: i64) -> Result<Series> {
        if e == 0 {
            // Relative precision of the base bounds what any consumer may
            // rely on; keep the window matching it.
            let rel = self.prec - self.val_bound();
            return Ok(Series::monomial(self.field, 0, rel.max(1)));
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc: Option<Series> = None;
        let mut b = base;
        let mut n = e.unsigned_abs();
        loop {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => a.mul(&b),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            b = b.mul(&b);
        }
        Ok(acc.unwrap())
    }

    /// Substitutes `inner` for the variable; `inner` must have valuation
    /// exactly 1 or higher (a genuinely small element).
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        let vg = match inner.val() {
            Some(v) if v >= 1 => v,
            Some(v) => return Err(Error::NotInvertibleOrder(v)),
            None => {
                if inner.prec < 1 {
                    return Err(Error::NotInvertibleOrder(inner.prec));
                }
                // Inner is zero to precision; composition keeps only the
                // constant term when the outer series has one.
                if self.lead < 0 && !self.c.is_empty() {
                    return Err(Error::ZeroSeries);
                }
                let tail = inner.prec * self.prec.max(1);
                return Ok(Series::new(
                    self.field,
                    0,
                    vec![self.coeff(0).unwrap_or_else(|_| self.field.zero())],
                    tail,
                ));
            }
        };
        // Tail of the outer series contributes O(inner^prec).
        let tail_bound = vg * self.prec;
        if self.c.is_empty() {
            return Ok(Series::zero_to(self.field, tail_bound));
        }
        let mut power = inner.pow(self.lead)?;
        let mut acc = Series::zero_to(self.field, tail_bound);
        for (i, a) in self.c.iter().enumerate() {
            if i > 0 {
                power = power.mul(inner);
            }
            if a.is_zero() {
                continue;
            }
            acc = acc.add(&power.scale(a));
        }
        if acc.prec > tail_bound {
            acc = acc.truncate(tail_bound);
        }
        Ok(acc)
    }

    /// Compositional inverse of a valuation-1 series: returns `V` with
    /// `self(V(u)) = u + O(u^prec)`.
    pub fn reversion(&self) -> Result<Series> {
        match self.val() {
            Some(1) => {}
            Some(v) => return Err(Error::NotInvertibleOrder(v)),
            None => return Err(Error::ZeroSeries),
        }
        let prec = self.prec;
        let a1 = self.c[0].clone();
        let a1_inv = a1.inv()?;
        // Solve coefficients successively: adding b_m u^m perturbs the
        // composite at order m by a1*b_m.
        let mut v = Series::new(self.field, 1, vec![a1_inv.clone()], prec);
        for m in 2..prec {
            let e = self.compose(&v)?;
            let defect = e.sub(&Series::monomial(self.field, 1, prec));
            let dm = defect.coeff(m)?;
            if dm.is_zero() {
                continue;
            }
            let bm = -&(&dm * &a1_inv);
            v = v.add(&Series::new(self.field, m, vec![bm], prec));
        }
        Ok(v)
    }

    /// Formal derivative d/du.
    pub fn deriv(&self) -> Series {
        if self.c.is_empty() {
            return Series::zero_to(self.field, self.prec - 1);
        }
        let mut c = Vec::with_capacity(self.c.len());
        for (i, a) in self.c.iter().enumerate() {
            let j = self.lead + i as i64;
            c.push(&self.field.integer(j) * a);
        }
        Series::new(self.field, self.lead - 1, c, self.prec - 1)
    }
}

macro_rules! series_binop {
    ($trait:ident, $method:ident, $inherent:ident) => {
        impl std::ops::$trait for &Series {
            type Output = Series;
            fn $method(self, o: &Series) -> Series {
                Series::$inherent(self, o)
            }
        }
        impl std::ops::$trait for Series {
            type Output = Series;
            fn $method(self, o: Series) -> Series {
                Series::$inherent(&self, &o)
            }
        }
    };
}

series_binop!(Add, add, add);
series_binop!(Sub, sub, sub);
series_binop!(Mul, mul, mul);

impl std::ops::Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::neg(self)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let j = self.lead + i as i64;
            let coeff = a.encode();
            terms.push(match j {
                0 => coeff,
                1 if coeff == "1" => "u".into(),
                1 => format!("{}*u", coeff),
                _ if coeff == "1" => format!("u^{}", j),
                _ => format!("{}*u^{}", coeff, j),
            });
        }
        if terms.is_empty() {
            write!(f, "O(u^{})", self.prec)
        } else {
            write!(f, "{} + O(u^{})", terms.join(" + "), self.prec)
        }
    }
}
