use alloc::collections::BTreeMap;
use alloc::format;

use crate::error::{collapse, Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A Laurent series in one variable with a certified precision window.
///
/// Coefficients below `lo` are certified zero, coefficients in `[lo, hi]` are
/// exactly the stored ones, and coefficients above `hi` are unknown unless the
/// series is `exact` (a Laurent polynomial known to all orders).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent1 {
    field: FieldSpec,
    coeffs: BTreeMap<i64, Scalar>,
    lo: i64,
    hi: i64,
    exact: bool,
}

impl Laurent1 {
    pub fn zero(field: FieldSpec) -> Self {
        Laurent1 { field, coeffs: BTreeMap::new(), lo: 0, hi: 0, exact: true }
    }

    pub fn monomial(c: Scalar, e: i64) -> Self {
        let field = c.field();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Laurent1 { field, coeffs, lo: e, hi: e, exact: true }.normalized()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    /// An exact Laurent polynomial.
    pub fn exact_from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut s = Laurent1::zero(field);
        for (e, c) in terms {
            let slot = s.coeffs.entry(e).or_insert_with(|| field.zero());
            *slot = &*slot + &c;
        }
        let lo = s.coeffs.keys().next().copied().unwrap_or(0);
        s.lo = lo;
        s.normalized()
    }

    /// A truncated series certified on `[lo, hi]`; terms outside are rejected.
    pub fn from_terms(
        field: FieldSpec,
        terms: impl IntoIterator<Item = (i64, Scalar)>,
        lo: i64,
        hi: i64,
    ) -> Result<Self> {
        if hi < lo {
            return Err(collapse("empty u-window"));
        }
        let mut s = Laurent1 { field, coeffs: BTreeMap::new(), lo, hi, exact: false };
        for (e, c) in terms {
            if e < lo || e > hi {
                if c.is_zero() {
                    continue;
                }
                return Err(collapse("term outside its declared window"));
            }
            let slot = s.coeffs.entry(e).or_insert_with(|| field.zero());
            *slot = &*slot + &c;
        }
        Ok(s.normalized())
    }

    fn normalized(mut self) -> Self {
        let hi = self.hi;
        let exact = self.exact;
        self.coeffs.retain(|&e, c| !c.is_zero() && (exact || e <= hi));
        if let Some(&first) = self.coeffs.keys().next() {
            if first > self.lo {
                self.lo = first;
            }
        } else if exact {
            self.lo = 0;
        }
        if exact {
            self.hi = self.coeffs.keys().next_back().copied().unwrap_or(self.lo).max(self.lo);
        }
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Lower end of the certified window.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Upper end of the certified window, `None` when known to all orders.
    pub fn certified_hi(&self) -> Option<i64> {
        if self.exact {
            None
        } else {
            Some(self.hi)
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact && self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// The coefficient of `u^n`, failing loudly above the certified window.
    pub fn coeff(&self, n: i64) -> Result<Scalar> {
        if n < self.lo || self.exact || n <= self.hi {
            Ok(self.coeffs.get(&n).cloned().unwrap_or_else(|| self.field.zero()))
        } else {
            Err(Error::WindowCollapse(format!("u^{n} lies above the certified bound {}", self.hi)))
        }
    }

    /// Lowest exponent with a certified nonzero coefficient.
    pub fn valuation(&self) -> Result<i64> {
        self.coeffs.keys().next().copied().ok_or(Error::ZeroOrUnknown)
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let exact = self.exact && other.exact;
        let hi = match (self.exact, other.exact) {
            (true, true) => 0,
            (false, true) => self.hi,
            (true, false) => other.hi,
            (false, false) => self.hi.min(other.hi),
        };
        let lo = match (self.is_exact_zero(), other.is_exact_zero()) {
            (true, _) => other.lo,
            (_, true) => self.lo,
            _ => self.lo.min(other.lo),
        };
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let slot = coeffs.entry(*e).or_insert_with(|| self.field.zero());
            *slot = &*slot + c;
        }
        let mut s = Laurent1 { field: self.field, coeffs, lo, hi, exact };
        if !exact && s.hi < s.lo {
            s.hi = s.lo - 1;
            return Err(collapse("sum has an empty u-window"));
        }
        s = s.normalized();
        Ok(s)
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = -&*c;
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Laurent1::zero(self.field);
        }
        let mut s = self.clone();
        for v in s.coeffs.values_mut() {
            *v = &*v * c;
        }
        s
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent1 {
            field: self.field,
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            lo: self.lo + k,
            hi: self.hi + k,
            exact: self.exact,
        }
    }

    /// Product; the window is the largest on which every coefficient is
    /// determined by the certified parts of both factors.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Laurent1::zero(self.field));
        }
        let exact = self.exact && other.exact;
        let lo = self.lo + other.lo;
        let mut hi = i64::MAX;
        if !other.exact {
            hi = hi.min(self.lo + other.hi);
        }
        if !self.exact {
            hi = hi.min(other.lo + self.hi);
        }
        let mut coeffs: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea + eb;
                if !exact && e > hi {
                    break;
                }
                let slot = coeffs.entry(e).or_insert_with(|| self.field.zero());
                *slot = &*slot + &(ca * cb);
            }
        }
        Ok(Laurent1 { field: self.field, coeffs, lo, hi: if exact { 0 } else { hi }, exact }.normalized())
    }

    /// Multiplicative inverse.
    ///
    /// With valuation `v` and certified bound `hi` the inverse is certified on
    /// `[-v, -v + (hi - v)]`; exact non-monomial input is expanded to relative
    /// precision `rel`.
    pub fn invert(&self, rel: i64) -> Result<Self> {
        if self.is_exact_zero() {
            return Err(Error::NotAUnit);
        }
        let v = self.valuation().map_err(|_| collapse("leading u-coefficient is not certified"))?;
        let lead_inv = self.coeffs[&v].inv().ok_or(Error::NotAUnit)?;
        if self.exact && self.coeffs.len() == 1 {
            return Ok(Laurent1::monomial(lead_inv, -v));
        }
        let r = if self.exact { rel } else { self.hi - v };
        if r < 0 {
            return Err(collapse("no relative precision left to invert"));
        }
        // b_n = -c^{-1} * sum_{k=1..n} a_{v+k} b_{n-k}
        let mut b: alloc::vec::Vec<Scalar> = alloc::vec::Vec::with_capacity(r as usize + 1);
        b.push(lead_inv.clone());
        for n in 1..=r {
            let mut acc = self.field.zero();
            for (&e, c) in self.coeffs.range(v + 1..=v + n) {
                let k = e - v;
                acc = &acc + &(c * &b[(n - k) as usize]);
            }
            b.push(-(&acc * &lead_inv));
        }
        let terms = b.into_iter().enumerate().map(|(n, c)| (n as i64 - v, c));
        Laurent1::from_terms(self.field, terms, -v, -v + r)
    }

    /// Forget everything above `hi`.
    pub fn truncate(&self, hi: i64) -> Result<Self> {
        let new_hi = match self.certified_hi() {
            Some(h) => h.min(hi),
            None => hi,
        };
        if new_hi < self.lo && !self.coeffs.is_empty() {
            return Err(collapse("truncation below the valuation"));
        }
        let mut s = self.clone();
        s.exact = false;
        s.hi = new_hi.max(s.lo);
        if new_hi < s.lo {
            s.lo = new_hi;
            s.hi = new_hi;
        }
        Ok(s.normalized())
    }

    /// True when both series agree on every exponent certified in both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let bound = match (self.certified_hi(), other.certified_hi()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => None,
        };
        let keys = self.coeffs.keys().chain(other.coeffs.keys());
        for &e in keys {
            if bound.is_some_and(|b| e > b) {
                continue;
            }
            let a = self.coeffs.get(&e).cloned().unwrap_or_else(|| self.field.zero());
            let b = other.coeffs.get(&e).cloned().unwrap_or_else(|| self.field.zero());
            if a != b {
                return false;
            }
        }
        true
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }
}
