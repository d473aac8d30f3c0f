use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::laurent::Laurent1;
use super::WindowPolicy;
use crate::error::{collapse, Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A truncated element of `k((u))((t))`.
///
/// `t`-levels below `lo` are certified zero, levels in `[lo, hi]` are the
/// stored series (an absent level is exactly zero), levels above `hi` are
/// unknown unless `exact`. Each level carries its own `u`-window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterLaurent {
    field: FieldSpec,
    levels: BTreeMap<i64, Laurent1>,
    lo: i64,
    hi: i64,
    exact: bool,
}

impl IterLaurent {
    pub fn zero(field: FieldSpec) -> Self {
        IterLaurent { field, levels: BTreeMap::new(), lo: 0, hi: 0, exact: true }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::monomial(field.one(), 0, 0)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * u^i * t^j`, exact.
    pub fn monomial(c: Scalar, i: i64, j: i64) -> Self {
        let field = c.field();
        let mut levels = BTreeMap::new();
        levels.insert(j, Laurent1::monomial(c, i));
        IterLaurent { field, levels, lo: j, hi: j, exact: true }.normalized()
    }

    /// An exact Laurent polynomial from `(u exponent, t exponent) -> coeff`.
    pub fn exact_from_terms(field: FieldSpec, terms: impl IntoIterator<Item = ((i64, i64), Scalar)>) -> Self {
        let mut by_level: BTreeMap<i64, Vec<(i64, Scalar)>> = BTreeMap::new();
        for ((i, j), c) in terms {
            by_level.entry(j).or_default().push((i, c));
        }
        let levels: BTreeMap<i64, Laurent1> = by_level
            .into_iter()
            .map(|(j, ts)| (j, Laurent1::exact_from_terms(field, ts)))
            .collect();
        let lo = levels.keys().next().copied().unwrap_or(0);
        IterLaurent { field, levels, lo, hi: lo, exact: true }.normalized()
    }

    /// Assemble from explicit levels with a certified `t`-window.
    pub fn from_levels(field: FieldSpec, levels: BTreeMap<i64, Laurent1>, lo: i64, hi: i64, exact: bool) -> Result<Self> {
        if !exact && hi < lo {
            return Err(collapse("empty t-window"));
        }
        for (j, s) in &levels {
            if s.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !s.is_exact_zero() && (*j < lo || (!exact && *j > hi)) {
                return Err(collapse("level outside its declared t-window"));
            }
        }
        Ok(IterLaurent { field, levels, lo, hi, exact }.normalized())
    }

    fn normalized(mut self) -> Self {
        let hi = self.hi;
        let exact = self.exact;
        self.levels.retain(|&j, s| !s.is_exact_zero() && (exact || j <= hi));
        if let Some(&first) = self.levels.keys().next() {
            if first > self.lo {
                self.lo = first;
            }
        } else if exact {
            self.lo = 0;
        }
        if exact {
            self.hi = self.levels.keys().next_back().copied().unwrap_or(self.lo).max(self.lo);
        }
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_exact(&self) -> bool {
        self.exact && self.levels.values().all(Laurent1::is_exact)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn certified_hi(&self) -> Option<i64> {
        if self.exact {
            None
        } else {
            Some(self.hi)
        }
    }

    pub fn levels(&self) -> impl Iterator<Item = (i64, &Laurent1)> {
        self.levels.iter().map(|(j, s)| (*j, s))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact && self.levels.is_empty()
    }

    /// The `u`-series at `t^j`.
    pub fn level(&self, j: i64) -> Result<Laurent1> {
        if j < self.lo || self.exact || j <= self.hi {
            Ok(self.levels.get(&j).cloned().unwrap_or_else(|| Laurent1::zero(self.field)))
        } else {
            Err(Error::WindowCollapse(format!("t^{j} lies above the certified bound {}", self.hi)))
        }
    }

    /// The coefficient of `u^i t^j`.
    pub fn coeff(&self, i: i64, j: i64) -> Result<Scalar> {
        self.level(j)?.coeff(i)
    }

    /// `(v_t, v_u)`: the lowest populated `t`-level and the valuation of its series.
    pub fn valuation(&self) -> Result<(i64, i64)> {
        let (&j, s) = self.levels.iter().next().ok_or(Error::ZeroOrUnknown)?;
        Ok((j, s.valuation()?))
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
        let mut levels = BTreeMap::new();
        let keys: alloc::collections::BTreeSet<i64> =
            self.levels.keys().chain(other.levels.keys()).copied().collect();
        for j in keys {
            if !exact && j > hi {
                continue;
            }
            let a = self.level(j)?;
            let b = other.level(j)?;
            levels.insert(j, a.add(&b)?);
        }
        Ok(IterLaurent { field: self.field, levels, lo, hi, exact }.normalized())
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for l in s.levels.values_mut() {
            *l = l.neg();
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return IterLaurent::zero(self.field);
        }
        let mut s = self.clone();
        for l in s.levels.values_mut() {
            *l = l.scale(c);
        }
        s
    }

    /// Product; per-level `u`-windows are computed from the contributing factors.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(IterLaurent::zero(self.field));
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
        let mut levels: BTreeMap<i64, Laurent1> = BTreeMap::new();
        for (ja, a) in &self.levels {
            for (jb, b) in &other.levels {
                let j = ja + jb;
                if !exact && j > hi {
                    break;
                }
                let p = a.mul(b)?;
                let next = match levels.get(&j) {
                    Some(acc) => acc.add(&p)?,
                    None => p,
                };
                levels.insert(j, next);
            }
        }
        Ok(IterLaurent { field: self.field, levels, lo, hi: if exact { 0 } else { hi }, exact }.normalized())
    }

    /// Inverse of a unit. With `t`-valuation `v` and bound `hi`, the inverse
    /// is certified for `t`-levels `-v ..= -v + (hi - v)`; exact input uses the
    /// policy radius as relative precision in both variables.
    pub fn invert(&self, policy: WindowPolicy) -> Result<Self> {
        if self.is_exact_zero() {
            return Err(Error::NotAUnit);
        }
        let (&v, lead) = self.levels.iter().next().ok_or_else(|| collapse("no certified t-level"))?;
        if v != self.lo {
            return Err(collapse("lowest t-level is not certified"));
        }
        let lead_inv = lead.invert(policy.radius)?;
        if self.exact && self.levels.len() == 1 && lead.is_exact() && lead.terms().count() == 1 {
            let mut levels = BTreeMap::new();
            levels.insert(-v, lead_inv);
            return IterLaurent::from_levels(self.field, levels, -v, -v, true);
        }
        let r = if self.exact { policy.radius } else { self.hi - v };
        if r < 0 {
            return Err(collapse("no relative t-precision left to invert"));
        }
        let mut b: Vec<Laurent1> = Vec::with_capacity(r as usize + 1);
        b.push(lead_inv.clone());
        for n in 1..=r {
            let mut acc = Laurent1::zero(self.field);
            for (&j, a) in self.levels.range(v + 1..=v + n) {
                let k = j - v;
                acc = acc.add(&a.mul(&b[(n - k) as usize])?)?;
            }
            b.push(acc.mul(&lead_inv)?.neg());
        }
        let levels = b.into_iter().enumerate().map(|(n, s)| (n as i64 - v, s)).collect();
        IterLaurent::from_levels(self.field, levels, -v, -v + r, false)
    }

    /// Forget `t`-levels above `t_hi` and `u`-coefficients above `u_hi`.
    pub fn truncate(&self, u_hi: i64, t_hi: i64) -> Result<Self> {
        let new_hi = match self.certified_hi() {
            Some(h) => h.min(t_hi),
            None => t_hi,
        };
        let mut levels = BTreeMap::new();
        for (&j, s) in &self.levels {
            if j <= new_hi {
                levels.insert(j, s.truncate(u_hi)?);
            }
        }
        let lo = self.lo.min(new_hi);
        IterLaurent::from_levels(self.field, levels, lo, new_hi, false)
    }

    /// Agreement on every coefficient certified in both operands.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let bound = match (self.certified_hi(), other.certified_hi()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => None,
        };
        let keys: alloc::collections::BTreeSet<i64> =
            self.levels.keys().chain(other.levels.keys()).copied().collect();
        keys.into_iter().filter(|j| bound.is_none_or(|b| *j <= b)).all(|j| {
            match (self.level(j), other.level(j)) {
                (Ok(a), Ok(b)) => a.agrees_with(&b),
                _ => false,
            }
        })
    }

    /// Smallest certified `u`-bound over the levels `lo ..= t_hi`.
    pub fn min_u_bound(&self, t_hi: i64) -> Option<i64> {
        self.levels
            .range(..=t_hi)
            .filter_map(|(_, s)| s.certified_hi())
            .min()
    }

    /// Whether the coefficient of `u^i t^j` is certified.
    pub fn is_certified(&self, i: i64, j: i64) -> bool {
        self.coeff(i, j).is_ok()
    }

    pub fn is_one(&self) -> bool {
        self.levels.len() == 1 && self.levels.get(&0).is_some_and(Laurent1::is_one)
    }
}
