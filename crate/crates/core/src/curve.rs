//! Adeles on the projective line: lattices bounded by divisors, relative
//! dimension, cohomology by explicit linear algebra and degrees of ideles.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::series::Laurent1;

/// A rational point of P^1 in the affine coordinate `s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Finite(Scalar),
    Inf,
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Finite(c) => write!(f, "{c}"),
            CurvePoint::Inf => f.write_str("inf"),
        }
    }
}

/// A divisor on P^1; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct CurveDivisor {
    coeffs: BTreeMap<CurvePoint, i64>,
}

impl CurveDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CurvePoint, i64)>) -> Self {
        let mut d = Self::new();
        for (p, n) in terms {
            d.add_at(p, n);
        }
        d
    }

    pub fn add_at(&mut self, p: CurvePoint, n: i64) {
        let v = self.coeffs.get(&p).copied().unwrap_or(0) + n;
        if v == 0 {
            self.coeffs.remove(&p);
        } else {
            self.coeffs.insert(p, v);
        }
    }

    pub fn coeff(&self, p: &CurvePoint) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurvePoint, i64)> {
        self.coeffs.iter().map(|(p, n)| (p, *n))
    }

    pub fn support(&self) -> impl Iterator<Item = &CurvePoint> {
        self.coeffs.keys()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (p, n) in other.terms() {
            d.add_at(p.clone(), n);
        }
        d
    }

    pub fn neg(&self) -> Self {
        CurveDivisor { coeffs: self.coeffs.iter().map(|(p, n)| (p.clone(), -n)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Pointwise maximum with the zero divisor.
    pub fn positive_part(&self) -> Self {
        CurveDivisor::from_terms(self.terms().filter(|(_, n)| *n > 0).map(|(p, n)| (p.clone(), n)))
    }
}

impl fmt::Display for CurveDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, n)) in self.terms().enumerate() {
            match (i, n < 0) {
                (0, false) => write!(f, "{n}[{p}]")?,
                (0, true) => write!(f, "-{}[{p}]", -n)?,
                (_, false) => write!(f, " + {n}[{p}]")?,
                (_, true) => write!(f, " - {}[{p}]", -n)?,
            }
        }
        Ok(())
    }
}

/// The adelic subspace of collections with poles bounded by `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveLattice {
    pub bound: CurveDivisor,
}

impl CurveLattice {
    pub fn integral() -> Self {
        CurveLattice { bound: CurveDivisor::new() }
    }
}

/// `[A|B] = dim B/(A∩B) - dim A/(A∩B)`, counted monomial by monomial at each point.
pub fn rel_dim(a: &CurveLattice, b: &CurveLattice) -> i64 {
    let points: BTreeSet<&CurvePoint> = a.bound.support().chain(b.bound.support()).collect();
    points
        .into_iter()
        .map(|p| {
            let (na, nb) = (a.bound.coeff(p), b.bound.coeff(p));
            let meet = na.min(nb);
            (nb - meet) - (na - meet)
        })
        .sum()
}

/// Basis functions of `L(B)` for effective `B`.
#[derive(Debug, Clone)]
enum BasisFn {
    One,
    /// `(s - c)^-k`
    Pole(Scalar, i64),
    /// `s^k`
    Power(i64),
}

/// Laurent expansion of a basis function at `p`, certified up to `pi^hi`.
fn expand_at(f: &BasisFn, p: &CurvePoint, hi: i64, field: FieldSpec) -> Result<Laurent1> {
    let rel = hi.unsigned_abs() as i64 * 2 + 8;
    match (f, p) {
        (BasisFn::One, _) => Ok(Laurent1::one(field)),
        (BasisFn::Power(k), CurvePoint::Finite(c)) => {
            // (c + pi)^k
            let base = Laurent1::exact_from_terms(field, [(0, c.clone()), (1, field.one())]);
            let mut acc = Laurent1::one(field);
            for _ in 0..*k {
                acc = acc.mul(&base)?;
            }
            Ok(acc)
        }
        (BasisFn::Power(k), CurvePoint::Inf) => Ok(Laurent1::monomial(field.one(), -k)),
        (BasisFn::Pole(c, k), CurvePoint::Finite(a)) => {
            let shift = a - c;
            let base = Laurent1::exact_from_terms(field, [(0, shift), (1, field.one())]);
            let mut acc = Laurent1::one(field);
            for _ in 0..*k {
                acc = acc.mul(&base)?;
            }
            acc.invert(rel + k)
        }
        (BasisFn::Pole(c, k), CurvePoint::Inf) => {
            // pi^k (1 - c pi)^-k
            let base = Laurent1::exact_from_terms(field, [(0, field.one()), (1, -c)]);
            let mut acc = Laurent1::one(field);
            for _ in 0..*k {
                acc = acc.mul(&base)?;
            }
            Ok(acc.invert(rel + k)?.shift(*k))
        }
    }
}

/// `(h^0(D), h^1(D))` on P^1 by explicit linear algebra.
///
/// With `B = max(D, 0)`, `H^0(D)` is the kernel of `L(B) -> A(B)/A(D)` and
/// `H^1(D)` its cokernel.
pub fn curve_cohomology(field: FieldSpec, d: &CurveDivisor) -> Result<(i64, i64)> {
    let b = d.positive_part();
    let mut basis = alloc::vec![BasisFn::One];
    for (p, n) in b.terms() {
        for k in 1..=n {
            basis.push(match p {
                CurvePoint::Finite(c) => BasisFn::Pole(c.clone(), k),
                CurvePoint::Inf => BasisFn::Power(k),
            });
        }
    }
    // coordinates of A(B)/A(D): pi_p^n for -B_p <= n < -D_p
    let mut coords: Vec<(CurvePoint, i64)> = Vec::new();
    for (p, n) in d.terms() {
        let bp = b.coeff(p);
        for e in -bp..(-n) {
            coords.push((p.clone(), e));
        }
    }
    let mut m = Matrix::zeros(field, coords.len(), basis.len());
    for (c, f) in basis.iter().enumerate() {
        let mut cache: BTreeMap<&CurvePoint, Laurent1> = BTreeMap::new();
        for (r, (p, e)) in coords.iter().enumerate() {
            if !cache.contains_key(p) {
                cache.insert(p, expand_at(f, p, -d.coeff(p), field)?);
            }
            m.set(r, c, cache[p].coeff(*e)?);
        }
    }
    let r = m.rank() as i64;
    Ok((basis.len() as i64 - r, coords.len() as i64 - r))
}

/// The closed form `(max(deg+1, 0), max(-deg-1, 0))`.
pub fn cohomology_oracle(d: &CurveDivisor) -> (i64, i64) {
    let deg = d.degree();
    ((deg + 1).max(0), (-deg - 1).max(0))
}

pub fn euler_char(field: FieldSpec, d: &CurveDivisor) -> Result<i64> {
    let (h0, h1) = curve_cohomology(field, d)?;
    Ok(h0 - h1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRrReport {
    pub d1: CurveDivisor,
    pub d2: CurveDivisor,
    /// `chi(D1) - chi(D2)` from cohomology.
    pub chi_diff: i64,
    /// `[D2|D1]`.
    pub rel_dim: i64,
    pub ok: bool,
}

/// `chi(D1) - chi(D2) = [D2|D1]`.
pub fn abstract_rr_check(field: FieldSpec, d1: &CurveDivisor, d2: &CurveDivisor) -> Result<CurveRrReport> {
    let chi_diff = euler_char(field, d1)? - euler_char(field, d2)?;
    let rd = rel_dim(&CurveLattice { bound: d2.clone() }, &CurveLattice { bound: d1.clone() });
    Ok(CurveRrReport { d1: d1.clone(), d2: d2.clone(), chi_diff, rel_dim: rd, ok: chi_diff == rd })
}

/// An idele of P^1: local Laurent series in the local parameter at finitely
/// many points, `1` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveIdele {
    field: FieldSpec,
    local: BTreeMap<CurvePoint, Laurent1>,
}

impl CurveIdele {
    pub fn one(field: FieldSpec) -> Self {
        CurveIdele { field, local: BTreeMap::new() }
    }

    pub fn from_entries(field: FieldSpec, entries: impl IntoIterator<Item = (CurvePoint, Laurent1)>) -> Result<Self> {
        let mut local = BTreeMap::new();
        for (p, s) in entries {
            if s.field() != field {
                return Err(Error::FieldMismatch);
            }
            s.valuation().map_err(|_| Error::NotAUnit)?;
            local.insert(p, s);
        }
        Ok(CurveIdele { field, local })
    }

    /// `pi_p^{D_p}` at every point of the support.
    pub fn from_monomial(field: FieldSpec, d: &CurveDivisor) -> Self {
        let local = d.terms().map(|(p, n)| (p.clone(), Laurent1::monomial(field.one(), n))).collect();
        CurveIdele { field, local }
    }

    pub fn entry(&self, p: &CurvePoint) -> Laurent1 {
        self.local.get(p).cloned().unwrap_or_else(|| Laurent1::one(self.field))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let points: BTreeSet<&CurvePoint> = self.local.keys().chain(other.local.keys()).collect();
        let mut local = BTreeMap::new();
        for p in points {
            local.insert(p.clone(), self.entry(p).mul(&other.entry(p))?);
        }
        Ok(CurveIdele { field: self.field, local })
    }

    /// Divisor of the valuations of the entries.
    pub fn valuation_divisor(&self) -> Result<CurveDivisor> {
        let mut d = CurveDivisor::new();
        for (p, s) in &self.local {
            d.add_at(p.clone(), s.valuation()?);
        }
        Ok(d)
    }
}

/// The transition idele of `O(D)`.
pub fn transition_idele(field: FieldSpec, d: &CurveDivisor) -> CurveIdele {
    CurveIdele::from_monomial(field, d)
}

/// `[aO | O]` for the integral lattice `O`.
pub fn idele_degree(a: &CurveIdele) -> Result<i64> {
    let v = a.valuation_divisor()?;
    Ok(rel_dim(&CurveLattice { bound: v.neg() }, &CurveLattice::integral()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> FieldSpec {
        FieldSpec::default_prime()
    }

    #[test]
    fn cohomology_examples() {
        let zero = CurvePoint::Finite(k().zero());
        assert_eq!(curve_cohomology(k(), &CurveDivisor::new()).unwrap(), (1, 0));
        let d = CurveDivisor::from_terms([(zero.clone(), 3)]);
        assert_eq!(curve_cohomology(k(), &d).unwrap(), (4, 0));
        let d = CurveDivisor::from_terms([(CurvePoint::Inf, -2)]);
        assert_eq!(curve_cohomology(k(), &d).unwrap(), (0, 1));
        let d = CurveDivisor::from_terms([(zero, 2), (CurvePoint::Finite(k().int(5)), -4)]);
        assert_eq!(curve_cohomology(k(), &d).unwrap(), (0, 1));
    }

    #[test]
    fn degree_of_inverse_parameter() {
        let a = CurveIdele::from_entries(k(), [(CurvePoint::Inf, Laurent1::monomial(k().one(), -1))]).unwrap();
        assert_eq!(idele_degree(&a).unwrap(), -1);
    }
}
