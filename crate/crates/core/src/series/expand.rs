use alloc::format;

use super::iter::IterLaurent;
use super::poly::Poly2;
use super::WindowPolicy;
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A rational function `num / den` in the affine surface coordinates `(X, Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Poly2,
    pub den: Poly2,
}

impl RationalFunction {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn poly(p: Poly2) -> Self {
        let f = p.field();
        RationalFunction { num: p, den: Poly2::one(f) }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::poly(Poly2::constant(c))
    }

    /// `c X^i Y^j`.
    pub fn monomial(c: Scalar, i: i64, j: i64) -> Self {
        Self::poly(Poly2::monomial(c, i, j))
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RationalFunction { num, den: self.den.mul(&other.den) }
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let e = n.unsigned_abs() as u32;
        Ok(RationalFunction { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Local coordinates `(u, t)` at a flag.
///
/// The surface coordinates are Laurent monomials in chart coordinates `(a, b)`:
/// `X = a^x.0 b^x.1`, `Y = a^y.0 b^y.1`; the chart coordinates are affine in
/// the local ones: `a = a0 + m00 u + m01 t`, `b = b0 + m10 u + m11 t`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LocalCoords {
    pub x_map: (i64, i64),
    pub y_map: (i64, i64),
    pub origin: (Scalar, Scalar),
    pub m: [[Scalar; 2]; 2],
}

impl LocalCoords {
    fn field(&self) -> FieldSpec {
        self.origin.0.field()
    }

    /// Pull `(num, den)` back to Laurent polynomials in the chart coordinates.
    pub fn to_chart(&self, f: &RationalFunction) -> (Poly2, Poly2) {
        let n = f.num.substitute_monomials(self.x_map, self.y_map);
        let d = f.den.substitute_monomials(self.x_map, self.y_map);
        (n, d)
    }

    /// Pull chart-level Laurent polynomials back to polynomials in `(u, t)`,
    /// clearing a common monomial first.
    pub fn chart_to_local(&self, num: &Poly2, den: &Poly2) -> Result<(Poly2, Poly2)> {
        let (na, nb) = num.min_exponents();
        let (da, db) = den.min_exponents();
        let (sa, sb) = (-na.min(da), -nb.min(db));
        let (num, den) = (num.shift(sa, sb), den.shift(sa, sb));
        let k = self.field();
        let a_img = Poly2::from_terms(
            k,
            [((0, 0), self.origin.0.clone()), ((1, 0), self.m[0][0].clone()), ((0, 1), self.m[0][1].clone())],
        );
        let b_img = Poly2::from_terms(
            k,
            [((0, 0), self.origin.1.clone()), ((1, 0), self.m[1][0].clone()), ((0, 1), self.m[1][1].clone())],
        );
        Ok((num.substitute(&a_img, &b_img)?, den.substitute(&a_img, &b_img)?))
    }

    /// Pull a rational function in `(X, Y)` back to `(u, t)`.
    pub fn pullback(&self, f: &RationalFunction) -> Result<(Poly2, Poly2)> {
        let (n, d) = self.to_chart(f);
        self.chart_to_local(&n, &d)
    }

    /// `dX ^ dY = c * h(a, b) du ^ dt`, returned as `(c, h)` with `h` a chart monomial.
    pub fn omega_factor(&self) -> (Scalar, Poly2) {
        let k = self.field();
        let chart_det = self.x_map.0 * self.y_map.1 - self.x_map.1 * self.y_map.0;
        let local_det = &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0]);
        let c = &k.int(chart_det) * &local_det;
        let h = Poly2::monomial(k.one(), self.x_map.0 + self.y_map.0 - 1, self.x_map.1 + self.y_map.1 - 1);
        (c, h)
    }
}

/// Expansion window request: all coefficients `u^i t^j` with `j <= t_hi`
/// and `i <= u_hi` must be certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionWindow {
    pub u_hi: i64,
    pub t_hi: i64,
}

fn covers(s: &IterLaurent, w: ExpansionWindow) -> bool {
    if s.certified_hi().is_some_and(|h| h < w.t_hi) {
        return false;
    }
    s.min_u_bound(w.t_hi).is_none_or(|u| u >= w.u_hi)
}

/// Expand `num / den` (polynomials in the local coordinates) on the window.
pub fn expand_local(num: &Poly2, den: &Poly2, window: ExpansionWindow) -> Result<IterLaurent> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let k = num.field();
    let n = IterLaurent::exact_from_terms(k, num.terms().map(|(e, c)| (e, c.clone())));
    let d = IterLaurent::exact_from_terms(k, den.terms().map(|(e, c)| (e, c.clone())));
    if den.as_monomial().is_some() {
        return n.mul(&d.invert(WindowPolicy::default())?);
    }
    let mut radius = 4 + (window.t_hi - d.lo()).max(0) + (window.u_hi).unsigned_abs() as i64;
    for _ in 0..8 {
        let inv = d.invert(WindowPolicy { radius })?;
        let s = n.mul(&inv)?;
        if covers(&s, window) {
            return Ok(s);
        }
        radius *= 2;
    }
    Err(Error::WindowCollapse(format!(
        "expansion could not be certified up to u^{} t^{}",
        window.u_hi, window.t_hi
    )))
}

/// Iterated Laurent expansion of a rational function in surface coordinates
/// at a flag with local coordinates `coords`.
pub fn expand_rational(
    num: &Poly2,
    den: &Poly2,
    coords: &LocalCoords,
    window: ExpansionWindow,
) -> Result<IterLaurent> {
    let f = RationalFunction::new(num.clone(), den.clone())?;
    let (n, d) = coords.pullback(&f)?;
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    expand_local(&n, &d, window)
}
