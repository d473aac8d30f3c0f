//! The model surfaces P^2 and P^1 x P^1: curves, divisors, points, flags with
//! local coordinates, local equations and the classical oracles.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::CurvePoint;
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::{
    expand_local, expand_rational, ExpansionWindow, IterLaurent, LocalCoords, Poly2, RationalFunction, TwoForm,
    WindowPolicy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SurfaceKind {
    #[serde(rename = "p2")]
    P2,
    #[serde(rename = "p1xp1")]
    P1xP1,
}

impl SurfaceKind {
    pub fn label(self) -> &'static str {
        match self {
            SurfaceKind::P2 => "p2",
            SurfaceKind::P1xP1 => "p1xp1",
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        match s {
            "p2" => Ok(SurfaceKind::P2),
            "p1xp1" => Ok(SurfaceKind::P1xP1),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown surface `{s}` (expected p2 or p1xp1)") }),
        }
    }
}

/// An irreducible curve: a line of P^2 (coefficients of `a x + b y + c z`,
/// scaled so the first nonzero one is 1) or a fiber `X = c` / `Y = c` of P^1 x P^1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfaceCurve {
    Line([Scalar; 3]),
    FiberX(CurvePoint),
    FiberY(CurvePoint),
}

impl SurfaceCurve {
    pub fn line(field: FieldSpec, coeffs: [Scalar; 3]) -> Result<Self> {
        let lead = coeffs.iter().find(|c| !c.is_zero()).ok_or(Error::UnsupportedConfiguration("zero line".into()))?;
        let inv = lead.inv().ok_or(Error::ZeroDenominator)?;
        let _ = field;
        Ok(SurfaceCurve::Line(coeffs.map(|c| &c * &inv)))
    }

    /// Whether this is one of the toric boundary curves.
    pub fn is_invariant(&self) -> bool {
        match self {
            SurfaceCurve::Line(c) => c.iter().filter(|x| x.is_zero()).count() == 2,
            SurfaceCurve::FiberX(p) | SurfaceCurve::FiberY(p) => match p {
                CurvePoint::Inf => true,
                CurvePoint::Finite(c) => c.is_zero(),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            SurfaceCurve::Line(c) => {
                if self.is_invariant() {
                    let i = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
                    format!("L{i}")
                } else {
                    format!("line({},{},{})", c[0], c[1], c[2])
                }
            }
            SurfaceCurve::FiberX(p) => match p {
                CurvePoint::Inf => "F1".into(),
                CurvePoint::Finite(c) if c.is_zero() => "F0".into(),
                CurvePoint::Finite(c) => format!("X={c}"),
            },
            SurfaceCurve::FiberY(p) => match p {
                CurvePoint::Inf => "G1".into(),
                CurvePoint::Finite(c) if c.is_zero() => "G0".into(),
                CurvePoint::Finite(c) => format!("Y={c}"),
            },
        }
    }
}

impl fmt::Display for SurfaceCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A closed rational point: normalized homogeneous coordinates on P^2
/// (the last nonzero coordinate is 1), or a pair of points of P^1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfacePoint {
    P2([Scalar; 3]),
    P1xP1(CurvePoint, CurvePoint),
}

impl SurfacePoint {
    pub fn p2(coords: [Scalar; 3]) -> Result<Self> {
        let lead = coords.iter().rev().find(|c| !c.is_zero()).ok_or(Error::UnsupportedConfiguration("zero point".into()))?;
        let inv = lead.inv().ok_or(Error::ZeroDenominator)?;
        Ok(SurfacePoint::P2(coords.map(|c| &c * &inv)))
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfacePoint::P2(c) => write!(f, "[{}:{}:{}]", c[0], c[1], c[2]),
            SurfacePoint::P1xP1(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// A point on a curve; local coordinates are `u` along the curve and `t` a
/// local equation of it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    pub point: SurfacePoint,
    pub curve: SurfaceCurve,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.curve, self.point)
    }
}

/// An integer combination of curves; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceDivisor {
    coeffs: BTreeMap<SurfaceCurve, i64>,
}

impl SurfaceDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SurfaceCurve, i64)>) -> Self {
        let mut d = Self::zero();
        for (c, n) in terms {
            d.add_at(c, n);
        }
        d
    }

    pub fn add_at(&mut self, c: SurfaceCurve, n: i64) {
        let v = self.coeff(&c) + n;
        if v == 0 {
            self.coeffs.remove(&c);
        } else {
            self.coeffs.insert(c, v);
        }
    }

    pub fn coeff(&self, c: &SurfaceCurve) -> i64 {
        self.coeffs.get(c).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SurfaceCurve, i64)> {
        self.coeffs.iter().map(|(c, n)| (c, *n))
    }

    pub fn support(&self) -> impl Iterator<Item = &SurfaceCurve> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// All curves are toric boundary curves.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.keys().all(SurfaceCurve::is_invariant)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (c, n) in other.terms() {
            d.add_at(c.clone(), n);
        }
        d
    }

    pub fn scale(&self, k: i64) -> Self {
        SurfaceDivisor::from_terms(self.terms().map(|(c, n)| (c.clone(), n * k)))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Componentwise minimum.
    pub fn min(&self, other: &Self) -> Self {
        let curves: BTreeSet<&SurfaceCurve> = self.support().chain(other.support()).collect();
        SurfaceDivisor::from_terms(curves.into_iter().map(|c| (c.clone(), self.coeff(c).min(other.coeff(c)))))
    }

    /// `self <= other` componentwise.
    pub fn le(&self, other: &Self) -> bool {
        let curves: BTreeSet<&SurfaceCurve> = self.support().chain(other.support()).collect();
        curves.into_iter().all(|c| self.coeff(c) <= other.coeff(c))
    }
}

impl fmt::Display for SurfaceDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(String, i64)> = self.terms().map(|(c, n)| (c.label(), n)).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        for (i, (c, n)) in terms.into_iter().enumerate() {
            let sign = if n < 0 { "-" } else { "+" };
            if i == 0 {
                if n < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}{}", n.abs(), c)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationMode {
    /// `j_1`: the equation of the flag's curve, a global function.
    Curvewise,
    /// `j_2`: the product of local equations at the flag's point.
    Pointwise,
}

/// A fixed nonzero rational two-form `omega = h dX ^ dY` and its divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalData {
    pub omega: RationalFunction,
    pub k_divisor: SurfaceDivisor,
}

/// Divisor class data: `m` on P^2, `(a, b)` on P^1 x P^1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorClass {
    P2(i64),
    P1xP1(i64, i64),
}

/// A model surface over an exact field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surface {
    pub kind: SurfaceKind,
    pub field: FieldSpec,
    pub policy: WindowPolicy,
}

/// Affine chart data of a point: the surface coordinates `X, Y` as Laurent
/// monomials in the chart coordinates `(a, b)`, and the point's chart coordinates.
struct Chart {
    x_map: (i64, i64),
    y_map: (i64, i64),
    origin: (Scalar, Scalar),
    /// `(x, y, z)` coefficients of a P^2 line become `(a, b, 1)` coefficients
    /// by this permutation.
    line_perm: [usize; 3],
}

fn finite(p: &CurvePoint) -> Option<&Scalar> {
    match p {
        CurvePoint::Finite(c) => Some(c),
        CurvePoint::Inf => None,
    }
}

impl Surface {
    pub fn new(kind: SurfaceKind, field: FieldSpec) -> Self {
        Surface { kind, field, policy: WindowPolicy::default() }
    }

    pub fn with_policy(mut self, policy: WindowPolicy) -> Self {
        self.policy = policy;
        self
    }

    fn zero_pt(&self) -> CurvePoint {
        CurvePoint::Finite(self.field.zero())
    }

    /// The toric boundary curves in a fixed order.
    pub fn invariant_curves(&self) -> Vec<SurfaceCurve> {
        let k = self.field;
        match self.kind {
            SurfaceKind::P2 => (0..3)
                .map(|i| {
                    let mut c = [k.zero(), k.zero(), k.zero()];
                    c[i] = k.one();
                    SurfaceCurve::Line(c)
                })
                .collect(),
            SurfaceKind::P1xP1 => alloc::vec![
                SurfaceCurve::FiberX(self.zero_pt()),
                SurfaceCurve::FiberX(CurvePoint::Inf),
                SurfaceCurve::FiberY(self.zero_pt()),
                SurfaceCurve::FiberY(CurvePoint::Inf),
            ],
        }
    }

    /// Boundary curve by label (`L0`..`L2`, `F0`, `F1`, `G0`, `G1`; `L`, `F`, `G` alias index 0).
    pub fn curve(&self, label: &str) -> Option<SurfaceCurve> {
        let label = match label {
            "L" => "L0",
            "F" => "F0",
            "G" => "G0",
            l => l,
        };
        self.invariant_curves().into_iter().find(|c| c.label() == label)
    }

    /// `X = c` (`c = None` for infinity) on P^1 x P^1, or the line `x = c z` on P^2.
    pub fn x_curve(&self, c: Option<Scalar>) -> SurfaceCurve {
        self.coordinate_curve(c, 0)
    }

    /// `Y = c` analogously.
    pub fn y_curve(&self, c: Option<Scalar>) -> SurfaceCurve {
        self.coordinate_curve(c, 1)
    }

    fn coordinate_curve(&self, c: Option<Scalar>, which: usize) -> SurfaceCurve {
        let k = self.field;
        match self.kind {
            SurfaceKind::P2 => {
                let mut l = [k.zero(), k.zero(), k.zero()];
                match c {
                    Some(c) => {
                        l[which] = k.one();
                        l[2] = -c;
                    }
                    None => l[2] = k.one(),
                }
                SurfaceCurve::line(k, l).expect("nonzero line")
            }
            SurfaceKind::P1xP1 => {
                let p = c.map_or(CurvePoint::Inf, CurvePoint::Finite);
                if which == 0 {
                    SurfaceCurve::FiberX(p)
                } else {
                    SurfaceCurve::FiberY(p)
                }
            }
        }
    }

    /// Torus-fixed points.
    pub fn fixed_points(&self) -> Vec<SurfacePoint> {
        let k = self.field;
        match self.kind {
            SurfaceKind::P2 => (0..3)
                .map(|i| {
                    let mut c = [k.zero(), k.zero(), k.zero()];
                    c[i] = k.one();
                    SurfacePoint::P2(c)
                })
                .collect(),
            SurfaceKind::P1xP1 => {
                let pts = [self.zero_pt(), CurvePoint::Inf];
                let mut v = Vec::new();
                for a in &pts {
                    for b in &pts {
                        v.push(SurfacePoint::P1xP1(a.clone(), b.clone()));
                    }
                }
                v
            }
        }
    }

    pub fn contains(&self, c: &SurfaceCurve, p: &SurfacePoint) -> bool {
        match (c, p) {
            (SurfaceCurve::Line(l), SurfacePoint::P2(x)) => {
                let s = &(&(&l[0] * &x[0]) + &(&l[1] * &x[1])) + &(&l[2] * &x[2]);
                s.is_zero()
            }
            (SurfaceCurve::FiberX(c), SurfacePoint::P1xP1(x, _)) => c == x,
            (SurfaceCurve::FiberY(c), SurfacePoint::P1xP1(_, y)) => c == y,
            _ => false,
        }
    }

    /// Every flag at a torus-fixed point on a boundary curve, sorted.
    pub fn fixed_flags(&self) -> Vec<Flag> {
        let mut v = Vec::new();
        for c in self.invariant_curves() {
            for p in self.fixed_points() {
                if self.contains(&c, &p) {
                    v.push(Flag { point: p, curve: c.clone() });
                }
            }
        }
        v.sort();
        v
    }

    /// Fixed flags on the boundary curve `c`.
    pub fn flags_on(&self, c: &SurfaceCurve) -> Vec<Flag> {
        self.fixed_flags().into_iter().filter(|f| &f.curve == c).collect()
    }

    /// The other boundary curve through the point of a fixed flag.
    pub fn crossing(&self, f: &Flag) -> Option<SurfaceCurve> {
        self.invariant_curves().into_iter().find(|c| c != &f.curve && self.contains(c, &f.point))
    }

    pub fn is_fixed_flag(&self, f: &Flag) -> bool {
        f.curve.is_invariant() && self.fixed_points().contains(&f.point)
    }

    fn chart(&self, p: &SurfacePoint) -> Result<Chart> {
        let k = self.field;
        match p {
            SurfacePoint::P2(x) => {
                if !x[2].is_zero() {
                    Ok(Chart { x_map: (1, 0), y_map: (0, 1), origin: (x[0].clone(), x[1].clone()), line_perm: [0, 1, 2] })
                } else if !x[1].is_zero() {
                    // a = x/y, b = z/y
                    Ok(Chart { x_map: (1, -1), y_map: (0, -1), origin: (x[0].clone(), k.zero()), line_perm: [0, 2, 1] })
                } else {
                    // a = y/x, b = z/x
                    Ok(Chart { x_map: (0, -1), y_map: (1, -1), origin: (k.zero(), k.zero()), line_perm: [1, 2, 0] })
                }
            }
            SurfacePoint::P1xP1(x, y) => {
                let (xm, a0) = match finite(x) {
                    Some(c) => ((1, 0), c.clone()),
                    None => ((-1, 0), k.zero()),
                };
                let (ym, b0) = match finite(y) {
                    Some(c) => ((0, 1), c.clone()),
                    None => ((0, -1), k.zero()),
                };
                Ok(Chart { x_map: xm, y_map: ym, origin: (a0, b0), line_perm: [0, 1, 2] })
            }
        }
    }

    /// Coefficients `(alpha, beta, gamma)` of the chart-level equation
    /// `alpha a + beta b + gamma` of a curve through `p`.
    fn chart_linear(&self, c: &SurfaceCurve, p: &SurfacePoint) -> Result<[Scalar; 3]> {
        if !self.contains(c, p) {
            return Err(Error::UnsupportedFlag(format!("{p} does not lie on {c}")));
        }
        let k = self.field;
        let ch = self.chart(p)?;
        match c {
            SurfaceCurve::Line(l) => {
                // chart coefficient j multiplies the coordinate ch.line_perm[j] of (x, y, z)
                Ok([l[ch.line_perm[0]].clone(), l[ch.line_perm[1]].clone(), l[ch.line_perm[2]].clone()])
            }
            SurfaceCurve::FiberX(_) => Ok([k.one(), k.zero(), -&ch.origin.0]),
            SurfaceCurve::FiberY(_) => Ok([k.zero(), k.one(), -&ch.origin.1]),
        }
    }

    /// Local equation of `c` at `p` as a chart-level polynomial.
    pub fn chart_equation(&self, c: &SurfaceCurve, p: &SurfacePoint) -> Result<Poly2> {
        let [al, be, ga] = self.chart_linear(c, p)?;
        Ok(Poly2::from_terms(self.field, [((1, 0), al), ((0, 1), be), ((0, 0), ga)]))
    }

    /// Local coordinates at a flag: `t` is the chart equation of the curve,
    /// `u` a chart coordinate shifted to vanish at the point.
    pub fn local_coords(&self, f: &Flag) -> Result<LocalCoords> {
        let k = self.field;
        let ch = self.chart(&f.point)?;
        let [al, be, _] = self.chart_linear(&f.curve, &f.point)?;
        let m = if !be.is_zero() {
            // a = a0 + u, b = b0 + (t - al u) / be
            let bi = be.inv().ok_or(Error::ZeroDenominator)?;
            [[k.one(), k.zero()], [-(&al * &bi), bi]]
        } else {
            // b = b0 + u, a = a0 + t / al
            let ai = al.inv().ok_or(Error::UnsupportedFlag(format!("degenerate equation of {}", f.curve)))?;
            [[k.zero(), ai], [k.one(), k.zero()]]
        };
        Ok(LocalCoords { x_map: ch.x_map, y_map: ch.y_map, origin: ch.origin, m })
    }

    fn window(&self) -> ExpansionWindow {
        ExpansionWindow { u_hi: self.policy.radius, t_hi: self.policy.radius }
    }

    /// Expansion of a rational function in `(X, Y)` at a flag.
    pub fn expand_at(&self, f: &RationalFunction, flag: &Flag) -> Result<IterLaurent> {
        let coords = self.local_coords(flag)?;
        expand_rational(&f.num, &f.den, &coords, self.window())
    }

    /// A global function vanishing to order one along `c` (a boundary curve or a coordinate curve).
    pub fn global_equation(&self, c: &SurfaceCurve) -> Result<RationalFunction> {
        let k = self.field;
        let x = Poly2::monomial(k.one(), 1, 0);
        let y = Poly2::monomial(k.one(), 0, 1);
        match c {
            SurfaceCurve::Line(l) => {
                if l[0].is_zero() && l[1].is_zero() {
                    // z/x
                    return RationalFunction::new(Poly2::one(k), x);
                }
                let p = x.scale(&l[0]).add(&y.scale(&l[1])).add(&Poly2::constant(l[2].clone()));
                Ok(RationalFunction::poly(p))
            }
            SurfaceCurve::FiberX(p) | SurfaceCurve::FiberY(p) => {
                let v = if matches!(c, SurfaceCurve::FiberX(_)) { x } else { y };
                match p {
                    CurvePoint::Finite(a) => Ok(RationalFunction::poly(v.sub(&Poly2::constant(a.clone())))),
                    CurvePoint::Inf => RationalFunction::new(Poly2::one(k), v),
                }
            }
        }
    }

    /// The value of the global coordinate `s` of a boundary curve at a point on it.
    pub fn curve_coordinate(&self, c: &SurfaceCurve, p: &SurfacePoint) -> Result<CurvePoint> {
        if !c.is_invariant() || !self.contains(c, p) {
            return Err(Error::UnsupportedFlag(format!("no coordinate for {p} on {c}")));
        }
        let ratio = |num: &Scalar, den: &Scalar| match den.inv() {
            Some(i) => CurvePoint::Finite(num * &i),
            None => CurvePoint::Inf,
        };
        match (c, p) {
            (SurfaceCurve::Line(l), SurfacePoint::P2(x)) => Ok(if !l[0].is_zero() {
                ratio(&x[1], &x[2])
            } else if !l[1].is_zero() {
                ratio(&x[0], &x[2])
            } else {
                ratio(&x[1], &x[0])
            }),
            (SurfaceCurve::FiberX(_), SurfacePoint::P1xP1(_, y)) => Ok(y.clone()),
            (SurfaceCurve::FiberY(_), SurfacePoint::P1xP1(x, _)) => Ok(x.clone()),
            _ => Err(Error::UnsupportedFlag(format!("no coordinate for {p} on {c}"))),
        }
    }

    /// The coordinate `s` of a boundary curve as a global function.
    pub fn coordinate_function(&self, c: &SurfaceCurve) -> Result<RationalFunction> {
        let k = self.field;
        let x = Poly2::monomial(k.one(), 1, 0);
        let y = Poly2::monomial(k.one(), 0, 1);
        if !c.is_invariant() {
            return Err(Error::UnsupportedFlag(format!("{c} is not a boundary curve")));
        }
        match c {
            SurfaceCurve::Line(l) if !l[0].is_zero() => Ok(RationalFunction::poly(y)),
            SurfaceCurve::Line(l) if !l[1].is_zero() => Ok(RationalFunction::poly(x)),
            SurfaceCurve::Line(_) => RationalFunction::new(y, x),
            SurfaceCurve::FiberX(_) => Ok(RationalFunction::poly(y)),
            SurfaceCurve::FiberY(_) => Ok(RationalFunction::poly(x)),
        }
    }

    /// Intersection points of two distinct curves.
    pub fn intersections(&self, c1: &SurfaceCurve, c2: &SurfaceCurve) -> Result<Vec<SurfacePoint>> {
        if c1 == c2 {
            return Ok(Vec::new());
        }
        match (c1, c2) {
            (SurfaceCurve::Line(l), SurfaceCurve::Line(m)) => {
                let x = &(&l[1] * &m[2]) - &(&l[2] * &m[1]);
                let y = &(&l[2] * &m[0]) - &(&l[0] * &m[2]);
                let z = &(&l[0] * &m[1]) - &(&l[1] * &m[0]);
                Ok(alloc::vec![SurfacePoint::p2([x, y, z])?])
            }
            (SurfaceCurve::FiberX(a), SurfaceCurve::FiberY(b)) | (SurfaceCurve::FiberY(b), SurfaceCurve::FiberX(a)) => {
                Ok(alloc::vec![SurfacePoint::P1xP1(a.clone(), b.clone())])
            }
            (SurfaceCurve::FiberX(_), SurfaceCurve::FiberX(_)) | (SurfaceCurve::FiberY(_), SurfaceCurve::FiberY(_)) => {
                Ok(Vec::new())
            }
            _ => Err(Error::UnsupportedConfiguration(format!("{c1} and {c2} live on different surfaces"))),
        }
    }

    /// The local-equation idele entry of `d` at a flag.
    pub fn local_equation(&self, d: &SurfaceDivisor, f: &Flag, mode: EquationMode) -> Result<IterLaurent> {
        let coords = self.local_coords(f)?;
        match mode {
            EquationMode::Curvewise => {
                let n = d.coeff(&f.curve);
                let g = self.global_equation(&f.curve)?.pow(n)?;
                expand_rational(&g.num, &g.den, &coords, self.window())
            }
            EquationMode::Pointwise => {
                let k = self.field;
                let (mut num, mut den) = (Poly2::one(k), Poly2::one(k));
                for (c, n) in d.terms() {
                    if !self.contains(c, &f.point) {
                        continue;
                    }
                    let e = self.chart_equation(c, &f.point)?.pow(n.unsigned_abs() as u32);
                    if n > 0 {
                        num = num.mul(&e);
                    } else {
                        den = den.mul(&e);
                    }
                }
                let (n, d) = coords.chart_to_local(&num, &den)?;
                expand_local(&n, &d, self.window())
            }
        }
    }

    /// `v_u` of the curve's global equation at a fixed flag.
    pub fn transition_exponent(&self, f: &Flag) -> Result<i64> {
        let t = self.global_equation(&f.curve)?;
        Ok(self.expand_at(&t, f)?.valuation()?.1)
    }

    /// Flags needed to localize computations with the given divisors.
    pub fn support_flags(&self, divisors: &[SurfaceDivisor]) -> Result<BTreeSet<Flag>> {
        let curves: BTreeSet<SurfaceCurve> = divisors.iter().flat_map(|d| d.support().cloned()).collect();
        let mut others: BTreeSet<SurfaceCurve> = curves.clone();
        others.extend(self.invariant_curves());
        let mut flags = BTreeSet::new();
        for c in &curves {
            for o in &others {
                for p in self.intersections(c, o)? {
                    flags.insert(Flag { point: p, curve: c.clone() });
                }
            }
        }
        Ok(flags)
    }

    pub fn class_of(&self, d: &SurfaceDivisor) -> DivisorClass {
        match self.kind {
            SurfaceKind::P2 => DivisorClass::P2(d.terms().map(|(_, n)| n).sum()),
            SurfaceKind::P1xP1 => {
                let mut a = 0;
                let mut b = 0;
                for (c, n) in d.terms() {
                    match c {
                        SurfaceCurve::FiberX(_) => a += n,
                        _ => b += n,
                    }
                }
                DivisorClass::P1xP1(a, b)
            }
        }
    }

    /// A boundary-curve representative of a class (`mL0`, or `aF0 + bG0`).
    pub fn representative(&self, class: DivisorClass) -> SurfaceDivisor {
        let inv = self.invariant_curves();
        match class {
            DivisorClass::P2(m) => SurfaceDivisor::from_terms([(inv[0].clone(), m)]),
            DivisorClass::P1xP1(a, b) => SurfaceDivisor::from_terms([(inv[0].clone(), a), (inv[2].clone(), b)]),
        }
    }

    /// Intersection number from the class oracle.
    pub fn classical_intersection(&self, s: &SurfaceDivisor, t: &SurfaceDivisor) -> i64 {
        match (self.class_of(s), self.class_of(t)) {
            (DivisorClass::P2(m), DivisorClass::P2(n)) => m * n,
            (DivisorClass::P1xP1(a1, b1), DivisorClass::P1xP1(a2, b2)) => a1 * b2 + a2 * b1,
            _ => unreachable!("class_of follows the surface kind"),
        }
    }

    /// `chi(O(D)) - chi(O)` from the closed formulas.
    pub fn classical_chi_diff(&self, d: &SurfaceDivisor) -> i64 {
        match self.class_of(d) {
            DivisorClass::P2(m) => m * (m + 3) / 2,
            DivisorClass::P1xP1(a, b) => a * b + a + b,
        }
    }

    pub fn canonical_data(&self) -> CanonicalData {
        let k = self.field;
        let inv = self.invariant_curves();
        let k_divisor = match self.kind {
            SurfaceKind::P2 => SurfaceDivisor::from_terms([(inv[2].clone(), -3)]),
            SurfaceKind::P1xP1 => SurfaceDivisor::from_terms([(inv[1].clone(), -2), (inv[3].clone(), -2)]),
        };
        CanonicalData { omega: RationalFunction::poly(Poly2::one(k)), k_divisor }
    }

    /// `h omega` at a flag.
    pub fn form_at(&self, h: &RationalFunction, f: &Flag) -> Result<TwoForm> {
        let cd = self.canonical_data();
        TwoForm::from_global(&h.mul(&cd.omega), &self.local_coords(f)?)
    }

    /// Expanding `omega` at every fixed flag reproduces the valuations of `K`.
    pub fn canonical_self_check(&self) -> Result<bool> {
        let cd = self.canonical_data();
        for f in self.fixed_flags() {
            let w = self.form_at(&RationalFunction::poly(Poly2::one(self.field)), &f)?;
            let cross = self.crossing(&f).expect("fixed flags have a crossing curve");
            let expect = (cd.k_divisor.coeff(&f.curve), cd.k_divisor.coeff(&cross));
            if w.coeff.valuation()? != expect {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
