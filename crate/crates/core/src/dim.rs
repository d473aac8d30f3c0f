//! Lattices `A12(D)`, dimension theories between them as integer offsets
//! against the `mu` reference, the `nu` construction by graded pieces, and
//! duality.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::curve::{curve_cohomology, rel_dim, CurveDivisor, CurveLattice, CurvePoint};
use crate::error::{Error, Result};
use crate::series::{residue2, IterLaurent, Poly2, RationalFunction, TwoForm};
use crate::surface::{Flag, Surface, SurfaceCurve, SurfaceDivisor};

/// The lattice `A12(D)`. A twisted lattice `g A12(D)` by a monomial idele is
/// `A12(D - div_t(g))`, so the divisor alone describes it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeDesc {
    pub divisor: SurfaceDivisor,
}

impl LatticeDesc {
    pub fn new(divisor: SurfaceDivisor) -> Result<Self> {
        if !divisor.is_monomial() {
            return Err(Error::NonMonomial);
        }
        Ok(LatticeDesc { divisor })
    }

    pub fn base() -> Self {
        LatticeDesc { divisor: SurfaceDivisor::zero() }
    }
}

/// Per-flag toric data of a fixed flag `(x, C)`.
#[derive(Debug, Clone)]
pub struct FlagData {
    pub flag: Flag,
    /// `s`-coordinate of `x` on `C`.
    pub point: CurvePoint,
    /// The other boundary curve through `x`.
    pub crossing: SurfaceCurve,
    /// `v_u` of the global equation of `C` at the flag.
    pub e: i64,
    /// The fixed two-form expanded at the flag.
    pub omega: TwoForm,
}

/// A surface with its toric flag data computed once.
#[derive(Debug, Clone)]
pub struct DimContext {
    pub surface: Surface,
    pub curves: Vec<SurfaceCurve>,
    pub flags: BTreeMap<SurfaceCurve, Vec<FlagData>>,
    pub k_divisor: SurfaceDivisor,
}

impl DimContext {
    pub fn new(surface: Surface) -> Result<Self> {
        let curves = surface.invariant_curves();
        let mut flags = BTreeMap::new();
        for c in &curves {
            let mut v = Vec::new();
            for f in surface.flags_on(c) {
                v.push(FlagData {
                    point: surface.curve_coordinate(c, &f.point)?,
                    crossing: surface.crossing(&f).expect("fixed flag"),
                    e: surface.transition_exponent(&f)?,
                    omega: surface.form_at(&RationalFunction::poly(Poly2::one(surface.field)), &f)?,
                    flag: f,
                });
            }
            flags.insert(c.clone(), v);
        }
        let k_divisor = surface.canonical_data().k_divisor;
        Ok(DimContext { surface, curves, flags, k_divisor })
    }

    pub fn flags_on(&self, c: &SurfaceCurve) -> &[FlagData] {
        self.flags.get(c).map_or(&[], Vec::as_slice)
    }
}

/// One graded piece `A12(E + C) / A12(E)`: a curve-level adele quotient on `C`
/// at `t`-level `level = (E + C)_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub curve: SurfaceCurve,
    pub level: i64,
    /// `E + C`, the upper lattice of the step.
    pub upper: SurfaceDivisor,
    /// The reference subspace (image of `A02`) as a lattice on `C`.
    pub mu: CurveDivisor,
    pub h0: i64,
    pub h1: i64,
}

impl GradedPiece {
    /// Value of `nu` at the reference subspace: `h0 - h1`.
    pub fn nu_at_reference(&self) -> i64 {
        self.h0 - self.h1
    }
}

/// The quotient `A12(upper) / A12(lower)` for nested lattices, decomposed
/// into graded pieces along a chain adding one boundary curve at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientModel {
    pub lower: SurfaceDivisor,
    pub upper: SurfaceDivisor,
    pub pieces: Vec<GradedPiece>,
}

/// The default chain: curves in fixed order, one unit at a time.
fn default_steps(ctx: &DimContext, lower: &SurfaceDivisor, upper: &SurfaceDivisor) -> Vec<SurfaceCurve> {
    let mut steps = Vec::new();
    for c in &ctx.curves {
        for _ in lower.coeff(c)..upper.coeff(c) {
            steps.push(c.clone());
        }
    }
    steps
}

fn piece(ctx: &DimContext, lower: &SurfaceDivisor, c: &SurfaceCurve) -> Result<GradedPiece> {
    let mut upper = lower.clone();
    upper.add_at(c.clone(), 1);
    let level = upper.coeff(c);
    let mut mu = CurveDivisor::new();
    for fd in ctx.flags_on(c) {
        mu.add_at(fd.point.clone(), upper.coeff(&fd.crossing) - level * fd.e);
    }
    let (h0, h1) = curve_cohomology(ctx.surface.field, &mu)?;
    Ok(GradedPiece { curve: c.clone(), level, upper, mu, h0, h1 })
}

impl QuotientModel {
    pub fn new(ctx: &DimContext, lower: &SurfaceDivisor, upper: &SurfaceDivisor) -> Result<Self> {
        let steps = default_steps(ctx, lower, upper);
        Self::from_steps(ctx, lower, &steps)
    }

    /// Pieces along an explicit chain of curves starting at `lower`.
    pub fn from_steps(ctx: &DimContext, lower: &SurfaceDivisor, steps: &[SurfaceCurve]) -> Result<Self> {
        if !lower.is_monomial() {
            return Err(Error::NonMonomial);
        }
        let mut e = lower.clone();
        let mut pieces = Vec::with_capacity(steps.len());
        for c in steps {
            if !c.is_invariant() {
                return Err(Error::NonMonomial);
            }
            let p = piece(ctx, &e, c)?;
            e = p.upper.clone();
            pieces.push(p);
        }
        Ok(QuotientModel { lower: lower.clone(), upper: e, pieces })
    }

    /// `nu` at the reference subspace: the sum of the per-piece `h0 - h1`.
    pub fn nu_offset(&self) -> i64 {
        self.pieces.iter().map(GradedPiece::nu_at_reference).sum()
    }

    /// Stable text table of the graded pieces.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "quotient {} / {}", self.upper, self.lower);
        for p in &self.pieces {
            let _ = writeln!(s, "  {} level {}: mu {} h0 {} h1 {}", p.curve, p.level, p.mu, p.h0, p.h1);
        }
        let _ = writeln!(s, "  total {}", self.nu_offset());
        s
    }
}

/// `nu - mu` between two monomial lattices, routed through the minimum when
/// the lattices are not nested.
pub fn nu_offset(ctx: &DimContext, d1: &SurfaceDivisor, d2: &SurfaceDivisor) -> Result<i64> {
    if !d1.is_monomial() || !d2.is_monomial() {
        return Err(Error::NonMonomial);
    }
    if d1.le(d2) {
        Ok(QuotientModel::new(ctx, d1, d2)?.nu_offset())
    } else if d2.le(d1) {
        Ok(-QuotientModel::new(ctx, d2, d1)?.nu_offset())
    } else {
        let m = d1.min(d2);
        Ok(QuotientModel::new(ctx, &m, d2)?.nu_offset() - QuotientModel::new(ctx, &m, d1)?.nu_offset())
    }
}

/// An element of `Dim(lower | upper)`, stored as its value at the `mu` reference.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimElement {
    pub lower: LatticeDesc,
    pub upper: LatticeDesc,
    pub offset: i64,
}

impl DimElement {
    /// The element over `(E, E)` with the given central value.
    pub fn central(e: LatticeDesc, offset: i64) -> Self {
        DimElement { lower: e.clone(), upper: e, offset }
    }

    pub fn shift(&self, m: i64) -> Self {
        DimElement { offset: self.offset + m, ..self.clone() }
    }

    /// The inverse element over `(upper, lower)`.
    pub fn inverse(&self) -> Self {
        DimElement { lower: self.upper.clone(), upper: self.lower.clone(), offset: -self.offset }
    }

    /// Difference with another element over the same pair.
    pub fn minus(&self, other: &Self) -> Result<i64> {
        if self.lower != other.lower || self.upper != other.upper {
            return Err(Error::LatticeMismatch("difference of elements over different pairs".into()));
        }
        Ok(self.offset - other.offset)
    }
}

pub fn mu_element(e1: &LatticeDesc, e2: &LatticeDesc) -> Result<DimElement> {
    if !e1.divisor.is_monomial() || !e2.divisor.is_monomial() {
        return Err(Error::NonMonomial);
    }
    Ok(DimElement { lower: e1.clone(), upper: e2.clone(), offset: 0 })
}

pub fn nu_element(ctx: &DimContext, e1: &LatticeDesc, e2: &LatticeDesc) -> Result<DimElement> {
    Ok(DimElement { lower: e1.clone(), upper: e2.clone(), offset: nu_offset(ctx, &e1.divisor, &e2.divisor)? })
}

pub fn dim_compose(d12: &DimElement, d23: &DimElement) -> Result<DimElement> {
    if d12.upper != d23.lower {
        return Err(Error::LatticeMismatch(format!(
            "cannot compose over {} then {}",
            d12.upper.divisor, d23.lower.divisor
        )));
    }
    Ok(DimElement { lower: d12.lower.clone(), upper: d23.upper.clone(), offset: d12.offset + d23.offset })
}

/// `nu - mu` over `A12(F) -> A12(G)`.
pub fn nu_minus_mu(ctx: &DimContext, f: &SurfaceDivisor, g: &SurfaceDivisor) -> Result<i64> {
    let (a, b) = (LatticeDesc::new(f.clone())?, LatticeDesc::new(g.clone())?);
    nu_element(ctx, &a, &b)?.minus(&mu_element(&a, &b)?)
}

/// An open subspace of a nested quotient given piecewise by curve lattices.
pub type PieceSubspace = Vec<CurveDivisor>;

/// The reference subspace of a model.
pub fn reference_subspace(model: &QuotientModel) -> PieceSubspace {
    model.pieces.iter().map(|p| p.mu.clone()).collect()
}

/// Value of `d` (over the model's nested pair) at a piecewise subspace.
pub fn evaluate(model: &QuotientModel, d: &DimElement, z: &PieceSubspace) -> Result<i64> {
    if d.lower.divisor != model.lower || d.upper.divisor != model.upper || z.len() != model.pieces.len() {
        return Err(Error::LatticeMismatch("evaluation subspace does not match the element".into()));
    }
    let shift: i64 = model
        .pieces
        .iter()
        .zip(z)
        .map(|(p, zp)| rel_dim(&CurveLattice { bound: p.mu.clone() }, &CurveLattice { bound: zp.clone() }))
        .sum();
    Ok(d.offset + shift)
}

const SCAN: i64 = 4;

/// Floor of the annihilator of `{t^-l u^i : i >= m}` among `t^-l_dual u^j`,
/// found by scanning residues of `omega * t^-l u^i * t^-l_dual u^j`.
fn annihilator_floor(fd: &FlagData, l: i64, l_dual: i64, m: i64) -> Result<i64> {
    let one = fd.omega.coeff.field().one();
    let lo = -m - 8 - SCAN;
    let hi = -m + 8 + SCAN;
    let mut floor = hi + 1;
    for j in (lo..=hi).rev() {
        let mut kills = true;
        for i in m..=m + 2 * SCAN + 8 {
            let x = IterLaurent::monomial(one.clone(), i + j, -l - l_dual);
            if !residue2(&fd.omega.mul_fn(&x)?)?.is_zero() {
                kills = false;
                break;
            }
        }
        if !kills {
            break;
        }
        floor = j;
    }
    if floor <= lo || floor > hi {
        return Err(Error::Inconsistent(format!("annihilator floor at {} left the scan range", fd.flag)));
    }
    Ok(floor)
}

/// Offsets of the dual of `d` (nested, over `model`) read off at three
/// different evaluation subspaces; they agree iff evaluation is independent.
fn dual_offsets_nested(ctx: &DimContext, model: &QuotientModel, offset: i64) -> Result<Vec<i64>> {
    let k = &ctx.k_divisor;
    let steps: Vec<SurfaceCurve> = model.pieces.iter().rev().map(|p| p.curve.clone()).collect();
    let dual = QuotientModel::from_steps(ctx, &k.sub(&model.upper), &steps)?;
    let n = model.pieces.len();
    let mut out = Vec::new();
    for delta in [(0i64, 0i64), (1, 0), (-2, 3)] {
        let mut z = reference_subspace(model);
        let mut corr = 0;
        for (i, p) in model.pieces.iter().enumerate() {
            let dp = &dual.pieces[n - 1 - i];
            let mut zperp = dp.mu.clone();
            for (idx, fd) in ctx.flags_on(&p.curve).iter().enumerate() {
                let dz = if idx == 0 { delta.0 } else { delta.1 };
                z[i].add_at(fd.point.clone(), dz);
                let m = -z[i].coeff(&fd.point) - p.level * fd.e;
                let floor = annihilator_floor(fd, p.level, dp.level, m)?;
                let e_perp = -floor - dp.level * fd.e;
                zperp.add_at(fd.point.clone(), e_perp - dp.mu.coeff(&fd.point));
            }
            corr += rel_dim(&CurveLattice { bound: zperp }, &CurveLattice { bound: dp.mu.clone() });
        }
        let dz = evaluate(model, &DimElement {
            lower: LatticeDesc { divisor: model.lower.clone() },
            upper: LatticeDesc { divisor: model.upper.clone() },
            offset,
        }, &z)?;
        out.push(dz - corr);
    }
    Ok(out)
}

/// The dual offsets of `d` at three evaluation subspaces.
pub fn dual_evaluations(ctx: &DimContext, d: &DimElement) -> Result<Vec<i64>> {
    let (d1, d2) = (&d.lower.divisor, &d.upper.divisor);
    if !d1.is_monomial() || !d2.is_monomial() {
        return Err(Error::NonMonomial);
    }
    if d1.le(d2) {
        dual_offsets_nested(ctx, &QuotientModel::new(ctx, d1, d2)?, d.offset)
    } else if d2.le(d1) {
        let v = dual_offsets_nested(ctx, &QuotientModel::new(ctx, d2, d1)?, -d.offset)?;
        Ok(v.into_iter().map(|x| -x).collect())
    } else {
        let m = d1.min(d2);
        let a = dual_offsets_nested(ctx, &QuotientModel::new(ctx, &m, d1)?, 0)?;
        let b = dual_offsets_nested(ctx, &QuotientModel::new(ctx, &m, d2)?, d.offset)?;
        Ok(a.into_iter().zip(b).map(|(x, y)| y - x).collect())
    }
}

/// Transport of `d in Dim(A12(D1) | A12(D2))` to
/// `Dim(A12(K - D1) | A12(K - D2))` through the residue pairing.
pub fn dim_dual(ctx: &DimContext, d: &DimElement) -> Result<DimElement> {
    let offs = dual_evaluations(ctx, d)?;
    if offs.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Inconsistent(format!("dual value depends on the evaluation subspace: {offs:?}")));
    }
    let k = &ctx.k_divisor;
    Ok(DimElement {
        lower: LatticeDesc { divisor: k.sub(&d.lower.divisor) },
        upper: LatticeDesc { divisor: k.sub(&d.upper.divisor) },
        offset: offs[0],
    })
}

/// For `E1 <= E2 <= E3`: the value of the composite at a graded `Z` versus
/// `d1(Z ∩ U1) + d3(image of Z)`, with `U1 = E2/E1`.
pub fn dim_iso_check(
    ctx: &DimContext,
    d1: &DimElement,
    d3: &DimElement,
    z: &PieceSubspace,
) -> Result<(i64, i64)> {
    let m1 = QuotientModel::new(ctx, &d1.lower.divisor, &d1.upper.divisor)?;
    let m3 = QuotientModel::new(ctx, &d3.lower.divisor, &d3.upper.divisor)?;
    let mut steps: Vec<SurfaceCurve> = m1.pieces.iter().map(|p| p.curve.clone()).collect();
    steps.extend(m3.pieces.iter().map(|p| p.curve.clone()));
    let m2 = QuotientModel::from_steps(ctx, &m1.lower, &steps)?;
    let d2 = dim_compose(d1, d3)?;
    let whole = evaluate(&m2, &d2, z)?;
    let n1 = m1.pieces.len();
    let parts = evaluate(&m1, d1, &z[..n1].to_vec())? + evaluate(&m3, d3, &z[n1..].to_vec())?;
    Ok((whole, parts))
}
