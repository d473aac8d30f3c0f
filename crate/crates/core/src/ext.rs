//! The central extension of the idele group by `Z`: ideles at the fixed
//! flags, lifts through the three splittings, the group law with its
//! transport term, commutators, transition data and the invariant `f`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dim::{dim_dual, nu_minus_mu, nu_offset, DimContext, DimElement, LatticeDesc};
use crate::error::{Error, Result};
use crate::report::{BasisChangeReport, IdentityReport, SCHEMA};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::{IterLaurent, Poly2, RationalFunction};
use crate::surface::{EquationMode, Flag, SurfaceCurve, SurfaceDivisor};

/// An idele recorded at the fixed flags. Away from them every entry is a
/// unit whose leading `u`-valuation is zero, so the fixed flags carry all
/// the data the extension needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceIdele {
    field: FieldSpec,
    entries: BTreeMap<Flag, IterLaurent>,
}

impl SurfaceIdele {
    pub fn one(field: FieldSpec) -> Self {
        SurfaceIdele { field, entries: BTreeMap::new() }
    }

    pub fn from_entries(field: FieldSpec, entries: impl IntoIterator<Item = (Flag, IterLaurent)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (f, s) in entries {
            if s.field() != field {
                return Err(Error::FieldMismatch);
            }
            s.valuation().map_err(|_| Error::NotAUnit)?;
            map.insert(f, s);
        }
        Ok(SurfaceIdele { field, entries: map })
    }

    /// The local-equation idele `j_1,D` or `j_2,D`.
    pub fn local_equation(ctx: &DimContext, d: &SurfaceDivisor, mode: EquationMode) -> Result<Self> {
        if !d.is_monomial() {
            return Err(Error::NonMonomial);
        }
        let s = &ctx.surface;
        let entries = s.fixed_flags().into_iter().map(|f| s.local_equation(d, &f, mode).map(|e| (f, e)));
        Self::from_entries(s.field, entries.collect::<Result<Vec<_>>>()?)
    }

    /// The diagonal image of a rational function.
    pub fn rational(ctx: &DimContext, g: &RationalFunction) -> Result<Self> {
        let s = &ctx.surface;
        let entries = s.fixed_flags().into_iter().map(|f| s.expand_at(g, &f).map(|e| (f, e)));
        Self::from_entries(s.field, entries.collect::<Result<Vec<_>>>()?)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entry(&self, f: &Flag) -> IterLaurent {
        self.entries.get(f).cloned().unwrap_or_else(|| IterLaurent::one(self.field))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Flag, &IterLaurent)> {
        self.entries.iter()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut entries = BTreeMap::new();
        for f in self.entries.keys().chain(other.entries.keys()) {
            if !entries.contains_key(f) {
                entries.insert(f.clone(), self.entry(f).mul(&other.entry(f))?);
            }
        }
        Ok(SurfaceIdele { field: self.field, entries })
    }

    pub fn inverse(&self, ctx: &DimContext) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (f, s) in &self.entries {
            entries.insert(f.clone(), s.invert(ctx.surface.policy)?);
        }
        Ok(SurfaceIdele { field: self.field, entries })
    }

    /// Entrywise agreement on certified coefficients.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.entries.keys().chain(other.entries.keys()).all(|f| self.entry(f).agrees_with(&other.entry(f)))
    }

    pub fn is_one(&self) -> bool {
        self.agrees_with(&SurfaceIdele::one(self.field))
    }

    /// `(v_t, v_u)` at a flag.
    pub fn valuation(&self, f: &Flag) -> Result<(i64, i64)> {
        self.entry(f).valuation()
    }

    /// Per-curve `t`-exponents; consistent along each boundary curve.
    pub fn t_exponents(&self, ctx: &DimContext) -> Result<SurfaceDivisor> {
        let mut d = SurfaceDivisor::zero();
        for c in &ctx.curves {
            let mut val: Option<i64> = None;
            for fd in ctx.flags_on(c) {
                let v = self.valuation(&fd.flag)?.0;
                if val.is_some_and(|w| w != v) {
                    return Err(Error::Inconsistent(format!("t-exponent of the idele varies along {c}")));
                }
                val = Some(v);
            }
            d.add_at(c.clone(), val.unwrap_or(0));
        }
        Ok(d)
    }

    /// The lattice `g A12 = A12(-div_t g)`.
    pub fn lattice(&self, ctx: &DimContext) -> Result<LatticeDesc> {
        Ok(LatticeDesc { divisor: self.t_exponents(ctx)?.neg() })
    }
}

/// `w_C(g) = sum over fixed x on C of (v_u g at (x, C)) - e_{C'_x}(g)`: the
/// shift of the reference subspace of one graded piece on `C` under `g`.
fn piece_weights(ctx: &DimContext, g: &SurfaceIdele) -> Result<BTreeMap<SurfaceCurve, i64>> {
    let e = g.t_exponents(ctx)?;
    let mut w = BTreeMap::new();
    for c in &ctx.curves {
        let mut s = 0;
        for fd in ctx.flags_on(c) {
            s += g.valuation(&fd.flag)?.1 - e.coeff(&fd.crossing);
        }
        w.insert(c.clone(), s);
    }
    Ok(w)
}

/// Offset of `g(mu_{D1,D2})` against `mu_{D1 - e, D2 - e}`.
pub fn transport_shift(ctx: &DimContext, g: &SurfaceIdele, d1: &SurfaceDivisor, d2: &SurfaceDivisor) -> Result<i64> {
    let w = piece_weights(ctx, g)?;
    let diff = d2.sub(d1);
    Ok(ctx.curves.iter().map(|c| diff.coeff(c) * w[c]).sum())
}

/// The three subgroups with canonical splittings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subgroup {
    A12,
    A02,
    A01,
}

impl Subgroup {
    fn name(self) -> &'static str {
        match self {
            Subgroup::A12 => "A12",
            Subgroup::A02 => "A02",
            Subgroup::A01 => "A01",
        }
    }
}

pub fn in_subgroup(ctx: &DimContext, g: &SurfaceIdele, h: Subgroup) -> Result<bool> {
    let e = g.t_exponents(ctx)?;
    Ok(match h {
        Subgroup::A12 => e.is_zero(),
        Subgroup::A02 => {
            let mut ok = true;
            for c in &ctx.curves {
                for fd in ctx.flags_on(c) {
                    ok &= g.valuation(&fd.flag)?.1 == e.coeff(&fd.crossing);
                }
            }
            ok
        }
        Subgroup::A01 => {
            let mut ok = true;
            for c in &ctx.curves {
                let mut s = 0;
                for fd in ctx.flags_on(c) {
                    s += g.valuation(&fd.flag)?.1 - e.coeff(c) * fd.e;
                }
                ok &= s == 0;
            }
            ok
        }
    })
}

/// `(g, d)` with `d in Dim(B | g B)` for the base lattice `B` (`A12`, or
/// `A12(K)` on the dual side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedElement {
    pub g: SurfaceIdele,
    pub d: DimElement,
}

impl LiftedElement {
    /// The central integer, defined when `g = 1`.
    pub fn central_value(&self) -> Result<i64> {
        if !self.g.is_one() || self.d.lower != self.d.upper {
            return Err(Error::LatticeMismatch("element is not central".into()));
        }
        Ok(self.d.offset)
    }

    /// Equality of ideles on certified coefficients and of dimension theories.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.d == other.d && self.g.agrees_with(&other.g)
    }
}

/// `(1, m)` over the base lattice `A12`.
pub fn central(field: FieldSpec, m: i64) -> LiftedElement {
    LiftedElement { g: SurfaceIdele::one(field), d: DimElement::central(LatticeDesc::base(), m) }
}

/// A lift of `g` with an arbitrary offset.
pub fn lift_with_offset(ctx: &DimContext, g: &SurfaceIdele, offset: i64) -> Result<LiftedElement> {
    Ok(LiftedElement { d: DimElement { lower: LatticeDesc::base(), upper: g.lattice(ctx)?, offset }, g: g.clone() })
}

/// The canonical splitting over a subgroup: zero theory on `A12`, `mu` on
/// `A02`, `nu` on `A01`.
pub fn lift(ctx: &DimContext, g: &SurfaceIdele, h: Subgroup) -> Result<LiftedElement> {
    if !in_subgroup(ctx, g, h)? {
        return Err(Error::SubgroupMismatch(h.name()));
    }
    let upper = g.lattice(ctx)?;
    let offset = match h {
        Subgroup::A12 | Subgroup::A02 => 0,
        Subgroup::A01 => nu_offset(ctx, &SurfaceDivisor::zero(), &upper.divisor)?,
    };
    Ok(LiftedElement { g: g.clone(), d: DimElement { lower: LatticeDesc::base(), upper, offset } })
}

fn check_shape(ctx: &DimContext, x: &LiftedElement) -> Result<()> {
    let e = x.g.t_exponents(ctx)?;
    if x.d.upper.divisor != x.d.lower.divisor.sub(&e) {
        return Err(Error::LatticeMismatch("dimension theory does not end at g B".into()));
    }
    Ok(())
}

/// `(g1, d1)(g2, d2) = (g1 g2, d1 + g1(d2))`.
pub fn group_mul(ctx: &DimContext, x: &LiftedElement, y: &LiftedElement) -> Result<LiftedElement> {
    check_shape(ctx, x)?;
    check_shape(ctx, y)?;
    if x.d.lower != y.d.lower {
        return Err(Error::LatticeMismatch("factors use different base lattices".into()));
    }
    let base = &x.d.lower.divisor;
    let g = x.g.mul(&y.g)?;
    let tau = transport_shift(ctx, &x.g, base, &y.d.upper.divisor)?;
    let upper = LatticeDesc { divisor: base.sub(&g.t_exponents(ctx)?) };
    Ok(LiftedElement { g, d: DimElement { lower: x.d.lower.clone(), upper, offset: x.d.offset + y.d.offset + tau } })
}

pub fn inverse(ctx: &DimContext, x: &LiftedElement) -> Result<LiftedElement> {
    check_shape(ctx, x)?;
    let gi = x.g.inverse(ctx)?;
    let base = &x.d.lower.divisor;
    let e = x.g.t_exponents(ctx)?;
    let tau = transport_shift(ctx, &x.g, base, &base.add(&e))?;
    Ok(LiftedElement {
        g: gi,
        d: DimElement { lower: x.d.lower.clone(), upper: LatticeDesc { divisor: base.add(&e) }, offset: -x.d.offset - tau },
    })
}

/// Product of a sequence of lifted elements, left to right.
pub fn product(ctx: &DimContext, xs: &[&LiftedElement]) -> Result<LiftedElement> {
    let mut acc = xs.first().map(|x| (*x).clone()).ok_or(Error::LatticeMismatch("empty product".into()))?;
    for x in &xs[1..] {
        acc = group_mul(ctx, &acc, x)?;
    }
    Ok(acc)
}

/// `<x, y> = x' y' x'^-1 y'^-1` for lifts with the given offsets.
pub fn commutator_with_lifts(ctx: &DimContext, x: &SurfaceIdele, y: &SurfaceIdele, ox: i64, oy: i64) -> Result<i64> {
    let xl = lift_with_offset(ctx, x, ox)?;
    let yl = lift_with_offset(ctx, y, oy)?;
    let (xi, yi) = (inverse(ctx, &xl)?, inverse(ctx, &yl)?);
    product(ctx, &[&xl, &yl, &xi, &yi])?.central_value()
}

pub fn commutator(ctx: &DimContext, x: &SurfaceIdele, y: &SurfaceIdele) -> Result<i64> {
    commutator_with_lifts(ctx, x, y, 0, 0)
}

/// `-<j2,S, j1,T>`.
pub fn intersection_via_pairing(ctx: &DimContext, s: &SurfaceDivisor, t: &SurfaceDivisor) -> Result<i64> {
    let js = SurfaceIdele::local_equation(ctx, s, EquationMode::Pointwise)?;
    let jt = SurfaceIdele::local_equation(ctx, t, EquationMode::Curvewise)?;
    Ok(-commutator(ctx, &js, &jt)?)
}

/// The two chain expressions for `(S, T)`:
/// `(mu(0,-T) nu(-T,-T-S)) - (nu(0,-S) mu(-S,-S-T))` and the same with `S, T` negated.
pub fn intersection_via_dim_chains(ctx: &DimContext, s: &SurfaceDivisor, t: &SurfaceDivisor) -> Result<(i64, i64)> {
    let chain = |s: &SurfaceDivisor, t: &SurfaceDivisor| -> Result<i64> {
        let z = SurfaceDivisor::zero();
        let (mt, ms) = (t.neg(), s.neg());
        let mst = ms.sub(t);
        Ok(nu_minus_mu(ctx, &mt, &mst)? - nu_minus_mu(ctx, &z, &ms)?)
    };
    Ok((chain(s, t)?, chain(&s.neg(), &t.neg())?))
}

/// Transition ideles of `O(D)`: generic to pointwise, generic to curvewise,
/// pointwise to curvewise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionData {
    pub alpha01: SurfaceIdele,
    pub alpha02: SurfaceIdele,
    pub alpha21: SurfaceIdele,
}

impl TransitionData {
    pub fn new(ctx: &DimContext, d: &SurfaceDivisor) -> Result<Self> {
        let alpha02 = SurfaceIdele::local_equation(ctx, d, EquationMode::Pointwise)?;
        let alpha01 = SurfaceIdele::local_equation(ctx, d, EquationMode::Curvewise)?;
        let alpha21 = alpha02.inverse(ctx)?.mul(&alpha01)?;
        Ok(TransitionData { alpha01, alpha02, alpha21 })
    }

    pub fn alpha10(&self, ctx: &DimContext) -> Result<SurfaceIdele> {
        self.alpha01.inverse(ctx)
    }

    pub fn alpha12(&self, ctx: &DimContext) -> Result<SurfaceIdele> {
        self.alpha21.inverse(ctx)
    }

    /// `alpha02 alpha21 alpha10 = 1` on certified coefficients.
    pub fn cocycle_holds(&self, ctx: &DimContext) -> Result<bool> {
        Ok(self.alpha02.mul(&self.alpha21)?.mul(&self.alpha10(ctx)?)?.is_one())
    }

    /// The three canonical lifts `(alpha02, alpha21, alpha10)`.
    pub fn lifts(&self, ctx: &DimContext) -> Result<[LiftedElement; 3]> {
        Ok([
            lift(ctx, &self.alpha02, Subgroup::A02)?,
            lift(ctx, &self.alpha21, Subgroup::A12)?,
            lift(ctx, &self.alpha10(ctx)?, Subgroup::A01)?,
        ])
    }

    /// Central integer of `lift(alpha02) lift(alpha21) lift(alpha10)`.
    pub fn f_value(&self, ctx: &DimContext) -> Result<i64> {
        if !self.cocycle_holds(ctx)? {
            return Err(Error::Inconsistent("transition ideles violate the cocycle identity".into()));
        }
        let [a, b, c] = self.lifts(ctx)?;
        product(ctx, &[&a, &b, &c])?.central_value()
    }
}

pub fn f_invariant(ctx: &DimContext, d: &SurfaceDivisor) -> Result<i64> {
    TransitionData::new(ctx, d)?.f_value(ctx)
}

/// `phi(g, d) = (g^-1, dual of d)`, landing in the extension built on `A12(K)`.
pub fn dual_transport(ctx: &DimContext, x: &LiftedElement) -> Result<LiftedElement> {
    check_shape(ctx, x)?;
    Ok(LiftedElement { g: x.g.inverse(ctx)?, d: dim_dual(ctx, &x.d)? })
}

/// `(1, m)` over `A12(K)`.
pub fn dual_central(ctx: &DimContext, m: i64) -> LiftedElement {
    LiftedElement {
        g: SurfaceIdele::one(ctx.surface.field),
        d: DimElement::central(LatticeDesc { divisor: ctx.k_divisor.clone() }, m),
    }
}

/// Every identity for one monomial divisor; `elapsed_ms` is left to the caller.
pub fn verify_identities(ctx: &DimContext, d: &SurfaceDivisor) -> Result<IdentityReport> {
    if !d.is_monomial() {
        return Err(Error::NonMonomial);
    }
    let s = &ctx.surface;
    let k = &ctx.k_divisor;
    let td = TransitionData::new(ctx, d)?;
    let f = td.f_value(ctx)?;
    let chi_diff = nu_minus_mu(ctx, &SurfaceDivisor::zero(), d)?;
    let dd = s.classical_intersection(d, d);
    let kd = s.classical_intersection(k, d);
    let th1_rhs = chi_diff - dd;
    let num = -kd - dd;
    if num % 2 != 0 {
        return Err(Error::Inconsistent(format!("-(K.D + D.D)/2 is not an integer for {d}")));
    }
    let th2_rhs = num / 2;
    let rr_ok = 2 * chi_diff == dd - kd && chi_diff == s.classical_chi_diff(d);

    // lift(alpha02) lift(alpha10) = (nu - mu over A12 in A12(D)) lift(alpha12)
    let [a02, _, a10] = td.lifts(ctx)?;
    let lhs = group_mul(ctx, &a02, &a10)?;
    let rhs = group_mul(ctx, &central(s.field, chi_diff), &lift(ctx, &td.alpha12(ctx)?, Subgroup::A12)?)?;
    let lemma1_ok = lhs.agrees_with(&rhs);

    // d - c = (D, K): c on A12 in A12(D), d on the dual side at A12(K) in A12(K + D)
    let c = chi_diff;
    let j1 = SurfaceIdele::local_equation(ctx, d, EquationMode::Curvewise)?;
    let dual = dual_transport(ctx, &lift(ctx, &j1, Subgroup::A01)?)?;
    let dual_direct = nu_minus_mu(ctx, k, &k.add(d))?;
    let dval = dual.d.offset;
    let dminusc_ok = dval == dual_direct && dual.d.upper.divisor == k.add(d) && dval - c == kd;

    Ok(IdentityReport {
        schema: SCHEMA,
        surface: s.kind.label().to_string(),
        field: s.field.label(),
        divisor: d.to_string(),
        f,
        th1_rhs,
        th2_rhs,
        chi_diff,
        self_intersection: dd,
        k_dot_d: kd,
        lemma1_ok,
        dminusc_ok,
        rr_ok,
        elapsed_ms: 0,
    })
}

fn random_unit(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.int(rng.gen_range(1..p) as i64),
        FieldSpec::Rationals => {
            let n = rng.gen_range(1..=9);
            field.frac(if rng.gen_bool(0.5) { n } else { -n }, rng.gen_range(1..=5))
        }
    }
}

fn random_scalar(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    if rng.gen_bool(0.2) {
        field.zero()
    } else {
        random_unit(field, rng)
    }
}

/// A random admissible change of trivializations.
#[derive(Debug, Clone)]
pub struct BasisChange {
    /// A rational function `c X^a Y^b`.
    pub alpha0: SurfaceIdele,
    /// Per boundary curve `c s^k (1 + l t)`.
    pub alpha1: SurfaceIdele,
    /// Per fixed point `c + l a + m b` in chart coordinates.
    pub alpha2: SurfaceIdele,
}

impl BasisChange {
    pub fn identity(field: FieldSpec) -> Self {
        BasisChange { alpha0: SurfaceIdele::one(field), alpha1: SurfaceIdele::one(field), alpha2: SurfaceIdele::one(field) }
    }

    pub fn random(ctx: &DimContext, seed: u64) -> Result<Self> {
        let s = &ctx.surface;
        let k = s.field;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let g0 = RationalFunction::monomial(random_unit(k, &mut rng), a, b);
        let alpha0 = SurfaceIdele::rational(ctx, &g0)?;

        let mut e1 = Vec::new();
        for c in &ctx.curves {
            let sc = s.coordinate_function(c)?.pow(rng.gen_range(-2..=2))?;
            let t = s.global_equation(c)?;
            let unit = RationalFunction::constant(k.one()).add(&t.scale(&random_scalar(k, &mut rng)));
            let g = sc.mul(&unit).scale(&random_unit(k, &mut rng));
            for fd in ctx.flags_on(c) {
                e1.push((fd.flag.clone(), s.expand_at(&g, &fd.flag)?));
            }
        }
        let alpha1 = SurfaceIdele::from_entries(k, e1)?;

        let mut e2 = Vec::new();
        for p in s.fixed_points() {
            let poly = Poly2::from_terms(
                k,
                [
                    ((0, 0), random_unit(k, &mut rng)),
                    ((1, 0), random_scalar(k, &mut rng)),
                    ((0, 1), random_scalar(k, &mut rng)),
                ],
            );
            for f in s.fixed_flags().into_iter().filter(|f| f.point == p) {
                let (n, _) = s.local_coords(&f)?.chart_to_local(&poly, &Poly2::one(k))?;
                e2.push((f, IterLaurent::exact_from_terms(k, n.terms().map(|(e, c)| (e, c.clone())))));
            }
        }
        let alpha2 = SurfaceIdele::from_entries(k, e2)?;
        Ok(BasisChange { alpha0, alpha1, alpha2 })
    }

    /// `a02 -> a0 a02 a2^-1`, `a01 -> a0 a01 a1^-1`, `a21 -> a2 a21 a1^-1`.
    pub fn apply(&self, ctx: &DimContext, td: &TransitionData) -> Result<TransitionData> {
        let a1i = self.alpha1.inverse(ctx)?;
        let a2i = self.alpha2.inverse(ctx)?;
        Ok(TransitionData {
            alpha02: self.alpha0.mul(&td.alpha02)?.mul(&a2i)?,
            alpha01: self.alpha0.mul(&td.alpha01)?.mul(&a1i)?,
            alpha21: self.alpha2.mul(&td.alpha21)?.mul(&a1i)?,
        })
    }
}

/// Recompute `f` after one seeded random change of trivializations.
pub fn basis_change_test(ctx: &DimContext, d: &SurfaceDivisor, seed: u64) -> Result<BasisChangeReport> {
    let td = TransitionData::new(ctx, d)?;
    let f_base = td.f_value(ctx)?;
    let changed = BasisChange::random(ctx, seed)?.apply(ctx, &td)?;
    let f_changed = changed.f_value(ctx)?;
    Ok(BasisChangeReport { divisor: d.to_string(), seed, f_base, f_changed, ok: f_base == f_changed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{Surface, SurfaceKind};

    fn ctx(kind: SurfaceKind) -> DimContext {
        DimContext::new(Surface::new(kind, FieldSpec::default_prime())).unwrap()
    }

    fn line(c: &DimContext, m: i64) -> SurfaceDivisor {
        SurfaceDivisor::from_terms([(c.curves[0].clone(), m)])
    }

    #[test]
    fn f_on_plane() {
        let c = ctx(SurfaceKind::P2);
        assert_eq!(f_invariant(&c, &SurfaceDivisor::zero()).unwrap(), 0);
        assert_eq!(f_invariant(&c, &line(&c, 1)).unwrap(), 1);
        assert_eq!(f_invariant(&c, &line(&c, 3)).unwrap(), 0);
    }

    #[test]
    fn pairing_of_two_lines() {
        let c = ctx(SurfaceKind::P2);
        let l1 = SurfaceDivisor::from_terms([(c.curves[1].clone(), 1)]);
        let j2 = SurfaceIdele::local_equation(&c, &line(&c, 1), EquationMode::Pointwise).unwrap();
        let j1 = SurfaceIdele::local_equation(&c, &l1, EquationMode::Curvewise).unwrap();
        assert_eq!(commutator(&c, &j2, &j1).unwrap(), -1);
        assert_eq!(intersection_via_dim_chains(&c, &line(&c, 1), &line(&c, 1)).unwrap(), (1, 1));
    }

    #[test]
    fn identities_for_two_lines() {
        let c = ctx(SurfaceKind::P2);
        let r = verify_identities(&c, &line(&c, 2)).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!((r.f, r.chi_diff, r.self_intersection, r.k_dot_d), (1, 5, 4, -6));
    }

    #[test]
    fn basis_change_keeps_f() {
        let c = ctx(SurfaceKind::P1xP1);
        let d = SurfaceDivisor::from_terms([(c.curves[0].clone(), 1), (c.curves[2].clone(), -1)]);
        for seed in 0..5 {
            let r = basis_change_test(&c, &d, seed).unwrap();
            assert!(r.ok, "{r:?}");
        }
    }
}
