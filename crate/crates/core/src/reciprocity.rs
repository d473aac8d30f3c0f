//! The residue pairing on adeles, the reciprocity laws along a curve and
//! around a point, and finite-box orthogonality certificates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{OrthogonalityReport, ReciprocityReport, ReciprocitySample, SCHEMA};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::{residue2, ExpansionWindow, IterLaurent, Poly2, RationalFunction};
use crate::surface::{Flag, Surface, SurfaceCurve, SurfaceDivisor, SurfacePoint};

/// Finitely many adele components; zero elsewhere.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdeleSample {
    pub entries: BTreeMap<Flag, IterLaurent>,
}

impl AdeleSample {
    pub fn single(f: Flag, s: IterLaurent) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(f, s);
        AdeleSample { entries }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut entries = self.entries.clone();
        for (f, s) in &other.entries {
            let v = match entries.get(f) {
                Some(a) => a.add(s)?,
                None => s.clone(),
            };
            entries.insert(f.clone(), v);
        }
        Ok(AdeleSample { entries })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AdeleSample { entries: self.entries.iter().map(|(f, s)| (f.clone(), s.scale(c))).collect() }
    }
}

/// `sum over flags of res(f g omega)`.
pub fn global_pairing(s: &Surface, f: &AdeleSample, g: &AdeleSample) -> Result<Scalar> {
    let one = RationalFunction::poly(Poly2::one(s.field));
    let mut acc = s.field.zero();
    for (flag, a) in &f.entries {
        let Some(b) = g.entries.get(flag) else { continue };
        let w = s.form_at(&one, flag)?;
        acc = &acc + &residue2(&w.mul_fn(&a.mul(b)?)?)?;
    }
    Ok(acc)
}

/// A rational two-form `h omega` with the curves carrying its poles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub h: RationalFunction,
    pub polar: Vec<SurfaceCurve>,
    pub label: String,
}

impl Form {
    /// Detect the polar curves of `h`: the boundary curves, plus the
    /// coordinate curves `X = c`, `Y = c` dividing the denominator. Any other
    /// denominator factor is rejected.
    pub fn new(s: &Surface, h: RationalFunction, label: String) -> Result<Self> {
        let mut polar: BTreeSet<SurfaceCurve> = s.invariant_curves().into_iter().collect();
        let mut den = h.den.clone();
        // strip monomials, then linear factors X - c and Y - c
        let (i, j) = den.min_exponents();
        den = den.shift(-i, -j);
        for var in 0..2 {
            while let Some(c) = linear_root(&den, var) {
                den = divide_linear(&den, var, &c)?;
                polar.insert(if var == 0 { s.x_curve(Some(c)) } else { s.y_curve(Some(c)) });
            }
        }
        if den.as_monomial().is_none_or(|((a, b), _)| a != 0 || b != 0) {
            return Err(Error::UnsupportedConfiguration(format!(
                "denominator of {label} has factors other than X - c and Y - c"
            )));
        }
        Ok(Form { h, polar: polar.into_iter().collect(), label })
    }
}

/// A root `c` such that `var - c` divides `p`, if one exists.
fn linear_root(p: &Poly2, var: usize) -> Option<Scalar> {
    let k = p.field();
    let deg = p.terms().map(|((i, j), _)| if var == 0 { i } else { j }).max()?;
    if deg <= 0 {
        return None;
    }
    // `var - c` divides p iff p vanishes identically after substituting c
    candidates(p, var).into_iter().find(|c| {
        let mut coeffs: BTreeMap<i64, Scalar> = BTreeMap::new();
        for ((i, j), a) in p.terms() {
            let (e, other) = if var == 0 { (i, j) } else { (j, i) };
            let v = c.pow(e).expect("nonnegative exponent");
            let slot = coeffs.entry(other).or_insert_with(|| k.zero());
            *slot = &*slot + &(a * &v);
        }
        coeffs.values().all(Scalar::is_zero)
    })
}

/// Candidate roots: all of F_p, or rational-root-theorem candidates over Q.
fn candidates(p: &Poly2, var: usize) -> Vec<Scalar> {
    let k = p.field();
    match k {
        FieldSpec::Prime(q) => (1..q).map(|v| k.int(v as i64)).collect(),
        FieldSpec::Rationals => {
            // roots of the coefficient of the lowest power of the other variable
            let mut lowest: BTreeMap<i64, Scalar> = BTreeMap::new();
            let other_min = p.terms().map(|((i, j), _)| if var == 0 { j } else { i }).min().unwrap_or(0);
            for ((i, j), a) in p.terms() {
                let (e, other) = if var == 0 { (i, j) } else { (j, i) };
                if other == other_min {
                    lowest.insert(e, a.clone());
                }
            }
            rational_root_candidates(&lowest)
        }
    }
}

fn rational_root_candidates(coeffs: &BTreeMap<i64, Scalar>) -> Vec<Scalar> {
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive, Zero};
    let k = FieldSpec::Rationals;
    let rats: Vec<(i64, num_rational::BigRational)> = coeffs
        .iter()
        .filter_map(|(e, c)| match c {
            Scalar::Q(r) => Some((*e, r.clone())),
            _ => None,
        })
        .collect();
    let Some(lcm) = rats.iter().map(|(_, r)| r.denom().clone()).reduce(|a, b| a.lcm(&b)) else {
        return Vec::new();
    };
    let ints: Vec<(i64, num_bigint::BigInt)> = rats.iter().map(|(e, r)| (*e, (r * &lcm).to_integer())).collect();
    let low = ints.iter().find(|(_, v)| !v.is_zero()).map(|(_, v)| v.abs());
    let high = ints.last().map(|(_, v)| v.abs());
    let divisors = |n: Option<num_bigint::BigInt>| -> Vec<i64> {
        let n = n.and_then(|n| n.to_i64()).unwrap_or(1).min(1_000_000);
        (1..=n).filter(|d| n % d == 0).collect()
    };
    let mut out = Vec::new();
    for a in divisors(low) {
        for b in divisors(high.clone()) {
            out.push(k.frac(a, b));
            out.push(k.frac(-a, b));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Exact division of `p` by `var - c`.
fn divide_linear(p: &Poly2, var: usize, c: &Scalar) -> Result<Poly2> {
    let k = p.field();
    // group by the other variable and run synthetic division on each slice
    let mut slices: BTreeMap<i64, BTreeMap<i64, Scalar>> = BTreeMap::new();
    for ((i, j), a) in p.terms() {
        let (e, other) = if var == 0 { (i, j) } else { (j, i) };
        slices.entry(other).or_default().insert(e, a.clone());
    }
    let mut out = Vec::new();
    for (other, slice) in slices {
        let deg = *slice.keys().next_back().expect("nonempty slice");
        let mut carry = k.zero();
        let mut quot = BTreeMap::new();
        for e in (0..=deg).rev() {
            let a = slice.get(&e).cloned().unwrap_or_else(|| k.zero());
            let v = &a + &carry;
            if e == 0 {
                if !v.is_zero() {
                    return Err(Error::Inconsistent("linear factor does not divide".into()));
                }
            } else {
                carry = &v * c;
                quot.insert(e - 1, v);
            }
        }
        for (e, v) in quot {
            let exps = if var == 0 { (e, other) } else { (other, e) };
            out.push((exps, v));
        }
    }
    Ok(Poly2::from_terms(k, out))
}

fn residue_at(s: &Surface, form: &Form, f: &Flag) -> Result<Scalar> {
    residue2(&s.form_at(&form.h, f)?)
}

/// Points of `c` met by the other polar curves.
pub fn special_points(s: &Surface, form: &Form, c: &SurfaceCurve) -> Result<BTreeSet<SurfacePoint>> {
    let mut pts = BTreeSet::new();
    for o in &form.polar {
        pts.extend(s.intersections(c, o)?);
    }
    Ok(pts)
}

/// `sum over x in C of res_{x,C}(h omega)`.
pub fn reciprocity_along_curve(s: &Surface, form: &Form, c: &SurfaceCurve) -> Result<Scalar> {
    let mut acc = s.field.zero();
    for p in special_points(s, form, c)? {
        acc = &acc + &residue_at(s, form, &Flag { point: p, curve: c.clone() })?;
    }
    Ok(acc)
}

/// `sum over curves C through x of res_{x,C}(h omega)`.
pub fn reciprocity_around_point(s: &Surface, form: &Form, x: &SurfacePoint) -> Result<Scalar> {
    let mut acc = s.field.zero();
    for c in form.polar.iter().filter(|c| s.contains(c, x)) {
        acc = &acc + &residue_at(s, form, &Flag { point: x.clone(), curve: c.clone() })?;
    }
    Ok(acc)
}

/// Both laws for one form, at every polar curve and every special point.
pub fn check_form(s: &Surface, form: &Form) -> Result<ReciprocitySample> {
    let mut along = Vec::new();
    let mut points = BTreeSet::new();
    for c in &form.polar {
        along.push((c.label(), reciprocity_along_curve(s, form, c)?));
        points.extend(special_points(s, form, c)?);
    }
    let mut around = Vec::new();
    for p in &points {
        around.push((p.to_string(), reciprocity_around_point(s, form, p)?));
    }
    let ok = along.iter().chain(&around).all(|(_, v)| v.is_zero());
    let show = |v: Vec<(String, Scalar)>| v.into_iter().map(|(a, b)| (a, b.to_string())).collect();
    Ok(ReciprocitySample { form: form.label.clone(), along_curves: show(along), around_points: show(around), ok })
}

fn fmt_poly(p: &Poly2) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, ((i, j), c)) in p.terms().enumerate() {
        if n > 0 {
            out.push_str(" + ");
        }
        out.push_str(&format!("{c}"));
        for (v, e) in [("x", i), ("y", j)] {
            match e {
                0 => {}
                1 => out.push_str(&format!("*{v}")),
                _ => out.push_str(&format!("*{v}^{e}")),
            }
        }
    }
    out
}

fn random_coeff(k: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match k {
        FieldSpec::Prime(p) => k.int(rng.gen_range(1..p) as i64),
        FieldSpec::Rationals => {
            let n = rng.gen_range(1..=7);
            k.int(if rng.gen_bool(0.5) { n } else { -n })
        }
    }
}

/// Check `samples` random forms drawn from `seed`; `elapsed_ms` is left at 0.
pub fn reciprocity_suite(s: &Surface, samples: usize, seed: u64) -> Result<ReciprocityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let form = random_form(s, &mut rng)?;
        out.push(check_form(s, &form)?);
    }
    let passed = out.iter().filter(|r| r.ok).count();
    Ok(ReciprocityReport {
        schema: SCHEMA,
        surface: s.kind.label().into(),
        field: s.field.label(),
        seed,
        total: out.len(),
        samples: out,
        passed,
        elapsed_ms: 0,
    })
}

/// A random form `N / (X^i Y^j (X - c1)^k1 (Y - c2)^k2)` with poles on
/// coordinate curves.
pub fn random_form(s: &Surface, rng: &mut ChaCha8Rng) -> Result<Form> {
    let k = s.field;
    let mut num = Poly2::zero(k);
    for _ in 0..rng.gen_range(1..=3) {
        num = num.add(&Poly2::monomial(random_coeff(k, rng), rng.gen_range(0..=2), rng.gen_range(0..=2)));
    }
    if num.is_zero() {
        num = Poly2::one(k);
    }
    let (i, j) = (rng.gen_range(-1..=2), rng.gen_range(-1..=2));
    let (k1, k2) = (rng.gen_range(0..=2u32), rng.gen_range(0..=2u32));
    let (c1, c2) = (random_coeff(k, rng), random_coeff(k, rng));
    let x = Poly2::monomial(k.one(), 1, 0);
    let y = Poly2::monomial(k.one(), 0, 1);
    let lx = x.sub(&Poly2::constant(c1.clone()));
    let ly = y.sub(&Poly2::constant(c2.clone()));
    let den = Poly2::monomial(k.one(), i, j).mul(&lx.pow(k1)).mul(&ly.pow(k2));
    let h = RationalFunction::new(num.clone(), den)?;
    let factors: Vec<String> = [
        ("x".to_string(), i),
        ("y".to_string(), j),
        (format!("(x - {c1})"), i64::from(k1)),
        (format!("(y - {c2})"), i64::from(k2)),
    ]
    .into_iter()
    .filter(|(_, e)| *e != 0)
    .map(|(b, e)| if e == 1 { b } else { format!("{b}^{e}") })
    .collect();
    let den_label = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
    let label = format!("({})/({den_label})", fmt_poly(&num));
    Form::new(s, h, label)
}

/// Residue pairing of `u^i t^j` with `u^i' t^j'` at a flag against `omega`.
fn monomial_pairing(omega: &crate::series::TwoForm, a: (i64, i64), b: (i64, i64)) -> Result<Scalar> {
    let one = omega.coeff.field().one();
    residue2(&omega.mul_fn(&IterLaurent::monomial(one, a.0 + b.0, a.1 + b.1))?)
}

/// Certify `A12(D)^perp = A12(K - D)` inside finite boxes at every fixed flag.
///
/// The box for `A12(D)` is `|i| <= r`, `|j + D_C| <= r`; the candidate box
/// for the annihilator is its mirror image under the residue pairing.
pub fn orthogonality_box_check(s: &Surface, d: &SurfaceDivisor, r: i64) -> Result<OrthogonalityReport> {
    if !d.is_monomial() {
        return Err(Error::NonMonomial);
    }
    let k_div = s.canonical_data().k_divisor;
    let one = RationalFunction::poly(Poly2::one(s.field));
    let mut vanish = true;
    let mut dims = Vec::new();
    for f in s.fixed_flags() {
        let coords = s.local_coords(&f)?;
        let w = crate::series::TwoForm::from_global_window(
            &one,
            &coords,
            ExpansionWindow { u_hi: 4 * r + 4, t_hi: 4 * r + 4 },
        )?;
        let (a, b) = w.coeff.valuation()?;
        let dc = d.coeff(&f.curve);
        let lattice: Vec<(i64, i64)> = (-r..=r)
            .flat_map(|i| (-dc..=-dc + r).map(move |j| (i, j)))
            .collect();
        let cand: Vec<(i64, i64)> = (-r..=r)
            .flat_map(|i| (-dc - r..=-dc + r).map(move |j| (-1 - b - i, -1 - a - j)))
            .collect();
        let floor = -(k_div.coeff(&f.curve) - dc);
        let expected: Vec<(i64, i64)> = cand.iter().copied().filter(|(_, j)| *j >= floor).collect();
        for x in &lattice {
            for y in &expected {
                vanish &= monomial_pairing(&w, *x, *y)?.is_zero();
            }
        }
        let mut m = Matrix::zeros(s.field, lattice.len(), cand.len());
        for (ri, x) in lattice.iter().enumerate() {
            for (ci, y) in cand.iter().enumerate() {
                m.set(ri, ci, monomial_pairing(&w, *x, *y)?);
            }
        }
        let ann = cand.len() - m.rank();
        dims.push((f.to_string(), ann, expected.len()));
    }
    let ok = vanish && dims.iter().all(|(_, a, e)| a == e);
    Ok(OrthogonalityReport { divisor: d.to_string(), radius: r, pairings_vanish: vanish, dims, ok })
}
