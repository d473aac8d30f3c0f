//! The acceptance sweeps. Each returns a one-line summary or the first failure.

use adelic_core::curve::{
    abstract_rr_check, cohomology_oracle, curve_cohomology, idele_degree, transition_idele, CurveDivisor, CurveIdele,
    CurvePoint,
};
use adelic_core::dim::{
    dim_compose, dim_dual, dim_iso_check, mu_element, nu_element, nu_minus_mu, reference_subspace, LatticeDesc,
    QuotientModel,
};
use adelic_core::ext::{
    basis_change_test, commutator, f_invariant, group_mul, intersection_via_dim_chains, intersection_via_pairing,
    lift, product, verify_identities, Subgroup, SurfaceIdele, TransitionData,
};
use adelic_core::reciprocity::{orthogonality_box_check, reciprocity_suite};
use adelic_core::series::{residue2, Frame, RationalFunction, TwoForm};
use adelic_core::surface::{DivisorClass, EquationMode, Surface, SurfaceDivisor, SurfaceKind};
use adelic_core::{FieldSpec, IterLaurent, Laurent1};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{classes, ctx, ctx_over, fp, monomials};

pub type Outcome = Result<String, String>;

const KINDS: [SurfaceKind; 2] = [SurfaceKind::P2, SurfaceKind::P1xP1];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn dbg<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn random_series(k: FieldSpec, rng: &mut ChaCha8Rng) -> IterLaurent {
    let n = rng.gen_range(0..6);
    IterLaurent::exact_from_terms(
        k,
        (0..n).map(|_| ((rng.gen_range(-3..=3), rng.gen_range(-3..=3)), k.int(rng.gen_range(-20..=20)))),
    )
}

pub fn residues() -> Outcome {
    let mut checked = 0;
    for k in [fp(), FieldSpec::Rationals] {
        let basic = TwoForm::new(IterLaurent::monomial(k.one(), -1, -1), Frame::UT);
        ensure!(residue2(&basic).map_err(dbg)? == k.one(), "res(u^-1 t^-1 du^dt) != 1 over {k}");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let (a, b) = (random_series(k, &mut rng), random_series(k, &mut rng));
            let c = k.int(rng.gen_range(-20..=20));
            let r = |s: &IterLaurent, f: Frame| residue2(&TwoForm::new(s.clone(), f)).map_err(dbg);
            let sum = a.add(&b).map_err(dbg)?;
            ensure!(r(&sum, Frame::UT)? == &r(&a, Frame::UT)? + &r(&b, Frame::UT)?, "additivity fails");
            ensure!(r(&a.scale(&c), Frame::UT)? == &c * &r(&a, Frame::UT)?, "homogeneity fails");
            ensure!(r(&a, Frame::TU)? == -r(&a, Frame::UT)?, "frame antisymmetry fails");
            checked += 1;
        }
    }
    Ok(format!("basic residue = 1; {checked} linearity/frame samples"))
}

pub fn reciprocity() -> Outcome {
    let mut parts = Vec::new();
    for kind in KINDS {
        for (field, n) in [(fp(), 100), (FieldSpec::Rationals, 10)] {
            let s = Surface::new(kind, field);
            let r = reciprocity_suite(&s, n, 2024).map_err(dbg)?;
            if let Some(bad) = r.samples.iter().find(|x| !x.ok) {
                return Err(format!("{} over {}: {bad:?}", kind.label(), field.label()));
            }
            parts.push(format!("{} {} {}/{}", kind.label(), field.label(), r.passed, r.total));
        }
        let s = Surface::new(kind, fp());
        let d = s.representative(match kind {
            SurfaceKind::P2 => DivisorClass::P2(1),
            SurfaceKind::P1xP1 => DivisorClass::P1xP1(1, -1),
        });
        for div in [SurfaceDivisor::zero(), d] {
            let b = orthogonality_box_check(&s, &div, 2).map_err(dbg)?;
            ensure!(b.ok, "finite-box orthogonality fails on {} for {div}: {b:?}", kind.label());
        }
    }
    Ok(parts.join(", ") + "; box certificates ok")
}

fn triple(c: &adelic_core::dim::DimContext, s: &SurfaceDivisor, t: &SurfaceDivisor) -> Result<(), String> {
    let p = intersection_via_pairing(c, s, t).map_err(dbg)?;
    let (a, b) = intersection_via_dim_chains(c, s, t).map_err(dbg)?;
    let o = c.surface.classical_intersection(s, t);
    ensure!(p == o && a == o && b == o, "({s}).({t}): pairing {p}, chains {a}/{b}, oracle {o}");
    Ok(())
}

fn random_monomial(s: &Surface, r: i64, rng: &mut ChaCha8Rng) -> SurfaceDivisor {
    SurfaceDivisor::from_terms(s.invariant_curves().into_iter().map(|c| (c, rng.gen_range(-r..=r))))
}

pub fn intersections() -> Outcome {
    let mut n = 0;
    for kind in KINDS {
        let c = ctx(kind);
        let reps: Vec<SurfaceDivisor> = classes(kind, 3).into_iter().map(|k| c.surface.representative(k)).collect();
        for s in &reps {
            for t in &reps {
                triple(&c, s, t)?;
                n += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..400 {
            let (s, t) = (random_monomial(&c.surface, 3, &mut rng), random_monomial(&c.surface, 3, &mut rng));
            triple(&c, &s, &t)?;
            n += 1;
        }
    }
    Ok(format!("{n} pairs agree on all three methods"))
}

pub fn euler() -> Outcome {
    let mut n = 0;
    for kind in KINDS {
        let c = ctx(kind);
        for d in monomials(&c.surface, 4) {
            let v = nu_minus_mu(&c, &SurfaceDivisor::zero(), &d).map_err(dbg)?;
            let o = c.surface.classical_chi_diff(&d);
            ensure!(v == o, "{}: nu - mu = {v}, chi-diff = {o} for {d}", kind.label());
            n += 1;
        }
    }
    let p2 = ctx(SurfaceKind::P2);
    let l = p2.surface.representative(DivisorClass::P2(3));
    ensure!(nu_minus_mu(&p2, &SurfaceDivisor::zero(), &l).map_err(dbg)? == 9, "3L should give 9");
    let q = ctx(SurfaceKind::P1xP1);
    let d = q.surface.representative(DivisorClass::P1xP1(2, 1));
    ensure!(nu_minus_mu(&q, &SurfaceDivisor::zero(), &d).map_err(dbg)? == 5, "2F + G should give 5");
    Ok(format!("{n} divisors; 3L -> 9, 2F+G -> 5"))
}

type Reports = Vec<(SurfaceKind, Result<adelic_core::report::IdentityReport, String>)>;

/// `verify_identities` over every monomial divisor in `[-4, 4]`, computed once.
fn identity_sweep() -> &'static Reports {
    static CACHE: std::sync::OnceLock<Reports> = std::sync::OnceLock::new();
    CACHE.get_or_init(|| {
        let mut out = Vec::new();
        for kind in KINDS {
            let c = ctx(kind);
            for d in monomials(&c.surface, 4) {
                out.push((kind, verify_identities(&c, &d).map_err(|e| format!("{d}: {e:?}"))));
            }
        }
        out
    })
}

pub fn f_identities() -> Outcome {
    for (kind, r) in identity_sweep() {
        let r = r.clone()?;
        ensure!(r.f == r.th1_rhs, "{}: f = {} but chi-diff - D^2 = {} for {}", kind.label(), r.f, r.th1_rhs, r.divisor);
        ensure!(r.f == r.th2_rhs, "{}: f = {} but -(K.D + D^2)/2 = {} for {}", kind.label(), r.f, r.th2_rhs, r.divisor);
        ensure!(r.rr_ok, "{}: Riemann-Roch fails for {}", kind.label(), r.divisor);
    }
    let spots = [
        (SurfaceKind::P2, DivisorClass::P2(1), 1),
        (SurfaceKind::P2, DivisorClass::P2(3), 0),
        (SurfaceKind::P1xP1, DivisorClass::P1xP1(1, 1), 1),
    ];
    for (kind, class, want) in spots {
        let c = ctx(kind);
        let f = f_invariant(&c, &c.surface.representative(class)).map_err(dbg)?;
        ensure!(f == want, "{class:?}: f = {f}, expected {want}");
    }
    Ok(format!("{} divisors; spot values f(L) = 1, f(3L) = 0, f(F+G) = 1", identity_sweep().len()))
}

pub fn splitting_and_dminusc() -> Outcome {
    for (kind, r) in identity_sweep() {
        let r = r.clone()?;
        ensure!(r.lemma1_ok, "{}: splitting product identity fails for {}", kind.label(), r.divisor);
        ensure!(r.dminusc_ok, "{}: d - c != K.D for {}", kind.label(), r.divisor);
    }
    Ok(format!("{} divisors", identity_sweep().len()))
}

pub fn basis_change() -> Outcome {
    let mut n = 0;
    for kind in KINDS {
        let c = ctx(kind);
        let mut divisors: Vec<SurfaceDivisor> =
            classes(kind, 4).into_iter().map(|k| c.surface.representative(k)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        divisors.extend((0..10).map(|_| random_monomial(&c.surface, 4, &mut rng)));
        for d in &divisors {
            for seed in 0..50 {
                let r = basis_change_test(&c, d, seed).map_err(dbg)?;
                ensure!(r.ok, "{}: {r:?}", kind.label());
                n += 1;
            }
        }
    }
    Ok(format!("{n} transformations leave f unchanged"))
}

pub fn curve_layer() -> Outcome {
    let k = fp();
    let mut n = 0;
    for pts in [
        [CurvePoint::Finite(k.int(0)), CurvePoint::Inf, CurvePoint::Finite(k.int(5))],
        [CurvePoint::Finite(k.int(1)), CurvePoint::Finite(k.int(2)), CurvePoint::Finite(k.int(-3))],
    ] {
        let mut prev = CurveDivisor::new();
        for a in -10..=10 {
            for b in -10..=10 {
                for c in -10..=10 {
                    let d = CurveDivisor::from_terms([(pts[0].clone(), a), (pts[1].clone(), b), (pts[2].clone(), c)]);
                    let h = curve_cohomology(k, &d).map_err(dbg)?;
                    ensure!(h == cohomology_oracle(&d), "h(D) = {h:?} for {d}");
                    let rr = abstract_rr_check(k, &d, &prev).map_err(dbg)?;
                    ensure!(rr.ok, "abstract RR fails: {rr:?}");
                    let deg = idele_degree(&transition_idele(k, &d)).map_err(dbg)?;
                    ensure!(deg == d.degree(), "idele degree {deg} != deg {d}");
                    // unit noise does not change the degree
                    let noisy = CurveIdele::from_entries(
                        k,
                        d.terms().map(|(p, m)| {
                            (p.clone(), Laurent1::exact_from_terms(k, [(m, k.int(3)), (m + 1, k.int(a - b))]))
                        }),
                    )
                    .map_err(dbg)?;
                    ensure!(idele_degree(&noisy).map_err(dbg)? == d.degree(), "noisy idele degree for {d}");
                    prev = d;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} divisors: cohomology, abstract RR, idele degree"))
}

fn random_idele(c: &adelic_core::dim::DimContext, rng: &mut ChaCha8Rng) -> Result<SurfaceIdele, String> {
    let d = random_monomial(&c.surface, 2, rng);
    let mode = if rng.gen_bool(0.5) { EquationMode::Pointwise } else { EquationMode::Curvewise };
    let g = SurfaceIdele::local_equation(c, &d, mode).map_err(dbg)?;
    let k = c.surface.field;
    let unit = RationalFunction::monomial(k.int(rng.gen_range(1..=50)), rng.gen_range(-2..=2), rng.gen_range(-2..=2));
    g.mul(&SurfaceIdele::rational(c, &unit).map_err(dbg)?).map_err(dbg)
}

pub fn chain_rules() -> Outcome {
    let mut n = 0;
    for kind in KINDS {
        let c = ctx(kind);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let e: Vec<SurfaceDivisor> = (0..3).map(|_| random_monomial(&c.surface, 3, &mut rng)).collect();
            let l: Vec<LatticeDesc> = e.iter().map(|d| LatticeDesc::new(d.clone()).unwrap()).collect();
            let nu = |i: usize, j: usize| nu_element(&c, &l[i], &l[j]).map_err(dbg);
            let mu = |i: usize, j: usize| mu_element(&l[i], &l[j]).map_err(dbg);
            ensure!(dim_compose(&nu(0, 1)?, &nu(1, 2)?).map_err(dbg)? == nu(0, 2)?, "nu chain rule fails on {e:?}");
            ensure!(dim_compose(&mu(0, 1)?, &mu(1, 2)?).map_err(dbg)? == mu(0, 2)?, "mu chain rule fails on {e:?}");
            ensure!(nu(0, 1)?.inverse() == nu(1, 0)?, "nu inverse fails on {e:?}");
            let a = nu_minus_mu(&c, &e[0], &e[2]).map_err(dbg)?;
            let b = nu_minus_mu(&c, &e[0], &e[1]).map_err(dbg)? + nu_minus_mu(&c, &e[1], &e[2]).map_err(dbg)?;
            ensure!(a == b, "nu - mu is not additive on {e:?}");
            n += 1;
        }
    }
    Ok(format!("{n} triples"))
}

pub fn commutators() -> Outcome {
    let mut n = 0;
    for kind in KINDS {
        let c = ctx(kind);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..40 {
            let (x, y, z) = (random_idele(&c, &mut rng)?, random_idele(&c, &mut rng)?, random_idele(&c, &mut rng)?);
            let cm = |a: &SurfaceIdele, b: &SurfaceIdele| commutator(&c, a, b).map_err(dbg);
            let xy = x.mul(&y).map_err(dbg)?;
            let yz = y.mul(&z).map_err(dbg)?;
            ensure!(cm(&xy, &z)? == cm(&x, &z)? + cm(&y, &z)?, "not multiplicative on the left");
            ensure!(cm(&x, &yz)? == cm(&x, &y)? + cm(&x, &z)?, "not multiplicative on the right");
            ensure!(cm(&x, &y)? == -cm(&y, &x)?, "not antisymmetric");
            ensure!(cm(&x, &x)? == 0, "<x, x> != 0");
            n += 1;
        }
    }
    Ok(format!("{n} triples"))
}

pub fn splittings() -> Outcome {
    let mut n = 0;
    for kind in KINDS {
        let c = ctx(kind);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let (d1, d2) = (random_monomial(&c.surface, 2, &mut rng), random_monomial(&c.surface, 2, &mut rng));
            let (t1, t2) = (TransitionData::new(&c, &d1).map_err(dbg)?, TransitionData::new(&c, &d2).map_err(dbg)?);
            let pairs = [
                (Subgroup::A12, t1.alpha21.clone(), t2.alpha21.clone()),
                (Subgroup::A02, t1.alpha02.clone(), t2.alpha02.clone()),
                (Subgroup::A01, t1.alpha01.clone(), t2.alpha01.clone()),
            ];
            for (h, g1, g2) in pairs {
                let whole = lift(&c, &g1.mul(&g2).map_err(dbg)?, h).map_err(dbg)?;
                let (l1, l2) = (lift(&c, &g1, h).map_err(dbg)?, lift(&c, &g2, h).map_err(dbg)?);
                ensure!(group_mul(&c, &l1, &l2).map_err(dbg)?.agrees_with(&whole), "{h:?} splitting is not a homomorphism for {d1}, {d2}");
            }
            // rational functions lie in both A01 and A02, where the splittings coincide
            let k = c.surface.field;
            let g = RationalFunction::monomial(k.int(rng.gen_range(1..=50)), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            let gi = SurfaceIdele::rational(&c, &g).map_err(dbg)?;
            let (a, b) = (lift(&c, &gi, Subgroup::A01).map_err(dbg)?, lift(&c, &gi, Subgroup::A02).map_err(dbg)?);
            ensure!(a.agrees_with(&b), "A01 and A02 splittings differ on {g:?}");
            n += 1;
        }
    }
    Ok(format!("{n} pairs over three subgroups; coincidence on rational functions"))
}

pub fn duality() -> Outcome {
    let mut n = 0;
    for kind in KINDS {
        let c = ctx(kind);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..25 {
            let (d1, d2) = (random_monomial(&c.surface, 2, &mut rng), random_monomial(&c.surface, 2, &mut rng));
            let (l1, l2) = (LatticeDesc::new(d1.clone()).unwrap(), LatticeDesc::new(d2.clone()).unwrap());
            let d = nu_element(&c, &l1, &l2).map_err(dbg)?.shift(rng.gen_range(-5..=5));
            let dd = dim_dual(&c, &d).map_err(dbg)?;
            ensure!(dd.lower.divisor == c.k_divisor.sub(&d1), "dual lands over the wrong pair");
            ensure!(dim_dual(&c, &dd).map_err(dbg)? == d, "duality is not an involution on {d1}, {d2}");
            n += 1;
        }
    }
    Ok(format!("{n} elements"))
}

pub fn dim_iso() -> Outcome {
    let mut n = 0;
    for kind in KINDS {
        let c = ctx(kind);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..25 {
            let e1 = random_monomial(&c.surface, 2, &mut rng);
            let e2 = e1.add(&SurfaceDivisor::from_terms(c.curves.iter().map(|x| (x.clone(), rng.gen_range(0..=2)))));
            let e3 = e2.add(&SurfaceDivisor::from_terms(c.curves.iter().map(|x| (x.clone(), rng.gen_range(0..=2)))));
            let l = |d: &SurfaceDivisor| LatticeDesc::new(d.clone()).unwrap();
            let d1 = nu_element(&c, &l(&e1), &l(&e2)).map_err(dbg)?.shift(rng.gen_range(-3..=3));
            let d3 = nu_element(&c, &l(&e2), &l(&e3)).map_err(dbg)?.shift(rng.gen_range(-3..=3));
            let mut z = reference_subspace(&QuotientModel::new(&c, &e1, &e3).map_err(dbg)?);
            for piece in &mut z {
                let pts: Vec<_> = piece.support().cloned().collect();
                if let Some(p) = pts.first() {
                    piece.add_at(p.clone(), rng.gen_range(-2..=2));
                }
            }
            let (whole, parts) = dim_iso_check(&c, &d1, &d3, &z).map_err(dbg)?;
            ensure!(whole == parts, "dimension isomorphism fails on {e1} <= {e2} <= {e3}: {whole} vs {parts}");
            n += 1;
        }
    }
    Ok(format!("{n} nested triples"))
}

pub fn rotation() -> Outcome {
    let mut n = 0;
    for kind in KINDS {
        for field in [fp(), FieldSpec::Rationals] {
            let c = ctx_over(kind, field);
            for class in classes(kind, 2) {
                let d = c.surface.representative(class);
                let td = TransitionData::new(&c, &d).map_err(dbg)?;
                let [a, b, x] = td.lifts(&c).map_err(dbg)?;
                let v = |xs: &[&adelic_core::ext::LiftedElement]| product(&c, xs).and_then(|p| p.central_value()).map_err(dbg);
                let f = v(&[&a, &b, &x])?;
                ensure!(v(&[&b, &x, &a])? == f && v(&[&x, &a, &b])? == f, "rotation changes f for {d}");
                n += 1;
            }
        }
    }
    Ok(format!("{n} divisors"))
}

pub fn properties() -> Outcome {
    let mut parts = Vec::new();
    for (name, check) in [
        ("chain rules", chain_rules as fn() -> Outcome),
        ("commutator", commutators),
        ("splittings", splittings),
        ("duality", duality),
        ("dim iso", dim_iso),
        ("rotation", rotation),
    ] {
        parts.push(format!("{name}: {}", check().map_err(|e| format!("{name}: {e}"))?));
    }
    Ok(parts.join("; "))
}
