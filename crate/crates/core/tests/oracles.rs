//! Frozen values computed by hand from the closed-form formulas.

mod common;

use adelic_core::dim::nu_minus_mu;
use adelic_core::ext::{f_invariant, intersection_via_pairing};
use adelic_core::parse::{parse_curve_divisor, parse_divisor};
use adelic_core::curve::curve_cohomology;
use adelic_core::surface::{DivisorClass, SurfaceDivisor, SurfaceKind};
use adelic_core::FieldSpec;
use common::{ctx, ctx_over, fp};

#[test]
fn f_on_the_plane() {
    // (3m - m^2) / 2
    let want = [(-4, -14), (-3, -9), (-2, -5), (-1, -2), (0, 0), (1, 1), (2, 1), (3, 0), (4, -2)];
    for field in [fp(), FieldSpec::Rationals] {
        let c = ctx_over(SurfaceKind::P2, field);
        for (m, f) in want {
            assert_eq!(f_invariant(&c, &c.surface.representative(DivisorClass::P2(m))).unwrap(), f, "m = {m}");
        }
    }
}

#[test]
fn f_on_the_quadric() {
    // a + b - ab
    let c = ctx(SurfaceKind::P1xP1);
    let want = [((1, 1), 1), ((2, 0), 2), ((2, 3), -1), ((-1, -1), -3), ((0, -2), -2), ((3, 3), -3)];
    for ((a, b), f) in want {
        assert_eq!(f_invariant(&c, &c.surface.representative(DivisorClass::P1xP1(a, b))).unwrap(), f, "({a}, {b})");
    }
}

#[test]
fn chi_differences() {
    let p2 = ctx(SurfaceKind::P2);
    for (text, chi) in [("3L0", 9), ("L0 + L1", 5), ("-1L2", -1), ("-3L0", 0), ("-4L1", 2), ("2L0 - 1L1", 2)] {
        let d = parse_divisor(&p2.surface, text).unwrap();
        assert_eq!(nu_minus_mu(&p2, &SurfaceDivisor::zero(), &d).unwrap(), chi, "{text}");
    }
    let q = ctx(SurfaceKind::P1xP1);
    for (text, chi) in [("2F0 + G0", 5), ("F1 - G1", -1), ("-2F0", -2), ("-2F0 - 2G1", 0), ("F0 + F1 + G0", 5)] {
        let d = parse_divisor(&q.surface, text).unwrap();
        assert_eq!(nu_minus_mu(&q, &SurfaceDivisor::zero(), &d).unwrap(), chi, "{text}");
    }
}

#[test]
fn intersection_numbers() {
    let p2 = ctx(SurfaceKind::P2);
    let q = ctx(SurfaceKind::P1xP1);
    let cases = [
        (&p2, "L0", "L1", 1),
        (&p2, "L0", "L0", 1),
        (&p2, "2L0 - L2", "3L1", 3),
        (&p2, "0", "L0", 0),
        (&q, "F0", "F1", 0),
        (&q, "F0", "G1", 1),
        (&q, "2F0 + G1", "F1 - 3G0", -5),
    ];
    for (c, s, t, n) in cases {
        let ds = parse_divisor(&c.surface, s).unwrap();
        let dt = parse_divisor(&c.surface, t).unwrap();
        assert_eq!(intersection_via_pairing(c, &ds, &dt).unwrap(), n, "{s} . {t}");
    }
}

#[test]
fn curve_cohomology_values() {
    let k = fp();
    for (text, h) in [("0", (1, 0)), ("3[0] - 2[inf] + 1[5]", (3, 0)), ("-2[inf]", (0, 1)), ("-3[1] - 1[2]", (0, 3))] {
        let d = parse_curve_divisor(k, text).unwrap();
        assert_eq!(curve_cohomology(k, &d).unwrap(), h, "{text}");
    }
}

#[test]
fn canonical_divisors() {
    let p2 = ctx(SurfaceKind::P2);
    assert_eq!(p2.k_divisor.to_string(), "-3L2");
    assert!(p2.surface.canonical_self_check().unwrap());
    let q = ctx(SurfaceKind::P1xP1);
    assert_eq!(q.k_divisor.to_string(), "-2F1 - 2G1");
    assert!(q.surface.canonical_self_check().unwrap());
}

#[test]
fn transition_exponents_sum_to_minus_one_on_lines() {
    let p2 = ctx(SurfaceKind::P2);
    for c in &p2.curves {
        let s: i64 = p2.flags_on(c).iter().map(|f| f.e).sum();
        assert_eq!(s, -1, "{c}");
    }
}
