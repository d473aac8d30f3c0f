mod common;

use adelic_core::series::{residue2, Frame, TwoForm};
use adelic_core::{Error, FieldSpec, IterLaurent, WindowPolicy};
use common::{fp, series};
use proptest::prelude::*;

fn terms() -> impl Strategy<Value = Vec<((i64, i64), i64)>> {
    prop::collection::vec(((-3i64..=3, -2i64..=2), -50i64..=50), 0..6)
}

/// A unit: nonzero monomial lead in `t`, plus higher-order noise.
fn unit() -> impl Strategy<Value = Vec<((i64, i64), i64)>> {
    ((-2i64..=2, -2i64..=2), 1i64..=100, prop::collection::vec(((-2i64..=3, 1i64..=3), -50i64..=50), 0..4)).prop_map(
        |((i, j), c, rest)| {
            let mut v = vec![((i, j), c)];
            v.extend(rest.into_iter().map(|((a, b), x)| ((i + a, j + b), x)));
            v
        },
    )
}

/// `(u_hi, t_hi)` truncation bounds.
fn window() -> impl Strategy<Value = (i64, i64)> {
    (-1i64..=4, -1i64..=3)
}

const GRID: std::ops::RangeInclusive<i64> = -8..=8;

/// Every certified coefficient of `x` equals the one of `exact`; returns how
/// many were certified.
fn honest(x: &IterLaurent, exact: &IterLaurent) -> usize {
    let mut n = 0;
    for j in GRID {
        for i in GRID {
            match x.coeff(i, j) {
                Ok(c) => {
                    assert_eq!(c, exact.coeff(i, j).unwrap(), "u^{i} t^{j}");
                    n += 1;
                }
                Err(Error::WindowCollapse(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    n
}

proptest! {
    #[test]
    fn ring_axioms(a in terms(), b in terms(), c in terms(), w in window()) {
        let k = fp();
        let (a, b, c) = (series(k, &a), series(k, &b), series(k, &c));
        let a = a.truncate(w.0, w.1);
        prop_assume!(a.is_ok());
        let a = a.unwrap();
        prop_assert!(a.add(&b).unwrap().add(&c).unwrap().agrees_with(&a.add(&b.add(&c).unwrap()).unwrap()));
        prop_assert!(a.mul(&b).unwrap().agrees_with(&b.mul(&a).unwrap()));
        prop_assert!(a.mul(&b).unwrap().mul(&c).unwrap().agrees_with(&a.mul(&b.mul(&c).unwrap()).unwrap()));
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
        prop_assert!(a.sub(&a).unwrap().agrees_with(&IterLaurent::zero(k)));
        prop_assert!(a.mul(&IterLaurent::one(k)).unwrap().agrees_with(&a));
    }

    #[test]
    fn inverse_round_trip(a in unit(), w in window()) {
        let k = fp();
        let exact = series(k, &a);
        let inv = exact.invert(WindowPolicy { radius: 6 }).unwrap();
        prop_assert!(exact.mul(&inv).unwrap().agrees_with(&IterLaurent::one(k)));
        // Truncated input: the inverse is certified only where it is known.
        let lead = exact.valuation().unwrap();
        let (vt, vu) = lead;
        let tr = exact.truncate(vu + 3 + w.0.abs(), vt + w.1.abs()).unwrap();
        match tr.invert(WindowPolicy::default()) {
            Ok(ti) => {
                prop_assert!(ti.agrees_with(&inv));
                prop_assert!(tr.mul(&ti).unwrap().agrees_with(&IterLaurent::one(k)));
            }
            Err(Error::WindowCollapse(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn no_silent_truncation(a in terms(), b in terms(), wa in window(), wb in window()) {
        let k = fp();
        let (ea, eb) = (series(k, &a), series(k, &b));
        let (ta, tb) = (ea.truncate(wa.0, wa.1), eb.truncate(wb.0, wb.1));
        prop_assume!(ta.is_ok() && tb.is_ok());
        let (ta, tb) = (ta.unwrap(), tb.unwrap());
        honest(&ta, &ea);
        honest(&ta.mul(&tb).unwrap(), &ea.mul(&eb).unwrap());
        honest(&ta.add(&tb).unwrap(), &ea.add(&eb).unwrap());
    }

    #[test]
    fn residue_linear(a in terms(), b in terms(), c in -50i64..=50) {
        let k = fp();
        let (a, b) = (series(k, &a), series(k, &b));
        let r = |s: &IterLaurent| residue2(&TwoForm::new(s.clone(), Frame::UT)).unwrap();
        prop_assert_eq!(r(&a.add(&b).unwrap()), &r(&a) + &r(&b));
        prop_assert_eq!(r(&a.scale(&k.int(c))), &k.int(c) * &r(&a));
    }

    #[test]
    fn frame_antisymmetry(a in terms()) {
        let k = fp();
        let a = series(k, &a);
        let ut = residue2(&TwoForm::new(a.clone(), Frame::UT)).unwrap();
        let tu = residue2(&TwoForm::new(a, Frame::TU)).unwrap();
        prop_assert_eq!(ut, -tu);
    }
}

#[test]
fn residue_of_basic_form() {
    for k in [fp(), FieldSpec::Rationals] {
        let w = TwoForm::new(series(k, &[((-1, -1), 1)]), Frame::UT);
        assert_eq!(residue2(&w).unwrap(), k.one());
        let w = TwoForm::new(series(k, &[((-1, -1), 1)]), Frame::TU);
        assert_eq!(residue2(&w).unwrap(), -k.one());
        let w = TwoForm::new(series(k, &[((-2, -1), 1), ((-1, 0), 3), ((0, 0), 1)]), Frame::UT);
        assert!(residue2(&w).unwrap().is_zero());
    }
}

#[test]
fn residue_needs_certified_coefficient() {
    let k = fp();
    let a = series(k, &[((-3, -2), 1)]).truncate(-2, -2).unwrap();
    assert!(residue2(&TwoForm::new(a, Frame::UT)).is_err());
}
