#![allow(dead_code)]

pub mod criteria;

use adelic_core::dim::DimContext;
use adelic_core::surface::{DivisorClass, Surface, SurfaceDivisor, SurfaceKind};
use adelic_core::{FieldSpec, IterLaurent, Scalar};

pub fn fp() -> FieldSpec {
    FieldSpec::Prime(101)
}

pub fn ctx(kind: SurfaceKind) -> DimContext {
    DimContext::new(Surface::new(kind, fp())).unwrap()
}

pub fn ctx_over(kind: SurfaceKind, field: FieldSpec) -> DimContext {
    DimContext::new(Surface::new(kind, field)).unwrap()
}

/// Every class with coefficients in `[-r, r]`.
pub fn classes(kind: SurfaceKind, r: i64) -> Vec<DivisorClass> {
    match kind {
        SurfaceKind::P2 => (-r..=r).map(DivisorClass::P2).collect(),
        SurfaceKind::P1xP1 => (-r..=r).flat_map(|a| (-r..=r).map(move |b| DivisorClass::P1xP1(a, b))).collect(),
    }
}

/// Every monomial divisor with coefficients in `[-r, r]`.
pub fn monomials(s: &Surface, r: i64) -> Vec<SurfaceDivisor> {
    let curves = s.invariant_curves();
    let mut out = vec![SurfaceDivisor::zero()];
    for c in curves {
        out = out
            .into_iter()
            .flat_map(|d| {
                let c = c.clone();
                (-r..=r).map(move |n| {
                    let mut e = d.clone();
                    e.add_at(c.clone(), n);
                    e
                })
            })
            .collect();
    }
    out
}

pub fn series(k: FieldSpec, terms: &[((i64, i64), i64)]) -> IterLaurent {
    IterLaurent::exact_from_terms(k, terms.iter().map(|&(e, c)| (e, k.int(c))))
}

pub fn scalar(k: FieldSpec, n: i64) -> Scalar {
    k.int(n)
}
