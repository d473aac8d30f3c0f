use std::time::Instant;

use adelic_core::ext::{intersection_via_dim_chains, intersection_via_pairing, verify_identities};
use adelic_core::parse::parse_divisor;
use adelic_core::reciprocity::reciprocity_suite;
use adelic_core::report::{IdentityReport, IntersectionReport, ReciprocityReport, SCHEMA};
use adelic_core::surface::{DivisorClass, SurfaceDivisor, SurfaceKind};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{mass, RunConfig};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Pairing,
    Chains,
    Oracle,
    All,
}

/// One `verify` run: a row per divisor class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub surface: String,
    pub field: String,
    pub range: i64,
    pub rows: Vec<IdentityReport>,
    pub passed: usize,
    pub total: usize,
    pub elapsed_ms: u64,
}

fn millis(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

pub fn intersect(cfg: &RunConfig, s: &str, t: &str, method: Method) -> Result<IntersectionReport, CliError> {
    let start = Instant::now();
    let plain = cfg.surface(0);
    let ds = parse_divisor(&plain, s).map_err(|e| CliError::input(s, e))?;
    let dt = parse_divisor(&plain, t).map_err(|e| CliError::input(t, e))?;
    let ctx = cfg.context(mass(&[&ds, &dt]))?;
    let want = |m: Method| method == m || method == Method::All;
    let pairing = if want(Method::Pairing) { Some(intersection_via_pairing(&ctx, &ds, &dt)?) } else { None };
    let (chains, chains_flipped) = if want(Method::Chains) {
        let (a, b) = intersection_via_dim_chains(&ctx, &ds, &dt)?;
        (Some(a), Some(b))
    } else {
        (None, None)
    };
    let oracle = want(Method::Oracle).then(|| ctx.surface.classical_intersection(&ds, &dt));
    let values: Vec<i64> = [pairing, chains, chains_flipped, oracle].into_iter().flatten().collect();
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    Ok(IntersectionReport {
        schema: SCHEMA,
        surface: cfg.kind.label().into(),
        field: cfg.field.label(),
        s: ds.to_string(),
        t: dt.to_string(),
        pairing,
        chains,
        chains_flipped,
        oracle,
        agree,
        elapsed_ms: millis(start),
    })
}

/// Every class with coefficients in `[-range, range]`, in key order.
pub fn classes(kind: SurfaceKind, range: i64) -> Vec<DivisorClass> {
    let r = -range..=range;
    match kind {
        SurfaceKind::P2 => r.map(DivisorClass::P2).collect(),
        SurfaceKind::P1xP1 => r.clone().flat_map(|a| r.clone().map(move |b| DivisorClass::P1xP1(a, b))).collect(),
    }
}

pub fn verify(cfg: &RunConfig, range: i64) -> Result<VerifyReport, CliError> {
    if range < 0 {
        return Err(CliError::Config(format!("range must be non-negative, got {range}")));
    }
    let start = Instant::now();
    let plain = cfg.surface(0);
    let divisors: Vec<SurfaceDivisor> = classes(cfg.kind, range).into_iter().map(|c| plain.representative(c)).collect();
    let rows: Result<Vec<IdentityReport>, CliError> = divisors
        .par_iter()
        .map(|d| {
            let t = Instant::now();
            let ctx = cfg.context(mass(&[d]))?;
            let mut row = verify_identities(&ctx, d)?;
            row.elapsed_ms = millis(t);
            Ok(row)
        })
        .collect();
    let rows = rows?;
    let passed = rows.iter().filter(|r| r.pass()).count();
    Ok(VerifyReport {
        schema: SCHEMA,
        surface: cfg.kind.label().into(),
        field: cfg.field.label(),
        range,
        total: rows.len(),
        rows,
        passed,
        elapsed_ms: millis(start),
    })
}

pub fn reciprocity(cfg: &RunConfig, samples: usize) -> Result<ReciprocityReport, CliError> {
    if samples == 0 {
        return Err(CliError::Config("need at least one sample".into()));
    }
    let start = Instant::now();
    let mut report = reciprocity_suite(&cfg.surface(0), samples, cfg.seed)?;
    report.elapsed_ms = millis(start);
    Ok(report)
}
