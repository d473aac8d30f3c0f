//! One line per acceptance criterion; exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::criteria::{self, Outcome};

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let suite: [Criterion; 9] = [
        ("residues", criteria::residues),
        ("reciprocity laws", criteria::reciprocity),
        ("intersection triple agreement", criteria::intersections),
        ("euler characteristic", criteria::euler),
        ("f = chi-diff - D^2 = -(K.D + D^2)/2, Riemann-Roch", criteria::f_identities),
        ("splitting product and d - c = K.D", criteria::splitting_and_dminusc),
        ("basis-change invariance", criteria::basis_change),
        ("curve layer", criteria::curve_layer),
        ("property suites", criteria::properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in suite.iter().enumerate() {
        let t = Instant::now();
        let r = check();
        let ms = t.elapsed().as_millis();
        match r {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{ms} ms]", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why} [{ms} ms]", i + 1);
                failed += 1;
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", suite.len() - failed, suite.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
