use std::fmt::Write;

use adelic_core::report::{IntersectionReport, ReciprocityReport};
use serde::Serialize;

use crate::commands::VerifyReport;
use crate::config::Format;
use crate::error::CliError;

pub trait Render: Serialize {
    fn markdown(&self) -> String;

    fn render(&self, format: Format) -> Result<String, CliError> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Md => self.markdown(),
        })
    }
}

fn cell(v: Option<i64>) -> String {
    v.map_or_else(|| "-".into(), |n| n.to_string())
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

impl Render for IntersectionReport {
    fn markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Intersection on {} over {}\n", self.surface, self.field);
        let _ = writeln!(s, "S = `{}`, T = `{}`\n", self.s, self.t);
        let _ = writeln!(s, "| pairing | chains | chains (flipped) | oracle | agree |");
        let _ = writeln!(s, "|---|---|---|---|---|");
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            cell(self.pairing),
            cell(self.chains),
            cell(self.chains_flipped),
            cell(self.oracle),
            if self.agree { "yes" } else { "NO" }
        );
        s
    }
}

impl Render for VerifyReport {
    fn markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Identities on {} over {}, range {}\n", self.surface, self.field, self.range);
        let _ = writeln!(s, "| D | f | chi-diff - D^2 | -(K.D + D^2)/2 | chi-diff | D^2 | K.D | split | d-c | RR | verdict |");
        let _ = writeln!(s, "|---|---|---|---|---|---|---|---|---|---|---|");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "| `{}` | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                r.divisor,
                r.f,
                r.th1_rhs,
                r.th2_rhs,
                r.chi_diff,
                r.self_intersection,
                r.k_dot_d,
                mark(r.lemma1_ok),
                mark(r.dminusc_ok),
                mark(r.rr_ok),
                mark(r.pass())
            );
        }
        let _ = writeln!(s, "\n{}/{} pass", self.passed, self.total);
        s
    }
}

impl Render for ReciprocityReport {
    fn markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Reciprocity on {} over {}, seed {}\n", self.surface, self.field, self.seed);
        let _ = writeln!(s, "| form | curves | points | verdict |");
        let _ = writeln!(s, "|---|---|---|---|");
        for r in &self.samples {
            let _ = writeln!(
                s,
                "| `{}` | {} | {} | {} |",
                r.form,
                r.along_curves.len(),
                r.around_points.len(),
                mark(r.ok)
            );
        }
        let _ = writeln!(s, "\n{}/{} pass", self.passed, self.total);
        s
    }
}
