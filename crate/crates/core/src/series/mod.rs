//! Exact truncated series: one-variable Laurent series, iterated Laurent
//! series in `k((u))((t))`, bivariate Laurent polynomials, rational
//! expansion at flags and two-forms with residues.

mod expand;
mod form;
mod iter;
mod laurent;
mod poly;

pub use expand::{expand_local, expand_rational, ExpansionWindow, LocalCoords, RationalFunction};
pub use form::{residue2, Frame, TwoForm};
pub use iter::IterLaurent;
pub use laurent::Laurent1;
pub use poly::Poly2;

/// Relative precision used when an exact non-monomial series is inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WindowPolicy {
    pub radius: i64,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        WindowPolicy { radius: 16 }
    }
}

impl WindowPolicy {
    /// Radius large enough for divisors of total mass `m`.
    pub fn for_mass(m: i64) -> Self {
        WindowPolicy { radius: 2 * m.abs() + 4 }
    }
}
