//! Serializable verification records.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

/// Both sides of every identity checked for one divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub schema: u32,
    pub surface: String,
    pub field: String,
    pub divisor: String,
    pub f: i64,
    pub th1_rhs: i64,
    pub th2_rhs: i64,
    pub chi_diff: i64,
    pub self_intersection: i64,
    #[serde(rename = "K_dot_D")]
    pub k_dot_d: i64,
    pub lemma1_ok: bool,
    pub dminusc_ok: bool,
    pub rr_ok: bool,
    pub elapsed_ms: u64,
}

impl IdentityReport {
    /// All identities hold.
    pub fn pass(&self) -> bool {
        self.f == self.th1_rhs && self.f == self.th2_rhs && self.lemma1_ok && self.dminusc_ok && self.rr_ok
    }
}

/// Per-method intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub schema: u32,
    pub surface: String,
    pub field: String,
    pub s: String,
    pub t: String,
    pub pairing: Option<i64>,
    pub chains: Option<i64>,
    pub chains_flipped: Option<i64>,
    pub oracle: Option<i64>,
    pub agree: bool,
    pub elapsed_ms: u64,
}

/// Invariance of `f` under changes of trivializations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisChangeReport {
    pub divisor: String,
    pub seed: u64,
    pub f_base: i64,
    pub f_changed: i64,
    pub ok: bool,
}

/// Residue sums of one random form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocitySample {
    pub form: String,
    /// `(curve, sum over its points)`.
    pub along_curves: Vec<(String, String)>,
    /// `(point, sum over curves through it)`.
    pub around_points: Vec<(String, String)>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityReport {
    pub schema: u32,
    pub surface: String,
    pub field: String,
    pub seed: u64,
    pub samples: Vec<ReciprocitySample>,
    pub passed: usize,
    pub total: usize,
    pub elapsed_ms: u64,
}

/// Result of a finite-box orthogonality certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalityReport {
    pub divisor: String,
    pub radius: i64,
    /// Every pairing between the two boxed lattices vanished.
    pub pairings_vanish: bool,
    /// Per flag: `(annihilator dimension, expected dimension)`.
    pub dims: Vec<(String, usize, usize)>,
    pub ok: bool,
}
