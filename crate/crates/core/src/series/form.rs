use super::expand::{expand_local, ExpansionWindow, LocalCoords, RationalFunction};
use super::iter::IterLaurent;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Orientation of the local two-form basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// `du ^ dt`
    UT,
    /// `dt ^ du = -du ^ dt`
    TU,
}

impl Frame {
    fn sign(self) -> i64 {
        match self {
            Frame::UT => 1,
            Frame::TU => -1,
        }
    }
}

/// A local two-form `g * frame` with `g` in `k((u))((t))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoForm {
    pub coeff: IterLaurent,
    pub frame: Frame,
}

impl TwoForm {
    pub fn new(coeff: IterLaurent, frame: Frame) -> Self {
        TwoForm { coeff, frame }
    }

    /// Expansion of `h dX ^ dY` at a flag, certified through `u^-1 t^-1`.
    pub fn from_global(h: &RationalFunction, coords: &LocalCoords) -> Result<Self> {
        Self::from_global_window(h, coords, ExpansionWindow { u_hi: -1, t_hi: -1 })
    }

    pub fn from_global_window(h: &RationalFunction, coords: &LocalCoords, window: ExpansionWindow) -> Result<Self> {
        let (c, m) = coords.omega_factor();
        if c.is_zero() {
            return Err(Error::UnsupportedConfiguration("degenerate local frame".into()));
        }
        let (n, d) = coords.to_chart(h);
        let (n, d) = coords.chart_to_local(&n.mul(&m), &d)?;
        let g = expand_local(&n, &d, window)?;
        Ok(TwoForm { coeff: g.scale(&c), frame: Frame::UT })
    }

    /// Multiply by a function.
    pub fn mul_fn(&self, f: &IterLaurent) -> Result<Self> {
        Ok(TwoForm { coeff: self.coeff.mul(f)?, frame: self.frame })
    }
}

/// The two-dimensional residue: the coefficient of `u^-1 t^-1` in the
/// `du ^ dt` frame.
pub fn residue2(w: &TwoForm) -> Result<Scalar> {
    let c = w.coeff.coeff(-1, -1)?;
    Ok(&c * &c.field().int(w.frame.sign()))
}
