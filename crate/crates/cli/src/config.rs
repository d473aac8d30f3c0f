use std::path::PathBuf;
use std::str::FromStr;

use adelic_core::dim::DimContext;
use adelic_core::surface::{Surface, SurfaceDivisor, SurfaceKind};
use adelic_core::{FieldSpec, WindowPolicy};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    Fixed(i64),
    Auto,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Window::Auto);
        }
        match s.parse::<i64>() {
            Ok(n) if n > 0 => Ok(Window::Fixed(n)),
            _ => Err(format!("expected a positive integer or `auto`, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub kind: SurfaceKind,
    pub field: FieldSpec,
    pub window: Window,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// The window policy for work touching divisors of total mass `mass`.
    pub fn policy(&self, mass: i64) -> WindowPolicy {
        match self.window {
            Window::Fixed(r) => WindowPolicy { radius: r },
            Window::Auto => {
                let fit = WindowPolicy::for_mass(mass);
                if fit.radius > WindowPolicy::default().radius {
                    fit
                } else {
                    WindowPolicy::default()
                }
            }
        }
    }

    pub fn surface(&self, mass: i64) -> Surface {
        Surface::new(self.kind, self.field).with_policy(self.policy(mass))
    }

    pub fn context(&self, mass: i64) -> Result<DimContext, CliError> {
        Ok(DimContext::new(self.surface(mass))?)
    }
}

pub fn mass(ds: &[&SurfaceDivisor]) -> i64 {
    ds.iter().flat_map(|d| d.terms()).map(|(_, n)| n.abs()).sum()
}
