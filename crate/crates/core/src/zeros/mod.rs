//! Zero counting and isolation by the argument principle.

pub mod count;
pub mod locate;
pub mod strip;
pub mod winding;

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use count::{count_nontrivial, BandCount, CountOptions, CountResult};
pub use locate::{locate_window, locate_zeros, locate_zeros_with, multiplicity, LocateOptions};
pub use strip::{zero_free_bounds, E1Method, StripBounds};
pub use winding::{circle_winding, winding_count, WindingOptions};

/// Axis-parallel box `[sigma_lo, sigma_hi] x [t_lo, t_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Rectangle {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl Rectangle {
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Result<Self> {
        let r = Rectangle { sigma_lo, sigma_hi, t_lo, t_hi };
        r.validate()?;
        Ok(r)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let ok = [self.sigma_lo, self.sigma_hi, self.t_lo, self.t_hi].iter().all(|x| x.is_finite())
            && self.sigma_lo < self.sigma_hi
            && self.t_lo < self.t_hi;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("degenerate rectangle {self:?}")))
        }
    }

    pub fn width(&self) -> f64 {
        self.sigma_hi - self.sigma_lo
    }

    pub fn height(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.sigma_lo + self.sigma_hi), 0.5 * (self.t_lo + self.t_hi))
    }

    /// Counterclockwise from the lower left corner.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.sigma_lo, self.t_lo),
            Complex64::new(self.sigma_hi, self.t_lo),
            Complex64::new(self.sigma_hi, self.t_hi),
            Complex64::new(self.sigma_lo, self.t_hi),
        ]
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (self.sigma_lo..=self.sigma_hi).contains(&z.re) && (self.t_lo..=self.t_hi).contains(&z.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Newton,
    BisectionOnly,
}

/// A located zero with its isolation box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub rho: Complex64,
    pub multiplicity: u32,
    pub residual: f64,
    #[serde(rename = "box")]
    pub bbox: Rectangle,
    pub method: Method,
}

impl ZeroRecord {
    pub fn beta(&self) -> f64 {
        self.rho.re
    }

    pub fn gamma(&self) -> f64 {
        self.rho.im
    }
}

/// Orders by height, then by real part.
pub fn sort_zeros(zeros: &mut [ZeroRecord]) {
    zeros.sort_by(|a, b| a.rho.im.total_cmp(&b.rho.im).then(a.rho.re.total_cmp(&b.rho.re)));
}
