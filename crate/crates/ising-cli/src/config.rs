//! Global run configuration, validated once at startup.

use crate::output::Format;
use ising_exact::formfactor::Caps;
use ising_exact::numerics::check_prec;
use serde::Serialize;

pub const MAX_PREC: u32 = 8192;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub precision_bits: u32,
    /// Default number of series coefficients when a command needs one.
    pub series_order: usize,
    /// Agreement required between a quadrature oracle and the series value.
    pub quadrature_target: f64,
    pub n_max: usize,
    pub n_sep_max: u32,
    #[serde(skip)]
    pub output_format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        check_prec(self.precision_bits).map_err(|e| e.to_string())?;
        if self.precision_bits > MAX_PREC {
            return Err(format!("precision is limited to {MAX_PREC} bits"));
        }
        if self.series_order == 0 {
            return Err("series order must be positive".into());
        }
        if !(self.quadrature_target > 0.0 && self.quadrature_target < 1.0) {
            return Err(format!(
                "quadrature target must lie in (0, 1), got {}",
                self.quadrature_target
            ));
        }
        if self.n_max == 0 {
            return Err("n_max must be positive".into());
        }
        Ok(())
    }

    pub fn caps(&self, order: usize) -> Caps {
        Caps {
            max_n: self.n_max,
            max_sep: self.n_sep_max,
            max_order: order.max(self.series_order),
        }
    }
}
