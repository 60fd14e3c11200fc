//! Bulk and diagonal susceptibility: n-particle terms, closed forms,
//! critical amplitudes and singularity data.

mod asym;
mod bulk;
mod diag;
mod singular;

pub use asym::{
    chi3d_asymptotics, chi3d_pole_amplitude, chi4d_asymptotics, chi4d_minus_one_fit,
    chi_diag_asymptotics, Chi3dAsymptotics, Chi4dAsymptotics, DiagAsymptotics, MinusOneFit,
    CHI3D_AMPLITUDE_REF, I_COMBINATION,
};
pub use bulk::{amplitude_constants, chi_bulk_closed, chi_bulk_integral, Amplitudes};
pub use diag::{
    chi3d_closed_series, chi3d_parts, chi3d_parts_series, chi3d_weights, chi4d_closed_series,
    chi4d_parts, chi4d_parts_series, chi4d_weights, chi_diag_closed, chi_diag_integral,
    chi_diag_series, chi_diag_series_capped, chi_diag_value, diag_series_cap, one_minus_q, q_of_x,
};
pub use singular::{
    diagonal_singularities, location_residual, nickel_singularities, singularity_exponent, ChiKind,
    SingVariable, SingularityRecord,
};

use crate::error::{Error, Result};
use crate::params::{CouplingPoint, Side};
use crate::series::RationalSeries;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    ClosedForm,
    Integral,
    Series,
}

/// One n-particle term in a chosen representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChiTerm {
    pub kind: ChiKind,
    pub n: usize,
    pub representation: Representation,
}

impl ChiTerm {
    /// Bulk: closed form n ≤ 2, integral n ≤ 3. Diagonal: closed form n ≤ 4,
    /// integral n ≤ 3, series n ≤ 5.
    pub fn new(kind: ChiKind, n: usize, representation: Representation) -> Result<Self> {
        let max = match (kind, representation) {
            (ChiKind::Bulk, Representation::ClosedForm) => 2,
            (ChiKind::Bulk, Representation::Integral) => 3,
            (ChiKind::Bulk, Representation::Series) => 0,
            (ChiKind::Diagonal, Representation::ClosedForm) => 4,
            (ChiKind::Diagonal, Representation::Integral) => 3,
            (ChiKind::Diagonal, Representation::Series) => 5,
        };
        if n == 0 || n > max {
            return Err(Error::Cap(format!(
                "{kind:?} term n = {n} is not available as {representation:?} (n ≤ {max})"
            )));
        }
        Ok(ChiTerm {
            kind,
            n,
            representation,
        })
    }

    /// Value at t. Bulk terms use isotropic couplings on the side matching
    /// the parity of n.
    pub fn value(&self, t: &Float) -> Result<Float> {
        match (self.kind, self.representation) {
            (ChiKind::Bulk, Representation::ClosedForm) => chi_bulk_closed(self.n, t),
            (ChiKind::Bulk, _) => chi_bulk_integral(self.n, &bulk_point(self.n, t)?),
            (ChiKind::Diagonal, Representation::ClosedForm) => chi_diag_closed(self.n, t),
            (ChiKind::Diagonal, Representation::Integral) => chi_diag_integral(self.n, t),
            (ChiKind::Diagonal, Representation::Series) => {
                let s = self.series(diag_series_cap(self.n))?;
                let v = if self.n % 2 == 1 {
                    Float::with_val(t.prec(), t.sqrt_ref())
                } else {
                    t.clone()
                };
                Ok(s.eval(&v))
            }
        }
    }

    pub fn series(&self, order: usize) -> Result<RationalSeries> {
        if self.kind != ChiKind::Diagonal {
            return Err(Error::Parameter(
                "only diagonal terms have exact series".into(),
            ));
        }
        chi_diag_series(self.n, order)
    }
}

fn side_for(n: usize) -> Side {
    if n % 2 == 1 {
        Side::AboveTc
    } else {
        Side::BelowTc
    }
}

fn bulk_point(n: usize, t: &Float) -> Result<CouplingPoint> {
    if !(*t > 0 && *t < 1) {
        return Err(Error::Domain(format!("need 0 < t < 1, got {}", t.to_f64())));
    }
    CouplingPoint::isotropic_from_t(t, side_for(n))
}

/// Σ λ^(2j) χ^(2j+1) above T_c or Σ λ^(2j) χ^(2j) below, over terms with
/// n ≤ n_max. Bulk terms (n ≤ 3) come from the ω-integrals at isotropic
/// couplings; diagonal terms (n ≤ 5) from closed forms or series. The
/// prefactors (1−t)^(1/4), t^(−1/4) of the full susceptibility are not included.
pub fn lambda_chi(
    kind: ChiKind,
    side: Side,
    lambda: &Float,
    n_max: usize,
    t: &Float,
) -> Result<Float> {
    let first = match side {
        Side::AboveTc => 1,
        Side::BelowTc => 2,
        Side::AtTc => return Err(Error::Domain("the n-particle sums diverge at T_c".into())),
    };
    let limit = match kind {
        ChiKind::Bulk => 3,
        ChiKind::Diagonal => 5,
    };
    if n_max > limit {
        return Err(Error::Cap(format!(
            "{kind:?} partial sums are limited to n ≤ {limit}"
        )));
    }
    let prec = t.prec();
    let lam2 = Float::with_val(prec, lambda.square_ref());
    let mut acc = Float::with_val(prec, 0);
    let mut n = first;
    while n <= n_max {
        let term = match kind {
            ChiKind::Bulk => chi_bulk_integral(n, &bulk_point(n, t)?)?,
            ChiKind::Diagonal => chi_diag_value(n, t)?,
        };
        let weight = Float::with_val(prec, (&lam2).pow((n / 2) as u32));
        acc += term * weight;
        n += 2;
    }
    Ok(acc)
}
