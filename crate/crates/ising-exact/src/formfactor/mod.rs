//! Diagonal form factors f^(n)_{N,N}(t): exact t-series, numerical values,
//! quadrature, λ-extended correlations, theta-function closed forms and the
//! factorization in terms of F_N = ₂F₁(1/2, N+1/2; N+1; t).

mod engine;
mod fit;
mod lambda;
mod modp;
mod numeric;
mod quad;
mod theta;

pub use fit::{c2_formula, factorization_fit, is_palindromic, FactorizationFit};
pub use lambda::{
    correlation_series, correlation_value, lambda_correlation, lambda_correlation_omitting,
};
pub use modp::formfactor_series_mod;
pub use numeric::formfactor_value;
pub use quad::formfactor_quad;
pub use theta::{genus_one_residual, genus_three_value, theta_closed_form, ThetaForm};

use crate::error::{Error, Result};
use crate::numerics::pochhammer;
use crate::params::Side;
use crate::series::{RationalSeries, Series, Variable};
use rug::Rational;

/// Size limits for exact series work; the defaults keep runs at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_n: usize,
    pub max_sep: u32,
    pub max_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_n: 6,
            max_sep: 8,
            max_order: 40,
        }
    }
}

impl Caps {
    /// Limits wide enough for the internal consistency checks (up to f^(10)).
    pub fn extended() -> Self {
        Caps {
            max_n: 10,
            max_sep: 8,
            max_order: 64,
        }
    }

    fn check(&self, n: usize, n_sep: u32, order: usize) -> Result<()> {
        if n > self.max_n || n_sep > self.max_sep || order > self.max_order {
            return Err(Error::Cap(format!(
                "f^({n})_{{{n_sep},{n_sep}}} to order {order} exceeds caps n ≤ {}, N ≤ {}, order ≤ {}",
                self.max_n, self.max_sep, self.max_order
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormFactor {
    pub n: usize,
    pub n_sep: u32,
    /// Even n: plain t-series. Odd n: offset N/2.
    pub series: RationalSeries,
}

impl FormFactor {
    /// t-exponent of the integral's prefactor.
    pub fn leading_exponent(n: usize, n_sep: u32) -> Rational {
        let h = (n / 2) as i64;
        let nn = n_sep as i64;
        if n % 2 == 0 {
            Rational::from(h * (nn + h))
        } else {
            Rational::from(((2 * h + 1) * nn, 2)) + h * (h + 1)
        }
    }
}

/// Exact f^(n)_{N,N} with `order` coefficients (t^offset … t^(offset+order−1)).
pub fn formfactor_series(n: usize, n_sep: u32, order: usize) -> Result<FormFactor> {
    formfactor_series_with(&Caps::default(), n, n_sep, order)
}

pub fn formfactor_series_with(
    caps: &Caps,
    n: usize,
    n_sep: u32,
    order: usize,
) -> Result<FormFactor> {
    caps.check(n, n_sep, order)?;
    let half = n / 2;
    let (offset, shift) = if n % 2 == 0 {
        (Rational::new(), half * (n_sep as usize + 1))
    } else {
        (Rational::from((n_sep, 2)), half * n_sep as usize)
    };
    let mut coeffs = vec![Rational::new(); order];
    if n == 0 {
        if order > 0 {
            coeffs[0] = Rational::from(1);
        }
    } else if shift < order {
        let r = order - 1 - shift;
        let inner = if n % 2 == 0 {
            engine::even_inner(half, n_sep, r)?
        } else {
            engine::odd_inner(half, n_sep, r)?
        };
        for (k, c) in inner.into_iter().enumerate() {
            coeffs[shift + k] = c;
        }
    }
    let series = Series::new(Variable::T, offset, coeffs);
    let lead = FormFactor::leading_exponent(n, n_sep);
    if let Some(v) = series.valuation() {
        if Rational::from(&series.offset + v as u64) < lead {
            return Err(Error::Internal(format!(
                "f^({n})_{{{n_sep},{n_sep}}} starts below t^{lead}"
            )));
        }
    }
    Ok(FormFactor { n, n_sep, series })
}

/// F_N = ₂F₁(1/2, N+1/2; N+1; t) as an exact series.
pub fn hyp_f(n_sep: u32, len: usize) -> RationalSeries {
    let h = Rational::from((1, 2));
    Series::hyp2f1(
        Variable::T,
        &h,
        &Rational::from(&h + n_sep),
        &Rational::from(n_sep + 1),
        len,
    )
}

/// Leading coefficient (1/2)_N / N! of f^(1)_{N,N}.
pub fn f1_leading(n_sep: u32) -> Rational {
    pochhammer(&Rational::from((1, 2)), n_sep) / Rational::from(crate::numerics::factorial(n_sep))
}

/// The form-factor particle numbers that contribute to a side's expansion.
pub fn parities(side: Side) -> Result<usize> {
    match side {
        Side::BelowTc => Ok(0),
        Side::AboveTc => Ok(1),
        Side::AtTc => Err(Error::Domain("form-factor expansions need T ≠ T_c".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeroth_form_factor_is_one() {
        let f = formfactor_series(0, 3, 5).unwrap();
        assert_eq!(f.series.coeffs[0], 1);
        assert!(f.series.coeffs[1..].iter().all(|c| *c == 0));
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(formfactor_series(7, 0, 5), Err(Error::Cap(_))));
        assert!(matches!(formfactor_series(2, 0, 41), Err(Error::Cap(_))));
    }
}
