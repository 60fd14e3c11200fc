//! Sigma-form Painlevé VI identities for diagonal correlations and the
//! Painlevé III scaling functions.

mod piii;
mod resum;

pub use piii::{piii_solve, scaling_g, scaling_g_from, GSign, PiiiSolution, PiiiStep};
pub use resum::{log_resummation_check, scaled_f2_bessel, scaled_f2_quadrature, LogResummation};

use crate::error::{Error, Result};
use crate::formfactor::lambda_correlation_omitting;
use crate::params::Side;
use crate::series::{Coeff, LambdaPoly, RationalSeries, Series, Variable};
use rug::Rational;

/// σ(t) built from a diagonal correlation series.
#[derive(Debug, Clone)]
pub struct SigmaSeries<C: Coeff = Rational> {
    pub n_sep: u32,
    pub side: Side,
    pub sigma: Series<C>,
    /// Correlation series with its t^(N/2) prefactor removed above T_c.
    pub source: Series<C>,
}

/// σ = t(t−1) d/dt log C − 1/4 above T_c, − t/4 below.
pub fn sigma_from<C: Coeff>(n_sep: u32, side: Side, corr: &Series<C>) -> Result<SigmaSeries<C>> {
    if corr.variable != Variable::T {
        return Err(Error::Parameter("σ needs a series in t".into()));
    }
    let len = corr.len();
    let g = Series::from_coeffs(Variable::T, corr.coeffs.clone());
    // t·d/dt log(t^(N/2) g) = N/2 + t g′/g
    let mut tlog = g.log_derivative()?.shift(1).truncate(len);
    let expected = match side {
        Side::AboveTc => Rational::from((n_sep, 2)),
        Side::BelowTc => Rational::new(),
        Side::AtTc => return Err(Error::Domain("σ is defined away from T_c".into())),
    };
    if corr.offset != expected {
        return Err(Error::Parameter(format!(
            "correlation offset {} does not match t^{expected}",
            corr.offset
        )));
    }
    if let Some(c) = tlog.coeffs.first_mut() {
        c.add_assign(&C::from_rational(&expected));
    }
    // (t−1)·tlog
    let mut sigma = tlog.shift(1).truncate(len).sub(&tlog)?;
    let quarter = C::from_rational(&Rational::from((1, 4)));
    match side {
        Side::AboveTc => sigma.coeffs[0].sub_assign(&quarter),
        _ => {
            if len > 1 {
                sigma.coeffs[1].sub_assign(&quarter)
            }
        }
    }
    Ok(SigmaSeries {
        n_sep,
        side,
        sigma,
        source: g,
    })
}

/// (t(t−1)σ″)² − N²((t−1)σ′−σ)² + 4σ′((t−1)σ′−σ−1/4)(tσ′−σ).
pub fn pvi_expression<C: Coeff>(n_sep: u32, sigma: &Series<C>) -> Result<Series<C>> {
    let d1 = sigma.derivative()?;
    let d2 = d1.derivative()?;
    let len = d2.len();
    let s = sigma.clone().truncate(len);
    let d1 = d1.truncate(len);
    let times_t = |x: &Series<C>| x.shift(1).truncate(len);
    let times_tm1 = |x: &Series<C>| -> Result<Series<C>> { times_t(x).sub(x) };
    let lhs = {
        let a = times_t(&times_tm1(&d2)?);
        a.mul(&a)?
    };
    let u = times_tm1(&d1)?.sub(&s)?;
    let n2 = Rational::from(n_sep * n_sep);
    let rhs1 = u.mul(&u)?.scale(&n2);
    let mut u_q = u.clone();
    if let Some(c) = u_q.coeffs.first_mut() {
        c.sub_assign(&C::from_rational(&Rational::from((1, 4))));
    }
    let v = times_t(&d1).sub(&s)?;
    let rhs2 = d1.mul(&u_q)?.mul(&v)?.scale(&Rational::from(4));
    lhs.sub(&rhs1)?.add(&rhs2)
}

fn exact_len(order: usize) -> usize {
    order + 3
}

/// Residual of the sigma-form PVI for ⟨σ00σNN⟩ through t^order (order+1 coefficients).
pub fn pvi_residual(n_sep: u32, side: Side, order: usize) -> Result<RationalSeries> {
    let r = pvi_residual_lambda(n_sep, side, order, &[])?;
    Ok(r.at_mu(&Rational::from(1)))
}

/// Same residual with λ kept symbolic (coefficients polynomial in λ²).
/// Form factors listed in `omit` are dropped from the correlation.
pub fn pvi_residual_lambda(
    n_sep: u32,
    side: Side,
    order: usize,
    omit: &[usize],
) -> Result<Series<LambdaPoly>> {
    let corr = lambda_correlation_omitting(n_sep, side, exact_len(order), omit)?;
    let sig = sigma_from(n_sep, side, &corr)?;
    let r = pvi_expression(n_sep, &sig.sigma)?;
    Ok(r.truncate(order + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_below_tc_starts_late() {
        // σ = O(t^(N+1)) below T_c.
        let corr = crate::formfactor::lambda_correlation(1, Side::BelowTc, 8).unwrap();
        let s = sigma_from(1, Side::BelowTc, &corr.at_mu(&Rational::from(1))).unwrap();
        assert!(s.sigma.coeffs[..2].iter().all(|c| c.cmp0().is_eq()));
        assert!(s.sigma.coeffs[2].cmp0().is_ne());
    }
}
