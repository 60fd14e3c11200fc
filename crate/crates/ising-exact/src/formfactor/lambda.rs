use super::{formfactor_series_with, formfactor_value, Caps};
use crate::error::{Error, Result};
use crate::params::Side;
use crate::series::{Coeff, LambdaPoly, RationalSeries, Series, Variable};
use rug::{Float, Rational};

/// Particle numbers whose form factors reach below t^(offset+order) on a side.
fn contributing(n_sep: u32, side: Side, order: usize) -> Result<Vec<usize>> {
    let nn = n_sep as usize;
    let mut out = Vec::new();
    match side {
        Side::BelowTc => {
            let mut h = 0;
            while h * (nn + h) < order {
                out.push(2 * h);
                h += 1;
            }
        }
        Side::AboveTc => {
            let mut h = 0;
            while h * nn + h * (h + 1) < order {
                out.push(2 * h + 1);
                h += 1;
            }
        }
        Side::AtTc => return Err(Error::Domain("no form-factor expansion at T_c".into())),
    }
    Ok(out)
}

/// C_∓(N,N;λ) as a t-series with coefficients polynomial in μ = λ²:
/// (1−t)^(1/4)(1 + Σ μ^n f^(2n)) below T_c, (1−t)^(1/4) Σ μ^n f^(2n+1) above.
/// Above T_c the series carries the offset N/2, and the function odd in λ
/// that the theta closed forms describe is λ times this series.
pub fn lambda_correlation(n_sep: u32, side: Side, order: usize) -> Result<Series<LambdaPoly>> {
    lambda_correlation_omitting(n_sep, side, order, &[])
}

/// As [`lambda_correlation`] with the listed particle numbers left out.
pub fn lambda_correlation_omitting(
    n_sep: u32,
    side: Side,
    order: usize,
    omit: &[usize],
) -> Result<Series<LambdaPoly>> {
    let ns = contributing(n_sep, side, order)?;
    let caps = Caps {
        max_n: ns.last().copied().unwrap_or(0).max(1),
        max_sep: n_sep,
        max_order: order,
    };
    let mut sum: Option<Series<LambdaPoly>> = None;
    for n in ns.into_iter().filter(|n| !omit.contains(n)) {
        let f = formfactor_series_with(&caps, n, n_sep, order)?.series;
        let weighted = Series::new(
            f.variable,
            f.offset.clone(),
            f.coeffs
                .iter()
                .map(|c| LambdaPoly::monomial(c.clone(), n / 2))
                .collect(),
        );
        sum = Some(match sum {
            None => weighted,
            Some(s) => s.add(&weighted)?,
        });
    }
    let sum = match sum {
        Some(s) => s,
        None => {
            return Err(Error::Parameter(
                "every contributing form factor was omitted".into(),
            ))
        }
    };
    let m = Series::binomial(
        Variable::T,
        &Rational::from(-1),
        &Rational::from((1, 4)),
        order,
    );
    sum.mul(&m.lift())
}

/// The Ising correlation ⟨σ00σNN⟩ as an exact series (λ = 1).
pub fn correlation_series(n_sep: u32, side: Side, order: usize) -> Result<RationalSeries> {
    Ok(lambda_correlation(n_sep, side, order)?.at_mu(&Rational::from(1)))
}

/// C_∓(N,N;λ) at numerical (λ, t) by summing numerically evaluated form factors.
/// Above T_c the result includes the overall factor λ.
pub fn correlation_value(
    n_sep: u32,
    side: Side,
    lambda: &Float,
    t: &Float,
    prec: u32,
) -> Result<Float> {
    if *t <= 0 || *t >= 1 {
        return Err(Error::Domain("correlation_value needs 0 < t < 1".into()));
    }
    let w = prec + 16;
    let tw = Float::with_val(w, t);
    let mu = Float::with_val(w, lambda.square_ref());
    let bits_per = -t.to_f64().log2();
    let odd = matches!(side, Side::AboveTc);
    if side == Side::AtTc {
        return Err(Error::Domain("no form-factor expansion at T_c".into()));
    }
    let mut acc = Float::with_val(w, 0);
    let mut weight = Float::with_val(w, 1);
    let mut h = 0usize;
    loop {
        let n = 2 * h + usize::from(odd);
        let lead = super::FormFactor::leading_exponent(n, n_sep).to_f64();
        if h > 0 && lead * bits_per > (w + 8) as f64 {
            break;
        }
        let f = formfactor_value(n, n_sep, &tw, w)?;
        acc += Float::with_val(w, &f * &weight);
        weight *= &mu;
        h += 1;
        if h > 24 {
            return Err(Error::Convergence(
                "form-factor sum did not converge".into(),
            ));
        }
    }
    let m = Float::with_val(w, 1 - &tw).sqrt().sqrt();
    if odd {
        acc *= lambda;
    }
    Ok(Float::with_val(prec, acc * m))
}

impl Series<LambdaPoly> {
    /// Numerical value at (λ, t): Σ_k P_k(λ²) t^(offset+k).
    pub fn eval_lambda(&self, lambda: &Float, t: &Float) -> Float {
        let prec = lambda.prec().max(t.prec());
        let mu = Float::with_val(prec, lambda.square_ref());
        let mut acc = Float::with_val(prec, 0);
        for c in self.coeffs.iter().rev() {
            acc *= t;
            let mut p = Float::with_val(prec, 0);
            for a in c.coeffs().iter().rev() {
                p *= &mu;
                p += Float::with_val(prec, a);
            }
            acc += p;
        }
        if !Coeff::is_zero(&self.offset) {
            let e = Float::with_val(prec, &self.offset);
            acc *= Float::with_val(prec, rug::ops::Pow::pow(t, &e));
        }
        acc
    }
}
