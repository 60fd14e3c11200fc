use crate::error::{Error, Result};
use crate::numerics::{eps, theta_funcs, Nome};
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

/// The four λ-extended correlations with theta-function closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaForm {
    /// C_−(0,0;λ) = θ3(u)/θ3(0)
    Cm00,
    /// C_+(0,0;λ) = θ2(u)/θ2(0)
    Cp00,
    /// C_−(1,1;λ) = −θ2′(u)/(sin u θ2(0) θ3(0)²)
    Cm11,
    /// C_+(1,1;λ) = −θ3′(u)/(sin u θ3(0) θ2(0)²)
    Cp11,
}

impl ThetaForm {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Cm00" | "cm00" => Ok(ThetaForm::Cm00),
            "Cp00" | "cp00" => Ok(ThetaForm::Cp00),
            "Cm11" | "cm11" => Ok(ThetaForm::Cm11),
            "Cp11" | "cp11" => Ok(ThetaForm::Cp11),
            _ => Err(Error::Parameter(format!("unknown theta form {s:?}"))),
        }
    }
}

/// θ′(u)/sin u summed directly so that u = 0 is regular:
/// sin(ku)/sin u = U_(k−1)(cos u).
fn derivative_over_sin(u: &Float, q: &Float, second: bool, w: u32) -> Float {
    let c = Float::with_val(w, u.cos_ref());
    let two_c = Float::with_val(w, &c * 2u32);
    let tol = eps(w, w as i32);
    // U_0 = 1, U_1 = 2c, U_(k+1) = 2c U_k − U_(k−1)
    let mut u_prev = Float::with_val(w, 1);
    let mut u_cur = two_c.clone();
    let mut k_cur: u64 = 1;
    let advance_to = |k: u64, u_prev: &mut Float, u_cur: &mut Float, k_cur: &mut u64| {
        while *k_cur < k {
            let next = Float::with_val(w, &two_c * &*u_cur) - &*u_prev;
            *u_prev = std::mem::replace(u_cur, next);
            *k_cur += 1;
        }
    };
    let mut acc = Float::with_val(w, 0);
    if second {
        // θ2′(u) = −2 q^(1/4) Σ (2n+1) q^(n(n+1)) sin((2n+1)u)
        let mut n: u64 = 0;
        loop {
            let qn = Float::with_val(w, q.pow(n * (n + 1)));
            if n > 0 && qn < tol {
                break;
            }
            let m = 2 * n + 1;
            let uk = if m == 1 {
                Float::with_val(w, 1)
            } else {
                advance_to(m - 1, &mut u_prev, &mut u_cur, &mut k_cur);
                u_cur.clone()
            };
            acc += qn * uk * m;
            n += 1;
        }
        let q4 = Float::with_val(w, q.root_ref(4));
        -(acc * q4 * 2u32)
    } else {
        // θ3′(u) = −4 Σ n q^(n²) sin(2nu)
        let mut n: u64 = 1;
        loop {
            let qn = Float::with_val(w, q.pow(n * n));
            if qn < tol {
                break;
            }
            advance_to(2 * n - 1, &mut u_prev, &mut u_cur, &mut k_cur);
            acc += qn * &u_cur * n;
            n += 1;
        }
        -(acc * 4u32)
    }
}

/// Evaluates one of the theta-function closed forms at (λ, t), 0 < t < 1, |λ| ≤ 1.
pub fn theta_closed_form(which: ThetaForm, lambda: &Float, t: &Float) -> Result<Float> {
    if lambda.clone().abs() > 1 {
        return Err(Error::Domain(format!(
            "theta closed forms need |λ| ≤ 1, got {}",
            lambda.to_f64()
        )));
    }
    let prec = lambda.prec().max(t.prec());
    let w = prec + 32;
    let nome = Nome::from_t(&Float::with_val(w, t))?;
    let q = nome.q;
    let u = Float::with_val(w, lambda).acos();
    let zero = Float::with_val(w, 0);
    let at_u = theta_funcs(&u, &q)?;
    let at_0 = theta_funcs(&zero, &q)?;
    let v = match which {
        ThetaForm::Cm00 => at_u.th3 / &at_0.th3,
        ThetaForm::Cp00 => at_u.th2 / &at_0.th2,
        ThetaForm::Cm11 => {
            let d = derivative_over_sin(&u, &q, true, w);
            -d / (at_0.th2 * Float::with_val(w, at_0.th3.square_ref()))
        }
        ThetaForm::Cp11 => {
            let d = derivative_over_sin(&u, &q, false, w);
            -d / (at_0.th3 * Float::with_val(w, at_0.th2.square_ref()))
        }
    };
    Ok(Float::with_val(prec, v))
}

/// Residual of 16τ¹² − 16τ⁹ − 8t(t−1)τ³ + t(1−t) at τ = C_−(0,0;cos π/3).
pub fn genus_one_residual(t: &Float) -> Result<Float> {
    let prec = t.prec();
    let lambda = Float::with_val(prec, 1) / 2u32;
    let tau = theta_closed_form(ThetaForm::Cm00, &lambda, t)?;
    let tm1 = Float::with_val(prec, t - 1u32);
    let r = Float::with_val(prec, (&tau).pow(12u32)) * 16u32
        - Float::with_val(prec, (&tau).pow(9u32)) * 16u32
        - Float::with_val(prec, (&tau).pow(3u32)) * &tm1 * t * 8u32
        - Float::with_val(prec, t * &tm1);
    Ok(r)
}

/// 2^(−1/4)(1−t)^(1/16)[1+(1−t)^(1/2)]^(1/4) and the residual of
/// 16τ¹⁶ + 16(t−1)τ⁸ + t²(t−1) at that τ.
pub fn genus_three_value(t: &Float) -> (Float, Float) {
    let prec = t.prec();
    let omt = Float::with_val(prec, 1 - t);
    let a = Float::with_val(prec, omt.root_ref(16));
    let b = Float::with_val(prec, omt.sqrt_ref()) + 1u32;
    let tau = Float::with_val(prec, b.root_ref(4)) * a / Float::with_val(prec, 2).root(4);
    let tm1 = Float::with_val(prec, t - 1u32);
    let r = Float::with_val(prec, (&tau).pow(16u32)) * 16u32
        + Float::with_val(prec, (&tau).pow(8u32)) * &tm1 * 16u32
        + Float::with_val(prec, t.square_ref()) * &tm1;
    (tau, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_lambda_gives_one() {
        let t = Float::with_val(128, 0.3);
        let one = Float::with_val(128, 1);
        for w in [ThetaForm::Cm00, ThetaForm::Cp00] {
            let v = theta_closed_form(w, &one, &t).unwrap();
            assert!(Float::with_val(128, v - 1u32).abs() < 1e-30);
        }
    }

    #[test]
    fn rejects_large_lambda() {
        let t = Float::with_val(128, 0.3);
        assert!(theta_closed_form(ThetaForm::Cm00, &Float::with_val(128, 1.5), &t).is_err());
    }
}
