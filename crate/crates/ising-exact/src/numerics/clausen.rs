use super::{eps, pi};
use rug::Float;

/// Clausen function Cl2(θ) = Σ sin(nθ)/n².
///
/// After reduction to (-π, π] uses
/// Cl2(θ) = θ - θ ln|θ| + Σ_k 2ζ(2k) (θ/2π)^(2k) θ / (2k(2k+1)).
pub fn clausen_cl2(theta: &Float) -> Float {
    let prec = theta.prec();
    let extra = theta.get_exp().unwrap_or(0).max(0) as u32;
    let w = prec + 32 + extra;
    let two_pi = pi(w) * 2u32;
    let th = Float::with_val(w, theta);
    let n = Float::with_val(w, &th / &two_pi).round();
    let mut x = th - n * &two_pi;
    let pw = pi(w);
    if x > pw {
        x -= &two_pi;
    } else if x <= -pw.clone() {
        x += &two_pi;
    }
    if x.is_zero() || Float::with_val(w, x.abs_ref()) == pw {
        return Float::with_val(prec, 0);
    }
    let ax = Float::with_val(w, x.abs_ref());
    let mut sum = Float::with_val(w, &x - Float::with_val(w, &x * ax.ln()));
    let r2 = Float::with_val(w, Float::with_val(w, &x / &two_pi).square());
    let mut rpow = Float::with_val(w, 1);
    let tol = eps(w, w as i32);
    for k in 1u32..(4 * w) {
        rpow *= &r2;
        let z = Float::with_val(w, Float::zeta_u(2 * k));
        let term = Float::with_val(w, &z * &rpow) * &x * 2u32 / ((2 * k) * (2 * k + 1));
        sum += &term;
        if Float::with_val(w, term.abs_ref()) < tol {
            break;
        }
    }
    Float::with_val(prec, sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros() {
        assert!(clausen_cl2(&Float::with_val(128, 0)).is_zero());
        assert!(clausen_cl2(&pi(128)).abs() < 1e-35);
    }

    #[test]
    fn odd_and_periodic() {
        let a = Float::with_val(128, 0.9);
        let b = clausen_cl2(&a);
        let c = clausen_cl2(&Float::with_val(128, -a.clone()));
        assert!(Float::with_val(128, &b + &c).abs() < 1e-35);
        let shifted = Float::with_val(128, &a + pi(128) * 2u32);
        assert!((clausen_cl2(&shifted) - &b).abs() < 1e-34);
    }
}
