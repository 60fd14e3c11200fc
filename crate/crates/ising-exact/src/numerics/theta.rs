use super::eps;
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::Float;

/// θ2, θ3 and their u-derivatives at (u, q).
#[derive(Debug, Clone)]
pub struct Thetas {
    pub th2: Float,
    pub th3: Float,
    pub th2p: Float,
    pub th3p: Float,
}

/// θ3(u;q) = 1 + 2Σ q^(n²) cos 2nu and θ2(u;q) = 2q^(1/4) Σ q^(n(n+1)) cos (2n+1)u.
pub fn theta_funcs(u: &Float, q: &Float) -> Result<Thetas> {
    if *q <= 0 || *q >= 1 {
        return Err(Error::Domain(format!(
            "theta functions need 0 < q < 1, got {}",
            q.to_f64()
        )));
    }
    let prec = u.prec().max(q.prec());
    let w = prec + 16;
    let qw = Float::with_val(w, q);
    let uw = Float::with_val(w, u);
    let tol = eps(w, w as i32);

    let mut th3 = Float::with_val(w, 1);
    let mut th3p = Float::with_val(w, 0);
    let mut n: u64 = 1;
    loop {
        let qn = Float::with_val(w, (&qw).pow(n * n));
        if qn < tol {
            break;
        }
        let arg = Float::with_val(w, &uw * (2 * n));
        let (s, c) = arg.sin_cos(Float::new(w));
        th3 += Float::with_val(w, &qn * &c) * 2;
        th3p -= Float::with_val(w, &qn * &s) * (4 * n);
        n += 1;
    }

    let q4 = Float::with_val(w, qw.root_ref(4));
    let mut s2 = Float::with_val(w, 0);
    let mut s2p = Float::with_val(w, 0);
    let mut n: u64 = 0;
    loop {
        let qn = Float::with_val(w, (&qw).pow(n * (n + 1)));
        if n > 0 && qn < tol {
            break;
        }
        let m = 2 * n + 1;
        let arg = Float::with_val(w, &uw * m);
        let (s, c) = arg.sin_cos(Float::new(w));
        s2 += Float::with_val(w, &qn * &c);
        s2p -= Float::with_val(w, &qn * &s) * m;
        n += 1;
    }
    let th2 = Float::with_val(w, &s2 * &q4) * 2;
    let th2p = Float::with_val(w, &s2p * &q4) * 2;
    Ok(Thetas {
        th2: Float::with_val(prec, th2),
        th3: Float::with_val(prec, th3),
        th2p: Float::with_val(prec, th2p),
        th3p: Float::with_val(prec, th3p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_vanish_at_zero() {
        let u = Float::with_val(128, 0);
        let q = Float::with_val(128, 0.3);
        let th = theta_funcs(&u, &q).unwrap();
        assert!(th.th2p.is_zero());
        assert!(th.th3p.is_zero());
    }

    #[test]
    fn small_q_limit() {
        let u = Float::with_val(128, 0);
        let q = Float::with_val(128, 1e-30);
        let th = theta_funcs(&u, &q).unwrap();
        assert!((th.th3 - 1u32).abs() < 1e-29);
    }

    #[test]
    fn domain() {
        let u = Float::with_val(64, 0);
        assert!(theta_funcs(&u, &Float::with_val(64, 1)).is_err());
    }
}
