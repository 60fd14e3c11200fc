use super::{eps, pi};
use crate::error::{Error, Result};
use rug::Float;

/// Complete elliptic integrals K(m) and E(m) by the arithmetic-geometric mean.
///
/// `m` is the parameter (squared modulus). E carries the correction sum
/// Σ 2^(n-1) c_n².
pub fn elliptic_ke(m: &Float) -> Result<(Float, Float)> {
    let prec = m.prec();
    if *m < 0 || *m >= 1 {
        return Err(Error::Domain(format!(
            "elliptic parameter m = {} outside [0,1)",
            m.to_f64()
        )));
    }
    let one_minus = Float::with_val(prec, 1 - m);
    if one_minus < eps(prec, (prec / 2) as i32) {
        return Err(Error::PrecisionLoss(format!(
            "m within 2^(-{}) of 1",
            prec / 2
        )));
    }
    let w = prec + 32;
    let mut a = Float::with_val(w, 1);
    let mut b = Float::with_val(w, one_minus.sqrt_ref());
    let mut c = Float::with_val(w, m.sqrt_ref());
    // Σ 2^(n-1) c_n², starting at n = 0 with weight 1/2.
    let mut sum = Float::with_val(w, c.square_ref()) / 2;
    let mut pow2 = Float::with_val(w, 1);
    let tol = eps(w, w as i32 - 4);
    for _ in 0..(4 * w as usize) {
        if Float::with_val(w, &c).abs() < tol {
            break;
        }
        let an = Float::with_val(w, &a + &b) / 2;
        let bn = Float::with_val(w, &a * &b).sqrt();
        c = Float::with_val(w, &a - &b) / 2;
        a = an;
        b = bn;
        sum += Float::with_val(w, c.square_ref()) * &pow2;
        pow2 *= 2;
    }
    let k = pi(w) / (Float::with_val(w, &a) * 2);
    let e = Float::with_val(w, &k * (1 - sum));
    Ok((Float::with_val(prec, k), Float::with_val(prec, e)))
}

pub fn elliptic_k(m: &Float) -> Result<Float> {
    elliptic_ke(m).map(|(k, _)| k)
}

/// E(m) for 0 ≤ m ≤ 1; E(1) = 1.
pub fn elliptic_e(m: &Float) -> Result<Float> {
    if *m == 1 {
        return Ok(Float::with_val(m.prec(), 1));
    }
    if *m < 0 || *m > 1 {
        return Err(Error::Domain(format!(
            "elliptic parameter m = {} outside [0,1]",
            m.to_f64()
        )));
    }
    let prec = m.prec();
    let one_minus = Float::with_val(prec, 1 - m);
    if one_minus < eps(prec, (prec / 2) as i32) {
        // E is continuous at 1; evaluate at doubled precision to keep the contract.
        let m2 = Float::with_val(2 * prec, m);
        return elliptic_ke(&m2).map(|(_, e)| Float::with_val(prec, e));
    }
    elliptic_ke(m).map(|(_, e)| e)
}

/// Nome data for modulus k = t^(1/2): K = K(t), K' = K(1-t), q = exp(-π K'/K).
#[derive(Debug, Clone)]
pub struct Nome {
    pub t: Float,
    pub q: Float,
    pub k: Float,
    pub kprime: Float,
}

impl Nome {
    pub fn from_t(t: &Float) -> Result<Self> {
        if *t <= 0 || *t >= 1 {
            return Err(Error::Domain(format!(
                "nome requires 0 < t < 1, got {}",
                t.to_f64()
            )));
        }
        let prec = t.prec();
        let k = elliptic_k(t)?;
        let kprime = elliptic_k(&Float::with_val(prec, 1 - t))?;
        let q = (-(pi(prec) * &kprime) / &k).exp();
        Ok(Nome {
            t: t.clone(),
            q,
            k,
            kprime,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_e_at_zero() {
        let z = Float::with_val(128, 0);
        let (k, e) = elliptic_ke(&z).unwrap();
        let half_pi = pi(128) / 2;
        assert!(Float::with_val(128, &k - &half_pi).abs() < 1e-35);
        assert!(Float::with_val(128, &e - &half_pi).abs() < 1e-35);
    }

    #[test]
    fn legendre_relation_grid() {
        let prec = 192;
        for i in 1..10 {
            let m = Float::with_val(prec, i) / 10;
            let (k, e) = elliptic_ke(&m).unwrap();
            let (kp, ep) = elliptic_ke(&Float::with_val(prec, 1 - &m)).unwrap();
            let lhs = Float::with_val(prec, &e * &kp) + Float::with_val(prec, &ep * &k)
                - Float::with_val(prec, &k * &kp);
            let r = Float::with_val(prec, lhs - pi(prec) / 2u32).abs();
            assert!(r < eps(prec, prec as i32 - 16), "m={i}/10 residual {r}");
        }
    }

    #[test]
    fn domain_and_precision_errors() {
        assert!(elliptic_k(&Float::with_val(64, 1)).is_err());
        assert!(elliptic_k(&Float::with_val(64, -0.1)).is_err());
        let close = Float::with_val(128, 1) - eps(128, 80);
        assert!(matches!(elliptic_k(&close), Err(Error::PrecisionLoss(_))));
        assert_eq!(elliptic_e(&Float::with_val(64, 1)).unwrap(), 1);
    }

    #[test]
    fn nome_monotone() {
        let mut last = Float::with_val(128, 0);
        for i in 1..20 {
            let t = Float::with_val(128, i) / 20;
            let n = Nome::from_t(&t).unwrap();
            assert!(n.q > last);
            last = n.q;
        }
    }
}
