use super::{eps, euler_gamma, pi};
use crate::error::{Error, Result};
use rug::Float;

/// K0(z) and K1(z) for z > 0.
///
/// Small and moderate z use the ascending series at a precision boosted by
/// the e^(2z) cancellation; large z uses the asymptotic expansion, which is
/// only selected when its smallest term is below the target.
pub fn bessel_k01(z: &Float) -> Result<(Float, Float)> {
    if *z <= 0 {
        return Err(Error::Domain(format!(
            "Bessel K needs z > 0, got {}",
            z.to_f64()
        )));
    }
    let prec = z.prec();
    let zf = z.to_f64();
    if zf * 2.885 > (prec + 24) as f64 {
        if let Some(v) = asymptotic(z, prec) {
            return Ok(v);
        }
    }
    Ok(series(z, prec))
}

pub fn bessel_k0(z: &Float) -> Result<Float> {
    bessel_k01(z).map(|(k0, _)| k0)
}

pub fn bessel_k1(z: &Float) -> Result<Float> {
    bessel_k01(z).map(|(_, k1)| k1)
}

fn series(z: &Float, prec: u32) -> (Float, Float) {
    let boost = (z.to_f64() * 2.0 * std::f64::consts::LOG2_E).ceil() as u32 + 32;
    let w = prec + boost;
    let zw = Float::with_val(w, z);
    let y = Float::with_val(w, zw.square_ref()) / 4;
    let half = Float::with_val(w, &zw / 2);
    let ln_half = Float::with_val(w, half.ln_ref());
    let gamma = euler_gamma(w);
    let tol = eps(w, w as i32);

    // term_k = y^k / (k!)^2 ; term1_k = y^k / (k! (k+1)!)
    let mut term = Float::with_val(w, 1);
    let mut term1 = Float::with_val(w, 1);
    let mut i0 = Float::with_val(w, 1);
    let mut i1s = Float::with_val(w, 1);
    let mut hsum = Float::with_val(w, 0);
    let mut psi_sum = Float::with_val(w, -2 * gamma.clone() + 1); // ψ(1)+ψ(2) = -2γ + 1
    let mut k1s = Float::with_val(w, &psi_sum);
    let mut h = Float::with_val(w, 0);
    let mut k: u64 = 0;
    loop {
        k += 1;
        term *= &y;
        term /= k * k;
        term1 *= &y;
        term1 /= k * (k + 1);
        h += Float::with_val(w, 1) / k;
        i0 += &term;
        i1s += &term1;
        hsum += Float::with_val(w, &term * &h);
        // ψ(k+1) + ψ(k+2) = -2γ + H_k + H_{k+1}
        psi_sum =
            Float::with_val(w, -2 * gamma.clone()) + &h + &h + Float::with_val(w, 1) / (k + 1);
        k1s += Float::with_val(w, &term1 * &psi_sum);
        if term < tol && term1 < tol && k > 2 {
            break;
        }
    }
    let k0 = Float::with_val(w, -(Float::with_val(w, &ln_half + &gamma)) * &i0) + &hsum;
    let i1 = Float::with_val(w, &half * &i1s);
    let k1 = Float::with_val(w, 1) / &zw + Float::with_val(w, &i1 * &ln_half)
        - Float::with_val(w, &zw * &k1s) / 4;
    (Float::with_val(prec, k0), Float::with_val(prec, k1))
}

fn asymptotic(z: &Float, prec: u32) -> Option<(Float, Float)> {
    let w = prec + 32;
    let zw = Float::with_val(w, z);
    let tol = eps(w, prec as i32 + 8);
    let pref = Float::with_val(w, pi(w) / Float::with_val(w, &zw * 2)).sqrt()
        * Float::with_val(w, -zw.clone()).exp();
    let mut out = Vec::new();
    for nu2 in [0i64, 4] {
        let mut term = Float::with_val(w, 1);
        let mut sum = Float::with_val(w, 1);
        let mut last = Float::with_val(w, 1);
        let mut ok = false;
        for k in 1..(4 * w as i64) {
            let f = nu2 - (2 * k - 1) * (2 * k - 1);
            term *= f;
            term /= Float::with_val(w, &zw * (8 * k));
            let at = Float::with_val(w, term.abs_ref());
            if at > last {
                break;
            }
            sum += &term;
            if at < tol {
                ok = true;
                break;
            }
            last = at;
        }
        if !ok {
            return None;
        }
        out.push(Float::with_val(prec, &pref * &sum));
    }
    let k1 = out.pop()?;
    let k0 = out.pop()?;
    Some((k0, k1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_asymptotics() {
        for zf in [20.0, 40.0] {
            let z = Float::with_val(128, zf);
            let k0 = bessel_k0(&z).unwrap();
            let lead = Float::with_val(128, &z * 2) / pi(128);
            let r = k0 * lead.sqrt() * z.exp();
            assert!((r - 1u32).abs() < 0.01);
        }
    }

    #[test]
    fn monotone() {
        let vals: Vec<Float> = [0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&z| bessel_k0(&Float::with_val(128, z)).unwrap())
            .collect();
        for w in vals.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn series_and_asymptotic_agree() {
        let z = Float::with_val(64, 60);
        let (a0, a1) = asymptotic(&z, 64).unwrap();
        let (s0, s1) = series(&z, 64);
        assert!(super::super::rel_diff(&a0, &s0) < 1e-17);
        assert!(super::super::rel_diff(&a1, &s1) < 1e-17);
    }

    #[test]
    fn domain() {
        assert!(bessel_k0(&Float::with_val(64, 0)).is_err());
    }
}
