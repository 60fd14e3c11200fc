use super::{eps, pi};
use rug::Float;

/// ln A for the Glaisher–Kinkelin constant via Euler–Maclaurin at a finite cutoff n:
/// ln A = Σ_{k≤n} k ln k − (n²/2 + n/2 + 1/12) ln n + n²/4 + Σ_{j≥2} B_{2j} n^(2−2j) / (2j(2j−1)(2j−2)).
pub fn glaisher_ln_a(prec: u32) -> Float {
    let w = prec + 48;
    let n: u64 = 50.max((0.12 * (w as f64 + 32.0)).ceil() as u64);
    let mut s = Float::with_val(w, 0);
    for k in 2..=n {
        let kf = Float::with_val(w, k);
        s += Float::with_val(w, kf.ln_ref()) * k;
    }
    let nf = Float::with_val(w, n);
    let ln_n = Float::with_val(w, nf.ln_ref());
    let n2 = Float::with_val(w, nf.square_ref());
    let coef = Float::with_val(w, &n2 / 2u32)
        + Float::with_val(w, &nf / 2u32)
        + Float::with_val(w, 1) / 12u32;
    s -= coef * &ln_n;
    s += Float::with_val(w, &n2 / 4u32);

    let two_pi = pi(w) * 2u32;
    let tol = eps(w, w as i32);
    let inv_n2 = Float::with_val(w, 1) / &n2;
    let mut npow = Float::with_val(w, 1); // n^(2-2j)
    let mut fact = Float::with_val(w, 2); // (2j)!
    let mut tpow = Float::with_val(w, two_pi.square_ref()); // (2π)^(2j)
    let mut last_mag = Float::with_val(w, f64::MAX);
    for j in 2u32..(w) {
        npow *= &inv_n2;
        fact *= (2 * j - 1) * (2 * j);
        tpow *= Float::with_val(w, two_pi.square_ref());
        // B_{2j} = (-1)^(j+1) 2 (2j)! ζ(2j) / (2π)^(2j)
        let z = Float::with_val(w, Float::zeta_u(2 * j));
        let mut b = Float::with_val(w, &fact * &z) * 2u32 / &tpow;
        if j % 2 == 0 {
            b = -b;
        }
        let term = b * &npow / ((2 * j) * (2 * j - 1) * (2 * j - 2));
        let mag = Float::with_val(w, term.abs_ref());
        if mag > last_mag {
            break;
        }
        s += &term;
        if mag < tol {
            break;
        }
        last_mag = mag;
    }
    Float::with_val(prec, s)
}

/// ζ'(−1) = 1/12 − ln A.
pub fn zeta_prime_neg1(prec: u32) -> Float {
    let w = prec + 16;
    let v = Float::with_val(w, 1) / 12u32 - glaisher_ln_a(w);
    Float::with_val(prec, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rough_value() {
        let z = zeta_prime_neg1(256);
        assert!((z + 0.1654f64).abs() < 1e-3);
    }

    #[test]
    fn precision_consistency() {
        let a = zeta_prime_neg1(128);
        let b = zeta_prime_neg1(256);
        assert!(Float::with_val(256, &a - &b).abs() < eps(128, 124));
    }
}
