use super::eps;
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Rational};

fn is_nonpos_int(r: &Rational) -> bool {
    *r.denom() == 1 && *r <= 0
}

/// Generalized hypergeometric series pFq(upper; lower; z) by term recurrence.
///
/// Summation stops once two consecutive terms fall below the target
/// tolerance relative to the running sum.
pub fn hyp_pfq(upper: &[Rational], lower: &[Rational], z: &Float) -> Result<Float> {
    let prec = z.prec();
    let mut guard = 32u32;
    loop {
        let (sum, max_term) = sum_series(upper, lower, z, prec + guard)?;
        // Cancellation check: the largest term may dwarf the result.
        let lost = if sum.is_zero() {
            0
        } else {
            let ratio = Float::with_val(64, &max_term / Float::with_val(64, sum.abs_ref()));
            ratio.to_f64().max(1.0).log2().ceil() as u32
        };
        if lost + 8 <= guard || guard > 4 * prec + 256 {
            return Ok(Float::with_val(prec, sum));
        }
        guard = lost + 40;
    }
}

/// Coefficients c_k of pFq(upper; lower; z) = Σ c_k z^k, exact.
pub fn hyp_pfq_terms(upper: &[Rational], lower: &[Rational], n: usize) -> Result<Vec<Rational>> {
    if let Some(b) = lower.iter().find(|b| is_nonpos_int(b)) {
        return Err(Error::Parameter(format!(
            "lower parameter {b} is a nonpositive integer"
        )));
    }
    let mut out = Vec::with_capacity(n);
    let mut c = Rational::from(1);
    for k in 0..n {
        out.push(c.clone());
        for a in upper {
            c *= Rational::from(a + k as u32);
        }
        for b in lower {
            c /= Rational::from(b + k as u32);
        }
        c /= k as u32 + 1;
    }
    Ok(out)
}

/// Gauss function ₂F₁(a, b; c; z) for real z < 1.
///
/// For z > 1/2 with c − a − b not an integer the series is re-expanded about
/// z = 1; otherwise the defining series is summed directly.
pub fn hyp2f1(a: &Rational, b: &Rational, c: &Rational, z: &Float) -> Result<Float> {
    let prec = z.prec();
    if *z >= 1 {
        return Err(Error::Domain(format!(
            "₂F₁ needs z < 1, got {}",
            z.to_f64()
        )));
    }
    let s = Rational::from(c - a) - b;
    if *z <= 0.5 || *s.denom() == 1 {
        return hyp_pfq(&[a.clone(), b.clone()], std::slice::from_ref(c), z);
    }
    let w = prec + 32;
    let gamma = |r: &Rational| Float::with_val(w, r).gamma();
    let y = Float::with_val(w, 1 - z);
    let f1 = hyp_pfq(&[a.clone(), b.clone()], &[Rational::from(1 - &s)], &y)?;
    let f2 = hyp_pfq(
        &[Rational::from(c - a), Rational::from(c - b)],
        &[Rational::from(&s + 1)],
        &y,
    )?;
    let gc = gamma(c);
    let t1 = Float::with_val(w, &gc * gamma(&s))
        / (gamma(&Rational::from(c - a)) * gamma(&Rational::from(c - b)));
    let neg_s = Rational::from(-&s);
    let t2 = Float::with_val(w, &gc * gamma(&neg_s)) / (gamma(a) * gamma(b));
    let ys = Float::with_val(w, y.pow(&Float::with_val(w, &s)));
    let v = t1 * f1 + t2 * ys * f2;
    Ok(Float::with_val(prec, v))
}

fn sum_series(upper: &[Rational], lower: &[Rational], z: &Float, w: u32) -> Result<(Float, Float)> {
    if let Some(b) = lower.iter().find(|b| is_nonpos_int(b)) {
        return Err(Error::Parameter(format!(
            "lower parameter {b} is a nonpositive integer"
        )));
    }
    let terminating = upper.iter().any(is_nonpos_int);
    let p = upper.len();
    let q = lower.len();
    let zabs = Float::with_val(w, z.abs_ref());
    if !terminating && !z.is_zero() {
        if p > q + 1 {
            return Err(Error::Divergence(format!(
                "{p}F{q} has zero radius of convergence"
            )));
        }
        if p == q + 1 && zabs >= 1 {
            return Err(Error::Divergence(format!(
                "{p}F{q} at |z| = {} outside the unit disc",
                zabs.to_f64()
            )));
        }
    }
    let zw = Float::with_val(w, z);
    let tol = eps(w, w as i32 - 8);
    let mut term = Float::with_val(w, 1);
    let mut sum = Float::with_val(w, 1);
    let mut max_term = Float::with_val(w, 1);
    let mut small_run = 0;
    let max_iter: u64 = 50_000_000;
    let mut k: u64 = 0;
    loop {
        let mut ratio = Rational::from(1);
        for a in upper {
            ratio *= Rational::from(a + k);
        }
        for b in lower {
            ratio /= Rational::from(b + k);
        }
        ratio /= k + 1;
        if ratio == 0 {
            break;
        }
        term *= Float::with_val(w, &ratio);
        term *= &zw;
        sum += &term;
        let at = Float::with_val(w, term.abs_ref());
        if at > max_term {
            max_term = at.clone();
        }
        let scale = Float::with_val(w, sum.abs_ref()).max(&Float::with_val(w, 1e-300));
        if at <= Float::with_val(w, &tol * &scale) {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
        k += 1;
        if k > max_iter {
            return Err(Error::Divergence(
                "series did not converge within iteration cap".into(),
            ));
        }
    }
    Ok((sum, max_term))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn reducible_2f1() {
        let z = Float::with_val(128, 0.3);
        let v = hyp_pfq(&[r(1, 2), r(3, 1)], &[r(3, 1)], &z).unwrap();
        let exact = Float::with_val(128, 1 - &z).sqrt().recip();
        assert!((v - exact).abs() < 1e-36);
    }

    #[test]
    fn at_zero_is_one() {
        let z = Float::with_val(64, 0);
        assert_eq!(hyp_pfq(&[r(1, 2), r(-1, 2)], &[r(1, 1)], &z).unwrap(), 1);
    }

    #[test]
    fn errors() {
        let z = Float::with_val(64, 0.5);
        assert!(matches!(
            hyp_pfq(&[r(1, 2)], &[r(-2, 1)], &z),
            Err(Error::Parameter(_))
        ));
        let z = Float::with_val(64, 1.5);
        assert!(matches!(
            hyp_pfq(&[r(1, 2), r(1, 2)], &[r(1, 1)], &z),
            Err(Error::Divergence(_))
        ));
        assert!(matches!(
            hyp_pfq(
                &[r(1, 2), r(1, 2), r(1, 1)],
                &[r(1, 1)],
                &Float::with_val(64, 0.1)
            ),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn gauss_near_one_matches_direct_sum() {
        let z = Float::with_val(128, 0.8);
        let (a, b, c) = (r(1, 6), r(1, 3), r(1, 1));
        let t = hyp2f1(&a, &b, &c, &z).unwrap();
        let d = hyp_pfq(&[a, b], &[c], &z).unwrap();
        assert!((t - d).abs() < 1e-30);
        let (a, b, c) = (r(7, 6), r(4, 3), r(2, 1));
        let t = hyp2f1(&a, &b, &c, &z).unwrap();
        let d = hyp_pfq(&[a, b], &[c], &z).unwrap();
        assert!(Float::with_val(128, &t - &d).abs() < 1e-30 * d);
    }

    #[test]
    fn terminating_polynomial() {
        // 2F1(-2, 1; 1; z) = (1 - z)^2
        let z = Float::with_val(64, 3);
        let v = hyp_pfq(&[r(-2, 1), r(1, 1)], &[r(1, 1)], &z).unwrap();
        assert_eq!(v, 4);
    }

    #[test]
    fn cancellation_guarded() {
        // 0F1(;1;-x^2/4) = J0(x); J0(20) = 0.16702466434058...
        let z = Float::with_val(128, -100);
        let v = hyp_pfq(&[], &[r(1, 1)], &z).unwrap();
        assert!((v - 0.167_024_664_340_583_f64).abs() < 1e-14);
    }
}
