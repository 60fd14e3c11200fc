//! Floating-point evaluation of the same determinant structure as the exact
//! engine, with moments summed as ₂F₁ values at the given t.

use super::engine::{beta_over_pi, weights, Weight};
use crate::error::{Error, Result};
use crate::numerics::{check_prec, hyp_pfq};
use rug::{Float, Rational};

/// Moment matrices truncated at index k where t^k falls below the target.
fn cutoff(t: &Float, bits: u32) -> Result<usize> {
    let tf = t.to_f64();
    if tf <= 0.0 {
        return Ok(1);
    }
    let k = (bits as f64 * std::f64::consts::LN_2 / -tf.ln()).ceil() as usize + 8;
    if k > 600 {
        return Err(Error::Cap(format!(
            "t = {tf} needs a {k}-dimensional truncation; use a smaller t"
        )));
    }
    Ok(k)
}

fn moment_values(w: &Weight, jmax: usize, t: &Float, prec: u32) -> Result<Vec<Float>> {
    let b = Rational::from(&w.c + 1u32);
    let neg_s = Rational::from(-&w.s);
    let mut out = Vec::with_capacity(jmax + 1);
    let mut a = Rational::from(&w.p + 1u32);
    let mut beta = beta_over_pi(&a, &b)?;
    for _ in 0..=jmax {
        let ab = Rational::from(&a + &b);
        let f = hyp_pfq(&[neg_s.clone(), a.clone()], std::slice::from_ref(&ab), t)?;
        out.push(Float::with_val(prec, &beta) * f);
        beta *= &a;
        beta /= ab;
        a += 1;
    }
    Ok(out)
}

type Mat = Vec<Vec<Float>>;

fn mat_mul(x: &Mat, y: &Mat, prec: u32) -> Mat {
    let k = x.len();
    let mut z = vec![vec![Float::with_val(prec, 0); k]; k];
    for i in 0..k {
        for l in 0..k {
            if x[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                z[i][j] += Float::with_val(prec, &x[i][l] * &y[l][j]);
            }
        }
    }
    z
}

fn trace_prod(x: &Mat, y: &Mat, prec: u32) -> Float {
    let mut s = Float::with_val(prec, 0);
    for i in 0..x.len() {
        for l in 0..x.len() {
            s += Float::with_val(prec, &x[i][l] * &y[l][i]);
        }
    }
    s
}

struct Setup {
    a: Mat,
    m: Mat,
    prec: u32,
}

fn setup(odd: bool, n_sep: u32, t: &Float, prec: u32) -> Result<Setup> {
    let k = cutoff(t, prec)?;
    let (wa, wb) = weights(odd, n_sep);
    let tw = Float::with_val(prec, t);
    let al = moment_values(&wa, 2 * k, &tw, prec)?;
    let be = moment_values(&wb, 2 * k, &tw, prec)?;
    let mut tp = vec![Float::with_val(prec, 1)];
    for i in 1..=2 * k {
        let v = Float::with_val(prec, &tp[i - 1] * &tw);
        tp.push(v);
    }
    let a: Mat = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| Float::with_val(prec, &tp[i + j] * &al[i + j]))
                .collect()
        })
        .collect();
    let b: Mat = (0..k)
        .map(|i| (0..k).map(|j| be[i + j].clone()).collect())
        .collect();
    let m = mat_mul(&a, &b, prec);
    Ok(Setup { a, m, prec })
}

fn elementary(m: &Mat, n: usize, prec: u32) -> Vec<Float> {
    let mut p = Vec::with_capacity(n);
    let mut pw = m.clone();
    for l in 1..=n {
        if l == 1 {
            p.push((0..m.len()).fold(Float::with_val(prec, 0), |acc, i| acc + &m[i][i]));
        } else {
            p.push(trace_prod(&pw, m, prec));
            if l < n {
                pw = mat_mul(&pw, m, prec);
            }
        }
    }
    let mut e = vec![Float::with_val(prec, 1)];
    for k in 1..=n {
        let mut acc = Float::with_val(prec, 0);
        for i in 1..=k {
            let term = Float::with_val(prec, &e[k - i] * &p[i - 1]);
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / k as u32);
    }
    e
}

/// f^(n)_{N,N}(t) evaluated numerically at precision `prec` (0 ≤ t < 1).
pub fn formfactor_value(n: usize, n_sep: u32, t: &Float, prec: u32) -> Result<Float> {
    check_prec(prec)?;
    if *t < 0 || *t >= 1 {
        return Err(Error::Domain(
            "form factor evaluation needs 0 ≤ t < 1".into(),
        ));
    }
    if n == 0 {
        return Ok(Float::with_val(prec, 1));
    }
    if t.is_zero() {
        return Ok(Float::with_val(prec, 0));
    }
    let half = n / 2;
    // Newton's identities cancel roughly half·log2(1/t) bits per order.
    let lost = (half as f64 * half as f64 * -t.to_f64().log2()).ceil() as u32;
    let w = prec + 48 + lost;
    let tw = Float::with_val(w, t);
    let odd = n % 2 == 1;
    let s = setup(odd, n_sep, &tw, w)?;
    let e = elementary(&s.m, half, s.prec);
    let val = if !odd {
        let pre = Float::with_val(w, rug::ops::Pow::pow(&tw, (half as u32) * (n_sep + 1)));
        pre * &e[half]
    } else {
        let k = s.a.len();
        let mut v: Vec<Float> = (0..k).map(|i| s.a[i][0].clone()).collect();
        let mut tot = Float::with_val(w, 0);
        for j in 0..=half {
            let term = Float::with_val(w, &e[half - j] * &v[0]);
            if j % 2 == 0 {
                tot += term;
            } else {
                tot -= term;
            }
            if j < half {
                v = (0..k)
                    .map(|i| {
                        (0..k).fold(Float::with_val(w, 0), |acc, l| {
                            acc + Float::with_val(w, &s.m[i][l] * &v[l])
                        })
                    })
                    .collect();
            }
        }
        let expo = Rational::from(((2 * half as i64 + 1) * n_sep as i64, 2));
        let pre = Float::with_val(w, rug::ops::Pow::pow(&tw, &Float::with_val(w, &expo)));
        pre * tot
    };
    Ok(Float::with_val(prec, val))
}
