//! The form-factor engine over GF(p) for n ≤ 3, used to produce long series
//! for operator fitting. Only the entries of M = A·B that the one- to
//! three-particle terms read are formed.

use super::engine::{beta_over_pi, weights, Weight};
use crate::error::{Error, Result};
use crate::odehunt::{check_prime, reduce_rational, SeriesModP};
use rug::Rational;

fn red(r: &Rational, p: u64) -> Result<u64> {
    reduce_rational(r, p)
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add_into(acc: &mut [u64], x: &[u64], p: u64) {
    for (a, &b) in acc.iter_mut().zip(x) {
        *a = ((*a as u128 + b as u128) % p as u128) as u64;
    }
}

/// a·b truncated to `len`, skipping leading zeros of a.
fn mul_trunc(a: &[u64], b: &[u64], len: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    out
}

/// Moment series (1/π)∫ x^(p+j)(1−x)^c(1−tx)^s dx mod p, j ≤ jmax, to t^(len−1).
fn moments(w: &Weight, jmax: usize, len: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    let b = Rational::from(&w.c + 1u32);
    let mut a = Rational::from(&w.p + 1u32);
    let mut cur = red(&beta_over_pi(&a, &b)?, p)?;
    let mut bt = Vec::with_capacity(jmax + len);
    for _ in 0..jmax + len {
        bt.push(cur);
        let ratio = &a / Rational::from(&a + &b);
        cur = mul(cur, red(&ratio, p)?, p);
        a += 1;
    }
    // (−1)^k binom(s, k)
    let mut binoms = Vec::with_capacity(len);
    let mut v = Rational::from(1);
    for k in 0..len {
        binoms.push(red(&v, p)?);
        v *= Rational::from(k) - &w.s;
        v /= k as u64 + 1;
    }
    Ok((0..=jmax)
        .map(|j| (0..len).map(|k| mul(binoms[k], bt[j + k], p)).collect())
        .collect())
}

/// f^(n)_{N,N} mod p with `len` coefficients, for n ≤ 3. Same coefficient
/// layout as the exact series (odd n carries offset N/2).
pub fn formfactor_series_mod(n: usize, n_sep: u32, len: usize, p: u64) -> Result<SeriesModP> {
    check_prime(p)?;
    if n > 3 {
        return Err(Error::Cap(format!(
            "the modular engine covers n ≤ 3, got {n}"
        )));
    }
    let odd = n % 2 == 1;
    let (offset, shift) = if odd {
        (Rational::from((n_sep, 2)), (n / 2) * n_sep as usize)
    } else {
        (Rational::new(), (n / 2) * (n_sep as usize + 1))
    };
    let mut coeffs = vec![0u64; len];
    if n == 0 {
        if len > 0 {
            coeffs[0] = 1;
        }
    } else if shift < len {
        let r = len - shift;
        let (wa, wb) = weights(odd, n_sep);
        let al = moments(&wa, 2 * r, r, p)?;
        let be = moments(&wb, 2 * r, r, p)?;
        // a[s] = t^s α_s
        let a: Vec<Vec<u64>> = al
            .iter()
            .take(r)
            .enumerate()
            .map(|(s, ser)| {
                let mut v = vec![0u64; r];
                v[s..].copy_from_slice(&ser[..r - s]);
                v
            })
            .collect();
        // e_1 = tr(AB) = Σ_s (s+1) t^s α_s β_s
        let trace = || {
            let mut tr = vec![0u64; r];
            for (s, row) in a.iter().enumerate() {
                let prod = mul_trunc(row, &be[s], r, p);
                let scaled: Vec<u64> = prod
                    .iter()
                    .map(|&x| mul(x, (s as u64 + 1) % p, p))
                    .collect();
                add_into(&mut tr, &scaled, p);
            }
            tr
        };
        let inner = match n {
            1 => a[0].clone(),
            2 => trace(),
            _ => {
                // e_1 (A e_0)_0 − (M A e_0)_0, (M A e_0)_0 = Σ_l a_l Σ_j β_(l+j) a_j
                let mut out = mul_trunc(&trace(), &a[0], r, p);
                let mut mae = vec![0u64; r];
                for (l, al_row) in a.iter().enumerate() {
                    let mut w = vec![0u64; r - l];
                    for (j, aj) in a.iter().enumerate().take(r - l) {
                        add_into(&mut w, &mul_trunc(aj, &be[l + j], r - l, p), p);
                    }
                    add_into(&mut mae, &mul_trunc(al_row, &w, r, p), p);
                }
                for (o, m) in out.iter_mut().zip(&mae) {
                    *o = if *o >= *m { *o - m } else { *o + (p - m) };
                }
                out
            }
        };
        coeffs[shift..].copy_from_slice(&inner);
    }
    Ok(SeriesModP { p, offset, coeffs })
}
