//! Configurable-precision scalars and the special functions used across the crate.
//!
//! Every function reads its working precision from its arguments (or an explicit
//! `prec`), so results are pure functions of their inputs.

mod bessel;
mod clausen;
mod elliptic;
mod hyper;
mod quad;
mod theta;
mod zeta;

pub use bessel::{bessel_k0, bessel_k01, bessel_k1};
pub use clausen::clausen_cl2;
pub use elliptic::{elliptic_e, elliptic_k, elliptic_ke, Nome};
pub use hyper::{hyp2f1, hyp_pfq, hyp_pfq_terms};
pub use quad::{gauss_legendre, tanh_sinh, tanh_sinh_endpoints, trapezoid_periodic, QuadConfig};
pub use theta::{theta_funcs, Thetas};
pub use zeta::{glaisher_ln_a, zeta_prime_neg1};

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::{Float, Rational};

/// Working scalar: an MPFR float that carries its own mantissa size.
pub type PrecReal = Float;

pub const DEFAULT_PREC: u32 = 256;
pub const MIN_PREC: u32 = 64;

/// Validates a requested working precision.
pub fn check_prec(prec: u32) -> Result<u32> {
    if prec < MIN_PREC {
        return Err(Error::Parameter(format!(
            "precision {prec} bits is below the minimum of {MIN_PREC}"
        )));
    }
    Ok(prec)
}

pub fn real(prec: u32, v: f64) -> Float {
    Float::with_val(prec, v)
}

pub fn from_rational(prec: u32, r: &Rational) -> Float {
    Float::with_val(prec, r)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

/// 2^(-bits) at the given precision.
pub fn eps(prec: u32, bits: i32) -> Float {
    let one = Float::with_val(prec, 1);
    if bits >= 0 {
        one >> (bits as u32)
    } else {
        one << ((-bits) as u32)
    }
}

/// Relative difference |a-b| / max(|a|,|b|, tiny).
pub fn rel_diff(a: &Float, b: &Float) -> Float {
    let prec = a.prec().max(b.prec());
    let d = Float::with_val(prec, a - b).abs();
    let mut s = Float::with_val(prec, a.abs_ref()).max(&Float::with_val(prec, b.abs_ref()));
    if s.is_zero() {
        s = Float::with_val(prec, 1);
    }
    d / s
}

/// Parses "p/q", an integer, or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() || s.len() > 100_000 {
        return Err(Error::Parse("empty or oversized rational literal".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_integer(n)?;
        let d = parse_integer(d)?;
        if d == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(Rational::from((n, d)));
    }
    if s.contains(['.', 'e', 'E']) {
        let (mantissa, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (
                m,
                e.parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?,
            ),
            None => (s, 0),
        };
        if exp.unsigned_abs() > 10_000 {
            return Err(Error::Parse("exponent out of range".into()));
        }
        let (neg, body) = match mantissa.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
        if ip.is_empty() && fp.is_empty() {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let digits = format!("{ip}{fp}");
        let n = rug::Integer::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10)
            .map_err(|e| Error::Parse(e.to_string()))?;
        let scale = exp - fp.len() as i32;
        let mut r = Rational::from(n);
        if scale >= 0 {
            r *= Rational::from(rug::Integer::from(rug::Integer::u_pow_u(10, scale as u32)));
        } else {
            r /= Rational::from(rug::Integer::from(rug::Integer::u_pow_u(
                10,
                (-scale) as u32,
            )));
        }
        if neg {
            r = -r;
        }
        return Ok(r);
    }
    Ok(Rational::from(parse_integer(s)?))
}

fn parse_integer(s: &str) -> Result<rug::Integer> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad integer {s:?}")));
    }
    rug::Integer::from_str_radix(s.strip_prefix('+').unwrap_or(s), 10)
        .map_err(|e| Error::Parse(e.to_string()))
}

/// Pochhammer symbol (a)_n over the rationals.
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    let mut v = Rational::from(1);
    let mut x = a.clone();
    for _ in 0..n {
        v *= &x;
        x += 1;
    }
    v
}

/// Generalized binomial coefficient binom(a, r) for rational a.
pub fn binom_rational(a: &Rational, r: u32) -> Rational {
    let mut v = Rational::from(1);
    for i in 0..r {
        v *= a - Rational::from(i);
        v /= i + 1;
    }
    v
}

/// Least-squares solution of rows·c ≈ rhs through the normal equations,
/// eliminated with partial pivoting at `prec` bits.
pub fn least_squares(rows: &[Vec<Float>], rhs: &[Float], prec: u32) -> Result<Vec<Float>> {
    let n = rows.first().map(Vec::len).unwrap_or(0);
    if n == 0 || rows.len() < n || rows.len() != rhs.len() || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InsufficientData(format!(
            "{} rows for {n} unknowns",
            rows.len()
        )));
    }
    let mut m = vec![vec![Float::with_val(prec, 0); n + 1]; n];
    for (row, y) in rows.iter().zip(rhs) {
        for i in 0..n {
            for j in 0..n {
                m[i][j] += Float::with_val(prec, &row[i] * &row[j]);
            }
            m[i][n] += Float::with_val(prec, &row[i] * y);
        }
    }
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| {
                m[a][c]
                    .cmp_abs(&m[b][c])
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty range");
        if m[p][c].is_zero() {
            return Err(Error::Underdetermined(format!(
                "column {c} of the fit basis is dependent"
            )));
        }
        m.swap(c, p);
        for r in 0..n {
            if r == c {
                continue;
            }
            let f = Float::with_val(prec, &m[r][c] / &m[c][c]);
            for k in c..=n {
                let v = Float::with_val(prec, &f * &m[c][k]);
                m[r][k] -= v;
            }
        }
    }
    Ok((0..n)
        .map(|i| Float::with_val(prec, &m[i][n] / &m[i][i]))
        .collect())
}

/// Decimal rendering with as many digits as the mantissa supports.
pub fn float_string(x: &Float) -> String {
    let digits = (x.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize;
    x.to_string_radix(10, Some(digits.max(1)))
}

pub fn factorial(n: u32) -> rug::Integer {
    rug::Integer::from(rug::Integer::factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational::from((3, 4)));
        assert_eq!(parse_rational("-6/8").unwrap(), Rational::from((-3, 4)));
        assert_eq!(parse_rational("0.125").unwrap(), Rational::from((1, 8)));
        assert_eq!(parse_rational("1.5e2").unwrap(), Rational::from(150));
        assert_eq!(parse_rational("-2").unwrap(), Rational::from(-2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
        assert!(parse_rational("1/-").is_err());
    }

    #[test]
    fn precision_floor() {
        assert!(check_prec(32).is_err());
        assert_eq!(check_prec(128).unwrap(), 128);
    }

    #[test]
    fn binomial_half() {
        let h = Rational::from((1, 2));
        assert_eq!(binom_rational(&h, 2), Rational::from((-1, 8)));
        assert_eq!(pochhammer(&h, 3), Rational::from((15, 8)));
    }
}
