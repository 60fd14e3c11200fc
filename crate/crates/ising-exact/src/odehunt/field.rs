//! Arithmetic in GF(p) for primes below 2^63, with u128 intermediates.

use crate::error::{Error, Result};
use crate::series::RationalSeries;
use rug::integer::IsPrime;
use rug::{Integer, Rational};

/// 2^62 − 57, the largest prime below 2^62.
pub const DEFAULT_PRIME: u64 = (1 << 62) - 57;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow(a, p - 2, p)
}

pub fn is_prime(p: u64) -> bool {
    Integer::from(p).is_probably_prime(40) != IsPrime::No
}

pub fn check_prime(p: u64) -> Result<()> {
    if !(3..1 << 63).contains(&p) || !is_prime(p) {
        return Err(Error::Parameter(format!(
            "{p} is not an odd prime below 2^63"
        )));
    }
    Ok(())
}

/// Largest prime strictly below `n`.
pub fn prime_below(n: u64) -> u64 {
    let mut c = n - 1;
    while !is_prime(c) {
        c -= 1;
    }
    c
}

/// The `count` largest primes below 2^62, starting with [`DEFAULT_PRIME`].
pub fn default_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = 1u64 << 62;
    for _ in 0..count {
        n = prime_below(n);
        out.push(n);
    }
    out
}

pub fn reduce_integer(z: &Integer, p: u64) -> u64 {
    let r = Integer::from(z % p);
    let r = if r < 0 { r + p } else { r };
    r.to_u64().expect("residue fits in u64")
}

pub fn reduce_rational(r: &Rational, p: u64) -> Result<u64> {
    let d = reduce_integer(r.denom(), p);
    if d == 0 {
        return Err(Error::Parameter(format!(
            "denominator {} is divisible by p = {p}",
            r.denom()
        )));
    }
    Ok(mul(reduce_integer(r.numer(), p), inv(d, p), p))
}

/// Truncated series with residue coefficients. The offset of the source
/// series is kept for reference; fitting acts on the coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesModP {
    pub p: u64,
    pub offset: Rational,
    pub coeffs: Vec<u64>,
}

impl SeriesModP {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        if let Some(c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::Parameter(format!(
                "residue {c} is not reduced mod {p}"
            )));
        }
        Ok(SeriesModP {
            p,
            offset: Rational::new(),
            coeffs,
        })
    }

    pub fn from_rational(s: &RationalSeries, p: u64) -> Result<Self> {
        check_prime(p)?;
        let coeffs = s
            .coeffs
            .iter()
            .map(|c| reduce_rational(c, p))
            .collect::<Result<_>>()?;
        Ok(SeriesModP {
            p,
            offset: s.offset.clone(),
            coeffs,
        })
    }

    /// Number of known coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }
}
