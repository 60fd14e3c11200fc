use super::field::{self, add, check_prime, inv, mul, sub, SeriesModP};
use crate::error::{Error, Result};
use crate::series::RationalSeries;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

/// Σ_j P_j(t) D^j with D = d/dt over GF(p); `coeffs[j][i]` is the t^i
/// coefficient of P_j. Fitted operators are normalized so that their
/// highest nonzero coefficient (largest j, then largest i) is 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearODE {
    pub p: u64,
    pub order: usize,
    pub degree: usize,
    pub coeffs: Vec<Vec<u64>>,
}

/// Result of checking that an operator kills a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Annihilation {
    pub ok: bool,
    /// Number of residual coefficients that could be checked.
    pub checked: usize,
    pub first_failure: Option<usize>,
}

/// (D^j s)_k for j ≤ max_j and k < len − j.
fn derivative_table(s: &[u64], max_j: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = vec![s.to_vec()];
    for j in 1..=max_j {
        let prev = &out[j - 1];
        let next: Vec<u64> = (0..prev.len().saturating_sub(1))
            .map(|k| mul(prev[k + 1], (k as u64 + 1) % p, p))
            .collect();
        out.push(next);
    }
    out
}

impl LinearODE {
    pub fn validate(&self) -> Result<()> {
        check_prime(self.p)?;
        if self.order == 0 {
            return Err(Error::Parameter("operator order must be at least 1".into()));
        }
        if self.coeffs.len() != self.order + 1
            || self.coeffs.iter().any(|c| c.len() != self.degree + 1)
        {
            return Err(Error::Parameter(format!(
                "expected {} coefficient polynomials of length {}",
                self.order + 1,
                self.degree + 1
            )));
        }
        if self.coeffs.iter().flatten().any(|&c| c >= self.p) {
            return Err(Error::Parameter(format!(
                "residues must be below p = {}",
                self.p
            )));
        }
        if self.coeffs[self.order].iter().all(|&c| c == 0) {
            return Err(Error::Parameter("leading polynomial P_m vanishes".into()));
        }
        Ok(())
    }

    /// Residual coefficients of L s that are determined by the known terms.
    pub fn apply(&self, s: &[u64]) -> Vec<u64> {
        let p = self.p;
        let table = derivative_table(s, self.order, p);
        let valid = s.len().saturating_sub(self.order);
        (0..valid)
            .map(|k| {
                let mut acc = 0;
                for (j, poly) in self.coeffs.iter().enumerate() {
                    for (i, &c) in poly.iter().enumerate().take(k + 1) {
                        if c != 0 {
                            acc = add(acc, mul(c, table[j][k - i], p), p);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("operator serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let ode: LinearODE = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        ode.validate()?;
        Ok(ode)
    }
}

pub fn verify_annihilation(ode: &LinearODE, s: &SeriesModP) -> Result<Annihilation> {
    if ode.p != s.p {
        return Err(Error::Parameter(format!(
            "operator is mod {} but series is mod {}",
            ode.p, s.p
        )));
    }
    let r = ode.apply(&s.coeffs);
    let first_failure = r.iter().position(|&c| c != 0);
    Ok(Annihilation {
        ok: first_failure.is_none(),
        checked: r.len(),
        first_failure,
    })
}

/// Gauss–Jordan elimination column by column until the first column without
/// a pivot. Returns the null vector with a 1 in that column, zeros after it.
fn first_null_vector(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> Option<Vec<u64>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let found = (row..a.len()).find(|&r| a[r][col] != 0);
        let Some(r) = found else {
            let mut v = vec![0; cols];
            v[col] = 1;
            for &(pr, pc) in &pivots {
                v[pc] = sub(0, a[pr][col], p);
            }
            return Some(v);
        };
        a.swap(row, r);
        let s = inv(a[row][col], p);
        for x in a[row][col..].iter_mut() {
            *x = mul(*x, s, p);
        }
        let pivot_row = a[row].clone();
        for (i, other) in a.iter_mut().enumerate() {
            if i == row || other[col] == 0 {
                continue;
            }
            let f = other[col];
            for c in col..cols {
                other[c] = sub(other[c], mul(f, pivot_row[c], p), p);
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    None
}

/// Searches order 1..=max_order (outer) and degree 0..=max_degree (inner) for
/// an operator annihilating `s` through all known terms; returns the first hit.
pub fn fit_ode(s: &SeriesModP, max_order: usize, max_degree: usize) -> Result<LinearODE> {
    let need = (max_order + 1) * (max_degree + 1) + 10;
    if s.order() < need {
        return Err(Error::InsufficientData(format!(
            "order ≤ {max_order}, degree ≤ {max_degree} needs {need} coefficients, got {}",
            s.order()
        )));
    }
    if max_order == 0 {
        return Err(Error::Parameter("max_order must be at least 1".into()));
    }
    let p = s.p;
    let len = s.order();
    let table = derivative_table(&s.coeffs, max_order, p);
    for m in 1..=max_order {
        for d in 0..=max_degree {
            let cols = (m + 1) * (d + 1);
            let rows: Vec<Vec<u64>> = (0..len - m)
                .map(|k| {
                    let mut r = vec![0; cols];
                    for j in 0..=m {
                        for i in 0..=d.min(k) {
                            r[j * (d + 1) + i] = table[j][k - i];
                        }
                    }
                    r
                })
                .collect();
            if let Some(v) = first_null_vector(rows, cols, p) {
                let coeffs: Vec<Vec<u64>> = v.chunks(d + 1).map(<[u64]>::to_vec).collect();
                let ode = LinearODE {
                    p,
                    order: m,
                    degree: d,
                    coeffs,
                };
                if ode.coeffs[m].iter().all(|&c| c == 0) {
                    return Err(Error::Internal(format!(
                        "null vector at order {m} has vanishing leading polynomial"
                    )));
                }
                return Ok(ode);
            }
        }
    }
    Err(Error::NotFound(format!(
        "no operator with order ≤ {max_order} and degree ≤ {max_degree}"
    )))
}

/// Operator with exact rational coefficients, laid out as [`LinearODE`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalODE {
    pub order: usize,
    pub degree: usize,
    pub coeffs: Vec<Vec<Rational>>,
}

impl RationalODE {
    /// Exact residual coefficients of L s determined by the known terms.
    pub fn apply(&self, s: &RationalSeries) -> Vec<Rational> {
        let mut table = vec![s.coeffs.clone()];
        for j in 1..=self.order {
            let prev = &table[j - 1];
            let next: Vec<Rational> = (0..prev.len().saturating_sub(1))
                .map(|k| Rational::from(&prev[k + 1] * (k as u64 + 1)))
                .collect();
            table.push(next);
        }
        let valid = s.len().saturating_sub(self.order);
        (0..valid)
            .map(|k| {
                let mut acc = Rational::new();
                for (j, poly) in self.coeffs.iter().enumerate() {
                    for (i, c) in poly.iter().enumerate().take(k + 1) {
                        if *c != 0 {
                            acc += Rational::from(c * &table[j][k - i]);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn annihilates(&self, s: &RationalSeries) -> bool {
        self.apply(s).iter().all(|c| *c == 0)
    }

    pub fn reduce(&self, p: u64) -> Result<LinearODE> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|poly| {
                poly.iter()
                    .map(|c| field::reduce_rational(c, p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(LinearODE {
            p,
            order: self.order,
            degree: self.degree,
            coeffs,
        })
    }
}

/// a/b ≡ u mod m with |a|, b ≤ √(m/2), if one exists.
pub fn rational_reconstruction(u: &Integer, m: &Integer) -> Option<Rational> {
    let bound = Integer::from(m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), Integer::from(u % m));
    let (mut s0, mut s1) = (Integer::new(), Integer::from(1));
    while r1 > bound {
        let q = Integer::from(&r0 / &r1);
        let r2 = Integer::from(&r0 - &q * &r1);
        let s2 = Integer::from(&s0 - &q * &s1);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1 == 0 || Integer::from(s1.abs_ref()) > bound {
        return None;
    }
    let r = Rational::from((r1, s1));
    // the reconstruction must reproduce u
    let check = (r.numer() - Integer::from(u * r.denom())) % m;
    (check == 0).then_some(r)
}

/// Combines operators with identical shape over distinct primes by CRT and
/// rational reconstruction.
pub fn lift_rational(odes: &[LinearODE]) -> Result<RationalODE> {
    let first = odes
        .first()
        .ok_or_else(|| Error::InsufficientData("no operators to lift".into()))?;
    if odes
        .iter()
        .any(|o| o.order != first.order || o.degree != first.degree)
    {
        return Err(Error::Inconsistent(
            "operators over different primes have different shapes".into(),
        ));
    }
    let mut primes: Vec<u64> = odes.iter().map(|o| o.p).collect();
    primes.sort_unstable();
    primes.dedup();
    if primes.len() != odes.len() {
        return Err(Error::Parameter("lifting needs distinct primes".into()));
    }
    let mut coeffs = Vec::with_capacity(first.order + 1);
    for j in 0..=first.order {
        let mut poly = Vec::with_capacity(first.degree + 1);
        for i in 0..=first.degree {
            let mut m = Integer::from(1);
            let mut u = Integer::new();
            for o in odes {
                // u ← u + m·((r − u)·m⁻¹ mod p)
                let p = o.p;
                let diff = sub(o.coeffs[j][i], field::reduce_integer(&u, p), p);
                let k = mul(diff, inv(field::reduce_integer(&m, p), p), p);
                u += Integer::from(&m * k);
                m *= p;
            }
            let r = rational_reconstruction(&u, &m).ok_or_else(|| {
                Error::InsufficientData(format!(
                    "coefficient ({j}, {i}) does not reconstruct; add a prime"
                ))
            })?;
            poly.push(r);
        }
        coeffs.push(poly);
    }
    Ok(RationalODE {
        order: first.order,
        degree: first.degree,
        coeffs,
    })
}

/// Fits modulo each prime, lifts to Q and checks exact annihilation of `s`.
pub fn fit_rational(
    s: &RationalSeries,
    max_order: usize,
    max_degree: usize,
    primes: &[u64],
) -> Result<RationalODE> {
    let odes = primes
        .iter()
        .map(|&p| fit_ode(&SeriesModP::from_rational(s, p)?, max_order, max_degree))
        .collect::<Result<Vec<_>>>()?;
    let ode = lift_rational(&odes)?;
    if !ode.annihilates(s) {
        return Err(Error::Inconsistent(
            "lifted operator does not annihilate the exact series".into(),
        ));
    }
    Ok(ode)
}
