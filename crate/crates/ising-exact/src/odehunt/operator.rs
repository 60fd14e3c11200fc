//! Differential operators Σ P_j(t) D^j with polynomial coefficients over GF(p).

use super::field::{add, mul, sub};
use super::ode::LinearODE;
use crate::error::{Error, Result};

pub type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add(out[i + j], mul(x, y, p), p);
        }
    }
    trim(out)
}

fn poly_add(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            add(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
                p,
            )
        })
        .collect();
    trim(out)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
                p,
            )
        })
        .collect();
    trim(out)
}

fn poly_deriv(a: &[u64], p: u64) -> Poly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul(c, i as u64 % p, p))
            .collect(),
    )
}

/// Operator as a list of coefficient polynomials, index = power of D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator {
    pub p: u64,
    pub coeffs: Vec<Poly>,
}

impl Operator {
    pub fn from_ode(ode: &LinearODE) -> Self {
        let mut op = Operator {
            p: ode.p,
            coeffs: ode.coeffs.iter().map(|c| trim(c.clone())).collect(),
        };
        op.normalize();
        op
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Vec::is_empty) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order, or None for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// D ∘ self.
    fn left_d(&self) -> Operator {
        let p = self.p;
        let mut out = vec![Vec::new(); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j] = poly_add(&out[j], &poly_deriv(c, p), p);
            out[j + 1] = poly_add(&out[j + 1], c, p);
        }
        let mut op = Operator { p, coeffs: out };
        op.normalize();
        op
    }

    fn scale_left(&self, f: &[u64]) -> Operator {
        let mut op = Operator {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| poly_mul(f, c, self.p)).collect(),
        };
        op.normalize();
        op
    }

    fn sub(&self, other: &Operator) -> Operator {
        let n = self.coeffs.len().max(other.coeffs.len());
        let empty = Vec::new();
        let mut op = Operator {
            p: self.p,
            coeffs: (0..n)
                .map(|j| {
                    poly_sub(
                        self.coeffs.get(j).unwrap_or(&empty),
                        other.coeffs.get(j).unwrap_or(&empty),
                        self.p,
                    )
                })
                .collect(),
        };
        op.normalize();
        op
    }

    /// Pseudo-remainder of right division by `b`: repeatedly replaces R by
    /// lc(b)·R − lc(R)·D^(k−n)·b. It is zero exactly when b right-divides
    /// self over rational-function coefficients.
    pub fn right_pseudo_remainder(&self, b: &Operator) -> Result<Operator> {
        if self.p != b.p {
            return Err(Error::Parameter("operators over different primes".into()));
        }
        let n = b
            .order()
            .ok_or_else(|| Error::Parameter("division by the zero operator".into()))?;
        let lead = b.coeffs[n].clone();
        let mut r = self.clone();
        while let Some(k) = r.order() {
            if k < n {
                break;
            }
            let mut shifted = b.clone();
            for _ in 0..k - n {
                shifted = shifted.left_d();
            }
            let rk = r.coeffs[k].clone();
            r = r.scale_left(&lead).sub(&shifted.scale_left(&rk));
            if r.order().is_some_and(|o| o >= k) {
                return Err(Error::Internal(
                    "pseudo-division failed to lower the order".into(),
                ));
            }
        }
        Ok(r)
    }

    pub fn right_divisible_by(&self, b: &Operator) -> Result<bool> {
        Ok(self.right_pseudo_remainder(b)?.is_zero())
    }
}
