//! Exact t-expansion of the diagonal form-factor integrals.
//!
//! The 2n- and (2n+1)-fold integrals reduce, through the Cauchy determinant
//! and Andréief identities, to characteristic-polynomial data of a product of
//! two Hankel moment matrices M = A·B:
//!
//! * even: f^(2n) = t^(n(N+1)) · e_n(M)
//! * odd:  f^(2n+1) = t^((n+1/2)N) · Σ_k (−1)^k e_(n−k)(M) (M^k A e_0)_0
//!
//! with A_ij = t^(i+j) α_(i+j), B_ij = β_(i+j) and α, β moments of the one-particle
//! weights, each a t-series whose coefficients are Beta values divided by π.
//! The Beta values pair half-integer arguments, so every π cancels; anything
//! else is reported as an internal error.

use crate::error::{Error, Result};
use crate::numerics::binom_rational;
use crate::series::{mul_trunc, Coeff};
use rug::{Integer, Rational};

/// One-particle weight x^p (1−x)^c (1−t x)^s on [0, 1].
#[derive(Debug, Clone)]
pub(crate) struct Weight {
    pub p: Rational,
    pub c: Rational,
    pub s: Rational,
}

fn half(n: i64) -> Rational {
    Rational::from((n, 2))
}

/// Weights (α, β) of the Hankel factors for the given parity and N.
pub(crate) fn weights(odd: bool, n_sep: u32) -> (Weight, Weight) {
    let nn = 2 * n_sep as i64;
    if odd {
        (
            Weight {
                p: half(nn - 1),
                c: half(-1),
                s: half(-1),
            },
            Weight {
                p: half(nn - 3),
                c: half(1),
                s: half(1),
            },
        )
    } else {
        (
            Weight {
                p: half(nn + 1),
                c: half(-1),
                s: half(-1),
            },
            Weight {
                p: half(nn - 1),
                c: half(1),
                s: half(1),
            },
        )
    }
}

/// Γ(x)/√π for half-odd-integer x, Γ(x) for positive integer x.
fn gamma_reduced(x: &Rational) -> Result<Rational> {
    if x.is_integer() {
        let n = x
            .numer()
            .to_u32()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Internal(format!("Gamma pole at {x}")))?;
        return Ok(Rational::from(Integer::from(Integer::factorial(n - 1))));
    }
    if *x.denom() != 2 {
        return Err(Error::Internal(format!(
            "non half-integer Beta argument {x}"
        )));
    }
    let mut v = Rational::from(1);
    let mut y = half(1);
    if *x > 0 {
        while y < *x {
            v *= &y;
            y += 1;
        }
    } else {
        while y > *x {
            y -= 1;
            v /= &y;
        }
    }
    Ok(v)
}

/// B(a, b)/π for half-odd-integer a, b whose sum is a positive integer.
pub(crate) fn beta_over_pi(a: &Rational, b: &Rational) -> Result<Rational> {
    let sum = Rational::from(a + b);
    if a.is_integer() || b.is_integer() || !sum.is_integer() {
        return Err(Error::Internal(format!(
            "π does not cancel in B({a}, {b})/π"
        )));
    }
    Ok(gamma_reduced(a)? * gamma_reduced(b)? / gamma_reduced(&sum)?)
}

/// Moment series μ_j(t) = (1/π)∫ x^(p+j)(1−x)^c(1−tx)^s dx to t^r, j ≤ jmax.
pub(crate) fn moments(w: &Weight, jmax: usize, r: usize) -> Result<Vec<Vec<Rational>>> {
    let b = Rational::from(&w.c + 1u32);
    let a0 = Rational::from(&w.p + 1u32);
    // bt[i] = B(a0 + i, b)/π by B(a+1,b) = B(a,b)·a/(a+b).
    let mut bt = Vec::with_capacity(jmax + r + 1);
    let mut cur = beta_over_pi(&a0, &b)?;
    let mut a = a0.clone();
    for _ in 0..=(jmax + r) {
        bt.push(cur.clone());
        let ab = Rational::from(&a + &b);
        cur *= &a;
        cur /= ab;
        a += 1;
    }
    let binoms: Vec<Rational> = (0..=r)
        .map(|k| {
            let v = binom_rational(&w.s, k as u32);
            if k % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    Ok((0..=jmax)
        .map(|j| {
            (0..=r)
                .map(|k| Rational::from(&binoms[k] * &bt[j + k]))
                .collect()
        })
        .collect())
}

type Ser = Vec<Rational>;

fn zero_ser(len: usize) -> Ser {
    vec![Rational::new(); len]
}

fn add_into(acc: &mut Ser, x: &Ser) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a += b;
    }
}

/// Graded Hankel data: a[s] = t^s α_s, b[s] = β_s as series of length r+1.
struct Hankel {
    a: Vec<Ser>,
    b: Vec<Ser>,
    k: usize,
    len: usize,
}

impl Hankel {
    fn build(odd: bool, n_sep: u32, r: usize) -> Result<Self> {
        let (wa, wb) = weights(odd, n_sep);
        let k = r + 1;
        let jmax = 2 * k - 2;
        let al = moments(&wa, jmax, r)?;
        let be = moments(&wb, jmax, r)?;
        let len = r + 1;
        let a = al
            .into_iter()
            .enumerate()
            .map(|(s, ser)| {
                let mut v = zero_ser(len);
                for (i, c) in ser.into_iter().enumerate() {
                    if s + i < len {
                        v[s + i] = c;
                    }
                }
                v
            })
            .collect();
        Ok(Hankel { a, b: be, k, len })
    }

    /// tr(A·B) = Σ_s (s+1) t^s α_s β_s.
    fn trace_ab(&self) -> Ser {
        let mut tr = zero_ser(self.len);
        for s in 0..self.len {
            let mut prod = mul_trunc(&self.a[s], &self.b[s], self.len);
            for x in &mut prod {
                *x *= (s + 1) as u64;
            }
            add_into(&mut tr, &prod);
        }
        tr
    }

    /// M = A·B, keeping only entries that can be nonzero below t^len.
    fn matrix(&self) -> Vec<Vec<Ser>> {
        let k = self.k;
        let mut m = vec![vec![zero_ser(self.len); k]; k];
        for (i, row) in m.iter_mut().enumerate() {
            for l in 0..k {
                if i + l >= self.len {
                    break;
                }
                let a = &self.a[i + l];
                for (j, entry) in row.iter_mut().enumerate() {
                    let p = mul_trunc(a, &self.b[l + j], self.len);
                    add_into(entry, &p);
                }
            }
        }
        m
    }

    /// Column A e_0 = (t^i α_i)_i.
    fn a_col(&self) -> Vec<Ser> {
        (0..self.k).map(|i| self.a[i].clone()).collect()
    }
}

fn valuation(s: &Ser) -> usize {
    s.iter().position(|c| !Coeff::is_zero(c)).unwrap_or(s.len())
}

fn mat_mul(x: &[Vec<Ser>], y: &[Vec<Ser>], len: usize) -> Vec<Vec<Ser>> {
    let k = x.len();
    let mut z = vec![vec![zero_ser(len); k]; k];
    for (i, zrow) in z.iter_mut().enumerate() {
        for l in 0..k {
            let xil = &x[i][l];
            if valuation(xil) >= len {
                continue;
            }
            for (j, entry) in zrow.iter_mut().enumerate() {
                let p = mul_trunc(xil, &y[l][j], len);
                add_into(entry, &p);
            }
        }
    }
    z
}

fn mat_vec(m: &[Vec<Ser>], v: &[Ser], len: usize) -> Vec<Ser> {
    m.iter()
        .map(|row| {
            let mut acc = zero_ser(len);
            for (x, y) in row.iter().zip(v) {
                if valuation(y) < len {
                    add_into(&mut acc, &mul_trunc(x, y, len));
                }
            }
            acc
        })
        .collect()
}

fn trace_of_product(x: &[Vec<Ser>], y: &[Vec<Ser>], len: usize) -> Ser {
    let mut tr = zero_ser(len);
    for (i, row) in x.iter().enumerate() {
        for (l, xil) in row.iter().enumerate() {
            if valuation(xil) < len {
                add_into(&mut tr, &mul_trunc(xil, &y[l][i], len));
            }
        }
    }
    tr
}

/// Power sums p_1..p_n of the eigenvalues of M.
fn power_sums(h: &Hankel, n: usize) -> Vec<Ser> {
    let mut p = vec![h.trace_ab()];
    if n >= 2 {
        let m = h.matrix();
        let mut pw = m.clone();
        p.push(trace_of_product(&pw, &m, h.len));
        for _ in 3..=n {
            pw = mat_mul(&pw, &m, h.len);
            p.push(trace_of_product(&pw, &m, h.len));
        }
    }
    p
}

/// Elementary symmetric functions e_0..e_n from power sums (Newton's identities).
fn elementary(p: &[Ser], len: usize) -> Vec<Ser> {
    let mut one = zero_ser(len);
    one[0] = Rational::from(1);
    let mut e = vec![one];
    for k in 1..=p.len() {
        let mut acc = zero_ser(len);
        for i in 1..=k {
            let term = mul_trunc(&e[k - i], &p[i - 1], len);
            if i % 2 == 1 {
                add_into(&mut acc, &term);
            } else {
                for (a, b) in acc.iter_mut().zip(&term) {
                    *a -= b;
                }
            }
        }
        for x in &mut acc {
            *x /= k as u64;
        }
        e.push(acc);
    }
    e
}

/// e_n(M) to t^r for the even form factor f^(2n), without the t^(n(N+1)) factor.
pub(crate) fn even_inner(n_half: usize, n_sep: u32, r: usize) -> Result<Ser> {
    let h = Hankel::build(false, n_sep, r)?;
    let p = power_sums(&h, n_half);
    Ok(elementary(&p, h.len).pop().expect("nonempty"))
}

/// The odd sum to t^r, without the t^((n+1/2)N) factor.
pub(crate) fn odd_inner(n_half: usize, n_sep: u32, r: usize) -> Result<Ser> {
    let h = Hankel::build(true, n_sep, r)?;
    let len = h.len;
    let e = if n_half == 0 {
        elementary(&[], len)
    } else {
        elementary(&power_sums(&h, n_half), len)
    };
    let m = if n_half >= 1 { Some(h.matrix()) } else { None };
    let mut v = h.a_col();
    let mut tot = zero_ser(len);
    for k in 0..=n_half {
        let term = mul_trunc(&e[n_half - k], &v[0], len);
        if k % 2 == 0 {
            add_into(&mut tot, &term);
        } else {
            for (a, b) in tot.iter_mut().zip(&term) {
                *a -= b;
            }
        }
        if k < n_half {
            v = mat_vec(m.as_ref().expect("matrix built"), &v, len);
        }
    }
    Ok(tot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn beta_values() {
        // B(1/2, 1/2) = π
        assert_eq!(beta_over_pi(&q(1, 2), &q(1, 2)).unwrap(), 1);
        // B(3/2, 1/2) = π/2
        assert_eq!(beta_over_pi(&q(3, 2), &q(1, 2)).unwrap(), q(1, 2));
        assert!(matches!(
            beta_over_pi(&q(1, 1), &q(1, 2)),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn low_order_values() {
        assert_eq!(
            even_inner(1, 0, 2).unwrap(),
            vec![q(1, 4), q(5, 32), q(15, 128)]
        );
        assert_eq!(odd_inner(0, 1, 1).unwrap(), vec![q(1, 2), q(3, 16)]);
        let f3 = odd_inner(1, 0, 3).unwrap();
        assert_eq!(f3, vec![q(0, 1), q(0, 1), q(1, 64), q(5, 256)]);
    }
}
