use super::{formfactor_series_with, hyp_f, Caps};
use crate::error::{Error, Result};
use crate::numerics::pochhammer;
use crate::series::mul_trunc;
use rug::Rational;
use serde::Serialize;

/// Result of expressing f^(n)_{N,N} through lower form factors and products
/// of F_N, F_(N+1) with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationFit {
    pub n: usize,
    pub n_sep: u32,
    /// K^(n)_m(N), m = 0..⌊n/2⌋−1.
    #[serde(serialize_with = "ser_rats")]
    pub k_constants: Vec<Rational>,
    /// C^(n)_m(N;t) as coefficient lists in ascending powers of t, m = 0..n.
    #[serde(serialize_with = "ser_polys")]
    pub c_polys: Vec<Vec<Rational>>,
    /// Polynomial degree bound at which the system became consistent.
    pub degree: usize,
    pub palindromic: bool,
    /// Series coefficients used in the linear system.
    pub equations: usize,
}

fn ser_rats<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

fn ser_polys<S: serde::Serializer>(
    v: &[Vec<Rational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter()
            .map(|p| p.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
    )
}

impl FactorizationFit {
    /// Largest exponent carrying a nonzero coefficient, over all C_m.
    pub fn max_degree(&self) -> usize {
        self.c_polys
            .iter()
            .filter_map(|p| p.iter().rposition(|c| c.cmp0().is_ne()))
            .max()
            .unwrap_or(0)
    }
}

/// C(t) = t^P C(1/t) coefficientwise, with P = deg_pal + m.
pub fn is_palindromic(poly: &[Rational], p: usize) -> bool {
    let get = |i: usize| poly.get(i).cloned().unwrap_or_default();
    if poly
        .iter()
        .enumerate()
        .any(|(i, c)| i > p && c.cmp0().is_ne())
    {
        return false;
    }
    (0..=p).all(|i| get(i) == get(p - i))
}

enum Solve {
    Unique(Vec<Rational>),
    Inconsistent,
    Underdetermined(usize),
}

/// Exact Gauss–Jordan solve of rows·x = rhs.
fn solve(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>, ncols: usize) -> Solve {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| rows[i][c].cmp0().is_ne()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = Rational::from(rows[r][c].recip_ref());
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] *= &inv;
        let prow = rows[r].clone();
        let prhs = rhs[r].clone();
        for i in 0..nrows {
            if i == r || rows[i][c].cmp0().is_eq() {
                continue;
            }
            let f = rows[i][c].clone();
            for (x, y) in rows[i].iter_mut().zip(&prow) {
                if y.cmp0().is_ne() {
                    *x -= Rational::from(&f * y);
                }
            }
            rhs[i] -= Rational::from(&f * &prhs);
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    if rhs[r..].iter().any(|x| x.cmp0().is_ne()) {
        return Solve::Inconsistent;
    }
    if pivots.len() < ncols {
        return Solve::Underdetermined(ncols - pivots.len());
    }
    let mut x = vec![Rational::new(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Solve::Unique(x)
}

/// Plain t-series of f^(n)/t^(N/2) for odd n, f^(n) for even n.
fn target(n: usize, n_sep: u32, len: usize) -> Result<Vec<Rational>> {
    let caps = Caps {
        max_n: n.max(1),
        max_sep: n_sep,
        max_order: len,
    };
    Ok(formfactor_series_with(&caps, n, n_sep, len)?.series.coeffs)
}

/// Solves for K^(n)_m(N) and C^(n)_m(N;t), raising the degree bound from
/// ⌊n/2⌋(2N+1) until the exact system is consistent.
pub fn factorization_fit(n: usize, n_sep: u32) -> Result<FactorizationFit> {
    if !(2..=6).contains(&n) {
        return Err(Error::Parameter(format!(
            "factorization fit needs 2 ≤ n ≤ 6, got {n}"
        )));
    }
    let h = n / 2;
    let nominal = h * (2 * n_sep as usize + 1);
    let mut last_err = None;
    for degree in nominal..=nominal + 4 {
        match fit_at_degree(n, n_sep, degree) {
            Ok(f) => return Ok(f),
            Err(e @ Error::Inconsistent(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Inconsistent("no degree fits".into())))
}

fn fit_at_degree(n: usize, n_sep: u32, degree: usize) -> Result<FactorizationFit> {
    let h = n / 2;
    let odd = n % 2 == 1;
    let n_lower = h;
    let n_poly = (n + 1) * (degree + 1);
    let unknowns = n_lower + n_poly;
    let len = unknowns + 10;

    let f_target = target(n, n_sep, len)?;
    let lower: Vec<Vec<Rational>> = (0..h)
        .map(|m| target(2 * m + usize::from(odd), n_sep, len))
        .collect::<Result<_>>()?;
    let fa = hyp_f(n_sep, len).coeffs;
    let fb = hyp_f(n_sep + 1, len).coeffs;
    // products F_N^(n−m) F_(N+1)^m
    let mut pa = vec![one(len)];
    let mut pb = vec![one(len)];
    for _ in 0..n {
        pa.push(mul_trunc(pa.last().unwrap(), &fa, len));
        pb.push(mul_trunc(pb.last().unwrap(), &fb, len));
    }
    let products: Vec<Vec<Rational>> = (0..=n)
        .map(|m| mul_trunc(&pa[n - m], &pb[m], len))
        .collect();

    let mut rows = vec![vec![Rational::new(); unknowns]; len];
    for (k, row) in rows.iter_mut().enumerate() {
        for (m, l) in lower.iter().enumerate() {
            row[m] = l[k].clone();
        }
        for (m, p) in products.iter().enumerate() {
            for i in 0..=degree.min(k) {
                row[n_lower + m * (degree + 1) + i] = p[k - i].clone();
            }
        }
    }
    let x = match solve(rows, f_target, unknowns) {
        Solve::Unique(x) => x,
        Solve::Inconsistent => {
            return Err(Error::Inconsistent(format!(
                "f^({n})_{{{n_sep},{n_sep}}} has no representation with degree ≤ {degree}"
            )))
        }
        Solve::Underdetermined(k) => {
            return Err(Error::Underdetermined(format!(
                "{k} free parameters for f^({n})_{{{n_sep},{n_sep}}} with {len} coefficients"
            )))
        }
    };
    let k_constants = x[..n_lower].to_vec();
    let c_polys: Vec<Vec<Rational>> = (0..=n)
        .map(|m| x[n_lower + m * (degree + 1)..n_lower + (m + 1) * (degree + 1)].to_vec())
        .collect();
    let pal_base = h * (2 * n_sep as usize + 1);
    let palindromic = c_polys
        .iter()
        .enumerate()
        .all(|(m, p)| is_palindromic(p, pal_base + m));
    Ok(FactorizationFit {
        n,
        n_sep,
        k_constants,
        c_polys,
        degree,
        palindromic,
        equations: len,
    })
}

fn one(len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::new(); len];
    v[0] = Rational::from(1);
    v
}

fn a_coef(n: u32, nn: u32) -> Rational {
    let h = Rational::from((1, 2));
    let num = pochhammer(&h, n) * pochhammer(&Rational::from(&h - nn), n);
    let den = pochhammer(&Rational::from(1 - nn as i64), n)
        * Rational::from(crate::numerics::factorial(n));
    num / den
}

fn c2_tail(m: u32, nn: u32) -> Vec<Rational> {
    let n = nn as usize;
    match m {
        2 => {
            let mut c = vec![Rational::new(); 2 * n];
            for k in 0..n {
                let v: Rational = (0..=k as u32)
                    .map(|j| a_coef(j, nn) * a_coef(k as u32 - j, nn))
                    .sum();
                c[k] = v.clone();
                c[2 * n - 1 - k] = v;
            }
            c
        }
        1 => {
            let mut c = vec![Rational::new(); 2 * n + 1];
            for k in 0..n {
                let v: Rational = (0..=k as u32)
                    .map(|j| a_coef(j, nn) * a_coef(k as u32 - j, nn + 1))
                    .sum();
                c[k] = v.clone();
                c[2 * n - k] = v;
            }
            let h = Rational::from((1, 2));
            let lead = pochhammer(&h, nn) / Rational::from(crate::numerics::factorial(nn));
            let harmonic: Rational = (0..nn).map(|k| Rational::from((2, 2 * k as i64 + 1))).sum();
            c[n] = Rational::from(lead.square_ref()) * (Rational::from(2 * nn) * harmonic + 1u32);
            c
        }
        _ => {
            let up = c2_tail(2, nn + 1);
            let mut c = vec![Rational::new(); 2 * n + 2];
            for k in 0..=n {
                c[k] = up[k].clone();
                c[2 * n + 1 - k] = up[k].clone();
            }
            c
        }
    }
}

/// Closed form of C^(2)_m(N;t), N ≥ 1, as ascending coefficients.
///
/// Uses binom(2, m) for the binomial and (1/2)_n for the first Pochhammer
/// symbol of a_n(N); with these the formula reproduces the fitted polynomials.
pub fn c2_formula(m: u32, nn: u32) -> Result<Vec<Rational>> {
    if nn == 0 || m > 2 {
        return Err(Error::Parameter("closed form needs N ≥ 1 and m ≤ 2".into()));
    }
    let binom = [1u32, 2, 1][m as usize];
    let ratio = Rational::from(((2 * nn + 1) * (2 * nn + 1), 4 * nn * (nn + 1)));
    let mut pre = Rational::from((nn, 2)) * binom;
    for _ in 0..m {
        pre *= &ratio;
    }
    if m % 2 == 0 {
        pre = -pre;
    }
    let tail = c2_tail(m, nn);
    let mut out = vec![Rational::new(); m as usize];
    out.extend(tail.into_iter().map(|c| c * &pre));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palindrome_detection() {
        let p: Vec<Rational> = [0, 1, 2, 1].iter().map(|&x| Rational::from(x)).collect();
        assert!(is_palindromic(&p, 4));
        assert!(!is_palindromic(&p, 3));
    }

    #[test]
    fn c2_closed_form_n1() {
        // C_0 = −(t+1)(2t²+t+2)/4 = −(2 + 3t + 3t² + 2t³)/4
        let c0 = c2_formula(0, 1).unwrap();
        let want: Vec<Rational> = [-2, -3, -3, -2]
            .iter()
            .map(|&x| Rational::from((x, 4)))
            .collect();
        assert_eq!(c0, want);
    }
}
