//! Diagonal terms χ_d^(n): exact series from the form factors, direct
//! quadrature for n ≤ 3, and the hypergeometric closed forms for n ≤ 4.

use crate::error::{Error, Result};
use crate::formfactor::{formfactor_series_with, Caps};
use crate::numerics::{elliptic_ke, gauss_legendre, hyp2f1, pi};
use crate::series::{RationalSeries, Series, Variable};
use rug::ops::Pow;
use rug::{Float, Rational};
use std::f64::consts::PI;

/// Default series order for χ_d^(n).
pub fn diag_series_cap(n: usize) -> usize {
    if n <= 3 {
        60
    } else {
        40
    }
}

/// χ_d^(n) as an exact series through v^order: v = t for even n,
/// v = x = t^(1/2) for odd n. Each χ_d^(n) = Σ_N f^(n)_{N,N} over all integer N.
pub fn chi_diag_series(n: usize, order: usize) -> Result<RationalSeries> {
    chi_diag_series_capped(n, order, diag_series_cap(n))
}

pub fn chi_diag_series_capped(n: usize, order: usize, cap: usize) -> Result<RationalSeries> {
    if !(1..=5).contains(&n) {
        return Err(Error::Cap(format!(
            "diagonal series are limited to n ≤ 5, got {n}"
        )));
    }
    if order > cap {
        return Err(Error::Cap(format!(
            "χ_d^({n}) series order {order} exceeds cap {cap}"
        )));
    }
    let h = n / 2;
    let odd = n % 2 == 1;
    let caps = Caps {
        max_n: n,
        max_sep: u32::MAX,
        max_order: order + 1,
    };
    let mut acc = vec![Rational::new(); order + 1];
    for n_sep in 0u32.. {
        let nn = n_sep as usize;
        let lead = if odd {
            (2 * h + 1) * nn + 2 * h * (h + 1)
        } else {
            h * (nn + h)
        };
        if lead > order {
            break;
        }
        let weight = if n_sep == 0 { 1u32 } else { 2 };
        if odd {
            // f^(n) carries t^(N/2) = x^N; t^k becomes x^(2k)
            let len = (order - nn) / 2 + 1;
            let f = formfactor_series_with(&caps, n, n_sep, len)?.series;
            for (k, c) in f.coeffs.iter().enumerate() {
                acc[nn + 2 * k] += Rational::from(c * weight);
            }
        } else {
            let f = formfactor_series_with(&caps, n, n_sep, order + 1)?.series;
            for (k, c) in f.coeffs.iter().enumerate() {
                acc[k] += Rational::from(c * weight);
            }
        }
    }
    let var = if odd { Variable::X } else { Variable::T };
    Ok(Series::from_coeffs(var, acc))
}

/// Gauss–Legendre nodes on [0, π/2] in four panels, as (sin²φ, cos²φ, weight).
fn angle_rule(nodes: usize) -> Vec<(f64, f64, f64)> {
    let gl = gauss_legendre(nodes, 64);
    let panels = 4;
    let h = PI / 2.0 / panels as f64;
    let mut out = Vec::with_capacity(nodes * panels);
    for p in 0..panels {
        for (x, w) in &gl {
            let phi = h * (p as f64 + (x.to_f64() + 1.0) / 2.0);
            let s = phi.sin();
            let c = phi.cos();
            out.push((s * s, c * c, w.to_f64() * h / 2.0));
        }
    }
    out
}

fn ratio(y: f64) -> f64 {
    (1.0 + y) / (1.0 - y)
}

fn diag_integrand_sum(n: usize, t: f64, nodes: usize) -> f64 {
    let r = angle_rule(nodes);
    let rt = t.sqrt();
    match n {
        // x = sin²φ turns (x(1−x))^(−1/2) dx into 2 dφ
        1 => {
            r.iter()
                .map(|&(x, _, w)| 2.0 * w * ratio(rt * x) / (1.0 - t * x).sqrt())
                .sum::<f64>()
                / PI
        }
        2 => {
            let mut s = 0.0;
            for &(x1, _, w1) in &r {
                let a = 2.0 * w1 * x1 / (1.0 - t * x1).sqrt();
                for &(x2, c2, w2) in &r {
                    let d = 1.0 - t * x1 * x2;
                    let b = 2.0 * w2 * c2 * (1.0 - t * x2).sqrt();
                    s += a * b * ratio(t * x1 * x2) / (d * d);
                }
            }
            t * s / (PI * PI)
        }
        _ => {
            let t32 = t * rt;
            let mut s = 0.0;
            for &(x2, c2, w2) in &r {
                let b = 2.0 * w2 * x2 * c2 * (1.0 - t * x2).sqrt();
                let mut inner = 0.0;
                for (i, &(x1, _, w1)) in r.iter().enumerate() {
                    let d1 = 1.0 - t * x1 * x2;
                    let a1 = 2.0 * w1 / ((1.0 - t * x1).sqrt() * d1 * d1);
                    for &(x3, _, w3) in &r[..i] {
                        let d3 = 1.0 - t * x3 * x2;
                        let a3 = 2.0 * w3 / ((1.0 - t * x3).sqrt() * d3 * d3);
                        let diff = x1 - x3;
                        inner += 2.0 * a1 * a3 * diff * diff * ratio(t32 * x1 * x2 * x3);
                    }
                }
                s += b * inner;
            }
            t * t * s / (2.0 * PI * PI * PI)
        }
    }
}

/// χ_d^(n)(t) for n ≤ 3 by direct tensor-product quadrature of the
/// (n)-fold integral; relative accuracy ~1e-12 for t ≤ 0.9.
pub fn chi_diag_integral(n: usize, t: &Float) -> Result<Float> {
    if !(1..=3).contains(&n) {
        return Err(Error::Cap(format!(
            "diagonal integrals are limited to n ≤ 3, got {n}"
        )));
    }
    let tf = t.to_f64();
    if !(tf > 0.0 && tf <= 0.9) {
        return Err(Error::Domain(format!(
            "diagonal quadrature needs 0 < t ≤ 0.9, got {tf}"
        )));
    }
    let limit = if n == 3 { 32 } else { 128 };
    let mut nodes = 8;
    let mut prev = diag_integrand_sum(n, tf, nodes);
    while nodes < limit {
        nodes *= 2;
        let cur = diag_integrand_sum(n, tf, nodes);
        if (cur - prev).abs() <= 1e-13 * cur.abs() {
            return Ok(Float::with_val(t.prec(), cur));
        }
        prev = cur;
    }
    Err(Error::Convergence(format!(
        "χ_d^({n}) quadrature did not settle at t = {tf}"
    )))
}

/// Weights of χ_d^(3) = (1/3)χ_{d;1} + (1/2)χ_{d;2} − (1/6)χ_{d;3}.
pub fn chi3d_weights() -> [Rational; 3] {
    [
        Rational::from((1, 3)),
        Rational::from((1, 2)),
        Rational::from((-1, 6)),
    ]
}

/// Weights of χ_d^(4) on (t/(4(1−t)), χ_{d;2}, A_3·₄F₃).
pub fn chi4d_weights() -> [Rational; 3] {
    [
        Rational::from((1, 2)),
        Rational::from((1, 24)),
        Rational::from((-1, 8)),
    ]
}

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn check_t(t: &Float) -> Result<()> {
    if !(*t > 0 && *t < 1) {
        return Err(Error::Domain(format!(
            "closed forms need 0 < t < 1, got {}",
            t.to_f64()
        )));
    }
    Ok(())
}

/// Q = (27/4)(1+x)²x²/(x²+x+1)³.
pub fn q_of_x(x: &Float) -> Float {
    let w = x.prec();
    let p = Float::with_val(w, x * x) + x + 1u32;
    let num = Float::with_val(w, 1 + x).square() * Float::with_val(w, x * x) * 27u32;
    let p3 = Float::with_val(w, p.square_ref()) * &p;
    num / (p3 * 4u32)
}

/// (1−x)²(1+2x)²(2+x)²/(4(1+x+x²)³), the closed form of 1 − Q.
pub fn one_minus_q(x: &Float) -> Float {
    let w = x.prec();
    let p = Float::with_val(w, x * x) + x + 1u32;
    let a = Float::with_val(w, 1 - x)
        * (Float::with_val(w, x * 2u32) + 1u32)
        * Float::with_val(w, x + 2u32);
    let p3 = Float::with_val(w, p.square_ref()) * &p;
    a.square() / (p3 * 4u32)
}

/// (χ_{d;1}, χ_{d;2}, χ_{d;3}) of χ_d^(3) at x = t^(1/2).
pub fn chi3d_parts(t: &Float) -> Result<[Float; 3]> {
    check_t(t)?;
    let prec = t.prec();
    let w = prec + 64;
    let x = Float::with_val(w, t.sqrt_ref());
    let om = Float::with_val(w, 1 - &x);
    let half_pi = pi(w) / 2u32;
    let (k, e) = elliptic_ke(&Float::with_val(w, t))?;
    let fp = Float::with_val(w, &k / &half_pi);
    let fm = Float::with_val(w, &e / &half_pi);
    let c1 = Float::with_val(w, om.recip_ref());
    let c2 = fm / Float::with_val(w, om.square_ref()) - fp / &om;
    let q = q_of_x(&x);
    let fa = hyp2f1(&r(1, 6), &r(1, 3), &r(1, 1), &q)?;
    let fb = hyp2f1(&r(7, 6), &r(4, 3), &r(2, 1), &q)?;
    let pre = (Float::with_val(w, &x * 2u32) + 1u32) * Float::with_val(w, &x + 2u32)
        / (Float::with_val(w, &om * (Float::with_val(w, &x * &x) + &x + 1u32)));
    let bracket = Float::with_val(w, fa.square_ref()) + q * 2u32 / 9u32 * fa * fb;
    let c3 = pre * bracket;
    Ok([c1, c2, c3].map(|v| Float::with_val(prec, v)))
}

/// S_j = t^j d^j/dt^j ₄F₃(1/2,1/2,1/2,1/2; 1,1,1; t²) for j = 0..3.
fn s_sums(t: &Float, w: u32) -> Result<[Float; 4]> {
    let z = Float::with_val(w, t.square_ref());
    let gap = Float::with_val(w, 1 - &z).to_f64();
    let est = (w as f64 * std::f64::consts::LN_2 + 20.0) / gap;
    if est > 5e7 {
        return Err(Error::Cap(format!(
            "₄F₃ summation at t = {} needs ~{est:.1e} terms",
            t.to_f64()
        )));
    }
    let tol = crate::numerics::eps(w, w as i32 - 4);
    let mut s: [Float; 4] = std::array::from_fn(|_| Float::with_val(w, 0));
    let mut term = Float::with_val(w, 1);
    let mut k: u64 = 0;
    loop {
        let m = 2 * k;
        let falling = [
            1,
            m,
            m * m.saturating_sub(1),
            m * m.saturating_sub(1) * m.saturating_sub(2),
        ];
        for j in 0..4 {
            s[j] += Float::with_val(w, &term * falling[j]);
        }
        let last = Float::with_val(w, &term * falling[3].max(1));
        if k > 8
            && last
                < Float::with_val(
                    w,
                    &tol * Float::with_val(w, s[3].abs_ref()).max(&Float::with_val(w, 1)),
                )
        {
            break;
        }
        let a = Float::with_val(w, k) + 0.5f64;
        let b = Float::with_val(w, k + 1);
        let f = Float::with_val(w, &a / &b).square().square();
        term *= f;
        term *= &z;
        k += 1;
    }
    Ok(s)
}

/// (χ_{d;1}, χ_{d;2}, A_3·₄F₃) of χ_d^(4), with χ_{d;1} = χ_d^(2) = t/(4(1−t)).
pub fn chi4d_parts(t: &Float) -> Result<[Float; 3]> {
    check_t(t)?;
    let prec = t.prec();
    let w = prec + 64;
    let tw = Float::with_val(w, t);
    let om = Float::with_val(w, 1 - &tw);
    let half_pi = pi(w) / 2u32;
    let (k, e) = elliptic_ke(&tw)?;
    let fp = Float::with_val(w, &k / &half_pi);
    let fm = Float::with_val(w, &e / &half_pi);
    let d1 = Float::with_val(w, &tw / (Float::with_val(w, &om * 4u32)));
    let d2 = Float::with_val(w, 1 + &tw) / Float::with_val(w, om.square_ref())
        * Float::with_val(w, fm.square_ref())
        - Float::with_val(w, fp.square_ref())
        - Float::with_val(w, &tw * 2u32) / &om * &fp * &fm;
    let [s0, s1, s2, s3] = s_sums(&tw, w)?;
    let t2 = Float::with_val(w, tw.square_ref());
    let tm1 = Float::with_val(w, &tw - 1u32);
    let p2 = (Float::with_val(w, &t2 * 16u32) - &tw - 11u32) / &tm1;
    let p1 = (Float::with_val(w, &t2 * 31u32) - Float::with_val(w, &tw * 4u32) - 11u32) / &tm1;
    let d3 = Float::with_val(w, 1 + &tw) * s3 * 2u32
        + p2 * s2 * 2u32 / 3u32
        + p1 * s1 / 3u32
        + Float::with_val(w, &tw * s0);
    Ok([d1, d2, d3].map(|v| Float::with_val(prec, v)))
}

fn combine(parts: &[Float; 3], weights: &[Rational; 3]) -> Float {
    let prec = parts[0].prec();
    let mut acc = Float::with_val(prec, 0);
    for (p, c) in parts.iter().zip(weights) {
        acc += Float::with_val(prec, p * c);
    }
    acc
}

/// χ_d^(n)(t) for n ≤ 4 from the closed forms.
pub fn chi_diag_closed(n: usize, t: &Float) -> Result<Float> {
    check_t(t)?;
    let prec = t.prec();
    match n {
        1 => {
            let x = Float::with_val(prec, t.sqrt_ref());
            Ok(Float::with_val(prec, 1 - x).recip())
        }
        2 => Ok(Float::with_val(prec, t / Float::with_val(prec, 1 - t)) / 4u32),
        3 => Ok(combine(&chi3d_parts(t)?, &chi3d_weights())),
        4 => Ok(combine(&chi4d_parts(t)?, &chi4d_weights())),
        _ => Err(Error::Parameter(format!(
            "diagonal closed forms exist for n ≤ 4, got {n}"
        ))),
    }
}

/// χ_d^(n)(t): closed form for n ≤ 4, exact series summed for n = 5.
pub fn chi_diag_value(n: usize, t: &Float) -> Result<Float> {
    if n <= 4 {
        return chi_diag_closed(n, t);
    }
    check_t(t)?;
    let order = diag_series_cap(n);
    let s = chi_diag_series(n, order)?;
    let x = Float::with_val(t.prec(), t.sqrt_ref());
    let v = s.eval(&x);
    // tail estimate from the last coefficient
    let last = Float::with_val(t.prec(), &s.coeffs[order]).abs();
    let tail = last * Float::with_val(t.prec(), (&x).pow(order as u32))
        / Float::with_val(t.prec(), 1 - &x);
    if tail > Float::with_val(t.prec(), v.abs_ref()) * 1e-12 {
        return Err(Error::PrecisionLoss(format!(
            "χ_d^(5) series of order {order} is not converged at t = {}",
            t.to_f64()
        )));
    }
    Ok(v)
}

// Exact series of the closed forms.

fn cumsum(c: &[Rational], times: usize) -> Vec<Rational> {
    let mut v = c.to_vec();
    for _ in 0..times {
        let mut acc = Rational::new();
        for x in v.iter_mut() {
            acc += &*x;
            *x = acc.clone();
        }
    }
    v
}

fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    crate::series::mul_trunc(a, b, a.len().min(b.len()))
}

fn poly_mul(p: &[i64], a: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::new(); a.len()];
    for (k, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for i in 0..a.len().saturating_sub(k) {
            out[i + k] += Rational::from(&a[i] * c);
        }
    }
    out
}

fn hyp_series(a: &Rational, b: &Rational, c: &Rational, len: usize) -> Vec<Rational> {
    Series::hyp2f1(Variable::T, a, b, c, len).coeffs
}

/// The three parts of χ_d^(4) as exact t-series with `len` coefficients.
pub fn chi4d_parts_series(len: usize) -> [RationalSeries; 3] {
    let h = r(1, 2);
    let fp = hyp_series(&h, &h, &r(1, 1), len);
    let fm = hyp_series(&h, &r(-1, 2), &r(1, 1), len);
    let mut d1 = vec![r(1, 4); len];
    if len > 0 {
        d1[0] = Rational::new();
    }
    let a = cumsum(&poly_mul(&[1, 1], &series_mul(&fm, &fm)), 2);
    let b = series_mul(&fp, &fp);
    let c = cumsum(&poly_mul(&[0, 2], &series_mul(&fp, &fm)), 1);
    let d2: Vec<Rational> = (0..len)
        .map(|i| Rational::from(&a[i] - &b[i]) - &c[i])
        .collect();
    // S_j: coefficient of t^(2k) is (2k)(2k−1)…(2k−j+1) c_k
    let g = crate::numerics::hyp_pfq_terms(
        &[h.clone(), h.clone(), h.clone(), h],
        &[r(1, 1), r(1, 1), r(1, 1)],
        len / 2 + 1,
    )
    .expect("positive lower parameters");
    let mut s: [Vec<Rational>; 4] = std::array::from_fn(|_| vec![Rational::new(); len]);
    for (k, ck) in g.iter().enumerate() {
        let m = 2 * k;
        if m >= len {
            break;
        }
        let mut f = Rational::from(1);
        for (j, sj) in s.iter_mut().enumerate() {
            sj[m] = Rational::from(ck * &f);
            f *= m as i64 - j as i64;
        }
    }
    let neg = |v: Vec<Rational>| -> Vec<Rational> { v.into_iter().map(|x| -x).collect() };
    // division by (t − 1) is −Σ
    let p1 = poly_mul(&[2, 2], &s[3]);
    let p2 = neg(cumsum(&poly_mul(&[-11, -1, 16], &s[2]), 1));
    let p3 = neg(cumsum(&poly_mul(&[-11, -4, 31], &s[1]), 1));
    let p4 = poly_mul(&[0, 1], &s[0]);
    let d3: Vec<Rational> = (0..len)
        .map(|i| Rational::from(&p1[i] + &p4[i]) + (&p2[i] * r(2, 3)) + (&p3[i] * r(1, 3)))
        .collect();
    [d1, d2, d3].map(|c| Series::from_coeffs(Variable::T, c))
}

/// The three parts of χ_d^(3) as exact x-series with `len` coefficients.
pub fn chi3d_parts_series(len: usize) -> [RationalSeries; 3] {
    let h = r(1, 2);
    let ones = vec![Rational::from(1); len];
    let fp = hyp_series(&h, &h, &r(1, 1), len.div_ceil(2));
    let fm = hyp_series(&h, &r(-1, 2), &r(1, 1), len.div_ceil(2));
    let inflate = |v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::new(); len];
        for (k, c) in v.iter().enumerate() {
            if 2 * k < len {
                out[2 * k] = c.clone();
            }
        }
        out
    };
    let c2a = cumsum(&inflate(&fm), 2);
    let c2b = cumsum(&inflate(&fp), 1);
    let c2: Vec<Rational> = c2a
        .iter()
        .zip(&c2b)
        .map(|(a, b)| Rational::from(a - b))
        .collect();
    // Q as a series: (27/4)(1+x)²x² · (1+x+x²)^(−3)
    let mut cyc_c = vec![Rational::new(); len];
    for c in cyc_c.iter_mut().take(3) {
        *c = Rational::from(1);
    }
    let cyc = Series::from_coeffs(Variable::X, cyc_c);
    let inv3 = cyc
        .pow(&Rational::from(-3))
        .expect("unit constant term")
        .coeffs;
    let q = poly_mul(&[0, 0, 1, 2, 1], &inv3)
        .into_iter()
        .map(|c| c * r(27, 4))
        .collect::<Vec<_>>();
    let compose = |coef: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::new(); len];
        let mut qm = vec![Rational::new(); len];
        if len > 0 {
            qm[0] = Rational::from(1);
        }
        for c in coef {
            if qm.iter().all(|x| x.cmp0().is_eq()) {
                break;
            }
            for (o, v) in out.iter_mut().zip(&qm) {
                *o += Rational::from(c * v);
            }
            qm = series_mul(&qm, &q);
        }
        out
    };
    let fa = compose(&hyp_series(&r(1, 6), &r(1, 3), &r(1, 1), len / 2 + 1));
    let fb = compose(&hyp_series(&r(7, 6), &r(4, 3), &r(2, 1), len / 2 + 1));
    let mut bracket = series_mul(&fa, &fa);
    let cross = series_mul(&series_mul(&fa, &fb), &q);
    for (b, c) in bracket.iter_mut().zip(&cross) {
        *b += c * r(2, 9);
    }
    // (1+2x)(x+2)/((1−x)(x²+x+1))
    let inv_cyc = cyc.inverse().expect("unit constant term").coeffs;
    let pre = cumsum(&poly_mul(&[2, 5, 2], &inv_cyc), 1);
    let c3 = series_mul(&pre, &bracket);
    [ones, c2, c3].map(|c| Series::from_coeffs(Variable::X, c))
}

fn combine_series(parts: &[RationalSeries; 3], weights: &[Rational; 3]) -> RationalSeries {
    let len = parts[0].len();
    let coeffs = (0..len)
        .map(|i| {
            let mut acc = Rational::new();
            for (p, wt) in parts.iter().zip(weights) {
                acc += Rational::from(&p.coeffs[i] * wt);
            }
            acc
        })
        .collect();
    Series::from_coeffs(parts[0].variable, coeffs)
}

/// Exact series of the χ_d^(3) closed form in x, `len` coefficients.
pub fn chi3d_closed_series(len: usize) -> RationalSeries {
    combine_series(&chi3d_parts_series(len), &chi3d_weights())
}

/// Exact series of the χ_d^(4) closed form in t, `len` coefficients.
pub fn chi4d_closed_series(len: usize) -> RationalSeries {
    combine_series(&chi4d_parts_series(len), &chi4d_weights())
}
