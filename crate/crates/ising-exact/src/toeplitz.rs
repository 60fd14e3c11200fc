//! Diagonal and row correlations as Toeplitz determinants.
//!
//! The symbol φ(θ) = [(1−α1 z)(1−α2/z) / ((1−α1/z)(1−α2 z))]^(1/2), z = e^(iθ),
//! is factored as σ z^m P(z) Q(1/z) with P, Q products of (1−βw)^(±1/2), |β| < 1.
//! At α2 = 1 the factor (−1/z)^(1/2) = e^(i(π−θ)/2) is kept aside and its
//! Fourier coefficients 1/(π(n+1/2)) are convolved in exactly.

use crate::error::{Error, Result};
use crate::numerics::{eps, pi, zeta_prime_neg1};
use crate::params::{critical_coupling, CouplingPoint, Side, SymbolParams};
use crate::series::{RationalSeries, Series, Variable};
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

pub const DEFAULT_DET_CAP: usize = 64;
const MAX_TERMS: usize = 1 << 20;
const GUARD: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationKind {
    Diagonal,
    Row,
}

impl CorrelationKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "diag" | "diagonal" => Ok(CorrelationKind::Diagonal),
            "row" => Ok(CorrelationKind::Row),
            _ => Err(Error::Parameter(format!("unknown correlation kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSymbol {
    pub alpha1: Float,
    pub alpha2: Float,
}

/// (1 − β w)^e with e = ±1/2.
#[derive(Debug, Clone)]
struct Factor {
    beta: Float,
    half_up: bool,
}

impl Factor {
    fn exponent(&self) -> Rational {
        if self.half_up {
            Rational::from((1, 2))
        } else {
            Rational::from((-1, 2))
        }
    }
}

#[derive(Debug, Clone)]
struct Factored {
    negate: bool,
    /// φ = σ z^shift P(z) Q(1/z) (× the critical factor).
    shift: i64,
    critical: bool,
    p: Vec<Factor>,
    q: Vec<Factor>,
}

impl ToeplitzSymbol {
    pub fn new(alpha1: Float, alpha2: Float) -> Result<Self> {
        if alpha1 < 0 || alpha2 < 0 || alpha1.is_nan() || alpha2.is_nan() {
            return Err(Error::Parameter(
                "symbol parameters must be nonnegative".into(),
            ));
        }
        if alpha1 >= 1 {
            return Err(Error::Branch(format!(
                "α1 = {} puts a zero of φ on the unit circle",
                alpha1.to_f64()
            )));
        }
        Ok(ToeplitzSymbol { alpha1, alpha2 })
    }

    pub fn from_params(p: &SymbolParams) -> Result<Self> {
        ToeplitzSymbol::new(p.alpha1.clone(), p.alpha2.clone())
    }

    /// Symbol for the given correlation at a coupling point. At T_c α2 is set to 1 exactly.
    pub fn for_coupling(cp: &CouplingPoint, kind: CorrelationKind) -> Result<Self> {
        let params = match kind {
            CorrelationKind::Diagonal => cp.diagonal_symbol(),
            CorrelationKind::Row => cp.row_symbol(),
        };
        let mut sym = ToeplitzSymbol::from_params(&params)?;
        if cp.side == Side::AtTc {
            sym.alpha2 = Float::with_val(sym.prec(), 1);
        } else if kind == CorrelationKind::Diagonal {
            let below = sym.alpha2 < 1;
            if below != (cp.side == Side::BelowTc) {
                return Err(Error::Parameter(
                    "diagonal symbol disagrees with the side of T_c".into(),
                ));
            }
        }
        Ok(sym)
    }

    pub fn prec(&self) -> u32 {
        self.alpha1.prec().min(self.alpha2.prec())
    }

    pub fn is_critical(&self) -> bool {
        self.alpha2 == 1
    }

    fn factored(&self, w: u32) -> Factored {
        let a1 = Float::with_val(w, &self.alpha1);
        let a2 = Float::with_val(w, &self.alpha2);
        let f = |beta: &Float, half_up: bool| Factor {
            beta: Float::with_val(w, beta),
            half_up,
        };
        if self.alpha2 < 1 {
            Factored {
                negate: false,
                shift: 0,
                critical: false,
                p: vec![f(&a1, true), f(&a2, false)],
                q: vec![f(&a2, true), f(&a1, false)],
            }
        } else if self.alpha2 > 1 {
            // (1−α2/z)/(1−α2 z) = z^(−2)(1−z/α2)/(1−1/(α2 z)); the sign makes φ(π) > 0.
            let r = Float::with_val(w, a2.recip_ref());
            Factored {
                negate: true,
                shift: -1,
                critical: false,
                p: vec![f(&a1, true), f(&r, true)],
                q: vec![f(&a1, false), f(&r, false)],
            }
        } else {
            Factored {
                negate: false,
                shift: 0,
                critical: true,
                p: vec![f(&a1, true)],
                q: vec![f(&a1, false)],
            }
        }
    }
}

impl Factored {
    fn beta_max(&self) -> f64 {
        self.p
            .iter()
            .chain(&self.q)
            .map(|f| f.beta.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Terms needed for β^K < 2^(−w).
    fn terms(&self, w: u32) -> Result<usize> {
        let b = self.beta_max();
        if b == 0.0 {
            return Ok(1);
        }
        let k = (w as f64 + 16.0) * std::f64::consts::LN_2 / -b.ln();
        let k = k.ceil() as usize + 16;
        if k > MAX_TERMS {
            return Err(Error::Cap(format!(
                "symbol parameter {b} is too close to 1: {k} series terms needed"
            )));
        }
        Ok(k)
    }
}

/// Taylor coefficients of Π_j (1 − β_j w)^(e_j) for at most two factors,
/// from the first-order recurrence of the logarithmic derivative.
fn product_coeffs(fs: &[Factor], len: usize, w: u32) -> Vec<Float> {
    let zero = Float::with_val(w, 0);
    let (a, p) = fs.first().map_or((zero.clone(), Rational::new()), |f| {
        (f.beta.clone(), f.exponent())
    });
    let (b, q) = fs.get(1).map_or((zero.clone(), Rational::new()), |f| {
        (f.beta.clone(), f.exponent())
    });
    let pf = Float::with_val(w, &p);
    let qf = Float::with_val(w, &q);
    let sum = Float::with_val(w, &a + &b);
    let prod = Float::with_val(w, &a * &b);
    let lin = Float::with_val(w, &pf * &a) + Float::with_val(w, &qf * &b);
    let pq = Float::with_val(w, &pf + &qf);
    let mut c = Vec::with_capacity(len);
    c.push(Float::with_val(w, 1));
    for n in 0..len.saturating_sub(1) {
        // (n+1)c_(n+1) = [(a+b)n − (pa+qb)]c_n − ab[(n−1) − (p+q)]c_(n−1)
        let mut v = Float::with_val(w, &sum * n as u64) - &lin;
        v *= &c[n];
        if n > 0 {
            let k = Float::with_val(w, n as f64 - 1.0) - &pq;
            v -= Float::with_val(w, &prod * &k) * &c[n - 1];
        }
        v /= (n + 1) as u64;
        c.push(v);
    }
    c
}

/// g_j for j ∈ [lo, hi] where Σ g_j z^j = P(z) Q(1/z).
fn smooth_coeffs_series(f: &Factored, lo: i64, hi: i64, w: u32) -> Result<Vec<Float>> {
    let k = f.terms(w)?;
    let reach = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
    let pc = product_coeffs(&f.p, k + reach + 1, w);
    let qc = product_coeffs(&f.q, k + reach + 1, w);
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    for j in lo..=hi {
        let mut acc = Float::with_val(w, 0);
        let ja = j.unsigned_abs() as usize;
        for i in 0..=k {
            let (x, y) = if j >= 0 {
                (&pc[ja + i], &qc[i])
            } else {
                (&pc[i], &qc[ja + i])
            };
            acc += Float::with_val(w, x * y);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Same coefficients by the periodic trapezoid rule on the unit circle.
fn smooth_coeffs_quadrature(f: &Factored, lo: i64, hi: i64, w: u32) -> Result<Vec<Float>> {
    let k = f.terms(w)?;
    let reach = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
    let m = (k + reach + 16).next_power_of_two().max(16);
    let two_pi = pi(w) * 2u32;
    // G(e^(iθ_l)) as modulus and argument sums.
    let mut re = Vec::with_capacity(m);
    let mut im = Vec::with_capacity(m);
    let mut cs = Vec::with_capacity(m);
    let mut sn = Vec::with_capacity(m);
    for l in 0..m {
        let th = Float::with_val(w, &two_pi * l as u64) / m as u64;
        let (s, c) = th.sin_cos(Float::new(w));
        cs.push(c);
        sn.push(s);
    }
    for l in 0..m {
        let mut log_mod = Float::with_val(w, 0);
        let mut arg = Float::with_val(w, 0);
        for (fs, sign) in [(&f.p, 1i32), (&f.q, -1i32)] {
            for fac in fs.iter() {
                // 1 − β e^(±iθ)
                let x = Float::with_val(w, 1) - Float::with_val(w, &fac.beta * &cs[l]);
                let y = Float::with_val(w, &fac.beta * &sn[l]) * -sign;
                let r2 = Float::with_val(w, x.square_ref()) + Float::with_val(w, y.square_ref());
                let a = Float::with_val(w, y.atan2_ref(&x));
                let e = if fac.half_up { 1 } else { -1 };
                log_mod += Float::with_val(w, r2.ln_ref()) * e / 4u32;
                arg += a * e / 2u32;
            }
        }
        let md = log_mod.exp();
        let (s, c) = arg.sin_cos(Float::new(w));
        re.push(Float::with_val(w, &md * &c));
        im.push(md * s);
    }
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    for j in lo..=hi {
        let mut acc = Float::with_val(w, 0);
        for l in 0..m {
            // Re(G e^(−ijθ)) = re cos(jθ) + im sin(jθ)
            let idx = ((j.rem_euclid(m as i64) as usize) * l) % m;
            acc += Float::with_val(w, &re[l] * &cs[idx]);
            acc += Float::with_val(w, &im[l] * &sn[idx]);
        }
        out.push(acc / m as u64);
    }
    Ok(out)
}

/// Coefficients a_n for n ∈ [lo, hi] from smooth-part coefficients.
fn assemble(
    f: &Factored,
    lo: i64,
    hi: i64,
    w: u32,
    smooth: impl Fn(i64, i64) -> Result<Vec<Float>>,
) -> Result<Vec<Float>> {
    if f.critical {
        let k = f.terms(w)? as i64;
        let span = if f.beta_max() == 0.0 { 0 } else { k };
        let g = smooth(-span, span)?;
        let pi_w = pi(w);
        let mut out = Vec::new();
        for n in lo..=hi {
            let mut acc = Float::with_val(w, 0);
            for (idx, gj) in g.iter().enumerate() {
                let j = idx as i64 - span;
                let d = Float::with_val(w, (n - j) as f64 + 0.5) * &pi_w;
                acc += Float::with_val(w, gj / &d);
            }
            out.push(acc);
        }
        return Ok(out);
    }
    let g = smooth(lo - f.shift, hi - f.shift)?;
    Ok(g.into_iter()
        .map(|v| if f.negate { -v } else { v })
        .collect())
}

/// a_n for n ∈ [lo, hi] by the series path, cross-checked against quadrature
/// to 2^(24 − prec).
pub fn fourier_coeffs(sym: &ToeplitzSymbol, lo: i64, hi: i64) -> Result<Vec<Float>> {
    if lo > hi {
        return Ok(Vec::new());
    }
    let prec = sym.prec();
    let w = prec + GUARD;
    let f = sym.factored(w);
    let series = assemble(&f, lo, hi, w, |a, b| smooth_coeffs_series(&f, a, b, w))?;
    let quad = assemble(&f, lo, hi, w, |a, b| smooth_coeffs_quadrature(&f, a, b, w))?;
    let tol = eps(w, prec as i32 - 24);
    for (n, (s, q)) in (lo..=hi).zip(series.iter().zip(&quad)) {
        let d = Float::with_val(w, s - q).abs();
        let scale = Float::with_val(w, s.abs_ref()).max(&Float::with_val(w, 1));
        if d > Float::with_val(w, &tol * &scale) {
            return Err(Error::PrecisionLoss(format!(
                "a_{n}: series and quadrature differ by {:.3e}",
                d.to_f64()
            )));
        }
    }
    Ok(series
        .into_iter()
        .map(|v| Float::with_val(prec, v))
        .collect())
}

pub fn fourier_coeff(sym: &ToeplitzSymbol, n: i64) -> Result<Float> {
    Ok(fourier_coeffs(sym, n, n)?.pop().expect("one coefficient"))
}

/// D_N = det[a_(i−j)], N ≤ `DEFAULT_DET_CAP`; D_0 = 1.
pub fn correlation_det(sym: &ToeplitzSymbol, n: usize) -> Result<Float> {
    correlation_det_capped(sym, n, DEFAULT_DET_CAP)
}

pub fn correlation_det_capped(sym: &ToeplitzSymbol, n: usize, cap: usize) -> Result<Float> {
    if n > cap {
        return Err(Error::Cap(format!("Toeplitz size {n} exceeds cap {cap}")));
    }
    let prec = sym.prec();
    if n == 0 {
        return Ok(Float::with_val(prec, 1));
    }
    let nn = n as i64;
    let a = fourier_coeffs(sym, 1 - nn, nn - 1)?;
    let entry = |i: usize, j: usize| a[(i as i64 - j as i64 + nn - 1) as usize].clone();
    let m: Vec<Vec<Float>> = (0..n)
        .map(|i| (0..n).map(|j| entry(i, j)).collect())
        .collect();
    Ok(Float::with_val(prec, determinant(m, prec + GUARD)))
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(mut m: Vec<Vec<Float>>, w: u32) -> Float {
    let n = m.len();
    let mut det = Float::with_val(w, 1);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| {
                let a = Float::with_val(w, m[i][c].abs_ref());
                let b = Float::with_val(w, m[j][c].abs_ref());
                a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty range");
        if m[p][c].is_zero() {
            return Float::with_val(w, 0);
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let (top, bottom) = m.split_at_mut(c + 1);
        let prow = &top[c];
        for row in bottom.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = Float::with_val(w, &row[c] / &prow[c]);
            for k in c + 1..n {
                row[k] -= Float::with_val(w, &f * &prow[k]);
            }
        }
    }
    det
}

/// Correlation ⟨σ00σNN⟩ (diagonal) or ⟨σ00σ0N⟩ (row) at a coupling point.
pub fn correlation(cp: &CouplingPoint, kind: CorrelationKind, n: usize) -> Result<Float> {
    correlation_det(&ToeplitzSymbol::for_coupling(cp, kind)?, n)
}

/// Long-distance limit below T_c: (1−t)^(1/4).
pub fn spontaneous_magnetization(t: &Float) -> Result<Float> {
    if *t >= 1 || *t < 0 {
        return Err(Error::Domain(format!(
            "spontaneous magnetization needs 0 ≤ t < 1, got {}",
            t.to_f64()
        )));
    }
    let omt = Float::with_val(t.prec(), 1 - t);
    Ok(omt.sqrt().sqrt())
}

/// Exact t-series of the diagonal D_N below T_c (α1 = 0, α2 = t^(1/2)).
pub fn diagonal_det_series(n: usize, order: usize) -> Result<RationalSeries> {
    if n > DEFAULT_DET_CAP {
        return Err(Error::Cap(format!(
            "Toeplitz size {n} exceeds cap {DEFAULT_DET_CAP}"
        )));
    }
    let len = 2 * order;
    let half = Rational::from((1, 2));
    let mhalf = Rational::from((-1, 2));
    // A(z) = (1−xz)^(−1/2): coefficient binom(−1/2,k)(−x)^k; B(1/z) = (1−x/z)^(1/2).
    let coef = |e: &Rational, k: usize| {
        let mut c = crate::numerics::binom_rational(e, k as u32);
        if k % 2 == 1 {
            c = -c;
        }
        c
    };
    let a_n = |d: i64| -> RationalSeries {
        let mut v = vec![Rational::new(); len];
        let da = d.unsigned_abs() as usize;
        let mut k = 0;
        while da + 2 * k < len {
            let (i, j) = if d >= 0 { (da + k, k) } else { (k, da + k) };
            v[da + 2 * k] = coef(&mhalf, i) * coef(&half, j);
            k += 1;
        }
        Series::from_coeffs(Variable::X, v)
    };
    let mut m: Vec<Vec<RationalSeries>> = (0..n)
        .map(|i| (0..n).map(|j| a_n(i as i64 - j as i64)).collect())
        .collect();
    let mut det = Series::one(Variable::X, len);
    for c in 0..n {
        // Every pivot is 1 + O(x) since the matrix is the identity mod x.
        let inv = m[c][c].inverse()?;
        det = det.mul(&m[c][c])?;
        for r in c + 1..n {
            let f = m[r][c].mul(&inv)?;
            if f.is_zero() {
                continue;
            }
            for k in c + 1..n {
                let sub = f.mul(&m[c][k])?;
                m[r][k] = m[r][k].sub(&sub)?;
            }
        }
    }
    let mut tc = Vec::with_capacity(order);
    for (k, c) in det.coeffs.iter().enumerate() {
        if k % 2 == 1 {
            if c.cmp0().is_ne() {
                return Err(Error::Internal(
                    "odd power of t^(1/2) in diagonal determinant".into(),
                ));
            }
        } else {
            tc.push(c.clone());
        }
    }
    Ok(Series::from_coeffs(Variable::T, tc))
}

/// Critical amplitude extracted from D_N at T_c.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalFit {
    pub kind: CorrelationKind,
    pub n_max: usize,
    /// Richardson estimate from D_N N^(1/4) = A(1 + c/N).
    pub amplitude: f64,
    /// Local slope d ln D_N / d ln N at N_max.
    pub exponent: f64,
    /// 2^(1/12) e^(3ζ′(−1)).
    pub reference: f64,
}

/// 2^(1/12) e^(3ζ′(−1)).
pub fn critical_amplitude(prec: u32) -> Float {
    let z = zeta_prime_neg1(prec);
    let e = Float::with_val(prec, &z * 3u32).exp();
    Float::with_val(prec, 2).pow(Float::with_val(prec, 12).recip()) * e
}

pub fn critical_amplitude_fit(n_max: usize) -> Result<CriticalFit> {
    critical_amplitude_fit_kind(CorrelationKind::Diagonal, n_max, 128)
}

pub fn critical_amplitude_fit_kind(
    kind: CorrelationKind,
    n_max: usize,
    prec: u32,
) -> Result<CriticalFit> {
    if n_max < 8 {
        return Err(Error::InsufficientData(format!(
            "critical fit needs N_max ≥ 8, got {n_max}"
        )));
    }
    let cp = CouplingPoint::isotropic(critical_coupling(prec))?;
    let sym = ToeplitzSymbol::for_coupling(&cp, kind)?;
    let prec = sym.prec();
    let d =
        |n: usize| -> Result<Float> { correlation_det_capped(&sym, n, n_max.max(DEFAULT_DET_CAP)) };
    let quarter = Float::with_val(prec, 0.25);
    let g =
        |n: usize, dn: &Float| Float::with_val(prec, dn * Float::with_val(prec, n).pow(&quarter));
    let d_top = d(n_max)?;
    let d_prev = d(n_max - 1)?;
    let g_top = g(n_max, &d_top);
    let g_prev = g(n_max - 1, &d_prev);
    let amp = Float::with_val(prec, &g_top * n_max as u64)
        - Float::with_val(prec, &g_prev * (n_max - 1) as u64);
    let slope = Float::with_val(prec, &d_top / &d_prev).ln()
        / Float::with_val(prec, Float::with_val(prec, n_max) / (n_max - 1) as u64).ln();
    Ok(CriticalFit {
        kind,
        n_max,
        amplitude: amp.to_f64(),
        exponent: slope.to_f64(),
        reference: critical_amplitude(prec).to_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(a1: f64, a2: f64) -> ToeplitzSymbol {
        ToeplitzSymbol::new(Float::with_val(128, a1), Float::with_val(128, a2)).unwrap()
    }

    #[test]
    fn trivial_symbol() {
        let a = fourier_coeffs(&sym(0.0, 0.0), -3, 3).unwrap();
        for (n, v) in (-3..=3).zip(&a) {
            assert_eq!(v.to_f64(), if n == 0 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn inversion_symmetry() {
        let a = fourier_coeffs(&sym(0.3, 0.6), -4, 4).unwrap();
        let b = fourier_coeffs(&sym(0.6, 0.3), -4, 4).unwrap();
        for k in 0..9 {
            let d = Float::with_val(128, &a[k] - &b[8 - k]).abs();
            assert!(d < 1e-35);
        }
    }

    #[test]
    fn critical_coefficients_closed_form() {
        let a = fourier_coeffs(&sym(0.0, 1.0), -2, 2).unwrap();
        for (n, v) in (-2..=2).zip(&a) {
            let want = 1.0 / (std::f64::consts::PI * (n as f64 + 0.5));
            assert!((v.to_f64() - want).abs() < 1e-15);
        }
    }

    #[test]
    fn above_tc_symbol() {
        // The dual path also covers the α2 > 1 factorization.
        let a = fourier_coeffs(&sym(0.2, 1.6), -3, 3).unwrap();
        assert!(a.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn rejects_alpha1_on_circle() {
        assert!(matches!(
            ToeplitzSymbol::new(Float::with_val(64, 1.0), Float::with_val(64, 0.5)),
            Err(Error::Branch(_))
        ));
    }

    #[test]
    fn empty_determinant() {
        assert_eq!(correlation_det(&sym(0.0, 0.5), 0).unwrap(), 1);
        assert!(correlation_det(&sym(0.0, 0.5), 65).is_err());
    }
}
