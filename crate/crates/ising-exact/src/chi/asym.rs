//! Singular behavior of χ_d^(3) and χ_d^(4) near t = 1 and t = −1.

use super::diag::{chi4d_closed_series, chi_diag_closed};
use crate::error::{Error, Result};
use crate::numerics::{least_squares, pi};
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

/// Reference value of 3I₁ − 4I₂.
pub const I_COMBINATION: f64 = -2.2128121;
/// Quoted decimal value of the χ_d^(3) pole amplitude.
pub const CHI3D_AMPLITUDE_REF: f64 = 0.016329;

const PREC: u32 = 128;

/// (1/3) − 5π/(18Γ²(5/6)Γ²(2/3)) + 4π/(Γ²(1/6)Γ²(1/3)).
pub fn chi3d_pole_amplitude(prec: u32) -> Float {
    let w = prec + 32;
    let g = |n: u32, d: u32| Float::with_val(w, Rational::from((n, d))).gamma().square();
    let p = pi(w);
    let a = Float::with_val(w, &p * 5u32) / (g(5, 6) * g(2, 3) * 18u32);
    let b = Float::with_val(w, &p * 4u32) / (g(1, 6) * g(1, 3));
    Float::with_val(prec, Float::with_val(w, 3).recip() - a + b)
}

#[derive(Debug, Clone, Serialize)]
pub struct Chi3dAsymptotics {
    /// Exact Γ-function combination.
    pub amplitude: f64,
    pub reference: f64,
    /// (δ, δ·χ_d^(3)(x = 1 − δ)) from the closed form.
    pub samples: Vec<(f64, f64)>,
    /// Limit δ → 0 of the samples, fitted on [1, δ ln δ, δ].
    pub extrapolated: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn chi3d_asymptotics() -> Result<Chi3dAsymptotics> {
    let amp = chi3d_pole_amplitude(PREC);
    let w = 256;
    let deltas = [1e-5, 1e-6, 1e-7, 1e-8];
    let mut samples = Vec::new();
    let mut rows = Vec::new();
    let mut ys = Vec::new();
    for &d in &deltas {
        let dw = Float::with_val(w, d);
        let x = Float::with_val(w, 1 - &dw);
        let t = Float::with_val(w, x.square_ref());
        let v = Float::with_val(w, chi_diag_closed(3, &t)? * &dw);
        samples.push((d, v.to_f64()));
        let l = Float::with_val(w, dw.ln_ref());
        rows.push(vec![
            Float::with_val(w, 1),
            Float::with_val(w, &dw * &l),
            dw,
        ]);
        ys.push(v);
    }
    let c = least_squares(&rows, &ys, w)?;
    let extrapolated = c[0].to_f64();
    let tolerance = 1e-5;
    let amplitude = amp.to_f64();
    Ok(Chi3dAsymptotics {
        amplitude,
        reference: CHI3D_AMPLITUDE_REF,
        samples,
        extrapolated,
        tolerance,
        pass: (amplitude - CHI3D_AMPLITUDE_REF).abs() < tolerance
            && (extrapolated - amplitude).abs() < tolerance,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MinusOneFit {
    /// Series length used.
    pub terms: usize,
    /// Power of (1 − t) multiplied in to suppress the t = 1 singularity.
    pub damping: u32,
    /// Coefficient index window of the fit.
    pub window: (usize, usize),
    /// Fitted A in χ_d^(4) ∼ A (1+t)^7 ln(1+t).
    pub amplitude: f64,
    /// The quoted value 1/26880.
    pub quoted: f64,
    /// A · 26880 (≈ 1/π² when the amplitude carries a π⁻² factor).
    pub times_26880: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Chi4dAsymptotics {
    /// ε = 1 − t sample points.
    pub grid: Vec<f64>,
    /// Fit basis in L = ln(16/ε).
    pub basis: Vec<&'static str>,
    pub coeffs: Vec<f64>,
    pub pole: f64,
    pub pole_expected: f64,
    pub pole_rel_err: f64,
    pub log_squared: f64,
    pub log_squared_expected: f64,
    pub log_squared_rel_err: f64,
    pub log: f64,
    pub log_expected: f64,
    pub minus_one: MinusOneFit,
    pub warnings: Vec<String>,
    pub pass: bool,
}

fn basis_row(eps: &Float) -> Vec<Float> {
    let w = eps.prec();
    let l = Float::with_val(w, Float::with_val(w, eps.recip_ref()) * 16u32).ln();
    let l2 = Float::with_val(w, l.square_ref());
    vec![
        Float::with_val(w, eps.recip_ref()),
        l2.clone(),
        l.clone(),
        Float::with_val(w, 1),
        Float::with_val(w, &l2 * eps),
        Float::with_val(w, &l * eps),
        eps.clone(),
    ]
}

/// Fits the t → −1 amplitude of (1+t)^7 ln(1+t) from the exact closed-form
/// series: after multiplying by (1−t)^damping the coefficients are dominated
/// by (−1)^k 7!(k−8)!/k! · 2^damping · A (1 + a/k + …).
pub fn chi4d_minus_one_fit(terms: usize) -> Result<MinusOneFit> {
    if terms < 120 {
        return Err(Error::InsufficientData(format!(
            "need at least 120 terms, got {terms}"
        )));
    }
    let w = 320;
    let damping = 10u32;
    let s = chi4d_closed_series(terms);
    let mut d: Vec<Rational> = s.coeffs;
    for _ in 0..damping {
        for i in (1..d.len()).rev() {
            let prev = d[i - 1].clone();
            d[i] -= prev;
        }
    }
    let lo = terms * 3 / 4;
    let hi = terms - 1;
    let mut rows = Vec::new();
    let mut ys = Vec::new();
    let f7 = Float::with_val(w, 5040);
    let scale = Float::with_val(w, 1u32 << damping);
    for k in (lo..=hi).step_by(((hi - lo) / 12).max(1)) {
        // k!/(k−8)! = k(k−1)…(k−7)
        let mut ff = Float::with_val(w, 1);
        for i in 0..8 {
            ff *= (k - i) as u32;
        }
        let mut e = Float::with_val(w, &d[k]) * ff / &f7 / &scale;
        if k % 2 == 1 {
            e = -e;
        }
        let kf = Float::with_val(w, k);
        rows.push(
            (0..6)
                .map(|j| Float::with_val(w, (&kf).pow(j as u32)).recip())
                .collect::<Vec<_>>(),
        );
        ys.push(e);
    }
    let c = least_squares(&rows, &ys, w)?;
    let amplitude = c[0].to_f64();
    Ok(MinusOneFit {
        terms,
        damping,
        window: (lo, hi),
        amplitude,
        quoted: 1.0 / 26880.0,
        times_26880: amplitude * 26880.0,
    })
}

fn fit_window(eps_list: &[f64]) -> Result<Vec<Float>> {
    let mut rows = Vec::new();
    let mut ys = Vec::new();
    for &e in eps_list {
        let ew = Float::with_val(PREC + 64, e);
        let t = Float::with_val(PREC, 1 - &ew);
        let v = Float::with_val(PREC + 64, chi_diag_closed(4, &t)?);
        rows.push(basis_row(&ew));
        ys.push(v);
    }
    least_squares(&rows, &ys, PREC + 64)
}

/// Least-squares fit of χ_d^(4)(1−ε) on [1/ε, L², L, 1, εL², εL, ε] with
/// L = ln(16/ε) over ε = 10^(−2 − i/4), i = 0..8, plus the t → −1 fit.
pub fn chi4d_asymptotics() -> Result<Chi4dAsymptotics> {
    let grid: Vec<f64> = (0..9).map(|i| 10f64.powf(-2.0 - 0.25 * i as f64)).collect();
    let c = fit_window(&grid)?;
    let coeffs: Vec<f64> = c.iter().map(Float::to_f64).collect();
    let p2 = std::f64::consts::PI.powi(2);
    let pole_expected = (1.0 - (64.0 + 16.0 * I_COMBINATION) / (3.0 * p2)) / 8.0;
    let log_squared_expected = -1.0 / (16.0 * p2);
    let log_expected = 7.0 / (16.0 * p2);
    let pole_rel_err = ((coeffs[0] - pole_expected) / pole_expected).abs();
    let log_squared_rel_err = ((coeffs[1] - log_squared_expected) / log_squared_expected).abs();
    let mut warnings = Vec::new();
    let alt = fit_window(&grid[..grid.len() - 1])?;
    for (i, name) in [(0, "1/ε"), (1, "L²")] {
        let a = alt[i].to_f64();
        let shift = ((a - coeffs[i]) / coeffs[i]).abs();
        if shift > 1e-3 {
            warnings.push(format!(
                "{name} coefficient moves by {shift:.2e} relative when the closest point is dropped"
            ));
        }
    }
    let minus_one = chi4d_minus_one_fit(420)?;
    Ok(Chi4dAsymptotics {
        grid,
        basis: vec!["1/eps", "L^2", "L", "1", "eps*L^2", "eps*L", "eps"],
        pole: coeffs[0],
        log_squared: coeffs[1],
        log: coeffs[2],
        coeffs,
        pole_expected,
        pole_rel_err,
        log_squared_expected,
        log_squared_rel_err,
        log_expected,
        minus_one,
        pass: pole_rel_err < 0.01 && log_squared_rel_err < 0.05,
        warnings,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum DiagAsymptotics {
    Three(Chi3dAsymptotics),
    Four(Box<Chi4dAsymptotics>),
}

impl DiagAsymptotics {
    pub fn pass(&self) -> bool {
        match self {
            DiagAsymptotics::Three(a) => a.pass,
            DiagAsymptotics::Four(a) => a.pass,
        }
    }
}

pub fn chi_diag_asymptotics(n: usize) -> Result<DiagAsymptotics> {
    match n {
        3 => Ok(DiagAsymptotics::Three(chi3d_asymptotics()?)),
        4 => Ok(DiagAsymptotics::Four(Box::new(chi4d_asymptotics()?))),
        _ => Err(Error::Parameter(format!(
            "asymptotic analysis exists for n = 3, 4, got {n}"
        ))),
    }
}
