use ising_exact::formfactor::{correlation_series, formfactor_value};
use ising_exact::numerics::{gauss_legendre, pi};
use ising_exact::params::Side;
use ising_exact::toeplitz::*;
use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;

fn sym(a1: f64, a2: f64, prec: u32) -> ToeplitzSymbol {
    ToeplitzSymbol::new(Float::with_val(prec, a1), Float::with_val(prec, a2)).unwrap()
}

/// For α1 = 0, α2 = α < 1 the symbol is conj(w)/|w| with w = 1 − α e^(iθ).
fn gl_oracle(alpha: f64, n: i64, prec: u32) -> Float {
    let w = prec + 32;
    let rule = gauss_legendre(60, w);
    let panels = 16;
    let two_pi = pi(w) * 2u32;
    let h = Float::with_val(w, &two_pi / panels as u32);
    let a = Float::with_val(w, alpha);
    let mut acc = Float::with_val(w, 0);
    for p in 0..panels {
        let left = Float::with_val(w, &h * p as u32);
        for (x, wt) in &rule {
            let th = Float::with_val(w, x + 1u32) * &h / 2u32 + &left;
            let (s, c) = th.clone().sin_cos(Float::new(w));
            let re = Float::with_val(w, 1) - Float::with_val(w, &a * &c);
            let im = Float::with_val(w, &a * &s);
            let md = Float::with_val(
                w,
                Float::with_val(w, re.square_ref()) + Float::with_val(w, im.square_ref()),
            )
            .sqrt();
            let (sn, cn) = Float::with_val(w, &th * n).sin_cos(Float::new(w));
            // Re((re + i im) e^(−inθ)) / |w|
            let v = (Float::with_val(w, &re * &cn) + Float::with_val(w, &im * &sn)) / md;
            acc += v * wt * &h / 2u32;
        }
    }
    acc / two_pi
}

#[test]
fn a0_matches_gauss_legendre_oracle() {
    let s = sym(0.0, 0.5, 160);
    for n in [0i64, 1, -2] {
        let a = fourier_coeff(&s, n).unwrap();
        let o = gl_oracle(0.5, n, 160);
        let d = Float::with_val(160, &a - &o).abs();
        assert!(d < 1e-30, "a_{n}: {a} vs {o}");
    }
}

#[test]
fn determinant_matches_form_factor_expansion() {
    let t = Float::with_val(128, 0.25);
    let cp = ising_exact::params::CouplingPoint::isotropic_from_t(&t, Side::BelowTc).unwrap();
    let d2 = correlation(&cp, CorrelationKind::Diagonal, 2).unwrap();
    let mut sum = Float::with_val(128, 1);
    for n in [2usize, 4, 6] {
        sum += formfactor_value(n, 2, &t, 128).unwrap();
    }
    let want = sum * Float::with_val(128, 0.75).sqrt().sqrt();
    assert!(
        Float::with_val(128, &d2 - &want).abs() < 1e-10,
        "{d2} vs {want}"
    );
}

#[test]
fn exact_series_determinant_matches_correlation_series() {
    for n in 1..=3usize {
        let order = 4 * n + 10;
        let det = diagonal_det_series(n, order).unwrap();
        let ff = correlation_series(n as u32, Side::BelowTc, order).unwrap();
        assert_eq!(det.coeffs, ff.coeffs, "N = {n}");
    }
}

#[test]
fn approach_to_spontaneous_magnetization() {
    let t = Float::with_val(128, 0.5);
    let m = spontaneous_magnetization(&t).unwrap();
    let s = sym(0.0, 0.5f64.sqrt(), 128);
    let mut prev = f64::INFINITY;
    for n in [1usize, 4, 8, 12, 16, 20, 24] {
        let d = correlation_det(&s, n).unwrap();
        let gap = Float::with_val(128, &d - &m).to_f64();
        assert!(gap > 0.0 && gap < prev, "N = {n}: gap {gap}");
        prev = gap;
    }
    assert!(prev < 1e-3);
    assert_eq!(
        spontaneous_magnetization(&Float::with_val(64, 0)).unwrap(),
        1
    );
    assert!(spontaneous_magnetization(&Float::with_val(64, 1)).is_err());
}

/// ⟨σ00σNN⟩ at T_c = (2/π)^N Π_(l=1)^(N−1) (1 − 1/(4l²))^(l−N).
fn critical_product(n: usize, prec: u32) -> Float {
    let mut v = Float::with_val(prec, 2) / pi(prec);
    v = v.pow(n as u32);
    for l in 1..n {
        let base = Float::with_val(prec, 1) - Float::with_val(prec, 4 * l * l).recip();
        v *= base.pow(l as i32 - n as i32);
    }
    v
}

#[test]
fn critical_diagonal_matches_product_formula() {
    let s = sym(0.0, 1.0, 128);
    for n in [1usize, 2, 5, 10] {
        let d = correlation_det(&s, n).unwrap();
        let o = critical_product(n, 128);
        assert!(Float::with_val(128, &d - &o).abs() < 1e-30, "N = {n}");
    }
}

#[test]
fn critical_amplitude_and_exponent() {
    let fit = critical_amplitude_fit(32).unwrap();
    assert!((fit.amplitude - fit.reference).abs() < 1e-4, "{fit:?}");
    assert!((fit.exponent + 0.25).abs() < 1e-3, "{fit:?}");
    assert!(matches!(
        critical_amplitude_fit(7),
        Err(ising_exact::Error::InsufficientData(_))
    ));
}

#[test]
fn row_amplitude_ratio() {
    let diag = critical_amplitude_fit_kind(CorrelationKind::Diagonal, 32, 128).unwrap();
    let row = critical_amplitude_fit_kind(CorrelationKind::Row, 32, 128).unwrap();
    // cosh 2K_c = √2 for isotropic couplings.
    let want = 2f64.powf(0.125);
    assert!(
        (row.amplitude / diag.amplitude - want).abs() < 1e-3,
        "{row:?}"
    );
}

#[test]
fn precision_doubling_agrees() {
    let lo = correlation_det(&sym(0.1, 0.7, 128), 6).unwrap();
    let hi = correlation_det(&sym(0.1, 0.7, 256), 6).unwrap();
    assert!(Float::with_val(256, &lo - &hi).abs() < 1e-34);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn swapping_parameters_reflects_coefficients(a1 in 0.0f64..0.8, a2 in 0.0f64..0.8, n in 0i64..5) {
        let a = fourier_coeff(&sym(a1, a2, 96), -n).unwrap();
        let b = fourier_coeff(&sym(a2, a1, 96), n).unwrap();
        prop_assert!(Float::with_val(96, &a - &b).abs() < 1e-24);
    }

    #[test]
    fn diagonal_determinants_decrease_to_magnetization(t in 0.05f64..0.6) {
        let s = sym(0.0, t.sqrt(), 96);
        let m = (1.0 - t).powf(0.25);
        let mut prev = f64::INFINITY;
        for n in 1..=6 {
            let d = correlation_det(&s, n).unwrap().to_f64();
            prop_assert!(d >= m - 1e-15 && d <= prev + 1e-15);
            prev = d;
        }
    }
}
