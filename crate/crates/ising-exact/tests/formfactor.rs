use ising_exact::formfactor::*;
use ising_exact::params::Side;
use ising_exact::series::Variable;
use rug::{Float, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn f(prec: u32, v: f64) -> Float {
    Float::with_val(prec, v)
}

#[test]
fn f1_leading_coefficient_is_pochhammer_ratio() {
    for n_sep in 0..5 {
        let ff = formfactor_series(1, n_sep, 4).unwrap();
        assert_eq!(ff.series.offset, q(n_sep as i64, 2));
        assert_eq!(ff.series.coeffs[0], f1_leading(n_sep));
    }
}

#[test]
fn f1_is_scaled_hypergeometric() {
    for n_sep in 0..4 {
        let ff = formfactor_series(1, n_sep, 12).unwrap();
        let want = hyp_f(n_sep, 12).scale(&f1_leading(n_sep));
        assert_eq!(ff.series.coeffs, want.coeffs);
    }
}

#[test]
fn n0_identity_fixes_sign_of_f2() {
    let ff = formfactor_series(2, 0, 3).unwrap();
    assert_eq!(ff.series.coeffs[1], q(1, 4));
    // ⟨σ00σ00⟩ = 1 on both sides to the computed order.
    for side in [Side::BelowTc, Side::AboveTc] {
        let c = correlation_series(0, side, 14).unwrap();
        assert_eq!(c.coeffs[0], 1);
        assert!(
            c.coeffs[1..].iter().all(|x| *x == 0),
            "{side:?}: {:?}",
            c.coeffs
        );
    }
}

#[test]
fn below_tc_boundary_condition() {
    // 1 − t^(N+1)/(2N+1)·((1/2)_(N+1)/(N+1)!)² + O(t^(N+2)) after removing (1−t)^(1/4):
    // the f^(2) leading coefficient has the opposite sign.
    for n_sep in 0..4u32 {
        let ff = formfactor_series(2, n_sep, n_sep as usize + 2).unwrap();
        let lead = f1_leading(n_sep + 1);
        let want = Rational::from(lead.square_ref()) / (2 * n_sep + 1);
        assert_eq!(ff.series.coeffs[n_sep as usize + 1], want);
    }
}

#[test]
fn numeric_engine_matches_series() {
    let t = f(128, 0.1);
    for (n, n_sep) in [(1usize, 0u32), (2, 1), (3, 0), (4, 0), (3, 2)] {
        let ff = formfactor_series_with(&Caps::extended(), n, n_sep, 40).unwrap();
        let s = ff.series.eval(&t);
        let v = formfactor_value(n, n_sep, &t, 128).unwrap();
        let rel = Float::with_val(128, &s - &v).abs() / Float::with_val(128, v.abs_ref());
        assert!(rel < 1e-30, "n={n} N={n_sep}: {s} vs {v}");
    }
}

#[test]
fn quadrature_matches_series() {
    let cases = [
        (1usize, 0u32, 0.25, 1e-12),
        (2, 1, 0.1, 1e-10),
        (3, 0, 0.05, 1e-8),
    ];
    for (n, n_sep, tv, tol) in cases {
        let t = f(128, tv);
        let quad = formfactor_quad(n, n_sep, &t).unwrap();
        let ser = formfactor_value(n, n_sep, &t, 128).unwrap();
        let rel = (quad.to_f64() - ser.to_f64()).abs() / ser.to_f64().abs();
        assert!(rel < tol, "n={n}: quad {quad} series {ser}");
    }
    assert!(formfactor_quad(2, 0, &f(64, 0.97)).is_err());
}

#[test]
fn k_constants_low_order() {
    let fit = factorization_fit(3, 0).unwrap();
    assert_eq!(fit.k_constants, vec![q(1, 6)]);
    let fit = factorization_fit(4, 0).unwrap();
    assert_eq!(fit.k_constants, vec![q(0, 1), q(1, 3)]);
    for n_sep in 1..=3 {
        let fit = factorization_fit(2, n_sep).unwrap();
        assert_eq!(fit.k_constants, vec![q(n_sep as i64, 2)]);
        assert!(fit.palindromic);
        assert_eq!(fit.max_degree(), 2 * n_sep as usize + 1);
        for m in 0..=2u32 {
            let want = c2_formula(m, n_sep).unwrap();
            let got = &fit.c_polys[m as usize];
            let mut w = want.clone();
            w.resize(got.len().max(w.len()), Rational::new());
            let mut g = got.clone();
            g.resize(w.len(), Rational::new());
            assert_eq!(g, w, "C^(2)_{m}({n_sep})");
        }
    }
}

#[test]
fn theta_form_matches_lambda_series() {
    let ser = lambda_correlation(0, Side::BelowTc, 30).unwrap();
    assert_eq!(ser.variable, Variable::T);
    for tv in [0.1, 0.3] {
        let t = f(128, tv);
        for lv in [0.3, std::f64::consts::FRAC_1_SQRT_2, 1.0] {
            let l = f(128, lv);
            let a = ser.eval_lambda(&l, &t);
            let b = theta_closed_form(ThetaForm::Cm00, &l, &t).unwrap();
            assert!(
                (a.to_f64() - b.to_f64()).abs() < 1e-10,
                "t={tv} λ={lv}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn plus_side_forms_match_lambda_series() {
    let t = f(128, 0.2);
    for (form, n_sep) in [
        (ThetaForm::Cp00, 0u32),
        (ThetaForm::Cm11, 1),
        (ThetaForm::Cp11, 1),
    ] {
        let side = if matches!(form, ThetaForm::Cm11) {
            Side::BelowTc
        } else {
            Side::AboveTc
        };
        let ser = lambda_correlation(n_sep, side, 30).unwrap();
        for lv in [0.4, 0.9] {
            let l = f(128, lv);
            let a = ser.eval_lambda(&l, &t);
            let a = if side == Side::AboveTc { a * &l } else { a };
            let b = theta_closed_form(form, &l, &t).unwrap();
            assert!(
                (a.to_f64() - b.to_f64()).abs() < 1e-12,
                "{form:?} λ={lv}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn genus_curves() {
    let t = f(256, 0.3);
    let r = genus_one_residual(&t).unwrap();
    assert!(r.clone().abs() < 1e-25, "{r}");
    let (tau, r3) = genus_three_value(&t);
    assert!(r3.abs() < 1e-25);
    let l = Float::with_val(256, 0.5).sqrt();
    let th = theta_closed_form(ThetaForm::Cm00, &l, &t).unwrap();
    assert!(Float::with_val(256, th - tau).abs() < 1e-25);
}
