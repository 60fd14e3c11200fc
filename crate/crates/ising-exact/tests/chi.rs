use ising_exact::chi::*;
use ising_exact::params::{CouplingPoint, Side};
use ising_exact::series::Variable;
use proptest::prelude::*;
use rug::{Float, Rational};

const P: u32 = 128;

fn f(x: f64) -> Float {
    Float::with_val(P, x)
}

fn rel(a: &Float, b: &Float) -> f64 {
    (Float::with_val(P, a - b) / b).to_f64().abs()
}

#[test]
fn bulk_integrals_match_closed_forms() {
    for t in [0.1, 0.3, 0.6] {
        for n in [1, 2] {
            let side = if n == 1 { Side::AboveTc } else { Side::BelowTc };
            let cp = CouplingPoint::isotropic_from_t(&f(t), side).unwrap();
            let i = chi_bulk_integral(n, &cp).unwrap();
            let c = chi_bulk_closed(n, &f(t)).unwrap();
            assert!(rel(&i, &c) < 1e-10, "n={n} t={t}: {i} vs {c}");
        }
    }
}

#[test]
fn bulk_terms_invariant_under_coupling_swap() {
    let a = CouplingPoint::new(f(0.3), f(0.4)).unwrap();
    let b = CouplingPoint::new(f(0.4), f(0.3)).unwrap();
    for n in 1..=3 {
        let x = chi_bulk_integral(n, &a).unwrap();
        let y = chi_bulk_integral(n, &b).unwrap();
        assert!(rel(&x, &y) < 1e-10, "n={n}");
    }
}

#[test]
fn bulk_integral_caps_and_domain() {
    let cp = CouplingPoint::isotropic_from_t(&f(0.3), Side::AboveTc).unwrap();
    assert!(chi_bulk_integral(4, &cp).is_err());
    assert!(chi_bulk_closed(1, &f(1.0)).is_err());
}

#[test]
fn amplitude_constants_and_ratio() {
    let a = amplitude_constants(P);
    assert_eq!(a.c[0], 1);
    let c2 = Float::with_val(P, ising_exact::numerics::pi(P) * 12u32).recip();
    assert!(rel(&a.c[1], &c2) < 1e-35);
    let twelve_pi = ising_exact::numerics::pi(P) * 12u32;
    assert!(rel(&a.ratio_leading(), &twelve_pi) < 1e-35);
    assert!(rel(&a.ratio_four_term(), &twelve_pi) < 5e-3);
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn nickel_table() {
    let s5 = 5f64.sqrt();
    // n = 5: w = 1/(2(cos 2πj/5 + cos 2πk/5)) gives (1 ± √5)/4 at (1,1), (2,2)
    let table: [(usize, Vec<f64>); 4] = [
        (3, vec![-0.5, 1.0]),
        (4, vec![-0.5, 0.5]),
        (
            5,
            vec![
                -1.0,
                (1.0 - s5) / 4.0,
                (1.0 + s5) / 4.0,
                (3.0 - s5) / 2.0,
                (3.0 + s5) / 2.0,
            ],
        ),
        (6, vec![-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0]),
    ];
    for (n, want) in table {
        let recs = nickel_singularities(n, P).unwrap();
        let got: Vec<f64> = recs.iter().map(|r| r.re.to_f64()).collect();
        let want = sorted(want);
        assert_eq!(got.len(), want.len(), "n={n}: {got:?}");
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-14, "n={n}: {got:?} vs {want:?}");
        }
        for r in &recs {
            assert!(location_residual(r).unwrap() < 1e-20, "n={n}");
        }
    }
}

#[test]
fn nickel_exact_algebraic_values() {
    let w = P;
    let s5 = Float::with_val(w, 5).sqrt();
    let exact = [
        Float::with_val(w, -1),
        Float::with_val(w, 1 - s5.clone()) / 4u32,
        Float::with_val(w, 1 + s5.clone()) / 4u32,
        Float::with_val(w, 3 - s5.clone()) / 2u32,
        Float::with_val(w, 3 + s5) / 2u32,
    ];
    let mut exact = exact.to_vec();
    exact.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let recs = nickel_singularities(5, P).unwrap();
    for (r, e) in recs.iter().zip(&exact) {
        assert!(Float::with_val(w, &r.re - e).abs() < 1e-20);
    }
}

#[test]
fn exponents() {
    assert_eq!(
        singularity_exponent(3, Side::AboveTc, ChiKind::Bulk).unwrap(),
        (Rational::from(3), true)
    );
    assert_eq!(
        singularity_exponent(2, Side::BelowTc, ChiKind::Bulk).unwrap(),
        (Rational::from((1, 2)), false)
    );
    assert_eq!(
        singularity_exponent(4, Side::BelowTc, ChiKind::Diagonal).unwrap(),
        (Rational::from(7), true)
    );
    assert_eq!(
        singularity_exponent(3, Side::AboveTc, ChiKind::Diagonal).unwrap(),
        (Rational::from((7, 2)), false)
    );
    assert!(singularity_exponent(3, Side::BelowTc, ChiKind::Bulk).is_err());
}

#[test]
fn diagonal_singularities_are_roots_of_unity() {
    let recs = diagonal_singularities(4, P).unwrap();
    assert_eq!(recs.len(), 1);
    assert!(Float::with_val(P, &recs[0].re + 1u32).abs() < 1e-30);
    let recs = diagonal_singularities(3, P).unwrap();
    assert_eq!(recs.len(), 2);
    for r in recs {
        let m = Float::with_val(P, r.re.square_ref()) + Float::with_val(P, r.im.square_ref());
        assert!(Float::with_val(P, m - 1u32).abs() < 1e-30);
    }
}

#[test]
fn low_diagonal_series() {
    let s1 = chi_diag_series(1, 12).unwrap();
    assert_eq!(s1.variable, Variable::X);
    assert!(s1.coeffs.iter().all(|c| *c == 1));
    let s2 = chi_diag_series(2, 12).unwrap();
    assert_eq!(s2.variable, Variable::T);
    assert_eq!(s2.coeffs[0], 0);
    assert!(s2.coeffs[1..].iter().all(|c| *c == Rational::from((1, 4))));
    let s3 = chi_diag_series(3, 12).unwrap();
    assert_eq!(s3.valuation(), Some(4));
}

#[test]
fn diagonal_series_equal_closed_form_series() {
    let s3 = chi_diag_series(3, 30).unwrap();
    let c3 = chi3d_closed_series(31);
    assert_eq!(s3.coeffs, c3.coeffs);
    let s4 = chi_diag_series(4, 16).unwrap();
    let c4 = chi4d_closed_series(17);
    assert_eq!(s4.coeffs, c4.coeffs);
}

#[test]
fn closed_forms_match_series() {
    for (n, t) in [
        (3, 0.09),
        (3, 0.25),
        (3, 0.36),
        (4, 0.1),
        (4, 0.2),
        (4, 0.3),
    ] {
        let term = ChiTerm::new(ChiKind::Diagonal, n, Representation::Series).unwrap();
        let s = term.value(&f(t)).unwrap();
        let c = chi_diag_closed(n, &f(t)).unwrap();
        assert!(rel(&s, &c) < 1e-10, "n={n} t={t}: {s} vs {c}");
    }
}

#[test]
fn integrals_match_series() {
    for n in 1..=3 {
        for t in [0.05, 0.1, 0.2] {
            let i = chi_diag_integral(n, &f(t)).unwrap();
            let s = ChiTerm::new(ChiKind::Diagonal, n, Representation::Series)
                .unwrap()
                .value(&f(t))
                .unwrap();
            assert!(rel(&i, &s) < 1e-8, "n={n} t={t}: {i} vs {s}");
        }
    }
}

#[test]
fn one_minus_q_identity() {
    for k in 1..20 {
        let x = f(k as f64 / 20.0);
        let lhs = Float::with_val(P, 1 - q_of_x(&x));
        let rhs = one_minus_q(&x);
        assert!(Float::with_val(P, &lhs - &rhs).abs() < 1e-35);
    }
}

#[test]
fn chi3d_amplitude() {
    let a = chi3d_asymptotics().unwrap();
    assert!((a.amplitude - 0.016329).abs() < 1e-5);
    assert!((a.extrapolated - a.amplitude).abs() < 1e-5, "{a:?}");
    assert!(a.pass);
}

#[test]
fn chi4d_expansion_fit() {
    let a = chi4d_asymptotics().unwrap();
    assert!(a.pole_rel_err < 0.01, "{a:?}");
    assert!(a.log_squared_rel_err < 0.05, "{a:?}");
    assert!(a.pass);
    // the t = −1 amplitude lands on 1/(26880 π²)
    let pi2 = std::f64::consts::PI.powi(2);
    assert!(
        (a.minus_one.times_26880 * pi2 - 1.0).abs() < 1e-3,
        "{:?}",
        a.minus_one
    );
}

#[test]
fn chi_d2_is_rational_while_chi2_has_log() {
    // (1−t)χ_d^(2) = t/4 exactly. (1−t)(1−√t)χ^(2) = N(t)/(3π) with
    // N = (1+t)E − (1−t)K; the ε ln ε terms of E and K cancel in N, so the
    // logarithm shows up in the second difference, which kills linear terms.
    fn second(g: &dyn Fn(&Float) -> Float, e: f64) -> f64 {
        let e1 = f(e);
        let e2 = Float::with_val(P, &e1 * 2u32);
        let e3 = Float::with_val(P, &e1 * 3u32);
        let d: Float = g(&e3) - g(&e2) * 2u32 + g(&e1);
        (d / e1.square()).to_f64()
    }
    let diag = |e: &Float| {
        let t = Float::with_val(P, 1 - e);
        chi_diag_closed(2, &t).unwrap() * e
    };
    let bulk = |e: &Float| {
        let t = Float::with_val(P, 1 - e);
        let r = 1 - Float::with_val(P, t.sqrt_ref());
        chi_bulk_closed(2, &t).unwrap() * e * r * (3.0 * std::f64::consts::PI)
    };
    assert!(second(&diag, 1e-3).abs() < 1e-20, "{}", second(&diag, 1e-3));
    assert!(second(&diag, 1e-6).abs() < 1e-20);
    let (b3, b6) = (second(&bulk, 1e-3), second(&bulk, 1e-6));
    // a ε² ln ε term makes the second difference drift like ln ε
    assert!((b3 - b6).abs() > 0.1, "{b3} {b6}");
}

#[test]
fn lambda_partial_sums() {
    let t = f(0.2);
    let zero = f(0.0);
    let one = f(1.0);
    let chi1 = chi_bulk_integral(
        1,
        &CouplingPoint::isotropic_from_t(&t, Side::AboveTc).unwrap(),
    )
    .unwrap();
    let v = lambda_chi(ChiKind::Bulk, Side::AboveTc, &zero, 3, &t).unwrap();
    assert!(rel(&v, &chi1) < 1e-14);

    let plain: Float = [1, 3]
        .iter()
        .map(|&n| chi_diag_value(n, &t).unwrap())
        .fold(f(0.0), |a, b| a + b);
    let v = lambda_chi(ChiKind::Diagonal, Side::AboveTc, &one, 3, &t).unwrap();
    assert!(rel(&v, &plain) < 1e-25);

    let half = f(0.5);
    let series = |n: usize| {
        ChiTerm::new(ChiKind::Diagonal, n, Representation::Series)
            .unwrap()
            .value(&t)
            .unwrap()
    };
    // below T_c the weights are λ^(2j) on χ^(2j)
    let manual = series(2) / 4u32 + series(4) / 16u32;
    let v = lambda_chi(ChiKind::Diagonal, Side::BelowTc, &half, 4, &t).unwrap();
    assert!(rel(&v, &manual) < 1e-10);

    assert!(lambda_chi(ChiKind::Bulk, Side::AboveTc, &one, 5, &t).is_err());
    assert!(lambda_chi(ChiKind::Bulk, Side::AtTc, &one, 3, &t).is_err());
}

#[test]
fn term_availability() {
    assert!(ChiTerm::new(ChiKind::Bulk, 3, Representation::ClosedForm).is_err());
    assert!(ChiTerm::new(ChiKind::Bulk, 3, Representation::Integral).is_ok());
    assert!(ChiTerm::new(ChiKind::Diagonal, 5, Representation::Series).is_ok());
    assert!(ChiTerm::new(ChiKind::Diagonal, 5, Representation::ClosedForm).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn diagonal_terms_positive(t in 0.01f64..0.9, n in 1usize..=4) {
        let v = chi_diag_closed(n, &f(t)).unwrap();
        prop_assert!(v > 0);
    }

    #[test]
    fn bulk_terms_positive(t in 0.05f64..0.8, n in 1usize..=2) {
        let v = chi_bulk_closed(n, &f(t)).unwrap();
        prop_assert!(v > 0);
    }
}
