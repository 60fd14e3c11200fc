use ising_exact::numerics::bessel_k0;
use ising_exact::painleve::*;
use ising_exact::params::Side;
use rug::Float;

#[test]
fn pvi_holds_through_order_16() {
    for n_sep in 0..=2u32 {
        for side in [Side::BelowTc, Side::AboveTc] {
            let r = pvi_residual(n_sep, side, 16).unwrap();
            assert_eq!(r.len(), 17);
            assert!(r.is_zero(), "N={n_sep} {side:?}: {:?}", r.valuation());
        }
    }
}

#[test]
fn pvi_holds_symbolically_in_lambda() {
    for n_sep in 0..=3u32 {
        for side in [Side::BelowTc, Side::AboveTc] {
            let r = pvi_residual_lambda(n_sep, side, 20, &[]).unwrap();
            assert!(r.is_zero(), "N={n_sep} {side:?}");
        }
    }
}

#[test]
fn dropping_f4_breaks_pvi_where_it_enters() {
    for n_sep in 0..=1u32 {
        let r = pvi_residual_lambda(n_sep, Side::BelowTc, 16, &[4]).unwrap();
        assert_eq!(r.valuation(), Some(2 * (n_sep as usize + 2)));
    }
}

#[test]
fn tiny_lambda_stays_at_fixed_point() {
    let sol = piii_solve(1e-12, 0.5, 10.0).unwrap();
    assert!(sol.grid.iter().all(|p| (p.eta - 1.0).abs() < 1e-11));
}

#[test]
fn asymptotic_regime_matches_bessel() {
    let sol = piii_solve(1.0, 5.0, 10.0).unwrap();
    let k0 = bessel_k0(&Float::with_val(64, 10.0)).unwrap().to_f64();
    let want = 1.0 - 2.0 / std::f64::consts::PI * k0;
    assert!((sol.last().eta - want).abs() < 1e-4);
}

#[test]
fn defect_and_monotonicity_at_lambda_one() {
    let sol = piii_solve(1.0, 0.5, 10.0).unwrap();
    assert!(sol.max_defect(0.5, 8.0) < 1e-8);
    // grid runs downward in θ, so η must decrease along it
    assert!(sol.grid.windows(2).all(|w| w[1].eta < w[0].eta));
    let csv = sol.to_csv();
    assert!(csv.starts_with("theta,eta,deta\n"));
    assert_eq!(csv.lines().count(), sol.grid.len() + 1);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(piii_solve(1.5, 0.5, 10.0).is_err());
    assert!(piii_solve(1.0, 0.5, 6.0).is_err());
    assert!(scaling_g(-1.0, 1.0, GSign::Minus).is_err());
}

#[test]
fn scaling_functions_at_large_r() {
    let gm = scaling_g(20.0, 1.0, GSign::Minus).unwrap();
    assert!((gm - 1.0).abs() < 1e-6);
    let sol = piii_solve(1.0, 5.0, 10.0).unwrap();
    let gm = scaling_g_from(&sol, 10.0, GSign::Minus).unwrap();
    let gp = scaling_g_from(&sol, 10.0, GSign::Plus).unwrap();
    let eta = sol.last().eta;
    assert!((gp / gm - (1.0 - eta) / (1.0 + eta)).abs() < 1e-14);
    for r in [0.5, 2.0, 6.0] {
        let m = scaling_g(r, 1.0, GSign::Minus).unwrap();
        let p = scaling_g(r, 1.0, GSign::Plus).unwrap();
        assert!(m > p && p > 0.0, "r = {r}");
    }
}

/// Fits ln G = −α ln r + β + c r ln r + d r.
fn small_r_exponent() -> f64 {
    let rs: Vec<f64> = (0..8).map(|i| 1e-4 * 10f64.powf(i as f64 / 7.0)).collect();
    let mut ata = [[0.0f64; 5]; 4];
    for &r in &rs {
        let y = scaling_g(r, 1.0, GSign::Minus).unwrap().ln();
        let l = r.ln();
        let row = [l, 1.0, r * l, r];
        for i in 0..4 {
            for j in 0..4 {
                ata[i][j] += row[i] * row[j];
            }
            ata[i][4] += row[i] * y;
        }
    }
    for c in 0..4 {
        let p = (c..4)
            .max_by(|&a, &b| ata[a][c].abs().total_cmp(&ata[b][c].abs()))
            .unwrap();
        ata.swap(c, p);
        for r in 0..4 {
            if r != c {
                let f = ata[r][c] / ata[c][c];
                for k in c..5 {
                    ata[r][k] -= f * ata[c][k];
                }
            }
        }
    }
    -ata[0][4] / ata[0][0]
}

#[test]
fn small_r_exponent_is_one_quarter() {
    let alpha = small_r_exponent();
    assert!((alpha - 0.25).abs() < 5e-2, "α = {alpha}");
}

#[test]
fn log_resummation_at_order_lambda_squared() {
    let r0 = log_resummation_check(0).unwrap();
    assert!(r0.order0 && r0.pass && r0.fit.is_none());
    let r = log_resummation_check(1).unwrap();
    assert!(r.pass, "{r:?}");
    let [d1, _] = r.defects.unwrap();
    assert!(d1 < 1e-4);
    assert!(r.perturbed_defect.unwrap() > r.tolerance);
    assert!(log_resummation_check(2).is_err());
}

#[test]
fn scaled_form_factor_quadrature_matches_bessel_form() {
    for r in [0.1, 1.0, 3.0] {
        let q = scaled_f2_quadrature(r).unwrap();
        let b = scaled_f2_bessel(r).unwrap();
        assert!(
            (q - b).abs() < 1e-11 * b.abs().max(1e-3),
            "r = {r}: {q} vs {b}"
        );
    }
}
