use ising_exact::chi::chi3d_parts_series;
use ising_exact::error::Error;
use ising_exact::formfactor::{formfactor_series, formfactor_series_mod};
use ising_exact::odehunt::*;
use ising_exact::series::{Series, Variable};
use proptest::prelude::*;
use rug::{Integer, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn red(r: Rational, p: u64) -> u64 {
    reduce_rational(&r, p).unwrap()
}

fn k_series(len: usize) -> ising_exact::series::RationalSeries {
    Series::hyp2f1(Variable::T, &q(1, 2), &q(1, 2), &q(1, 1), len)
}

#[test]
fn default_prime_is_62_bit() {
    assert!(is_prime(DEFAULT_PRIME));
    assert_eq!(DEFAULT_PRIME, (1 << 62) - 57);
    let ps = default_primes(3);
    assert_eq!(ps[0], DEFAULT_PRIME);
    assert!(ps[1] < ps[0] && ps[2] < ps[1]);
}

#[test]
fn geometric_series_gives_first_order_operator() {
    let p = DEFAULT_PRIME;
    let s = SeriesModP::new(p, vec![1; 30]).unwrap();
    let ode = fit_ode(&s, 2, 2).unwrap();
    // (t − 1) f′ + f, i.e. (1−t)f′ − f with the t·D coefficient normalized to 1
    assert_eq!((ode.order, ode.degree), (1, 1));
    assert_eq!(ode.coeffs, vec![vec![1, 0], vec![p - 1, 1]]);
}

#[test]
fn hypergeometric_operator_recovered_mod_three_primes() {
    let s = k_series(60);
    for p in default_primes(3) {
        let ode = fit_ode(&SeriesModP::from_rational(&s, p).unwrap(), 4, 4).unwrap();
        // t(1−t)f″ + (1−2t)f′ − f/4, divided by −1 so the t² coefficient of P_2 is 1
        let want = vec![
            vec![red(q(1, 4), p), 0, 0],
            vec![p - 1, 2, 0],
            vec![0, p - 1, 1],
        ];
        assert_eq!((ode.order, ode.degree), (2, 2));
        assert_eq!(ode.coeffs, want, "p = {p}");
    }
}

#[test]
fn one_particle_form_factor_operator() {
    let p = DEFAULT_PRIME;
    let s = formfactor_series_mod(1, 0, 40, p).unwrap();
    let ode = fit_ode(&s, 3, 6).unwrap();
    assert!(ode.order <= 2);
    let v = verify_annihilation(&ode, &s).unwrap();
    assert!(v.ok);
    assert_eq!(v.checked, 40 - ode.order);
}

#[test]
fn modular_engine_matches_exact_series() {
    let p = DEFAULT_PRIME;
    for n in 1..=3 {
        for n_sep in 0..=2 {
            let exact = formfactor_series(n, n_sep, 20).unwrap().series;
            let m = formfactor_series_mod(n, n_sep, 20, p).unwrap();
            assert_eq!(
                SeriesModP::from_rational(&exact, p).unwrap(),
                m,
                "n={n} N={n_sep}"
            );
        }
    }
}

#[test]
fn perturbed_series_fails_verification() {
    let p = DEFAULT_PRIME;
    let mut s = SeriesModP::from_rational(&k_series(40), p).unwrap();
    let ode = fit_ode(&s, 3, 3).unwrap();
    assert!(verify_annihilation(&ode, &s).unwrap().ok);
    s.coeffs[30] = (s.coeffs[30] + 1) % p;
    let v = verify_annihilation(&ode, &s).unwrap();
    assert!(!v.ok);
    // P_2(0) = 0, so s_30 first enters at index 29 through t D² and D
    assert_eq!(v.first_failure, Some(29));
}

#[test]
fn lifted_operator_is_exact() {
    let s = k_series(60);
    let ode = fit_rational(&s, 3, 3, &default_primes(2)).unwrap();
    assert_eq!((ode.order, ode.degree), (2, 2));
    assert_eq!(ode.coeffs[0], vec![q(1, 4), q(0, 1), q(0, 1)]);
    assert_eq!(ode.coeffs[1], vec![q(-1, 1), q(2, 1), q(0, 1)]);
    assert_eq!(ode.coeffs[2], vec![q(0, 1), q(-1, 1), q(1, 1)]);
    assert!(ode.annihilates(&k_series(120)));
}

#[test]
fn lifted_chi_d2_operator_annihilates_exact_series() {
    let s = chi3d_parts_series(120)[1].clone();
    let ode = fit_rational(&s, 3, 10, &default_primes(2)).unwrap();
    assert_eq!(ode.order, 2);
    assert!(ode.annihilates(&chi3d_parts_series(200)[1]));
}

#[test]
fn rational_reconstruction_recovers_small_fractions() {
    let m = Integer::from(DEFAULT_PRIME) * default_primes(2)[1];
    for r in [q(-7, 12), q(1, 4), q(355, 113), q(0, 1)] {
        let num = Integer::from(r.numer() % &m);
        let den_inv = Integer::from(r.denom().invert_ref(&m).unwrap());
        let u = (num * den_inv) % &m;
        let u = if u < 0 { u + &m } else { u };
        assert_eq!(rational_reconstruction(&u, &m), Some(r));
    }
}

#[test]
fn fit_errors() {
    let p = DEFAULT_PRIME;
    let s = SeriesModP::from_rational(&k_series(20), p).unwrap();
    assert!(matches!(fit_ode(&s, 4, 4), Err(Error::InsufficientData(_))));
    let s = SeriesModP::from_rational(&k_series(40), p).unwrap();
    assert!(matches!(fit_ode(&s, 1, 1), Err(Error::NotFound(_))));
    assert!(SeriesModP::new(15, vec![1]).is_err());
    let bad = Series::from_coeffs(Variable::T, vec![Rational::from((1, DEFAULT_PRIME))]);
    assert!(SeriesModP::from_rational(&bad, p).is_err());
}

#[test]
fn operator_json() {
    let p = DEFAULT_PRIME;
    let ode = fit_ode(&SeriesModP::from_rational(&k_series(40), p).unwrap(), 3, 3).unwrap();
    let text = ode.to_json();
    assert!(text.contains("\"order\":2"));
    assert_eq!(LinearODE::from_json(&text).unwrap(), ode);
    assert!(LinearODE::from_json(r#"{"p":15,"order":1,"degree":0,"coeffs":[[1],[1]]}"#).is_err());
    assert!(LinearODE::from_json(r#"{"p":7,"order":1,"degree":0,"coeffs":[[1],[0]]}"#).is_err());
    assert!(LinearODE::from_json(r#"{"p":7,"order":1,"degree":1,"coeffs":[[1],[1]]}"#).is_err());
}

#[test]
fn russian_doll_structure() {
    let r = structure_check(StructureTarget::RussianDoll).unwrap();
    assert!(r.pass, "{r:#?}");
}

#[test]
fn diagonal_direct_sum_structure() {
    let r = structure_check(StructureTarget::DirectSum).unwrap();
    assert!(r.pass, "{r:#?}");
    let r = structure_check(StructureTarget::DiagChi3Factor).unwrap();
    assert!(r.pass, "{r:#?}");
    assert_eq!(r.operators[1].order, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    #[test]
    fn minimal_order_independent_of_prime(start in (1u64 << 61)..(1u64 << 62)) {
        let p = prime_below(start);
        let s = chi3d_parts_series(80)[1].clone();
        let ode = fit_ode(&SeriesModP::from_rational(&s, p).unwrap(), 3, 10).unwrap();
        let base = fit_ode(&SeriesModP::from_rational(&s, DEFAULT_PRIME).unwrap(), 3, 10).unwrap();
        prop_assert_eq!((ode.order, ode.degree), (base.order, base.degree));
        prop_assert!(verify_annihilation(&ode, &SeriesModP::from_rational(&s, p).unwrap()).unwrap().ok);
    }
}
