#![no_main]

use ising_exact::odehunt::{verify_annihilation, LinearODE, SeriesModP};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ode) = LinearODE::from_json(text) {
        assert_eq!(
            LinearODE::from_json(&ode.to_json()).expect("own output parses"),
            ode
        );
        let s = SeriesModP::new(ode.p, vec![1; 8]).expect("residue 1 is valid");
        verify_annihilation(&ode, &s).expect("primes agree");
    }
});
