//! Minimal linear ODEs with polynomial coefficients fitted to truncated
//! series over GF(p), rational lifting, and operator divisibility checks.

mod field;
mod ode;
mod operator;
mod structure;

pub use field::{
    check_prime, default_primes, is_prime, prime_below, reduce_rational, SeriesModP, DEFAULT_PRIME,
};
pub use ode::{
    fit_ode, fit_rational, lift_rational, rational_reconstruction, verify_annihilation,
    Annihilation, LinearODE, RationalODE,
};
pub use operator::Operator;
pub use structure::{
    structure_check, structure_check_mod, OperatorInfo, StructureCheck, StructureReport,
    StructureTarget,
};
