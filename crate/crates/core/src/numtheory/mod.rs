//! Exact arithmetic: primes, residue symbols, local square and cube classes,
//! Hilbert symbols.

mod arith;
mod classes;
mod fp2;

use thiserror::Error;

pub use arith::{
    discrete_log, factor, factor_u64, inv_mod, is_prime, legendre, legendre_u64, mod_u64,
    mult_order, pow_mod, prime_divisors, primes_up_to, primitive_root, split_off, valuation,
};
pub use classes::{
    cube_class_mu3, hilbert_classes, hilbert_int, hilbert_symbol, square_class, square_class_int,
    CubeClassMu3, Place, SquareClass,
};
pub use fp2::{Fp2, Fp2Elt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("zero has no square or cube class")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cube classes in Q_{0}(mu_3) are only modelled for primes congruent to 2 mod 3")]
    CubeModel(u64),
    #[error("classes live at different places")]
    PlaceMismatch,
}
