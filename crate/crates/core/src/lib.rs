//! Exact computations in the integral shuffle algebra over
//! `R = Q[q1^±1, q2^±1]`.
//!
//! * [`poly`]: sparse Laurent polynomials in `q1, q2, z1, ..., zk` with
//!   rational coefficients, exact division and substitution.
//! * [`shuffle`]: the shuffle product and expansion of generator words.
//! * [`generators`]: `V_k`-actions on words and module certificates for
//!   arity 2 and 3.
//! * [`conditions`]: wheel conditions, ideal certificates, and the
//!   `z2 = −z1` divisibility test.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

mod coeff;
pub mod combinat;
pub mod conditions;
mod error;
pub mod generators;
pub mod poly;
pub mod shuffle;

pub use conditions::{
    corollary_check, ideal_certificate, ideal_certificate_for, ideal_membership,
    ideal_wheel_check, omega_decomposition, verify_ideal_certificate, wheel_check,
    IdealCertificate, IdealGenerators, IdealTarget, OmegaDecomposition,
};
pub use error::{Error, Result};
pub use generators::{
    act_power_sum, act_product_power, basis2, basis3, range4, reduce2, reduce3, residue_class,
    verify_certificate, verify_lemma, LemmaRelation, ModuleCertificate, ModuleReducer,
};
pub use poly::{Coeff, LaurentPoly, Monomial, RationalFunction, Substitution, Variable};
pub use shuffle::{omega, shuffle, shuffle_word, sym, GeneratorWord, ShuffleElement, WordCache};
