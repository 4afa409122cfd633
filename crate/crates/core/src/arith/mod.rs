//! Exact arithmetic: rationals, square-free factorization, multiquadratic
//! radical sums, sign characters, and linear algebra over exact fields.

mod character;
mod factor;
pub mod linalg;
mod rat;
mod sqrt_combo;

pub use character::SignCharacter;
pub use factor::{squarefree_decompose, Factorizer, DEFAULT_FACTOR_BOUND};
pub use rat::{format_rat, parse_rat, rat, rat_frac, Rat};
pub use sqrt_combo::{sqrt_of_rational, SqrtCombo};

pub(crate) use factor::{distinct_prime_factors as distinct_prime_factors_u64, small_prime as is_prime_u64};
pub(crate) use sqrt_combo::sqrt_of_rational_with as sqrt_combo_root;
