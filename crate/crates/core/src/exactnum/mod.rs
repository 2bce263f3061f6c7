//! Exact scalar arithmetic: big rationals, cyclotomic numbers, and the
//! character-theoretic kernels built on them (Newton's identities, discrete
//! Fourier decomposition of cyclic-group characters).
//!
//! All values are immutable; every operation is a pure function.

mod character;
mod cyclotomic;
mod scalar;

pub use character::{
    character_to_multiplicities, genuine_multiplicities, newton_exterior_powers, CharacterError,
    TraceVector,
};
pub use cyclotomic::Cyclotomic;
pub use scalar::Scalar;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n / d` as a [`Rational`].
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
