//! Exact-arithmetic generating functions for Hilbert schemes of points on
//! surfaces and for generalized Kummer varieties, together with the eta
//! quotients attached to symplectic automorphisms of K3 and abelian surfaces.
//!
//! Everything is computed over exact scalars (big rationals and cyclotomic
//! numbers); floating point never enters a verification path. The main
//! pipelines are:
//!
//! - [`goettsche::hilbert_equivariant`]: the equivariant Hodge-Deligne series
//!   `sum_n E(S^[n]; u, v) t^n` of the Hilbert schemes of points, one slice
//!   per power of the acting automorphism.
//! - [`goettsche::euler_trace_series`]: the Euler-characteristic trace series
//!   `exp(sum_{m,k} Tr(g^k, [e(S)]) t^{mk} / k)`.
//! - [`eta`]: eta-quotient expansion and the Moebius (inclusion-exclusion)
//!   derivation of eta exponents from order-dependent trace data.
//! - [`kummer`]: the gcd-tagged product formula for generalized Kummer
//!   varieties and the closed partition-sum formula used as its oracle.
//! - [`oracle`]: brute-force verifiers (graded symmetric powers, punctual
//!   cell counts) that are independent of the series pipelines.

pub mod exactnum;
pub mod partitions;
pub mod series;
pub mod eta;
pub mod goettsche;
pub mod kummer;
pub mod oracle;

pub use exactnum::{
    character_to_multiplicities, newton_exterior_powers, CharacterError, Cyclotomic, Rational,
    Scalar, TraceVector,
};
pub use eta::{EtaError, EtaQuotient};
pub use goettsche::{EquivariantSeries, SurfaceError, SurfaceHodgeCharacter};
pub use kummer::{KummerError, KummerSeries};
pub use partitions::Partition;
pub use series::{GcdTaggedSeries, Monomial, SeriesError, TaggedMonomial, TruncatedSeries};
