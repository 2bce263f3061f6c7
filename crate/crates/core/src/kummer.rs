//! Generalized Kummer generating functions.
//!
//! The tagged-product pipeline computes, slice by slice,
//!
//! ```text
//! sum_n E(K_n(A); u, v) t^n
//!   = (w d/dw)^4 / E(A) applied to
//!     odot-prod_{m>=1} (1 + w^m (F_m - 1))
//! ```
//!
//! where `F_m` is the `m`-th factor of the Hilbert-scheme product formula
//! and the `w`-exponents combine by gcd. The order of operations is:
//! assemble the tagged product, apply `(w d/dw)^4` and set `w = 1` (scale by
//! `tag^4`, drop tag 0), then divide by `E(A)` as an exact per-`t`-slice
//! polynomial division. Specializing `u = v = 1` happens only on final
//! polynomials, since `E(A; 1, 1) = 0` makes early specialization singular.
//!
//! The closed partition-sum formula
//!
//! ```text
//! h(K_n(A); -u, -v) = ((1-u)(1-v))^{-2} sum_{alpha in P(n)} gcd(alpha)^4 (uv)^{n-|alpha|}
//!     prod_i sum_{beta in P(alpha_i)} prod_j (j^{beta_j} beta_j!)^{-1} ((1-u^j)(1-v^j))^{2 beta_j}
//! ```
//!
//! is implemented as an independent oracle, and the quasi-modular side
//! `(q d/dq)^3 / 24 of E_2` cross-checks the Euler numbers.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exactnum::{rational, Scalar};
use crate::goettsche::{hilbert_product_factor, SurfaceError, SurfaceHodgeCharacter};
use crate::partitions::{sigma1, Partition};
use crate::series::{GcdTaggedSeries, Monomial, SeriesError, TruncatedSeries};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KummerError {
    #[error("surface is not abelian-shaped (h^{{1,0}} = {h10}, expected 2)")]
    NotAbelianSurface { h10: usize },
    #[error("closed-formula quotient has a bad coefficient at {monomial}: {value}")]
    NonIntegralCoefficient { monomial: String, value: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// One `(t, u, v)` series per power `g^k`: the trace of `g^k` on
/// `sum_n E(K_n(A); u, v) t^n`. The `t^0` term vanishes (the empty selection
/// carries tag 0 and is annihilated by the Euler operator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerSeries {
    order: u32,
    slices: Vec<TruncatedSeries>,
}

impl KummerSeries {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn trunc(&self) -> u32 {
        self.slices[0].trunc()
    }

    pub fn slices(&self) -> &[TruncatedSeries] {
        &self.slices
    }

    pub fn slice(&self, k: u32) -> &TruncatedSeries {
        &self.slices[(k % self.order) as usize]
    }

    pub fn trace_vector_at(&self, mono: Monomial) -> crate::TraceVector {
        crate::TraceVector::new(
            self.order,
            self.slices
                .iter()
                .map(|s| s.coefficient(&mono))
                .collect(),
        )
    }

    pub fn representation_multiplicities_at(
        &self,
        mono: Monomial,
    ) -> Result<Vec<BigInt>, crate::CharacterError> {
        let mut tv = self.trace_vector_at(mono);
        if (mono.u + mono.v) % 2 == 1 {
            tv = crate::TraceVector::new(
                self.order,
                tv.values().iter().map(Scalar::neg_ref).collect(),
            );
        }
        crate::exactnum::character_to_multiplicities(&tv)
    }

    pub fn specialize_euler(&self) -> KummerSeries {
        KummerSeries {
            order: self.order,
            slices: self
                .slices
                .iter()
                .map(TruncatedSeries::specialize_u1_v1)
                .collect(),
        }
    }
}

/// The equivariant Kummer series for an abelian-surface-shaped character
/// (`h^{1,0}` must be 2).
pub fn kummer_equivariant(
    surface: &SurfaceHodgeCharacter,
    trunc: u32,
) -> Result<KummerSeries, KummerError> {
    let h10 = surface.h(1, 0);
    if h10 != 2 {
        return Err(KummerError::NotAbelianSurface { h10 });
    }
    let order = surface.order();
    let mut slices = Vec::with_capacity(order as usize);
    for k in 0..order {
        let mut acc = GcdTaggedSeries::one(trunc);
        for m in 1..=trunc.max(1) {
            if m > trunc {
                break;
            }
            let factor = hilbert_product_factor(surface, k, m, trunc);
            let deviation = factor.sub(&TruncatedSeries::one(trunc))?;
            if deviation.is_zero() {
                continue;
            }
            let tagged = GcdTaggedSeries::one_plus_tagged(&deviation, m);
            acc = acc.odot_mul(&tagged)?;
        }
        let collapsed = acc.euler_w4_collapse();
        let euler_poly = surface.euler_polynomial(k);
        let guard = 4 * trunc + 8;
        let slice = collapsed.div_exact_uv(&euler_poly, guard)?;
        slices.push(slice);
    }
    Ok(KummerSeries { order, slices })
}

fn factorial(n: u32) -> BigInt {
    (1..=n as u64).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

/// `sum_{beta in P(a)} prod_j (j^{beta_j} beta_j!)^{-1} ((1-u^j)(1-v^j))^{2 beta_j}`
/// as a `(u, v)`-polynomial.
fn inner_partition_sum(a: u32) -> TruncatedSeries {
    let mut total = TruncatedSeries::zero(0);
    for beta in Partition::enumerate(a) {
        let mut term = TruncatedSeries::one(0);
        let mut weight = Rational::one();
        for (j, bj) in beta.parts_with_multiplicity() {
            weight *= Rational::new(
                BigInt::one(),
                BigInt::from(j as u64).pow(bj) * factorial(bj),
            );
            for _ in 0..(2 * bj) {
                term.mul_binomial_factor(&Scalar::from_int(-1), Monomial { t: 0, u: j, v: 0 });
                term.mul_binomial_factor(&Scalar::from_int(-1), Monomial { t: 0, u: 0, v: j });
            }
        }
        total = total
            .add(&term.scale(&Scalar::Rational(weight)))
            .expect("matching truncation");
    }
    total
}

/// The closed partition-sum formula for `E(K_n(A); u, v)` (equivalently
/// `h(K_n(A); -u, -v)`), evaluated with exact rationals. The quotient by
/// `((1-u)(1-v))^2` is verified to be a polynomial whose `(-u, -v)`
/// substitution has nonnegative integer coefficients (the Hodge numbers of
/// `K_n(A)`).
pub fn kummer_hodge_closed(n: u32) -> Result<TruncatedSeries, KummerError> {
    assert!(n >= 1, "K_n is defined for n >= 1");
    let mut inner_cache: Vec<TruncatedSeries> = Vec::with_capacity(n as usize + 1);
    for a in 0..=n {
        inner_cache.push(inner_partition_sum(a));
    }
    let mut numerator = TruncatedSeries::zero(0);
    for alpha in Partition::enumerate(n) {
        let gcd4 = rational(alpha.gcd_parts() as i64).pow(4);
        let co_parts = n - alpha.num_parts();
        let mut term = TruncatedSeries::monomial(
            0,
            Monomial {
                t: 0,
                u: co_parts,
                v: co_parts,
            },
            Scalar::Rational(gcd4),
        );
        // prod over occurring part sizes i of inner(alpha_i)
        for (_part, mult) in alpha.parts_with_multiplicity() {
            term = term
                .mul(&inner_cache[mult as usize])
                .expect("matching truncation");
        }
        numerator = numerator.add(&term).expect("matching truncation");
    }
    let mut divisor = TruncatedSeries::one(0);
    for _ in 0..2 {
        divisor.mul_binomial_factor(&Scalar::from_int(-1), Monomial { t: 0, u: 1, v: 0 });
        divisor.mul_binomial_factor(&Scalar::from_int(-1), Monomial { t: 0, u: 0, v: 1 });
    }
    let quotient = numerator.div_exact_uv(&divisor, 4 * n + 8)?;
    // h(K_n; u, v) = quotient(-u, -v) must have nonnegative integer entries
    for (mono, c) in quotient.substitute_neg_uv().terms() {
        if !c.is_nonnegative_integer() {
            return Err(KummerError::NonIntegralCoefficient {
                monomial: format!("u^{} v^{}", mono.u, mono.v),
                value: c.canonical_string(),
            });
        }
    }
    Ok(quotient)
}

/// Euler numbers `e(K_n)` for `n = 1..=trunc` out of the equivariant
/// pipeline at the identity, next to the coefficients of
/// `(q d/dq)^3 / 24 of E_2` where `E_2 = 1 - 24 sum sigma_1(n) q^n`.
/// The two sequences agree up to one global sign, which is reported rather
/// than silently fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerEulerNumbers {
    /// `e(K_n)` for `n = 1..=trunc`.
    pub euler: Vec<BigInt>,
    /// Coefficient of `q^n` in `(q d/dq)^3 / 24 of E_2`, i.e.
    /// `-n^3 sigma_1(n)`, for `n = 1..=trunc`.
    pub e2_derivative: Vec<BigInt>,
}

impl KummerEulerNumbers {
    /// `Some(sign)` when `euler[n] = sign * e2_derivative[n]` for all `n`.
    pub fn global_sign(&self) -> Option<i32> {
        if self
            .euler
            .iter()
            .zip(&self.e2_derivative)
            .all(|(a, b)| a == &-b)
        {
            Some(-1)
        } else if self.euler == self.e2_derivative {
            Some(1)
        } else {
            None
        }
    }
}

pub fn kummer_euler_numbers(trunc: u32) -> Result<KummerEulerNumbers, KummerError> {
    assert!(trunc >= 1);
    let surface = SurfaceHodgeCharacter::abelian_symplectic(1)?;
    let series = kummer_equivariant(&surface, trunc)?;
    let specialized = series.slice(0).specialize_u1_v1();
    let mut euler = Vec::with_capacity(trunc as usize);
    for n in 1..=trunc {
        let c = specialized.coefficient(&Monomial::t_power(n));
        let value = c.as_integer().ok_or_else(|| KummerError::NonIntegralCoefficient {
            monomial: format!("t^{}", n),
            value: c.canonical_string(),
        })?;
        euler.push(value);
    }
    let e2_derivative = (1..=trunc)
        .map(|n| {
            // (q d/dq)^3 / 24 maps -24 sigma_1(n) q^n to -n^3 sigma_1(n) q^n
            -BigInt::from(n as u64).pow(3) * BigInt::from(sigma1(n))
        })
        .collect();
    Ok(KummerEulerNumbers {
        euler,
        e2_derivative,
    })
}
