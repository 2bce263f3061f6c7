//! Characters of cyclic groups recorded by their power traces, and the two
//! kernels operating on them: Newton's identities (power sums to elementary
//! symmetric functions / exterior powers) and the discrete Fourier transform
//! over `Z/N` that decomposes a trace vector into eigencharacter
//! multiplicities.

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use super::scalar::Scalar;
use crate::exactnum::rational;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("multiplicity of eigencharacter {index} is not a rational integer ({value})")]
    NonIntegralMultiplicity { index: usize, value: String },
    #[error("multiplicity of eigencharacter {index} is negative ({value})")]
    NegativeMultiplicity { index: usize, value: BigInt },
}

/// The traces of all powers `g^0, ..., g^{N-1}` of an order-`N` element on a
/// (virtual) representation. `values[0]` is the (virtual) dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceVector {
    order: u32,
    values: Vec<Scalar>,
}

impl TraceVector {
    pub fn new(order: u32, values: Vec<Scalar>) -> Self {
        assert!(order >= 1, "order must be positive");
        assert_eq!(
            values.len(),
            order as usize,
            "trace vector must hold one value per power"
        );
        TraceVector { order, values }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Trace of `g^k` for arbitrary `k`, reading the stored value at
    /// `k mod order`.
    pub fn value_at_power(&self, k: u64) -> &Scalar {
        &self.values[(k % self.order as u64) as usize]
    }

    /// Synthesizes the trace vector of `sum_a m_a * chi_a` where `chi_a` is
    /// the character `g -> zeta_N^a`.
    pub fn from_multiplicities(order: u32, multiplicities: &[BigInt]) -> Self {
        assert_eq!(multiplicities.len(), order as usize);
        let values = (0..order)
            .map(|k| {
                let mut acc = Scalar::zero();
                for (a, m) in multiplicities.iter().enumerate() {
                    let term = Scalar::zeta(order, a as i64 * k as i64)
                        .mul_rational(&Rational::from_integer(m.clone()));
                    acc = acc + term;
                }
                acc
            })
            .collect();
        TraceVector::new(order, values)
    }
}

/// Decomposes a trace vector into eigencharacter multiplicities by the
/// inverse discrete Fourier transform over `Z/N`:
/// `m_a = (1/N) sum_k values[k] zeta_N^{-ak}`.
///
/// Negative multiplicities are allowed here (virtual characters); callers
/// that require a genuine representation use [`genuine_multiplicities`].
pub fn character_to_multiplicities(tv: &TraceVector) -> Result<Vec<BigInt>, CharacterError> {
    let n = tv.order;
    let inv_n = rational(n as i64).recip();
    let mut out = Vec::with_capacity(n as usize);
    for a in 0..n {
        let mut acc = Scalar::zero();
        for (k, value) in tv.values.iter().enumerate() {
            let phase = Scalar::zeta(n, -(a as i64) * k as i64);
            acc = acc + value.mul_ref(&phase);
        }
        let m = acc.mul_rational(&inv_n);
        match m.as_integer() {
            Some(i) => out.push(i),
            None => {
                return Err(CharacterError::NonIntegralMultiplicity {
                    index: a as usize,
                    value: m.canonical_string(),
                })
            }
        }
    }
    Ok(out)
}

/// As [`character_to_multiplicities`], but additionally rejects negative
/// multiplicities.
pub fn genuine_multiplicities(tv: &TraceVector) -> Result<Vec<BigInt>, CharacterError> {
    let m = character_to_multiplicities(tv)?;
    for (index, value) in m.iter().enumerate() {
        if value.is_negative() {
            return Err(CharacterError::NegativeMultiplicity {
                index,
                value: value.clone(),
            });
        }
    }
    Ok(m)
}

/// Newton's identities: from the power-sum traces `p_1, ..., p_d` of an
/// endomorphism of a `d`-dimensional space, computes the elementary symmetric
/// functions `e_1, ..., e_d` of its eigenvalues, i.e. the traces on the
/// exterior powers. `e_d` is the determinant.
pub fn newton_exterior_powers(power_traces: &[Scalar]) -> Vec<Scalar> {
    let d = power_traces.len();
    let mut e: Vec<Scalar> = Vec::with_capacity(d + 1);
    e.push(Scalar::one());
    for k in 1..=d {
        // e_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
        let mut acc = Scalar::zero();
        for i in 1..=k {
            let term = e[k - i].mul_ref(&power_traces[i - 1]);
            if i % 2 == 1 {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
        e.push(acc.div_rational(&rational(k as i64)));
    }
    e.remove(0);
    e
}
