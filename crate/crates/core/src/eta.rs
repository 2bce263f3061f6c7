//! Dedekind eta quotients as structured data, their exact `t`-expansions,
//! and the Moebius (inclusion-exclusion) derivation of eta exponents from
//! order-dependent trace data.
//!
//! With `eta(t) = t^{1/24} prod_{n>=1} (1 - t^n)`, a quotient
//! `t^s * prod_d eta(t^d)^{e_d}` expands to an honest power series exactly
//! when the net `t`-exponent `s + sum_d d*e_d / 24` is a nonnegative
//! integer; the fractional bookkeeping stays symbolic (tracked over 24) and
//! is validated at expansion time.
//!
//! The derivation direction: when the trace of `g^k` on `[e(S)]` depends
//! only on `gcd(k, N)`, say `c(gcd(k, N))`, then
//! `exp(sum_{m,k} c(gcd(k,N)) t^{mk} / k)` is the eta quotient with
//! exponents `e_d = -b_d / d`, where `b_d = sum_{d'|d} mu(d/d') c(d')` is
//! the Moebius inversion of `c` along the divisor lattice of `N`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{rational, Scalar};
use crate::partitions::{divisors, moebius};
use crate::series::{Monomial, TruncatedSeries};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EtaError {
    #[error("net t-exponent {numerator}/24 is fractional")]
    FractionalPrefactor { numerator: i64 },
    #[error("net t-exponent {net} is negative")]
    NegativePrefactor { net: i64 },
    #[error("derived exponent at scale {scale} is not an integer ({value})")]
    NonIntegralExponent { scale: u32, value: String },
    #[error("trace map is missing divisor {divisor}")]
    MissingTrace { divisor: u32 },
}

/// A finite eta quotient `t^s * prod_d eta(t^d)^{e_d}` with distinct scales.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    factors: BTreeMap<u32, i64>,
    extra_t_power: i64,
}

impl EtaQuotient {
    pub fn new(factors: impl IntoIterator<Item = (u32, i64)>, extra_t_power: i64) -> Self {
        let mut map = BTreeMap::new();
        for (scale, exponent) in factors {
            assert!(scale >= 1, "eta scale must be positive");
            if exponent != 0 {
                let slot = map.entry(scale).or_insert(0i64);
                *slot += exponent;
                if *slot == 0 {
                    map.remove(&scale);
                }
            }
        }
        EtaQuotient {
            factors: map,
            extra_t_power,
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.factors.iter().map(|(&d, &e)| (d, e))
    }

    pub fn exponent_at(&self, scale: u32) -> i64 {
        self.factors.get(&scale).copied().unwrap_or(0)
    }

    pub fn extra_t_power(&self) -> i64 {
        self.extra_t_power
    }

    /// `24 s + sum_d d e_d`: the net `t`-exponent times 24.
    pub fn net_t_exponent_times_24(&self) -> i64 {
        24 * self.extra_t_power
            + self
                .factors
                .iter()
                .map(|(&d, &e)| d as i64 * e)
                .sum::<i64>()
    }

    /// Scale-wise product of two quotients (exponents add, prefactors add).
    pub fn mul(&self, other: &EtaQuotient) -> EtaQuotient {
        EtaQuotient::new(
            self.factors().chain(other.factors()),
            self.extra_t_power + other.extra_t_power,
        )
    }

    /// Exact expansion `t^net * prod_d prod_{n>=1} (1 - t^{dn})^{e_d}`
    /// truncated at `t^trunc`.
    pub fn expand(&self, trunc: u32) -> Result<TruncatedSeries, EtaError> {
        let numerator = self.net_t_exponent_times_24();
        if numerator % 24 != 0 {
            return Err(EtaError::FractionalPrefactor { numerator });
        }
        let net = numerator / 24;
        if net < 0 {
            return Err(EtaError::NegativePrefactor { net });
        }
        let net = net as u32;
        let mut series = if net > trunc {
            return Ok(TruncatedSeries::zero(trunc));
        } else {
            TruncatedSeries::monomial(trunc, Monomial::t_power(net), Scalar::one())
        };
        for (&scale, &exponent) in &self.factors {
            let mut n = 1u32;
            while scale * n <= trunc {
                let mono = Monomial::t_power(scale * n);
                if exponent > 0 {
                    for _ in 0..exponent {
                        series.mul_binomial_factor(&Scalar::from_int(-1), mono);
                    }
                } else {
                    for _ in 0..(-exponent) {
                        series.mul_geometric_factor(&Scalar::one(), mono);
                    }
                }
                n += 1;
            }
        }
        Ok(series)
    }
}

/// Derives the eta quotient equal to
/// `exp(sum_{m>=1} sum_{k>=1} c(gcd(k, order)) t^{mk} / k)`
/// from the trace map `c` (one rational per divisor of `order`).
///
/// The exponent at scale `d` is `-b_d / d` with `b_d` the Moebius inversion
/// of `c`; the `t`-prefactor is `c(order) / 24`. Non-integral exponents or a
/// fractional prefactor signal inconsistent trace data.
pub fn eta_from_order_traces(
    order: u32,
    traces: &BTreeMap<u32, Rational>,
) -> Result<EtaQuotient, EtaError> {
    assert!(order >= 1);
    let divs = divisors(order);
    for &d in &divs {
        if !traces.contains_key(&d) {
            return Err(EtaError::MissingTrace { divisor: d });
        }
    }
    let mut factors = Vec::new();
    for &d in &divs {
        let mut b = Rational::zero();
        for &dp in &divisors(d) {
            b += traces[&dp].clone() * rational(moebius(d / dp));
        }
        let e = -b / rational(d as i64);
        if !e.is_integer() {
            return Err(EtaError::NonIntegralExponent {
                scale: d,
                value: e.to_string(),
            });
        }
        let e = i64::try_from(e.to_integer()).expect("eta exponent out of range");
        if e != 0 {
            factors.push((d, e));
        }
    }
    // prefactor s with 24 s = -sum d e_d = c(order); integral exponents make
    // c(order) an integer, so only divisibility by 24 remains to check
    let c_order = i64::try_from(traces[&order].to_integer()).expect("trace out of range");
    if c_order % 24 != 0 {
        return Err(EtaError::FractionalPrefactor { numerator: c_order });
    }
    Ok(EtaQuotient::new(factors, c_order / 24))
}

impl fmt::Display for EtaQuotient {
    /// Renders in the table style, e.g. `t/eta^4(t) eta^2(t^2) eta^4(t^4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let piece = |scale: u32, exp: i64| -> String {
            let arg = if scale == 1 {
                "t".to_string()
            } else {
                format!("t^{}", scale)
            };
            if exp == 1 {
                format!("eta({})", arg)
            } else {
                format!("eta^{}({})", exp, arg)
            }
        };
        let mut numerator: Vec<String> = Vec::new();
        if self.extra_t_power == 1 {
            numerator.push("t".to_string());
        } else if self.extra_t_power != 0 {
            numerator.push(format!("t^{}", self.extra_t_power));
        }
        for (&d, &e) in &self.factors {
            if e > 0 {
                numerator.push(piece(d, e));
            }
        }
        let denominator: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, &e)| e < 0)
            .map(|(&d, &e)| piece(d, e.abs()))
            .collect();
        let num = if numerator.is_empty() {
            "1".to_string()
        } else {
            numerator.join(" ")
        };
        if denominator.is_empty() {
            write!(f, "{}", num)
        } else {
            write!(f, "{}/{}", num, denominator.join(" "))
        }
    }
}
