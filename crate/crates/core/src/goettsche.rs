//! Hilbert-scheme generating functions for a surface with a finite-order
//! automorphism.
//!
//! The central object is the equivariant Hodge-Deligne series
//!
//! ```text
//! sum_n E(S^[n]; u, v) t^n
//!   = prod_{m>=1} prod_{p,q} prod_{lambda} (1 - lambda u^{p+m-1} v^{q+m-1} t^m)^{(-1)^{p+q+1}}
//! ```
//!
//! where `lambda` runs over the eigenvalues of the automorphism power on
//! `H^{p,q}(S)`. The virtual character of each coefficient is recorded by
//! computing one slice per power `g^k`; factors with `p + q` even are
//! inverted, factors with `p + q` odd stay polynomial.
//!
//! Three further expansion routes live here because they share the surface
//! input:
//!
//! - [`euler_trace_series`]: `exp(sum_{m,k} Tr(g^k, [e(S)]) t^{mk} / k)`,
//!   the `u = v = 1` shadow of the product formula;
//! - [`goettsche_soergel_hodge_series`]: the non-equivariant Hodge-number
//!   generating function built from binomial coefficients, an independent
//!   route to the identity slice via `E(X; u, v) = h(X; -u, -v)`;
//! - [`symmetric_power_series`]: the graded symmetric-power product formula
//!   for a single space with an endomorphism (`z` is tracked in the `u`
//!   slot).
//!
//! Presets construct the K3 surface with a symplectic automorphism of order
//! `N <= 8` (via the Mathieu character `eps`) and the abelian surface with a
//! symplectic automorphism of order `N` in `{1, 2, 3, 4, 6}` (via the
//! explicit torus action).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use thiserror::Error;

use crate::exactnum::{
    character_to_multiplicities, genuine_multiplicities, rational, CharacterError, Scalar,
    TraceVector,
};
use crate::series::{Monomial, TruncatedSeries};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("unsupported symplectic order {order} for the {family} preset")]
    UnsupportedOrder { family: &'static str, order: u32 },
    #[error("invalid surface character: {0}")]
    Schema(String),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("unknown preset name '{0}' (expected k3:1..8 or abelian:{{1,2,3,4,6}})")]
    UnknownPreset(String),
}

/// The Mathieu character value `eps(n) = 24 / (n prod_{p|n} (1 + 1/p))`.
pub fn mathieu_epsilon(n: u32) -> Rational {
    assert!(n >= 1);
    let mut denom = rational(n as i64);
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            denom *= rational(1) + rational(p as i64).recip();
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        denom *= rational(1) + rational(m as i64).recip();
    }
    rational(24) / denom
}

/// The action of a finite-order automorphism `g` on the Hodge pieces of a
/// surface: for each `(p, q)` with `0 <= p, q <= 2`, the multiset of
/// exponents `a` such that `zeta_N^a` is an eigenvalue of `g` on
/// `H^{p,q}(S)`. Exponents are stored reduced mod `N` and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceHodgeCharacter {
    order: u32,
    hodge: BTreeMap<(u8, u8), Vec<u32>>,
}

impl SurfaceHodgeCharacter {
    /// Validates the schema invariants: indices within the surface range,
    /// `hodge[(0,0)] = {0}`, and Hodge symmetry (the `(q, p)` exponents are
    /// the negations mod `N` of the `(p, q)` exponents). Degenerate,
    /// non-geometric dimension patterns are allowed.
    pub fn new(
        order: u32,
        hodge: BTreeMap<(u8, u8), Vec<u32>>,
    ) -> Result<Self, SurfaceError> {
        if order < 1 {
            return Err(SurfaceError::Schema("order must be positive".into()));
        }
        let mut normalized: BTreeMap<(u8, u8), Vec<u32>> = BTreeMap::new();
        for ((p, q), exps) in hodge {
            if p > 2 || q > 2 {
                return Err(SurfaceError::Schema(format!(
                    "hodge index ({}, {}) outside a surface's range",
                    p, q
                )));
            }
            if exps.is_empty() {
                continue;
            }
            let mut exps: Vec<u32> = exps.into_iter().map(|a| a % order).collect();
            exps.sort_unstable();
            normalized.insert((p, q), exps);
        }
        match normalized.get(&(0, 0)) {
            Some(e) if e == &vec![0] => {}
            _ => {
                return Err(SurfaceError::Schema(
                    "hodge[(0,0)] must be the single trivial eigenvalue".into(),
                ))
            }
        }
        for (&(p, q), exps) in &normalized {
            let mut conj: Vec<u32> = exps.iter().map(|&a| (order - a) % order).collect();
            conj.sort_unstable();
            let mirror = normalized.get(&(q, p)).cloned().unwrap_or_default();
            if mirror != conj {
                return Err(SurfaceError::Schema(format!(
                    "hodge symmetry violated between ({}, {}) and ({}, {})",
                    p, q, q, p
                )));
            }
        }
        Ok(SurfaceHodgeCharacter {
            order,
            hodge: normalized,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Hodge number `h^{p,q}`.
    pub fn h(&self, p: u8, q: u8) -> usize {
        self.hodge.get(&(p, q)).map_or(0, Vec::len)
    }

    pub fn exponents(&self, p: u8, q: u8) -> &[u32] {
        self.hodge.get(&(p, q)).map_or(&[], Vec::as_slice)
    }

    pub fn hodge_entries(&self) -> impl Iterator<Item = ((u8, u8), &[u32])> {
        self.hodge.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    /// Hodge numbers alone, for the non-equivariant expansion path.
    pub fn hodge_numbers(&self) -> BTreeMap<(u8, u8), u32> {
        self.hodge
            .iter()
            .map(|(&k, v)| (k, v.len() as u32))
            .collect()
    }

    /// Trace of `g^k` on `H^{p,q}`.
    pub fn trace_on(&self, p: u8, q: u8, k: u32) -> Scalar {
        let mut acc = Scalar::zero();
        for &a in self.exponents(p, q) {
            acc = acc + Scalar::zeta(self.order, a as i64 * k as i64);
        }
        acc
    }

    /// Traces of all powers on the virtual class
    /// `[e(S)] = sum (-1)^{p+q} [H^{p,q}]`.
    pub fn euler_trace_vector(&self) -> TraceVector {
        let values = (0..self.order)
            .map(|k| {
                let mut acc = Scalar::zero();
                for (&(p, q), _) in &self.hodge {
                    let tr = self.trace_on(p, q, k);
                    if (p + q) % 2 == 0 {
                        acc = acc + tr;
                    } else {
                        acc = acc - tr;
                    }
                }
                acc
            })
            .collect();
        TraceVector::new(self.order, values)
    }

    /// `E(S; u, v)` for `g^k` as a `(u, v)`-polynomial (truncation order 0):
    /// `sum_{p,q} (-1)^{p+q} Tr(g^k, H^{p,q}) u^p v^q`.
    pub fn euler_polynomial(&self, k: u32) -> TruncatedSeries {
        let mut poly = TruncatedSeries::zero(0);
        for (&(p, q), _) in &self.hodge {
            let tr = self.trace_on(p, q, k);
            let signed = if (p + q) % 2 == 0 { tr } else { tr.neg_ref() };
            poly.insert_add(
                Monomial {
                    t: 0,
                    u: p as u32,
                    v: q as u32,
                },
                signed,
            );
        }
        poly
    }

    /// K3 surface with a symplectic automorphism of order `n <= 8`. The
    /// 24-dimensional total cohomology carries the Mathieu character, which
    /// pins the `H^{1,1}` eigenvalue multiset: its power traces are
    /// `eps(ord(g^k)) - 4`.
    pub fn k3_symplectic(n: u32) -> Result<Self, SurfaceError> {
        if !(1..=8).contains(&n) {
            return Err(SurfaceError::UnsupportedOrder {
                family: "k3",
                order: n,
            });
        }
        let traces: Vec<Scalar> = (0..n)
            .map(|k| {
                let ord = n / n.gcd(&k);
                Scalar::Rational(mathieu_epsilon(ord) - rational(4))
            })
            .collect();
        let tv = TraceVector::new(n, traces);
        let mult = genuine_multiplicities(&tv)?;
        let mut h11 = Vec::with_capacity(20);
        for (a, m) in mult.iter().enumerate() {
            let copies = usize::try_from(m.clone()).expect("multiplicity fits usize");
            h11.extend(std::iter::repeat(a as u32).take(copies));
        }
        let hodge = BTreeMap::from([
            ((0, 0), vec![0]),
            ((2, 0), vec![0]),
            ((0, 2), vec![0]),
            ((1, 1), h11),
            ((2, 2), vec![0]),
        ]);
        SurfaceHodgeCharacter::new(n, hodge)
    }

    /// Abelian surface with a symplectic automorphism of order
    /// `n in {1, 2, 3, 4, 6}` fixing the origin. `H^{1,0}` has eigenvalues
    /// `zeta_n, zeta_n^{-1}` (the torus action), and every other Hodge piece
    /// is a wedge or tensor of `H^{1,0}` and its conjugate.
    pub fn abelian_symplectic(n: u32) -> Result<Self, SurfaceError> {
        if ![1, 2, 3, 4, 6].contains(&n) {
            return Err(SurfaceError::UnsupportedOrder {
                family: "abelian",
                order: n,
            });
        }
        let minus_one = (n - 1) % n;
        let two = 2 % n;
        let minus_two = (2 * n - 2) % n;
        let hodge = BTreeMap::from([
            ((0, 0), vec![0]),
            ((1, 0), vec![1 % n, minus_one]),
            ((0, 1), vec![1 % n, minus_one]),
            ((2, 0), vec![0]),
            ((0, 2), vec![0]),
            ((1, 1), vec![0, 0, two, minus_two]),
            ((2, 1), vec![1 % n, minus_one]),
            ((1, 2), vec![1 % n, minus_one]),
            ((2, 2), vec![0]),
        ]);
        SurfaceHodgeCharacter::new(n, hodge)
    }

    /// Resolves `k3:N` / `abelian:N` preset names.
    pub fn from_preset_name(name: &str) -> Result<Self, SurfaceError> {
        let (family, order) = name
            .split_once(':')
            .ok_or_else(|| SurfaceError::UnknownPreset(name.to_string()))?;
        let order: u32 = order
            .parse()
            .map_err(|_| SurfaceError::UnknownPreset(name.to_string()))?;
        match family {
            "k3" => Self::k3_symplectic(order),
            "abelian" => Self::abelian_symplectic(order),
            _ => Err(SurfaceError::UnknownPreset(name.to_string())),
        }
    }

    /// Parses the surface input schema
    /// `{"order": N, "hodge": {"p,q": [exponent, ...], ...}}`.
    pub fn from_json_str(input: &str) -> Result<Self, SurfaceError> {
        #[derive(serde::Deserialize)]
        struct Raw {
            order: u32,
            hodge: BTreeMap<String, Vec<u32>>,
        }
        let raw: Raw = serde_json::from_str(input)
            .map_err(|e| SurfaceError::Schema(format!("invalid surface JSON: {}", e)))?;
        let mut hodge = BTreeMap::new();
        for (key, exps) in raw.hodge {
            let (p, q) = key
                .split_once(',')
                .ok_or_else(|| SurfaceError::Schema(format!("bad hodge key '{}'", key)))?;
            let parse = |s: &str| -> Result<u8, SurfaceError> {
                s.trim()
                    .parse()
                    .map_err(|_| SurfaceError::Schema(format!("bad hodge key '{}'", key)))
            };
            hodge.insert((parse(p)?, parse(q)?), exps);
        }
        SurfaceHodgeCharacter::new(raw.order, hodge)
    }
}

/// One truncated `(t, u, v)` series per power `g^k`: the traces of a
/// series with coefficients in virtual representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantSeries {
    order: u32,
    slices: Vec<TruncatedSeries>,
}

impl EquivariantSeries {
    pub fn new(order: u32, slices: Vec<TruncatedSeries>) -> Self {
        assert_eq!(slices.len(), order as usize);
        EquivariantSeries { order, slices }
    }

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

    /// The trace vector of the coefficient at one monomial, across all
    /// powers (E-convention: signs `(-1)^{p+q}` included).
    pub fn trace_vector_at(&self, mono: Monomial) -> TraceVector {
        TraceVector::new(
            self.order,
            self.slices
                .iter()
                .map(|s| s.coefficient(&mono))
                .collect(),
        )
    }

    /// Multiplicities of the eigencharacters in the virtual coefficient at
    /// one monomial, E-signs removed so that a genuine representation
    /// `H^{p,q}` yields nonnegative integers.
    pub fn representation_multiplicities_at(
        &self,
        mono: Monomial,
    ) -> Result<Vec<BigInt>, CharacterError> {
        let mut tv = self.trace_vector_at(mono);
        if (mono.u + mono.v) % 2 == 1 {
            tv = TraceVector::new(
                self.order,
                tv.values().iter().map(Scalar::neg_ref).collect(),
            );
        }
        character_to_multiplicities(&tv)
    }

    /// Specializes every slice at `u = v = 1`.
    pub fn specialize_euler(&self) -> EquivariantSeries {
        EquivariantSeries {
            order: self.order,
            slices: self.slices.iter().map(TruncatedSeries::specialize_u1_v1).collect(),
        }
    }

    pub fn truncate(&self, trunc: u32) -> EquivariantSeries {
        EquivariantSeries {
            order: self.order,
            slices: self.slices.iter().map(|s| s.truncate(trunc)).collect(),
        }
    }
}

/// The `m`-th factor of the product formula for the power `g^k`, truncated
/// at `t^trunc`:
/// `prod_{p,q} prod_{a} (1 - zeta_N^{ak} u^{p+m-1} v^{q+m-1} t^m)^{(-1)^{p+q+1}}`.
pub fn hilbert_product_factor(
    surface: &SurfaceHodgeCharacter,
    k: u32,
    m: u32,
    trunc: u32,
) -> TruncatedSeries {
    let mut factor = TruncatedSeries::one(trunc);
    multiply_factor_into(&mut factor, surface, k, m, false);
    factor
}

/// Multiplies the `m`-th formula factor into `acc` in place. With
/// `euler_specialized` the `u, v` exponents are dropped (the `u = v = 1`
/// evaluation of the same product).
fn multiply_factor_into(
    acc: &mut TruncatedSeries,
    surface: &SurfaceHodgeCharacter,
    k: u32,
    m: u32,
    euler_specialized: bool,
) {
    let n = surface.order();
    for ((p, q), exps) in surface.hodge_entries() {
        let mono = if euler_specialized {
            Monomial::t_power(m)
        } else {
            Monomial {
                t: m,
                u: p as u32 + m - 1,
                v: q as u32 + m - 1,
            }
        };
        let inverted = (p + q) % 2 == 0;
        for &a in exps {
            let lambda = Scalar::zeta(n, a as i64 * k as i64);
            if inverted {
                acc.mul_geometric_factor(&lambda, mono);
            } else {
                acc.mul_binomial_factor(&lambda.neg_ref(), mono);
            }
        }
    }
}

fn hilbert_slice(
    surface: &SurfaceHodgeCharacter,
    k: u32,
    trunc: u32,
    euler_specialized: bool,
) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(trunc);
    for m in 1..=trunc.max(1) {
        if m > trunc {
            break;
        }
        multiply_factor_into(&mut acc, surface, k, m, euler_specialized);
    }
    acc
}

/// The equivariant Hilbert-scheme series: one `(t, u, v)` slice per power
/// of the automorphism, each the full product over `m <= trunc` (factor `m`
/// is congruent to 1 mod `t^m`, so larger `m` cannot contribute).
pub fn hilbert_equivariant(surface: &SurfaceHodgeCharacter, trunc: u32) -> EquivariantSeries {
    let slices = (0..surface.order())
        .map(|k| hilbert_slice(surface, k, trunc, false))
        .collect();
    EquivariantSeries::new(surface.order(), slices)
}

/// The same product evaluated at `u = v = 1` factor by factor; equal to
/// `hilbert_equivariant(...).specialize_euler()` and cheap enough for deep
/// truncation orders.
pub fn hilbert_euler_product(surface: &SurfaceHodgeCharacter, trunc: u32) -> EquivariantSeries {
    let slices = (0..surface.order())
        .map(|k| hilbert_slice(surface, k, trunc, true))
        .collect();
    EquivariantSeries::new(surface.order(), slices)
}

/// `exp(sum_{m,j} Tr(g^{kj}, [e(S)]) t^{mj} / j)` for each `k`: the trace
/// of `g^k` on `sum_n [e(S^[n])] t^n`.
pub fn euler_trace_series(traces: &TraceVector, trunc: u32) -> EquivariantSeries {
    let order = traces.order();
    let slices = (0..order)
        .map(|k| {
            let mut arg = TruncatedSeries::zero(trunc);
            for j in 1..=trunc.max(1) {
                if j > trunc {
                    break;
                }
                let c = traces.value_at_power(k as u64 * j as u64);
                if c.is_zero() {
                    continue;
                }
                let coeff = c.div_rational(&rational(j as i64));
                let mut m = 1;
                while m * j <= trunc {
                    arg.insert_add(Monomial::t_power(m * j), coeff.clone());
                    m += 1;
                }
            }
            arg.exp().expect("trace sum has no constant term")
        })
        .collect();
    EquivariantSeries::new(order, slices)
}

/// The Hodge-number generating function of the Hilbert schemes,
/// `sum_n h(S^[n]; u, v) t^n`, expanded through binomial coefficients:
/// each `(p, q)` factor is `(1 - x)^{-h}` (for `p + q` even) or
/// `(1 + x)^{h}` (odd) with `x = u^{p+m-1} v^{q+m-1} t^m`. This is a route
/// to the identity slice independent of the eigenvalue products, related by
/// `E(X; u, v) = h(X; -u, -v)`.
pub fn goettsche_soergel_hodge_series(
    hodge_numbers: &BTreeMap<(u8, u8), u32>,
    trunc: u32,
) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(trunc);
    for m in 1..=trunc.max(1) {
        if m > trunc {
            break;
        }
        for (&(p, q), &h) in hodge_numbers {
            if h == 0 {
                continue;
            }
            let mono = Monomial {
                t: m,
                u: p as u32 + m - 1,
                v: q as u32 + m - 1,
            };
            let mut factor = TruncatedSeries::one(trunc);
            let steps = trunc / m;
            if (p + q) % 2 == 0 {
                // (1 - x)^{-h} = sum_j binom(h - 1 + j, j) x^j
                for j in 1..=steps {
                    let coeff = binomial(BigInt::from(h as u64 + j as u64 - 1), BigInt::from(j));
                    factor.insert_add(
                        Monomial {
                            t: mono.t * j,
                            u: mono.u * j,
                            v: mono.v * j,
                        },
                        Scalar::from_integer(coeff),
                    );
                }
            } else {
                // (1 + x)^{h} = sum_j binom(h, j) x^j
                for j in 1..=steps.min(h) {
                    let coeff = binomial(BigInt::from(h), BigInt::from(j));
                    factor.insert_add(
                        Monomial {
                            t: mono.t * j,
                            u: mono.u * j,
                            v: mono.v * j,
                        },
                        Scalar::from_integer(coeff),
                    );
                }
            }
            acc = acc.mul(&factor).expect("matching truncation");
        }
    }
    acc
}

/// The graded symmetric-power series of a space with an endomorphism:
/// `prod_j prod_{lambda in eigen[j]} (1 - lambda z^j t)^{(-1)^{j+1}}`,
/// with `z` tracked in the `u` slot. The coefficient of `t^k` collects the
/// signed traces on the cohomology of the `k`-th symmetric power.
pub fn symmetric_power_series(
    graded_eigenvalues: &BTreeMap<u32, Vec<Scalar>>,
    trunc: u32,
) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(trunc);
    for (&degree, eigenvalues) in graded_eigenvalues {
        let mono = Monomial {
            t: 1,
            u: degree,
            v: 0,
        };
        for lambda in eigenvalues {
            if degree % 2 == 0 {
                acc.mul_geometric_factor(lambda, mono);
            } else {
                acc.mul_binomial_factor(&lambda.neg_ref(), mono);
            }
        }
    }
    acc
}
