//! Sparse truncated power series in `t, u, v` over exact scalars.
//!
//! Truncation is by `t`-degree only: `u` and `v` exponents are unbounded but
//! finitely generated at each fixed `t`-degree, which is the grading of all
//! the generating functions computed here. Products of the shape
//! `(1 + c x^m)` and `(1 - c x^m)^{-1}` (the building blocks of every
//! infinite product in this crate) have dedicated in-place routines that run
//! in time linear in the number of stored terms.

mod tagged;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{rational, Scalar};
use crate::Rational;

pub use tagged::{GcdTaggedSeries, TaggedMonomial};

/// Exponent triple of a stored term. The derived order (lexicographic in
/// `(t, u, v)`) is the canonical term order used for serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    pub t: u32,
    pub u: u32,
    pub v: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { t: 0, u: 0, v: 0 };

    pub fn t_power(t: u32) -> Self {
        Monomial { t, u: 0, v: 0 }
    }

    fn checked_add(&self, other: &Monomial) -> Monomial {
        Monomial {
            t: self.t + other.t,
            u: self.u + other.u,
            v: self.v + other.v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("constant term is not a unit rational")]
    NonUnitConstantTerm,
    #[error("constant term violates the exp/log precondition")]
    BadConstantTerm,
    #[error("quotient is not a polynomial in u, v (total degree exceeded {0})")]
    NonPolynomialQuotient(u32),
}

/// A formal power series truncated at `t^trunc` (inclusive), with sparse
/// exact coefficients. Zero coefficients are never stored and terms with
/// `t`-exponent above the truncation order are discarded eagerly, so results
/// do not depend on evaluation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    trunc: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Canonical JSON form of a term (coefficients rendered as exact strings).
#[derive(Serialize, Debug, Clone)]
pub struct TermJson {
    pub t: u32,
    pub u: u32,
    pub v: u32,
    pub coeff: String,
}

/// Canonical JSON form of a series: terms sorted lexicographically by
/// exponents.
#[derive(Serialize, Debug, Clone)]
pub struct SeriesJson {
    pub trunc: u32,
    pub terms: Vec<TermJson>,
}

type UvMap = BTreeMap<(u32, u32), Scalar>;

fn uv_insert_add(map: &mut UvMap, key: (u32, u32), value: Scalar) {
    if value.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().add_ref(&value);
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// `acc += scale * (a * b)` on (u, v)-polynomials.
fn uv_mul_add(acc: &mut UvMap, a: &UvMap, b: &UvMap, scale: &Rational) {
    for ((ua, va), ca) in a {
        for ((ub, vb), cb) in b {
            let c = ca.mul_ref(cb).mul_rational(scale);
            uv_insert_add(acc, (ua + ub, va + vb), c);
        }
    }
}

impl TruncatedSeries {
    pub fn zero(trunc: u32) -> Self {
        TruncatedSeries {
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(trunc: u32) -> Self {
        Self::constant(trunc, Scalar::one())
    }

    pub fn constant(trunc: u32, value: Scalar) -> Self {
        let mut s = Self::zero(trunc);
        s.insert_add(Monomial::ONE, value);
        s
    }

    pub fn monomial(trunc: u32, mono: Monomial, value: Scalar) -> Self {
        let mut s = Self::zero(trunc);
        s.insert_add(mono, value);
        s
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn insert_add(&mut self, mono: Monomial, value: Scalar) {
        if mono.t > self.trunc || value.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&value);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_trunc(&self, other: &Self) -> Result<(), SeriesError> {
        if self.trunc != other.trunc {
            Err(SeriesError::TruncationMismatch(self.trunc, other.trunc))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_trunc(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.neg_ref()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            return Self::zero(self.trunc);
        }
        let mut out = Self::zero(self.trunc);
        for (m, c) in &self.terms {
            out.insert_add(*m, c.mul_ref(factor));
        }
        out
    }

    /// Sparse product, truncated at `t^trunc`.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_trunc(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero(self.trunc);
        for (ma, ca) in &small.terms {
            if ma.t > self.trunc {
                continue;
            }
            let limit = Monomial {
                t: self.trunc - ma.t,
                u: u32::MAX,
                v: u32::MAX,
            };
            for (mb, cb) in large.terms.range(..=limit) {
                out.insert_add(ma.checked_add(mb), ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    /// In-place multiplication by the binomial `1 + c * x^mono`.
    pub fn mul_binomial_factor(&mut self, c: &Scalar, mono: Monomial) {
        if c.is_zero() {
            return;
        }
        if mono == Monomial::ONE {
            *self = self.scale(&Scalar::one().add_ref(c));
            return;
        }
        let shifted: Vec<(Monomial, Scalar)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.t + mono.t <= self.trunc)
            .map(|(m, coeff)| (m.checked_add(&mono), coeff.mul_ref(c)))
            .collect();
        for (m, coeff) in shifted {
            self.insert_add(m, coeff);
        }
    }

    /// In-place multiplication by the inverted binomial
    /// `(1 - c * x^mono)^{-1} = sum_j c^j x^{j * mono}`.
    /// Requires `mono.t >= 1` so that the expansion truncates.
    pub fn mul_geometric_factor(&mut self, c: &Scalar, mono: Monomial) {
        assert!(mono.t >= 1, "geometric factor needs positive t-degree");
        if c.is_zero() {
            return;
        }
        let mut level = 0u32;
        while level + mono.t <= self.trunc {
            let lo = Monomial {
                t: level,
                u: 0,
                v: 0,
            };
            let hi = Monomial {
                t: level,
                u: u32::MAX,
                v: u32::MAX,
            };
            // terms already include feedback from lower levels
            let sources: Vec<(Monomial, Scalar)> = self
                .terms
                .range(lo..=hi)
                .map(|(m, coeff)| (*m, coeff.clone()))
                .collect();
            for (m, coeff) in sources {
                self.insert_add(m.checked_add(&mono), coeff.mul_ref(c));
            }
            level += 1;
        }
    }

    /// Splits into `(u, v)`-polynomial coefficients by `t`-degree.
    fn t_slice_maps(&self) -> Vec<UvMap> {
        let mut slices = vec![UvMap::new(); self.trunc as usize + 1];
        for (m, c) in &self.terms {
            slices[m.t as usize].insert((m.u, m.v), c.clone());
        }
        slices
    }

    fn from_t_slice_maps(trunc: u32, slices: Vec<UvMap>) -> Self {
        let mut out = Self::zero(trunc);
        for (t, slice) in slices.into_iter().enumerate() {
            for ((u, v), c) in slice {
                out.insert_add(
                    Monomial {
                        t: t as u32,
                        u,
                        v,
                    },
                    c,
                );
            }
        }
        out
    }

    /// Multiplicative inverse. The constant term (the whole `t^0` slice)
    /// must be a single nonzero rational.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let a = self.t_slice_maps();
        let unit = match a[0].get(&(0, 0)) {
            Some(c) if a[0].len() == 1 => {
                c.as_rational().cloned().ok_or(SeriesError::NonUnitConstantTerm)?
            }
            _ => return Err(SeriesError::NonUnitConstantTerm),
        };
        if unit.is_zero() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let inv_unit = unit.recip();
        let mut b = vec![UvMap::new(); a.len()];
        b[0].insert((0, 0), Scalar::Rational(inv_unit.clone()));
        for n in 1..a.len() {
            let mut acc = UvMap::new();
            for k in 1..=n {
                if a[k].is_empty() || b[n - k].is_empty() {
                    continue;
                }
                uv_mul_add(&mut acc, &a[k], &b[n - k], &-inv_unit.clone());
            }
            b[n] = acc;
        }
        Ok(Self::from_t_slice_maps(self.trunc, b))
    }

    /// Exponential. Every term of the argument must have positive
    /// `t`-degree (the `t^0` slice must vanish).
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let a = self.t_slice_maps();
        if !a[0].is_empty() {
            return Err(SeriesError::BadConstantTerm);
        }
        let mut b = vec![UvMap::new(); a.len()];
        b[0].insert((0, 0), Scalar::one());
        for n in 1..a.len() {
            // n * b_n = sum_{k=1}^{n} k * a_k * b_{n-k}
            let mut acc = UvMap::new();
            for k in 1..=n {
                if a[k].is_empty() || b[n - k].is_empty() {
                    continue;
                }
                uv_mul_add(&mut acc, &a[k], &b[n - k], &rational(k as i64));
            }
            let inv_n = rational(n as i64).recip();
            b[n] = acc
                .into_iter()
                .map(|(key, c)| (key, c.mul_rational(&inv_n)))
                .collect();
        }
        Ok(Self::from_t_slice_maps(self.trunc, b))
    }

    /// Logarithm. The `t^0` slice must be exactly the constant 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let a = self.t_slice_maps();
        let ok = a[0].len() == 1 && matches!(a[0].get(&(0, 0)), Some(c) if c.is_one());
        if !ok {
            return Err(SeriesError::BadConstantTerm);
        }
        let mut c = vec![UvMap::new(); a.len()];
        for n in 1..a.len() {
            // c_n = a_n - (1/n) sum_{k=1}^{n-1} k * c_k * a_{n-k}
            let mut acc = UvMap::new();
            for k in 1..n {
                if c[k].is_empty() || a[n - k].is_empty() {
                    continue;
                }
                uv_mul_add(&mut acc, &c[k], &a[n - k], &rational(k as i64));
            }
            let inv_n = rational(n as i64).recip();
            let mut slice = a[n].clone();
            for (key, value) in acc {
                let delta = value.mul_rational(&inv_n).neg_ref();
                uv_insert_add(&mut slice, key, delta);
            }
            c[n] = slice;
        }
        Ok(Self::from_t_slice_maps(self.trunc, c))
    }

    /// Substitutes `t -> t^m`; the truncation order is preserved, so terms
    /// pushed past it are discarded.
    pub fn substitute_t_power(&self, m: u32) -> Self {
        assert!(m >= 1, "substitution power must be positive");
        let mut out = Self::zero(self.trunc);
        for (mono, c) in &self.terms {
            match mono.t.checked_mul(m) {
                Some(t) if t <= self.trunc => out.insert_add(
                    Monomial {
                        t,
                        u: mono.u,
                        v: mono.v,
                    },
                    c.clone(),
                ),
                _ => {}
            }
        }
        out
    }

    /// Specializes `u = v = 1`, collapsing to a series in `t` alone.
    pub fn specialize_u1_v1(&self) -> Self {
        let mut out = Self::zero(self.trunc);
        for (mono, c) in &self.terms {
            out.insert_add(Monomial::t_power(mono.t), c.clone());
        }
        out
    }

    /// Substitutes `u -> -u`, `v -> -v`.
    pub fn substitute_neg_uv(&self) -> Self {
        let mut out = Self::zero(self.trunc);
        for (mono, c) in &self.terms {
            let value = if (mono.u + mono.v) % 2 == 1 {
                c.neg_ref()
            } else {
                c.clone()
            };
            out.insert_add(*mono, value);
        }
        out
    }

    /// Swaps the roles of `u` and `v`.
    pub fn swap_uv(&self) -> Self {
        let mut out = Self::zero(self.trunc);
        for (mono, c) in &self.terms {
            out.insert_add(
                Monomial {
                    t: mono.t,
                    u: mono.v,
                    v: mono.u,
                },
                c.clone(),
            );
        }
        out
    }

    /// Conjugates every coefficient.
    pub fn conjugate_coefficients(&self) -> Self {
        TruncatedSeries {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.conjugate()))
                .collect(),
        }
    }

    /// The coefficient of `t^n` as a `(u, v)`-polynomial (a series with
    /// truncation order 0).
    pub fn t_coefficient(&self, n: u32) -> Self {
        let mut out = Self::zero(0);
        if n > self.trunc {
            return out;
        }
        let lo = Monomial { t: n, u: 0, v: 0 };
        let hi = Monomial {
            t: n,
            u: u32::MAX,
            v: u32::MAX,
        };
        for (mono, c) in self.terms.range(lo..=hi) {
            out.insert_add(
                Monomial {
                    t: 0,
                    u: mono.u,
                    v: mono.v,
                },
                c.clone(),
            );
        }
        out
    }

    /// Re-truncates to a smaller order.
    pub fn truncate(&self, trunc: u32) -> Self {
        let mut out = Self::zero(trunc);
        for (mono, c) in &self.terms {
            out.insert_add(*mono, c.clone());
        }
        out
    }

    pub fn max_uv_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.u + m.v)
            .max()
            .unwrap_or(0)
    }

    /// Exact division by a pure `(u, v)`-polynomial (a series supported on
    /// `t^0`) whose constant term is a unit rational. Division is performed
    /// slice by slice in `t` by eliminating lowest-total-degree monomials;
    /// if a quotient slice fails to be a polynomial the total degree climbs
    /// past `max_uv_total` and the division reports
    /// [`SeriesError::NonPolynomialQuotient`].
    pub fn div_exact_uv(
        &self,
        divisor: &Self,
        max_uv_total: u32,
    ) -> Result<Self, SeriesError> {
        let mut div_terms: Vec<((u32, u32), Scalar)> = Vec::new();
        for (m, c) in &divisor.terms {
            if m.t != 0 {
                return Err(SeriesError::NonUnitConstantTerm);
            }
            div_terms.push(((m.u, m.v), c.clone()));
        }
        let unit = divisor
            .terms
            .get(&Monomial::ONE)
            .and_then(|c| c.as_rational().cloned())
            .ok_or(SeriesError::NonUnitConstantTerm)?;
        if unit.is_zero() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let inv_unit = unit.recip();

        let slices = self.t_slice_maps();
        let mut out_slices = Vec::with_capacity(slices.len());
        for mut rem in slices {
            let mut quot = UvMap::new();
            while let Some(&key) = rem
                .keys()
                .min_by_key(|(u, v)| (u + v, *u))
            {
                if key.0 + key.1 > max_uv_total {
                    return Err(SeriesError::NonPolynomialQuotient(max_uv_total));
                }
                let c = rem
                    .remove(&key)
                    .expect("selected key present")
                    .mul_rational(&inv_unit);
                for ((du, dv), dc) in &div_terms {
                    if *du == 0 && *dv == 0 {
                        continue; // already removed above
                    }
                    uv_insert_add(
                        &mut rem,
                        (key.0 + du, key.1 + dv),
                        c.mul_ref(dc).neg_ref(),
                    );
                }
                quot.insert(key, c);
            }
            out_slices.push(quot);
        }
        Ok(Self::from_t_slice_maps(self.trunc, out_slices))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    t: m.t,
                    u: m.u,
                    v: m.v,
                    coeff: c.canonical_string(),
                })
                .collect(),
        }
    }

    /// Canonical JSON rendering: terms sorted lexicographically by
    /// `(t, u, v)`, coefficients as exact strings. Byte-deterministic.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series serialization cannot fail")
    }
}
