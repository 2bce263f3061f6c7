//! The gcd-tagged series ring: monomials carry an extra tag (the `w`
//! exponent) that combines under multiplication by gcd instead of addition,
//! with `gcd(0, l) = l` so that tag 0 is the multiplicative identity tag.
//! Applying the Euler operator `(w d/dw)^4` and evaluating at `w = 1`
//! multiplies each coefficient by `tag^4` and annihilates tag-0 terms.

use std::collections::BTreeMap;

use num_integer::Integer;

use super::{Monomial, SeriesError, TruncatedSeries};
use crate::exactnum::{rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TaggedMonomial {
    pub t: u32,
    pub u: u32,
    pub v: u32,
    pub tag: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdTaggedSeries {
    trunc: u32,
    terms: BTreeMap<TaggedMonomial, Scalar>,
}

impl GcdTaggedSeries {
    pub fn zero(trunc: u32) -> Self {
        GcdTaggedSeries {
            trunc,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative identity `1` (tag 0).
    pub fn one(trunc: u32) -> Self {
        let mut s = Self::zero(trunc);
        s.insert_add(
            TaggedMonomial {
                t: 0,
                u: 0,
                v: 0,
                tag: 0,
            },
            Scalar::one(),
        );
        s
    }

    /// `1 + w^tag * series`; the factor shape of the tagged product formula.
    pub fn one_plus_tagged(series: &TruncatedSeries, tag: u32) -> Self {
        let mut s = Self::one(series.trunc());
        for (m, c) in series.terms() {
            s.insert_add(
                TaggedMonomial {
                    t: m.t,
                    u: m.u,
                    v: m.v,
                    tag,
                },
                c.clone(),
            );
        }
        s
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TaggedMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &TaggedMonomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn insert_add(&mut self, mono: TaggedMonomial, value: Scalar) {
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

    /// The tagged product: coefficients multiply, `(t, u, v)` exponents add,
    /// tags combine by gcd (`gcd(0, l) = l`).
    pub fn odot_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.trunc != other.trunc {
            return Err(SeriesError::TruncationMismatch(self.trunc, other.trunc));
        }
        let mut out = Self::zero(self.trunc);
        for (ma, ca) in &self.terms {
            if ma.t > self.trunc {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ma.t + mb.t > self.trunc {
                    continue;
                }
                out.insert_add(
                    TaggedMonomial {
                        t: ma.t + mb.t,
                        u: ma.u + mb.u,
                        v: ma.v + mb.v,
                        tag: ma.tag.gcd(&mb.tag),
                    },
                    ca.mul_ref(cb),
                );
            }
        }
        Ok(out)
    }

    /// Applies `(w d/dw)^4` and evaluates at `w = 1`: each term is scaled by
    /// `tag^4` and the tag is dropped; tag-0 terms vanish.
    pub fn euler_w4_collapse(&self) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.trunc);
        for (m, c) in &self.terms {
            if m.tag == 0 {
                continue;
            }
            let weight = rational((m.tag as i64).pow(4));
            out.insert_add(
                Monomial {
                    t: m.t,
                    u: m.u,
                    v: m.v,
                },
                c.mul_rational(&weight),
            );
        }
        out
    }
}
