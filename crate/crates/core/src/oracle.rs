//! Brute-force verifiers, independent of the series pipelines.
//!
//! [`brute_symmetric_power`] enumerates monomial bases of graded symmetric
//! powers directly (even-degree generators repeat freely, odd-degree
//! generators appear at most once, each chosen odd generator flips the
//! sign) and is the arbiter for the product formula of
//! [`crate::goettsche::symmetric_power_series`].
//!
//! [`cell_count_identity_check`] expands `prod_i (1 - z^{i-1} t^i)^{-1}`
//! and compares every coefficient against partition counts computed by
//! dynamic programming.

use std::collections::BTreeMap;

use crate::exactnum::Scalar;
use crate::partitions::{count_into_exactly_parts, count_parts_at_most};
use crate::series::{Monomial, TruncatedSeries};

/// A finite graded space with an endomorphism, listed as
/// `(degree, eigenvalue)` basis entries.
#[derive(Clone, Debug)]
pub struct GradedEigenSpace {
    entries: Vec<(u32, Scalar)>,
}

impl GradedEigenSpace {
    pub fn new(entries: Vec<(u32, Scalar)>) -> Self {
        GradedEigenSpace { entries }
    }

    pub fn entries(&self) -> &[(u32, Scalar)] {
        &self.entries
    }

    /// Eigenvalues grouped by degree, the input shape of the product
    /// formula.
    pub fn by_degree(&self) -> BTreeMap<u32, Vec<Scalar>> {
        let mut map: BTreeMap<u32, Vec<Scalar>> = BTreeMap::new();
        for (degree, lambda) in &self.entries {
            map.entry(*degree).or_default().push(lambda.clone());
        }
        map
    }
}

/// Signed traces of the `k`-th graded symmetric power, keyed by total
/// degree: each admissible multiset of basis entries of total multiplicity
/// `k` contributes `(-1)^{#odd entries chosen} * prod eigenvalues` at the
/// sum of its degrees.
pub fn brute_symmetric_power(space: &GradedEigenSpace, k: u32) -> BTreeMap<u32, Scalar> {
    let mut out = BTreeMap::new();
    enumerate(space.entries(), k, 0, Scalar::one(), &mut out);
    out.retain(|_, c: &mut Scalar| !c.is_zero());
    out
}

fn enumerate(
    rest: &[(u32, Scalar)],
    remaining: u32,
    degree: u32,
    value: Scalar,
    out: &mut BTreeMap<u32, Scalar>,
) {
    if remaining == 0 {
        let slot = out.entry(degree).or_insert_with(Scalar::zero);
        *slot = slot.add_ref(&value);
        return;
    }
    let Some(((d, lambda), tail)) = rest.split_first() else {
        return;
    };
    let max_mult = if d % 2 == 1 { remaining.min(1) } else { remaining };
    let mut power = value.clone();
    // multiplicity 0
    enumerate(tail, remaining, degree, value, out);
    for mult in 1..=max_mult {
        power = power.mul_ref(lambda);
        let signed = if d % 2 == 1 { power.neg_ref() } else { power.clone() };
        enumerate(tail, remaining - mult, degree + d * mult, signed, out);
    }
}

/// Coefficients of `t^k` in a series with `z` tracked in the `u` slot,
/// keyed by `z`-degree.
pub fn z_profile(series: &TruncatedSeries, k: u32) -> BTreeMap<u32, Scalar> {
    series
        .t_coefficient(k)
        .terms()
        .map(|(m, c)| (m.u, c.clone()))
        .collect()
}

/// Verifies that the coefficient of `t^n z^i` in
/// `prod_{i>=1} (1 - z^{i-1} t^i)^{-1}` equals `p(n, n-i)` (partitions of
/// `n` into exactly `n - i` parts, equivalently the `P(i, n-i)` cell counts)
/// for all `n <= n_max`.
pub fn cell_count_identity_check(n_max: u32) -> bool {
    assert!(n_max >= 1);
    let mut series = TruncatedSeries::one(n_max);
    for i in 1..=n_max {
        series.mul_geometric_factor(
            &Scalar::one(),
            Monomial {
                t: i,
                u: i - 1,
                v: 0,
            },
        );
    }
    for n in 0..=n_max {
        for i in 0..=n {
            let coeff = series.coefficient(&Monomial { t: n, u: i, v: 0 });
            let exact = count_into_exactly_parts(n, n - i);
            let cells = count_parts_at_most(i, n - i);
            if exact != cells {
                return false;
            }
            if coeff != Scalar::from_int(exact as i64) {
                return false;
            }
        }
        // no spill past z-degree n
        let slice = series.t_coefficient(n);
        if slice.terms().any(|(m, _)| m.u > n) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goettsche::symmetric_power_series;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn symmetric_cube_of_a_trivial_even_line() {
        let space = GradedEigenSpace::new(vec![(0, Scalar::one())]);
        let profile = brute_symmetric_power(&space, 3);
        assert_eq!(profile, BTreeMap::from([(0, Scalar::one())]));
    }

    #[test]
    fn odd_line_squares_to_zero() {
        let space = GradedEigenSpace::new(vec![(1, Scalar::one())]);
        assert!(brute_symmetric_power(&space, 2).is_empty());
    }

    #[test]
    fn mixed_even_degrees() {
        let lambda = Scalar::zeta(3, 1);
        let space = GradedEigenSpace::new(vec![(0, Scalar::one()), (2, lambda.clone())]);
        let profile = brute_symmetric_power(&space, 2);
        assert_eq!(
            profile,
            BTreeMap::from([
                (0, Scalar::one()),
                (2, lambda.clone()),
                (4, lambda.mul_ref(&lambda)),
            ])
        );
    }

    #[test]
    fn product_formula_agrees_with_enumeration_on_random_spaces() {
        let mut rng = StdRng::seed_from_u64(451);
        for _ in 0..25 {
            let dim = rng.gen_range(1..=4usize);
            let entries: Vec<(u32, Scalar)> = (0..dim)
                .map(|_| {
                    let degree = rng.gen_range(0..=4u32);
                    let order = rng.gen_range(1..=6u32);
                    let power = rng.gen_range(0..order) as i64;
                    (degree, Scalar::zeta(order, power))
                })
                .collect();
            let space = GradedEigenSpace::new(entries);
            let trunc = 4;
            let series = symmetric_power_series(&space.by_degree(), trunc);
            for k in 0..=trunc {
                assert_eq!(
                    z_profile(&series, k),
                    brute_symmetric_power(&space, k),
                    "space {:?} at k = {}",
                    space,
                    k
                );
            }
        }
    }

    #[test]
    fn cell_identity_small_coefficients() {
        let mut series = TruncatedSeries::one(6);
        for i in 1..=6 {
            series.mul_geometric_factor(
                &Scalar::one(),
                Monomial {
                    t: i,
                    u: i - 1,
                    v: 0,
                },
            );
        }
        assert_eq!(
            series.coefficient(&Monomial { t: 1, u: 0, v: 0 }),
            Scalar::one()
        );
        assert_eq!(
            series.coefficient(&Monomial { t: 4, u: 2, v: 0 }),
            Scalar::from_int(2)
        );
    }

    #[test]
    fn cell_identity_holds_to_twelve() {
        assert!(cell_count_identity_check(12));
    }
}
