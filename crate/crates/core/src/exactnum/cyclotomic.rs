//! Elements of the cyclotomic field `Q(zeta_N)`, stored as coefficient
//! vectors reduced modulo the N-th cyclotomic polynomial `Phi_N`.
//!
//! The reduced representation is canonical: two equal values of the same
//! order have identical coefficient vectors, so exact equality testing is a
//! vector comparison. Mixed-order arithmetic embeds both operands into the
//! field of order `lcm` before operating.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::partitions::divisors;
use crate::Rational;

/// Memoized coefficients of `Phi_N`, ascending degree, monic. The entries
/// are integers but are stored as rationals since reduction happens in
/// rational arithmetic.
fn cyclotomic_polynomial(order: u32) -> Arc<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<Vec<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().expect("cyclotomic polynomial cache poisoned");
    compute_phi(order, &mut guard)
}

fn compute_phi(order: u32, cache: &mut BTreeMap<u32, Arc<Vec<Rational>>>) -> Arc<Vec<Rational>> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(poly) = cache.get(&order) {
        return poly.clone();
    }
    // x^order - 1, then strip Phi_d for every proper divisor d.
    let mut poly = vec![Rational::zero(); order as usize + 1];
    poly[0] = -Rational::one();
    poly[order as usize] = Rational::one();
    for d in divisors(order) {
        if d < order {
            let phi_d = compute_phi(d, cache);
            poly = divide_exact(&poly, &phi_d);
        }
    }
    let poly = Arc::new(poly);
    cache.insert(order, poly.clone());
    poly
}

/// Exact division of polynomials with a monic divisor; panics if the
/// division leaves a remainder (it never does for cyclotomic factors).
fn divide_exact(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let nd = rem.len() - 1;
    let mut quot = vec![Rational::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut rem[i], Rational::zero());
        for (j, b) in den.iter().enumerate().take(dd) {
            rem[i - dd + j] -= &c * b;
        }
        quot[i - dd] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "non-exact polynomial division");
    quot
}

/// An element of `Q(zeta_N)` in canonical reduced form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    /// Length `order`; degree strictly below `deg Phi_order` after reduction.
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Builds an element from arbitrary polynomial coefficients in
    /// `zeta_order` and reduces to canonical form.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut c = Cyclotomic { order, coeffs };
        c.reduce();
        c
    }

    /// The root of unity `zeta_order^exponent` (exponent taken mod order).
    pub fn zeta_power(order: u32, exponent: i64) -> Self {
        let e = exponent.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![Rational::zero(); order as usize];
        coeffs[e] = Rational::one();
        Cyclotomic::from_coeffs(order, coeffs)
    }

    pub fn from_rational(order: u32, value: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); order as usize];
        coeffs[0] = value;
        Cyclotomic::from_coeffs(order, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `Some(r)` when the reduced form is the constant `r`.
    pub fn try_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn reduce(&mut self) {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        if self.coeffs.len() > deg {
            for i in (deg..self.coeffs.len()).rev() {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut self.coeffs[i], Rational::zero());
                for (j, b) in phi.iter().enumerate().take(deg) {
                    self.coeffs[i - deg + j] -= &c * b;
                }
            }
        }
        self.coeffs.resize(self.order as usize, Rational::zero());
    }

    /// Embeds into `Q(zeta_target)`; `self.order` must divide `target`.
    pub fn embed(&self, target: u32) -> Cyclotomic {
        assert!(
            target % self.order == 0,
            "embedding target {} not a multiple of order {}",
            target,
            self.order
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut coeffs = vec![Rational::zero(); target as usize];
        for (a, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[a * step] = c.clone();
            }
        }
        Cyclotomic::from_coeffs(target, coeffs)
    }

    fn common_order(&self, other: &Cyclotomic) -> u32 {
        self.order.lcm(&other.order)
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let order = self.common_order(other);
        let a = self.embed(order);
        let b = other.embed(order);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Cyclotomic::from_coeffs(order, coeffs)
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let order = self.common_order(other);
        let a = self.embed(order);
        let b = other.embed(order);
        let mut coeffs = vec![Rational::zero(); 2 * order as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_coeffs(order, coeffs)
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugation, `zeta_N -> zeta_N^{-1}`.
    pub fn conjugate(&self) -> Cyclotomic {
        let n = self.order as usize;
        let mut coeffs = vec![Rational::zero(); n];
        for (a, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[(n - a) % n] = c.clone();
            }
        }
        Cyclotomic::from_coeffs(self.order, coeffs)
    }

    pub fn pow(&self, mut exp: u64) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = Cyclotomic::from_rational(self.order, Rational::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Canonical polynomial string in `z`, e.g. `1 - 2*z + z^3`.
    pub fn polynomial_string(&self) -> String {
        let mut out = String::new();
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_part = if mag.is_one() && a > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let var_part = match a {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", a),
            };
            match (coeff_part.is_empty(), var_part.is_empty()) {
                (true, _) => out.push_str(&var_part),
                (false, true) => out.push_str(&coeff_part),
                (false, false) => {
                    out.push_str(&coeff_part);
                    out.push('*');
                    out.push_str(&var_part);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let order = self.common_order(other);
        self.embed(order).coeffs == other.embed(order).coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [z=zeta_{}]", self.polynomial_string(), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    fn zeta(order: u32, e: i64) -> Cyclotomic {
        Cyclotomic::zeta_power(order, e)
    }

    #[test]
    fn phi_polynomials_are_the_classical_ones() {
        // Phi_1 = z - 1, Phi_4 = z^2 + 1, Phi_6 = z^2 - z + 1, Phi_12 = z^4 - z^2 + 1
        let as_i64 = |order: u32| -> Vec<i64> {
            cyclotomic_polynomial(order)
                .iter()
                .map(|c| {
                    assert!(c.is_integer());
                    i64::try_from(c.to_integer()).unwrap()
                })
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn fourth_root_squares_to_minus_one() {
        let i = zeta(4, 1);
        assert_eq!(
            i.mul(&i),
            Cyclotomic::from_rational(4, rational(-1))
        );
    }

    #[test]
    fn third_roots_multiply_to_one() {
        let a = zeta(3, 1);
        let b = zeta(3, 2);
        assert_eq!(a.mul(&b), Cyclotomic::from_rational(3, rational(1)));
    }

    #[test]
    fn order_eight_binomial_product() {
        // (1 + zeta_8)(1 - zeta_8) = 1 - zeta_8^2, with no reduction needed
        // since Phi_8 = z^4 + 1.
        let one = Cyclotomic::from_rational(8, rational(1));
        let z = zeta(8, 1);
        let lhs = one.add(&z).mul(&one.sub(&z));
        assert_eq!(lhs, one.sub(&zeta(8, 2)));
    }

    #[test]
    fn cross_order_equality() {
        // zeta_6^2 is the primitive cube root zeta_3.
        assert_eq!(zeta(6, 2), zeta(3, 1));
        assert_ne!(zeta(6, 1), zeta(3, 1));
    }

    #[test]
    fn conjugation_is_an_involution_and_fixes_rationals() {
        let x = zeta(5, 2).add(&zeta(5, 3).scale(&rational(7)));
        assert_eq!(x.conjugate().conjugate(), x);
        let r = Cyclotomic::from_rational(5, rational(-3));
        assert_eq!(r.conjugate(), r);
    }

    #[test]
    fn sum_of_all_nth_roots_vanishes() {
        for n in 2..=12u32 {
            let mut acc = Cyclotomic::from_rational(n, rational(0));
            for a in 0..n {
                acc = acc.add(&zeta(n, a as i64));
            }
            assert!(acc.is_zero(), "order {}", n);
        }
    }

    #[test]
    fn polynomial_rendering() {
        let x = Cyclotomic::from_coeffs(
            8,
            vec![rational(1), rational(-2), rational(0), crate::exactnum::ratio(1, 2)],
        );
        assert_eq!(x.polynomial_string(), "1 - 2*z + 1/2*z^3");
    }
}
