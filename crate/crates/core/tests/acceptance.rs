//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the quantities it pinned. Run with `cargo test --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;

use equigo_core::exactnum::{ratio, rational};
use equigo_core::goettsche::{
    euler_trace_series, goettsche_soergel_hodge_series, hilbert_equivariant,
    hilbert_euler_product, mathieu_epsilon, symmetric_power_series, EquivariantSeries,
    SurfaceHodgeCharacter,
};
use equigo_core::kummer::{kummer_equivariant, kummer_euler_numbers, kummer_hodge_closed};
use equigo_core::oracle::{brute_symmetric_power, cell_count_identity_check, GradedEigenSpace, z_profile};
use equigo_core::partitions::sigma1;
use equigo_core::{EtaQuotient, Monomial, Rational, Scalar, TruncatedSeries};

const K3_ORDERS: [u32; 8] = [1, 2, 3, 4, 5, 6, 7, 8];
const ABELIAN_ORDERS: [u32; 5] = [1, 2, 3, 4, 6];

/// Theorem 2 table: (order, eta exponents by scale), prefactor t^1 in every
/// row.
fn k3_eta_table() -> Vec<(u32, Vec<(u32, i64)>)> {
    vec![
        (1, vec![(1, -24)]),
        (2, vec![(1, -8), (2, -8)]),
        (3, vec![(1, -6), (3, -6)]),
        (4, vec![(1, -4), (2, -2), (4, -4)]),
        (5, vec![(1, -4), (5, -4)]),
        (6, vec![(1, -2), (2, -2), (3, -2), (6, -2)]),
        (7, vec![(1, -3), (7, -3)]),
        (8, vec![(1, -2), (2, -1), (4, -1), (8, -2)]),
    ]
}

/// Theorem 3 table: (order, eta exponents by scale), prefactor t^0.
fn abelian_eta_table() -> Vec<(u32, Vec<(u32, i64)>)> {
    vec![
        (1, vec![]),
        (2, vec![(1, -16), (2, 8)]),
        (3, vec![(1, -9), (3, 3)]),
        (4, vec![(1, -4), (2, -6), (4, 4)]),
        (6, vec![(1, -1), (2, -4), (3, -5), (6, 4)]),
    ]
}

fn all_presets() -> Vec<(String, SurfaceHodgeCharacter)> {
    let mut out = Vec::new();
    for n in K3_ORDERS {
        out.push((
            format!("k3:{}", n),
            SurfaceHodgeCharacter::k3_symplectic(n).unwrap(),
        ));
    }
    for n in ABELIAN_ORDERS {
        out.push((
            format!("abelian:{}", n),
            SurfaceHodgeCharacter::abelian_symplectic(n).unwrap(),
        ));
    }
    out
}

/// Full equivariant Hilbert series at t^10 for every preset, shared across
/// criteria 4, 5, 6 and 11.
fn hilbert_cache() -> &'static Vec<(String, SurfaceHodgeCharacter, EquivariantSeries)> {
    static CACHE: OnceLock<Vec<(String, SurfaceHodgeCharacter, EquivariantSeries)>> =
        OnceLock::new();
    CACHE.get_or_init(|| {
        all_presets()
            .into_iter()
            .map(|(name, surface)| {
                let series = hilbert_equivariant(&surface, 10);
                (name, surface, series)
            })
            .collect()
    })
}

/// Trace map `c(d) = Tr(g^k, [e(S)])` for `gcd(k, N) = d`, read off a
/// preset (the trace at power `d` itself).
fn gcd_trace_map(surface: &SurfaceHodgeCharacter) -> BTreeMap<u32, Rational> {
    let tv = surface.euler_trace_vector();
    equigo_core::partitions::divisors(surface.order())
        .into_iter()
        .map(|d| {
            let value = tv
                .value_at_power(d as u64)
                .as_rational()
                .expect("preset euler traces are rational")
                .clone();
            (d, value)
        })
        .collect()
}

#[test]
fn criterion_01_k3_eta_table() {
    let start = Instant::now();
    let trunc = 40;
    for (order, factors) in k3_eta_table() {
        let traces: Vec<Scalar> = (0..order)
            .map(|k| {
                let ord = order / num_integer::Integer::gcd(&order, &k);
                Scalar::Rational(mathieu_epsilon(ord))
            })
            .collect();
        let tv = equigo_core::TraceVector::new(order, traces);
        let series = euler_trace_series(&tv, trunc);
        let row = EtaQuotient::new(factors, 1).expand(trunc).unwrap();
        for n in 0..=trunc {
            assert_eq!(
                series.slice(1).coefficient(&Monomial::t_power(n)),
                row.coefficient(&Monomial::t_power(n)),
                "K3 N={} first mismatch at t^{}",
                order,
                n
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "runtime target exceeded: {:?}",
        elapsed
    );
    println!(
        "criterion 01 (K3 eta table, Theorem 2): PASS - 8/8 rows exact through t^40 in {:?}",
        elapsed
    );
}

#[test]
fn criterion_02_eta_exponent_derivation() {
    let mut rows = 0;
    for (order, factors) in k3_eta_table() {
        let traces: BTreeMap<u32, Rational> = equigo_core::partitions::divisors(order)
            .into_iter()
            .map(|d| (d, mathieu_epsilon(order / d)))
            .collect();
        let derived = equigo_core::eta::eta_from_order_traces(order, &traces).unwrap();
        let expected = EtaQuotient::new(factors, 1);
        assert_eq!(derived, expected, "K3 N={}", order);
        rows += 1;
    }
    for (order, factors) in abelian_eta_table() {
        let surface = SurfaceHodgeCharacter::abelian_symplectic(order).unwrap();
        let derived =
            equigo_core::eta::eta_from_order_traces(order, &gcd_trace_map(&surface)).unwrap();
        let expected = EtaQuotient::new(factors, 0);
        assert_eq!(derived, expected, "abelian N={}", order);
        rows += 1;
    }
    println!(
        "criterion 02 (eta derivation by inclusion-exclusion): PASS - {}/13 exponent vectors exact",
        rows
    );
}

#[test]
fn criterion_03_abelian_eta_table() {
    let trunc = 40;
    for (order, factors) in abelian_eta_table() {
        let surface = SurfaceHodgeCharacter::abelian_symplectic(order).unwrap();
        let series = euler_trace_series(&surface.euler_trace_vector(), trunc);
        let row = EtaQuotient::new(factors, 0).expand(trunc).unwrap();
        for n in 0..=trunc {
            assert_eq!(
                series.slice(1).coefficient(&Monomial::t_power(n)),
                row.coefficient(&Monomial::t_power(n)),
                "abelian N={} first mismatch at t^{}",
                order,
                n
            );
        }
    }
    // the order-4 proof traces
    let tv = SurfaceHodgeCharacter::abelian_symplectic(4)
        .unwrap()
        .euler_trace_vector();
    assert_eq!(tv.values()[1], Scalar::from_int(4));
    assert_eq!(tv.values()[2], Scalar::from_int(16));
    assert_eq!(tv.values()[3], Scalar::from_int(4));
    println!(
        "criterion 03 (abelian eta table, Theorem 3): PASS - 5/5 rows exact through t^40, N=4 traces (4, 16, 4)"
    );
}

#[test]
fn criterion_04_product_formula_vs_hodge_number_formula() {
    let trunc = 8;
    let mut checked = 0;
    for (name, surface, series) in hilbert_cache() {
        let identity_slice = series.slice(0).truncate(trunc);
        let h_route = goettsche_soergel_hodge_series(&surface.hodge_numbers(), trunc);
        assert_eq!(
            h_route.substitute_neg_uv(),
            identity_slice,
            "{}: E-route and h(-u,-v)-route disagree",
            name
        );
        checked += 1;
    }
    println!(
        "criterion 04 (equivariant product vs Hodge-number formula at g=1): PASS - {} presets exact through t^8",
        checked
    );
}

#[test]
fn criterion_05_specialization_consistency() {
    let deep = 25;
    for (name, surface, series) in hilbert_cache() {
        let exp_route = euler_trace_series(&surface.euler_trace_vector(), deep);
        let product_route = hilbert_euler_product(surface, deep);
        for k in 0..surface.order() {
            assert_eq!(
                product_route.slice(k),
                exp_route.slice(k),
                "{}: product vs exp route at power {} through t^25",
                name,
                k
            );
        }
        // the multivariate pipeline specialized late must agree as well
        let specialized = series.specialize_euler();
        let exp_short = euler_trace_series(&surface.euler_trace_vector(), series.trunc());
        for k in 0..surface.order() {
            assert_eq!(
                specialized.slice(k),
                exp_short.slice(k),
                "{}: multivariate specialization at power {}",
                name,
                k
            );
        }
    }
    // the K3 identity Euler sequence, recomputed independently by the eta module
    let eta_row = EtaQuotient::new([(1, -24)], 1).expand(deep).unwrap();
    let k3 = SurfaceHodgeCharacter::k3_symplectic(1).unwrap();
    let product = hilbert_euler_product(&k3, deep);
    for (n, expected) in [1i64, 24, 324, 3200].iter().enumerate() {
        let mono = Monomial::t_power(n as u32);
        assert_eq!(product.slice(0).coefficient(&mono), Scalar::from_int(*expected));
        assert_eq!(eta_row.coefficient(&mono), Scalar::from_int(*expected));
    }
    println!(
        "criterion 05 (u=v=1 specialization): PASS - 13 presets exact through t^25; K3 sequence 1, 24, 324, 3200"
    );
}

#[test]
fn criterion_06_hodge_spot_checks() {
    let cache = hilbert_cache();
    let (_, _, k3_series) = cache
        .iter()
        .find(|(name, _, _)| name == "k3:1")
        .expect("k3:1 preset cached");
    let slice = k3_series.slice(0);
    let uv = slice.coefficient(&Monomial { t: 2, u: 1, v: 1 });
    let uv_int = uv.as_integer().expect("integer coefficient");
    assert_eq!(uv_int.abs(), BigInt::from(21), "|h^{{1,1}}(S^[2])|");
    let degree_two: BigInt = [(2u32, 0u32), (1, 1), (0, 2)]
        .iter()
        .map(|&(p, q)| {
            slice
                .coefficient(&Monomial { t: 2, u: p, v: q })
                .as_integer()
                .expect("integer coefficient")
                .abs()
        })
        .sum();
    assert_eq!(degree_two, BigInt::from(23), "b_2(S^[2])");
    // cross-check against the Hodge-number route rather than memory alone
    let h_route = goettsche_soergel_hodge_series(
        &SurfaceHodgeCharacter::k3_symplectic(1).unwrap().hodge_numbers(),
        4,
    );
    assert_eq!(
        h_route.coefficient(&Monomial { t: 2, u: 1, v: 1 }),
        Scalar::from_int(21)
    );
    let h_degree_two: BigInt = [(2u32, 0u32), (1, 1), (0, 2)]
        .iter()
        .map(|&(p, q)| {
            h_route
                .coefficient(&Monomial { t: 2, u: p, v: q })
                .as_integer()
                .unwrap()
        })
        .sum();
    assert_eq!(h_degree_two, BigInt::from(23));
    println!(
        "criterion 06 (Hodge spot checks at g=1): PASS - |uv t^2| = 21, degree-2 Betti sum = 23, both routes"
    );
}

#[test]
fn criterion_07_kummer_oracle_equivalence() {
    let trunc = 6;
    let surface = SurfaceHodgeCharacter::abelian_symplectic(1).unwrap();
    let series = kummer_equivariant(&surface, trunc).unwrap();
    for n in 1..=trunc {
        assert_eq!(
            series.slice(0).t_coefficient(n),
            kummer_hodge_closed(n).unwrap(),
            "pipelines disagree at t^{}",
            n
        );
    }
    // h^{1,1}(K_2) and e(K_2) out of both pipelines
    let from_tagged = series.slice(0).t_coefficient(2);
    let from_closed = kummer_hodge_closed(2).unwrap();
    for (label, poly) in [("tagged", &from_tagged), ("closed", &from_closed)] {
        assert_eq!(
            poly.substitute_neg_uv()
                .coefficient(&Monomial { t: 0, u: 1, v: 1 }),
            Scalar::from_int(20),
            "h^{{1,1}}(K_2) via {}",
            label
        );
        assert_eq!(
            poly.specialize_u1_v1().coefficient(&Monomial::ONE),
            Scalar::from_int(24),
            "e(K_2) via {}",
            label
        );
    }
    println!(
        "criterion 07 (Kummer oracle equivalence): PASS - n <= 6 exact; h^{{1,1}}(K_2) = 20, e(K_2) = 24 from both pipelines"
    );
}

#[test]
fn criterion_08_e2_cross_check() {
    let trunc = 10;
    let report = kummer_euler_numbers(trunc).unwrap();
    for n in 1..=trunc as usize {
        assert_eq!(
            report.euler[n - 1].magnitude(),
            report.e2_derivative[n - 1].magnitude(),
            "|e(K_{})| vs |E_2 side|",
            n
        );
        // both sides independently equal n^3 sigma_1(n) in magnitude
        let reference = BigInt::from(n).pow(3) * BigInt::from(sigma1(n as u32));
        assert_eq!(report.euler[n - 1], reference.clone());
        assert_eq!(report.e2_derivative[n - 1], -reference);
    }
    assert_eq!(report.global_sign(), Some(-1));
    println!(
        "criterion 08 (E_2 quasi-modular cross-check): PASS - n <= 10 match up to the reported global sign -1 \
         (E_2 = 1 - 24 sum sigma_1 q^n makes the derivative side negative)"
    );
}

#[test]
fn criterion_09_symmetric_power_oracle() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0x9a7e);
    let cases = 100;
    for case in 0..cases {
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
        let series = symmetric_power_series(&space.by_degree(), 4);
        for k in 0..=4 {
            assert_eq!(
                z_profile(&series, k),
                brute_symmetric_power(&space, k),
                "case {} at k = {}",
                case,
                k
            );
        }
    }
    println!(
        "criterion 09 (symmetric-power oracle): PASS - {} random graded spaces, k <= 4, exact",
        cases
    );
}

#[test]
fn criterion_10_cell_count_identity() {
    assert!(cell_count_identity_check(20));
    println!(
        "criterion 10 (punctual cell-count identity): PASS - coefficients equal p(n, n-i) through n = 20"
    );
}

#[test]
fn criterion_11_integrality_and_genuineness() {
    // Hilbert side: n <= 10 for every preset
    let mut hilbert_checked = 0usize;
    for (name, _, series) in hilbert_cache() {
        let mut monomials: BTreeSet<Monomial> = BTreeSet::new();
        for slice in series.slices() {
            monomials.extend(slice.terms().map(|(m, _)| *m));
        }
        for mono in monomials {
            let mult = series
                .representation_multiplicities_at(mono)
                .unwrap_or_else(|e| panic!("{} at {:?}: {}", name, mono, e));
            assert!(
                mult.iter().all(|m| !m.is_negative()),
                "{} at {:?}: negative multiplicity {:?}",
                name,
                mono,
                mult
            );
            hilbert_checked += 1;
        }
    }
    // Kummer side: n <= 5 for the abelian presets
    let mut kummer_checked = 0usize;
    for order in ABELIAN_ORDERS {
        let surface = SurfaceHodgeCharacter::abelian_symplectic(order).unwrap();
        let series = kummer_equivariant(&surface, 5).unwrap();
        let mut monomials: BTreeSet<Monomial> = BTreeSet::new();
        for slice in series.slices() {
            monomials.extend(slice.terms().map(|(m, _)| *m));
        }
        for mono in monomials {
            let mult = series
                .representation_multiplicities_at(mono)
                .unwrap_or_else(|e| panic!("abelian:{} at {:?}: {}", order, mono, e));
            assert!(
                mult.iter().all(|m| !m.is_negative()),
                "abelian:{} at {:?}: negative multiplicity {:?}",
                order,
                mono,
                mult
            );
            kummer_checked += 1;
        }
    }
    println!(
        "criterion 11 (integrality/genuineness): PASS - {} Hilbert and {} Kummer coefficients decompose with nonnegative integer multiplicities",
        hilbert_checked, kummer_checked
    );
}

/// Smoke check used while developing the suite: the trivial abelian action
/// really does produce the constant Hilbert Euler series.
#[test]
fn euler_series_sanity() {
    let surface = SurfaceHodgeCharacter::abelian_symplectic(1).unwrap();
    let series = euler_trace_series(&surface.euler_trace_vector(), 12);
    assert_eq!(series.slice(0), &TruncatedSeries::one(12));
    let ratio_check = ratio(24, 2) - rational(12);
    assert!(num_traits::Zero::is_zero(&ratio_check));
}
