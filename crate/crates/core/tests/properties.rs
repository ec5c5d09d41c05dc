use kfib_core::matrices::{companion, mat_power, orbit_companion, orbit_power_from_hooks};
use kfib_core::partitions::{enumerate_partitions, fib_partition_sum, multinomial};
use kfib_core::polynomials::{fib_poly, lucas_poly, PolynomialJson};
use kfib_core::sequences::{kso_fib, sequence_table};
use kfib_core::{evaluate, Backend, BigInt, CoefficientVector, Family, SequenceSpec, SparsePolynomial};
use proptest::prelude::*;

/// Coefficients whose last entry is a unit, so every index is reachable.
fn unit_tail_coefficients() -> impl Strategy<Value = CoefficientVector> {
    (2usize..=5).prop_flat_map(|k| (prop::collection::vec(-3i64..=3, k - 1), prop::bool::ANY)).prop_map(
        |(mut head, neg)| {
            head.push(if neg { -1 } else { 1 });
            CoefficientVector::from_i64(&head).unwrap()
        },
    )
}

fn spec() -> impl Strategy<Value = SequenceSpec> {
    (prop::sample::select(Family::ALL.to_vec()), 2usize..=6)
        .prop_flat_map(|(family, k)| (Just(family), Just(k), 1..=k))
        .prop_map(|(family, k, i)| SequenceSpec::new(family, k, i).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recurrence_holds_across_the_window(c in unit_tail_coefficients(), branch in 1usize..=5, n in -30i64..30) {
        let k = c.order();
        let branch = 1 + (branch - 1) % k;
        let spec = SequenceSpec::ksokf(c.clone(), branch).unwrap();
        let lhs = spec.value(n).unwrap();
        let mut rhs = BigInt::from(0);
        for j in 1..=k {
            rhs += c.get(j) * spec.value(n - j as i64).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn table_matches_pointwise(s in spec(), lo in -20i64..20, len in 0i64..25) {
        let lo = if s.family() == Family::Gokf { lo.max(1) } else { lo };
        let rows = sequence_table(&s, lo, lo + len).unwrap();
        for row in rows {
            prop_assert_eq!(row.value, s.value(row.index).unwrap());
            prop_assert_eq!(row.extended, s.is_extended(row.index));
        }
    }

    #[test]
    fn matrix_backend_handles_general_coefficients(c in unit_tail_coefficients(), branch in 1usize..=5, n in 0i64..40) {
        let branch = 1 + (branch - 1) % c.order();
        let spec = SequenceSpec::ksokf(c, branch).unwrap();
        prop_assert_eq!(
            evaluate(&spec, n, Backend::MatrixPower).unwrap(),
            evaluate(&spec, n, Backend::Recurrence).unwrap()
        );
    }

    #[test]
    fn power_laws(c in unit_tail_coefficients(), a in 0u64..20, b in 0u64..20) {
        let m = companion(&c);
        let lhs = mat_power(&m, a + b).unwrap();
        let rhs = mat_power(&m, a).unwrap().mul(&mat_power(&m, b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hook_entries_rebuild_orbit_powers(t in prop::collection::vec(-4i64..=4, 2..=5), extra in 0u64..12) {
        let t = CoefficientVector::from_i64(&t).unwrap();
        let n = t.order() as u64 - 1 + extra;
        prop_assert_eq!(orbit_power_from_hooks(&t, n).unwrap(), mat_power(&orbit_companion(&t), n).unwrap());
    }

    #[test]
    fn polynomial_json_round_trip(k in 2usize..=4, n in 0i64..12, lucas in prop::bool::ANY) {
        let p = if lucas { lucas_poly(k, n).unwrap() } else { fib_poly(k, n).unwrap() };
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back: PolynomialJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(SparsePolynomial::from_json(&back).unwrap(), p);
    }

    #[test]
    fn fib_polynomial_specialises_to_last_branch(k in 2usize..=5, n in 0i64..25) {
        let ones = CoefficientVector::ones(k).unwrap();
        let value = fib_poly(k, n).unwrap().eval(&ones).unwrap();
        prop_assert_eq!(&value, &kso_fib(&ones, k, n + 1).unwrap());
        prop_assert_eq!(value, fib_partition_sum(k, n));
    }

    #[test]
    fn partitions_have_the_requested_weight(k in 1usize..=5, n in 0i64..25) {
        let parts = enumerate_partitions(n, k);
        let mut sorted = parts.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), parts.len());
        for a in &parts {
            prop_assert_eq!(a.weight(), n as u64);
            prop_assert!(multinomial(a) >= BigInt::from(1));
        }
    }
}

/// Brute-force count of compositions of `n` into parts at most `k`.
fn compositions(n: i64, k: i64) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=k.min(n)).map(|p| compositions(n - p, k)).sum()
}

#[test]
fn partition_sums_count_compositions() {
    for k in 1..=5 {
        for n in 0..=18 {
            assert_eq!(fib_partition_sum(k as usize, n), BigInt::from(compositions(n, k)), "k={k} n={n}");
        }
    }
}
