use nfact_core::field::{Field, PrimeField, Rationals};
use nfact_core::linalg::{bareiss_rank, draw_primes, rank_certified, Matrix, RankMode, SparseRow};
use nfact_core::partition::{box_plus_row_n_k, box_plus_row_triples, partitions_of, Shape};
use nfact_core::perm;
use nfact_core::poly::{Monomial, Poly};
use nfact_core::span::{graded_span, ClosureOp, Grading};
use nfact_core::{harmonics, hilb, springer, Partition};
use num_bigint::BigInt;
use proptest::prelude::*;

fn partition_strategy(max_n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_n, 1..=max_n)
        .prop_filter("size", move |v| v.iter().sum::<usize>() <= max_n)
        .prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
}

fn poly_strategy(nvars: usize) -> impl Strategy<Value = Poly<num_rational::BigRational>> {
    prop::collection::vec((prop::collection::vec(0u16..4, nvars), -5i64..=5), 1..6).prop_map(move |terms| {
        let f = Rationals;
        Poly::from_terms(
            &f,
            nvars,
            terms.into_iter().map(|(e, c)| (Monomial::new(&e), f.from_i64(c))),
        )
    })
}

proptest! {
    #[test]
    fn dual_is_involution(s in partition_strategy(12)) {
        prop_assert_eq!(s.dual().dual(), s.clone());
        prop_assert_eq!(s.dual().n(), s.n());
    }

    #[test]
    fn d_k_nondecreasing_and_ends_at_n(s in partition_strategy(12)) {
        let n = s.n();
        let ds: Vec<usize> = (1..=n).map(|k| s.d_k(k).unwrap()).collect();
        prop_assert!(ds.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(ds[n - 1], n);
    }

    #[test]
    fn partials_commute(f in poly_strategy(8), a in 0usize..8, b in 0usize..8) {
        let fq = Rationals;
        let ab = f.differentiate(&fq, a, 1).differentiate(&fq, b, 1);
        let ba = f.differentiate(&fq, b, 1).differentiate(&fq, a, 1);
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn lucas_composition(p in prop::sample::select(vec![2u64, 3, 5]), e in 0u16..40, a in 0u32..12, b in 0u32..12) {
        let fp = PrimeField::new(p).unwrap();
        let f = Poly::monomial(&fp, Monomial::new(&[e, 1]));
        let lhs = f.divided_diff(&fp, 0, b).divided_diff(&fp, 0, a);
        let rhs = f.divided_diff(&fp, 0, a + b).scale(&fp, &fp.binomial((a + b) as u64, a as u64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn colength_of_monomial_ideal(s in partition_strategy(10)) {
        prop_assert_eq!(hilb::ideal_sigma(&s).colength().unwrap(), s.n());
    }

    #[test]
    fn reduced_span_ignores_generator_order(
        gens in prop::collection::vec(poly_strategy(3), 1..4),
        seed in any::<u64>(),
    ) {
        let f = Rationals;
        let homog: Vec<_> = gens
            .iter()
            .map(|g| {
                let top = g.max_degree().unwrap_or(0);
                Poly::from_terms(&f, 3, g.terms().filter(|(m, _)| m.degree() == top).map(|(m, c)| (m.clone(), c.clone())))
            })
            .collect();
        let mut shuffled = homog.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        let ops = ClosureOp::all_partials(3);
        let a = graded_span(&f, 3, &homog, &ops, Grading::Total).unwrap();
        let b = graded_span(&f, 3, &shuffled, &ops, Grading::Total).unwrap();
        prop_assert_eq!(a.dims(), b.dims());
        for (key, slice) in a.slices() {
            let other = b.slice(*key).unwrap();
            prop_assert!(slice.basis().eq(other.basis()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn modular_rank_matches_exact_on_planted_rank(
        rows in 2usize..7,
        cols in 2usize..7,
        inner in 1usize..5,
        left in prop::collection::vec(-9i64..=9, 36),
        right in prop::collection::vec(-9i64..=9, 36),
        seed in any::<u64>(),
    ) {
        let dense: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| (0..inner).map(|k| BigInt::from(left[i * 6 + k] * right[k * 6 + j])).sum())
                    .collect()
            })
            .collect();
        let exact = bareiss_rank(dense.clone());
        prop_assert!(exact <= inner);
        for p in draw_primes(seed) {
            let fp = PrimeField::new(p).unwrap();
            let data = dense.iter().map(|r| r.iter().map(|x| fp.from_bigint(x)).collect()).collect();
            prop_assert!(Matrix::from_rows(&fp, cols, data).rank() <= exact);
        }
        let sparse: Vec<SparseRow> = dense
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, x)| *x != &BigInt::from(0)).map(|(c, x)| (c, Rationals.from_bigint(x))).collect())
            .collect();
        let certified = rank_certified(&sparse, cols, RankMode::ModularConsensus { seed });
        prop_assert_eq!(certified.value, exact);
    }
}

#[test]
fn n_k_closed_form_matches_tail_sums() {
    for (p, q, r) in box_plus_row_triples(12) {
        let s = Partition::box_plus_row(p, q, r).unwrap();
        for k in 0..=s.n() {
            assert_eq!(box_plus_row_n_k(p, q, r, k), (s.n_k(k), s.dual().n_k(k)), "{s} k={k}");
        }
    }
}

#[test]
fn staircase_distance_and_reduce_step() {
    for n in 1..=10 {
        for s in partitions_of(n) {
            let st = s.diagram_stats();
            let is_staircase = matches!(s.classify().shape, Shape::Staircase);
            assert_eq!(st.distance_to_staircase == 0, is_staircase, "{s}");
            let m = s.len() - 1;
            let next = s.reduce_step().diagram_stats().distance_to_staircase;
            let expected = if st.d_ideal > m + 1 {
                st.distance_to_staircase - 1
            } else {
                st.distance_to_staircase + m + 1
            };
            assert_eq!(next, expected, "{s}");
        }
    }
}

#[test]
fn delta_is_alternating() {
    let f = Rationals;
    for n in 2..=6 {
        for s in partitions_of(n) {
            let d = harmonics::delta_sigma(&f, &s).unwrap();
            for a in 0..n {
                for b in a + 1..n {
                    let w = perm::diagonal(&perm::transposition(n, a, b), 2);
                    assert_eq!(d.permute(&w), d.neg(&f), "{s} ({a} {b})");
                }
            }
        }
    }
}

#[test]
fn presentations_are_permutation_stable() {
    let f = Rationals;
    for n in 2..=5 {
        let gens = [perm::transposition(n, 0, 1), perm::long_cycle(n)];
        for s in partitions_of(n) {
            for pres in [
                springer::tanisaki(&f, &s).unwrap(),
                springer::de_concini_procesi(&f, &s).unwrap(),
            ] {
                assert!(gens.iter().all(|w| pres.is_permutation_stable(w)), "{s}");
            }
        }
        for (p, q, r) in box_plus_row_triples(n).into_iter().filter(|&(p, q, r)| p * q + r == n) {
            let a = springer::jp(&f, n, p).unwrap();
            let b = springer::jq_vee(&f, n, q, r).unwrap();
            assert!(gens
                .iter()
                .all(|w| a.is_permutation_stable(w) && b.is_permutation_stable(w)));
        }
    }
}
