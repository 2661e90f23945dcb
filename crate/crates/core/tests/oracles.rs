//! Values checked against computations that share no code path with the engine
//! under test, plus small hand-derived examples.

use std::collections::BTreeMap;

use nfact_core::field::{Field, Rationals};
use nfact_core::harmonics::{self, HarmonicSpace};
use nfact_core::linalg::{bareiss_rank, RankMode};
use nfact_core::partition::{factorial, partitions_of};
use nfact_core::poly::{Monomial, Poly};
use nfact_core::springer::{self, monomials_of_degree};
use nfact_core::{charp, grfilt, hilb, nilpairs, Partition};
use num_bigint::BigInt;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

/// Bigraded dimensions of the span of every monomial derivative of `Δ_σ`,
/// via fraction-free rank on integer coefficient vectors.
fn brute_force_dims(sigma: &Partition) -> BTreeMap<(u32, u32), usize> {
    let f = Rationals;
    let n = sigma.n();
    let delta = harmonics::delta_sigma(&f, sigma).unwrap();
    let top = delta.max_degree().unwrap();
    let mut groups: BTreeMap<(u32, u32), Vec<Poly<_>>> = BTreeMap::new();
    for d in 0..=top {
        for alpha in monomials_of_degree(2 * n, d) {
            let g = delta.apply_monomial_operator(&f, &alpha);
            if g.is_zero() {
                continue;
            }
            let key = g.homogeneous_bidegree(n).unwrap();
            groups.entry(key).or_default().push(g);
        }
    }
    groups
        .into_iter()
        .map(|(key, polys)| {
            let monos: Vec<Monomial> = {
                let mut all: Vec<Monomial> = polys.iter().flat_map(|g| g.terms().map(|(m, _)| m.clone())).collect();
                all.sort();
                all.dedup();
                all
            };
            let rows: Vec<Vec<BigInt>> = polys
                .iter()
                .map(|g| {
                    monos
                        .iter()
                        .map(|m| g.coeff(m).map_or_else(|| BigInt::from(0), |c| c.to_integer()))
                        .collect()
                })
                .collect();
            (key, bareiss_rank(rows))
        })
        .collect()
}

#[test]
fn harmonic_dims_match_brute_force() {
    for n in 1..=4 {
        for s in partitions_of(n) {
            let closure = harmonics::harmonic_dims(&s, RankMode::Exact).unwrap().value;
            assert_eq!(closure, brute_force_dims(&s), "{s}");
            assert_eq!(closure.values().sum::<usize>() as u128, factorial(n));
        }
    }
}

#[test]
fn small_deltas() {
    let f = Rationals;
    let x = |i| Poly::var(&f, 4, i);
    assert_eq!(harmonics::delta_sigma(&f, &p("2")).unwrap(), x(1).sub(&f, &x(0)));
    assert_eq!(harmonics::delta_sigma(&f, &p("1,1")).unwrap(), x(3).sub(&f, &x(2)));
    let v = |i| Poly::var(&f, 6, i);
    let minor = |a: usize, b: usize| {
        v(a).mul(&f, &v(3 + b))
            .unwrap()
            .sub(&f, &v(b).mul(&f, &v(3 + a)).unwrap())
    };
    let expected = minor(1, 2).sub(&f, &minor(0, 2)).add(&f, &minor(0, 1));
    assert_eq!(harmonics::delta_sigma(&f, &p("2,1")).unwrap(), expected);
}

#[test]
fn two_one_structure() {
    let h = HarmonicSpace::new(&p("2,1")).unwrap();
    let dims: Vec<_> = h.dims().into_iter().collect();
    assert_eq!(dims, [((0, 0), 1), ((0, 1), 2), ((1, 0), 2), ((1, 1), 1)]);
    let signs = h.sign_analysis().unwrap();
    assert_eq!(
        signs.into_iter().filter(|(_, m)| *m > 0).collect::<Vec<_>>(),
        [((1, 1), 1)]
    );
    assert!(h.regular_rep_check().unwrap().pass);
    let g = h.gorenstein_check().unwrap();
    assert!(g.pass);
    assert_eq!(g.blocks.iter().map(|b| b.dim).collect::<Vec<_>>(), [1, 4, 1]);
}

#[test]
fn sign_lines_of_one_row_and_column() {
    let row = HarmonicSpace::new(&p("2")).unwrap().sign_analysis().unwrap();
    assert_eq!(row.get(&(1, 0)), Some(&1));
    let col = HarmonicSpace::new(&p("1,1")).unwrap().sign_analysis().unwrap();
    assert_eq!(col.get(&(0, 1)), Some(&1));
}

#[test]
fn vanishing_examples() {
    assert!(harmonics::lemma_vanish(&p("2,1"), 2, 2, &[0, 1]).unwrap());
    assert!(harmonics::lemma_vanish(&p("2,1"), 3, 1, &[0, 1, 2]).unwrap());
    assert!(harmonics::lemma_vanish(&p("3,1"), 2, 2, &[1, 3]).unwrap());
    assert!(harmonics::lemma_vanish(&p("2,1"), 2, 1, &[0, 1]).is_err());
}

#[test]
fn lowest_sign_degrees() {
    assert_eq!(harmonics::lowest_sign_degree(2).unwrap(), (1, 2));
    assert_eq!(harmonics::lowest_sign_degree(3).unwrap(), (2, 1));
    let (d, m) = harmonics::lowest_sign_degree(4).unwrap();
    assert_eq!(d, 4);
    assert!(m > 1);
}

fn multinomial_by_counting(s: &Partition) -> u128 {
    // Distinct rearrangements of the word 0^{σ_0} 1^{σ_1} ⋯.
    let word: Vec<usize> = s
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(j, &len)| std::iter::repeat_n(j, len))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for w in nfact_core::perm::all_perms(word.len()) {
        seen.insert(w.iter().map(|&i| word[i]).collect::<Vec<_>>());
    }
    seen.len() as u128
}

#[test]
fn springer_dimensions_against_counting() {
    let f = Rationals;
    for n in 1..=5 {
        for s in partitions_of(n) {
            let q = springer::graded_quotient(&f, &springer::tanisaki(&f, &s).unwrap(), springer::default_bound(n))
                .unwrap();
            assert_eq!(q.dim() as u128, multinomial_by_counting(&s), "{s}");
            let d = springer::graded_quotient(
                &f,
                &springer::de_concini_procesi(&f, &s.dual()).unwrap(),
                springer::default_bound(n),
            )
            .unwrap();
            assert_eq!(q.hilbert(), d.hilbert(), "{s}");
            assert_eq!(q.top_degree().unwrap() as usize, s.springer_dim());
        }
    }
}

#[test]
fn filtration_anchor() {
    assert_eq!(grfilt::gr_series(3, 2, RankMode::Exact).unwrap().value, [1, 4, 1]);
    assert_eq!(grfilt::gr_series(2, 2, RankMode::Exact).unwrap().value, [1, 1]);
    let r = grfilt::gr_vs_a(2, 1, 1, RankMode::Exact).unwrap();
    assert!(r.pass);
    for n in 2..=4 {
        assert!(grfilt::coinvariant_model(n)
            .unwrap()
            .validate_against_quotient()
            .unwrap());
    }
}

#[test]
fn divided_power_values() {
    assert_eq!(charp::divided_span_dim(5, 2).unwrap().dim, 120);
    assert_eq!(charp::divided_span_dim(4, 2).unwrap().dim, 24);
    assert_eq!(charp::divided_span_dim(2, 2).unwrap().dim, 2);
    assert_eq!(charp::divided_counterexample().unwrap(), (2, 4));
    assert_eq!(charp::counterexample_over(3).unwrap(), 4);
    assert!(charp::phi_box_delta(2).unwrap().is_some());
    let b = charp::box_comparison(2).unwrap();
    assert!(b.pass && b.dim_box == 24);
}

#[test]
fn divided_dims_never_exceed_classical() {
    for n in 2..=5 {
        for p in charp::PRIMES {
            let d = charp::divided_span_dim(n, p).unwrap();
            assert!(d.dim <= d.classical && d.generators_sufficient, "{d:?}");
        }
    }
}

#[test]
fn nilpotent_pair_values() {
    let e = nilpairs::build_pair(&p("3,2,1")).unwrap();
    assert_eq!(nilpairs::verify_axioms(&e).centralizer_dim, 5);
    for n in 1..=6 {
        for s in partitions_of(n) {
            let e = nilpairs::build_pair(&s).unwrap();
            let sum = e.first.add(&e.second);
            assert!(sum.pow(n as u32).is_zero());
        }
    }
}

#[test]
fn plane_ideal_values() {
    let f = Rationals;
    let mono = |i: u16, j: u16| Poly::monomial(&f, Monomial::new(&[i, j]));
    let i = hilb::PlaneIdeal::new(vec![mono(2, 0), mono(1, 1), mono(0, 3).sub(&f, &mono(0, 2))], 6);
    let q = i.quotient().unwrap();
    assert_eq!(q.colength(), 4);
    assert!(q.is_basis(&[
        Monomial::new(&[0, 0]),
        Monomial::new(&[1, 0]),
        Monomial::new(&[0, 1]),
        Monomial::new(&[0, 2])
    ]));
    let five = hilb::family_fibre(&p("2,1"), &f.from_i64(5)).unwrap();
    assert!(five.pass);
    for n in 1..=5 {
        for s in partitions_of(n) {
            for l in hilb::fibre_params() {
                assert!(hilb::family_fibre(&s, &l).unwrap().pass, "{s}");
            }
        }
    }
}
