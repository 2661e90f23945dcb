//! Ideals of finite colength in `Q[X, Y]`: the monomial ideals `I_σ`, the
//! one-parameter family through them and the B-fixed criterion.
//!
//! Quotients are computed by degree-sliced elimination. The result is accepted
//! once the standard monomials stop changing and the multiplication matrices
//! by `X` and `Y` on them commute, which certifies a border basis.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::echelon::EchelonSpan;
use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::harmonics::{harmonic_dims, lowest_sign_degree};
use crate::linalg::{Matrix, RankMode};
use crate::partition::{deg_remainder, factorial, Partition};
use crate::poly::{Monomial, Poly};
use crate::springer::monomials_of_degree;

type Q = BigRational;
type M = Matrix<Rationals>;

pub const MAX_N_MAXIMAL_RANK: usize = 5;

fn xy(i: usize, j: usize) -> Monomial {
    Monomial::new(&[i as u16, j as u16])
}

fn mono(i: usize, j: usize) -> Poly<Q> {
    Poly::monomial(&Rationals, xy(i, j))
}

#[derive(Clone, Debug)]
pub struct PlaneIdeal {
    pub generators: Vec<Poly<Q>>,
    /// Largest slice degree tried before giving up.
    pub colength_bound: usize,
}

#[derive(Clone, Debug)]
pub struct PlaneQuotient {
    /// Standard monomials, in increasing order.
    pub standard: Vec<Monomial>,
    /// Multiplication by `X` and by `Y` in the standard basis; column `k` is the image of `standard[k]`.
    pub mult: [M; 2],
    /// Slice degree at which the computation stabilised.
    pub degree: usize,
}

impl PlaneQuotient {
    pub fn colength(&self) -> usize {
        self.standard.len()
    }

    /// Coordinates of `X^i Y^j` in the standard basis.
    pub fn nf_monomial(&self, m: &Monomial) -> Vec<Q> {
        let mut v = alloc::vec![Q::zero(); self.colength()];
        if let Some(k) = self.standard.iter().position(|s| s.exps().iter().all(|&e| e == 0)) {
            v[k] = Q::one();
        }
        for _ in 0..m.exp(0) {
            v = self.mult[0].apply(&v);
        }
        for _ in 0..m.exp(1) {
            v = self.mult[1].apply(&v);
        }
        v
    }

    pub fn nf(&self, p: &Poly<Q>) -> Vec<Q> {
        let mut acc = alloc::vec![Q::zero(); self.colength()];
        for (m, c) in p.terms() {
            for (a, b) in acc.iter_mut().zip(self.nf_monomial(m)) {
                *a += c * b;
            }
        }
        acc
    }

    pub fn contains(&self, p: &Poly<Q>) -> bool {
        self.nf(p).iter().all(Q::is_zero)
    }

    /// Whether the given monomials are linearly independent and span the quotient.
    pub fn is_basis(&self, monos: &[Monomial]) -> bool {
        if monos.len() != self.colength() {
            return false;
        }
        let rows: Vec<Vec<Q>> = monos.iter().map(|m| self.nf_monomial(m)).collect();
        M::from_rows(&Rationals, self.colength(), rows).rank() == self.colength()
    }
}

impl PlaneIdeal {
    pub fn new(generators: Vec<Poly<Q>>, colength_bound: usize) -> Self {
        PlaneIdeal {
            generators,
            colength_bound,
        }
    }

    pub fn with(&self, extra: &[Poly<Q>]) -> PlaneIdeal {
        let mut generators = self.generators.clone();
        generators.extend_from_slice(extra);
        PlaneIdeal::new(generators, self.colength_bound)
    }

    pub fn quotient(&self) -> Result<PlaneQuotient> {
        let f = Rationals;
        let mut rel = EchelonSpan::new(f, 2);
        let mut previous: Option<usize> = None;
        let top_gen = self.generators.iter().filter_map(|g| g.max_degree()).max().unwrap_or(0) as usize;
        let cap = self.colength_bound.max(top_gen) + 2;
        for d in 0..=cap {
            for g in &self.generators {
                let gd = g.max_degree().unwrap_or(0) as usize;
                if gd > d {
                    continue;
                }
                for m in monomials_of_degree(2, (d - gd) as u32) {
                    rel.insert(&g.mul_monomial(&m)?);
                }
            }
            let standard: Vec<Monomial> = (0..=d)
                .flat_map(|e| monomials_of_degree(2, e as u32))
                .filter(|m| !rel.is_lead(m))
                .collect();
            let top_free = standard.iter().all(|m| (m.degree() as usize) + 2 <= d);
            let count = standard.len();
            if d > top_gen && top_free && previous == Some(count) {
                if let Some(q) = border_check(&rel, standard) {
                    return Ok(PlaneQuotient { degree: d, ..q });
                }
            }
            previous = Some(count);
        }
        Err(Error::DegreeBoundTooSmall { bound: cap })
    }

    pub fn colength(&self) -> Result<usize> {
        Ok(self.quotient()?.colength())
    }
}

/// Multiplication matrices on the standard monomials, if they are well defined and commute.
fn border_check(rel: &EchelonSpan<Rationals>, standard: Vec<Monomial>) -> Option<PlaneQuotient> {
    let f = Rationals;
    let k = standard.len();
    let mut mult = [M::zeros(&f, k, k), M::zeros(&f, k, k)];
    for (col, s) in standard.iter().enumerate() {
        for (v, mat) in mult.iter_mut().enumerate() {
            let image = rel.reduce(&Poly::monomial(&f, s.mul(&Monomial::var(2, v)).ok()?));
            for (m, c) in image.terms() {
                let row = standard.iter().position(|t| t == m)?;
                mat.set(row, col, c.clone());
            }
        }
    }
    if mult[0].commutator(&mult[1]).is_zero() {
        Some(PlaneQuotient {
            standard,
            mult,
            degree: 0,
        })
    } else {
        None
    }
}

/// Minimal monomial generators of `I_σ`: corners `X^{σ_j} Y^j` and `Y^{m+1}`.
pub fn sigma_generators(sigma: &Partition) -> Vec<Monomial> {
    let parts = sigma.parts();
    let mut gens = Vec::new();
    for (j, &len) in parts.iter().enumerate() {
        if j == 0 || len < parts[j - 1] {
            gens.push(xy(len, j));
        }
    }
    gens.push(xy(0, parts.len()));
    gens
}

pub fn ideal_sigma(sigma: &Partition) -> PlaneIdeal {
    let gens = sigma_generators(sigma)
        .into_iter()
        .map(|m| Poly::monomial(&Rationals, m))
        .collect();
    PlaneIdeal::new(gens, sigma.n() + 2)
}

/// The diagram cells as monomials `X^i Y^j`.
pub fn diagram_monomials(sigma: &Partition) -> Vec<Monomial> {
    sigma.cells().iter().map(|c| xy(c.i, c.j)).collect()
}

/// `(Y^{m+1}(Y − λ), Y^{m+1} X) + (X^{σ_j} Y^j : j ≤ m)`.
pub fn family_ideal(sigma: &Partition, lambda: &Q) -> PlaneIdeal {
    let f = Rationals;
    let rows = sigma.len();
    let top = mono(0, rows);
    let shifted = top
        .mul(&f, &mono(0, 1).sub(&f, &Poly::constant(&f, 2, lambda.clone())))
        .expect("small");
    let mut gens = alloc::vec![shifted, mono(1, rows)];
    gens.extend(
        sigma_generators(sigma)
            .into_iter()
            .filter(|m| (m.exp(1) as usize) < rows)
            .map(|m| Poly::monomial(&f, m)),
    );
    PlaneIdeal::new(gens, sigma.n() + 3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreReport {
    pub sigma: Partition,
    pub lambda: Q,
    pub colength: usize,
    /// Diagram monomials together with `Y^{m+1}` form a basis of the quotient.
    pub basis_ok: bool,
    /// At `λ = 0`: the fibre equals `I_{σ'}`.
    pub special_ok: Option<bool>,
    /// At `λ ≠ 0`: colengths of `I + (X, Y − λ)` and `I + (Y^{m+1})`.
    pub split: Option<(usize, usize)>,
    pub pass: bool,
}

pub fn same_ideal(a: &PlaneIdeal, b: &PlaneIdeal) -> Result<bool> {
    let qa = a.quotient()?;
    let qb = b.quotient()?;
    Ok(b.generators.iter().all(|g| qa.contains(g)) && a.generators.iter().all(|g| qb.contains(g)))
}

pub fn family_fibre(sigma: &Partition, lambda: &Q) -> Result<FibreReport> {
    let f = Rationals;
    let n = sigma.n();
    let ideal = family_ideal(sigma, lambda);
    let q = ideal.quotient()?;
    let colength = q.colength();
    let mut basis = diagram_monomials(sigma);
    basis.push(xy(0, sigma.len()));
    let basis_ok = q.is_basis(&basis);
    let (special_ok, split) = if lambda.is_zero() {
        (Some(same_ideal(&ideal, &ideal_sigma(&sigma.reduce_step()))?), None)
    } else {
        let point = ideal.with(&[mono(1, 0), mono(0, 1).sub(&f, &Poly::constant(&f, 2, lambda.clone()))]);
        let rest = ideal.with(&[mono(0, sigma.len())]);
        (None, Some((point.colength()?, rest.colength()?)))
    };
    let pass = colength == n + 1 && basis_ok && special_ok.unwrap_or(true) && split.is_none_or(|s| s == (1, n));
    Ok(FibreReport {
        sigma: sigma.clone(),
        lambda: lambda.clone(),
        colength,
        basis_ok,
        special_ok,
        split,
        pass,
    })
}

/// The sample fibres `λ ∈ {0, 1, 5, −1/2}`.
pub fn fibre_params() -> Vec<Q> {
    alloc::vec![
        Q::zero(),
        Q::one(),
        Q::from_integer(BigInt::from(5)),
        Q::new(BigInt::from(-1), BigInt::from(2)),
    ]
}

/// `dim A_σ = n!`, the maximal-rank condition at `I_σ`.
pub fn maximal_rank_check(sigma: &Partition) -> Result<bool> {
    if sigma.n() > MAX_N_MAXIMAL_RANK {
        return Err(Error::BoundExceeded {
            what: "n",
            value: sigma.n(),
            max: MAX_N_MAXIMAL_RANK,
        });
    }
    let dims = harmonic_dims(sigma, RankMode::Exact)?.value;
    Ok(dims.values().sum::<usize>() as u128 == factorial(sigma.n()))
}

/// `X^i Y^j ∈ I_σ, i > 0 ⇒ X^{i−1} Y^{j+1} ∈ I_σ` on the minimal generators.
pub fn b_fixed_by_generators(sigma: &Partition) -> bool {
    let gens = sigma_generators(sigma);
    let inside = |m: &Monomial| gens.iter().any(|g| g.divides(m));
    gens.iter()
        .filter(|g| g.exp(0) > 0)
        .all(|g| inside(&xy(g.exp(0) as usize - 1, g.exp(1) as usize + 1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowestSignReport {
    pub n: usize,
    pub degree: usize,
    pub multiplicity: usize,
    pub deg_formula: usize,
    pub remainder: usize,
    pub pass: bool,
}

/// The lowest sign degree equals `deg(n)`, with multiplicity one exactly when the remainder vanishes.
pub fn lowest_sign_check(n: usize) -> Result<LowestSignReport> {
    let (degree, multiplicity) = lowest_sign_degree(n)?;
    let (deg_formula, remainder) = deg_remainder(n)?;
    let pass = degree == deg_formula && (multiplicity == 1) == (remainder == 0);
    Ok(LowestSignReport {
        n,
        degree,
        multiplicity,
        deg_formula,
        remainder,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn sigma_generator_examples() {
        assert_eq!(sigma_generators(&p("2,1")), [xy(2, 0), xy(1, 1), xy(0, 2)]);
        assert_eq!(sigma_generators(&p("4")), [xy(4, 0), xy(0, 1)]);
        assert_eq!(sigma_generators(&p("1,1,1")), [xy(1, 0), xy(0, 3)]);
    }

    #[test]
    fn colength_examples() {
        let q = ideal_sigma(&p("2,1")).quotient().unwrap();
        assert_eq!(q.colength(), 3);
        assert_eq!(q.standard, {
            let mut d = diagram_monomials(&p("2,1"));
            d.sort();
            d
        });
        let f = Rationals;
        let y3 = mono(0, 3).sub(&f, &mono(0, 2));
        assert_eq!(
            PlaneIdeal::new(alloc::vec![mono(2, 0), mono(1, 1), y3], 6)
                .colength()
                .unwrap(),
            4
        );
        let pt = PlaneIdeal::new(alloc::vec![mono(1, 0).sub(&f, &Poly::one(&f, 2)), mono(0, 1)], 4);
        assert_eq!(pt.colength().unwrap(), 1);
    }

    #[test]
    fn colength_is_n_up_to_eight() {
        for n in 1..=8 {
            for s in partitions_of(n) {
                assert_eq!(ideal_sigma(&s).colength().unwrap(), n, "{s}");
            }
        }
    }

    #[test]
    fn fibres_of_two_one() {
        let s = p("2,1");
        let zero = family_fibre(&s, &Q::zero()).unwrap();
        assert_eq!(zero.colength, 4);
        assert_eq!(zero.special_ok, Some(true));
        let one = family_fibre(&s, &Q::one()).unwrap();
        assert_eq!(one.split, Some((1, 3)));
        assert!(one.pass);
        let five = family_fibre(&s, &Q::from_integer(BigInt::from(5))).unwrap();
        assert!(five.basis_ok && five.pass);
    }

    #[test]
    fn b_fixed_agrees() {
        for n in 1..=7 {
            for s in partitions_of(n) {
                assert_eq!(b_fixed_by_generators(&s), s.classify().b_fixed, "{s}");
            }
        }
    }

    #[test]
    fn maximal_rank_small() {
        assert!(maximal_rank_check(&p("2,1")).unwrap());
        assert!(maximal_rank_check(&p("1")).unwrap());
        assert!(maximal_rank_check(&p("3,1,1")).unwrap());
        assert!(maximal_rank_check(&p("3,2,1")).is_err());
    }

    #[test]
    fn lowest_sign() {
        for n in 2..=3 {
            assert!(lowest_sign_check(n).unwrap().pass);
        }
    }
}
