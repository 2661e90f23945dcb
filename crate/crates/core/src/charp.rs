//! Divided-power closures over prime fields and the map `φ: X_s^i Y_s^j ↦ X_s^{i + p j}`.

use alloc::format;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::echelon::EchelonSpan;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::grfilt::vandermonde;
use crate::harmonics::delta_sigma;
use crate::partition::{factorial, Partition};
use crate::poly::{Monomial, Poly};
use crate::span::{graded_span, ClosureOp, GradedSpan, Grading};

pub const MAX_N: usize = 6;
pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn check_p(p: u64) -> Result<PrimeField> {
    if !PRIMES.contains(&p) {
        if !crate::field::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        return Err(Error::OutOfRange {
            what: "p",
            value: p as i64,
            bound: "p in {2, 3, 5, 7}".into(),
        });
    }
    PrimeField::new(p)
}

/// `φ` on a polynomial in `X_1..X_n, Y_1..Y_n`, giving a polynomial in `X_1..X_n`.
pub fn char_phi<F: Field>(field: &F, f: &Poly<F::Elem>, n: usize) -> Result<Poly<F::Elem>> {
    if f.nvars() != 2 * n {
        return Err(Error::Precondition(format!(
            "expected {} variables, got {}",
            2 * n,
            f.nvars()
        )));
    }
    let p = field.characteristic() as u32;
    if p == 0 {
        return Err(Error::WrongCharacteristic {
            needed: "prime",
            got: 0,
        });
    }
    f.map_monomials(field, n, |m| {
        let mut exps = Vec::with_capacity(n);
        for s in 0..n {
            let e = m.exp(s) as u32 + p * m.exp(n + s) as u32;
            exps.push(u16::try_from(e).map_err(|_| Error::ExponentOverflow)?);
        }
        Ok(Monomial::new(&exps))
    })
}

/// Operators `∂_{X_s}` and `∂_{X_s}^{(p^k)}` for `1 ≤ k ≤ levels`.
fn divided_ops(n: usize, p: u32, levels: u32) -> Vec<ClosureOp> {
    let mut ops = ClosureOp::all_partials(n);
    for k in 1..=levels {
        for var in 0..n {
            ops.push(ClosureOp::Divided { var, order: p.pow(k) });
        }
    }
    ops
}

/// Number of levels `k ≥ 1` with `p^k ≤ top`; at least one.
fn levels_for(p: u32, top: u32) -> u32 {
    let mut k = 1;
    while p.pow(k + 1) <= top {
        k += 1;
    }
    k
}

fn max_exponent<E: Clone + PartialEq>(f: &Poly<E>) -> u32 {
    f.terms().flat_map(|(m, _)| m.exps().iter().copied()).max().unwrap_or(0) as u32
}

/// Closure of `f` under all divided powers. By Lucas, `∂` and `∂^{(p^k)}` with
/// `p^k` up to the largest exponent in `f` generate them.
pub fn divided_closure<F: Field>(field: &F, f: &Poly<F::Elem>) -> Result<GradedSpan<F>> {
    let p = field.characteristic() as u32;
    let n = f.nvars();
    let ops = if p == 0 {
        ClosureOp::all_partials(n)
    } else {
        divided_ops(n, p, levels_for(p, max_exponent(f)))
    };
    graded_span(field, n, core::slice::from_ref(f), &ops, Grading::Total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedDim {
    pub n: usize,
    pub p: u64,
    pub dim: usize,
    pub classical: usize,
    /// Divided-power levels used, `∂^{(p)}, …, ∂^{(p^levels)}`.
    pub levels: u32,
    /// `dim` with `∂` and `∂^{(p)}` alone; equal to `dim` once `p² ≥ n`.
    pub dim_first_level: usize,
    /// One further level leaves the dimension unchanged.
    pub generators_sufficient: bool,
    /// `p² ≥ n`.
    pub in_range: bool,
}

impl DividedDim {
    pub fn conjecture_holds(&self) -> bool {
        self.dim == self.classical
    }
}

/// `dim 𝔻_n(Δ_n)` over `F_p`, with the sufficiency guard.
pub fn divided_span_dim(n: usize, p: u64) -> Result<DividedDim> {
    if n == 0 || n > MAX_N {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            max: MAX_N,
        });
    }
    let fp = check_p(p)?;
    let delta = vandermonde(&fp, n)?;
    let levels = levels_for(p as u32, max_exponent(&delta));
    let dim = divided_closure(&fp, &delta)?.dim();
    let span_with = |k: u32| -> Result<usize> {
        Ok(graded_span(
            &fp,
            n,
            core::slice::from_ref(&delta),
            &divided_ops(n, p as u32, k),
            Grading::Total,
        )?
        .dim())
    };
    let wide = span_with(levels + 1)?;
    let dim_first_level = if levels == 1 { dim } else { span_with(1)? };
    Ok(DividedDim {
        n,
        p,
        dim,
        levels,
        dim_first_level,
        classical: factorial(n) as usize,
        generators_sufficient: wide == dim,
        in_range: (p * p) as usize >= n,
    })
}

fn flatten<F: Field + Clone>(field: &F, nvars: usize, span: &GradedSpan<F>) -> EchelonSpan<F> {
    let mut flat = EchelonSpan::new(field.clone(), nvars);
    for (_, slice) in span.slices() {
        for b in slice.basis() {
            flat.insert(b);
        }
    }
    flat
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPReport {
    pub n: usize,
    pub p: u64,
    pub dim_divided: usize,
    pub dim_box: usize,
    pub dim_classical: usize,
    /// `φ(Δ_𝔟) = ±Δ_n`, with the sign found.
    pub phi_delta_sign: Option<i64>,
    pub phi_v_equals_divided: bool,
    /// `dim V ≥ dim 𝔻`.
    pub box_dominates: bool,
    pub box_is_classical: bool,
    pub pass: bool,
}

fn square_box(p: usize) -> Result<Partition> {
    Partition::new(alloc::vec![p; p])
}

fn sign_against<F: Field>(field: &F, f: &Poly<F::Elem>, target: &Poly<F::Elem>) -> Option<i64> {
    if f == target {
        Some(1)
    } else if *f == target.neg(field) {
        Some(-1)
    } else {
        None
    }
}

/// The sign `ε` with `φ(Δ_𝔟) = ε Δ_{p²}` for the `p × p` box, if there is one. `p ∈ {2, 3}`.
pub fn phi_box_delta(p: u64) -> Result<Option<i64>> {
    if p > 3 {
        return Err(Error::BoundExceeded {
            what: "p for the box Vandermonde",
            value: p as usize,
            max: 3,
        });
    }
    let fp = check_p(p)?;
    let n = (p * p) as usize;
    let delta_b = delta_sigma(&fp, &square_box(p as usize)?)?;
    Ok(sign_against(&fp, &char_phi(&fp, &delta_b, n)?, &vandermonde(&fp, n)?))
}

/// Compares `V = k[∂](Δ_𝔟)` for the `p × p` box with `𝔻(Δ_{p²})`. Only `p = 2` fits.
pub fn box_comparison(p: u64) -> Result<CharPReport> {
    if p != 2 {
        return Err(Error::BoundExceeded {
            what: "p for the box comparison",
            value: p as usize,
            max: 2,
        });
    }
    let fp = check_p(p)?;
    let pu = p as usize;
    let n = pu * pu;
    let delta_b = delta_sigma(&fp, &square_box(pu)?)?;
    let delta_n = vandermonde(&fp, n)?;
    let phi_delta_sign = sign_against(&fp, &char_phi(&fp, &delta_b, n)?, &delta_n);

    let v = graded_span(&fp, 2 * n, &[delta_b], &ClosureOp::all_partials(2 * n), Grading::Total)?;
    let d = divided_closure(&fp, &delta_n)?;
    let mut phi_v = EchelonSpan::new(fp, n);
    for (_, slice) in v.slices() {
        for b in slice.basis() {
            phi_v.insert(&char_phi(&fp, b, n)?);
        }
    }
    let d_flat = flatten(&fp, n, &d);
    let phi_v_equals_divided = phi_v.dim() == d_flat.dim() && phi_v.is_subspace_of(&d_flat);
    let dim_box = v.dim();
    let dim_divided = d.dim();
    let dim_classical = factorial(n) as usize;
    let box_dominates = dim_box >= dim_divided;
    let box_is_classical = dim_box == dim_classical;
    Ok(CharPReport {
        n,
        p,
        dim_divided,
        dim_box,
        dim_classical,
        phi_delta_sign,
        phi_v_equals_divided,
        box_dominates,
        box_is_classical,
        pass: phi_delta_sign.is_some() && phi_v_equals_divided && box_dominates && box_is_classical,
    })
}

fn x2_minus_y2<F: Field>(field: &F) -> Poly<F::Elem> {
    let a = Poly::var(field, 2, 0);
    let b = Poly::var(field, 2, 1);
    a.sub(field, &b).mul(field, &a.add(field, &b)).expect("small product")
}

/// Closure dimensions of `(X_1 − X_2)(X_1 + X_2)` over `F_2` and over `Q`.
pub fn divided_counterexample() -> Result<(usize, usize)> {
    let f2 = PrimeField::new(2)?;
    let small = divided_closure(&f2, &x2_minus_y2(&f2))?.dim();
    let big = divided_closure(&Rationals, &x2_minus_y2(&Rationals))?.dim();
    Ok((small, big))
}

/// The same closure over any prime field.
pub fn counterexample_over(p: u64) -> Result<usize> {
    let fp = PrimeField::new(p)?;
    Ok(divided_closure(&fp, &x2_minus_y2(&fp))?.dim())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiIdentityReport {
    pub n: usize,
    pub p: u64,
    pub samples: usize,
    /// Failures of `φ ∂_{X_s} = ∂_{X_s} φ`.
    pub commute_failures: usize,
    /// Failures of `φ(∂_{Y_s} Q) = ∂_{X_s}^{(p)} φ(Q)` for `Q` of `X`-degree below `p` in each variable.
    pub divided_failures: usize,
}

impl PhiIdentityReport {
    pub fn pass(&self) -> bool {
        self.commute_failures == 0 && self.divided_failures == 0
    }
}

fn random_poly(fp: &PrimeField, n: usize, rng: &mut ChaCha8Rng, x_cap: u32, y_cap: u32) -> Poly<u64> {
    let p = fp.modulus();
    let nterms = 1 + rng.next_u32() as usize % 4;
    let terms = (0..nterms).map(|_| {
        let exps: Vec<u16> = (0..2 * n)
            .map(|v| {
                let cap = if v < n { x_cap } else { y_cap };
                (rng.next_u32() % cap) as u16
            })
            .collect();
        (Monomial::new(&exps), rng.next_u64() % p)
    });
    Poly::from_terms(fp, 2 * n, terms)
}

/// Randomized check of the two commutation rules for `φ`.
pub fn phi_identities(n: usize, p: u64, samples: usize, seed: u64) -> Result<PhiIdentityReport> {
    let fp = PrimeField::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 32 ^ p);
    let mut commute_failures = 0;
    let mut divided_failures = 0;
    for _ in 0..samples {
        let s = rng.next_u32() as usize % n;
        let f = random_poly(&fp, n, &mut rng, 2 * p as u32 + 2, 3);
        let lhs = char_phi(&fp, &f.differentiate(&fp, s, 1), n)?;
        let rhs = char_phi(&fp, &f, n)?.differentiate(&fp, s, 1);
        if lhs != rhs {
            commute_failures += 1;
        }
        let q = random_poly(&fp, n, &mut rng, p as u32, 3);
        let lhs = char_phi(&fp, &q.differentiate(&fp, n + s, 1), n)?;
        let rhs = char_phi(&fp, &q, n)?.divided_diff(&fp, s, p as u32);
        if lhs != rhs {
            divided_failures += 1;
        }
    }
    Ok(PhiIdentityReport {
        n,
        p,
        samples,
        commute_failures,
        divided_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let xy = Poly::monomial(&f2, Monomial::new(&[1, 1]));
        assert_eq!(char_phi(&f2, &xy, 1).unwrap(), Poly::monomial(&f2, Monomial::new(&[3])));
        let lhs = char_phi(&f2, &xy.differentiate(&f2, 1, 1), 1).unwrap();
        let rhs = char_phi(&f2, &xy, 1).unwrap().divided_diff(&f2, 0, 2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Poly::var(&f2, 1, 0));
    }

    #[test]
    fn small_divided_dims() {
        assert_eq!(divided_span_dim(2, 2).unwrap().dim, 2);
        let d4 = divided_span_dim(4, 2).unwrap();
        assert_eq!(d4.dim, 24);
        assert!(d4.generators_sufficient && d4.conjecture_holds());
        let d5 = divided_span_dim(5, 2).unwrap();
        assert_eq!((d5.dim, d5.levels, d5.dim_first_level), (120, 2, 60));
        assert!(!d5.in_range && d5.generators_sufficient);
        assert!(divided_span_dim(3, 4).is_err());
        assert!(divided_span_dim(3, 11).is_err());
    }

    #[test]
    fn small_counterexample() {
        assert_eq!(divided_counterexample().unwrap(), (2, 4));
        assert_eq!(counterexample_over(3).unwrap(), 4);
    }

    #[test]
    fn box_two() {
        let r = box_comparison(2).unwrap();
        assert_eq!(r.dim_divided, 24);
        assert!(r.phi_delta_sign.is_some());
        assert!(r.phi_v_equals_divided);
        assert_eq!(r.dim_box, 24);
        assert!(r.pass);
    }

    #[test]
    fn phi_rules_hold() {
        for n in 2..=4 {
            for p in [2, 3] {
                let r = phi_identities(n, p, 100, 5).unwrap();
                assert!(r.pass(), "{r:?}");
            }
        }
    }
}
