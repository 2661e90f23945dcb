//! The generalized Vandermonde `Δ_σ` and its derivative span `A_σ`.
//!
//! Variables: `X_1..X_n` are indices `0..n`, `Y_1..Y_n` are `n..2n`. The
//! symmetric group acts diagonally, permuting both blocks at once.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::echelon::EchelonSpan;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg::{certify, Certified, Matrix, RankMode};
use crate::partition::{deg_remainder, factorial, Partition};
use crate::perm::{self, Perm};
use crate::poly::{apolar_pair, elementary_symmetric, Monomial, Poly};
use crate::span::{graded_span, ClosureOp, GradedSpan, Grading};

/// Largest `n` for which `Δ_σ` is expanded.
pub const MAX_N_DELTA: usize = 9;
/// Largest `n` for which the derivative span is built.
pub const MAX_N_SPACE: usize = 6;
/// Largest `n` for the sign-degree search.
pub const MAX_N_LOWEST_SIGN: usize = 4;

type Q = BigRational;

fn check_bound(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::BoundExceeded { what, value: n, max });
    }
    Ok(())
}

/// `det[X_s^{i_t} Y_s^{j_t}]` over the row-major cells of `D_σ`.
pub fn delta_sigma<F: Field>(field: &F, sigma: &Partition) -> Result<Poly<F::Elem>> {
    let n = sigma.n();
    check_bound("n", n, MAX_N_DELTA)?;
    let cells = sigma.cells();
    let mut terms = Vec::with_capacity(factorial(n) as usize);
    for p in perm::all_perms(n) {
        let mut exps = alloc::vec![0u16; 2 * n];
        for (s, &t) in p.iter().enumerate() {
            exps[s] = cells[t].i as u16;
            exps[n + s] = cells[t].j as u16;
        }
        terms.push((Monomial::new(&exps), field.from_i64(perm::sign(&p))));
    }
    Ok(Poly::from_terms(field, 2 * n, terms))
}

/// Bigraded closure of `Δ_σ` under all `2n` first-order partials, over any field.
pub fn harmonic_span<F: Field>(field: &F, sigma: &Partition) -> Result<GradedSpan<F>> {
    let n = sigma.n();
    check_bound("n", n, MAX_N_SPACE)?;
    let delta = delta_sigma(field, sigma)?;
    graded_span(
        field,
        2 * n,
        &[delta],
        &ClosureOp::all_partials(2 * n),
        Grading::Bigraded { x_vars: n },
    )
}

/// Bigraded dimensions of `A_σ`, exact or by modular consensus.
pub fn harmonic_dims(sigma: &Partition, mode: RankMode) -> Result<Certified<BTreeMap<(u32, u32), usize>>> {
    certify(
        mode,
        || Ok(harmonic_span(&Rationals, sigma)?.dims()),
        |fp| Ok(harmonic_span(&fp, sigma)?.dims()),
    )
}

#[derive(Clone, Debug)]
pub struct HarmonicSpace {
    pub sigma: Partition,
    pub delta: Poly<Q>,
    pub span: GradedSpan<Rationals>,
}

/// Traces of one conjugacy-class representative on each bidegree slice.
#[derive(Clone, Debug)]
pub struct ClassTrace {
    pub cycle_type: Partition,
    pub class_size: u128,
    pub rep: Perm,
    pub traces: BTreeMap<(u32, u32), i64>,
}

impl ClassTrace {
    pub fn total(&self) -> i64 {
        self.traces.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularRepReport {
    pub dim: usize,
    pub expected: u128,
    /// `(cycle type, trace)` for every non-identity class.
    pub traces: Vec<(Partition, i64)>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinBlock {
    pub degree: u32,
    pub dim: usize,
    pub dual_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinReport {
    pub blocks: Vec<GorensteinBlock>,
    pub pass: bool,
}

/// Trace of `w` (acting diagonally) on a slice of a bigraded span.
pub fn slice_trace<F: Field>(slice: &EchelonSpan<F>, w: &[usize]) -> Result<F::Elem> {
    let lifted = perm::diagonal(w, 2);
    slice
        .trace_of(|b| b.permute(&lifted))
        .ok_or_else(|| Error::InvariantViolation("span is not stable under the symmetric group".into()))
}

fn q_to_i64(q: &Q) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::InvariantViolation(format!("non-integral character value {q}")));
    }
    q.to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvariantViolation("character value out of range".into()))
}

impl HarmonicSpace {
    pub fn new(sigma: &Partition) -> Result<Self> {
        let delta = delta_sigma(&Rationals, sigma)?;
        let span = harmonic_span(&Rationals, sigma)?;
        Ok(HarmonicSpace {
            sigma: sigma.clone(),
            delta,
            span,
        })
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn total_dim(&self) -> usize {
        self.span.dim()
    }

    pub fn dims(&self) -> BTreeMap<(u32, u32), usize> {
        self.span.dims()
    }

    /// The bidegree of largest total degree and its dimension.
    pub fn top(&self) -> Option<((u32, u32), usize)> {
        self.span
            .slices()
            .max_by_key(|((a, b), _)| a + b)
            .map(|(k, s)| (*k, s.dim()))
    }

    /// Whether the top slice is exactly the line through `Δ_σ` and totals `d_σ`.
    pub fn top_is_delta_line(&self) -> bool {
        let d = self.sigma.diagram_stats().d_sigma as u32;
        let tops: Vec<_> = self.span.slices().filter(|((a, b), _)| a + b == d).collect();
        let higher = self.span.slices().any(|((a, b), _)| a + b > d);
        tops.len() == 1 && tops[0].1.dim() == 1 && tops[0].1.contains(&self.delta) && !higher
    }

    pub fn class_traces(&self) -> Result<Vec<ClassTrace>> {
        let mut out = Vec::new();
        for (cycle_type, rep, class_size) in perm::class_representatives(self.n()) {
            let mut traces = BTreeMap::new();
            for (key, slice) in self.span.slices() {
                traces.insert(*key, q_to_i64(&slice_trace(slice, &rep)?)?);
            }
            out.push(ClassTrace {
                cycle_type,
                class_size,
                rep,
                traces,
            });
        }
        Ok(out)
    }

    pub fn regular_rep_check(&self) -> Result<RegularRepReport> {
        let n = self.n();
        let traces: Vec<(Partition, i64)> = self
            .class_traces()?
            .into_iter()
            .filter(|c| c.cycle_type.parts().iter().any(|&l| l > 1))
            .map(|c| {
                let t = c.total();
                (c.cycle_type, t)
            })
            .collect();
        let dim = self.total_dim();
        let expected = factorial(n);
        let pass = dim as u128 == expected && traces.iter().all(|(_, t)| *t == 0);
        Ok(RegularRepReport {
            dim,
            expected,
            traces,
            pass,
        })
    }

    /// Multiplicity of the sign character on every bidegree slice.
    pub fn sign_analysis(&self) -> Result<BTreeMap<(u32, u32), usize>> {
        let classes = self.class_traces()?;
        let order = factorial(self.n()) as i128;
        let mut out = BTreeMap::new();
        for key in self.span.dims().keys() {
            let mut acc: i128 = 0;
            for c in &classes {
                let sgn = perm::sign(&c.rep) as i128;
                acc += c.class_size as i128 * sgn * c.traces[key] as i128;
            }
            if acc < 0 || acc % order != 0 {
                return Err(Error::InvariantViolation(format!(
                    "sign multiplicity {acc}/{order} on slice {key:?} is not a natural number"
                )));
            }
            out.insert(*key, (acc / order) as usize);
        }
        Ok(out)
    }

    /// Rank of `(h, g) ↦ (hg)(∂)Δ_σ` between total degrees `m` and `d_σ − m`.
    pub fn gorenstein_check(&self) -> Result<GorensteinReport> {
        let f = Rationals;
        let d = self.sigma.diagram_stats().d_sigma as u32;
        let by_total = |m: u32| -> Vec<Poly<Q>> {
            self.span
                .slices()
                .filter(|((a, b), _)| a + b == m)
                .flat_map(|(_, s)| s.basis().cloned())
                .collect()
        };
        let mut blocks = Vec::new();
        let mut pass = true;
        for m in 0..=d {
            let low = by_total(m);
            let high = by_total(d - m);
            let mut rows = Vec::with_capacity(low.len());
            for h in &low {
                let hd = self.delta.apply_operator(&f, h);
                let row = high
                    .iter()
                    .map(|g| apolar_pair(&f, g, &hd))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
            let rank = Matrix::from_rows(&f, high.len(), rows).rank();
            let ok = low.len() == high.len() && rank == low.len();
            pass &= ok;
            blocks.push(GorensteinBlock {
                degree: m,
                dim: low.len(),
                dual_dim: high.len(),
                rank,
            });
        }
        Ok(GorensteinReport { blocks, pass })
    }
}

/// Whether `e_r(∂_{Y_s} : s ∈ subset)` kills `Δ_σ`. `subset` holds 0-based indices.
pub fn lemma_vanish(sigma: &Partition, k: usize, r: usize, subset: &[usize]) -> Result<bool> {
    VanishingChecker::new(sigma)?.check(k, r, subset)
}

/// Holds `Δ_σ` so that many `(k, r, subset)` can be tested against one expansion.
#[derive(Clone, Debug)]
pub struct VanishingChecker {
    sigma: Partition,
    delta: Poly<Q>,
}

/// Outcome of a batch of vanishing checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub checked: usize,
    pub failures: Vec<(usize, usize, Vec<usize>)>,
}

impl VanishingChecker {
    pub fn new(sigma: &Partition) -> Result<Self> {
        Ok(VanishingChecker {
            sigma: sigma.clone(),
            delta: delta_sigma(&Rationals, sigma)?,
        })
    }

    pub fn check(&self, k: usize, r: usize, subset: &[usize]) -> Result<bool> {
        let n = self.sigma.n();
        let dk = self.sigma.d_k(k)?;
        if !(k < r + dk && r <= k) || r == 0 {
            return Err(Error::Precondition(format!(
                "need k − d_k < r ≤ k, got k={k}, r={r}, d_k={dk}"
            )));
        }
        if subset.len() != k || subset.windows(2).any(|w| w[0] >= w[1]) || subset.iter().any(|&s| s >= n) {
            return Err(Error::Precondition(
                "subset must be k strictly increasing indices below n".into(),
            ));
        }
        let f = Rationals;
        let ys: Vec<usize> = subset.iter().map(|&s| n + s).collect();
        let op = elementary_symmetric(&f, 2 * n, &ys, r)?;
        Ok(self.delta.apply_operator(&f, &op).is_zero())
    }

    /// Every admissible triple.
    pub fn exhaustive(&self) -> Result<VanishingReport> {
        let triples = admissible_vanishing_triples(&self.sigma)?;
        self.run(triples)
    }

    /// `draws` admissible triples chosen uniformly (with replacement) from a seeded stream.
    pub fn sampled(&self, draws: usize, seed: u64) -> Result<VanishingReport> {
        let all = admissible_vanishing_triples(&self.sigma)?;
        if all.is_empty() {
            return Ok(VanishingReport {
                checked: 0,
                failures: Vec::new(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let picks = (0..draws).map(|_| all[(rng.next_u64() % all.len() as u64) as usize].clone());
        self.run(picks)
    }

    fn run(&self, triples: impl IntoIterator<Item = (usize, usize, Vec<usize>)>) -> Result<VanishingReport> {
        let mut checked = 0;
        let mut failures = Vec::new();
        for (k, r, s) in triples {
            checked += 1;
            if !self.check(k, r, &s)? {
                failures.push((k, r, s));
            }
        }
        Ok(VanishingReport { checked, failures })
    }
}

/// Every admissible `(k, r, subset)` for `σ`.
pub fn admissible_vanishing_triples(sigma: &Partition) -> Result<Vec<(usize, usize, Vec<usize>)>> {
    let n = sigma.n();
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for k in 1..=n {
        let dk = sigma.d_k(k)?;
        for r in (k + 1).saturating_sub(dk).max(1)..=k {
            for s in crate::poly::subsets(&all, k) {
                out.push((k, r, s));
            }
        }
    }
    Ok(out)
}

fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    fn rec(nvars: usize, d: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if cur.len() + 1 == nvars {
            cur.push(d as u16);
            out.push(Monomial::new(cur));
            cur.pop();
            return;
        }
        for e in 0..=d {
            cur.push(e as u16);
            rec(nvars, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(nvars, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Dimension of the alternating polynomials of degree `d` in `X_1..X_n, Y_1..Y_n`.
pub fn sign_multiplicity_in_degree(n: usize, d: usize) -> Result<usize> {
    check_bound("n", n, MAX_N_LOWEST_SIGN)?;
    let f = Rationals;
    let perms = perm::all_perms(n);
    let mut span = EchelonSpan::new(f, 2 * n);
    for m in monomials_of_degree(2 * n, d) {
        let mut alt = Poly::zero(2 * n);
        for w in &perms {
            let t = m.permute(&perm::diagonal(w, 2));
            alt.add_term(&f, t, &f.from_i64(perm::sign(w)));
        }
        span.insert(&alt);
    }
    Ok(span.dim())
}

/// Smallest total degree carrying the sign character, with its multiplicity.
pub fn lowest_sign_degree(n: usize) -> Result<(usize, usize)> {
    check_bound("n", n, MAX_N_LOWEST_SIGN)?;
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            bound: "n >= 1".into(),
        });
    }
    let (deg, _) = deg_remainder(n)?;
    for d in 0..=deg + n {
        let m = sign_multiplicity_in_degree(n, d)?;
        if m > 0 {
            return Ok((d, m));
        }
    }
    Err(Error::InvariantViolation("no alternating polynomial found".into()))
}

/// Scalar with `Δ_{σ^∨}(swapped) = c · Δ_σ`, where the swap exchanges the X and Y blocks.
pub fn transpose_relation(sigma: &Partition) -> Result<Option<Q>> {
    let f = Rationals;
    let n = sigma.n();
    let a = delta_sigma(&f, sigma)?;
    let b = delta_sigma(&f, &sigma.dual())?;
    let swap: Vec<usize> = (0..2 * n).map(|v| (v + n) % (2 * n)).collect();
    let b = b.permute(&swap);
    let Some((m, ca)) = a.leading() else {
        return Ok(None);
    };
    let Some(cb) = b.coeff(m) else {
        return Ok(None);
    };
    let c = f.mul(cb, &f.inv(ca).expect("nonzero"));
    Ok((b == a.scale(&f, &c)).then_some(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(v: i64) -> Q {
        Rationals.from_i64(v)
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn delta_small_cases() {
        let f = Rationals;
        let d = delta_sigma(&f, &p("2")).unwrap();
        let want = Poly::from_terms(&f, 4, [(mono(&[0, 1, 0, 0]), q(1)), (mono(&[1, 0, 0, 0]), q(-1))]);
        assert_eq!(d, want);
        let d = delta_sigma(&f, &p("1,1")).unwrap();
        let want = Poly::from_terms(&f, 4, [(mono(&[0, 0, 0, 1]), q(1)), (mono(&[0, 0, 1, 0]), q(-1))]);
        assert_eq!(d, want);
    }

    #[test]
    fn delta_two_one_matches_cofactor_expansion() {
        // (X2Y3 − X3Y2) − (X1Y3 − X3Y1) + (X1Y2 − X2Y1)
        let f = Rationals;
        let xy = |x: usize, y: usize| {
            let mut e = [0u16; 6];
            e[x] = 1;
            e[3 + y] = 1;
            mono(&e)
        };
        let want = Poly::from_terms(
            &f,
            6,
            [
                (xy(1, 2), q(1)),
                (xy(2, 1), q(-1)),
                (xy(0, 2), q(-1)),
                (xy(2, 0), q(1)),
                (xy(0, 1), q(1)),
                (xy(1, 0), q(-1)),
            ],
        );
        assert_eq!(delta_sigma(&f, &p("2,1")).unwrap(), want);
    }

    #[test]
    fn two_one_space() {
        let h = HarmonicSpace::new(&p("2,1")).unwrap();
        assert_eq!(h.total_dim(), 6);
        assert_eq!(
            h.dims(),
            BTreeMap::from([((0, 0), 1), ((1, 0), 2), ((0, 1), 2), ((1, 1), 1)])
        );
        assert!(h.top_is_delta_line());
        assert!(h.regular_rep_check().unwrap().pass);
        let s = h.sign_analysis().unwrap();
        assert_eq!(s[&(1, 1)], 1);
        assert_eq!(s.values().sum::<usize>(), 1);
        let g = h.gorenstein_check().unwrap();
        assert!(g.pass);
        assert_eq!(g.blocks.iter().map(|b| b.dim).collect::<Vec<_>>(), [1, 4, 1]);
    }

    #[test]
    fn single_row_and_column_signs() {
        let h = HarmonicSpace::new(&p("2")).unwrap();
        assert_eq!(h.sign_analysis().unwrap()[&(1, 0)], 1);
        let h = HarmonicSpace::new(&p("1,1")).unwrap();
        assert_eq!(h.sign_analysis().unwrap()[&(0, 1)], 1);
        let h = HarmonicSpace::new(&p("1")).unwrap();
        assert_eq!(h.total_dim(), 1);
        assert!(h.regular_rep_check().unwrap().pass);
        assert!(h.gorenstein_check().unwrap().pass);
    }

    #[test]
    fn vanishing_examples() {
        assert!(lemma_vanish(&p("2,1"), 2, 2, &[0, 1]).unwrap());
        assert!(lemma_vanish(&p("2,1"), 3, 1, &[0, 1, 2]).unwrap());
        assert!(lemma_vanish(&p("3,1"), 2, 2, &[1, 3]).unwrap());
        // r = 1 with k = 2 is outside the admissible range for (2,1)
        assert!(matches!(
            lemma_vanish(&p("2,1"), 2, 1, &[0, 1]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lowest_sign_degrees() {
        assert_eq!(lowest_sign_degree(2).unwrap(), (1, 2));
        assert_eq!(lowest_sign_degree(3).unwrap(), (2, 1));
        assert!(lowest_sign_degree(5).is_err());
    }

    #[test]
    fn transpose_gives_dual_delta_up_to_sign() {
        for s in ["2,1", "3,1", "2,2", "3"] {
            let c = transpose_relation(&p(s)).unwrap().expect("proportional");
            assert!(c == Q::one() || c == -Q::one());
        }
    }

    #[test]
    fn bounds_are_enforced() {
        let big = Partition::new(alloc::vec![7]).unwrap();
        assert!(matches!(HarmonicSpace::new(&big), Err(Error::BoundExceeded { .. })));
    }
}
