//! The coinvariant algebra `P_n / J`, its filtration by `F_1 = span{1, x_i, x_i^p}`
//! and the associated graded.
//!
//! A class `g + J` is modelled by the harmonic polynomial `g(∂) Δ_n`, where
//! `Δ_n = Π_{s<t} (X_s − X_t)`. Under this model the action of `w` on `P_n/J`
//! becomes `ε(w)` times the permutation action on polynomials.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::echelon::EchelonSpan;
use crate::error::{Error, Result};
use crate::field::{rational_to_i64, Field, Rationals};
use crate::harmonics::harmonic_dims;
use crate::linalg::{certify, Certificate, Certified, RankMode};
use crate::partition::{box_plus_row_top_degrees, factorial, Partition};
use crate::perm;
use crate::poly::{Monomial, Poly};
use crate::span::{graded_span, ClosureOp, GradedSpan, Grading};
use crate::springer::{coinvariant, de_concini_procesi, default_bound, graded_quotient, jp, jq_vee, tanisaki};

pub const MAX_N: usize = 6;

type Q = BigRational;

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            max: MAX_N,
        });
    }
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            bound: "n >= 1".into(),
        });
    }
    Ok(())
}

/// `Π_{s<t} (X_s − X_t)` in `n` variables.
pub fn vandermonde<F: Field>(field: &F, n: usize) -> Result<Poly<F::Elem>> {
    let mut acc = Poly::one(field, n);
    for s in 0..n {
        for t in s + 1..n {
            let lin = Poly::var(field, n, s).sub(field, &Poly::var(field, n, t));
            acc = acc.mul(field, &lin)?;
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct CoinvariantModel {
    pub n: usize,
    pub delta: Poly<Q>,
    pub span: GradedSpan<Rationals>,
}

pub fn coinvariant_model(n: usize) -> Result<CoinvariantModel> {
    check_n(n)?;
    let f = Rationals;
    let delta = vandermonde(&f, n)?;
    let span = graded_span(
        &f,
        n,
        core::slice::from_ref(&delta),
        &ClosureOp::all_partials(n),
        Grading::Total,
    )?;
    Ok(CoinvariantModel { n, delta, span })
}

impl CoinvariantModel {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Dimensions of `P_n/J` by degree: degree `d` classes sit in model degree `top − d`.
    pub fn graded_dims(&self) -> Vec<usize> {
        let dims = self.span.total_dims();
        let top = dims.keys().max().copied().unwrap_or(0);
        (0..=top).map(|d| dims.get(&(top - d)).copied().unwrap_or(0)).collect()
    }

    /// Whether the model agrees with the quotient by `e_1, …, e_n`: each `e_r`
    /// kills `Δ_n`, and both sides have the same Hilbert series.
    pub fn validate_against_quotient(&self) -> Result<bool> {
        let f = Rationals;
        let pres = coinvariant(&f, self.n)?;
        let killed = pres
            .generators
            .iter()
            .all(|e| self.delta.apply_operator(&f, e).is_zero());
        let q = graded_quotient(&f, &pres, default_bound(self.n))?;
        Ok(killed && q.hilbert() == self.graded_dims())
    }
}

#[derive(Clone, Debug)]
pub struct Filtration<F: Field> {
    pub n: usize,
    pub p: usize,
    /// `F_0 ⊆ F_1 ⊆ ⋯`, ending at the full model.
    pub layers: Vec<EchelonSpan<F>>,
    /// Vectors that together with `F_{s−1}` span `F_s`.
    pub fresh: Vec<Vec<Poly<F::Elem>>>,
}

impl<F: Field> Filtration<F> {
    pub fn gr_dims(&self) -> Vec<usize> {
        let mut prev = 0;
        self.layers
            .iter()
            .map(|l| {
                let d = l.dim() - prev;
                prev = l.dim();
                d
            })
            .collect()
    }

    /// First layer containing the constants. The `S_n`-invariants of the model
    /// are the constants, so this is the unique layer of `Gr(F)` carrying the sign.
    pub fn sign_layer(&self) -> Option<usize> {
        let one = Poly::one(self.layers[0].field(), self.n);
        self.layers.iter().position(|l| l.contains(&one))
    }

    /// Each layer is mapped into itself by `(0 1)` and by the long cycle.
    pub fn layers_are_stable(&self) -> bool {
        if self.n < 2 {
            return true;
        }
        let gens = [perm::transposition(self.n, 0, 1), perm::long_cycle(self.n)];
        self.layers
            .iter()
            .zip(&self.fresh)
            .all(|(l, fresh)| gens.iter().all(|w| fresh.iter().all(|b| l.contains(&b.permute(w)))))
    }

    pub fn summary(&self) -> FiltrationSummary {
        FiltrationSummary {
            gr_dims: self.gr_dims(),
            sign_layer: self.sign_layer(),
            layers_stable: self.layers_are_stable(),
        }
    }
}

impl Filtration<Rationals> {
    /// Trace of `w` on `F_s / F_{s−1}` for the action on `P_n/J`.
    pub fn layer_trace(&self, s: usize, w: &[usize]) -> Result<i64> {
        let tr = |l: &EchelonSpan<Rationals>| -> Result<i64> {
            let t = l
                .trace_of(|g| g.permute(w))
                .ok_or_else(|| Error::InvariantViolation(format!("filtration layer is not stable under {w:?}")))?;
            rational_to_i64(&t).ok_or_else(|| Error::InvariantViolation("non-integral trace".into()))
        };
        let upper = tr(&self.layers[s])?;
        let lower = if s == 0 { 0 } else { tr(&self.layers[s - 1])? };
        Ok(perm::sign(w) * (upper - lower))
    }

    /// Sign multiplicity on each graded piece, from class traces.
    pub fn sign_multiplicities(&self) -> Result<Vec<usize>> {
        let order = factorial(self.n) as i128;
        let classes = perm::class_representatives(self.n);
        (0..self.layers.len())
            .map(|s| {
                let mut acc: i128 = 0;
                for (_, rep, size) in &classes {
                    acc += *size as i128 * perm::sign(rep) as i128 * self.layer_trace(s, rep)? as i128;
                }
                if acc < 0 || acc % order != 0 {
                    return Err(Error::InvariantViolation(format!("sign multiplicity {acc}/{order}")));
                }
                Ok((acc / order) as usize)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationSummary {
    pub gr_dims: Vec<usize>,
    pub sign_layer: Option<usize>,
    pub layers_stable: bool,
}

/// `F_s = F_{s−1} + Σ op(F_{s−1})` over the operators `∂_i` and `∂_i^p`, starting from `F_0 = ⟨Δ_n⟩`.
pub fn gr_filtration<F: Field + Clone>(field: &F, n: usize, p: usize) -> Result<Filtration<F>> {
    check_n(n)?;
    if p < 2 {
        return Err(Error::OutOfRange {
            what: "p",
            value: p as i64,
            bound: "p >= 2".into(),
        });
    }
    let delta = vandermonde(field, n)?;
    let full = factorial(n) as usize;
    let pe = u16::try_from(p).map_err(|_| Error::ExponentOverflow)?;
    let ops: Vec<Monomial> = (0..n)
        .map(|i| Monomial::var(n, i))
        .chain((0..n).map(|i| Monomial::var_pow(n, i, pe)))
        .collect();
    let mut cur = EchelonSpan::new(field.clone(), n);
    cur.insert(&delta);
    let mut layers = alloc::vec![cur.clone()];
    let mut fresh = alloc::vec![alloc::vec![delta]];
    while cur.dim() < full {
        let mut next = Vec::new();
        for g in fresh.last().expect("nonempty") {
            for op in &ops {
                let h = g.apply_monomial_operator(field, op);
                if cur.insert(&h) {
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            return Err(Error::InvariantViolation(format!(
                "filtration stalled at dimension {} below {full}",
                cur.dim()
            )));
        }
        layers.push(cur.clone());
        fresh.push(next);
    }
    Ok(Filtration { n, p, layers, fresh })
}

pub fn gr_summary(n: usize, p: usize, mode: RankMode) -> Result<Certified<FiltrationSummary>> {
    certify(
        mode,
        || Ok(gr_filtration(&Rationals, n, p)?.summary()),
        |fp| Ok(gr_filtration(&fp, n, p)?.summary()),
    )
}

pub fn gr_series(n: usize, p: usize, mode: RankMode) -> Result<Certified<Vec<usize>>> {
    let s = gr_summary(n, p, mode)?;
    Ok(Certified {
        value: s.value.gr_dims,
        certificate: s.certificate,
        primes: s.primes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrReport {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub n: usize,
    pub sigma: Partition,
    pub gr_dims: Vec<usize>,
    pub a_collapsed: Vec<usize>,
    pub certificate: Certificate,
    pub equal: bool,
    pub d_sigma: usize,
    /// Last index of `gr_dims` is `d_σ` and that layer is one-dimensional.
    pub top_ok: bool,
    /// The sign character of `Gr(F)` sits in degree `d_σ`.
    pub sign_ok: bool,
    pub layers_stable: bool,
    /// Closed-form `(d, d^∨)` and the computed top degrees of the two Tanisaki quotients.
    pub formula_degrees: (usize, usize),
    pub computed_degrees: (usize, usize),
    /// `p d + d^∨ = n(n−1)/2`.
    pub degree_identity: bool,
    /// `J_p = Ĵ(σ)` and `J_q^∨ = Ĵ(σ^∨)` degree by degree.
    pub jp_equal: bool,
    pub jq_vee_equal: bool,
    pub pass: bool,
}

pub fn check_triple(p: usize, q: usize, r: usize) -> Result<Partition> {
    if p < 2 || q < 1 || r >= p {
        return Err(Error::Precondition(format!(
            "need p > r >= 0, p > 1, q >= 1; got ({p}, {q}, {r})"
        )));
    }
    Partition::box_plus_row(p, q, r)
}

/// Compares `Gr(F)` for `σ(p, q, r)` with `A_σ` collapsed to total degree.
pub fn gr_vs_a(p: usize, q: usize, r: usize, mode: RankMode) -> Result<GrReport> {
    let sigma = check_triple(p, q, r)?;
    let n = sigma.n();
    check_n(n)?;
    let f = Rationals;
    let filt = gr_summary(n, p, mode)?;
    let a = harmonic_dims(&sigma, mode)?;
    let certificate = if filt.certificate == Certificate::Exact && a.certificate == Certificate::Exact {
        Certificate::Exact
    } else {
        Certificate::Consensus
    };
    let FiltrationSummary {
        gr_dims,
        sign_layer,
        layers_stable,
    } = filt.value;
    let a_collapsed = collapse(&a.value);
    let equal = gr_dims == a_collapsed;
    let d_sigma = sigma.diagram_stats().d_sigma;
    let top_ok = gr_dims.len() == d_sigma + 1 && gr_dims[d_sigma] == 1;
    let sign_ok = sign_layer == Some(d_sigma);

    let bound = default_bound(n);
    let formula_degrees = box_plus_row_top_degrees(p, q, r);
    let ty = graded_quotient(&f, &tanisaki(&f, &sigma)?, bound)?;
    let tx = graded_quotient(&f, &tanisaki(&f, &sigma.dual())?, bound)?;
    let computed_degrees = (
        ty.top_degree().unwrap_or(0) as usize,
        tx.top_degree().unwrap_or(0) as usize,
    );
    let degree_identity = p * formula_degrees.0 + formula_degrees.1 == n * (n - 1) / 2;

    let jp_q = graded_quotient(&f, &jp(&f, n, p)?, bound)?;
    let dcp_q = graded_quotient(&f, &de_concini_procesi(&f, &sigma)?, bound)?;
    let jqv_q = graded_quotient(&f, &jq_vee(&f, n, q, r)?, bound)?;
    let dcp_dual_q = graded_quotient(&f, &de_concini_procesi(&f, &sigma.dual())?, bound)?;
    let jp_equal = jp_q.same_ideal(&dcp_q);
    let jq_vee_equal = jqv_q.same_ideal(&dcp_dual_q);

    let pass = equal
        && top_ok
        && sign_ok
        && layers_stable
        && formula_degrees == computed_degrees
        && degree_identity
        && jp_equal
        && jq_vee_equal;
    Ok(GrReport {
        p,
        q,
        r,
        n,
        sigma,
        gr_dims,
        a_collapsed,
        certificate,
        equal,
        d_sigma,
        top_ok,
        sign_ok,
        layers_stable,
        formula_degrees,
        computed_degrees,
        degree_identity,
        jp_equal,
        jq_vee_equal,
        pass,
    })
}

/// Collapses a bigraded dimension table to total degree.
pub fn collapse(dims: &BTreeMap<(u32, u32), usize>) -> Vec<usize> {
    let top = dims.keys().map(|(a, b)| a + b).max().unwrap_or(0) as usize;
    let mut out = alloc::vec![0; top + 1];
    for ((a, b), d) in dims {
        out[(a + b) as usize] += d;
    }
    out
}
