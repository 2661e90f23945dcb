//! One verification job per (task, instance), each producing a [`TaskResult`].

use std::cmp::Ordering;
use std::collections::BTreeMap;

use nfact_core::charp;
use nfact_core::field::{Field, PrimeField, Rationals};
use nfact_core::grfilt;
use nfact_core::harmonics::{self, HarmonicSpace, VanishingChecker};
use nfact_core::hilb;
use nfact_core::linalg::RankMode;
use nfact_core::nilpairs;
use nfact_core::partition::factorial;
use nfact_core::springer::{self, de_concini_procesi, graded_quotient, tanisaki};
use nfact_core::tsigma;
use nfact_core::Partition;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::report::{bigraded, TaskResult};

pub const DEFAULT_SEED: u64 = 0x6e66_6163_7421;
/// Random admissible vanishing draws per partition at `n = 5`.
pub const VANISH_DRAWS: usize = 1000;
/// Random samples per `(n, p)` for the `φ` identities.
pub const PHI_SAMPLES: usize = 500;
/// Largest `n` whose fibres of the one-parameter family are checked.
pub const MAX_N_FIBRES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "q" | "Q" => Ok(FieldSpec::Rationals),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or_else(|| CliError::Usage(format!("field must be q or fp:PRIME, got {s:?}")))?;
                PrimeField::new(p)?;
                Ok(FieldSpec::Prime(p))
            }
        }
    }

    pub fn tag(&self) -> String {
        match self {
            FieldSpec::Rationals => "q".into(),
            FieldSpec::Prime(p) => format!("fp:{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub deep: bool,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            deep: false,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Job {
    Dim(Partition),
    Sign(Partition),
    LowestSign(usize),
    Springer(Partition, FieldSpec),
    Tsigma(Partition),
    Gr(usize, usize, usize),
    Charp(usize, u64),
    CharpBox(u64),
    CharpCounterexample,
    CharpPhi(usize, u64),
    Nilpair(Partition),
    Hilb(Partition),
}

impl Job {
    pub fn task(&self) -> &'static str {
        match self {
            Job::Dim(_) => "dim",
            Job::Sign(_) | Job::LowestSign(_) => "sign",
            Job::Springer(..) => "springer",
            Job::Tsigma(_) => "tsigma",
            Job::Gr(..) => "gr",
            Job::Charp(..) | Job::CharpBox(_) | Job::CharpCounterexample | Job::CharpPhi(..) => "charp",
            Job::Nilpair(_) => "nilpair",
            Job::Hilb(_) => "hilb",
        }
    }

    pub fn inputs(&self) -> Map<String, Value> {
        let v = match self {
            Job::Dim(s) | Job::Sign(s) | Job::Tsigma(s) | Job::Nilpair(s) | Job::Hilb(s) => {
                json!({"sigma": s.to_string(), "n": s.n()})
            }
            Job::LowestSign(n) => json!({"n": n}),
            Job::Springer(s, f) => json!({"sigma": s.to_string(), "n": s.n(), "field": f.tag()}),
            Job::Gr(p, q, r) => json!({"p": p, "q": q, "r": r, "n": p * q + r}),
            Job::Charp(n, p) => json!({"instance": "divided", "n": n, "p": p}),
            Job::CharpBox(p) => json!({"instance": "box", "n": p * p, "p": p}),
            Job::CharpCounterexample => json!({"instance": "counterexample", "n": 2, "p": 2}),
            Job::CharpPhi(n, p) => json!({"instance": "phi", "n": n, "p": p}),
        };
        match v {
            Value::Object(m) => m,
            _ => unreachable!(),
        }
    }

    /// Problem size that decides the tier.
    pub fn size(&self) -> usize {
        match self {
            Job::Dim(s) | Job::Sign(s) | Job::Tsigma(s) | Job::Nilpair(s) | Job::Hilb(s) | Job::Springer(s, _) => s.n(),
            Job::LowestSign(n) | Job::Charp(n, _) | Job::CharpPhi(n, _) => *n,
            Job::Gr(p, q, r) => p * q + r,
            Job::CharpBox(p) => (p * p) as usize,
            Job::CharpCounterexample => 2,
        }
    }

    /// `(largest size by default, largest size with --deep)`.
    fn limits(&self) -> (usize, usize) {
        match self {
            Job::Dim(_) | Job::Springer(..) | Job::Gr(..) | Job::Charp(..) => (5, 6),
            Job::Sign(_) | Job::Tsigma(_) => (5, 5),
            Job::LowestSign(_) => (harmonics::MAX_N_LOWEST_SIGN, harmonics::MAX_N_LOWEST_SIGN),
            Job::CharpBox(_) => (4, 9),
            Job::CharpCounterexample => (2, 2),
            Job::CharpPhi(..) => (4, 4),
            Job::Nilpair(_) => (nilpairs::MAX_N, nilpairs::MAX_N),
            Job::Hilb(_) => (10, 10),
        }
    }

    /// Rejects instances outside the enabled tier.
    pub fn validate(&self, settings: &Settings) -> CliResult<()> {
        let (normal, deep) = self.limits();
        let n = self.size();
        if n > deep {
            return Err(CliError::Usage(format!(
                "{}: size {n} is above the supported maximum {deep}",
                self.task()
            )));
        }
        if n > normal && !settings.deep {
            return Err(CliError::Usage(format!("{}: size {n} needs --deep", self.task())));
        }
        match self {
            Job::Charp(_, p) | Job::CharpPhi(_, p) if !charp::PRIMES.contains(p) => {
                Err(CliError::Usage(format!("p must be one of {:?}", charp::PRIMES)))
            }
            Job::CharpPhi(n, p) if *n < 2 || *p > 3 => {
                Err(CliError::Usage("phi identities need n ≥ 2 and p ∈ {2, 3}".into()))
            }
            Job::Charp(n, _) if *n < 1 => Err(CliError::Usage("n must be positive".into())),
            Job::CharpBox(p) if !matches!(p, 2 | 3) => Err(CliError::Usage("box comparison needs p ∈ {2, 3}".into())),
            Job::Gr(p, q, r) => grfilt::check_triple(*p, *q, *r).map(|_| ()).map_err(Into::into),
            Job::LowestSign(n) if *n < 2 => Err(CliError::Usage("n must be at least 2".into())),
            _ => Ok(()),
        }
    }

    /// Canonical output order: task, then instance.
    pub fn canonical_cmp(&self, other: &Job) -> Ordering {
        self.task()
            .cmp(other.task())
            .then_with(|| self.order_key().cmp(&other.order_key()))
    }

    fn order_key(&self) -> (usize, usize, Vec<usize>, FieldSpec) {
        let none = FieldSpec::Rationals;
        match self {
            Job::Dim(s) | Job::Tsigma(s) | Job::Nilpair(s) | Job::Hilb(s) => (0, s.n(), s.parts().to_vec(), none),
            Job::Sign(s) => (1, s.n(), s.parts().to_vec(), none),
            Job::LowestSign(n) => (0, *n, vec![], none),
            Job::Springer(s, f) => (0, s.n(), s.parts().to_vec(), *f),
            Job::Gr(p, q, r) => (0, p * q + r, vec![*p, *q, *r], none),
            Job::Charp(n, p) => (0, *n, vec![*p as usize], none),
            Job::CharpBox(p) => (1, 0, vec![*p as usize], none),
            Job::CharpCounterexample => (2, 0, vec![], none),
            Job::CharpPhi(n, p) => (3, *n, vec![*p as usize], none),
        }
    }

    /// Seed the job consumes, if any. Part of the cache key.
    pub fn seed(&self, settings: &Settings) -> Option<u64> {
        match self {
            Job::Dim(s) if s.n() >= 5 => Some(settings.seed),
            Job::Gr(..) if self.size() >= 6 => Some(settings.seed),
            Job::CharpPhi(..) => Some(settings.seed),
            _ => None,
        }
    }

    fn mode(&self, settings: &Settings) -> RankMode {
        if self.size() >= 6 {
            RankMode::ModularConsensus { seed: settings.seed }
        } else {
            RankMode::Exact
        }
    }

    /// Result shell with inputs and seed filled in; the cache key is derived from it.
    pub fn stub(&self, settings: &Settings) -> TaskResult {
        let mut r = TaskResult::new(self.task(), self.inputs());
        r.seed = self.seed(settings);
        r
    }

    pub fn run(&self, settings: &Settings) -> CliResult<TaskResult> {
        let mut r = self.stub(settings);
        match self {
            Job::Dim(s) => run_dim(&mut r, s, self.mode(settings), settings.seed)?,
            Job::Sign(s) => run_sign(&mut r, s)?,
            Job::LowestSign(n) => {
                let rep = hilb::lowest_sign_check(*n)?;
                r.out("degree", rep.degree)
                    .out("multiplicity", rep.multiplicity)
                    .out("deg_formula", rep.deg_formula)
                    .out("remainder", rep.remainder)
                    .check("degree_ok", rep.degree == rep.deg_formula)
                    .check("multiplicity_ok", (rep.multiplicity == 1) == (rep.remainder == 0));
            }
            Job::Springer(s, f) => match f {
                FieldSpec::Rationals => run_springer(&mut r, &Rationals, s)?,
                FieldSpec::Prime(p) => run_springer(&mut r, &PrimeField::new(*p)?, s)?,
            },
            Job::Tsigma(s) => run_tsigma(&mut r, s)?,
            Job::Gr(p, q, rr) => run_gr(&mut r, *p, *q, *rr, self.mode(settings))?,
            Job::Charp(n, p) => run_divided(&mut r, *n, *p)?,
            Job::CharpBox(p) => run_box(&mut r, *p)?,
            Job::CharpCounterexample => {
                let (small, big) = charp::divided_counterexample()?;
                let f3 = charp::counterexample_over(3)?;
                r.out("dim_f2", small)
                    .out("dim_char0", big)
                    .out("dim_f3", f3)
                    .check("values_ok", (small, big, f3) == (2, 4, 4));
            }
            Job::CharpPhi(n, p) => {
                let rep = charp::phi_identities(*n, *p, PHI_SAMPLES, settings.seed)?;
                r.out("samples", rep.samples)
                    .out("commute_failures", rep.commute_failures)
                    .out("divided_failures", rep.divided_failures)
                    .check("identities_ok", rep.commute_failures == 0 && rep.divided_failures == 0);
            }
            Job::Nilpair(s) => run_nilpair(&mut r, s)?,
            Job::Hilb(s) => run_hilb(&mut r, s)?,
        }
        Ok(r)
    }
}

fn run_dim(r: &mut TaskResult, s: &Partition, mode: RankMode, seed: u64) -> CliResult<()> {
    let n = s.n();
    let expected = factorial(n) as usize;
    let d_sigma = s.diagram_stats().d_sigma;
    let (dims, top_ok) = if matches!(mode, RankMode::Exact) {
        let h = HarmonicSpace::new(s)?;
        (h.dims(), h.top_is_delta_line())
    } else {
        let c = harmonics::harmonic_dims(s, mode)?;
        r.certificate = c.certificate.tag().into();
        let top: Vec<_> = c
            .value
            .iter()
            .filter(|((a, b), _)| (a + b) as usize >= d_sigma)
            .collect();
        let ok = top.len() == 1 && (top[0].0 .0 + top[0].0 .1) as usize == d_sigma && *top[0].1 == 1;
        (c.value, ok)
    };
    let dim: usize = dims.values().sum();
    r.out("dim", dim)
        .out("expected", expected)
        .out("bigraded", bigraded(&dims))
        .out("d_sigma", d_sigma)
        .check("dim_ok", dim == expected)
        .check("top_ok", top_ok);
    let checker = || VanishingChecker::new(s);
    let (mode, rep) = match n {
        0..=4 => ("exhaustive", Some(checker()?.exhaustive()?)),
        5 => (
            "sampled",
            Some(checker()?.sampled(VANISH_DRAWS, seed ^ s.parts().iter().fold(0, |h, &p| h * 31 + p as u64))?),
        ),
        _ => ("skipped", None),
    };
    r.out("vanishing_mode", mode);
    if let Some(rep) = rep {
        r.out("vanishing_checked", rep.checked)
            .out("vanishing_failures", rep.failures.len())
            .check("vanishing_ok", rep.failures.is_empty());
    }
    Ok(())
}

fn run_sign(r: &mut TaskResult, s: &Partition) -> CliResult<()> {
    let h = HarmonicSpace::new(s)?;
    let d_sigma = s.diagram_stats().d_sigma as u32;
    let signs = h.sign_analysis()?;
    let (top_key, top_dim) = h.top().unwrap_or(((0, 0), 0));
    let nonzero: BTreeMap<(u32, u32), usize> = signs.iter().filter(|(_, &m)| m > 0).map(|(k, m)| (*k, *m)).collect();
    let top_sign = nonzero.len() == 1 && nonzero.get(&top_key) == Some(&1);
    let reg = h.regular_rep_check()?;
    let gor = h.gorenstein_check()?;
    r.out("top_bidegree", json!([top_key.0, top_key.1]))
        .out("top_dim", top_dim)
        .out("d_sigma", d_sigma)
        .out("sign_multiplicities", bigraded(&nonzero))
        .check(
            "top_ok",
            top_key.0 + top_key.1 == d_sigma && top_dim == 1 && h.top_is_delta_line(),
        )
        .check("sign_ok", top_sign)
        .out(
            "class_traces",
            Value::Array(reg.traces.iter().map(|(ct, t)| json!([ct.to_string(), t])).collect()),
        )
        .check("regular_ok", reg.pass)
        .out(
            "gorenstein_blocks",
            Value::Array(
                gor.blocks
                    .iter()
                    .map(|b| json!([b.degree, b.dim, b.dual_dim, b.rank]))
                    .collect(),
            ),
        )
        .check("gorenstein_ok", gor.pass);
    Ok(())
}

fn run_springer<F: Field>(r: &mut TaskResult, field: &F, s: &Partition) -> CliResult<()> {
    let bound = springer::default_bound(s.n());
    let q = graded_quotient(field, &tanisaki(field, s)?, bound)?;
    let d = graded_quotient(field, &de_concini_procesi(field, &s.dual())?, bound)?;
    let expected = s.multinomial() as usize;
    let top = q.top_degree().unwrap_or(0) as usize;
    r.out("dim", q.dim())
        .out("expected", expected)
        .out("hilbert", q.hilbert())
        .out("hilbert_dual_presentation", d.hilbert())
        .out("top_degree", top)
        .out("springer_dim", s.springer_dim())
        .check("dim_ok", q.dim() == expected)
        .check("hilbert_match", q.hilbert() == d.hilbert())
        .check("top_ok", top == s.springer_dim());
    Ok(())
}

fn run_tsigma(r: &mut TaskResult, s: &Partition) -> CliResult<()> {
    let c = tsigma::compare_t_a(s)?;
    r.out("t_dims", bigraded(&c.t_dims))
        .out("t_total", c.t_dims.values().sum::<usize>())
        .check("dims_match", c.dims_match)
        .check("traces_match", c.traces_match)
        .check("degree_one_ok", c.degree_one_ok)
        .out("rebuilt_radical", c.rebuilt_radical)
        .check("radical_zero", c.rebuilt_radical == 0)
        .check("gorenstein", c.gorenstein)
        .check("top_is_sign_line", c.top_is_sign_line);
    Ok(())
}

fn run_gr(r: &mut TaskResult, p: usize, q: usize, rr: usize, mode: RankMode) -> CliResult<()> {
    let g = grfilt::gr_vs_a(p, q, rr, mode)?;
    r.certificate = g.certificate.tag().into();
    r.out("sigma", g.sigma.to_string())
        .out("gr_dims", g.gr_dims.clone())
        .out("a_collapsed", g.a_collapsed.clone())
        .out("d_sigma", g.d_sigma)
        .out("formula_degrees", json!([g.formula_degrees.0, g.formula_degrees.1]))
        .out("computed_degrees", json!([g.computed_degrees.0, g.computed_degrees.1]))
        .check("gr_equals_a", g.equal)
        .check("top_ok", g.top_ok)
        .check("sign_ok", g.sign_ok)
        .check("layers_stable", g.layers_stable)
        .check("degrees_ok", g.formula_degrees == g.computed_degrees)
        .check("degree_identity", g.degree_identity)
        .check("jp_equal", g.jp_equal)
        .check("jq_vee_equal", g.jq_vee_equal);
    Ok(())
}

fn run_divided(r: &mut TaskResult, n: usize, p: u64) -> CliResult<()> {
    let d = charp::divided_span_dim(n, p)?;
    let status = if d.conjecture_holds() { "pass" } else { "fail" };
    r.out("dim_divided", d.dim)
        .out("classical", d.classical)
        .out("levels", d.levels)
        .out("dim_first_level", d.dim_first_level)
        .out("in_range", d.in_range)
        .out("conjecture_status", status)
        .check("bounded_by_classical", d.dim <= d.classical)
        .check("generators_sufficient", d.generators_sufficient);
    // Instances whose value is known independently are hard checks.
    let known = match (n, p) {
        (5, 2) => Some(120),
        (4, 2) => Some(24),
        _ => None,
    };
    if let Some(k) = known {
        r.check("known_value_ok", d.dim == k);
    }
    Ok(())
}

fn run_box(r: &mut TaskResult, p: u64) -> CliResult<()> {
    if p == 2 {
        let b = charp::box_comparison(2)?;
        r.out("dim_divided", b.dim_divided)
            .out("dim_box", b.dim_box)
            .out("classical", b.dim_classical)
            .out("phi_delta_sign", b.phi_delta_sign)
            .check("phi_delta_ok", b.phi_delta_sign.is_some())
            .check("phi_v_equals_divided", b.phi_v_equals_divided)
            .check("box_dominates", b.box_dominates)
            .check("box_is_classical", b.box_is_classical);
    } else {
        let sign = charp::phi_box_delta(p)?;
        r.out("phi_delta_sign", sign).check("phi_delta_ok", sign.is_some());
    }
    Ok(())
}

fn run_nilpair(r: &mut TaskResult, s: &Partition) -> CliResult<()> {
    let c = nilpairs::full_check(s)?;
    let show = |p: &Option<Partition>| p.as_ref().map(|p| p.to_string());
    r.check("commute", c.commute)
        .out("centralizer_dim", c.centralizer_dim)
        .check("centralizer_ok", c.centralizer_dim + 1 == s.n())
        .check("nilpotent", c.nilpotent)
        .check("h_semisimple", c.h_semisimple)
        .check("h_commute", c.h_commute)
        .check("brackets", c.brackets.iter().all(|&b| b))
        .check("cartan", c.cartan)
        .check("integral", c.integral)
        .out(
            "deformation",
            Value::Array(c.deformation.iter().map(|(t, ok)| json!([t.to_string(), ok])).collect()),
        )
        .check("deformation_ok", c.deformation.iter().all(|(_, ok)| *ok))
        .out("jordan_first", show(&c.jordan_first))
        .out("jordan_second", show(&c.jordan_second))
        .check("transpose_ok", c.transpose_ok);
    r.pass &= c.pass;
    Ok(())
}

fn run_hilb(r: &mut TaskResult, s: &Partition) -> CliResult<()> {
    let n = s.n();
    let colength = hilb::ideal_sigma(s).colength()?;
    r.out("colength", colength)
        .check("colength_ok", colength == n)
        .out("b_fixed", hilb::b_fixed_by_generators(s));
    if n <= MAX_N_FIBRES {
        let mut rows = Vec::new();
        let mut ok = true;
        for l in hilb::fibre_params() {
            let f = hilb::family_fibre(s, &l)?;
            ok &= f.pass;
            rows.push(json!([
                l.to_string(),
                f.colength,
                f.basis_ok,
                f.special_ok,
                f.split.map(|(a, b)| [a, b])
            ]));
        }
        r.out("reduce_step", s.reduce_step().to_string())
            .out("fibres", Value::Array(rows))
            .check("fibres_ok", ok);
    }
    if n <= hilb::MAX_N_MAXIMAL_RANK {
        r.check("maximal_rank", hilb::maximal_rank_check(s)?);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn dim_two_one() {
        let r = Job::Dim(p("2,1")).run(&Settings::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.outputs["dim"], 6);
        assert_eq!(r.outputs["vanishing_mode"], "exhaustive");
    }

    #[test]
    fn deep_gating() {
        let s = Settings::default();
        assert!(Job::Dim(p("3,3")).validate(&s).is_err());
        assert!(Job::Dim(p("3,3")).validate(&Settings { deep: true, ..s }).is_ok());
        assert!(Job::Nilpair(p("4,4")).validate(&s).is_ok());
        assert!(Job::Charp(4, 11).validate(&s).is_err());
        assert!(Job::Gr(1, 1, 0).validate(&s).is_err());
    }

    #[test]
    fn field_spec() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("fp:7").unwrap(), FieldSpec::Prime(7));
        assert!(FieldSpec::parse("fp:8").is_err());
        assert!(FieldSpec::parse("r").is_err());
    }

    #[test]
    fn canonical_order_is_task_then_instance() {
        let mut jobs = vec![
            Job::Nilpair(p("2")),
            Job::Dim(p("3")),
            Job::Dim(p("2,1")),
            Job::Dim(p("2")),
        ];
        jobs.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(
            jobs,
            vec![
                Job::Dim(p("2")),
                Job::Dim(p("2,1")),
                Job::Dim(p("3")),
                Job::Nilpair(p("2"))
            ]
        );
    }
}
