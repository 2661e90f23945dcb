//! Job scheduling and the named verification suites.

use std::time::Instant;

use nfact_core::charp;
use nfact_core::partition::{box_plus_row_triples, partitions_of};
use rayon::prelude::*;
use serde_json::Value;

use crate::cache::Cache;
use crate::error::{CliError, CliResult};
use crate::report::TaskResult;
use crate::tasks::{FieldSpec, Job, Settings};

#[derive(Clone, Debug)]
pub struct Runner {
    pub settings: Settings,
    pub cache: Cache,
    pub timing: bool,
    pub threads: Option<usize>,
}

impl Runner {
    pub fn new(settings: Settings) -> Self {
        Runner {
            settings,
            cache: Cache::disabled(),
            timing: false,
            threads: None,
        }
    }

    pub fn run_one(&self, job: &Job) -> CliResult<TaskResult> {
        let stub = job.stub(&self.settings);
        let start = Instant::now();
        let mut result = match self.cache.load(&stub) {
            Some(r) => r,
            None => {
                let r = job.run(&self.settings)?;
                self.cache.store(&r);
                r
            }
        };
        if self.timing {
            result.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        Ok(result)
    }

    /// Validates every job up front, runs them on a worker pool and returns
    /// results in canonical order. The first error (in that order) wins.
    pub fn run_all(&self, jobs: Vec<Job>) -> CliResult<Vec<TaskResult>> {
        Ok(self.run_paired(jobs)?.into_iter().map(|(_, r)| r).collect())
    }

    pub fn run_paired(&self, mut jobs: Vec<Job>) -> CliResult<Vec<(Job, TaskResult)>> {
        for j in &jobs {
            j.validate(&self.settings)?;
        }
        jobs.sort_by(|a, b| a.canonical_cmp(b));
        jobs.dedup();
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = self.threads {
            builder = builder.num_threads(t);
        }
        let pool = builder
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        let results: Vec<CliResult<(Job, TaskResult)>> =
            pool.install(|| jobs.par_iter().map(|j| Ok((j.clone(), self.run_one(j)?))).collect());
        results.into_iter().collect()
    }
}

fn partitions_between(lo: usize, hi: usize) -> impl Iterator<Item = nfact_core::Partition> {
    (lo..=hi).flat_map(partitions_of)
}

fn triples_up_to(hi: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    box_plus_row_triples(hi)
        .into_iter()
        .filter(move |&(p, q, r)| p * q + r <= hi)
}

/// Every module's jobs with sizes capped at `max_n` (and at each module's own tier).
pub fn verify_all_jobs(max_n: usize, deep: bool) -> Vec<Job> {
    let heavy = max_n.min(if deep { 6 } else { 5 });
    let mut jobs = Vec::new();
    for s in partitions_between(1, heavy) {
        jobs.push(Job::Dim(s.clone()));
        jobs.push(Job::Springer(s.clone(), FieldSpec::Rationals));
        if s.n() <= 5 {
            jobs.push(Job::Tsigma(s.clone()));
            jobs.push(Job::Sign(s));
        }
    }
    jobs.extend((2..=max_n.min(4)).map(Job::LowestSign));
    jobs.extend(triples_up_to(heavy).map(|(p, q, r)| Job::Gr(p, q, r)));
    for n in 2..=heavy {
        jobs.extend(charp::PRIMES.iter().map(|&p| Job::Charp(n, p)));
    }
    if max_n >= 2 {
        jobs.push(Job::CharpCounterexample);
    }
    if max_n >= 4 {
        jobs.push(Job::CharpBox(2));
    }
    if deep && max_n >= 9 {
        jobs.push(Job::CharpBox(3));
    }
    for n in 2..=max_n.min(4) {
        jobs.extend([2, 3].map(|p| Job::CharpPhi(n, p)));
    }
    jobs.extend(partitions_between(1, max_n.min(12)).map(Job::Nilpair));
    jobs.extend(partitions_between(1, max_n.min(10)).map(Job::Hilb));
    jobs
}

/// One acceptance criterion: the jobs it needs and how to judge their results.
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub jobs: Vec<Job>,
    /// Result keys that must be `true` on every job of this criterion.
    pub checks: &'static [&'static str],
    /// Extra judgement on top of the checks; returns a failure message.
    pub extra: fn(&[(Job, TaskResult)]) -> Option<String>,
    /// `(size, ms)`: jobs of at most this size must together finish within `ms`.
    pub budgets: &'static [(usize, u64)],
}

fn no_extra(_: &[(Job, TaskResult)]) -> Option<String> {
    None
}

fn find<'a>(rs: &'a [(Job, TaskResult)], job: &Job) -> Option<&'a TaskResult> {
    rs.iter().find(|(j, _)| j == job).map(|(_, r)| r)
}

fn extra_vanishing(rs: &[(Job, TaskResult)]) -> Option<String> {
    for (j, r) in rs {
        let want = match j.size() {
            0..=4 => "exhaustive",
            5 => "sampled",
            _ => continue,
        };
        if r.outputs.get("vanishing_mode") != Some(&Value::from(want)) {
            return Some(format!("{}: vanishing mode is not {want}", r.inputs["sigma"]));
        }
        if j.size() == 5 && r.outputs["vanishing_checked"].as_u64() < Some(crate::tasks::VANISH_DRAWS as u64) {
            return Some("too few draws at n = 5".into());
        }
    }
    None
}

fn extra_gr(rs: &[(Job, TaskResult)]) -> Option<String> {
    let anchor = find(rs, &Job::Gr(2, 1, 1))?;
    (anchor.outputs["gr_dims"] != serde_json::json!([1, 4, 1]))
        .then(|| format!("anchor gives {}", anchor.outputs["gr_dims"]))
}

fn extra_charp(rs: &[(Job, TaskResult)]) -> Option<String> {
    let expect = [
        (Job::Charp(5, 2), "dim_divided", 120),
        (Job::Charp(4, 2), "dim_divided", 24),
        (Job::CharpBox(2), "dim_box", 24),
        (Job::CharpCounterexample, "dim_f2", 2),
        (Job::CharpCounterexample, "dim_char0", 4),
    ];
    for (job, key, v) in expect {
        let got = find(rs, &job).map(|r| r.outputs[key].clone());
        if got != Some(Value::from(v)) {
            return Some(format!("{key} for {job:?} is {got:?}, expected {v}"));
        }
    }
    None
}

fn extra_hilb(rs: &[(Job, TaskResult)]) -> Option<String> {
    let fibred = rs.iter().filter(|(_, r)| r.outputs.contains_key("fibres_ok")).count();
    let expected = partitions_between(1, crate::tasks::MAX_N_FIBRES).count();
    (fibred < expected).then(|| format!("only {fibred} of {expected} partitions had their fibres checked"))
}

/// The eleven acceptance criteria. `deep` adds the n = 6 and p = 3 tiers.
pub fn criteria(deep: bool) -> Vec<Criterion> {
    let heavy = if deep { 6 } else { 5 };
    let upto = |hi: usize, f: fn(nfact_core::Partition) -> Job| partitions_between(1, hi).map(f).collect::<Vec<_>>();
    let sign_jobs = upto(5, Job::Sign);
    let mut charp_jobs = vec![
        Job::Charp(5, 2),
        Job::Charp(4, 2),
        Job::CharpBox(2),
        Job::CharpCounterexample,
    ];
    for n in 2..=4 {
        charp_jobs.extend([2, 3].map(|p| Job::CharpPhi(n, p)));
    }
    if deep {
        charp_jobs.push(Job::CharpBox(3));
    }
    let mut hilb_jobs = upto(10, Job::Hilb);
    hilb_jobs.extend((2..=4).map(Job::LowestSign));
    vec![
        Criterion {
            id: 1,
            title: "dim A_sigma = n!",
            jobs: upto(heavy, Job::Dim),
            checks: &["dim_ok"],
            extra: no_extra,
            budgets: &[(5, 5 * 60_000), (6, 60 * 60_000)],
        },
        Criterion {
            id: 2,
            title: "top bidegree is the sign line",
            jobs: sign_jobs.clone(),
            checks: &["top_ok", "sign_ok"],
            extra: no_extra,
            budgets: &[],
        },
        Criterion {
            id: 3,
            title: "regular representation",
            jobs: sign_jobs.clone(),
            checks: &["regular_ok"],
            extra: no_extra,
            budgets: &[],
        },
        Criterion {
            id: 4,
            title: "Gorenstein pairing",
            jobs: sign_jobs,
            checks: &["gorenstein_ok"],
            extra: no_extra,
            budgets: &[],
        },
        Criterion {
            id: 5,
            title: "vanishing of e_r on Y-subsets",
            jobs: upto(5, Job::Dim),
            checks: &["vanishing_ok"],
            extra: extra_vanishing,
            budgets: &[],
        },
        Criterion {
            id: 6,
            title: "Springer presentations",
            jobs: partitions_between(1, heavy)
                .map(|s| Job::Springer(s, FieldSpec::Rationals))
                .collect(),
            checks: &["dim_ok", "hilbert_match", "top_ok"],
            extra: no_extra,
            budgets: &[],
        },
        Criterion {
            id: 7,
            title: "T_sigma matches A_sigma",
            jobs: upto(5, Job::Tsigma),
            checks: &["dims_match", "traces_match", "radical_zero"],
            extra: no_extra,
            budgets: &[],
        },
        Criterion {
            id: 8,
            title: "box plus one row: filtration and presentations",
            jobs: triples_up_to(heavy).map(|(p, q, r)| Job::Gr(p, q, r)).collect(),
            checks: &[
                "gr_equals_a",
                "top_ok",
                "degrees_ok",
                "degree_identity",
                "jp_equal",
                "jq_vee_equal",
            ],
            extra: extra_gr,
            budgets: &[],
        },
        Criterion {
            id: 9,
            title: "divided powers in characteristic p",
            jobs: charp_jobs,
            checks: &[
                "known_value_ok",
                "phi_delta_ok",
                "phi_v_equals_divided",
                "box_is_classical",
                "values_ok",
                "identities_ok",
            ],
            extra: extra_charp,
            budgets: &[],
        },
        Criterion {
            id: 10,
            title: "principal nilpotent pairs",
            jobs: upto(8, Job::Nilpair),
            checks: &[
                "commute",
                "centralizer_ok",
                "brackets",
                "h_semisimple",
                "h_commute",
                "cartan",
                "integral",
                "deformation_ok",
            ],
            extra: no_extra,
            budgets: &[(8, 60_000)],
        },
        Criterion {
            id: 11,
            title: "plane ideals, family fibres and lowest sign degree",
            jobs: hilb_jobs,
            checks: &["colength_ok", "fibres_ok", "degree_ok", "multiplicity_ok"],
            extra: extra_hilb,
            budgets: &[],
        },
    ]
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Judges one criterion. Keys absent from a result are skipped; a key present
/// and not `true` fails.
pub fn judge(c: &Criterion, results: &[(Job, TaskResult)]) -> Verdict {
    let mut rs = Vec::new();
    let mut failures = Vec::new();
    for j in &c.jobs {
        match find(results, j) {
            Some(r) => rs.push((j.clone(), r.clone())),
            None => failures.push(format!("{j:?}: not computed")),
        }
    }
    let mut total_ms = 0;
    for (j, r) in &rs {
        total_ms += r.elapsed_ms.unwrap_or(0);
        for k in c.checks {
            if let Some(v) = r.outputs.get(*k) {
                if v != &Value::Bool(true) {
                    failures.push(format!("{j:?}: {k} = {v}"));
                }
            }
        }
    }
    if let Some(msg) = (c.extra)(&rs) {
        failures.push(msg);
    }
    for &(size, budget) in c.budgets {
        let ms: u64 = rs
            .iter()
            .filter(|(j, _)| j.size() <= size)
            .map(|(_, r)| r.elapsed_ms.unwrap_or(0))
            .sum();
        if ms > budget {
            failures.push(format!("size ≤ {size} took {ms} ms, budget {budget} ms"));
        }
    }
    let pass = failures.is_empty();
    let detail = if pass {
        format!("{} jobs, {} ms", rs.len(), total_ms)
    } else {
        failures.join("; ")
    };
    Verdict {
        id: c.id,
        title: c.title,
        pass,
        detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_all_covers_every_task() {
        let jobs = verify_all_jobs(4, false);
        let mut tasks: Vec<_> = jobs.iter().map(|j| j.task()).collect();
        tasks.sort();
        tasks.dedup();
        assert_eq!(
            tasks,
            ["charp", "dim", "gr", "hilb", "nilpair", "sign", "springer", "tsigma"]
        );
        let s = Settings::default();
        assert!(jobs.iter().all(|j| j.validate(&s).is_ok()));
    }

    #[test]
    fn deep_criteria_validate_only_when_deep() {
        let deep = Settings {
            deep: true,
            ..Settings::default()
        };
        assert!(criteria(true)
            .iter()
            .flat_map(|c| &c.jobs)
            .all(|j| j.validate(&deep).is_ok()));
        assert!(criteria(false)
            .iter()
            .flat_map(|c| &c.jobs)
            .all(|j| j.validate(&Settings::default()).is_ok()));
    }

    #[test]
    fn eleven_criteria() {
        let ids: Vec<u8> = criteria(false).iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=11).collect::<Vec<_>>());
    }
}
