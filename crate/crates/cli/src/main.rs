use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nfact::cache::Cache;
use nfact::error::{CliError, CliResult};
use nfact::report::{render, Format};
use nfact::suites::{verify_all_jobs, Runner};
use nfact::tasks::{FieldSpec, Job, Settings, DEFAULT_SEED};
use nfact_core::partition::{box_plus_row_triples, partitions_of};
use nfact_core::{charp, Partition};

#[derive(Parser)]
#[command(name = "nfact", version, about = "Exact checks around the n! theorem")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Enable the n = 6 and p = 3 tiers.
    #[arg(long, global = true, env = "NFACT_DEEP")]
    deep: bool,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: FormatArg,
    /// Seed for modular primes and random sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest n when no instance is given.
    #[arg(long, global = true, default_value_t = 4)]
    max_n: usize,
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, env = "NFACT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Add elapsed_ms to every result.
    #[arg(long, global = true)]
    timing: bool,
    #[arg(long, global = true, env = "NFACT_THREADS")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Tsv,
}

#[derive(Args)]
struct Instance {
    /// Partition as comma-separated parts, e.g. 3,1,1.
    #[arg(long)]
    sigma: Option<String>,
    /// Every partition of n.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// dim A_sigma, its bigraded table and the e_r vanishing checks.
    Dim(Instance),
    /// Springer presentations and their graded quotients.
    Springer {
        #[command(flatten)]
        inst: Instance,
        /// q or fp:PRIME.
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// The tensor algebra T_sigma against A_sigma.
    Tsigma(Instance),
    /// Associated graded of the coinvariant filtration for a box plus one row.
    Gr {
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Divided-power closures in characteristic p.
    Charp {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_enum, default_value = "divided")]
        instance: CharpInstance,
    },
    /// Principal nilpotent pairs in sl_n.
    Nilpair(Instance),
    /// Plane ideals and the one-parameter family.
    Hilb(Instance),
    /// Sign character, regular representation and Gorenstein pairing; with --n only, the lowest sign degree.
    Sign(Instance),
    /// Every module up to --max-n.
    VerifyAll,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CharpInstance {
    Divided,
    Box,
    Counterexample,
    Phi,
}

fn partitions(inst: &Instance, max_n: usize) -> CliResult<Vec<Partition>> {
    match (&inst.sigma, inst.n) {
        (Some(_), Some(_)) => Err(CliError::Usage("give --sigma or --n, not both".into())),
        (Some(s), None) => Ok(vec![s.parse::<Partition>()?]),
        (None, Some(0)) => Err(CliError::Usage("n must be positive".into())),
        (None, Some(n)) => Ok(partitions_of(n)),
        (None, None) => Ok((1..=max_n).flat_map(partitions_of).collect()),
    }
}

fn jobs(cli: &Cli) -> CliResult<Vec<Job>> {
    let max_n = cli.max_n;
    let each = |inst: &Instance, f: fn(Partition) -> Job| -> CliResult<Vec<Job>> {
        Ok(partitions(inst, max_n)?.into_iter().map(f).collect())
    };
    match &cli.cmd {
        Cmd::Dim(i) => each(i, Job::Dim),
        Cmd::Tsigma(i) => each(i, Job::Tsigma),
        Cmd::Nilpair(i) => each(i, Job::Nilpair),
        Cmd::Hilb(i) => each(i, Job::Hilb),
        Cmd::Springer { inst, field } => {
            let f = FieldSpec::parse(field)?;
            Ok(partitions(inst, max_n)?
                .into_iter()
                .map(|s| Job::Springer(s, f))
                .collect())
        }
        Cmd::Sign(i) => match (&i.sigma, i.n) {
            (None, Some(n)) => Ok(vec![Job::LowestSign(n)]),
            (None, None) => {
                let mut js = each(i, Job::Sign)?;
                js.extend((2..=max_n.min(4)).map(Job::LowestSign));
                Ok(js)
            }
            _ => each(i, Job::Sign),
        },
        Cmd::Gr { p, q, r } => match (p, q, r) {
            (Some(p), Some(q), Some(r)) => Ok(vec![Job::Gr(*p, *q, *r)]),
            (None, None, None) => Ok(box_plus_row_triples(max_n)
                .into_iter()
                .filter(|&(p, q, r)| p * q + r <= max_n)
                .map(|(p, q, r)| Job::Gr(p, q, r))
                .collect()),
            _ => Err(CliError::Usage("give all of --p, --q, --r or none".into())),
        },
        Cmd::Charp { n, p, instance } => charp_jobs(*n, *p, *instance, max_n),
        Cmd::VerifyAll => Ok(verify_all_jobs(max_n, cli.deep)),
    }
}

fn charp_jobs(n: Option<usize>, p: Option<u64>, instance: CharpInstance, max_n: usize) -> CliResult<Vec<Job>> {
    let ns: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (2..=max_n).collect(),
    };
    let ps: Vec<u64> = match p {
        Some(p) => vec![p],
        None => charp::PRIMES.to_vec(),
    };
    Ok(match instance {
        CharpInstance::Divided => ns
            .iter()
            .flat_map(|&n| ps.iter().map(move |&p| Job::Charp(n, p)))
            .collect(),
        CharpInstance::Box => match p {
            Some(p) => vec![Job::CharpBox(p)],
            None => vec![Job::CharpBox(2)],
        },
        CharpInstance::Counterexample => vec![Job::CharpCounterexample],
        CharpInstance::Phi => {
            let ps: Vec<u64> = p.map_or(vec![2, 3], |p| vec![p]);
            let ns: Vec<usize> = n.map_or((2..=max_n.min(4)).collect(), |n| vec![n]);
            ns.iter()
                .flat_map(|&n| ps.iter().map(move |&p| Job::CharpPhi(n, p)))
                .collect()
        }
    })
}

fn default_cache_dir() -> Option<PathBuf> {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(x).join("nfact"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("nfact"))
}

fn run(cli: &Cli) -> CliResult<bool> {
    let jobs = jobs(cli)?;
    let mut runner = Runner::new(Settings {
        deep: cli.deep,
        seed: cli.seed,
    });
    if !cli.no_cache {
        if let Some(dir) = cli.cache_dir.clone().or_else(default_cache_dir) {
            runner.cache = Cache::at(dir);
        }
    }
    runner.timing = cli.timing;
    runner.threads = cli.threads;
    let results = runner.run_all(jobs)?;
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Tsv => Format::Tsv,
    };
    let mut out = std::io::stdout().lock();
    out.write_all(render(&results, format).as_bytes())?;
    out.flush()?;
    let failed = results.iter().filter(|r| !r.pass).count();
    if matches!(cli.cmd, Cmd::VerifyAll) {
        eprintln!(
            "verify-all: {} results, {} passed, {} failed",
            results.len(),
            results.len() - failed,
            failed
        );
    }
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("nfact: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
