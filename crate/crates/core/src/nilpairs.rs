//! Principal nilpotent pairs in `sl_n` built from a Young diagram, their
//! associated semisimple pairs and the conjugation identity along `exp(t(e_1 + e_2))`.
//!
//! Basis vectors are indexed by diagram cells in row-major order.
//! `e_1` moves `v_(i,j)` to `v_(i+1,j)` and `e_2` moves it to `v_(i,j+1)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::linalg::Matrix;
use crate::partition::Partition;

pub const MAX_N: usize = 12;

type Q = BigRational;
type M = Matrix<Rationals>;

/// The sample parameters `t ∈ {1, −2, 1/3}` for the deformation identity.
pub fn deformation_params() -> Vec<Q> {
    alloc::vec![
        Q::one(),
        Q::from_integer(BigInt::from(-2)),
        Q::new(BigInt::one(), BigInt::from(3)),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPair {
    pub first: M,
    pub second: M,
}

impl MatrixPair {
    pub fn n(&self) -> usize {
        self.first.nrows()
    }
}

fn cell_index(sigma: &Partition) -> impl Fn(usize, usize) -> Option<usize> + '_ {
    let cells = sigma.cells();
    move |i, j| cells.iter().position(|c| c.i == i && c.j == j)
}

pub fn build_pair(sigma: &Partition) -> Result<MatrixPair> {
    let n = sigma.n();
    if n > MAX_N {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            max: MAX_N,
        });
    }
    let f = Rationals;
    let idx = cell_index(sigma);
    let mut first = M::zeros(&f, n, n);
    let mut second = M::zeros(&f, n, n);
    for (k, c) in sigma.cells().iter().enumerate() {
        if let Some(t) = idx(c.i + 1, c.j) {
            first.set(t, k, Q::one());
        }
        if let Some(t) = idx(c.i, c.j + 1) {
            second.set(t, k, Q::one());
        }
    }
    Ok(MatrixPair { first, second })
}

/// `h_1 = diag(i) − mean`, `h_2 = diag(j) − mean` over the cells.
pub fn associated_pair(sigma: &Partition) -> Result<MatrixPair> {
    let n = sigma.n();
    if n > MAX_N {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            max: MAX_N,
        });
    }
    let f = Rationals;
    let cells = sigma.cells();
    let centred = |coord: &dyn Fn(usize) -> usize| -> M {
        let total: usize = (0..n).map(coord).sum();
        let mean = Q::new(BigInt::from(total), BigInt::from(n));
        M::diagonal(
            &f,
            (0..n)
                .map(|k| Q::from_integer(BigInt::from(coord(k))) - &mean)
                .collect(),
        )
    };
    Ok(MatrixPair {
        first: centred(&|k| cells[k].i),
        second: centred(&|k| cells[k].j),
    })
}

pub fn transpose_pair(pair: &MatrixPair) -> MatrixPair {
    MatrixPair {
        first: pair.first.transpose(),
        second: pair.second.transpose(),
    }
}

/// Dimension of `{x ∈ sl_n : [x, a] = 0 for every a in mats}`.
pub fn centralizer_dim(mats: &[&M], n: usize) -> usize {
    centralizer_basis(mats, n).len()
}

fn centralizer_basis(mats: &[&M], n: usize) -> Vec<Vec<Q>> {
    let f = Rationals;
    let mut sys = M::zeros(&f, 0, n * n);
    for a in mats {
        // Row (r, c) of [x, a] = Σ_k x_{rk} a_{kc} − a_{rk} x_{kc}.
        for r in 0..n {
            for c in 0..n {
                let mut row = alloc::vec![Q::zero(); n * n];
                for k in 0..n {
                    row[r * n + k] += a.get(k, c);
                    row[k * n + c] -= a.get(r, k);
                }
                sys.push_row(row);
            }
        }
    }
    let mut trace = alloc::vec![Q::zero(); n * n];
    for d in 0..n {
        trace[d * n + d] = Q::one();
    }
    sys.push_row(trace);
    sys.nullspace()
}

/// Jordan block sizes of a nilpotent matrix from the ranks of its powers, or `None` if not nilpotent.
pub fn jordan_type(m: &M) -> Option<Partition> {
    let n = m.nrows();
    let mut ranks = alloc::vec![n];
    let mut power = M::identity(m.field(), n);
    for _ in 0..n {
        power = power.mul(m);
        ranks.push(power.rank());
    }
    if ranks[n] != 0 {
        return None;
    }
    // Blocks of size ≥ k: ranks[k−1] − ranks[k].
    let at_least: Vec<usize> = (1..=n).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut parts = Vec::new();
    for k in 1..=n {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        parts.extend(core::iter::repeat_n(k, exactly));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts).ok()
}

/// `exp(tN)` for nilpotent `N`, or an error if `N^n ≠ 0`.
pub fn exp_nilpotent(m: &M, t: &Q) -> Result<M> {
    let f = Rationals;
    let n = m.nrows();
    if !m.pow(n as u32).is_zero() {
        return Err(Error::Precondition("matrix is not nilpotent".into()));
    }
    let tm = m.scale(t);
    let mut acc = M::identity(&f, n);
    let mut term = M::identity(&f, n);
    for k in 1..n {
        term = term.mul(&tm).scale(&Q::new(BigInt::one(), BigInt::from(k)));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// `g(t) h_i g(t)^{-1} = h_i − t e_i` for both `i`, with `g(t) = exp(t(e_1 + e_2))`.
pub fn deformation_check(e: &MatrixPair, h: &MatrixPair, t: &Q) -> Result<bool> {
    let sum = e.first.add(&e.second);
    let g = exp_nilpotent(&sum, t)?;
    let g_inv = exp_nilpotent(&sum, &-t.clone())?;
    let ok = |hi: &M, ei: &M| g.mul(hi).mul(&g_inv) == hi.sub(&ei.scale(t));
    Ok(ok(&h.first, &e.first) && ok(&h.second, &e.second))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub commute: bool,
    pub centralizer_dim: usize,
}

pub fn verify_axioms(pair: &MatrixPair) -> AxiomReport {
    let n = pair.n();
    AxiomReport {
        commute: pair.first.commutator(&pair.second).is_zero(),
        centralizer_dim: centralizer_dim(&[&pair.first, &pair.second], n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PnpReport {
    pub sigma: Partition,
    pub commute: bool,
    pub centralizer_dim: usize,
    pub nilpotent: bool,
    pub h_semisimple: bool,
    pub h_commute: bool,
    /// `[h_i, e_j] = δ_ij e_j` for `(i, j)` in `(1,1), (1,2), (2,1), (2,2)`.
    pub brackets: [bool; 4],
    /// The common centralizer of `h_1, h_2` is the traceless diagonal.
    pub cartan: bool,
    /// Differences of diagonal entries of each `h_i` are integers.
    pub integral: bool,
    pub deformation: Vec<(Q, bool)>,
    pub jordan_first: Option<Partition>,
    pub jordan_second: Option<Partition>,
    /// Axioms and Jordan types survive transposing both matrices.
    pub transpose_ok: bool,
    pub pass: bool,
}

pub fn full_check(sigma: &Partition) -> Result<PnpReport> {
    let n = sigma.n();
    let e = build_pair(sigma)?;
    let h = associated_pair(sigma)?;
    let axioms = verify_axioms(&e);
    let jordan_first = jordan_type(&e.first);
    let jordan_second = jordan_type(&e.second);
    let nilpotent = jordan_first.is_some() && jordan_second.is_some();

    let h_semisimple = h.first.is_diagonal() && h.second.is_diagonal();
    let h_commute = h.first.commutator(&h.second).is_zero();
    let hs = [&h.first, &h.second];
    let es = [&e.first, &e.second];
    let mut brackets = [false; 4];
    for (a, hi) in hs.iter().enumerate() {
        for (b, ej) in es.iter().enumerate() {
            let want = if a == b {
                (*ej).clone()
            } else {
                M::zeros(&Rationals, n, n)
            };
            brackets[2 * a + b] = hi.commutator(ej) == want;
        }
    }
    let cent = centralizer_basis(&[&h.first, &h.second], n);
    let cartan = cent.len() + 1 == n
        && cent
            .iter()
            .all(|v| (0..n).all(|r| (0..n).all(|c| r == c || v[r * n + c].is_zero())));
    let integral = hs
        .iter()
        .all(|hi| (0..n).all(|a| (0..n).all(|b| (hi.get(a, a) - hi.get(b, b)).is_integer())));
    let deformation = deformation_params()
        .into_iter()
        .map(|t| {
            let ok = deformation_check(&e, &h, &t)?;
            Ok((t, ok))
        })
        .collect::<Result<Vec<_>>>()?;

    let et = transpose_pair(&e);
    let at = verify_axioms(&et);
    let transpose_ok =
        at == axioms && jordan_type(&et.first) == jordan_first && jordan_type(&et.second) == jordan_second;

    let pass = axioms.commute
        && axioms.centralizer_dim + 1 == n
        && nilpotent
        && jordan_first.as_ref() == Some(sigma)
        && jordan_second.as_ref() == Some(&sigma.dual())
        && h_semisimple
        && h_commute
        && brackets.iter().all(|&b| b)
        && cartan
        && integral
        && deformation.iter().all(|(_, ok)| *ok)
        && transpose_ok;
    Ok(PnpReport {
        sigma: sigma.clone(),
        commute: axioms.commute,
        centralizer_dim: axioms.centralizer_dim,
        nilpotent,
        h_semisimple,
        h_commute,
        brackets,
        cartan,
        integral,
        deformation,
        jordan_first,
        jordan_second,
        transpose_ok,
        pass,
    })
}
