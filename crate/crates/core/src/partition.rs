//! Partitions and their diagrams.
//!
//! A partition `σ_0 ≥ σ_1 ≥ … ≥ σ_m > 0` of `n` has diagram
//! `D_σ = {(i, j) : i < σ_j}`; `i` is the column and `j` the row. Cells are
//! always listed row-major (row `j` ascending, then `i` ascending), which fixes
//! the sign of every determinant built over the diagram.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A lattice cell `(i, j)` of a diagram: column `i`, row `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramStats {
    pub cells: Vec<Cell>,
    /// `Σ (i + j)` over the diagram: the top degree of `A_σ`.
    pub d_sigma: usize,
    /// Smallest `d` such that every monomial of degree `d` lies in `I_σ`.
    pub d_ideal: usize,
    /// `d_ideal (d_ideal + 1) / 2 − n`, zero exactly for staircases.
    pub distance_to_staircase: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Staircase,
    Box { p: usize, q: usize },
    BoxPlusRow { p: usize, q: usize, r: usize },
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub shape: Shape,
    /// Parts strictly decreasing, i.e. `I_σ` is fixed by the upper-triangular Borel.
    pub b_fixed: bool,
}

impl Partition {
    /// Builds a partition, rejecting empty input, zero parts and increases.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("parts must be nonincreasing".into()));
        }
        Ok(Partition { parts })
    }

    /// The partition `σ(p, q, r)`: `q` rows of length `p` followed by one row of length `r`.
    pub fn box_plus_row(p: usize, q: usize, r: usize) -> Result<Self> {
        if !(p > r && p > 1 && q >= 1) {
            return Err(Error::Precondition(alloc::format!(
                "box-plus-row needs p > r >= 0, p > 1, q >= 1; got ({p},{q},{r})"
            )));
        }
        let mut parts = alloc::vec![p; q];
        if r > 0 {
            parts.push(r);
        }
        Partition::new(parts)
    }

    pub fn staircase(m: usize) -> Result<Self> {
        Partition::new((1..=m).rev().collect())
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `σ_j`, zero past the last row.
    pub fn part(&self, j: usize) -> usize {
        self.parts.get(j).copied().unwrap_or(0)
    }

    pub fn dual(&self) -> Partition {
        let width = self.parts[0];
        let parts = (0..width)
            .map(|k| self.parts.iter().filter(|&&p| p > k).count())
            .collect();
        Partition { parts }
    }

    /// Diagram cells in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(j, &len)| (0..len).map(move |i| Cell { i, j }))
            .collect()
    }

    pub fn contains_cell(&self, i: usize, j: usize) -> bool {
        i < self.part(j)
    }

    pub fn diagram_stats(&self) -> DiagramStats {
        let cells = self.cells();
        let d_sigma = cells.iter().map(|c| c.i + c.j).sum();
        let d_ideal = 1 + cells.iter().map(|c| c.i + c.j).max().unwrap_or(0);
        let distance_to_staircase = d_ideal * (d_ideal + 1) / 2 - self.n();
        DiagramStats {
            cells,
            d_sigma,
            d_ideal,
            distance_to_staircase,
        }
    }

    /// `d_k(σ) = n − Σ_{s=0}^{n−k−1} σ'_s`, with the dual padded by zeros.
    pub fn d_k(&self, k: usize) -> Result<usize> {
        let n = self.n();
        if k == 0 || k > n {
            return Err(Error::OutOfRange {
                what: "k",
                value: k as i64,
                bound: alloc::format!("1..={n}"),
            });
        }
        let dual = self.dual();
        let covered: usize = (0..n - k).map(|s| dual.part(s)).sum();
        Ok(n - covered)
    }

    /// `n_k(σ) = σ'_k + σ'_{k+1} + ⋯`.
    pub fn n_k(&self, k: usize) -> usize {
        self.dual().parts.iter().skip(k).sum()
    }

    /// `Σ_j j σ_j`, the Springer fibre dimension and top degree of `P_n / J(σ)`.
    pub fn springer_dim(&self) -> usize {
        self.parts.iter().enumerate().map(|(j, &p)| j * p).sum()
    }

    pub fn classify(&self) -> Classification {
        let b_fixed = self.parts.windows(2).all(|w| w[0] > w[1]);
        let m = self.parts.len();
        let shape = if self.parts.iter().enumerate().all(|(j, &p)| p == m - j) {
            Shape::Staircase
        } else if self.parts.iter().all(|&p| p == self.parts[0]) {
            Shape::Box { p: self.parts[0], q: m }
        } else if let Some((p, q, r)) = self.box_plus_row_params() {
            Shape::BoxPlusRow { p, q, r }
        } else {
            Shape::Other
        };
        Classification { shape, b_fixed }
    }

    /// `(p, q, r)` with `σ = σ(p, q, r)`, if the shape allows it (boxes give `r = 0`).
    pub fn box_plus_row_params(&self) -> Option<(usize, usize, usize)> {
        let p = self.parts[0];
        let q = self.parts.iter().take_while(|&&x| x == p).count();
        let rest = &self.parts[q..];
        let r = match rest {
            [] => 0,
            [r] => *r,
            _ => return None,
        };
        (p > 1 && p > r).then_some((p, q, r))
    }

    /// Appends a part equal to one: `σ' = (σ_0, …, σ_m, 1)`.
    pub fn reduce_step(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.push(1);
        Partition { parts }
    }

    /// `n! / Π σ_i!`.
    pub fn multinomial(&self) -> u128 {
        let mut num = factorial(self.n());
        for &p in &self.parts {
            num /= factorial(p);
        }
        num
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidPartition("empty string".into()));
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(alloc::format!("bad part {:?}", t.to_string())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, in reverse lexicographic order (`(n)` first).
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// All admissible `(p, q, r)` with `p > r ≥ 0`, `p > 1`, `q ≥ 1` and `pq + r ≤ max_n`.
pub fn box_plus_row_triples(max_n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for p in 2..=max_n {
        for q in 1..=max_n / p {
            for r in 0..p {
                if p * q + r <= max_n {
                    out.push((p, q, r));
                }
            }
        }
    }
    out
}

/// Closed forms for `(n_k(σ), n_k(σ^∨))` when `σ = σ(p, q, r)`.
pub fn box_plus_row_n_k(p: usize, q: usize, r: usize, k: usize) -> (usize, usize) {
    let nk = if k <= r {
        q * (p - k) + (r - k)
    } else if k < p {
        q * (p - k)
    } else {
        0
    };
    let nk_dual = if k <= q { p * (q - k) + r } else { 0 };
    (nk, nk_dual)
}

/// Top degrees `(d, d^∨)` of `H*(X_σ)` and `H*(X_{σ^∨})` for `σ = σ(p, q, r)`.
pub fn box_plus_row_top_degrees(p: usize, q: usize, r: usize) -> (usize, usize) {
    let d = (2 * q * r + p * (q - 1) * q) / 2;
    let d_dual = (q * p * (p - 1) + r * (r.saturating_sub(1))) / 2;
    (d, d_dual)
}

/// Writes `n = 1 + 2 + ⋯ + m + s` with `0 ≤ s < m + 1` and returns
/// `(deg(n), s)` where `deg(n) = Σ_{t ≤ m} t (t − 1) + s m`.
pub fn deg_remainder(n: usize) -> Result<(usize, usize)> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            bound: "n >= 1".into(),
        });
    }
    let mut m = 0;
    while (m + 1) * (m + 2) / 2 <= n {
        m += 1;
    }
    let s = n - m * (m + 1) / 2;
    let deg = (1..=m).map(|t| t * (t - 1)).sum::<usize>() + s * m;
    Ok((deg, s))
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
