//! Dense exact matrices, row reduction and certified ranks.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::Result;
use crate::field::{next_prime, Field, PrimeField};

#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<Vec<F::Elem>>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    /// Rows must all have length `cols`.
    pub fn from_rows(field: &F, cols: usize, data: Vec<Vec<F::Elem>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix {
            field: field.clone(),
            rows: data.len(),
            cols,
            data,
        }
    }

    /// `E_{a,b}` of size `n`: sends basis vector `b` to basis vector `a`.
    pub fn unit(field: &F, n: usize, a: usize, b: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.data[a][b] = field.one();
        m
    }

    pub fn diagonal(field: &F, entries: Vec<F::Elem>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i][i] = e;
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i]
    }

    pub fn into_rows(self) -> Vec<Vec<F::Elem>> {
        self.data
    }

    pub fn push_row(&mut self, row: Vec<F::Elem>) {
        assert_eq!(row.len(), self.cols);
        self.data.push(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|x| self.field.is_zero(x))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.field.is_zero(&self.data[i][j])))
    }

    pub fn trace(&self) -> F::Elem {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t = self.field.add(&t, &self.data[i][i]);
        }
        t
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j][i] = self.data[i][j].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut m = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !f.is_zero(b) {
                        m.data[i][j] = f.add(&m.data[i][j], &f.mul(a, b));
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i][j] = op(&self.field, &self.data[i][j], &other.data[i][j]);
            }
        }
        m
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut m = self.clone();
        for x in m.data.iter_mut().flatten() {
            *x = self.field.mul(c, x);
        }
        m
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(&m.data[i][c])) else {
                continue;
            };
            m.data.swap(r, p);
            let inv = f.inv(&m.data[r][c]).expect("nonzero pivot");
            for x in m.data[r].iter_mut() {
                *x = f.mul(&inv, x);
            }
            let pivot_row = m.data[r].clone();
            for i in 0..self.rows {
                if i == r || f.is_zero(&m.data[i][c]) {
                    continue;
                }
                let factor = m.data[i][c].clone();
                for (x, y) in m.data[i].iter_mut().zip(pivot_row.iter()) {
                    if !f.is_zero(y) {
                        *x = f.sub_mul(x, &factor, y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(&r.data[row][fc]);
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y A = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<F::Elem>> {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = self.field.one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let data = r.data.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(Self::from_rows(&self.field, n, data))
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }
}

/// How a rank or dimension was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Computed over the rationals.
    Exact,
    /// Two independent prime fields agreed. Each is a lower bound for the rational value.
    Consensus,
}

impl Certificate {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::Exact => "exact",
            Certificate::Consensus => "consensus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    ModularConsensus { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certified<T> {
    pub value: T,
    pub certificate: Certificate,
    /// Primes used in modular mode, including runs that were escalated.
    pub primes: Vec<u64>,
}

/// Two distinct primes in `[2^30, 2^31)`, reproducible from `seed`.
pub fn draw_primes(seed: u64) -> [u64; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || next_prime((1u64 << 30) | (rng.next_u32() as u64 & ((1 << 30) - 1)));
    let a = draw();
    let mut b = draw();
    while b == a || b >= 1 << 31 {
        b = draw();
    }
    [a, b]
}

/// Runs `modular` over two seeded primes; agreement is reported as consensus,
/// disagreement (or exact mode) falls back to `exact`.
pub fn certify<T: PartialEq>(
    mode: RankMode,
    exact: impl FnOnce() -> Result<T>,
    mut modular: impl FnMut(PrimeField) -> Result<T>,
) -> Result<Certified<T>> {
    match mode {
        RankMode::Exact => Ok(Certified {
            value: exact()?,
            certificate: Certificate::Exact,
            primes: Vec::new(),
        }),
        RankMode::ModularConsensus { seed } => {
            let primes = draw_primes(seed);
            let a = modular(PrimeField::new(primes[0])?)?;
            let b = modular(PrimeField::new(primes[1])?)?;
            if a == b {
                Ok(Certified {
                    value: a,
                    certificate: Certificate::Consensus,
                    primes: primes.to_vec(),
                })
            } else {
                Ok(Certified {
                    value: exact()?,
                    certificate: Certificate::Exact,
                    primes: primes.to_vec(),
                })
            }
        }
    }
}

/// A sparse row: `(column, value)` pairs.
pub type SparseRow = Vec<(usize, BigRational)>;

fn integer_rows(rows: &[SparseRow], ncols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
            let mut dense = vec![BigInt::zero(); ncols];
            for (c, q) in row {
                dense[*c] += q.numer() * (&lcm / q.denom());
            }
            dense
        })
        .collect()
}

/// Fraction-free (Bareiss) elimination; every division is exact.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

fn modular_rank(rows: &[Vec<BigInt>], ncols: usize, fp: &PrimeField) -> usize {
    let data = rows
        .iter()
        .map(|r| r.iter().map(|x| fp.from_bigint(x)).collect())
        .collect();
    Matrix::from_rows(fp, ncols, data).rank()
}

/// Rank of a rational matrix given by sparse rows.
pub fn rank_certified(rows: &[SparseRow], ncols: usize, mode: RankMode) -> Certified<usize> {
    let ints = integer_rows(rows, ncols);
    certify(
        mode,
        || Ok(bareiss_rank(ints.clone())),
        |fp| Ok(modular_rank(&ints, ncols, &fp)),
    )
    .expect("rank computation is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn row(v: &[i64]) -> SparseRow {
        v.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(c, &x)| (c, Rationals.from_i64(x)))
            .collect()
    }

    #[test]
    fn small_ranks() {
        let id = [row(&[1, 0, 0]), row(&[0, 1, 0]), row(&[0, 0, 1])];
        let r = rank_certified(&id, 3, RankMode::Exact);
        assert_eq!((r.value, r.certificate), (3, Certificate::Exact));
        let dep = [row(&[1, 2]), row(&[2, 4])];
        assert_eq!(rank_certified(&dep, 2, RankMode::Exact).value, 1);
        let c = rank_certified(&dep, 2, RankMode::ModularConsensus { seed: 7 });
        assert_eq!((c.value, c.certificate), (1, Certificate::Consensus));
        assert_eq!(c.primes.len(), 2);
    }

    #[test]
    fn primes_are_distinct_31_bit() {
        for seed in 0..20 {
            let [a, b] = draw_primes(seed);
            assert_ne!(a, b);
            for p in [a, b] {
                assert!((1 << 30..1 << 31).contains(&p));
                assert!(crate::field::is_prime(p));
            }
        }
        assert_eq!(draw_primes(3), draw_primes(3));
    }

    #[test]
    fn nullspace_and_inverse() {
        let f = Rationals;
        let m = Matrix::from_rows(
            &f,
            3,
            vec![
                vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)],
                vec![f.from_i64(2), f.from_i64(4), f.from_i64(6)],
            ],
        );
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v).iter().all(|x| f.is_zero(x)));
        }
        let a = Matrix::from_rows(
            &f,
            2,
            vec![vec![f.from_i64(2), f.from_i64(1)], vec![f.from_i64(1), f.from_i64(1)]],
        );
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(&f, 2));
        assert!(m.transpose().mul(&m).inverse().is_none());
    }
}
