//! The tensor product `S_σ = H*(X_σ) ⊗ H*(X_{σ^∨})`, its form `γ`, and the
//! quotient `T_σ = S_σ / rad γ`.
//!
//! The Y-side factor is the Tanisaki quotient for `σ`, the X-side factor the
//! one for `σ^∨`; bidegrees are `(X-degree, Y-degree)`. Everything is over
//! the rationals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::harmonics::{slice_trace, HarmonicSpace};
use crate::linalg::Matrix;
use crate::partition::{factorial, Partition};
use crate::perm;
use crate::poly::Poly;
use crate::springer::{default_bound, graded_quotient, tanisaki, GradedQuotient};

pub const MAX_N: usize = 6;

type Q = BigRational;
type Key = (u32, u32);

#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    pub sigma: Partition,
    /// `H*(X_{σ^∨})`, graded by X-degree.
    pub x: GradedQuotient<Rationals>,
    /// `H*(X_σ)`, graded by Y-degree.
    pub y: GradedQuotient<Rationals>,
}

/// Matrix of `w` on degree `d` of a quotient: column `j` holds the image of standard monomial `j`.
pub fn action_matrix(q: &GradedQuotient<Rationals>, d: u32, w: &[usize]) -> Matrix<Rationals> {
    let f = Rationals;
    let basis = q.standard_monomials(d);
    let h = basis.len();
    let mut m = Matrix::zeros(&f, h, h);
    for (j, s) in basis.iter().enumerate() {
        let img = Poly::monomial(&f, s.permute(w));
        for (i, c) in q.coords(d, &img).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

fn kron(a: &Matrix<Rationals>, b: &Matrix<Rationals>) -> Matrix<Rationals> {
    let f = Rationals;
    let (ar, ac, br, bc) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    let mut m = Matrix::zeros(&f, ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = a.get(i, j);
            if f.is_zero(x) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    let y = b.get(k, l);
                    if !f.is_zero(y) {
                        m.set(i * br + k, j * bc + l, f.mul(x, y));
                    }
                }
            }
        }
    }
    m
}

impl TensorAlgebra {
    pub fn new(sigma: &Partition) -> Result<Self> {
        let n = sigma.n();
        if n > MAX_N {
            return Err(Error::BoundExceeded {
                what: "n",
                value: n,
                max: MAX_N,
            });
        }
        let f = Rationals;
        let y = graded_quotient(&f, &tanisaki(&f, sigma)?, default_bound(n))?;
        let x = graded_quotient(&f, &tanisaki(&f, &sigma.dual())?, default_bound(n))?;
        Ok(TensorAlgebra {
            sigma: sigma.clone(),
            x,
            y,
        })
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn dims(&self) -> BTreeMap<Key, usize> {
        let mut out = BTreeMap::new();
        for (a, hx) in self.x.hilbert().into_iter().enumerate() {
            for (b, hy) in self.y.hilbert().into_iter().enumerate() {
                out.insert((a as u32, b as u32), hx * hy);
            }
        }
        out
    }

    pub fn total_dim(&self) -> usize {
        self.x.dim() * self.y.dim()
    }

    pub fn top(&self) -> Key {
        (self.x.top_degree().unwrap_or(0), self.y.top_degree().unwrap_or(0))
    }

    fn hx(&self, a: u32) -> usize {
        self.x.standard_monomials(a).len()
    }

    fn hy(&self, b: u32) -> usize {
        self.y.standard_monomials(b).len()
    }

    /// `w` acting on the `(a, b)` component, in the basis `x_i ⊗ y_j` indexed `i · h_y + j`.
    pub fn action(&self, key: Key, w: &[usize]) -> Matrix<Rationals> {
        kron(&action_matrix(&self.x, key.0, w), &action_matrix(&self.y, key.1, w))
    }

    pub fn trace(&self, key: Key, w: &[usize]) -> Q {
        let f = Rationals;
        f.mul(
            &action_matrix(&self.x, key.0, w).trace(),
            &action_matrix(&self.y, key.1, w).trace(),
        )
    }

    /// `(1/n!) Σ ε(w) w` on the top component.
    pub fn top_sign_projector(&self) -> Matrix<Rationals> {
        let f = Rationals;
        let top = self.top();
        let dim = self.hx(top.0) * self.hy(top.1);
        let mut acc = Matrix::zeros(&f, dim, dim);
        for w in perm::all_perms(self.n()) {
            let a = self.action(top, &w);
            acc = if perm::sign(&w) == 1 { acc.add(&a) } else { acc.sub(&a) };
        }
        acc.scale(&f.inv(&f.from_bigint(&factorial(self.n()).into())).expect("nonzero"))
    }
}

/// `Σ_t c_t(s · s')` in the top degree of a factor, for all `s` of degree `d` and `s'` of degree `top − d`.
fn product_table(q: &GradedQuotient<Rationals>, d: u32, top: u32) -> Result<Vec<Vec<Vec<Q>>>> {
    let f = Rationals;
    let lo = q.standard_monomials(d);
    let hi = q.standard_monomials(top - d);
    let mut out = Vec::with_capacity(lo.len());
    for s in lo {
        let mut row = Vec::with_capacity(hi.len());
        for t in hi {
            let prod = Poly::monomial(&f, s.mul(t)?);
            row.push(q.coords(top, &prod));
        }
        out.push(row);
    }
    Ok(out)
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    let f = Rationals;
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

#[derive(Clone, Debug)]
pub struct GammaBlock {
    /// Rows: basis of `S^{(a,b)}`; columns: basis of the complementary component.
    pub gram: Matrix<Rationals>,
    /// Reduced basis of the radical and its pivot columns.
    pub radical: Matrix<Rationals>,
    pub radical_pivots: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GammaQuotient {
    pub top: Key,
    pub sign_rank_top: usize,
    pub blocks: BTreeMap<Key, GammaBlock>,
}

impl GammaQuotient {
    pub fn t_dims(&self) -> BTreeMap<Key, usize> {
        self.blocks
            .iter()
            .map(|(k, b)| (*k, b.gram.nrows() - b.radical.nrows()))
            .filter(|(_, d)| *d > 0)
            .collect()
    }

    pub fn radical_dims(&self) -> BTreeMap<Key, usize> {
        self.blocks.iter().map(|(k, b)| (*k, b.radical.nrows())).collect()
    }

    pub fn t_total(&self) -> usize {
        self.t_dims().values().sum()
    }

    /// Trace of `w` on `T^{(a,b)} = S^{(a,b)} / rad`.
    pub fn trace(&self, s: &TensorAlgebra, key: Key, w: &[usize]) -> Result<Q> {
        let f = Rationals;
        let Some(block) = self.blocks.get(&key) else {
            return Ok(f.zero());
        };
        let act = s.action(key, w);
        let mut tr_rad = f.zero();
        for (k, &p) in block.radical_pivots.iter().enumerate() {
            let img = act.apply(block.radical.row(k));
            let pairing = block.gram.transpose().apply(&img);
            if pairing.iter().any(|x| !f.is_zero(x)) {
                return Err(Error::InvariantViolation(
                    "radical is not stable under the symmetric group".into(),
                ));
            }
            tr_rad = f.add(&tr_rad, &img[p]);
        }
        Ok(f.sub(&s.trace(key, w), &tr_rad))
    }

    /// Gram matrix of the form induced on `T`, total radical size (must be zero), and Gorenstein flag.
    pub fn rebuilt(&self) -> (usize, bool) {
        let mut radical = 0;
        let mut perfect = true;
        for (key, block) in self.blocks.iter() {
            let dual = (self.top.0 - key.0, self.top.1 - key.1);
            let other = &self.blocks[&dual];
            let rows: Vec<usize> = (0..block.gram.nrows())
                .filter(|i| !block.radical_pivots.contains(i))
                .collect();
            let cols: Vec<usize> = (0..block.gram.ncols())
                .filter(|j| !other.radical_pivots.contains(j))
                .collect();
            let data = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| block.gram.get(i, j).clone()).collect())
                .collect();
            let g = Matrix::from_rows(block.gram.field(), cols.len(), data);
            let rank = g.rank();
            radical += rows.len() - rank;
            perfect &= rows.len() == cols.len() && rank == rows.len();
        }
        (radical, perfect)
    }
}

#[allow(clippy::needless_range_loop)]
pub fn gamma_and_quotient(s: &TensorAlgebra) -> Result<GammaQuotient> {
    let f = Rationals;
    let top = s.top();
    let p = s.top_sign_projector();
    let sign_rank_top = p.rank();
    if sign_rank_top != 1 {
        return Err(Error::InvariantViolation(format!(
            "sign component of the top degree has dimension {sign_rank_top}"
        )));
    }
    let lambda: Vec<Q> = (0..p.nrows())
        .map(|i| p.row(i).to_vec())
        .find(|r| r.iter().any(|x| !f.is_zero(x)))
        .expect("rank one projector has a nonzero row");
    let hy_top = s.hy(top.1);
    // Λ as an h_x × h_y array
    let lam: Vec<Vec<Q>> = lambda.chunks(hy_top).map(|c| c.to_vec()).collect();
    let mut blocks = BTreeMap::new();
    for a in 0..=top.0 {
        let tx = product_table(&s.x, a, top.0)?;
        // u[i][i'] = c_X(x_i x_i')ᵀ Λ
        let u: Vec<Vec<Vec<Q>>> = tx
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        (0..hy_top)
                            .map(|j| {
                                lam.iter()
                                    .zip(c)
                                    .fold(f.zero(), |acc, (lr, ci)| f.add(&acc, &f.mul(ci, &lr[j])))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        for b in 0..=top.1 {
            let ty = product_table(&s.y, b, top.1)?;
            let (hxa, hyb) = (s.hx(a), s.hy(b));
            let (hxa2, hyb2) = (s.hx(top.0 - a), s.hy(top.1 - b));
            let mut gram = Matrix::zeros(&f, hxa * hyb, hxa2 * hyb2);
            for i in 0..hxa {
                for j in 0..hyb {
                    for i2 in 0..hxa2 {
                        for j2 in 0..hyb2 {
                            gram.set(i * hyb + j, i2 * hyb2 + j2, dot(&u[i][i2], &ty[j][j2]));
                        }
                    }
                }
            }
            let rad_rows = gram.left_nullspace();
            let (radical, radical_pivots) = if rad_rows.is_empty() {
                (Matrix::zeros(&f, 0, hxa * hyb), Vec::new())
            } else {
                let (r, piv) = Matrix::from_rows(&f, hxa * hyb, rad_rows).rref();
                (r, piv)
            };
            blocks.insert(
                (a, b),
                GammaBlock {
                    gram,
                    radical,
                    radical_pivots,
                },
            );
        }
    }
    Ok(GammaQuotient {
        top,
        sign_rank_top,
        blocks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub t_dims: BTreeMap<Key, usize>,
    pub a_dims: BTreeMap<Key, usize>,
    pub dims_match: bool,
    pub traces_match: bool,
    /// Degree-one part of the radical is zero.
    pub degree_one_ok: bool,
    pub rebuilt_radical: usize,
    pub gorenstein: bool,
    pub top_is_sign_line: bool,
    pub pass: bool,
}

/// Compares `T_σ` with the harmonic model of `A_σ` on dimensions and on the
/// traces of `(0 1)` and the long cycle, slice by slice.
pub fn compare_t_a(sigma: &Partition) -> Result<CompareReport> {
    let s = TensorAlgebra::new(sigma)?;
    let g = gamma_and_quotient(&s)?;
    let h = HarmonicSpace::new(sigma)?;
    let t_dims = g.t_dims();
    let a_dims = h.dims();
    let dims_match = t_dims == a_dims;
    let n = sigma.n();
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm::transposition(n, 0, 1));
        gens.push(perm::long_cycle(n));
    }
    let mut traces_match = dims_match;
    if dims_match {
        for w in &gens {
            for (key, slice) in h.span.slices() {
                if g.trace(&s, *key, w)? != slice_trace(slice, w)? {
                    traces_match = false;
                }
            }
        }
    }
    let degree_one_ok = [(1, 0), (0, 1)]
        .iter()
        .all(|k| g.radical_dims().get(k).copied().unwrap_or(0) == 0);
    let (rebuilt_radical, gorenstein) = g.rebuilt();
    let top = g.top;
    let top_is_sign_line = t_dims.get(&top) == Some(&1)
        && t_dims.keys().all(|k| k.0 + k.1 <= top.0 + top.1)
        && (top.0 + top.1) as usize == sigma.diagram_stats().d_sigma;
    let pass = dims_match && traces_match && degree_one_ok && rebuilt_radical == 0 && gorenstein && top_is_sign_line;
    Ok(CompareReport {
        t_dims,
        a_dims,
        dims_match,
        traces_match,
        degree_one_ok,
        rebuilt_radical,
        gorenstein,
        top_is_sign_line,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn s_sigma_sizes() {
        let s = TensorAlgebra::new(&p("2,1")).unwrap();
        assert_eq!((s.x.dim(), s.y.dim()), (3, 3));
        assert_eq!(s.top(), (1, 1));
        let s = TensorAlgebra::new(&p("1,1")).unwrap();
        assert_eq!((s.y.dim(), s.x.dim()), (2, 1));
        assert_eq!(TensorAlgebra::new(&p("2,2")).unwrap().total_dim(), 36);
    }

    #[test]
    fn t_of_two_one() {
        let s = TensorAlgebra::new(&p("2,1")).unwrap();
        let g = gamma_and_quotient(&s).unwrap();
        assert_eq!(
            g.t_dims(),
            BTreeMap::from([((0, 0), 1), ((1, 0), 2), ((0, 1), 2), ((1, 1), 1)])
        );
        assert_eq!(g.rebuilt(), (0, true));
    }

    #[test]
    fn t_of_single_row() {
        let s = TensorAlgebra::new(&p("3")).unwrap();
        let g = gamma_and_quotient(&s).unwrap();
        assert_eq!(g.t_total(), 6);
        assert!(g.t_dims().keys().all(|k| k.1 == 0));
        assert!(g.radical_dims().values().all(|&r| r == 0));
        let one = gamma_and_quotient(&TensorAlgebra::new(&p("1")).unwrap()).unwrap();
        assert_eq!(one.t_total(), 1);
    }

    #[test]
    fn compare_small() {
        for s in ["2,1", "2,2", "3,1"] {
            let r = compare_t_a(&p(s)).unwrap();
            assert!(r.pass, "{s}: {r:?}");
        }
    }
}
