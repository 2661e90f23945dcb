//! Presentations of Springer fibre cohomology and degree-sliced quotient rings.
//!
//! A quotient `P_n / I` is computed one degree at a time. In degree `d` every
//! monomial that is `x_i` times a degree-`(d−1)` leading monomial is rewritten
//! through that product, which leaves a small space of candidate monomials in
//! which the remaining relations are echelonized. The surviving candidates are
//! the standard monomials; they are the complement of the leading monomials of
//! `I_d`, so normal forms agree with the reduced echelon form of `I_d`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::echelon::EchelonSpan;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::partition::Partition;
use crate::poly::{complete_homogeneous, elementary_symmetric, s_htk, subsets, Monomial, Poly};

/// Largest `n` for which presentations are generated.
pub const MAX_N: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    Tanisaki(Partition),
    DeConciniProcesi(Partition),
    /// `J` plus `X_i^p`.
    Jp {
        p: usize,
    },
    /// `J_{q+1}` plus `(X_{i_1} ⋯ X_{i_{r+1}})^q`.
    JqVee {
        q: usize,
        r: usize,
    },
    /// The elementary symmetric polynomials `e_1, …, e_n`.
    Coinvariant,
}

#[derive(Clone, Debug)]
pub struct Presentation<E> {
    pub n: usize,
    pub kind: PresentationKind,
    pub generators: Vec<Poly<E>>,
}

impl<E: Clone + PartialEq> Presentation<E> {
    fn build(n: usize, kind: PresentationKind, gens: impl IntoIterator<Item = Poly<E>>) -> Self {
        let mut generators: Vec<Poly<E>> = Vec::new();
        for g in gens {
            if !g.is_zero() && !generators.contains(&g) {
                generators.push(g);
            }
        }
        Presentation { n, kind, generators }
    }

    /// Whether permuting variables maps the generator set onto itself.
    pub fn is_permutation_stable(&self, perm: &[usize]) -> bool {
        self.generators
            .iter()
            .all(|g| self.generators.contains(&g.permute(perm)))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            max: MAX_N,
        });
    }
    Ok(())
}

/// `e_r(X_{s_1}, …, X_{s_k})` for all `k`-subsets with `k − d_k(σ) < r ≤ k`.
pub fn tanisaki<F: Field>(field: &F, sigma: &Partition) -> Result<Presentation<F::Elem>> {
    let n = sigma.n();
    check_n(n)?;
    let all: Vec<usize> = (0..n).collect();
    let mut gens = Vec::new();
    for k in 1..=n {
        let dk = sigma.d_k(k)?;
        for r in (k + 1).saturating_sub(dk).max(1)..=k {
            for s in subsets(&all, k) {
                gens.push(elementary_symmetric(field, n, &s, r)?);
            }
        }
    }
    Ok(Presentation::build(n, PresentationKind::Tanisaki(sigma.clone()), gens))
}

/// `S_{h,t,k}` on all `t`-subsets with `h + t = n_k(σ) + 1`, for `0 ≤ k ≤ σ_0`.
/// Larger `k` only add multiples of `X_i^{σ_0}`.
pub fn de_concini_procesi<F: Field>(field: &F, sigma: &Partition) -> Result<Presentation<F::Elem>> {
    let n = sigma.n();
    check_n(n)?;
    let all: Vec<usize> = (0..n).collect();
    let mut gens = Vec::new();
    for k in 0..=sigma.part(0) {
        let nk = sigma.n_k(k);
        for t in 1..=n.min(nk + 1) {
            let h = nk + 1 - t;
            for s in subsets(&all, t) {
                gens.push(s_htk(field, n, h, k, &s)?);
            }
        }
    }
    Ok(Presentation::build(
        n,
        PresentationKind::DeConciniProcesi(sigma.clone()),
        gens,
    ))
}

fn elementary_all<F: Field>(field: &F, n: usize) -> Result<Vec<Poly<F::Elem>>> {
    let all: Vec<usize> = (0..n).collect();
    (1..=n).map(|r| elementary_symmetric(field, n, &all, r)).collect()
}

pub fn coinvariant<F: Field>(field: &F, n: usize) -> Result<Presentation<F::Elem>> {
    check_n(n)?;
    Ok(Presentation::build(
        n,
        PresentationKind::Coinvariant,
        elementary_all(field, n)?,
    ))
}

fn power_gens<F: Field>(field: &F, n: usize, p: usize) -> Result<Vec<Poly<F::Elem>>> {
    let e = u16::try_from(p).map_err(|_| Error::ExponentOverflow)?;
    Ok((0..n)
        .map(|i| Poly::monomial(field, Monomial::var_pow(n, i, e)))
        .collect())
}

pub fn jp<F: Field>(field: &F, n: usize, p: usize) -> Result<Presentation<F::Elem>> {
    check_n(n)?;
    let mut gens = elementary_all(field, n)?;
    gens.extend(power_gens(field, n, p)?);
    Ok(Presentation::build(n, PresentationKind::Jp { p }, gens))
}

pub fn jq_vee<F: Field>(field: &F, n: usize, q: usize, r: usize) -> Result<Presentation<F::Elem>> {
    check_n(n)?;
    let all: Vec<usize> = (0..n).collect();
    let mut gens = Vec::new();
    if r < n {
        for s in subsets(&all, r + 1) {
            // (X_{i_1} ⋯ X_{i_{r+1}})^q is S_{0, r+1, q}
            gens.push(s_htk(field, n, 0, q, &s)?);
        }
    }
    gens.extend(elementary_all(field, n)?);
    gens.extend(power_gens(field, n, q + 1)?);
    Ok(Presentation::build(n, PresentationKind::JqVee { q, r }, gens))
}

/// All monomials of degree `d` in `n` variables, increasing.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = alloc::vec![0u16; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left as u16;
            out.push(Monomial::new(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug)]
struct Slice<E> {
    standard: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    /// Normal form of every non-standard monomial of this degree.
    nf: BTreeMap<Monomial, Poly<E>>,
}

/// `P_n / I` for a homogeneous ideal with finite-dimensional quotient.
#[derive(Clone, Debug)]
pub struct GradedQuotient<F: Field> {
    field: F,
    n: usize,
    slices: Vec<Slice<F::Elem>>,
}

/// Default degree bound: every presentation here contains a power of each
/// variable or the full symmetric ideal, so the quotient vanishes by then.
pub fn default_bound(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2 + n + 1) as u32
}

pub fn graded_quotient<F: Field>(field: &F, pres: &Presentation<F::Elem>, bound: u32) -> Result<GradedQuotient<F>> {
    let n = pres.n;
    let mut by_degree: BTreeMap<u32, Vec<&Poly<F::Elem>>> = BTreeMap::new();
    for g in &pres.generators {
        let d = g.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
        by_degree.entry(d).or_default().push(g);
    }
    let mut slices: Vec<Slice<F::Elem>> = Vec::new();
    for d in 0..=bound {
        let slice = next_slice(field, n, d, slices.last(), by_degree.get(&d).map_or(&[][..], |v| v))?;
        if slice.standard.is_empty() {
            return Ok(GradedQuotient {
                field: field.clone(),
                n,
                slices,
            });
        }
        slices.push(slice);
    }
    Err(Error::DegreeBoundTooSmall { bound: bound as usize })
}

fn next_slice<F: Field>(
    field: &F,
    n: usize,
    d: u32,
    prev: Option<&Slice<F::Elem>>,
    gens: &[&Poly<F::Elem>],
) -> Result<Slice<F::Elem>> {
    let monos = monomials_of_degree(n, d);
    // π(m) for multiples of earlier leads; candidates map to themselves
    let mut pi: BTreeMap<Monomial, Poly<F::Elem>> = BTreeMap::new();
    let mut canonical: BTreeMap<Monomial, (usize, Monomial)> = BTreeMap::new();
    let mut candidates = Vec::new();
    if let Some(prev) = prev {
        for m in &monos {
            let hit = (0..n).find_map(|i| {
                let lower = m.div(&Monomial::var(n, i))?;
                prev.nf.contains_key(&lower).then_some((i, lower))
            });
            match hit {
                Some(f) => {
                    canonical.insert(m.clone(), f);
                }
                None => candidates.push(m.clone()),
            }
        }
    } else {
        candidates = monos.clone();
    }
    let minus_one = field.neg(&field.one());
    // x_i · (L − nf(L)) ≡ 0, so π(x_i L) = Σ nf(L)_s π(x_i s)
    let project = |pi: &BTreeMap<Monomial, Poly<F::Elem>>, m: &Monomial| -> Poly<F::Elem> {
        match pi.get(m) {
            Some(p) => p.clone(),
            None => Poly::monomial(field, m.clone()),
        }
    };
    if let Some(prev) = prev {
        for (m, (i, lower)) in canonical.iter() {
            let xi = Monomial::var(n, *i);
            let mut acc = Poly::zero(n);
            for (s, c) in prev.nf[lower].terms() {
                let t = s.mul(&xi)?;
                acc.add_scaled(field, c, &project(&pi, &t));
            }
            pi.insert(m.clone(), acc);
        }
    }
    let mut rel = EchelonSpan::new(field.clone(), n);
    if let Some(prev) = prev {
        for (lead, nf) in prev.nf.iter() {
            for i in 0..n {
                let xi = Monomial::var(n, i);
                let m = lead.mul(&xi)?;
                if canonical.get(&m).is_some_and(|(ci, _)| *ci == i) {
                    continue;
                }
                let mut acc = project(&pi, &m);
                for (s, c) in nf.terms() {
                    let t = s.mul(&xi)?;
                    acc.add_scaled(field, &field.mul(&minus_one, c), &project(&pi, &t));
                }
                rel.insert(&acc);
            }
        }
    }
    for g in gens {
        let mut acc = Poly::zero(n);
        for (m, c) in g.terms() {
            acc.add_scaled(field, c, &project(&pi, m));
        }
        rel.insert(&acc);
    }
    let standard: Vec<Monomial> = candidates.into_iter().filter(|m| !rel.is_lead(m)).collect();
    let index = standard
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect::<BTreeMap<_, _>>();
    let mut nf = BTreeMap::new();
    for m in monos {
        if index.contains_key(&m) {
            continue;
        }
        let v = rel.reduce(&project(&pi, &m));
        nf.insert(m, v);
    }
    Ok(Slice { standard, index, nf })
}

impl<F: Field> GradedQuotient<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension per degree, from 0 to the top degree.
    pub fn hilbert(&self) -> Vec<usize> {
        self.slices.iter().map(|s| s.standard.len()).collect()
    }

    pub fn dim(&self) -> usize {
        self.hilbert().iter().sum()
    }

    /// Largest degree with a nonzero component; `None` for the zero ring.
    pub fn top_degree(&self) -> Option<u32> {
        self.slices.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn standard_monomials(&self, d: u32) -> &[Monomial] {
        self.slices.get(d as usize).map_or(&[], |s| &s.standard)
    }

    /// Normal form of a monomial as a combination of standard monomials.
    pub fn normal_form_monomial(&self, m: &Monomial) -> Poly<F::Elem> {
        let Some(slice) = self.slices.get(m.degree() as usize) else {
            return Poly::zero(self.n);
        };
        match slice.nf.get(m) {
            Some(p) => p.clone(),
            None => Poly::monomial(&self.field, m.clone()),
        }
    }

    pub fn normal_form(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = Poly::zero(self.n);
        for (m, c) in f.terms() {
            acc.add_scaled(&self.field, c, &self.normal_form_monomial(m));
        }
        acc
    }

    /// Ideal membership; `f` must be homogeneous.
    pub fn contains(&self, f: &Poly<F::Elem>) -> Result<bool> {
        if !f.is_zero() && f.homogeneous_degree().is_none() {
            return Err(Error::NonHomogeneous);
        }
        Ok(self.normal_form(f).is_zero())
    }

    pub fn multiply(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.normal_form(&a.mul(&self.field, b)?))
    }

    /// Action of a permutation of the variables.
    pub fn act(&self, perm: &[usize], f: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.normal_form(&f.permute(perm))
    }

    /// Coordinates of a degree-`d` normal form in the standard basis.
    pub fn coords(&self, d: u32, f: &Poly<F::Elem>) -> Vec<F::Elem> {
        let slice = &self.slices[d as usize];
        let mut v = alloc::vec![self.field.zero(); slice.standard.len()];
        for (m, c) in self.normal_form(f).terms() {
            if let Some(&k) = slice.index.get(m) {
                v[k] = c.clone();
            }
        }
        v
    }

    /// Whether two quotients come from the same ideal, degree by degree.
    pub fn same_ideal(&self, other: &GradedQuotient<F>) -> bool {
        self.n == other.n
            && self.slices.len() == other.slices.len()
            && self
                .slices
                .iter()
                .zip(other.slices.iter())
                .all(|(a, b)| a.standard == b.standard && a.nf == b.nf)
    }
}

/// Membership of a homogeneous `f` in the ideal of `pres`.
pub fn ideal_membership<F: Field>(field: &F, f: &Poly<F::Elem>, pres: &Presentation<F::Elem>) -> Result<bool> {
    graded_quotient(field, pres, default_bound(pres.n))?.contains(f)
}

/// `S_{h,t,k}` on the first `t` variables.
pub fn s_htk_first<F: Field>(field: &F, n: usize, h: usize, t: usize, k: usize) -> Result<Poly<F::Elem>> {
    let vars: Vec<usize> = (0..t).collect();
    s_htk(field, n, h, k, &vars)
}

/// Complete homogeneous sum in all variables.
pub fn complete_all<F: Field>(field: &F, n: usize, h: usize) -> Result<Poly<F::Elem>> {
    let vars: Vec<usize> = (0..n).collect();
    complete_homogeneous(field, n, &vars, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn quotient(pres: &Presentation<num_rational::BigRational>) -> GradedQuotient<Rationals> {
        graded_quotient(&Rationals, pres, default_bound(pres.n)).unwrap()
    }

    #[test]
    fn tanisaki_two_one() {
        let t = tanisaki(&Rationals, &p("2,1")).unwrap();
        // e2 on three pairs plus e1, e2, e3 on the full set
        assert_eq!(t.generators.len(), 6);
        let q = quotient(&t);
        assert_eq!(q.hilbert(), [1, 2]);
    }

    #[test]
    fn tanisaki_extremes() {
        let one_row = quotient(&tanisaki(&Rationals, &p("3")).unwrap());
        assert_eq!(one_row.dim(), 1);
        let t = tanisaki(&Rationals, &p("1,1")).unwrap();
        assert_eq!(t.generators.len(), 2);
        assert_eq!(quotient(&t).dim(), 2);
    }

    #[test]
    fn dcp_generators_two_one() {
        let f = Rationals;
        let d = de_concini_procesi(&f, &p("2,1")).unwrap();
        let sq = Poly::monomial(&f, Monomial::var_pow(3, 0, 2));
        let x0x1 = Poly::monomial(&f, Monomial::new(&[1, 1, 0]));
        let e1 = complete_all(&f, 3, 1).unwrap();
        for g in [&sq, &x0x1, &e1] {
            assert!(d.generators.contains(g));
        }
        assert_eq!(quotient(&d).dim(), 3);
    }

    #[test]
    fn jp_and_membership() {
        let f = Rationals;
        let j2 = jp(&f, 3, 2).unwrap();
        assert_eq!(j2.generators.len(), 6);
        let x1 = Poly::var(&f, 3, 0);
        assert!(!ideal_membership(&f, &x1, &j2).unwrap());
        let e1 = complete_all(&f, 3, 1).unwrap();
        assert!(ideal_membership(&f, &e1, &j2).unwrap());
    }

    #[test]
    fn coinvariant_dims() {
        let q = quotient(&coinvariant(&Rationals, 3).unwrap());
        assert_eq!(q.hilbert(), [1, 2, 2, 1]);
        let q = quotient(&coinvariant(&Rationals, 4).unwrap());
        assert_eq!(q.dim(), 24);
    }

    #[test]
    fn bound_too_small_is_an_error() {
        let pres = coinvariant(&Rationals, 3).unwrap();
        assert_eq!(
            graded_quotient(&Rationals, &pres, 2).unwrap_err(),
            Error::DegreeBoundTooSmall { bound: 2 }
        );
    }

    #[test]
    fn quotient_multiplication_is_commutative() {
        let f = Rationals;
        let q = quotient(&tanisaki(&f, &p("2,2")).unwrap());
        let a = Poly::var(&f, 4, 0);
        let b = Poly::var(&f, 4, 3).add(&f, &Poly::var(&f, 4, 1));
        assert_eq!(q.multiply(&a, &b).unwrap(), q.multiply(&b, &a).unwrap());
    }
}
