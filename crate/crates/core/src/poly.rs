//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose derived ordering is
//! graded lexicographic: total degree first, then exponent vectors compared
//! lexicographically with variable 0 most significant. The last key is the
//! leading monomial.
//!
//! Coefficients are bare field elements; every operation that touches them
//! takes the field handle explicitly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::Field;

pub type Exps = SmallVec<[u16; 12]>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Exps,
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            deg,
            exps: SmallVec::from_slice(exps),
        }
    }

    /// Checked constructor from wide exponents.
    pub fn try_from_u32(exps: &[u32]) -> Result<Self> {
        let mut v = Exps::with_capacity(exps.len());
        for &e in exps {
            v.push(u16::try_from(e).map_err(|_| Error::ExponentOverflow)?);
        }
        Ok(Self::from_exps(v))
    }

    fn from_exps(exps: Exps) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { deg, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Degrees in the first `x_vars` variables and in the rest.
    pub fn bidegree(&self, x_vars: usize) -> (u32, u32) {
        let x: u32 = self.exps[..x_vars].iter().map(|&e| e as u32).sum();
        (x, self.deg - x)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(b).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial {
            deg: self.deg + other.deg,
            exps,
        })
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial {
            deg: self.deg - other.deg,
            exps,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// Variable `i` is sent to variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut exps: Exps = SmallVec::from_elem(0, self.exps.len());
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i]] = e;
        }
        Monomial { deg: self.deg, exps }
    }

    /// `α!` as a product of factorials of the exponents, in the given field.
    pub fn factorial_weight<F: Field>(&self, field: &F) -> F::Elem {
        let mut acc = field.one();
        for &e in self.exps.iter() {
            acc = field.mul(&acc, &field.falling(e as u64, e as u64));
        }
        acc
    }
}

/// Polynomial in `nvars` variables with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<E> {
    nvars: usize,
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, nvars: usize, c: E) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn one<F: Field<Elem = E>>(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn term<F: Field<Elem = E>>(field: &F, m: Monomial, c: E) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, m: Monomial) -> Self {
        Self::term(field, m, field.one())
    }

    pub fn var<F: Field<Elem = E>>(field: &F, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, i))
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms<F: Field<Elem = E>>(
        field: &F,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, E)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(field, m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &E)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, E> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    pub fn leading(&self) -> Option<(&Monomial, &E)> {
        self.terms.iter().next_back()
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, field: &F, m: Monomial, c: &E) {
        if field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = field.add(v, c);
                if field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled<F: Field<Elem = E>>(&mut self, field: &F, c: &E, other: &Poly<E>) {
        if field.is_zero(c) {
            return;
        }
        for (m, v) in other.terms.iter() {
            let t = field.mul(c, v);
            self.add_term(field, m.clone(), &t);
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Poly<E>) -> Poly<E> {
        let mut r = self.clone();
        r.add_scaled(field, &field.one(), other);
        r
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Poly<E>) -> Poly<E> {
        let mut r = self.clone();
        r.add_scaled(field, &field.neg(&field.one()), other);
        r
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Poly<E> {
        self.scale(field, &field.neg(&field.one()))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Poly<E> {
        if field.is_zero(c) {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), field.mul(c, v))).collect();
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Poly<E> {
        match self.leading() {
            Some((_, c)) => self.scale(field, &field.inv(c).expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Poly<E>> {
        let mut terms = BTreeMap::new();
        for (k, v) in self.terms.iter() {
            terms.insert(k.mul(m)?, v.clone());
        }
        Ok(Poly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Poly<E>) -> Result<Poly<E>> {
        let mut r = Self::zero(self.nvars);
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                r.add_term(field, a.mul(b)?, &field.mul(ca, cb));
            }
        }
        Ok(r)
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, e: u32) -> Result<Poly<E>> {
        let mut acc = Self::one(field, self.nvars);
        for _ in 0..e {
            acc = acc.mul(field, self)?;
        }
        Ok(acc)
    }

    /// Total degree if every term has the same degree; `None` for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.keys().next()?.degree();
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    /// Common bidegree of all terms, splitting variables at `x_vars`.
    pub fn homogeneous_bidegree(&self, x_vars: usize) -> Option<(u32, u32)> {
        let d = self.terms.keys().next()?.bidegree(x_vars);
        self.terms.keys().all(|m| m.bidegree(x_vars) == d).then_some(d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Iterated partial derivative `∂_var^order`.
    pub fn differentiate<F: Field<Elem = E>>(&self, field: &F, var: usize, order: u32) -> Poly<E> {
        assert!(var < self.nvars, "variable index out of range");
        let mut r = Self::zero(self.nvars);
        for (m, c) in self.terms.iter() {
            let e = m.exps[var] as u32;
            if e < order {
                continue;
            }
            let f = field.falling(e as u64, order as u64);
            let mut exps = m.exps.clone();
            exps[var] = (e - order) as u16;
            r.add_term(field, Monomial::from_exps(exps), &field.mul(c, &f));
        }
        r
    }

    /// Divided power `∂_var^(m)`: sends `X^a` to `C(a, m) X^(a − m)`.
    pub fn divided_diff<F: Field<Elem = E>>(&self, field: &F, var: usize, m: u32) -> Poly<E> {
        assert!(var < self.nvars, "variable index out of range");
        let mut r = Self::zero(self.nvars);
        for (mono, c) in self.terms.iter() {
            let e = mono.exps[var] as u32;
            if e < m {
                continue;
            }
            let b = field.binomial(e as u64, m as u64);
            let mut exps = mono.exps.clone();
            exps[var] = (e - m) as u16;
            r.add_term(field, Monomial::from_exps(exps), &field.mul(c, &b));
        }
        r
    }

    /// `∂^α` applied to `self` for the exponent vector of `alpha`.
    pub fn apply_monomial_operator<F: Field<Elem = E>>(&self, field: &F, alpha: &Monomial) -> Poly<E> {
        let mut r = Self::zero(self.nvars);
        for (m, c) in self.terms.iter() {
            let Some(rest) = m.div(alpha) else { continue };
            let mut coef = c.clone();
            for (&e, &a) in m.exps.iter().zip(alpha.exps.iter()) {
                if a > 0 {
                    coef = field.mul(&coef, &field.falling(e as u64, a as u64));
                }
            }
            r.add_term(field, rest, &coef);
        }
        r
    }

    /// `op(∂)(self)`: substitute partial derivatives for the variables of `op`.
    pub fn apply_operator<F: Field<Elem = E>>(&self, field: &F, op: &Poly<E>) -> Poly<E> {
        let mut r = Self::zero(self.nvars);
        for (alpha, c) in op.terms.iter() {
            let d = self.apply_monomial_operator(field, alpha);
            r.add_scaled(field, c, &d);
        }
        r
    }

    /// Variable `i` is sent to variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Poly<E> {
        let terms = self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())).collect();
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Applies a monomial substitution termwise (an algebra map when `f` is multiplicative).
    pub fn map_monomials<F: Field<Elem = E>>(
        &self,
        field: &F,
        nvars: usize,
        mut f: impl FnMut(&Monomial) -> Result<Monomial>,
    ) -> Result<Poly<E>> {
        let mut r = Self::zero(nvars);
        for (m, c) in self.terms.iter() {
            r.add_term(field, f(m)?, c);
        }
        Ok(r)
    }

    /// Changes coefficient field through `f`, dropping terms that become zero.
    pub fn map_coeffs<G: Field>(&self, target: &G, mut f: impl FnMut(&E) -> Result<G::Elem>) -> Result<Poly<G::Elem>> {
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            let v = f(c)?;
            if !target.is_zero(&v) {
                terms.insert(m.clone(), v);
            }
        }
        Ok(Poly {
            nvars: self.nvars,
            terms,
        })
    }
}

/// `Σ_α f_α g_α α!`, the constant term of `f(∂) g`. Characteristic zero only.
pub fn apolar_pair<F: Field>(field: &F, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Result<F::Elem> {
    if field.characteristic() != 0 {
        return Err(Error::WrongCharacteristic {
            needed: "characteristic zero",
            got: field.characteristic(),
        });
    }
    let mut acc = field.zero();
    for (m, a) in f.terms() {
        if let Some(b) = g.coeff(m) {
            let t = field.mul(&field.mul(a, b), &m.factorial_weight(field));
            acc = field.add(&acc, &t);
        }
    }
    Ok(acc)
}

fn subsets_rec(vars: &[usize], r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    for i in start..vars.len() {
        if vars.len() - i < r - cur.len() {
            break;
        }
        cur.push(vars[i]);
        subsets_rec(vars, r, i + 1, cur, out);
        cur.pop();
    }
}

/// All `r`-element subsets of `vars`, in lexicographic order of positions.
pub fn subsets(vars: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r <= vars.len() {
        subsets_rec(vars, r, 0, &mut Vec::new(), &mut out);
    }
    out
}

fn check_vars(nvars: usize, vars: &[usize]) -> Result<()> {
    for (k, &v) in vars.iter().enumerate() {
        if v >= nvars || vars[..k].contains(&v) {
            return Err(Error::Precondition(
                "variable indices must be distinct and in range".into(),
            ));
        }
    }
    Ok(())
}

/// `e_r` in the variables `vars`. Zero when `r > |vars|`; `r = 0` is rejected.
pub fn elementary_symmetric<F: Field>(field: &F, nvars: usize, vars: &[usize], r: usize) -> Result<Poly<F::Elem>> {
    if r == 0 {
        return Err(Error::OutOfRange {
            what: "r",
            value: 0,
            bound: "r >= 1".into(),
        });
    }
    check_vars(nvars, vars)?;
    let mut p = Poly::zero(nvars);
    for s in subsets(vars, r) {
        let mut m = Monomial::one(nvars);
        for v in s {
            m = m.mul(&Monomial::var(nvars, v))?;
        }
        p.add_term(field, m, &field.one());
    }
    Ok(p)
}

fn exps_of_degree(t: usize, h: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if cur.len() + 1 == t {
        cur.push(h as u16);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for e in (0..=h).rev() {
        cur.push(e as u16);
        exps_of_degree(t, h - e, cur, out);
        cur.pop();
    }
}

/// Complete homogeneous symmetric polynomial `h_h` in `vars`.
pub fn complete_homogeneous<F: Field>(field: &F, nvars: usize, vars: &[usize], h: usize) -> Result<Poly<F::Elem>> {
    check_vars(nvars, vars)?;
    if h > u16::MAX as usize {
        return Err(Error::ExponentOverflow);
    }
    if vars.is_empty() {
        return Ok(if h == 0 {
            Poly::one(field, nvars)
        } else {
            Poly::zero(nvars)
        });
    }
    let mut all = Vec::new();
    exps_of_degree(vars.len(), h, &mut Vec::new(), &mut all);
    let mut p = Poly::zero(nvars);
    for e in all {
        let mut m = Monomial::one(nvars);
        for (&v, &k) in vars.iter().zip(e.iter()) {
            m = m.mul(&Monomial::var_pow(nvars, v, k))?;
        }
        p.add_term(field, m, &field.one());
    }
    Ok(p)
}

/// `S_{h,t,k} = (Π vars)^k · h_h(vars)` with `t = |vars|`.
pub fn s_htk<F: Field>(field: &F, nvars: usize, h: usize, k: usize, vars: &[usize]) -> Result<Poly<F::Elem>> {
    if vars.is_empty() {
        return Err(Error::OutOfRange {
            what: "t",
            value: 0,
            bound: "t >= 1".into(),
        });
    }
    let k = u16::try_from(k).map_err(|_| Error::ExponentOverflow)?;
    let mut m = Monomial::one(nvars);
    for &v in vars {
        m = m.mul(&Monomial::var_pow(nvars, v, k))?;
    }
    complete_homogeneous(field, nvars, vars, h)?.mul_monomial(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn graded_lex_order() {
        assert!(mono(&[0, 2]) > mono(&[1, 0]));
        assert!(mono(&[2, 0]) > mono(&[1, 1]));
        assert!(mono(&[1, 1]) > mono(&[0, 2]));
    }

    #[test]
    fn elementary_examples() {
        let f = Rationals;
        let e2 = elementary_symmetric(&f, 3, &[0, 1, 2], 2).unwrap();
        assert_eq!(e2.len(), 3);
        assert!(e2.terms().all(|(m, c)| m.degree() == 2 && *c == q(1)));
        let e = elementary_symmetric(&f, 2, &[0, 1], 2).unwrap();
        assert_eq!(e, Poly::monomial(&f, mono(&[1, 1])));
        assert!(elementary_symmetric(&f, 2, &[0, 1], 3).unwrap().is_zero());
        assert!(elementary_symmetric(&f, 2, &[0, 1], 0).is_err());
    }

    #[test]
    fn s_htk_examples() {
        let f = Rationals;
        let a = s_htk(&f, 2, 2, 0, &[0, 1]).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.homogeneous_degree(), Some(2));
        let b = s_htk(&f, 2, 0, 1, &[0, 1]).unwrap();
        assert_eq!(b, Poly::monomial(&f, mono(&[1, 1])));
        let c = s_htk(&f, 1, 1, 1, &[0]).unwrap();
        assert_eq!(c, Poly::monomial(&f, mono(&[2])));
    }

    #[test]
    fn derivative_examples() {
        let f = Rationals;
        let p = Poly::monomial(&f, mono(&[2, 1]));
        assert_eq!(p.differentiate(&f, 0, 1), Poly::term(&f, mono(&[1, 1]), q(2)));
        assert_eq!(p.differentiate(&f, 0, 2), Poly::term(&f, mono(&[0, 1]), q(2)));
        let f2 = PrimeField::new(2).unwrap();
        let x2 = Poly::monomial(&f2, mono(&[2]));
        assert!(x2.differentiate(&f2, 0, 1).is_zero());
    }

    #[test]
    fn divided_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(
            Poly::monomial(&f2, mono(&[3])).divided_diff(&f2, 0, 2),
            Poly::monomial(&f2, mono(&[1]))
        );
        assert_eq!(
            Poly::monomial(&f2, mono(&[2])).divided_diff(&f2, 0, 2),
            Poly::monomial(&f2, mono(&[0]))
        );
        assert_eq!(
            Poly::monomial(&f3, mono(&[4])).divided_diff(&f3, 0, 3),
            Poly::monomial(&f3, mono(&[1]))
        );
    }

    #[test]
    fn apolar_examples() {
        let f = Rationals;
        let x1 = Poly::monomial(&f, mono(&[1, 0]));
        let x2 = Poly::monomial(&f, mono(&[0, 1]));
        let x1sq = Poly::monomial(&f, mono(&[2, 0]));
        assert_eq!(apolar_pair(&f, &x1, &x1).unwrap(), q(1));
        assert_eq!(apolar_pair(&f, &x1sq, &x1sq).unwrap(), q(2));
        assert_eq!(apolar_pair(&f, &x1, &x2).unwrap(), q(0));
        let f2 = PrimeField::new(2).unwrap();
        let y = Poly::monomial(&f2, mono(&[1]));
        assert!(apolar_pair(&f2, &y, &y).is_err());
    }

    #[test]
    fn apolar_is_constant_term_of_operator_application() {
        let f = Rationals;
        let a = Poly::from_terms(&f, 2, [(mono(&[2, 1]), q(3)), (mono(&[1, 2]), q(-1))]);
        let b = Poly::from_terms(&f, 2, [(mono(&[2, 1]), q(5)), (mono(&[0, 3]), q(7))]);
        let c = b.apply_operator(&f, &a);
        let constant = c.coeff(&Monomial::one(2)).cloned().unwrap_or_else(|| q(0));
        assert_eq!(apolar_pair(&f, &a, &b).unwrap(), constant);
    }

    #[test]
    fn exponent_overflow_is_an_error() {
        let a = mono(&[u16::MAX]);
        assert_eq!(a.mul(&mono(&[1])), Err(Error::ExponentOverflow));
        let f = Rationals;
        let p = Poly::monomial(&f, a);
        assert!(p.mul(&f, &p).is_err());
    }
}
