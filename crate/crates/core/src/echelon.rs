//! Reduced echelon bases of polynomial subspaces.
//!
//! Every basis vector is monic at its leading monomial, and no basis vector
//! contains the leading monomial of another. The basis of a subspace is
//! therefore unique, so two spans are equal exactly when their bases are.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::field::Field;
use crate::poly::{Monomial, Poly};

#[derive(Clone, Debug)]
pub struct EchelonSpan<F: Field> {
    field: F,
    nvars: usize,
    rows: BTreeMap<Monomial, Poly<F::Elem>>,
}

impl<F: Field> PartialEq for EchelonSpan<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.rows == other.rows
    }
}

impl<F: Field> EchelonSpan<F> {
    pub fn new(field: F, nvars: usize) -> Self {
        EchelonSpan {
            field,
            nvars,
            rows: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Basis vectors in increasing order of leading monomial.
    pub fn basis(&self) -> impl DoubleEndedIterator<Item = &Poly<F::Elem>> + ExactSizeIterator {
        self.rows.values()
    }

    pub fn leads(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.rows.keys()
    }

    pub fn is_lead(&self, m: &Monomial) -> bool {
        self.rows.contains_key(m)
    }

    pub fn row(&self, lead: &Monomial) -> Option<&Poly<F::Elem>> {
        self.rows.get(lead)
    }

    /// Remainder of `f` after eliminating every pivot monomial.
    pub fn reduce(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        let hits: Vec<(Monomial, F::Elem)> = f
            .terms()
            .filter(|(m, _)| self.rows.contains_key(*m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        let mut r = f.clone();
        let minus_one = self.field.neg(&self.field.one());
        for (m, c) in hits {
            let c = self.field.mul(&minus_one, &c);
            r.add_scaled(&self.field, &c, &self.rows[&m]);
        }
        r
    }

    pub fn contains(&self, f: &Poly<F::Elem>) -> bool {
        self.reduce(f).is_zero()
    }

    /// Coordinates of `f` in the basis, keyed by leading monomial; `None` if `f` is outside the span.
    pub fn coords(&self, f: &Poly<F::Elem>) -> Option<BTreeMap<Monomial, F::Elem>> {
        if !self.contains(f) {
            return None;
        }
        Some(
            f.terms()
                .filter(|(m, _)| self.rows.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Adds `f` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, f: &Poly<F::Elem>) -> bool {
        debug_assert_eq!(f.nvars(), self.nvars);
        let r = self.reduce(f).monic(&self.field);
        let Some((lead, _)) = r.leading() else {
            return false;
        };
        let lead = lead.clone();
        let minus_one = self.field.neg(&self.field.one());
        for row in self.rows.values_mut() {
            if let Some(c) = row.coeff(&lead) {
                let c = self.field.mul(&minus_one, c);
                row.add_scaled(&self.field, &c, &r);
            }
        }
        self.rows.insert(lead, r);
        true
    }

    pub fn extend<'a>(&mut self, fs: impl IntoIterator<Item = &'a Poly<F::Elem>>) -> usize
    where
        F::Elem: 'a,
    {
        fs.into_iter().filter(|f| self.insert(f)).count()
    }

    /// Whether every basis vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &EchelonSpan<F>) -> bool {
        self.rows.values().all(|b| other.contains(b))
    }

    /// Trace of a linear map that preserves the span, given as its action on polynomials.
    /// Returns `None` if some image leaves the span.
    pub fn trace_of(&self, mut map: impl FnMut(&Poly<F::Elem>) -> Poly<F::Elem>) -> Option<F::Elem> {
        let mut tr = self.field.zero();
        for (lead, b) in self.rows.iter() {
            let img = map(b);
            if !self.contains(&img) {
                return None;
            }
            if let Some(c) = img.coeff(lead) {
                tr = self.field.add(&tr, c);
            }
        }
        Some(tr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::Monomial;

    fn p(terms: &[(&[u16], i64)]) -> Poly<num_rational::BigRational> {
        let f = Rationals;
        Poly::from_terms(
            &f,
            terms[0].0.len(),
            terms.iter().map(|(e, c)| (Monomial::new(e), f.from_i64(*c))),
        )
    }

    #[test]
    fn basis_is_canonical() {
        let a = p(&[(&[1, 0], 1), (&[0, 1], 2)]);
        let b = p(&[(&[1, 0], 3), (&[0, 1], -1)]);
        let c = a.add(&Rationals, &b);
        let mut s1 = EchelonSpan::new(Rationals, 2);
        s1.insert(&a);
        s1.insert(&b);
        let mut s2 = EchelonSpan::new(Rationals, 2);
        s2.insert(&c);
        s2.insert(&a);
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
        assert!(!s1.insert(&c));
    }

    #[test]
    fn coords_and_trace() {
        let f = Rationals;
        let x = p(&[(&[1, 0], 1)]);
        let y = p(&[(&[0, 1], 1)]);
        let mut s = EchelonSpan::new(f, 2);
        s.insert(&x.add(&f, &y));
        s.insert(&x.sub(&f, &y));
        assert_eq!(s.dim(), 2);
        // swapping the variables has trace 0 on the linear forms
        let tr = s.trace_of(|g| g.permute(&[1, 0])).unwrap();
        assert_eq!(tr, f.zero());
        assert!(s.coords(&p(&[(&[2, 0], 1)])).is_none());
    }
}
