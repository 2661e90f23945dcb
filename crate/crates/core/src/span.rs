//! Graded subspaces closed under derivative operators.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::echelon::EchelonSpan;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// A degree-lowering operator applied during closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureOp {
    /// `∂ / ∂x_var`.
    Partial(usize),
    /// Divided power `∂_var^(order)`.
    Divided { var: usize, order: u32 },
}

impl ClosureOp {
    pub fn apply<F: Field>(&self, field: &F, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        match *self {
            ClosureOp::Partial(v) => f.differentiate(field, v, 1),
            ClosureOp::Divided { var, order } => f.divided_diff(field, var, order),
        }
    }

    /// All first-order partials in `nvars` variables.
    pub fn all_partials(nvars: usize) -> Vec<ClosureOp> {
        (0..nvars).map(ClosureOp::Partial).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Total,
    /// The first `x_vars` variables have X-degree, the rest Y-degree.
    Bigraded {
        x_vars: usize,
    },
}

impl Grading {
    /// Slice key of a homogeneous polynomial; total grading uses `(d, 0)`.
    pub fn key_of<E: Clone + PartialEq>(&self, f: &Poly<E>) -> Result<(u32, u32)> {
        match *self {
            Grading::Total => f.homogeneous_degree().map(|d| (d, 0)),
            Grading::Bigraded { x_vars } => f.homogeneous_bidegree(x_vars),
        }
        .ok_or(Error::NonHomogeneous)
    }
}

/// A graded subspace stored as one reduced echelon basis per (bi)degree.
#[derive(Clone, Debug)]
pub struct GradedSpan<F: Field> {
    field: F,
    nvars: usize,
    grading: Grading,
    slices: BTreeMap<(u32, u32), EchelonSpan<F>>,
}

impl<F: Field> PartialEq for GradedSpan<F> {
    fn eq(&self, other: &Self) -> bool {
        self.grading == other.grading && self.slices == other.slices
    }
}

impl<F: Field> GradedSpan<F> {
    pub fn new(field: F, nvars: usize, grading: Grading) -> Self {
        GradedSpan {
            field,
            nvars,
            grading,
            slices: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Inserts a homogeneous polynomial (zero is ignored).
    pub fn insert(&mut self, f: &Poly<F::Elem>) -> Result<bool> {
        if f.is_zero() {
            return Ok(false);
        }
        let key = self.grading.key_of(f)?;
        let field = self.field.clone();
        let nvars = self.nvars;
        Ok(self
            .slices
            .entry(key)
            .or_insert_with(|| EchelonSpan::new(field, nvars))
            .insert(f))
    }

    pub fn slices(&self) -> impl Iterator<Item = (&(u32, u32), &EchelonSpan<F>)> {
        self.slices.iter().filter(|(_, s)| !s.is_empty())
    }

    pub fn slice(&self, key: (u32, u32)) -> Option<&EchelonSpan<F>> {
        self.slices.get(&key)
    }

    pub fn dim(&self) -> usize {
        self.slices.values().map(|s| s.dim()).sum()
    }

    /// Nonzero dimensions per slice key.
    pub fn dims(&self) -> BTreeMap<(u32, u32), usize> {
        self.slices().map(|(k, s)| (*k, s.dim())).collect()
    }

    /// Dimensions collapsed to total degree.
    pub fn total_dims(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for ((a, b), s) in self.slices() {
            *out.entry(a + b).or_insert(0) += s.dim();
        }
        out
    }

    pub fn contains(&self, f: &Poly<F::Elem>) -> bool {
        if f.is_zero() {
            return true;
        }
        match self.grading.key_of(f) {
            Ok(k) => self.slices.get(&k).is_some_and(|s| s.contains(f)),
            Err(_) => false,
        }
    }

    /// Closes the span under `ops`, which must lower total degree.
    pub fn close_under(&mut self, ops: &[ClosureOp]) -> Result<()> {
        let Some(top) = self.slices.keys().map(|(a, b)| a + b).max() else {
            return Ok(());
        };
        for d in (1..=top).rev() {
            let keys: Vec<(u32, u32)> = self.slices.keys().filter(|(a, b)| a + b == d).copied().collect();
            for key in keys {
                let basis: Vec<Poly<F::Elem>> = self.slices[&key].basis().cloned().collect();
                for b in &basis {
                    for op in ops {
                        let g = op.apply(&self.field, b);
                        self.insert(&g)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The smallest graded subspace containing `generators` and closed under `ops`.
pub fn graded_span<F: Field>(
    field: &F,
    nvars: usize,
    generators: &[Poly<F::Elem>],
    ops: &[ClosureOp],
    grading: Grading,
) -> Result<GradedSpan<F>> {
    let mut s = GradedSpan::new(field.clone(), nvars, grading);
    for g in generators {
        s.insert(g)?;
    }
    s.close_under(ops)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::Monomial;

    #[test]
    fn linear_form_closure() {
        let f = Rationals;
        let g = Poly::from_terms(
            &f,
            2,
            [
                (Monomial::new(&[1, 0]), f.one()),
                (Monomial::new(&[0, 1]), f.from_i64(-1)),
            ],
        );
        let s = graded_span(&f, 2, &[g], &ClosureOp::all_partials(2), Grading::Total).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.total_dims(), BTreeMap::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn product_closure() {
        let f = Rationals;
        let g = Poly::monomial(&f, Monomial::new(&[1, 1]));
        let s = graded_span(&f, 2, &[g], &ClosureOp::all_partials(2), Grading::Total).unwrap();
        assert_eq!(s.total_dims(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn non_homogeneous_generator_is_rejected() {
        let f = Rationals;
        let g = Poly::from_terms(&f, 1, [(Monomial::new(&[1]), f.one()), (Monomial::new(&[0]), f.one())]);
        assert_eq!(
            graded_span(&f, 1, &[g], &[], Grading::Total).unwrap_err(),
            Error::NonHomogeneous
        );
    }
}
