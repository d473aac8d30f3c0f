use alloc::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A bivariate Laurent polynomial; keys are `(first exponent, second exponent)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly2 {
    field: FieldSpec,
    terms: BTreeMap<(i64, i64), Scalar>,
}

impl Poly2 {
    pub fn zero(field: FieldSpec) -> Self {
        Poly2 { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn monomial(c: Scalar, i: i64, j: i64) -> Self {
        let mut p = Poly2::zero(c.field());
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = ((i64, i64), Scalar)>) -> Self {
        let mut p = Poly2::zero(field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: (i64, i64), c: &Scalar) {
        let slot = self.terms.entry(e).or_insert_with(|| self.field.zero());
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term, if this is a monomial.
    pub fn as_monomial(&self) -> Option<((i64, i64), &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(*e, c);
        }
        p
    }

    pub fn neg(&self) -> Self {
        Poly2 { field: self.field, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut p = Poly2::zero(self.field);
        for (e, v) in &self.terms {
            p.add_term(*e, &(v * c));
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Poly2::zero(self.field);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                p.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly2::one(self.field);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Componentwise minimum of exponents (`(0, 0)` for the zero polynomial).
    pub fn min_exponents(&self) -> (i64, i64) {
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (a, b)
    }

    /// Multiply by the monomial `x^i y^j`.
    pub fn shift(&self, i: i64, j: i64) -> Self {
        Poly2 { field: self.field, terms: self.terms.iter().map(|((a, b), c)| ((a + i, b + j), c.clone())).collect() }
    }

    /// Substitute `x -> x^p0 y^p1`, `y -> x^q0 y^q1`.
    pub fn substitute_monomials(&self, x_img: (i64, i64), y_img: (i64, i64)) -> Self {
        let mut p = Poly2::zero(self.field);
        for ((i, j), c) in &self.terms {
            p.add_term((i * x_img.0 + j * y_img.0, i * x_img.1 + j * y_img.1), c);
        }
        p
    }

    /// Substitute polynomials for both variables; exponents must be nonnegative.
    pub fn substitute(&self, x_img: &Poly2, y_img: &Poly2) -> Result<Self> {
        let mut out = Poly2::zero(self.field);
        let mut x_pows: alloc::vec::Vec<Poly2> = alloc::vec![Poly2::one(self.field)];
        let mut y_pows: alloc::vec::Vec<Poly2> = alloc::vec![Poly2::one(self.field)];
        for ((i, j), c) in &self.terms {
            if *i < 0 || *j < 0 {
                return Err(Error::UnsupportedConfiguration(alloc::string::String::from(
                    "negative exponent under a non-monomial substitution",
                )));
            }
            while x_pows.len() <= *i as usize {
                let next = x_pows.last().unwrap().mul(x_img);
                x_pows.push(next);
            }
            while y_pows.len() <= *j as usize {
                let next = y_pows.last().unwrap().mul(y_img);
                y_pows.push(next);
            }
            out = out.add(&x_pows[*i as usize].mul(&y_pows[*j as usize]).scale(c));
        }
        Ok(out)
    }

    /// Evaluate at a point; exponents must be nonnegative unless the
    /// coordinate is nonzero.
    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Option<Scalar> {
        let mut acc = self.field.zero();
        for ((i, j), c) in &self.terms {
            acc = &acc + &(&(c * &x.pow(*i)?) * &y.pow(*j)?);
        }
        Some(acc)
    }
}
