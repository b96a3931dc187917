//! Dense univariate polynomials in `∂`, used for Euclidean steps.

use crate::exactpoly::{Monomial, Poly, Var};
use crate::scalar::Scalar;

/// Coefficients from degree 0 upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> UniPoly<F> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Panics if `p` involves a variable other than `D`.
    pub fn from_poly(p: &Poly<F>) -> Self {
        assert!(
            p.uses_only(&[Var::D]),
            "expected a polynomial in D only: {}",
            p
        );
        let n = (p.degree_in(Var::D) + 1).max(0) as usize;
        let mut coeffs = vec![F::zero(); n];
        for (m, c) in p.terms() {
            coeffs[m.exp(Var::D) as usize] = c.clone();
        }
        UniPoly { coeffs }
    }

    pub fn to_poly(&self) -> Poly<F> {
        Poly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var_pow(Var::D, k as u16), c.clone())),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut p = UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        };
        p.trim();
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(F::zero);
            let b = other.coeffs.get(k).cloned().unwrap_or_else(F::zero);
            coeffs.push(a - b);
        }
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap().clone() / lc.clone();
            let shift = rd - dd;
            quot[shift] = c.clone();
            for (k, b) in divisor.coeffs.iter().enumerate() {
                rem.coeffs[k + shift] = rem.coeffs[k + shift].clone() - c.clone() * b.clone();
            }
            rem.trim();
        }
        let mut q = UniPoly { coeffs: quot };
        q.trim();
        (q, rem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn division_identity() {
        let d = Poly::<Rational>::var(Var::D);
        let a = UniPoly::from_poly(&(&d.pow(3) + &Poly::int(2)));
        let b = UniPoly::from_poly(&(&d + &Poly::int(1)));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).sub(&r.scale(&Rational::from_i64(-1))), a);
        assert_eq!(r.to_poly(), Poly::int(1));
    }
}
