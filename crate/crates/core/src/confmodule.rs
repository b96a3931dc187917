//! Elements of free `F[∂]`-modules of finite rank whose coefficients may
//! carry formal parameters.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Var};
use crate::scalar::Scalar;

/// `Σ_i p_i · e_i` stored as the coefficient vector `(p_1, ..., p_r)`.
///
/// `∂` is the commuting variable [`Var::D`] inside each coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModElement<F> {
    comps: Vec<Poly<F>>,
}

impl<F: Scalar> ModElement<F> {
    pub fn new(comps: Vec<Poly<F>>) -> Self {
        assert!(!comps.is_empty(), "module elements have positive rank");
        ModElement { comps }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![Poly::zero(); rank])
    }

    /// The generator `e_i` (0-based).
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.comps[i] = Poly::one();
        v
    }

    /// `p · e_i`.
    pub fn monomial(rank: usize, i: usize, p: Poly<F>) -> Self {
        let mut v = Self::zero(rank);
        v.comps[i] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly<F>] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly<F> {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<Poly<F>> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.comps.iter().any(|p| p.contains_var(v))
    }

    pub fn uses_only(&self, allowed: &[Var]) -> bool {
        self.comps.iter().all(|p| p.uses_only(allowed))
    }

    pub fn degree_in(&self, v: Var) -> i64 {
        self.comps
            .iter()
            .map(|p| p.degree_in(v))
            .max()
            .unwrap_or(-1)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    pub fn elem_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn elem_sub(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly<F>, &Poly<F>) -> Poly<F>) -> Self {
        ModElement {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// In-place `self += other`; panics on rank mismatch (internal use).
    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            *a -= b;
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn scal_mul(&self, p: &Poly<F>) -> Self {
        self.map(|c| c * p)
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn elem_substitute(&self, var: Var, repl: &Poly<F>) -> Self {
        self.map(|p| p.substitute(var, repl))
    }

    pub fn map(&self, f: impl Fn(&Poly<F>) -> Poly<F>) -> Self {
        ModElement {
            comps: self.comps.iter().map(f).collect(),
        }
    }

    /// Splits `self = Σ_k v^k · w_k`; returns `[w_0, w_1, ...]`.
    pub fn coefficients_in(&self, v: Var) -> Vec<ModElement<F>> {
        let n = (self.degree_in(v) + 1).max(0) as usize;
        let mut out = vec![Self::zero(self.rank()); n];
        for (i, p) in self.comps.iter().enumerate() {
            for (k, c) in p.coefficients_in(v).into_iter().enumerate() {
                out[k].comps[i] = c;
            }
        }
        out
    }

    /// `p_1 e1 + ... + p_r er` with the given generator names.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (p, name) in self.comps.iter().zip(names) {
            if p.is_zero() {
                continue;
            }
            let negative = p.terms().next().is_some_and(|(_, c)| c.is_negative());
            let q = if negative { -p } else { p.clone() };
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            if q == Poly::one() {
                out.push_str(name);
            } else if q.num_terms() == 1 {
                out.push_str(&format!("{} {}", q, name));
            } else {
                out.push_str(&format!("({}) {}", q, name));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<F: Scalar> fmt::Display for ModElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.rank()).map(|i| format!("e{}", i)).collect();
        f.write_str(&self.render(&names))
    }
}
