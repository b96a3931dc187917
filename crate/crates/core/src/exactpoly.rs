//! Sparse multivariate polynomials over an exact field in a fixed set of
//! six formal variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::scalar::Scalar;

/// The closed set of formal variables.
///
/// `D` is the module derivation ∂, `Lam`/`Mu`/`Nu` are bracket parameters
/// and `X`/`Y` are parameters of conformal maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    D,
    Lam,
    Mu,
    Nu,
    X,
    Y,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::D, Var::Lam, Var::Mu, Var::Nu, Var::X, Var::Y];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Name used in the text format.
    pub fn name(self) -> &'static str {
        match self {
            Var::D => "D",
            Var::Lam => "lam",
            Var::Mu => "mu",
            Var::Nu => "nu",
            Var::X => "x",
            Var::Y => "y",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`Var::index`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial([u16; 6]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; 6])
    }

    pub fn new(exps: [u16; 6]) -> Self {
        Monomial(exps)
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Self {
        let mut exps = [0; 6];
        exps[v.index()] = e;
        Monomial(exps)
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated
    /// variables accumulate.
    pub fn from_pairs(pairs: &[(Var, u16)]) -> Self {
        let mut m = Self::one();
        for &(v, e) in pairs {
            m.0[v.index()] += e;
        }
        m
    }

    pub fn exps(&self) -> [u16; 6] {
        self.0
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 6]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.0;
        for (e, o) in exps.iter_mut().zip(other.0) {
            *e += o;
        }
        Monomial(exps)
    }

    /// The same monomial with the exponent of `v` cleared.
    pub fn without(&self, v: Var) -> Monomial {
        let mut exps = self.0;
        exps[v.index()] = 0;
        Monomial(exps)
    }
}

/// Graded lexicographic: total degree first, then exponents compared in
/// variable order (`D` most significant).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial in [`Var`] with coefficients in `F`.
///
/// Terms are kept in a map keyed by monomial; zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> Poly<F> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(F::one(), Monomial::var(v))
    }

    pub fn term(c: F, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter().rev()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Largest exponent of `v`; `-1` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> i64 {
        self.terms
            .keys()
            .map(|m| m.exp(v) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn uses_only(&self, allowed: &[Var]) -> bool {
        Var::ALL
            .iter()
            .filter(|v| !allowed.contains(v))
            .all(|&v| !self.contains_var(v))
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.contains_var(v))
            .collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates `v := repl`, all other variables untouched. This is the ring
    /// homomorphism fixing every variable except `v`; `repl` may itself
    /// contain `v`.
    pub fn substitute(&self, v: Var, repl: &Poly<F>) -> Self {
        if !self.contains_var(v) {
            return self.clone();
        }
        let max = self.degree_in(v).max(0) as usize;
        let mut powers = Vec::with_capacity(max + 1);
        powers.push(Self::one());
        for k in 1..=max {
            let next = &powers[k - 1] * repl;
            powers.push(next);
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let rest = m.without(v);
            let piece = powers[e].mul_monomial(&rest).scale(c);
            out += piece;
        }
        out
    }

    /// Substitutes several variables simultaneously.
    pub fn substitute_many(&self, subs: &[(Var, Poly<F>)]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut piece = Self::constant(c.clone());
            let mut rest = *m;
            for (v, repl) in subs {
                let e = m.exp(*v);
                if e > 0 {
                    piece = &piece * &repl.pow(e as u32);
                    rest = rest.without(*v);
                }
            }
            out += piece.mul_monomial(&rest);
        }
        out
    }

    pub fn rename(&self, from: Var, to: Var) -> Self {
        self.substitute(from, &Self::var(to))
    }

    /// Writes `self = Σ_k v^k · c_k` and returns `[c_0, c_1, ...]`, where no
    /// `c_k` contains `v`. Empty for the zero polynomial.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly<F>> {
        let n = (self.degree_in(v) + 1).max(0) as usize;
        let mut out = vec![Self::zero(); n];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    /// Maps every coefficient through `f`, dropping those that become zero.
    pub fn map_coeffs<G: Scalar>(&self, mut f: impl FnMut(&F) -> G) -> Poly<G> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl<F: Scalar> Default for Poly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Scalar> From<Var> for Poly<F> {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl<F: Scalar> AddAssign<Poly<F>> for Poly<F> {
    fn add_assign(&mut self, rhs: Poly<F>) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<F: Scalar> AddAssign<&Poly<F>> for Poly<F> {
    fn add_assign(&mut self, rhs: &Poly<F>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<F: Scalar> SubAssign<&Poly<F>> for Poly<F> {
    fn sub_assign(&mut self, rhs: &Poly<F>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<F: Scalar> SubAssign<Poly<F>> for Poly<F> {
    fn sub_assign(&mut self, rhs: Poly<F>) {
        *self -= &rhs;
    }
}

impl<F: Scalar> Add<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<F: Scalar> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(mut self, rhs: Poly<F>) -> Poly<F> {
        self += rhs;
        self
    }
}

impl<F: Scalar> Sub<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<F: Scalar> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(mut self, rhs: Poly<F>) -> Poly<F> {
        self -= &rhs;
        self
    }
}

impl<F: Scalar> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<F: Scalar> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Scalar> Mul<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        let mut out = Poly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Scalar> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

/// Canonical rendering: descending graded-lex terms, `num/den`
/// coefficients, `*` between factors, e.g. `D^2 - 1/2*D*lam + 3`.
impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().rev().map(|(m, c)| (m.0, c)))
            .finish()
    }
}
