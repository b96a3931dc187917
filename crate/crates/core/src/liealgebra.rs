//! Finite-dimensional Lie algebras given by structure constants.

use crate::error::{Error, Result};
use crate::modlinalg::{nullspace_q, QMatrix, RowEchelon};
use crate::scalar::Scalar;

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`, verified antisymmetric and Jacobi at
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra<F> {
    names: Vec<String>,
    c: Vec<Vec<Vec<F>>>,
}

impl<F: Scalar> LieAlgebra<F> {
    pub fn new(names: Vec<String>, constants: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let n = names.len();
        let rectangular = constants.len() == n
            && constants
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
        if n == 0 || !rectangular {
            return Err(Error::MalformedConstants(n));
        }
        let g = LieAlgebra {
            names,
            c: constants,
        };
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        Ok(g)
    }

    fn check_antisymmetry(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(Error::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
                    let t1 = self.br(&a, &self.br(&b, &c));
                    let t2 = self.br(&b, &self.br(&c, &a));
                    let t3 = self.br(&c, &self.br(&a, &b));
                    if (0..n).any(|m| !(t1[m].clone() + t2[m].clone() + t3[m].clone()).is_zero()) {
                        return Err(Error::JacobiFails { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn constants(&self) -> &[Vec<Vec<F>>] {
        &self.c
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[F] {
        &self.c[i][j]
    }

    pub fn unit(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    fn br(&self, u: &[F], v: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let ck = &self.c[i][j][k];
                    if !ck.is_zero() {
                        *o = o.clone() + ab.clone() * ck.clone();
                    }
                }
            }
        }
        out
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &[F], v: &[F]) -> Result<Vec<F>> {
        for w in [u, v] {
            if w.len() != self.dim() {
                return Err(Error::RankMismatch {
                    expected: self.dim(),
                    found: w.len(),
                });
            }
        }
        Ok(self.br(u, v))
    }

    /// Basis of `{z : [z, e_j] = 0 for all j}`.
    pub fn center(&self) -> Vec<Vec<F>> {
        let n = self.dim();
        let mut m = QMatrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m.set(j * n + k, i, self.c[i][j][k].clone());
                }
            }
        }
        nullspace_q(&m)
    }

    /// Whether `[g, g] = g`.
    pub fn is_perfect(&self) -> bool {
        let n = self.dim();
        let mut ech = RowEchelon::new(n);
        for i in 0..n {
            for j in 0..n {
                ech.insert_dense(&self.c[i][j]);
            }
        }
        ech.rank() == n
    }

    pub fn abelian(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("a{}", i)).collect();
        LieAlgebra::new(names, vec![vec![vec![F::zero(); n]; n]; n]).expect("abelian algebra")
    }

    /// Heisenberg algebra `[p, q] = z`.
    pub fn heisenberg() -> Self {
        let mut c = vec![vec![vec![F::zero(); 3]; 3]; 3];
        c[0][1][2] = F::one();
        c[1][0][2] = -F::one();
        let names = ["p", "q", "z"].iter().map(|s| s.to_string()).collect();
        LieAlgebra::new(names, c).expect("heisenberg algebra")
    }

    /// `sl_2` in the basis `e, f, h`.
    pub fn sl2() -> Self {
        Self::sl(2)
    }

    pub fn sl3() -> Self {
        Self::sl(3)
    }

    /// `sl_n` (n ≥ 2) in the Chevalley basis: matrix units `E_ij` for
    /// `i < j`, then `E_ij` for `i > j`, then `H_k = E_kk - E_(k+1)(k+1)`.
    /// For `n = 2` the basis is named `e, f, h`.
    pub fn sl(n: usize) -> Self {
        assert!(n >= 2, "sl(n) needs n >= 2");
        let mut basis: Vec<(String, Vec<Vec<i64>>)> = Vec::new();
        let unit = |i: usize, j: usize| {
            let mut m = vec![vec![0i64; n]; n];
            m[i][j] = 1;
            m
        };
        let mut offdiag: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                offdiag.push((i, j));
            }
        }
        for i in 0..n {
            for j in 0..i {
                offdiag.push((i, j));
            }
        }
        // order negatives as E_21, E_31, E_32 to mirror the positives
        let (pos, mut neg): (Vec<_>, Vec<_>) = offdiag.into_iter().partition(|(i, j)| i < j);
        neg.sort_by_key(|&(i, j)| (j, i));
        for &(i, j) in pos.iter().chain(neg.iter()) {
            basis.push((format!("e{}{}", i + 1, j + 1), unit(i, j)));
        }
        for k in 0..n - 1 {
            let mut m = vec![vec![0i64; n]; n];
            m[k][k] = 1;
            m[k + 1][k + 1] = -1;
            basis.push((format!("h{}", k + 1), m));
        }
        if n == 2 {
            for (entry, name) in basis.iter_mut().zip(["e", "f", "h"]) {
                entry.0 = name.to_string();
            }
        }
        let coords = |m: &Vec<Vec<i64>>| -> Vec<F> {
            let mut v = Vec::with_capacity(n * n - 1);
            for &(i, j) in pos.iter().chain(neg.iter()) {
                v.push(F::from_i64(m[i][j]));
            }
            let mut partial = 0;
            for k in 0..n - 1 {
                partial += m[k][k];
                v.push(F::from_i64(partial));
            }
            v
        };
        let dim = basis.len();
        let mut c = vec![vec![Vec::new(); dim]; dim];
        for (a, (_, ma)) in basis.iter().enumerate() {
            for (b, (_, mb)) in basis.iter().enumerate() {
                let comm = commutator(ma, mb);
                c[a][b] = coords(&comm);
            }
        }
        let names = basis.into_iter().map(|(s, _)| s).collect();
        LieAlgebra::new(names, c).expect("sl(n) satisfies the axioms")
    }
}

fn commutator(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
        }
    }
    out
}
