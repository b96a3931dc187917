//! Finite Lie conformal algebras given by λ-brackets of generators.

use std::fmt;

use crate::confmodule::ModElement;
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Poly, Var};
use crate::liealgebra::LieAlgebra;
use crate::modlinalg::KeyedSystem;
use crate::scalar::Scalar;

/// A failing generator tuple (0-based) with the nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<F> {
    pub gens: Vec<usize>,
    pub residual: ModElement<F>,
}

impl<F: Scalar> Witness<F> {
    pub fn render(&self, names: &[String]) -> String {
        let tuple: Vec<&str> = self.gens.iter().map(|&i| names[i].as_str()).collect();
        format!(
            "({}): residual {}",
            tuple.join(", "),
            self.residual.render(names)
        )
    }
}

/// `Ok(())` or the first failing tuple.
pub type Check<F> = std::result::Result<(), Witness<F>>;

/// Rank `r` algebra with `table[i][j] = [e_i λ e_j]`, entries in `D, lam`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalAlgebra<F> {
    names: Vec<String>,
    table: Vec<Vec<ModElement<F>>>,
    current_of: Option<LieAlgebra<F>>,
}

impl<F: Scalar> ConformalAlgebra<F> {
    /// Validates the shape of the table. The axioms are checked separately
    /// by [`check_skew`](Self::check_skew) and [`check_jacobi`](Self::check_jacobi).
    pub fn new(names: Vec<String>, table: Vec<Vec<ModElement<F>>>) -> Result<Self> {
        let r = names.len();
        if r == 0 {
            return Err(Error::InvalidTable("rank must be positive".into()));
        }
        if table.len() != r || table.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidTable(format!("table is not {r}x{r}")));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.rank() != r {
                    return Err(Error::RankMismatch {
                        expected: r,
                        found: e.rank(),
                    });
                }
                if !e.uses_only(&[Var::D, Var::Lam]) {
                    return Err(Error::InvalidTable(format!(
                        "entry [{} lam {}] uses variables other than D, lam",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(ConformalAlgebra {
            names,
            table,
            current_of: None,
        })
    }

    /// Virasoro algebra `[L λ L] = (∂ + 2λ) L`.
    pub fn vir() -> Self {
        let entry = ModElement::new(vec![
            Poly::var(Var::D) + Poly::var(Var::Lam).scale(&F::from_i64(2)),
        ]);
        Self::new(vec!["L".into()], vec![vec![entry]]).expect("virasoro table")
    }

    /// Current algebra `[a λ b] = [a, b]`.
    pub fn cur(g: &LieAlgebra<F>) -> Self {
        let n = g.dim();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        ModElement::new(
                            g.structure(i, j)
                                .iter()
                                .cloned()
                                .map(Poly::constant)
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut a = Self::new(g.names().to_vec(), table).expect("current algebra table");
        a.current_of = Some(g.clone());
        a
    }

    /// Block-diagonal sum; generators are renamed `name_1` and `name_2`.
    pub fn direct_sum(a: &Self, b: &Self) -> Self {
        let (ra, rb) = (a.rank(), b.rank());
        let r = ra + rb;
        let names = a
            .names
            .iter()
            .map(|n| format!("{n}_1"))
            .chain(b.names.iter().map(|n| format!("{n}_2")))
            .collect();
        let mut table = vec![vec![ModElement::zero(r); r]; r];
        for i in 0..ra {
            for j in 0..ra {
                table[i][j] = embed(&a.table[i][j], r, 0);
            }
        }
        for i in 0..rb {
            for j in 0..rb {
                table[ra + i][ra + j] = embed(&b.table[i][j], r, ra);
            }
        }
        ConformalAlgebra {
            names,
            table,
            current_of: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> &[Vec<ModElement<F>>] {
        &self.table
    }

    pub fn entry(&self, i: usize, j: usize) -> &ModElement<F> {
        &self.table[i][j]
    }

    /// The Lie algebra this was built from by [`cur`](Self::cur), if any.
    pub fn current_of(&self) -> Option<&LieAlgebra<F>> {
        self.current_of.as_ref()
    }

    pub fn generator(&self, i: usize) -> ModElement<F> {
        ModElement::basis(self.rank(), i)
    }

    /// Highest total degree in `D, lam` among the table entries.
    pub fn max_table_degree(&self) -> usize {
        self.table
            .iter()
            .flatten()
            .flat_map(|e| e.comps().iter().map(|p| p.total_degree()))
            .max()
            .unwrap_or(-1)
            .max(0) as usize
    }

    fn check_rank(&self, e: &ModElement<F>) -> Result<()> {
        if e.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: e.rank(),
            });
        }
        Ok(())
    }

    /// `[a_s b]` for an arbitrary parameter polynomial `s`:
    /// `Σ p_i(-s) q_j(∂ + s) table[i][j](λ → s)`.
    ///
    /// Only `D` in `a`, `D` in `b` and `lam` in the table are substituted,
    /// so any parameters carried by `a` and `b` pass through untouched.
    pub fn bracket_at(&self, a: &ModElement<F>, b: &ModElement<F>, s: &Poly<F>) -> ModElement<F> {
        assert_eq!(a.rank(), self.rank(), "rank mismatch");
        assert_eq!(b.rank(), self.rank(), "rank mismatch");
        let r = self.rank();
        let minus_s = -s;
        let shifted = &Poly::var(Var::D) + s;
        let ps: Vec<Poly<F>> = a
            .comps()
            .iter()
            .map(|p| p.substitute(Var::D, &minus_s))
            .collect();
        let qs: Vec<Poly<F>> = b
            .comps()
            .iter()
            .map(|q| q.substitute(Var::D, &shifted))
            .collect();
        let mut out = ModElement::zero(r);
        for (i, p) in ps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in qs.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let t = &self.table[i][j];
                if t.is_zero() {
                    continue;
                }
                let factor = p * q;
                out.add_assign(&t.map(|c| &c.substitute(Var::Lam, s) * &factor));
            }
        }
        out
    }

    /// `[a_outer b]` with the table's `lam` renamed to `outer`.
    pub fn eval_bracket(
        &self,
        a: &ModElement<F>,
        b: &ModElement<F>,
        outer: Var,
    ) -> Result<ModElement<F>> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        if outer == Var::D {
            return Err(Error::VariableClash(Var::D));
        }
        if a.contains_var(outer) || b.contains_var(outer) {
            return Err(Error::VariableClash(outer));
        }
        Ok(self.bracket_at(a, b, &Poly::var(outer)))
    }

    /// `[a λ b] + [b_{-λ-∂} a] = 0` on generator pairs.
    pub fn check_skew(&self) -> Check<F> {
        let flip = -(Poly::var(Var::D) + Poly::var(Var::Lam));
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let swapped = self.table[j][i].elem_substitute(Var::Lam, &flip);
                let residual = self.table[i][j].elem_add(&swapped).expect("same rank");
                if !residual.is_zero() {
                    return Err(Witness {
                        gens: vec![i, j],
                        residual,
                    });
                }
            }
        }
        Ok(())
    }

    /// Residual `[a_λ[b_μ c]] - [[a_λ b]_{λ+μ} c] - [b_μ[a_λ c]]`.
    pub fn jacobi_residual(
        &self,
        a: &ModElement<F>,
        b: &ModElement<F>,
        c: &ModElement<F>,
    ) -> ModElement<F> {
        let lam = Poly::var(Var::Lam);
        let mu = Poly::var(Var::Mu);
        let lam_mu = &lam + &mu;
        let lhs = self.bracket_at(a, &self.bracket_at(b, c, &mu), &lam);
        let first = self.bracket_at(&self.bracket_at(a, b, &lam), c, &lam_mu);
        let second = self.bracket_at(b, &self.bracket_at(a, c, &lam), &mu);
        let mut r = lhs;
        r.sub_assign(&first);
        r.sub_assign(&second);
        r
    }

    /// Jacobi identity on generator triples.
    pub fn check_jacobi(&self) -> Check<F> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let residual = self.jacobi_residual(
                        &self.generator(i),
                        &self.generator(j),
                        &self.generator(k),
                    );
                    if !residual.is_zero() {
                        return Err(Witness {
                            gens: vec![i, j, k],
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis over the scalars of the central elements `Σ m_i(∂) e_i` with
    /// `deg m_i ≤ deg_bound`.
    pub fn center(&self, deg_bound: usize) -> Vec<ModElement<F>> {
        let r = self.rank();
        let candidates: Vec<ModElement<F>> = (0..r)
            .flat_map(|i| (0..=deg_bound).map(move |p| (i, p)))
            .map(|(i, p)| ModElement::monomial(r, i, Poly::var(Var::D).pow(p as u32)))
            .collect();
        bounded_annihilator(
            self,
            &candidates,
            &(0..r).map(|j| self.generator(j)).collect::<Vec<_>>(),
        )
    }
}

/// Combinations `z` of `candidates` with `[z λ u] = 0` for all `us`.
pub(crate) fn bounded_annihilator<F: Scalar>(
    alg: &ConformalAlgebra<F>,
    candidates: &[ModElement<F>],
    us: &[ModElement<F>],
) -> Vec<ModElement<F>> {
    let lam = Poly::var(Var::Lam);
    let mut sys: KeyedSystem<(usize, usize, Monomial), F> = KeyedSystem::new(candidates.len());
    for (col, z) in candidates.iter().enumerate() {
        for (u_idx, u) in us.iter().enumerate() {
            let br = alg.bracket_at(z, u, &lam);
            for (k, p) in br.comps().iter().enumerate() {
                for (m, c) in p.terms() {
                    sys.add((u_idx, k, *m), col, c.clone());
                }
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let mut z = ModElement::zero(alg.rank());
            for (c, cand) in v.iter().zip(candidates) {
                if !c.is_zero() {
                    z.add_assign(&cand.scale(c));
                }
            }
            z
        })
        .collect()
}

fn embed<F: Scalar>(e: &ModElement<F>, rank: usize, offset: usize) -> ModElement<F> {
    let mut out = ModElement::zero(rank);
    for (i, p) in e.comps().iter().enumerate() {
        if !p.is_zero() {
            out.add_assign(&ModElement::monomial(rank, offset + i, p.clone()));
        }
    }
    out
}

impl<F: Scalar> fmt::Display for ConformalAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let e = &self.table[i][j];
                if !e.is_zero() {
                    writeln!(
                        f,
                        "[{} ~ {}] = {}",
                        self.names[i],
                        self.names[j],
                        e.render(&self.names)
                    )?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    type P = Poly<Rational>;
    type M = ModElement<Rational>;
    type A = ConformalAlgebra<Rational>;

    fn d() -> P {
        P::var(Var::D)
    }
    fn lam() -> P {
        P::var(Var::Lam)
    }

    #[test]
    fn virasoro_brackets() {
        let vir = A::vir();
        assert_eq!(vir.rank(), 1);
        let l = vir.generator(0);
        let ll = vir.eval_bracket(&l, &l, Var::Lam).unwrap();
        assert_eq!(ll.render(vir.names()), "(D + 2*lam) L");
        let dl = l.scal_mul(&d());
        let dll = vir.eval_bracket(&dl, &l, Var::Lam).unwrap();
        assert_eq!(dll, ll.scal_mul(&-lam()));
        assert_eq!(
            dll.comp(0),
            &(-(&lam() * &(d() + lam().scale(&Rational::from_i64(2)))))
        );
        assert!(vir.check_skew().is_ok());
        assert!(vir.check_jacobi().is_ok());
    }

    #[test]
    fn current_brackets() {
        let cur = A::cur(&LieAlgebra::sl2());
        assert_eq!(cur.rank(), 3);
        let (e, f, h) = (cur.generator(0), cur.generator(1), cur.generator(2));
        assert_eq!(cur.eval_bracket(&e, &f, Var::Lam).unwrap(), h);
        assert!(cur.table().iter().flatten().all(|t| t.uses_only(&[])));
        assert!(cur.check_skew().is_ok());
        assert!(cur.check_jacobi().is_ok());
        assert!(cur.current_of().is_some());
    }

    #[test]
    fn variable_clash_is_reported() {
        let vir = A::vir();
        let l = vir.generator(0);
        let la = l.scal_mul(&lam());
        assert_eq!(
            vir.eval_bracket(&la, &l, Var::Lam),
            Err(Error::VariableClash(Var::Lam))
        );
        assert!(vir.eval_bracket(&la, &l, Var::Mu).is_ok());
        assert!(matches!(
            vir.eval_bracket(&l, &M::zero(2), Var::Lam),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn failing_tables_give_witnesses() {
        let bad = A::new(vec!["e".into()], vec![vec![M::basis(1, 0)]]).unwrap();
        let w = bad.check_skew().unwrap_err();
        assert_eq!(w.gens, vec![0, 0]);
        assert_eq!(w.residual.comp(0), &P::int(2));
        // [e λ e] = e: [e_λ[e_μ e]] = e while the right side is 2e
        let w = bad.check_jacobi().unwrap_err();
        assert_eq!(w.gens, vec![0, 0, 0]);
        assert_eq!(w.residual.comp(0), &P::int(-1));
        assert!(A::new(
            vec!["e".into()],
            vec![vec![M::monomial(1, 0, P::var(Var::X))]]
        )
        .is_err());
    }

    #[test]
    fn direct_sums() {
        let cur = A::cur(&LieAlgebra::sl2());
        let s = A::direct_sum(&cur, &cur);
        assert_eq!(s.rank(), 6);
        assert_eq!(s.names()[0], "e_1");
        assert_eq!(s.names()[3], "e_2");
        assert!(s
            .eval_bracket(&s.generator(0), &s.generator(3), Var::Lam)
            .unwrap()
            .is_zero());
        assert_eq!(
            s.eval_bracket(&s.generator(3), &s.generator(4), Var::Lam)
                .unwrap(),
            s.generator(5)
        );
        let vv = A::direct_sum(&A::vir(), &A::vir());
        assert!(vv.check_jacobi().is_ok());
        assert!(vv.check_skew().is_ok());
    }

    #[test]
    fn centers() {
        assert!(A::vir().center(3).is_empty());
        assert!(A::cur(&LieAlgebra::sl2()).center(3).is_empty());
        assert_eq!(A::cur(&LieAlgebra::abelian(1)).center(2).len(), 3);
        // z and its ∂-multiples
        assert_eq!(A::cur(&LieAlgebra::heisenberg()).center(1).len(), 2);
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((-3i64..4, 0u16..3), 0..4).prop_map(|ts| {
            P::from_terms(
                ts.into_iter()
                    .map(|(c, e)| (Monomial::var_pow(Var::D, e), Rational::from_i64(c))),
            )
        })
    }

    fn arb_elem(rank: usize) -> impl Strategy<Value = M> {
        prop::collection::vec(arb_poly(), rank).prop_map(M::new)
    }

    fn algebras() -> Vec<A> {
        vec![A::vir(), A::cur(&LieAlgebra::sl2())]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn sesquilinearity(a1 in arb_elem(1), b1 in arb_elem(1), a3 in arb_elem(3), b3 in arb_elem(3)) {
            for (alg, a, b) in algebras().iter().zip([(a1, b1), (a3, b3)]).map(|(g, (a, b))| (g, a, b)) {
                let ab = alg.eval_bracket(&a, &b, Var::Lam).unwrap();
                let da_b = alg.eval_bracket(&a.scal_mul(&d()), &b, Var::Lam).unwrap();
                prop_assert_eq!(da_b, ab.scal_mul(&-lam()));
                let a_db = alg.eval_bracket(&a, &b.scal_mul(&d()), Var::Lam).unwrap();
                prop_assert_eq!(a_db, ab.scal_mul(&(d() + lam())));
            }
        }

        #[test]
        fn skew_on_random_elements(a in arb_elem(3), b in arb_elem(3)) {
            let alg = A::cur(&LieAlgebra::sl2());
            let ab = alg.eval_bracket(&a, &b, Var::Lam).unwrap();
            let ba = alg.eval_bracket(&b, &a, Var::Lam).unwrap();
            let flipped = ba.elem_substitute(Var::Lam, &-(d() + lam()));
            prop_assert_eq!(ab, flipped.neg());
        }

        #[test]
        fn vir_skew_and_jacobi_on_random_elements(a in arb_elem(1), b in arb_elem(1), c in arb_elem(1)) {
            let vir = A::vir();
            let ab = vir.eval_bracket(&a, &b, Var::Lam).unwrap();
            let ba = vir.eval_bracket(&b, &a, Var::Lam).unwrap();
            prop_assert_eq!(ab, ba.elem_substitute(Var::Lam, &-(d() + lam())).neg());
            prop_assert!(vir.jacobi_residual(&a, &b, &c).is_zero());
        }

        #[test]
        fn cur_jacobi_on_random_elements(a in arb_elem(3), b in arb_elem(3), c in arb_elem(3)) {
            let cur = A::cur(&LieAlgebra::sl2());
            prop_assert!(cur.jacobi_residual(&a, &b, &c).is_zero());
        }
    }
}
