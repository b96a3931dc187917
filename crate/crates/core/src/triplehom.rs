//! Triple homomorphisms between conformal algebras and their split into a
//! homomorphism and an anti-homomorphism.

use std::fmt;

use crate::confalgebra::{bounded_annihilator, Check, ConformalAlgebra, Witness};
use crate::confmap::ModuleMap;
use crate::confmodule::ModElement;
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Poly, Var};
use crate::modlinalg::{hnf, intersect, member, KeyedSystem, PolyMatrix, SubmoduleBasis};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapKind {
    /// `f([a_λ b]) = [f(a)_λ f(b)]`
    Hom,
    /// `f([a_λ b]) = -[f(a)_λ f(b)]`
    AntiHom,
    /// `f([a_λ[b_μ c]]) = [f(a)_λ[f(b)_μ f(c)]]`
    TripleHom,
}

impl MapKind {
    pub const ALL: [MapKind; 3] = [MapKind::Hom, MapKind::AntiHom, MapKind::TripleHom];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Hom => "HOM",
            MapKind::AntiHom => "ANTIHOM",
            MapKind::TripleHom => "TRIPLEHOM",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_ranks<F: Scalar>(
    a: &ConformalAlgebra<F>,
    b: &ConformalAlgebra<F>,
    f: &ModuleMap<F>,
) -> Result<()> {
    if f.in_rank() != a.rank() {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            found: f.in_rank(),
        });
    }
    if f.out_rank() != b.rank() {
        return Err(Error::RankMismatch {
            expected: b.rank(),
            found: f.out_rank(),
        });
    }
    Ok(())
}

/// Checks the identity of `kind` on generator pairs or triples. For
/// `TripleHom` the equivalent nested form
/// `f([[a_λ b]_{λ+μ} c]) = [[f(a)_λ f(b)]_{λ+μ} f(c)]` is checked as well.
pub fn modmap_kind<F: Scalar>(
    a: &ConformalAlgebra<F>,
    b: &ConformalAlgebra<F>,
    f: &ModuleMap<F>,
    kind: MapKind,
) -> Result<Check<F>> {
    check_ranks(a, b, f)?;
    let r = a.rank();
    let lam = Poly::var(Var::Lam);
    let mu = Poly::var(Var::Mu);
    let lam_mu = &lam + &mu;
    let apply = |e: &ModElement<F>| f.apply(e).expect("ranks checked");
    let gens: Vec<_> = (0..r).map(|i| a.generator(i)).collect();
    let images: Vec<_> = (0..r).map(|i| f.column(i).clone()).collect();
    let fail = |gens: Vec<usize>, residual: ModElement<F>| Ok(Err(Witness { gens, residual }));
    match kind {
        MapKind::Hom | MapKind::AntiHom => {
            for i in 0..r {
                for j in 0..r {
                    let lhs = apply(&a.bracket_at(&gens[i], &gens[j], &lam));
                    let rhs = b.bracket_at(&images[i], &images[j], &lam);
                    let res = if kind == MapKind::Hom {
                        lhs.elem_sub(&rhs)?
                    } else {
                        lhs.elem_add(&rhs)?
                    };
                    if !res.is_zero() {
                        return fail(vec![i, j], res);
                    }
                }
            }
        }
        MapKind::TripleHom => {
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        let lhs = apply(&a.bracket_at(
                            &gens[i],
                            &a.bracket_at(&gens[j], &gens[k], &mu),
                            &lam,
                        ));
                        let rhs = b.bracket_at(
                            &images[i],
                            &b.bracket_at(&images[j], &images[k], &mu),
                            &lam,
                        );
                        let res = lhs.elem_sub(&rhs)?;
                        if !res.is_zero() {
                            return fail(vec![i, j, k], res);
                        }
                        let lhs2 = apply(&a.bracket_at(
                            &a.bracket_at(&gens[i], &gens[j], &lam),
                            &gens[k],
                            &lam_mu,
                        ));
                        let rhs2 = b.bracket_at(
                            &b.bracket_at(&images[i], &images[j], &lam),
                            &images[k],
                            &lam_mu,
                        );
                        let res2 = lhs2.elem_sub(&rhs2)?;
                        if !res2.is_zero() {
                            return fail(vec![i, j, k], res2);
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

pub fn is_kind<F: Scalar>(
    a: &ConformalAlgebra<F>,
    b: &ConformalAlgebra<F>,
    f: &ModuleMap<F>,
    kind: MapKind,
) -> bool {
    matches!(modmap_kind(a, b, f, kind), Ok(Ok(())))
}

/// `Im(f)` as an `F[∂]`-submodule in normal form.
pub fn image<F: Scalar>(f: &ModuleMap<F>) -> SubmoduleBasis<F> {
    hnf(&PolyMatrix::from_columns(f.out_rank(), f.columns()))
}

/// The subalgebra of `B` generated by the image of `f`: the image is
/// closed under brackets (all `λ`-coefficients) until the normal form
/// stops changing.
pub fn enveloping<F: Scalar>(b: &ConformalAlgebra<F>, f: &ModuleMap<F>) -> SubmoduleBasis<F> {
    let r = b.rank();
    let lam = Poly::var(Var::Lam);
    let mut current = image(f);
    loop {
        let cols = current.columns();
        let mut gens = cols.clone();
        for u in &cols {
            for v in &cols {
                gens.extend(b.bracket_at(u, v, &lam).coefficients_in(Var::Lam));
            }
        }
        let next = hnf(&PolyMatrix::from_columns(r, &gens));
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Whether the only element `Σ m_c(∂) u_c` of `E` (with `deg m_c ≤ deg_bound`)
/// that brackets trivially with every generator `u` of `E` is zero.
pub fn center_check<F: Scalar>(
    b: &ConformalAlgebra<F>,
    e: &SubmoduleBasis<F>,
    deg_bound: usize,
) -> bool {
    let cols = e.columns();
    let candidates: Vec<ModElement<F>> = cols
        .iter()
        .flat_map(|u| (0..=deg_bound).map(move |p| u.scal_mul(&Poly::var(Var::D).pow(p as u32))))
        .collect();
    bounded_annihilator(b, &candidates, &cols).is_empty()
}

/// Degree bound used for [`center_check`] inside [`delta_f`].
pub fn envelope_center_bound<F: Scalar>(b: &ConformalAlgebra<F>, f: &ModuleMap<F>) -> usize {
    f.degree_d().max(0) as usize + b.max_table_degree() + 2
}

/// The homomorphism `δ` with `[δ(a)_λ f(b)] = f([a_λ b])`, sought in `E`.
pub fn delta_f<F: Scalar>(
    a: &ConformalAlgebra<F>,
    b: &ConformalAlgebra<F>,
    f: &ModuleMap<F>,
) -> Result<ModuleMap<F>> {
    check_ranks(a, b, f)?;
    if !is_kind(a, b, f, MapKind::TripleHom) {
        return Err(Error::NotTripleHom);
    }
    let e = enveloping(b, f);
    let bound = envelope_center_bound(b, f);
    if !center_check(b, &e, bound) {
        return Err(Error::CenterNonzero { bound });
    }
    let deg = f.degree_d().max(0) as usize + a.max_table_degree();
    let delta = solve_delta_f(a, b, f, &e, deg).or_else(|err| match err {
        Error::NoSolution(_) => solve_delta_f(a, b, f, &e, 2 * deg + 1),
        err => Err(err),
    })?;
    if !is_kind(a, b, &delta, MapKind::Hom) {
        return Err(Error::NoSolution("lifted map is not a homomorphism".into()));
    }
    Ok(delta)
}

fn solve_delta_f<F: Scalar>(
    a: &ConformalAlgebra<F>,
    b: &ConformalAlgebra<F>,
    f: &ModuleMap<F>,
    e: &SubmoduleBasis<F>,
    deg: usize,
) -> Result<ModuleMap<F>> {
    let (ra, rb) = (a.rank(), b.rank());
    let lam = Poly::var(Var::Lam);
    let basis = e.columns();
    // unknown (i, c, p): coefficient of ∂^p u_c in δ(e_i)
    let unknowns: Vec<(usize, usize, usize)> = (0..ra)
        .flat_map(|i| (0..basis.len()).flat_map(move |c| (0..=deg).map(move |p| (i, c, p))))
        .collect();
    let candidate = |c: usize, p: usize| basis[c].scal_mul(&Poly::var(Var::D).pow(p as u32));
    let mut sys: KeyedSystem<(usize, usize, usize, Monomial), F> = KeyedSystem::new(unknowns.len());
    for (col, &(i, c, p)) in unknowns.iter().enumerate() {
        let z = candidate(c, p);
        for j in 0..ra {
            let br = b.bracket_at(&z, f.column(j), &lam);
            for (k, poly) in br.comps().iter().enumerate() {
                for (m, v) in poly.terms() {
                    sys.add((i, j, k, *m), col, v.clone());
                }
            }
        }
    }
    for i in 0..ra {
        for j in 0..ra {
            let rhs = f.apply(&a.bracket_at(&a.generator(i), &a.generator(j), &lam))?;
            for (k, poly) in rhs.comps().iter().enumerate() {
                for (m, v) in poly.terms() {
                    sys.add_rhs((i, j, k, *m), v.clone());
                }
            }
        }
    }
    let (sol, kernel) = sys
        .solve()
        .ok_or_else(|| Error::NoSolution(format!("no δ with multiplier degree <= {deg}")))?;
    if !kernel.is_empty() {
        return Err(Error::CenterNonzero { bound: deg });
    }
    let mut cols = vec![ModElement::zero(rb); ra];
    for (&(i, c, p), v) in unknowns.iter().zip(&sol) {
        if !v.is_zero() {
            cols[i].add_assign(&candidate(c, p).scale(v));
        }
    }
    ModuleMap::new(rb, cols)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitLabel {
    Hom,
    AntiHom,
    DirectSum,
}

impl SplitLabel {
    pub fn name(self) -> &'static str {
        match self {
            SplitLabel::Hom => "HOM",
            SplitLabel::AntiHom => "ANTIHOM",
            SplitLabel::DirectSum => "DIRECT_SUM",
        }
    }
}

impl fmt::Display for SplitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `f = f_I + f_J` with `f_I` a homomorphism into `E⁺` and `f_J` an
/// anti-homomorphism into `E⁻`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<F> {
    pub f_i: ModuleMap<F>,
    pub f_j: ModuleMap<F>,
    pub e_plus: SubmoduleBasis<F>,
    pub e_minus: SubmoduleBasis<F>,
    pub delta: ModuleMap<F>,
    pub label: SplitLabel,
    /// Name and outcome of each verified property, in a fixed order.
    pub checks: Vec<(&'static str, bool)>,
}

/// `f_I = (f + δ)/2`, `f_J = (f - δ)/2`, `E± = Im(f ± δ)`, all verified.
pub fn split_decompose<F: Scalar>(
    a: &ConformalAlgebra<F>,
    b: &ConformalAlgebra<F>,
    f: &ModuleMap<F>,
) -> Result<Decomposition<F>> {
    let delta = delta_f(a, b, f)?;
    let half = F::half();
    let plus = f.add(&delta)?;
    let minus = f.sub(&delta)?;
    let f_i = plus.scale(&half);
    let f_j = minus.scale(&half);
    let e_plus = image(&plus);
    let e_minus = image(&minus);
    let lam = Poly::var(Var::Lam);

    let sum_ok = f_i.add(&f_j)? == *f;
    let hom_ok = is_kind(a, b, &f_i, MapKind::Hom);
    let anti_ok = is_kind(a, b, &f_j, MapKind::AntiHom);
    let orth_ok = e_plus.columns().iter().all(|u| {
        e_minus
            .columns()
            .iter()
            .all(|v| b.bracket_at(u, v, &lam).is_zero())
    });
    let meet_ok = intersect(&e_plus, &e_minus)?.is_zero();
    let mut image_ok = true;
    for j in 0..f.in_rank() {
        image_ok &= member(f_i.column(j), &e_plus)? && member(f_j.column(j), &e_minus)?;
    }
    let checks = vec![
        ("f = f_I + f_J", sum_ok),
        ("f_I is a homomorphism", hom_ok),
        ("f_J is an anti-homomorphism", anti_ok),
        ("[E+ lam E-] = 0", orth_ok),
        ("E+ meet E- = 0", meet_ok),
        ("Im f_I in E+, Im f_J in E-", image_ok),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::SplitVerificationFailed((*name).to_string()));
    }
    let label = if f_j.is_zero() {
        SplitLabel::Hom
    } else if f_i.is_zero() {
        SplitLabel::AntiHom
    } else {
        SplitLabel::DirectSum
    };
    Ok(Decomposition {
        f_i,
        f_j,
        e_plus,
        e_minus,
        delta,
        label,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealgebra::LieAlgebra;
    use crate::Rational;

    type A = ConformalAlgebra<Rational>;
    type M = ModElement<Rational>;
    type Mm = ModuleMap<Rational>;

    fn cur() -> A {
        A::cur(&LieAlgebra::sl2())
    }

    fn diagonal_pair(sign: i64) -> Mm {
        let cols = (0..3)
            .map(|j| {
                let mut c = M::basis(6, j);
                c.add_assign(&M::basis(6, 3 + j).scale(&Rational::from_i64(sign)));
                c
            })
            .collect();
        Mm::new(6, cols).unwrap()
    }

    #[test]
    fn kinds_of_example_maps() {
        let c = cur();
        let cc = A::direct_sum(&c, &c);
        let id = Mm::identity(3);
        let neg = id.neg();
        let f = diagonal_pair(-1);
        let table = |src: &A, dst: &A, m: &Mm| MapKind::ALL.map(|k| is_kind(src, dst, m, k));
        assert_eq!(table(&c, &c, &id), [true, false, true]);
        assert_eq!(table(&c, &c, &neg), [false, true, true]);
        assert_eq!(table(&c, &cc, &f), [false, false, true]);
        assert!(modmap_kind(&c, &cc, &id, MapKind::Hom).is_err());
    }

    #[test]
    fn envelopes() {
        let c = cur();
        let cc = A::direct_sum(&c, &c);
        assert_eq!(enveloping(&c, &Mm::identity(3)), SubmoduleBasis::full(3));
        assert_eq!(enveloping(&cc, &diagonal_pair(-1)), SubmoduleBasis::full(6));
        assert!(enveloping(&c, &Mm::zero(3, 3)).is_zero());
    }

    #[test]
    fn centers_of_envelopes() {
        let c = cur();
        assert!(center_check(&c, &SubmoduleBasis::full(3), 2));
        let ab = A::cur(&LieAlgebra::abelian(2));
        assert!(!center_check(&ab, &SubmoduleBasis::full(2), 1));
        assert!(center_check(&c, &SubmoduleBasis::zero(3), 2));
    }

    #[test]
    fn deltas_and_splits() {
        let c = cur();
        let cc = A::direct_sum(&c, &c);
        let id = Mm::identity(3);
        assert_eq!(delta_f(&c, &c, &id).unwrap(), id);
        assert_eq!(delta_f(&c, &c, &id.neg()).unwrap(), id);
        assert_eq!(
            delta_f(&c, &cc, &diagonal_pair(-1)).unwrap(),
            diagonal_pair(1)
        );

        let s = split_decompose(&c, &c, &id).unwrap();
        assert_eq!(s.label, SplitLabel::Hom);
        assert_eq!(s.f_i, id);
        assert!(s.f_j.is_zero());

        let s = split_decompose(&c, &c, &id.neg()).unwrap();
        assert_eq!(s.label, SplitLabel::AntiHom);
        assert!(s.f_i.is_zero());
        assert_eq!(s.f_j, id.neg());

        let s = split_decompose(&c, &cc, &diagonal_pair(-1)).unwrap();
        assert_eq!(s.label, SplitLabel::DirectSum);
        for j in 0..3 {
            assert_eq!(s.f_i.column(j), &M::basis(6, j));
            assert_eq!(s.f_j.column(j), &M::basis(6, 3 + j).neg());
        }
        assert!(s.checks.iter().all(|(_, ok)| *ok));
        assert_eq!(s.checks.len(), 6);
    }

    #[test]
    fn precondition_failures() {
        let c = cur();
        let ab = A::cur(&LieAlgebra::abelian(1));
        assert!(matches!(
            delta_f(&ab, &ab, &Mm::identity(1)),
            Err(Error::CenterNonzero { .. })
        ));
        let scaled = Mm::identity(3).scale(&Rational::from_i64(2));
        assert_eq!(delta_f(&c, &c, &scaled), Err(Error::NotTripleHom));
    }

    fn automorphism(t: i64, shift: usize, sign: i64) -> Vec<M> {
        // exp(t ad e) on (e, f, h) placed in the summand starting at `shift`
        let t = Rational::from_i64(t);
        let at = |coords: [Rational; 3]| {
            let mut v = M::zero(6);
            for (k, c) in coords.iter().enumerate() {
                v.add_assign(&M::basis(6, shift + k).scale(&(c * Rational::from_i64(sign))));
            }
            v
        };
        let (zero, one) = (Rational::from_i64(0), Rational::from_i64(1));
        vec![
            at([one.clone(), zero.clone(), zero.clone()]),
            at([-(&t * &t), one.clone(), t.clone()]),
            at([Rational::from_i64(-2) * &t, zero, one]),
        ]
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn hom_plus_antihom_splits(s in -4i64..5, t in -4i64..5) {
            let c = cur();
            let cc = A::direct_sum(&c, &c);
            let p = automorphism(s, 0, 1);
            let q = automorphism(t, 3, -1);
            let cols: Vec<M> = p.iter().zip(&q).map(|(u, v)| u.elem_add(v).unwrap()).collect();
            let f = Mm::new(6, cols).unwrap();
            proptest::prop_assert!(is_kind(&c, &cc, &f, MapKind::TripleHom));
            let d = split_decompose(&c, &cc, &f).unwrap();
            proptest::prop_assert_eq!(d.label, SplitLabel::DirectSum);
            proptest::prop_assert_eq!(d.f_i.columns(), &p[..]);
            proptest::prop_assert_eq!(d.f_j.columns(), &q[..]);
        }
    }
}
