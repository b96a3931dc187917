//! Submodules of `F[∂]^r` in column Hermite normal form.

use std::fmt;

use crate::confmodule::ModElement;
use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Var};
use crate::scalar::Scalar;

use super::unipoly::UniPoly;

type Column<F> = Vec<UniPoly<F>>;

/// Matrix over `F[∂]`; entries may only involve [`Var::D`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Poly<F>>>,
}

impl<F: Scalar> PolyMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![vec![Poly::zero(); cols]; rows],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly<F>>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        assert!(
            rows.iter().flatten().all(|p| p.uses_only(&[Var::D])),
            "polynomial matrices live over F[D]"
        );
        PolyMatrix {
            rows: rows.len(),
            cols,
            entries: rows,
        }
    }

    /// Matrix whose columns are the given elements; `rank` fixes the row
    /// count when the list is empty.
    pub fn from_columns(rank: usize, cols: &[ModElement<F>]) -> Self {
        let mut m = Self::zeros(rank, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.rank(), rank, "column rank mismatch");
            assert!(
                col.uses_only(&[Var::D]),
                "polynomial matrices live over F[D]"
            );
            for i in 0..rank {
                m.entries[i][j] = col.comp(i).clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly<F> {
        &self.entries[r][c]
    }

    pub fn column(&self, j: usize) -> ModElement<F> {
        ModElement::new((0..self.rows).map(|i| self.entries[i][j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<ModElement<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    fn uni_columns(&self) -> Vec<Column<F>> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| UniPoly::from_poly(&self.entries[i][j]))
                    .collect()
            })
            .collect()
    }

    fn from_uni_columns(rows: usize, cols: &[Column<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for i in 0..rows {
                m.entries[i][j] = col[i].to_poly();
            }
        }
        m
    }
}

/// A submodule of `F[∂]^ambient_rank` given by generators in column
/// Hermite normal form.
///
/// Invariants: every column is nonzero; the pivot (first nonzero) rows are
/// strictly increasing; each pivot is monic; in each pivot row every other
/// column's entry has smaller degree than the pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleBasis<F> {
    ambient_rank: usize,
    gens: PolyMatrix<F>,
}

impl<F: Scalar> SubmoduleBasis<F> {
    pub fn zero(ambient_rank: usize) -> Self {
        SubmoduleBasis {
            ambient_rank,
            gens: PolyMatrix::zeros(ambient_rank, 0),
        }
    }

    /// The whole free module.
    pub fn full(ambient_rank: usize) -> Self {
        let cols: Vec<_> = (0..ambient_rank)
            .map(|i| ModElement::basis(ambient_rank, i))
            .collect();
        hnf(&PolyMatrix::from_columns(ambient_rank, &cols))
    }

    pub fn from_elements(ambient_rank: usize, elems: &[ModElement<F>]) -> Self {
        hnf(&PolyMatrix::from_columns(ambient_rank, elems))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn gens(&self) -> &PolyMatrix<F> {
        &self.gens
    }

    pub fn columns(&self) -> Vec<ModElement<F>> {
        self.gens.columns()
    }

    /// Rank of the submodule (number of HNF generators).
    pub fn rank(&self) -> usize {
        self.gens.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Row index of each generator's pivot.
    pub fn pivot_rows(&self) -> Vec<usize> {
        (0..self.gens.cols())
            .map(|j| {
                (0..self.gens.rows())
                    .find(|&i| !self.gens.get(i, j).is_zero())
                    .expect("HNF columns are nonzero")
            })
            .collect()
    }

    /// Checks the normal-form invariants.
    pub fn is_normal_form(&self) -> bool {
        let pivots = self.pivot_rows();
        if pivots.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for (j, &p) in pivots.iter().enumerate() {
            let piv = self.gens.get(p, j);
            let lc = piv.terms().next().map(|(_, c)| c.clone());
            if lc != Some(F::one()) {
                return false;
            }
            let deg = piv.degree_in(Var::D);
            for other in 0..self.gens.cols() {
                if other != j && self.gens.get(p, other).degree_in(Var::D) >= deg {
                    return false;
                }
            }
        }
        true
    }
}

impl<F: Scalar> fmt::Display for SubmoduleBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns()
            .iter()
            .map(|c| {
                let comps: Vec<String> = c.comps().iter().map(|p| p.to_string()).collect();
                format!("({})", comps.join(", "))
            })
            .collect();
        write!(f, "{{{}}}", cols.join(", "))
    }
}

fn is_zero_column<F: Scalar>(col: &Column<F>, upto: usize) -> bool {
    col[..upto].iter().all(UniPoly::is_zero)
}

fn sub_multiple<F: Scalar>(target: &mut Column<F>, q: &UniPoly<F>, src: &Column<F>) {
    for (t, s) in target.iter_mut().zip(src) {
        *t = t.sub(&q.mul(s));
    }
}

/// Column echelon over the first `active` rows; any further rows are
/// carried along (used for transformation tracking). Returns reduced pivot
/// columns with their pivot rows, and the columns that became zero on the
/// active rows.
fn column_echelon<F: Scalar>(
    mut work: Vec<Column<F>>,
    active: usize,
) -> (Vec<(usize, Column<F>)>, Vec<Column<F>>) {
    let mut pivots: Vec<(usize, Column<F>)> = Vec::new();
    for r in 0..active {
        loop {
            let nz: Vec<usize> = (0..work.len()).filter(|&c| !work[c][r].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let m = *nz
                .iter()
                .min_by_key(|&&c| (work[c][r].degree().unwrap(), c))
                .unwrap();
            if nz.len() == 1 {
                let mut col = work.remove(m);
                let inv = F::one() / col[r].leading().unwrap().clone();
                for entry in col.iter_mut() {
                    *entry = entry.scale(&inv);
                }
                pivots.push((r, col));
                break;
            }
            let pivot_col = work[m].clone();
            for &c in &nz {
                if c == m {
                    continue;
                }
                let (q, _) = work[c][r].div_rem(&pivot_col[r]);
                sub_multiple(&mut work[c], &q, &pivot_col);
            }
        }
    }
    // reduce the pivot rows of later generators inside earlier ones
    for i in 0..pivots.len() {
        let (p, col_i) = pivots[i].clone();
        for (_, col_j) in pivots[..i].iter_mut() {
            if col_j[p].is_zero() {
                continue;
            }
            let (q, _) = col_j[p].div_rem(&col_i[p]);
            sub_multiple(col_j, &q, &col_i);
        }
    }
    debug_assert!(work.iter().all(|c| is_zero_column(c, active)));
    (pivots, work)
}

/// Column Hermite normal form of the `F[∂]`-span of `m`'s columns.
pub fn hnf<F: Scalar>(m: &PolyMatrix<F>) -> SubmoduleBasis<F> {
    let (pivots, _) = column_echelon(m.uni_columns(), m.rows());
    let cols: Vec<Column<F>> = pivots.into_iter().map(|(_, c)| c).collect();
    SubmoduleBasis {
        ambient_rank: m.rows(),
        gens: PolyMatrix::from_uni_columns(m.rows(), &cols),
    }
}

fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::RankMismatch { expected, found });
    }
    Ok(())
}

/// Whether `v` lies in the `F[∂]`-span of `s`, decided by successive
/// division by the pivots.
pub fn member<F: Scalar>(v: &ModElement<F>, s: &SubmoduleBasis<F>) -> Result<bool> {
    check_rank(s.ambient_rank, v.rank())?;
    if !v.uses_only(&[Var::D]) {
        return Ok(false);
    }
    let mut rest: Column<F> = v.comps().iter().map(UniPoly::from_poly).collect();
    let gens = s.gens.uni_columns();
    let mut row = 0;
    for (g, p) in gens.iter().zip(s.pivot_rows()) {
        if rest[row..p].iter().any(|e| !e.is_zero()) {
            return Ok(false);
        }
        let (q, r) = rest[p].div_rem(&g[p]);
        if !r.is_zero() {
            return Ok(false);
        }
        sub_multiple(&mut rest, &q, g);
        row = p + 1;
    }
    Ok(rest.iter().all(UniPoly::is_zero))
}

/// Intersection of two submodules, via the syzygies of the stacked
/// generator matrix `[G1 | G2]`.
pub fn intersect<F: Scalar>(
    s1: &SubmoduleBasis<F>,
    s2: &SubmoduleBasis<F>,
) -> Result<SubmoduleBasis<F>> {
    check_rank(s1.ambient_rank, s2.ambient_rank)?;
    let r = s1.ambient_rank;
    let k1 = s1.rank();
    let k = k1 + s2.rank();
    let mut cols = Vec::with_capacity(k);
    for (idx, g) in s1
        .gens
        .uni_columns()
        .into_iter()
        .chain(s2.gens.uni_columns())
        .enumerate()
    {
        let mut col = g;
        col.extend((0..k).map(|t| {
            if t == idx {
                UniPoly::constant(F::one())
            } else {
                UniPoly::zero()
            }
        }));
        cols.push(col);
    }
    let (_, syzygies) = column_echelon(cols, r);
    let g1 = s1.gens.uni_columns();
    let mut elems = Vec::new();
    for syz in syzygies {
        let mut acc: Column<F> = vec![UniPoly::zero(); r];
        for (c, g) in g1.iter().enumerate() {
            let coeff = &syz[r + c];
            if coeff.is_zero() {
                continue;
            }
            for (a, b) in acc.iter_mut().zip(g) {
                *a = a.sub(&coeff.mul(b).scale(&-F::one()));
            }
        }
        elems.push(ModElement::new(acc.iter().map(UniPoly::to_poly).collect()));
    }
    Ok(SubmoduleBasis::from_elements(r, &elems))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    type P = Poly<Rational>;
    type E = ModElement<Rational>;

    fn d() -> P {
        P::var(Var::D)
    }

    fn col(ps: Vec<P>) -> E {
        E::new(ps)
    }

    #[test]
    fn hnf_examples() {
        let s = SubmoduleBasis::from_elements(1, &[col(vec![d()]), col(vec![P::one()])]);
        assert_eq!(s.columns(), vec![col(vec![P::one()])]);

        let p = &d().pow(2) + &d();
        let s = SubmoduleBasis::from_elements(1, &[col(vec![p.clone()])]);
        assert_eq!(s.columns(), vec![col(vec![p])]);

        let s = SubmoduleBasis::from_elements(
            2,
            &[
                col(vec![d(), P::zero()]),
                col(vec![P::zero(), P::one()]),
                col(vec![d().pow(2), P::zero()]),
            ],
        );
        assert_eq!(
            s.columns(),
            vec![col(vec![d(), P::zero()]), col(vec![P::zero(), P::one()])]
        );
        assert!(s.is_normal_form());
    }

    #[test]
    fn membership_examples() {
        let one = SubmoduleBasis::from_elements(1, &[col(vec![P::one()])]);
        assert!(member(&col(vec![d().pow(2)]), &one).unwrap());
        let ds = SubmoduleBasis::from_elements(1, &[col(vec![d()])]);
        assert!(!member(&col(vec![P::one()]), &ds).unwrap());
        assert!(member(&col(vec![&d().pow(2) + &d()]), &ds).unwrap());
        assert!(member(&col(vec![P::one(), P::zero()]), &ds).is_err());
    }

    #[test]
    fn intersection_examples() {
        let a = SubmoduleBasis::from_elements(2, &[col(vec![P::one(), P::zero()])]);
        let b = SubmoduleBasis::from_elements(2, &[col(vec![P::zero(), P::one()])]);
        assert!(intersect(&a, &b).unwrap().is_zero());

        let s = SubmoduleBasis::from_elements(
            2,
            &[
                col(vec![d(), P::one()]),
                col(vec![P::zero(), &d() + &P::one()]),
            ],
        );
        assert_eq!(intersect(&s, &s).unwrap(), s);

        let s1 = SubmoduleBasis::from_elements(
            2,
            &[col(vec![d(), P::zero()]), col(vec![P::zero(), P::one()])],
        );
        let want = SubmoduleBasis::from_elements(2, &[col(vec![d(), P::zero()])]);
        assert_eq!(intersect(&s1, &a).unwrap(), want);
    }

    #[test]
    fn skew_intersection() {
        // span{(D, 1)} ∩ span{(1, 0)} = 0, span{(D,1),(0,D)} ∩ span{(1,0)} = span{(D^2, 0)}
        let a = SubmoduleBasis::from_elements(2, &[col(vec![d(), P::one()])]);
        let b = SubmoduleBasis::from_elements(2, &[col(vec![P::one(), P::zero()])]);
        assert!(intersect(&a, &b).unwrap().is_zero());
        let c = SubmoduleBasis::from_elements(
            2,
            &[col(vec![d(), P::one()]), col(vec![P::zero(), d()])],
        );
        let want = SubmoduleBasis::from_elements(2, &[col(vec![d().pow(2), P::zero()])]);
        assert_eq!(intersect(&c, &b).unwrap(), want);
    }

    /// Brute-force oracle: is `target = Σ m_c(∂)·cols_c` for multipliers of
    /// degree at most `bound`? Solved as a linear system over the rationals.
    fn combination_exists(cols: &[E], target: &E, bound: usize) -> bool {
        use crate::modlinalg::qlinear::{solve_affine, QMatrix};
        let rank = target.rank();
        let max_deg = bound + 2 + target.degree_in(Var::D).max(0) as usize;
        let unknowns = cols.len() * (bound + 1);
        let rows = rank * (max_deg + 1);
        let mut m = QMatrix::<Rational>::zeros(rows, unknowns);
        for (c, col) in cols.iter().enumerate() {
            for k in 0..=bound {
                let shifted = col.scal_mul(&d().pow(k as u32));
                for i in 0..rank {
                    for (mono, coef) in shifted.comp(i).terms() {
                        let e = mono.exp(Var::D) as usize;
                        m.set(i * (max_deg + 1) + e, c * (bound + 1) + k, coef.clone());
                    }
                }
            }
        }
        let mut b = vec![Rational::from_i64(0); rows];
        for i in 0..rank {
            for (mono, coef) in target.comp(i).terms() {
                b[i * (max_deg + 1) + mono.exp(Var::D) as usize] = coef.clone();
            }
        }
        solve_affine(&m, &b).is_some()
    }

    fn arb_upoly() -> impl Strategy<Value = P> {
        prop::collection::vec(-2i64..3, 0..3).prop_map(|cs| {
            P::from_terms(cs.into_iter().enumerate().map(|(k, c)| {
                (
                    crate::exactpoly::Monomial::var_pow(Var::D, k as u16),
                    Rational::from_i64(c),
                )
            }))
        })
    }

    fn arb_columns() -> impl Strategy<Value = Vec<E>> {
        prop::collection::vec(prop::collection::vec(arb_upoly(), 2).prop_map(E::new), 0..4)
    }

    proptest! {
        #[test]
        fn hnf_preserves_span(cols in arb_columns()) {
            let s = SubmoduleBasis::from_elements(2, &cols);
            prop_assert!(s.is_normal_form());
            for c in &cols {
                prop_assert!(member(c, &s).unwrap());
            }
            for g in s.columns() {
                prop_assert!(combination_exists(&cols, &g, 6));
            }
            let again = hnf(s.gens());
            prop_assert_eq!(&again, &s);
        }

        #[test]
        fn intersection_is_contained_in_both(a in arb_columns(), b in arb_columns()) {
            let s1 = SubmoduleBasis::from_elements(2, &a);
            let s2 = SubmoduleBasis::from_elements(2, &b);
            let i = intersect(&s1, &s2).unwrap();
            for g in i.columns() {
                prop_assert!(member(&g, &s1).unwrap());
                prop_assert!(member(&g, &s2).unwrap());
            }
        }
    }
}
