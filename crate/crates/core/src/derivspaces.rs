//! Derivation-like equations on conformal maps and their bounded solution
//! spaces.
//!
//! Every space is computed from the ansatz `φ(e_j) = Σ u D^p x^q e_k` with
//! `p ≤ deg_d`, `q ≤ deg_x`; the defining identity is expanded on generator
//! tuples and its coefficients become a homogeneous linear system in the
//! unknowns `u`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::confalgebra::{Check, ConformalAlgebra, Witness};
use crate::confmap::{ad, ConformalMap};
use crate::confmodule::ModElement;
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Poly, Var};
use crate::modlinalg::qlinear::to_dense;
use crate::modlinalg::{KeyedSystem, RowEchelon, SparseVec};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquationKind {
    /// `φ([a_μ b]) = [φ(a)_{x+μ} b] + [a_μ φ(b)]`
    CDer,
    /// `φ([[a_λ b]_{λ+μ} c])` splits over the three slots.
    CTDer,
    /// As `CTDer` with the related triple derivation `τ` in the last two slots.
    GCTDer,
    /// `φ([[a_λ b]_{λ+μ} c]) = [[φ(a)_{λ+x} b]_{λ+μ+x} c]`
    TC,
    /// `[[φ(a)_{λ+x} b]_{λ+μ+x} c] = [[a_λ b]_{λ+μ} φ(c)]`
    TQC,
    /// `φ([[a_λ b]_{λ+μ} c]) = [[φ(a)_{λ+x} b]_{λ+μ+x} c] = 0`
    ZTDer,
    /// Membership in the span of inner derivations.
    CInnMember,
}

impl EquationKind {
    pub const SOLVABLE: [EquationKind; 6] = [
        EquationKind::CDer,
        EquationKind::CTDer,
        EquationKind::GCTDer,
        EquationKind::TC,
        EquationKind::TQC,
        EquationKind::ZTDer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EquationKind::CDer => "CDER",
            EquationKind::CTDer => "CTDER",
            EquationKind::GCTDer => "GCTDER",
            EquationKind::TC => "TC",
            EquationKind::TQC => "TQC",
            EquationKind::ZTDer => "ZTDER",
            EquationKind::CInnMember => "CINN_MEMBER",
        }
    }

    /// Case-insensitive; accepts the names printed by [`name`](Self::name).
    pub fn parse(s: &str) -> Option<Self> {
        let up = s.to_ascii_uppercase();
        [EquationKind::CInnMember]
            .into_iter()
            .chain(Self::SOLVABLE)
            .find(|k| k.name() == up)
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Generator-level brackets shared by every residual computation.
struct Expander<'a, F> {
    alg: &'a ConformalAlgebra<F>,
    lam: Poly<F>,
    mu: Poly<F>,
    x: Poly<F>,
    lam_x: Poly<F>,
    lam_mu: Poly<F>,
    lam_mu_x: Poly<F>,
    x_mu: Poly<F>,
    gens: Vec<ModElement<F>>,
    /// `[e_a λ e_b]`
    pair_lam: Vec<Vec<ModElement<F>>>,
    /// `[e_a μ e_b]`
    pair_mu: Vec<Vec<ModElement<F>>>,
    /// `[[e_a λ e_b]_{λ+μ} e_c]`
    triple: Vec<Vec<Vec<ModElement<F>>>>,
}

impl<'a, F: Scalar> Expander<'a, F> {
    fn new(alg: &'a ConformalAlgebra<F>) -> Self {
        let r = alg.rank();
        let lam = Poly::var(Var::Lam);
        let mu = Poly::var(Var::Mu);
        let x = Poly::var(Var::X);
        let lam_mu = &lam + &mu;
        let gens: Vec<_> = (0..r).map(|i| alg.generator(i)).collect();
        let pair_lam: Vec<Vec<_>> = (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| alg.bracket_at(&gens[a], &gens[b], &lam))
                    .collect()
            })
            .collect();
        let pair_mu = (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| alg.bracket_at(&gens[a], &gens[b], &mu))
                    .collect()
            })
            .collect();
        let triple = (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| {
                        (0..r)
                            .map(|c| alg.bracket_at(&pair_lam[a][b], &gens[c], &lam_mu))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Expander {
            alg,
            lam_x: &lam + &x,
            lam_mu_x: &lam_mu + &x,
            x_mu: &x + &mu,
            lam,
            mu,
            x,
            lam_mu,
            gens,
            pair_lam,
            pair_mu,
            triple,
        }
    }

    fn rank(&self) -> usize {
        self.alg.rank()
    }

    /// `[φ([a_μ b]), [φ(a)_{x+μ} b], [a_μ φ(b)]]`
    fn pair_terms(&self, phi: &ConformalMap<F>, a: usize, b: usize) -> [ModElement<F>; 3] {
        let alg = self.alg;
        [
            phi.apply_at(&self.pair_mu[a][b], &self.x),
            alg.bracket_at(phi.column(a), &self.gens[b], &self.x_mu),
            alg.bracket_at(&self.gens[a], phi.column(b), &self.mu),
        ]
    }

    /// `[T0, T1, T2, T3]`: the left side of the triple identity and the
    /// three slot terms.
    fn triple_terms(
        &self,
        phi: &ConformalMap<F>,
        a: usize,
        b: usize,
        c: usize,
    ) -> [ModElement<F>; 4] {
        let alg = self.alg;
        let g = &self.gens;
        [
            phi.apply_at(&self.triple[a][b][c], &self.x),
            alg.bracket_at(
                &alg.bracket_at(phi.column(a), &g[b], &self.lam_x),
                &g[c],
                &self.lam_mu_x,
            ),
            alg.bracket_at(
                &alg.bracket_at(&g[a], phi.column(b), &self.lam),
                &g[c],
                &self.lam_mu_x,
            ),
            alg.bracket_at(&self.pair_lam[a][b], phi.column(c), &self.lam_mu),
        ]
    }

    fn tuples(&self, kind: EquationKind) -> Vec<Vec<usize>> {
        let r = self.rank();
        match kind {
            EquationKind::CDer => (0..r)
                .flat_map(|a| (0..r).map(move |b| vec![a, b]))
                .collect(),
            _ => (0..r)
                .flat_map(|a| (0..r).flat_map(move |b| (0..r).map(move |c| vec![a, b, c])))
                .collect(),
        }
    }

    /// The residuals of the defining identity on one tuple; all must vanish.
    fn residuals(
        &self,
        kind: EquationKind,
        phi: &ConformalMap<F>,
        tau: Option<&ConformalMap<F>>,
        t: &[usize],
    ) -> Vec<ModElement<F>> {
        let sub = |x: &ModElement<F>, ys: &[&ModElement<F>]| {
            let mut r = x.clone();
            for y in ys {
                r.sub_assign(y);
            }
            r
        };
        match kind {
            EquationKind::CDer => {
                let [c0, c1, c2] = self.pair_terms(phi, t[0], t[1]);
                vec![sub(&c0, &[&c1, &c2])]
            }
            EquationKind::CTDer => {
                let [t0, t1, t2, t3] = self.triple_terms(phi, t[0], t[1], t[2]);
                vec![sub(&t0, &[&t1, &t2, &t3])]
            }
            EquationKind::TC => {
                let [t0, t1, _, _] = self.triple_terms(phi, t[0], t[1], t[2]);
                vec![sub(&t0, &[&t1])]
            }
            EquationKind::TQC => {
                let [_, t1, _, t3] = self.triple_terms(phi, t[0], t[1], t[2]);
                vec![sub(&t1, &[&t3])]
            }
            EquationKind::ZTDer => {
                let [t0, t1, _, _] = self.triple_terms(phi, t[0], t[1], t[2]);
                vec![t0, t1]
            }
            EquationKind::GCTDer => {
                let tau = tau.expect("GCTDer needs tau");
                let [p0, p1, _, _] = self.triple_terms(phi, t[0], t[1], t[2]);
                let [s0, s1, s2, s3] = self.triple_terms(tau, t[0], t[1], t[2]);
                vec![sub(&p0, &[&p1, &s2, &s3]), sub(&s0, &[&s1, &s2, &s3])]
            }
            EquationKind::CInnMember => unreachable!("membership is not an identity"),
        }
    }
}

fn check_map_rank<F: Scalar>(alg: &ConformalAlgebra<F>, m: &ConformalMap<F>) -> Result<()> {
    if m.rank() != alg.rank() {
        return Err(Error::RankMismatch {
            expected: alg.rank(),
            found: m.rank(),
        });
    }
    if m.twist() != Var::X {
        return Err(Error::VariableClash(m.twist()));
    }
    Ok(())
}

/// Whether `φ` (with `τ` for GCTDer) satisfies the identity of `kind` on all
/// generator tuples. The witness is the first failing tuple.
pub fn satisfies<F: Scalar>(
    alg: &ConformalAlgebra<F>,
    phi: &ConformalMap<F>,
    kind: EquationKind,
    tau: Option<&ConformalMap<F>>,
) -> Result<Check<F>> {
    check_map_rank(alg, phi)?;
    if kind == EquationKind::GCTDer {
        check_map_rank(alg, tau.ok_or(Error::MissingTau)?)?;
    }
    if kind == EquationKind::CInnMember {
        let deg_x = phi.degree_in(Var::X).max(0) as usize;
        let inner = inner_space(alg, deg_x);
        return Ok(if space_contains(&inner, phi) {
            Ok(())
        } else {
            Err(Witness {
                gens: vec![],
                residual: ModElement::zero(alg.rank()),
            })
        });
    }
    let ex = Expander::new(alg);
    for t in ex.tuples(kind) {
        for residual in ex.residuals(kind, phi, tau, &t) {
            if !residual.is_zero() {
                return Ok(Err(Witness { gens: t, residual }));
            }
        }
    }
    Ok(Ok(()))
}

/// Shorthand for `satisfies(..).is_ok_and(|c| c.is_ok())`.
pub fn holds<F: Scalar>(
    alg: &ConformalAlgebra<F>,
    phi: &ConformalMap<F>,
    kind: EquationKind,
    tau: Option<&ConformalMap<F>>,
) -> bool {
    matches!(satisfies(alg, phi, kind, tau), Ok(Ok(())))
}

/// Exact basis of a bounded solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace<F> {
    pub kind: EquationKind,
    pub rank: usize,
    pub deg_d: usize,
    pub deg_x: usize,
    pub basis: Vec<ConformalMap<F>>,
    /// For GCTDer, the related triple derivation of each basis element.
    pub tau: Vec<ConformalMap<F>>,
}

impl<F: Scalar> SolutionSpace<F> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `Σ c_k basis_k` together with the matching `τ` combination.
    pub fn combination(&self, coeffs: &[F]) -> (ConformalMap<F>, Option<ConformalMap<F>>) {
        let phi = lin_comb(self.rank, &self.basis, coeffs);
        let tau = (!self.tau.is_empty()).then(|| lin_comb(self.rank, &self.tau, coeffs));
        (phi, tau)
    }

    /// Intersection of the span with the box `deg D ≤ deg_d`, `deg x ≤ deg_x`.
    pub fn truncate(&self, deg_d: usize, deg_x: usize) -> SolutionSpace<F> {
        let outside =
            |(_, _, m): &Coord| m.exp(Var::D) as usize > deg_d || m.exp(Var::X) as usize > deg_x;
        let mut sys: KeyedSystem<Coord, F> = KeyedSystem::new(self.basis.len());
        for (k, m) in self.basis.iter().enumerate() {
            for (key, c) in coordinates(m) {
                if outside(&key) {
                    sys.add(key, k, c);
                }
            }
        }
        let mut basis: Vec<ConformalMap<F>> = sys
            .nullspace()
            .iter()
            .map(|v| lin_comb(self.rank, &self.basis, v))
            .collect();
        basis = canonical_basis(self.rank, &basis);
        SolutionSpace {
            kind: self.kind,
            rank: self.rank,
            deg_d,
            deg_x,
            basis,
            tau: Vec::new(),
        }
    }
}

/// `Σ c_k maps_k`.
pub fn lin_comb<F: Scalar>(rank: usize, maps: &[ConformalMap<F>], coeffs: &[F]) -> ConformalMap<F> {
    let mut acc = ConformalMap::zero(rank);
    for (m, c) in maps.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c)).expect("equal ranks");
        }
    }
    acc
}

/// Coordinate of a map entry: (row, column, monomial).
pub type Coord = (usize, usize, Monomial);

pub fn coordinates<F: Scalar>(m: &ConformalMap<F>) -> BTreeMap<Coord, F> {
    let mut out = BTreeMap::new();
    for (j, col) in m.columns().iter().enumerate() {
        for (i, p) in col.comps().iter().enumerate() {
            for (mono, c) in p.terms() {
                out.insert((i, j, *mono), c.clone());
            }
        }
    }
    out
}

/// Common coordinate index for a family of maps.
struct SpanIndex {
    index: BTreeMap<Coord, usize>,
}

impl SpanIndex {
    fn new<'m, F: Scalar + 'm>(maps: impl IntoIterator<Item = &'m ConformalMap<F>>) -> Self {
        let mut index = BTreeMap::new();
        for m in maps {
            for key in coordinates(m).into_keys() {
                let n = index.len();
                index.entry(key).or_insert(n);
            }
        }
        SpanIndex { index }
    }

    fn vector<F: Scalar>(&self, m: &ConformalMap<F>) -> SparseVec<F> {
        coordinates(m)
            .into_iter()
            .map(|(k, c)| (self.index[&k], c))
            .collect()
    }

    fn echelon<'m, F: Scalar + 'm>(
        &self,
        maps: impl IntoIterator<Item = &'m ConformalMap<F>>,
    ) -> RowEchelon<F> {
        let mut ech = RowEchelon::new(self.index.len());
        for m in maps {
            ech.insert(self.vector(m));
        }
        ech
    }
}

/// Dimension of the span of `maps`.
pub fn span_rank<F: Scalar>(maps: &[ConformalMap<F>]) -> usize {
    SpanIndex::new(maps).echelon(maps).rank()
}

/// Whether `phi` lies in the span of `maps`.
pub fn span_contains<F: Scalar>(maps: &[ConformalMap<F>], phi: &ConformalMap<F>) -> bool {
    let idx = SpanIndex::new(maps.iter().chain(std::iter::once(phi)));
    idx.echelon(maps).contains(idx.vector(phi))
}

/// Reduced row echelon basis of the span, with pivots ordered by
/// coordinate (row, column, monomial).
pub fn canonical_basis<F: Scalar>(rank: usize, maps: &[ConformalMap<F>]) -> Vec<ConformalMap<F>> {
    let keys: BTreeSet<Coord> = maps
        .iter()
        .flat_map(|m| coordinates(m).into_keys())
        .collect();
    let ordered: Vec<Coord> = keys.iter().copied().collect();
    let idx = SpanIndex {
        index: keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect(),
    };
    idx.echelon(maps)
        .reduced_rows()
        .into_iter()
        .map(|row| {
            let mut cols = vec![ModElement::zero(rank); rank];
            for (k, c) in row {
                let (i, j, mono) = ordered[k];
                cols[j].add_assign(&ModElement::monomial(rank, i, Poly::term(c, mono)));
            }
            ConformalMap::new(cols).expect("coordinates of maps in D, x")
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember,
    /// The map exceeds the degree bounds of the space.
    OutOfBounds,
}

pub fn membership<F: Scalar>(s: &SolutionSpace<F>, phi: &ConformalMap<F>) -> Membership {
    if phi.rank() != s.rank {
        return Membership::NotMember;
    }
    if phi.degree_in(Var::D) > s.deg_d as i64 || phi.degree_in(Var::X) > s.deg_x as i64 {
        return Membership::OutOfBounds;
    }
    if span_contains(&s.basis, phi) {
        Membership::Member
    } else {
        Membership::NotMember
    }
}

pub fn space_contains<F: Scalar>(s: &SolutionSpace<F>, phi: &ConformalMap<F>) -> bool {
    membership(s, phi) == Membership::Member
}

/// Equality of spans.
pub fn space_equal<F: Scalar>(a: &SolutionSpace<F>, b: &SolutionSpace<F>) -> bool {
    if a.rank != b.rank {
        return false;
    }
    let ra = span_rank(&a.basis);
    let rb = span_rank(&b.basis);
    let union: Vec<_> = a.basis.iter().chain(&b.basis).cloned().collect();
    ra == rb && span_rank(&union) == ra
}

/// Unknown `u` for entry `(row, col)` and monomial `D^p x^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Unknown {
    row: usize,
    col: usize,
    p: usize,
    q: usize,
}

fn ansatz(rank: usize, deg_d: usize, deg_x: usize) -> Vec<Unknown> {
    let mut out = Vec::with_capacity(rank * rank * (deg_d + 1) * (deg_x + 1));
    for row in 0..rank {
        for col in 0..rank {
            for p in 0..=deg_d {
                for q in 0..=deg_x {
                    out.push(Unknown { row, col, p, q });
                }
            }
        }
    }
    out
}

fn unit_map<F: Scalar>(rank: usize, u: Unknown) -> ConformalMap<F> {
    let mono = Monomial::from_pairs(&[(Var::D, u.p as u16), (Var::X, u.q as u16)]);
    ConformalMap::unit(rank, u.row, u.col, Poly::term(F::one(), mono))
}

fn assemble<F: Scalar>(rank: usize, unknowns: &[Unknown], v: &[F]) -> ConformalMap<F> {
    let mut cols = vec![ModElement::zero(rank); rank];
    for (u, c) in unknowns.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let mono = Monomial::from_pairs(&[(Var::D, u.p as u16), (Var::X, u.q as u16)]);
        cols[u.col].add_assign(&ModElement::monomial(
            rank,
            u.row,
            Poly::term(c.clone(), mono),
        ));
    }
    ConformalMap::new(cols).expect("ansatz entries use D and x only")
}

/// (equation index, component, monomial)
type EqKey = (usize, usize, Monomial);

fn add_residuals<F: Scalar>(
    sys: &mut KeyedSystem<EqKey, F>,
    column: usize,
    residuals: impl IntoIterator<Item = ModElement<F>>,
) {
    for (eq, r) in residuals.into_iter().enumerate() {
        for (k, p) in r.comps().iter().enumerate() {
            for (m, c) in p.terms() {
                sys.add((eq, k, *m), column, c.clone());
            }
        }
    }
}

/// Solution space of `kind` within the degree box. GCTDer is solved jointly
/// in `(φ, τ)`; the returned basis consists of the `φ` parts, each paired
/// with a related `τ`.
pub fn solve_space<F: Scalar>(
    alg: &ConformalAlgebra<F>,
    kind: EquationKind,
    deg_d: usize,
    deg_x: usize,
) -> SolutionSpace<F> {
    let r = alg.rank();
    if kind == EquationKind::CInnMember {
        let mut s = inner_space(alg, deg_x).truncate(deg_d, deg_x);
        s.kind = kind;
        return s;
    }
    let unknowns = ansatz(r, deg_d, deg_x);
    let n = unknowns.len();
    let ex = Expander::new(alg);
    let tuples = ex.tuples(kind);
    let zero = ConformalMap::zero(r);
    let residual_rows = |phi: &ConformalMap<F>, tau: Option<&ConformalMap<F>>| {
        tuples
            .iter()
            .flat_map(|t| ex.residuals(kind, phi, tau, t))
            .collect::<Vec<_>>()
    };
    if kind != EquationKind::GCTDer {
        let mut sys = KeyedSystem::new(n);
        for (col, u) in unknowns.iter().enumerate() {
            add_residuals(&mut sys, col, residual_rows(&unit_map(r, *u), None));
        }
        let mut basis: Vec<ConformalMap<F>> = sys
            .nullspace()
            .iter()
            .map(|v| assemble(r, &unknowns, v))
            .collect();
        basis = canonical_basis(r, &basis);
        for b in &basis {
            assert!(
                holds(alg, b, kind, None),
                "solver produced a non-solution for {kind}"
            );
        }
        return SolutionSpace {
            kind,
            rank: r,
            deg_d,
            deg_x,
            basis,
            tau: Vec::new(),
        };
    }
    let mut sys = KeyedSystem::new(2 * n);
    for (col, u) in unknowns.iter().enumerate() {
        let unit = unit_map(r, *u);
        add_residuals(&mut sys, col, residual_rows(&unit, Some(&zero)));
        add_residuals(&mut sys, n + col, residual_rows(&zero, Some(&unit)));
    }
    let mut ech = RowEchelon::new(2 * n);
    for v in sys.nullspace() {
        ech.insert_dense(&v);
    }
    let mut basis = Vec::new();
    let mut tau = Vec::new();
    for row in ech.reduced_rows() {
        let Some((&lead, _)) = row.iter().next() else {
            continue;
        };
        if lead >= n {
            continue;
        }
        let dense = to_dense(&row, 2 * n);
        let phi = assemble(r, &unknowns, &dense[..n]);
        let t = assemble(r, &unknowns, &dense[n..]);
        assert!(
            holds(alg, &phi, kind, Some(&t)),
            "joint solver produced a non-solution"
        );
        basis.push(phi);
        tau.push(t);
    }
    SolutionSpace {
        kind,
        rank: r,
        deg_d,
        deg_x,
        basis,
        tau,
    }
}

/// `{x^m · ad(e_i) : m ≤ deg_x}`, reduced to an independent family. The
/// recorded bounds are the largest degrees that actually occur.
pub fn inner_space<F: Scalar>(alg: &ConformalAlgebra<F>, deg_x: usize) -> SolutionSpace<F> {
    let r = alg.rank();
    let x = Poly::var(Var::X);
    let mut maps = Vec::new();
    for m in 0..=deg_x {
        let xm = x.pow(m as u32);
        for i in 0..r {
            let a = ad(alg, &alg.generator(i)).expect("generator");
            maps.push(a.scal_mul(&xm));
        }
    }
    let idx = SpanIndex::new(&maps);
    let mut ech = RowEchelon::new(idx.index.len());
    let basis: Vec<ConformalMap<F>> = maps
        .into_iter()
        .filter(|m| ech.insert(idx.vector(m)))
        .collect();
    let deg_d = basis
        .iter()
        .map(|b| b.degree_in(Var::D))
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let dx = basis
        .iter()
        .map(|b| b.degree_in(Var::X))
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    SolutionSpace {
        kind: EquationKind::CInnMember,
        rank: r,
        deg_d,
        deg_x: dx,
        basis,
        tau: Vec::new(),
    }
}

/// `dim span(S ∪ inner) - dim span(inner)` with `inner = inner_space(A, S.deg_x)`.
pub fn inner_quotient_dimension<F: Scalar>(
    alg: &ConformalAlgebra<F>,
    s: &SolutionSpace<F>,
) -> usize {
    let inner = inner_space(alg, s.deg_x);
    let union: Vec<_> = s.basis.iter().chain(&inner.basis).cloned().collect();
    span_rank(&union) - span_rank(&inner.basis)
}

/// `∂`-degree bound used when certifying that the center vanishes.
pub fn center_bound<F: Scalar>(alg: &ConformalAlgebra<F>) -> usize {
    alg.max_table_degree() + 2
}

/// The conformal derivation `δ` attached to a triple derivation `φ`:
/// `[δ(e_i)_{λ+x} e_j] = φ([e_i λ e_j]) - [e_i λ φ(e_j)]` for all `i, j`.
pub fn delta_phi<F: Scalar>(
    alg: &ConformalAlgebra<F>,
    phi: &ConformalMap<F>,
) -> Result<ConformalMap<F>> {
    check_map_rank(alg, phi)?;
    let bound = center_bound(alg);
    if !alg.center(bound).is_empty() {
        return Err(Error::CenterNonzero { bound });
    }
    if !holds(alg, phi, EquationKind::CTDer, None) {
        return Err(Error::NoSolution(
            "map is not a conformal triple derivation".into(),
        ));
    }
    let t = alg.max_table_degree();
    let dd = phi.degree_in(Var::D).max(0) as usize + t;
    let dx = phi.degree_in(Var::X).max(0) as usize + t;
    let delta = solve_delta(alg, phi, dd, dx).or_else(|e| match e {
        Error::NoSolution(_) => solve_delta(alg, phi, 2 * dd + 1, 2 * dx + 1),
        e => Err(e),
    })?;
    if !holds(alg, &delta, EquationKind::CDer, None) {
        return Err(Error::NoSolution(
            "lifted map is not a conformal derivation".into(),
        ));
    }
    Ok(delta)
}

fn solve_delta<F: Scalar>(
    alg: &ConformalAlgebra<F>,
    phi: &ConformalMap<F>,
    deg_d: usize,
    deg_x: usize,
) -> Result<ConformalMap<F>> {
    let r = alg.rank();
    let lam = Poly::var(Var::Lam);
    let x = Poly::var(Var::X);
    let lam_x = &lam + &x;
    let unknowns = ansatz(r, deg_d, deg_x);
    let gens: Vec<_> = (0..r).map(|i| alg.generator(i)).collect();
    let mut sys: KeyedSystem<(usize, usize, usize, Monomial), F> = KeyedSystem::new(unknowns.len());
    for (col, u) in unknowns.iter().enumerate() {
        let mono = Monomial::from_pairs(&[(Var::D, u.p as u16), (Var::X, u.q as u16)]);
        let image = ModElement::monomial(r, u.row, Poly::term(F::one(), mono));
        for j in 0..r {
            let br = alg.bracket_at(&image, &gens[j], &lam_x);
            for (k, p) in br.comps().iter().enumerate() {
                for (m, c) in p.terms() {
                    sys.add((u.col, j, k, *m), col, c.clone());
                }
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            let mut rhs = phi.apply_at(&alg.bracket_at(&gens[i], &gens[j], &lam), &x);
            rhs.sub_assign(&alg.bracket_at(&gens[i], phi.column(j), &lam));
            for (k, p) in rhs.comps().iter().enumerate() {
                for (m, c) in p.terms() {
                    sys.add_rhs((i, j, k, *m), c.clone());
                }
            }
        }
    }
    let (particular, kernel) = sys.solve().ok_or_else(|| {
        Error::NoSolution(format!("no lift with deg_d <= {deg_d}, deg_x <= {deg_x}"))
    })?;
    if !kernel.is_empty() {
        return Err(Error::CenterNonzero {
            bound: center_bound(alg),
        });
    }
    Ok(assemble(r, &unknowns, &particular))
}

/// `φ` in the span of `space` with `[φ_x ad e_i] = 0` for every generator.
pub fn inner_centralizer<F: Scalar>(
    alg: &ConformalAlgebra<F>,
    space: &SolutionSpace<F>,
) -> Result<Vec<ConformalMap<F>>> {
    let r = alg.rank();
    let ads: Vec<_> = (0..r)
        .map(|i| ad(alg, &alg.generator(i)))
        .collect::<Result<_>>()?;
    let mut sys: KeyedSystem<(usize, usize, usize, Monomial), F> =
        KeyedSystem::new(space.basis.len());
    for (col, phi) in space.basis.iter().enumerate() {
        for (i, a) in ads.iter().enumerate() {
            let g = crate::confmap::gc_bracket(phi, a)?;
            for (j, c) in g.columns().iter().enumerate() {
                for (k, p) in c.comps().iter().enumerate() {
                    for (m, v) in p.terms() {
                        sys.add((i, j, k, *m), col, v.clone());
                    }
                }
            }
        }
    }
    Ok(sys
        .nullspace()
        .iter()
        .map(|v| lin_comb(r, &space.basis, v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confmap::dl_map;
    use crate::liealgebra::LieAlgebra;
    use crate::Rational;

    type P = Poly<Rational>;
    type A = ConformalAlgebra<Rational>;
    type Map = ConformalMap<Rational>;

    fn x() -> P {
        P::var(Var::X)
    }
    fn d() -> P {
        P::var(Var::D)
    }

    fn sl2() -> A {
        A::cur(&LieAlgebra::sl2())
    }

    #[test]
    fn basic_predicates() {
        let vir = A::vir();
        let adl = ad(&vir, &vir.generator(0)).unwrap();
        assert!(holds(&vir, &adl, EquationKind::CDer, None));
        assert!(holds(&vir, &adl, EquationKind::CTDer, None));
        let cur = sl2();
        let dl = dl_map(&cur).unwrap();
        assert!(holds(&cur, &dl, EquationKind::CDer, None));
        assert!(holds(
            &cur,
            &Map::scalar(3, P::one() + x()),
            EquationKind::TC,
            None
        ));
        for phi in [Map::identity(1), adl.clone(), Map::scalar(1, d())] {
            let w = satisfies(&vir, &phi, EquationKind::TQC, None)
                .unwrap()
                .unwrap_err();
            assert_eq!(w.gens, vec![0, 0, 0]);
            assert!(!w.residual.is_zero());
        }
        assert_eq!(
            satisfies(&vir, &adl, EquationKind::GCTDer, None),
            Err(Error::MissingTau)
        );
        assert!(satisfies(&vir, &Map::identity(3), EquationKind::CDer, None).is_err());
    }

    #[test]
    fn vir_spaces() {
        let vir = A::vir();
        for k in [EquationKind::TC, EquationKind::TQC, EquationKind::ZTDer] {
            assert!(solve_space(&vir, k, 3, 3).is_empty(), "{k}");
        }
        let cder = solve_space(&vir, EquationKind::CDer, 2, 2);
        // g(x)(D + 2x) with deg g ≤ 1 fits the box
        assert_eq!(cder.dimension(), 2);
        assert_eq!(solve_space(&vir, EquationKind::CDer, 3, 3).dimension(), 3);
        let ctder = solve_space(&vir, EquationKind::CTDer, 2, 2);
        assert!(space_equal(&cder, &ctder));
        assert!(!space_equal(
            &cder,
            &solve_space(&vir, EquationKind::TC, 2, 2)
        ));
        assert!(space_equal(&cder, &cder));
        assert_eq!(inner_quotient_dimension(&vir, &cder), 0);
        let inner = inner_space(&vir, 2);
        assert_eq!(inner.dimension(), 3);
        assert!(space_equal(&cder, &inner.truncate(2, 2)));
    }

    #[test]
    fn inner_spaces() {
        let vir = A::vir();
        let i0 = inner_space(&vir, 0);
        assert_eq!(
            i0.basis,
            vec![Map::scalar(1, d() + x().scale(&Rational::from_i64(2)))]
        );
        let adl = ad(&vir, &vir.generator(0)).unwrap();
        assert!(space_contains(&inner_space(&vir, 1), &adl.scal_mul(&x())));
        let cur = sl2();
        let i1 = inner_space(&cur, 1);
        assert_eq!(i1.dimension(), 6);
        assert!(!space_contains(&i1, &dl_map(&cur).unwrap()));
        assert!(space_contains(&i1, &Map::zero(3)));
        assert_eq!(
            membership(&i1, &Map::scalar(3, x().pow(5))),
            Membership::OutOfBounds
        );
    }

    #[test]
    fn current_sl2_spaces() {
        let cur = sl2();
        let tc = solve_space(&cur, EquationKind::TC, 0, 2);
        let expected = SolutionSpace {
            kind: EquationKind::TC,
            rank: 3,
            deg_d: 0,
            deg_x: 2,
            basis: (0..3).map(|m| Map::scalar(3, x().pow(m))).collect(),
            tau: vec![],
        };
        assert!(space_equal(&tc, &expected));
        let cder = solve_space(&cur, EquationKind::CDer, 1, 2);
        assert_eq!(cder.dimension(), 11);
        assert_eq!(inner_quotient_dimension(&cur, &cder), 2);
        let ctder = solve_space(&cur, EquationKind::CTDer, 1, 2);
        assert!(space_equal(&cder, &ctder));
        let gct = solve_space(&cur, EquationKind::GCTDer, 1, 2);
        assert_eq!(gct.dimension(), 14);
        assert_eq!(gct.tau.len(), 14);
        let sum: Vec<_> = ctder
            .basis
            .iter()
            .chain(&solve_space(&cur, EquationKind::TC, 1, 2).basis)
            .cloned()
            .collect();
        let sum_space = SolutionSpace {
            basis: sum,
            ..ctder.clone()
        };
        assert!(space_equal(&gct, &sum_space));
    }

    #[test]
    fn delta_of_known_maps() {
        let vir = A::vir();
        let adl = ad(&vir, &vir.generator(0)).unwrap();
        assert_eq!(delta_phi(&vir, &adl).unwrap(), adl);
        let cur = sl2();
        let dl = dl_map(&cur).unwrap();
        assert_eq!(delta_phi(&cur, &dl).unwrap(), dl);
        for phi in solve_space(&cur, EquationKind::CTDer, 1, 1).basis {
            assert_eq!(delta_phi(&cur, &phi).unwrap(), phi);
        }
        let ab = A::cur(&LieAlgebra::abelian(1));
        assert!(matches!(
            delta_phi(&ab, &Map::identity(1)),
            Err(Error::CenterNonzero { .. })
        ));
        assert!(matches!(
            delta_phi(&cur, &Map::identity(3)),
            Err(Error::NoSolution(_))
        ));
    }

    #[test]
    fn centralizer_of_inner_is_trivial() {
        let vir = A::vir();
        let s = solve_space(&vir, EquationKind::CTDer, 2, 2);
        assert!(inner_centralizer(&vir, &s).unwrap().is_empty());
    }

    #[test]
    fn kind_names() {
        assert_eq!(EquationKind::parse("gctder"), Some(EquationKind::GCTDer));
        assert_eq!(
            EquationKind::parse("cinn_member"),
            Some(EquationKind::CInnMember)
        );
        assert_eq!(EquationKind::parse("nope"), None);
    }
}
