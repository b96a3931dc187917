//! Exact linear algebra over the scalar field.
//!
//! Equations are fed one row at a time into a sparse [`RowEchelon`], which
//! keeps at most `cols` rows no matter how many equations arrive. The
//! reduced row echelon form of a row space is unique, so every basis derived
//! from it is canonical for the chosen column order.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Sparse vector: column index to nonzero entry.
pub type SparseVec<F> = BTreeMap<usize, F>;

/// Dense rectangular matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<F>>,
}

impl<F: Scalar> QMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![vec![F::zero(); cols]; rows],
        }
    }

    /// Panics unless all rows have length `cols`.
    pub fn from_rows(cols: usize, data: Vec<Vec<F>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        QMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(data: &[&[i64]]) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            data.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r]
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    fn echelon(&self) -> RowEchelon<F> {
        let mut ech = RowEchelon::new(self.cols);
        for row in &self.data {
            ech.insert_dense(row);
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }
}

/// Basis of the right nullspace `{v : m·v = 0}`; empty iff the kernel is
/// trivial.
pub fn nullspace_q<F: Scalar>(m: &QMatrix<F>) -> Vec<Vec<F>> {
    m.echelon().nullspace()
}

/// Solves `m·v = b`. Returns a particular solution together with a basis
/// of the kernel, or `None` if the system is inconsistent.
pub fn solve_affine<F: Scalar>(m: &QMatrix<F>, b: &[F]) -> Option<(Vec<F>, Vec<Vec<F>>)> {
    assert_eq!(b.len(), m.rows());
    let n = m.cols();
    let mut ech = RowEchelon::new(n + 1);
    for (row, rhs) in m.data.iter().zip(b) {
        let mut v: SparseVec<F> = row
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (i, a.clone()))
            .collect();
        if !rhs.is_zero() {
            v.insert(n, -rhs.clone());
        }
        ech.insert(v);
    }
    ech.affine_solution(n)
}

/// Incrementally built row echelon form over sparse rows.
///
/// Every stored row is normalized so that its leading entry is one.
#[derive(Clone, Debug)]
pub struct RowEchelon<F> {
    cols: usize,
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Scalar> RowEchelon<F> {
    pub fn new(cols: usize) -> Self {
        RowEchelon {
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` against the stored rows; the remainder is zero iff `v`
    /// lies in the row space.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut cursor = 0;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[&k];
            for (j, a) in row {
                let entry = v.entry(*j).or_insert_with(F::zero);
                *entry = entry.clone() - c.clone() * a.clone();
                if entry.is_zero() {
                    v.remove(j);
                }
            }
            cursor = k + 1;
        }
        v
    }

    /// Adds `v` to the row space. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        debug_assert!(v.keys().all(|&k| k < self.cols));
        let v = self.reduce(v);
        let Some((&lead, lc)) = v.iter().next() else {
            return false;
        };
        let inv = F::one() / lc.clone();
        let normalized = v.into_iter().map(|(k, a)| (k, a * inv.clone())).collect();
        self.rows.insert(lead, normalized);
        true
    }

    pub fn insert_dense(&mut self, row: &[F]) -> bool {
        self.insert(to_sparse(row))
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_dense(&self, row: &[F]) -> bool {
        self.contains(to_sparse(row))
    }

    /// Back-substitutes so that every pivot column is a unit column.
    pub fn make_reduced(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let prow = self.rows[&p].clone();
            for (_, row) in self.rows.range_mut(..p) {
                let Some(c) = row.get(&p).cloned() else {
                    continue;
                };
                for (j, a) in &prow {
                    let entry = row.entry(*j).or_insert_with(F::zero);
                    *entry = entry.clone() - c.clone() * a.clone();
                    if entry.is_zero() {
                        row.remove(j);
                    }
                }
            }
        }
    }

    /// Rows of the reduced row echelon form, ordered by pivot column.
    pub fn reduced_rows(&self) -> Vec<SparseVec<F>> {
        let mut copy = self.clone();
        copy.make_reduced();
        copy.rows.into_values().collect()
    }

    /// Canonical kernel basis: one vector per free column, ascending.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut reduced = self.clone();
        reduced.make_reduced();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if reduced.rows.contains_key(&free) {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (&p, row) in &reduced.rows {
                if let Some(a) = row.get(&free) {
                    v[p] = -a.clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// Treats column `n` as the negated right-hand side; see
    /// [`solve_affine`].
    fn affine_solution(&self, n: usize) -> Option<(Vec<F>, Vec<Vec<F>>)> {
        if self.rows.contains_key(&n) {
            return None;
        }
        let mut particular = None;
        let mut kernel = Vec::new();
        for mut v in self.nullspace() {
            let t = v.pop().expect("augmented column");
            if t.is_zero() {
                kernel.push(v);
            } else {
                particular = Some(v);
            }
        }
        particular.map(|p| (p, kernel))
    }
}

/// Linear system whose columns are unknowns and whose rows are labelled by
/// arbitrary ordered keys, assembled from the images of the unknowns.
#[derive(Clone, Debug)]
pub struct KeyedSystem<K, F> {
    unknowns: usize,
    eqs: BTreeMap<K, SparseVec<F>>,
    rhs: BTreeMap<K, F>,
}

impl<K: Ord + Clone, F: Scalar> KeyedSystem<K, F> {
    pub fn new(unknowns: usize) -> Self {
        KeyedSystem {
            unknowns,
            eqs: BTreeMap::new(),
            rhs: BTreeMap::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.eqs
            .keys()
            .chain(self.rhs.keys())
            .collect::<std::collections::BTreeSet<_>>()
            .len()
    }

    /// Adds `coeff` to the entry of equation `key` in column `unknown`.
    pub fn add(&mut self, key: K, unknown: usize, coeff: F) {
        assert!(unknown < self.unknowns);
        if coeff.is_zero() {
            return;
        }
        let row = self.eqs.entry(key).or_default();
        let entry = row.entry(unknown).or_insert_with(F::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            row.remove(&unknown);
        }
    }

    /// Adds `coeff` to the right-hand side of equation `key`.
    pub fn add_rhs(&mut self, key: K, coeff: F) {
        let entry = self.rhs.entry(key).or_insert_with(F::zero);
        *entry = entry.clone() + coeff;
    }

    fn echelon(&self, augmented: bool) -> RowEchelon<F> {
        let n = self.unknowns;
        let mut ech = RowEchelon::new(if augmented { n + 1 } else { n });
        for (k, row) in &self.eqs {
            let mut row = row.clone();
            if augmented {
                if let Some(b) = self.rhs.get(k).filter(|b| !b.is_zero()) {
                    row.insert(n, -b.clone());
                }
            }
            ech.insert(row);
        }
        if augmented {
            for (k, b) in &self.rhs {
                if !self.eqs.contains_key(k) && !b.is_zero() {
                    ech.insert(SparseVec::from([(n, -b.clone())]));
                }
            }
        }
        ech
    }

    /// Canonical basis of the homogeneous solutions.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.echelon(false).nullspace()
    }

    /// Particular solution and kernel basis, or `None` if inconsistent.
    pub fn solve(&self) -> Option<(Vec<F>, Vec<Vec<F>>)> {
        self.echelon(true).affine_solution(self.unknowns)
    }
}

pub fn to_sparse<F: Scalar>(row: &[F]) -> SparseVec<F> {
    row.iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| (i, a.clone()))
        .collect()
}

pub fn to_dense<F: Scalar>(v: &SparseVec<F>, len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (k, a) in v {
        out[*k] = a.clone();
    }
    out
}
