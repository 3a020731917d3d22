//! Exact linear algebra over `Q(ζ_m)`: sparse vectors, subspaces kept in
//! reduced row echelon form, and small dense matrices.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{CycloField, CycloScalar};
use crate::error::{Error, Result};

/// Sparse vector: entries sorted by index, no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, CycloScalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, value: CycloScalar) -> Self {
        let mut v = SparseVec::new();
        if !value.is_zero() {
            v.entries.push((index, value));
        }
        v
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, CycloScalar)>) -> Self {
        let mut map: BTreeMap<usize, CycloScalar> = BTreeMap::new();
        for (i, c) in pairs {
            match map.get_mut(&i) {
                Some(e) => *e += &c,
                None => {
                    map.insert(i, c);
                }
            }
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[CycloScalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: &Arc<CycloField>) -> Vec<CycloScalar> {
        let mut out = vec![CycloScalar::zero(field); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CycloScalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, index: usize) -> Option<&CycloScalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn leading(&self) -> Option<(usize, &CycloScalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn scale(&self, factor: &CycloScalar) -> SparseVec {
        if factor.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (*i, c * factor))
                .collect(),
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &SparseVec, factor: &CycloScalar) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, _)), Some((ib, _))) if ia < ib => out.push(a.next().unwrap()),
                (Some((ia, _)), Some((ib, _))) if ia > ib => {
                    let (i, c) = b.next().unwrap();
                    out.push((*i, c * factor));
                }
                (Some(_), Some(_)) => {
                    let (i, mut c) = a.next().unwrap();
                    let (_, d) = b.next().unwrap();
                    c += &(d * factor);
                    if !c.is_zero() {
                        out.push((i, c));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (i, c) = b.next().unwrap();
                    out.push((*i, c * factor));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        if let Some((_, c)) = other.leading() {
            let one = CycloScalar::one(c.field());
            out.add_scaled(other, &one);
        }
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        if let Some((_, c)) = other.leading() {
            let minus_one = -CycloScalar::one(c.field());
            out.add_scaled(other, &minus_one);
        }
        out
    }

    /// Scales so the leading entry is 1.
    pub fn normalized(&self) -> SparseVec {
        match self.leading() {
            None => SparseVec::new(),
            Some((_, lead)) => {
                let inv = lead.inverse().expect("nonzero leading entry");
                self.scale(&inv)
            }
        }
    }

    /// Applies an index relabelling; the map must be injective.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }
}

/// Subspace of `F^n` held as a fully reduced row echelon basis keyed by pivot.
///
/// Each stored row has entry 1 at its pivot and 0 at every other pivot, so the
/// representation is canonical: two subspaces are equal iff their rows are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn spanned_by<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// The stored row with the given pivot.
    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.values()
    }

    /// Remainder of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, CycloScalar)> = v
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let mut out = v.clone();
        for (p, c) in hits {
            out.add_scaled(&self.rows[&p], &(-c));
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        let Some((p, _)) = r.leading() else {
            return false;
        };
        let r = r.normalized();
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(p).cloned() {
                row.add_scaled(&r, &(-c));
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.values().all(|r| other.contains(r))
    }

    /// Coefficients of `v` against the stored basis, keyed by pivot, or `None`
    /// when `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<(usize, CycloScalar)>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            v.iter()
                .filter(|(i, _)| self.rows.contains_key(i))
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        )
    }

    /// Basis of `{x : r·x = 0 for every stored row r}`; the rows are read as
    /// linear equations in `ambient` unknowns.
    pub fn solution_space(&self, field: &Arc<CycloField>) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for free in 0..self.ambient {
            if self.rows.contains_key(&free) {
                continue;
            }
            let mut pairs = vec![(free, CycloScalar::one(field))];
            for (p, row) in &self.rows {
                if let Some(c) = row.get(free) {
                    pairs.push((*p, -c));
                }
            }
            out.push(SparseVec::from_pairs(pairs));
        }
        out
    }

    /// Intersection with another subspace of the same ambient space.
    pub fn intersect(&self, other: &Subspace, field: &Arc<CycloField>) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j  ⇔ (a, -b) in the kernel of [U | W]
        let u: Vec<&SparseVec> = self.rows.values().collect();
        let w: Vec<&SparseVec> = other.rows.values().collect();
        let unknowns = u.len() + w.len();
        let mut eqs = Subspace::zero(unknowns);
        for coord in 0..self.ambient {
            let mut pairs = Vec::new();
            for (i, ui) in u.iter().enumerate() {
                if let Some(c) = ui.get(coord) {
                    pairs.push((i, c.clone()));
                }
            }
            for (j, wj) in w.iter().enumerate() {
                if let Some(c) = wj.get(coord) {
                    pairs.push((u.len() + j, -c));
                }
            }
            if !pairs.is_empty() {
                eqs.insert(SparseVec::from_pairs(pairs));
            }
        }
        let mut out = Subspace::zero(self.ambient);
        for sol in eqs.solution_space(field) {
            let mut x = SparseVec::new();
            for (i, c) in sol.iter().filter(|(i, _)| *i < u.len()) {
                x.add_scaled(u[i], c);
            }
            out.insert(x);
        }
        out
    }
}

/// Coefficients `c` with `Σ c_i · vectors[i] = target`, if `target` lies in
/// the span. Vectors live in `F^ambient`.
pub fn express(
    vectors: &[SparseVec],
    target: &SparseVec,
    ambient: usize,
    field: &Arc<CycloField>,
) -> Option<Vec<CycloScalar>> {
    // rows (v_i | e_i): reducing (target | 0) leaves (0 | -c) when target = Σ c_i v_i
    let mut tracked = Subspace::zero(ambient + vectors.len());
    let one = CycloScalar::one(field);
    for (i, v) in vectors.iter().enumerate() {
        let mut row = v.clone();
        row.add_scaled(&SparseVec::unit(ambient + i, one.clone()), &one);
        tracked.insert(row);
    }
    let rem = tracked.reduce(target);
    if rem.iter().any(|(i, _)| i < ambient) {
        return None;
    }
    let mut coeffs = vec![CycloScalar::zero(field); vectors.len()];
    for (i, c) in rem.iter() {
        coeffs[i - ambient] = -c;
    }
    Some(coeffs)
}

/// Dense matrix over a single cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMatrix {
    rows: usize,
    cols: usize,
    field: Arc<CycloField>,
    entries: Vec<CycloScalar>,
}

impl CycloMatrix {
    pub fn zeros(field: &Arc<CycloField>, rows: usize, cols: usize) -> Self {
        CycloMatrix {
            rows,
            cols,
            field: field.clone(),
            entries: vec![CycloScalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CycloField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, CycloScalar::one(field));
        }
        m
    }

    pub fn from_rows(field: &Arc<CycloField>, rows: Vec<Vec<CycloScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let entries: Vec<CycloScalar> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.modulus() != field.modulus()) {
            return Err(Error::ModulusMismatch {
                left: field.modulus(),
                right: entries
                    .iter()
                    .find(|e| e.modulus() != field.modulus())
                    .map_or(0, CycloScalar::modulus),
            });
        }
        Ok(CycloMatrix {
            rows: r,
            cols: c,
            field: field.clone(),
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloScalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row_vec(&self, i: usize) -> SparseVec {
        SparseVec::from_dense(&self.entries[i * self.cols..(i + 1) * self.cols])
    }

    pub fn transpose(&self) -> CycloMatrix {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &CycloMatrix) -> Result<CycloMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloScalar) -> CycloMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = &*e * c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycloScalar::is_zero)
    }

    fn row_space(&self) -> Subspace {
        let mut s = Subspace::zero(self.cols);
        for i in 0..self.rows {
            s.insert(self.row_vec(i));
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        self.row_space().solution_space(&self.field)
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[CycloScalar]) -> Result<Option<Vec<CycloScalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Subspace::zero(self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            let mut row = self.row_vec(i);
            row.add_scaled(&SparseVec::unit(self.cols, bi.clone()), &CycloScalar::one(&self.field));
            aug.insert(row);
        }
        if aug.rows.contains_key(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![CycloScalar::zero(&self.field); self.cols];
        for (p, row) in &aug.rows {
            if let Some(c) = row.get(self.cols) {
                x[*p] = c.clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<CycloMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut inv = Self::zeros(&self.field, n, n);
        for j in 0..n {
            let mut e = vec![CycloScalar::zero(&self.field); n];
            e[j] = CycloScalar::one(&self.field);
            let col = self.solve(&e)?.ok_or(Error::Singular)?;
            for (i, v) in col.into_iter().enumerate() {
                inv.set(i, j, v);
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{field, zeta};
    use super::*;

    fn int(f: &Arc<CycloField>, n: i64) -> CycloScalar {
        CycloScalar::from_int(f, n)
    }

    #[test]
    fn rank_examples() {
        let f = field(1);
        assert_eq!(CycloMatrix::identity(&f, 3).rank(), 3);
        let z = CycloMatrix::zeros(&f, 2, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace().len(), 4);
        let f4 = field(4);
        let i = zeta(4, 1);
        let m = CycloMatrix::from_rows(
            &f4,
            vec![vec![int(&f4, 1), i.clone()], vec![i.clone(), int(&f4, -1)]],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace().len(), 1);
    }

    #[test]
    fn solve_and_inverse() {
        let f = field(3);
        let w = zeta(3, 1);
        let m = CycloMatrix::from_rows(
            &f,
            vec![vec![int(&f, 2), w.clone()], vec![int(&f, 0), int(&f, 1)]],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), CycloMatrix::identity(&f, 2));
        let sing = CycloMatrix::from_rows(
            &f,
            vec![vec![int(&f, 1), w.clone()], vec![int(&f, 2), &w * &int(&f, 2)]],
        )
        .unwrap();
        assert!(matches!(sing.inverse(), Err(Error::Singular)));
        assert!(sing.solve(&[int(&f, 1), int(&f, 0)]).unwrap().is_none());
        assert!(m.solve(&[int(&f, 1)]).is_err());
    }

    #[test]
    fn subspace_is_canonical() {
        let f = field(1);
        let a = SparseVec::from_dense(&[int(&f, 1), int(&f, 2), int(&f, 0)]);
        let b = SparseVec::from_dense(&[int(&f, 0), int(&f, 1), int(&f, 1)]);
        let c = a.add(&b);
        let s1 = Subspace::spanned_by(3, [&a, &b]);
        let s2 = Subspace::spanned_by(3, [&c, &b]);
        assert_eq!(s1, s2);
        assert!(s1.contains(&c));
        let coords = s1.coordinates(&c).unwrap();
        let mut rebuilt = SparseVec::new();
        for (p, k) in coords {
            rebuilt.add_scaled(s1.rows.get(&p).unwrap(), &k);
        }
        assert_eq!(rebuilt, c);
    }

    #[test]
    fn express_in_span() {
        let f = field(1);
        let a = SparseVec::from_dense(&[int(&f, 1), int(&f, 1), int(&f, 0)]);
        let b = SparseVec::from_dense(&[int(&f, 0), int(&f, 1), int(&f, 1)]);
        let t = SparseVec::from_dense(&[int(&f, 2), int(&f, -1), int(&f, -3)]);
        assert_eq!(express(&[a.clone(), b.clone()], &t, 3, &f), Some(vec![int(&f, 2), int(&f, -3)]));
        let out = SparseVec::from_dense(&[int(&f, 0), int(&f, 0), int(&f, 1)]);
        assert_eq!(express(&[a], &out, 3, &f), None);
    }

    #[test]
    fn intersection() {
        let f = field(1);
        let e = |i| SparseVec::unit(i, CycloScalar::one(&f));
        let s = Subspace::spanned_by(3, [&e(0), &e(1)]);
        let t = Subspace::spanned_by(3, [&e(1), &e(2)]);
        let meet = s.intersect(&t, &f);
        assert_eq!(meet, Subspace::spanned_by(3, [&e(1)]));
    }
}
