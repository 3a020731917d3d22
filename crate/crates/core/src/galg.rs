//! Group-graded algebras given by structure constants on a homogeneous basis.
//!
//! Constructors cover the graded-simple algebras `F^αH ⊗ M_r` with elementary
//! grading from a tuple, (twisted) group algebras, upper-triangular algebras,
//! tensor products with trivially graded algebras and induced quotient
//! gradings. Grading predicates are decided on subspaces in reduced echelon
//! form, so every answer is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cocycles::TwoCocycle;
use crate::cyclo::{express, CycloField, CycloScalar, SparseVec, Subspace};
use crate::error::{Error, Result};
use crate::groups::{coset_index, quotient, FiniteGroup, Subgroup};
use crate::par::{self, Mode};

/// Finite-dimensional associative algebra with a basis of homogeneous
/// elements; `degree(i)` is the group element of basis vector `i`.
#[derive(Clone)]
pub struct GradedAlgebra {
    field: Arc<CycloField>,
    group: Arc<FiniteGroup>,
    labels: Vec<String>,
    degrees: Vec<usize>,
    // table[i * dim + j] = b_i · b_j
    table: Vec<SparseVec>,
    unit: Option<SparseVec>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedAlgebra(dim {}, group order {}, Q(ζ_{}))",
            self.dim(),
            self.group.order(),
            self.field.modulus()
        )
    }
}

impl GradedAlgebra {
    /// Builds an algebra from its multiplication table and checks that the
    /// grading is respected and the declared unit (if any) is a homogeneous
    /// two-sided identity of degree `e`. Associativity is checked separately
    /// by [`Self::associativity_violation`].
    pub fn new(
        field: &Arc<CycloField>,
        group: &Arc<FiniteGroup>,
        labels: Vec<String>,
        degrees: Vec<usize>,
        table: Vec<SparseVec>,
        unit: Option<SparseVec>,
    ) -> Result<Self> {
        let dim = degrees.len();
        if labels.len() != dim || table.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} labels and {} products for dimension {dim}",
                labels.len(),
                table.len()
            )));
        }
        if let Some(&g) = degrees.iter().find(|&&g| g >= group.order()) {
            return Err(Error::InvalidData(format!("degree {g} is not a group element")));
        }
        for v in table.iter().chain(unit.iter()) {
            if v.iter().any(|(k, c)| k >= dim || c.modulus() != field.modulus()) {
                return Err(Error::InvalidData("structure constant out of range or in the wrong field".into()));
            }
        }
        let alg = GradedAlgebra {
            field: field.clone(),
            group: group.clone(),
            labels,
            degrees,
            table,
            unit,
        };
        if let Some((i, j)) = alg.grading_violation() {
            return Err(Error::InvalidData(format!(
                "product of basis elements {i} and {j} is not homogeneous of the product degree"
            )));
        }
        if let Some(u) = &alg.unit {
            if u.iter().any(|(k, _)| alg.degrees[k] != group.identity()) || !alg.is_unit(u) {
                return Err(Error::InvalidData("declared unit is not a degree-e identity".into()));
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&SparseVec> {
        self.unit.as_ref()
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn basis_vector(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, CycloScalar::one(&self.field))
    }

    /// Bilinear extension of the basis products.
    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, CycloScalar> = BTreeMap::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let p = self.product(i, j);
                if p.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in p.iter() {
                    let t = &ab * c;
                    match acc.get_mut(&k) {
                        Some(e) => *e += &t,
                        None => {
                            acc.insert(k, t);
                        }
                    }
                }
            }
        }
        SparseVec::from_pairs(acc)
    }

    /// `b_i · x`.
    pub fn mul_basis_left(&self, i: usize, x: &SparseVec) -> SparseVec {
        self.mul(&self.basis_vector(i), x)
    }

    /// `x · b_j`.
    pub fn mul_basis_right(&self, x: &SparseVec, j: usize) -> SparseVec {
        self.mul(x, &self.basis_vector(j))
    }

    pub fn is_unit(&self, u: &SparseVec) -> bool {
        (0..self.dim()).all(|j| {
            let b = self.basis_vector(j);
            self.mul(u, &b) == b && self.mul(&b, u) == b
        })
    }

    /// The two-sided identity, solved for when none is declared.
    pub fn find_unit(&self) -> Option<SparseVec> {
        if let Some(u) = &self.unit {
            return Some(u.clone());
        }
        let n = self.dim();
        // unknown x: Σ_i x_i (b_i b_j) = b_j and Σ_i x_i (b_j b_i) = b_j;
        // equations are rows (coefficients of x | right-hand side)
        let mut eqs = Subspace::zero(n + 1);
        for j in 0..n {
            for side in 0..2 {
                let mut rows: BTreeMap<usize, Vec<(usize, CycloScalar)>> = BTreeMap::new();
                for i in 0..n {
                    let p = if side == 0 { self.product(i, j) } else { self.product(j, i) };
                    for (k, c) in p.iter() {
                        rows.entry(k).or_default().push((i, c.clone()));
                    }
                }
                for k in 0..n {
                    let mut row = rows.remove(&k).unwrap_or_default();
                    if k == j {
                        row.push((n, -CycloScalar::one(&self.field)));
                    }
                    if !row.is_empty() {
                        eqs.insert(SparseVec::from_pairs(row));
                    }
                }
            }
        }
        if eqs.row(n).is_some() {
            return None;
        }
        // a particular solution: free unknowns zero, pivots read off the last column
        let mut pairs = Vec::new();
        for p in eqs.pivots() {
            if let Some(c) = eqs.row(p).and_then(|r| r.get(n)) {
                pairs.push((p, -c));
            }
        }
        let u = SparseVec::from_pairs(pairs);
        self.is_unit(&u).then_some(u)
    }

    /// The same algebra with its unit recorded (solved for if necessary).
    pub fn with_unit(mut self) -> Result<Self> {
        if self.unit.is_none() {
            let u = self
                .find_unit()
                .ok_or_else(|| Error::InvalidData("algebra has no identity element".into()))?;
            if u.iter().any(|(k, _)| self.degrees[k] != self.group.identity()) {
                return Err(Error::InvalidData("identity element is not of degree e".into()));
            }
            self.unit = Some(u);
        }
        Ok(self)
    }

    /// First basis pair whose product has a term outside degree `deg(i)·deg(j)`.
    pub fn grading_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n * n).map(|x| (x / n, x % n)).find(|&(i, j)| {
            let g = self.group.mul(self.degrees[i], self.degrees[j]);
            self.product(i, j).iter().any(|(k, _)| self.degrees[k] != g)
        })
    }

    /// First basis triple with `(b_i b_j) b_k ≠ b_i (b_j b_k)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        par::find_first(Mode::default(), 0..n, |i| {
            let bi = self.basis_vector(i);
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let lhs = self.mul(ij, &self.basis_vector(k));
                    let rhs = self.mul(&bi, self.product(j, k));
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    /// Basis indices of degree `g`.
    pub fn homogeneous_basis(&self, g: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == g).collect()
    }

    /// `A_g` as a subspace of `A`.
    pub fn component(&self, g: usize) -> Subspace {
        let vs: Vec<SparseVec> = self.homogeneous_basis(g).into_iter().map(|i| self.basis_vector(i)).collect();
        Subspace::spanned_by(self.dim(), &vs)
    }

    /// `A_{w₁} A_{w₂} ⋯ A_{w_n}`.
    pub fn component_product(&self, word: &[usize]) -> Subspace {
        let Some((&first, rest)) = word.split_first() else {
            return Subspace::zero(self.dim());
        };
        let mut span = self.component(first);
        for &w in rest {
            let right = self.homogeneous_basis(w);
            let mut next = Subspace::zero(self.dim());
            for s in span.basis() {
                for &j in &right {
                    next.insert(self.mul_basis_right(s, j));
                }
            }
            span = next;
            if span.is_zero() {
                break;
            }
        }
        span
    }

    /// Every component is nonzero.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.group.order()];
        for &g in &self.degrees {
            seen[g] = true;
        }
        seen.into_iter().all(|x| x)
    }

    /// `A_g A_h = A_{gh}` for all `g, h`.
    pub fn is_strong(&self) -> bool {
        self.strong_violation_with(Mode::default()).is_none()
    }

    /// First pair `(g, h)` with `A_g A_h ≠ A_{gh}`.
    pub fn strong_violation_with(&self, mode: Mode) -> Option<(usize, usize)> {
        let n = self.group.order();
        let sizes: Vec<usize> = (0..n).map(|g| self.homogeneous_basis(g).len()).collect();
        par::find_first(mode, 0..n * n, |x| {
            let (g, h) = (x / n, x % n);
            let gh = self.group.mul(g, h);
            // A_g A_h ⊆ A_{gh} always holds, so equality is a dimension count
            (self.component_product(&[g, h]).dim() != sizes[gh]).then_some((g, h))
        })
    }

    /// Whether the multilinear monomial `x_{w₁,1} ⋯ x_{w_n,n}` vanishes on `A`.
    ///
    /// By multilinearity it suffices to substitute basis elements; prefixes
    /// whose product is already zero are pruned.
    pub fn monomial_is_identity(&self, word: &[usize]) -> bool {
        self.monomial_is_identity_with(word, Mode::default())
    }

    pub fn monomial_is_identity_with(&self, word: &[usize], mode: Mode) -> bool {
        let Some((&first, rest)) = word.split_first() else {
            return false;
        };
        let starts = self.homogeneous_basis(first);
        let slots: Vec<Vec<usize>> = rest.iter().map(|&w| self.homogeneous_basis(w)).collect();
        par::all(mode, 0..starts.len(), |s| {
            let v = self.basis_vector(starts[s]);
            !self.nonzero_extension(&v, &slots)
        })
    }

    fn nonzero_extension(&self, prefix: &SparseVec, slots: &[Vec<usize>]) -> bool {
        let Some((choices, rest)) = slots.split_first() else {
            return !prefix.is_zero();
        };
        choices.iter().any(|&j| {
            let next = self.mul_basis_right(prefix, j);
            !next.is_zero() && self.nonzero_extension(&next, rest)
        })
    }

    /// Shortest word (up to `max_len`, lexicographically first) whose monomial
    /// is an identity.
    pub fn find_identity_word(&self, max_len: usize) -> Option<Vec<usize>> {
        let n = self.group.order();
        for len in 1..=max_len {
            let total = n.pow(len as u32);
            let hit = par::find_first(Mode::default(), 0..total, |mut code| {
                let mut word = vec![0; len];
                for w in word.iter_mut().rev() {
                    *w = code % n;
                    code /= n;
                }
                self.monomial_is_identity_with(&word, Mode::Sequential).then_some(word)
            });
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    /// Same structure constants, degrees pushed to `G/N`.
    pub fn induced_quotient_grading(&self, n: &Subgroup) -> Result<GradedAlgebra> {
        if n.parent() != &self.group {
            return Err(Error::NotSubgroup("normal subgroup of a different group".into()));
        }
        let q = quotient(n)?;
        let degrees = self.degrees.iter().map(|&g| q.projection[g]).collect();
        GradedAlgebra::new(
            &self.field,
            &q.group,
            self.labels.clone(),
            degrees,
            self.table.clone(),
            self.unit.clone(),
        )
    }

    /// The ungraded algebra, graded by the trivial group.
    pub fn forget_grading(&self) -> GradedAlgebra {
        GradedAlgebra {
            field: self.field.clone(),
            group: FiniteGroup::cyclic(1),
            labels: self.labels.clone(),
            degrees: vec![0; self.dim()],
            table: self.table.clone(),
            unit: self.unit.clone(),
        }
    }

    /// The same algebra over a larger cyclotomic field.
    pub fn extend_scalars(&self, field: &Arc<CycloField>) -> Result<GradedAlgebra> {
        let lift = |v: &SparseVec| -> Result<SparseVec> {
            let pairs = v.iter().map(|(k, c)| Ok((k, c.embed_into(field)?))).collect::<Result<Vec<_>>>()?;
            Ok(SparseVec::from_pairs(pairs))
        };
        Ok(GradedAlgebra {
            field: field.clone(),
            group: self.group.clone(),
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            table: self.table.iter().map(lift).collect::<Result<_>>()?,
            unit: self.unit.as_ref().map(lift).transpose()?,
        })
    }

    pub fn is_trivially_graded(&self) -> bool {
        self.degrees.iter().all(|&g| g == self.group.identity())
    }

    /// `A ⊗ B` for trivially graded `B`; `a ⊗ b` has index `a·dim B + b` and
    /// degree `deg a`.
    pub fn tensor_with_trivially_graded(&self, b: &GradedAlgebra) -> Result<GradedAlgebra> {
        if !b.is_trivially_graded() {
            return Err(Error::InvalidData("second tensor factor is not trivially graded".into()));
        }
        if b.field.modulus() != self.field.modulus() {
            return Err(Error::ModulusMismatch {
                left: self.field.modulus(),
                right: b.field.modulus(),
            });
        }
        let (da, db) = (self.dim(), b.dim());
        let n = da * db;
        let mut labels = Vec::with_capacity(n);
        let mut degrees = Vec::with_capacity(n);
        for i in 0..da {
            for j in 0..db {
                labels.push(format!("{}⊗{}", self.labels[i], b.labels[j]));
                degrees.push(self.degrees[i]);
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let pa = self.product(x / db, y / db);
                let pb = b.product(x % db, y % db);
                table.push(tensor_vec(pa, pb, db));
            }
        }
        let unit = match (&self.unit, &b.unit) {
            (Some(u), Some(v)) => Some(tensor_vec(u, v, db)),
            _ => None,
        };
        GradedAlgebra::new(&self.field, &self.group, labels, degrees, table, unit)
    }

    /// The algebra on a multiplicatively closed homogeneous subspace `s`.
    ///
    /// Basis vector `k` of the result is the `k`-th stored row of `s` (in
    /// pivot order) and takes the degree of its pivot; coordinates of products
    /// are read at the pivots.
    pub fn subalgebra(&self, s: &Subspace, unit: Option<SparseVec>) -> Result<GradedAlgebra> {
        let rows: Vec<&SparseVec> = s.basis().collect();
        let pivots: Vec<usize> = s.pivots().collect();
        let pos: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut degrees = Vec::with_capacity(rows.len());
        for r in &rows {
            let (lead, _) = r.leading().expect("stored rows are nonzero");
            let g = self.degrees[lead];
            if r.iter().any(|(k, _)| self.degrees[k] != g) {
                return Err(Error::InvalidData("subspace is not spanned by homogeneous rows".into()));
            }
            degrees.push(g);
        }
        let to_local = |v: &SparseVec| -> Result<SparseVec> {
            if !s.contains(v) {
                return Err(Error::InvalidData("subspace is not closed under multiplication".into()));
            }
            Ok(SparseVec::from_pairs(
                v.iter().filter_map(|(k, c)| pos.get(&k).map(|&p| (p, c.clone()))),
            ))
        };
        let mut table = Vec::with_capacity(rows.len() * rows.len());
        for a in &rows {
            for b in &rows {
                table.push(to_local(&self.mul(a, b))?);
            }
        }
        let unit = unit.map(|u| to_local(&u)).transpose()?;
        let labels = (0..rows.len()).map(|k| format!("v{k}")).collect();
        GradedAlgebra::new(&self.field, &self.group, labels, degrees, table, unit)
    }

    /// Jacobson radical: the kernel of the trace form `(x, y) ↦ Tr(L_{xy})`.
    /// Fails if the radical is not spanned by homogeneous elements.
    pub fn graded_radical(&self) -> Result<Subspace> {
        let rad = self.radical_ungraded();
        // homogeneous iff every degree-projection of a basis row stays inside
        for row in rad.basis() {
            let mut parts: BTreeMap<usize, Vec<(usize, CycloScalar)>> = BTreeMap::new();
            for (k, c) in row.iter() {
                parts.entry(self.degrees[k]).or_default().push((k, c.clone()));
            }
            if parts.len() > 1 && parts.into_values().any(|p| !rad.contains(&SparseVec::from_pairs(p))) {
                return Err(Error::RadicalNotHomogeneous);
            }
        }
        Ok(rad)
    }

    fn radical_ungraded(&self) -> Subspace {
        let n = self.dim();
        // Tr(L_{b_k}) = Σ_l coefficient of b_l in b_k b_l
        let traces: Vec<CycloScalar> = (0..n)
            .map(|k| {
                let mut t = CycloScalar::zero(&self.field);
                for l in 0..n {
                    if let Some(c) = self.product(k, l).get(l) {
                        t += c;
                    }
                }
                t
            })
            .collect();
        let mut form = Subspace::zero(n);
        for i in 0..n {
            let row: Vec<(usize, CycloScalar)> = (0..n)
                .filter_map(|j| {
                    let mut t = CycloScalar::zero(&self.field);
                    for (k, c) in self.product(i, j).iter() {
                        if !traces[k].is_zero() {
                            t += &(c * &traces[k]);
                        }
                    }
                    (!t.is_zero()).then_some((j, t))
                })
                .collect();
            form.insert(SparseVec::from_pairs(row));
        }
        // the form is symmetric, so its kernel is the solution space of its rows
        let kernel = form.solution_space(&self.field);
        Subspace::spanned_by(n, &kernel)
    }

    /// `A/J` with the induced grading; basis vectors are the classes of the
    /// basis elements of `A` that are not radical pivots.
    pub fn semisimple_quotient(&self) -> Result<GradedAlgebra> {
        let rad = self.graded_radical()?;
        Ok(self.quotient_by(&rad))
    }

    /// `A/I` for a homogeneous two-sided ideal `I` given in reduced form.
    pub fn quotient_by(&self, ideal: &Subspace) -> GradedAlgebra {
        let pivots: std::collections::BTreeSet<usize> = ideal.pivots().collect();
        let keep: Vec<usize> = (0..self.dim()).filter(|k| !pivots.contains(k)).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(a, &k)| (k, a)).collect();
        let project = |v: &SparseVec| -> SparseVec {
            let r = ideal.reduce(v);
            SparseVec::from_pairs(r.iter().map(|(k, c)| (pos[&k], c.clone())))
        };
        let mut table = Vec::with_capacity(keep.len() * keep.len());
        for &a in &keep {
            for &b in &keep {
                table.push(project(self.product(a, b)));
            }
        }
        GradedAlgebra {
            field: self.field.clone(),
            group: self.group.clone(),
            labels: keep.iter().map(|&k| self.labels[k].clone()).collect(),
            degrees: keep.iter().map(|&k| self.degrees[k]).collect(),
            table,
            unit: self.unit.as_ref().map(project),
        }
    }

    /// Two-sided ideal generated by `gens`.
    pub fn ideal_closure(&self, gens: &[SparseVec]) -> Subspace {
        let mut ideal = Subspace::zero(self.dim());
        let mut queue: Vec<SparseVec> = Vec::new();
        for g in gens {
            if ideal.insert(g.clone()) {
                queue.push(g.clone());
            }
        }
        let mut with_unit = self.unit.clone();
        if with_unit.is_none() {
            with_unit = self.find_unit();
        }
        while let Some(v) = queue.pop() {
            let mut new = Vec::new();
            for i in 0..self.dim() {
                new.push(self.mul_basis_left(i, &v));
                new.push(self.mul_basis_right(&v, i));
                if with_unit.is_none() {
                    for j in 0..self.dim() {
                        new.push(self.mul_basis_right(&self.mul_basis_left(i, &v), j));
                    }
                }
            }
            for w in new {
                if ideal.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        ideal
    }

    /// Degree-`e` central elements `Z(A) ∩ A_e`, as a basis.
    pub fn graded_center(&self) -> Vec<SparseVec> {
        self.center_within(&self.homogeneous_basis(self.group.identity()))
    }

    /// The center of the ungraded algebra.
    pub fn center(&self) -> Vec<SparseVec> {
        self.center_within(&(0..self.dim()).collect::<Vec<_>>())
    }

    // basis of {x ∈ span(b_i : i ∈ support) : x b_j = b_j x ∀ j}
    fn center_within(&self, support: &[usize]) -> Vec<SparseVec> {
        let n = self.dim();
        let mut eqs = Subspace::zero(support.len());
        for j in 0..n {
            let mut rows: BTreeMap<usize, Vec<(usize, CycloScalar)>> = BTreeMap::new();
            for (u, &i) in support.iter().enumerate() {
                for (k, c) in self.product(i, j).iter() {
                    rows.entry(k).or_default().push((u, c.clone()));
                }
                for (k, c) in self.product(j, i).iter() {
                    rows.entry(k).or_default().push((u, -c));
                }
            }
            for (_, row) in rows {
                let v = SparseVec::from_pairs(row);
                if !v.is_zero() {
                    eqs.insert(v);
                }
            }
        }
        eqs.solution_space(&self.field)
            .into_iter()
            .map(|x| x.map_indices(|u| support[u]))
            .collect()
    }

    /// Decomposition of a semisimple graded algebra into graded-simple
    /// factors, one per primitive idempotent of `Z(A) ∩ A_e`.
    pub fn graded_simple_components(&self) -> Result<Vec<GradedAlgebra>> {
        let rad = self.graded_radical()?;
        if !rad.is_zero() {
            return Err(Error::NotSemisimple(rad.dim()));
        }
        let alg = self.clone().with_unit()?;
        let center = alg.graded_center();
        let idems = crate::structure::primitive_idempotents(&alg, &center)?;
        idems
            .into_iter()
            .map(|e| {
                let mut block = Subspace::zero(alg.dim());
                for j in 0..alg.dim() {
                    block.insert(alg.mul_basis_right(&e, j));
                }
                alg.subalgebra(&block, Some(e))
            })
            .collect()
    }

    /// No proper nonzero graded two-sided ideal.
    ///
    /// A nonzero radical is a proper graded ideal; for semisimple `A` the
    /// graded ideals are cut out by the idempotents of `Z(A) ∩ A_e`, so `A` is
    /// graded simple iff that algebra has a single primitive idempotent.
    pub fn is_graded_simple(&self) -> Result<bool> {
        if self.dim() == 0 || !self.graded_radical()?.is_zero() {
            return Ok(false);
        }
        let alg = self.clone().with_unit()?;
        let center = alg.graded_center();
        Ok(crate::structure::primitive_idempotents(&alg, &center)?.len() == 1)
    }

    /// Coordinates of `v` against an arbitrary list of vectors.
    pub fn express(&self, vectors: &[SparseVec], v: &SparseVec) -> Option<Vec<CycloScalar>> {
        express(vectors, v, self.dim(), &self.field)
    }
}

fn tensor_vec(a: &SparseVec, b: &SparseVec, db: usize) -> SparseVec {
    SparseVec::from_pairs(
        a.iter()
            .flat_map(|(i, x)| b.iter().map(move |(j, y)| (i * db + j, x * y))),
    )
}

/// Data `(G, H, α, (g₁, …, g_r))` of a graded-simple algebra `F^αH ⊗ M_r`
/// with elementary grading.
#[derive(Clone, Debug)]
pub struct GSimpleData {
    group: Arc<FiniteGroup>,
    subgroup: Subgroup,
    cocycle: TwoCocycle,
    tuple: Vec<usize>,
}

impl GSimpleData {
    /// `cocycle` lives on `subgroup.as_group()`.
    pub fn new(subgroup: Subgroup, cocycle: TwoCocycle, tuple: Vec<usize>) -> Result<Self> {
        let group = subgroup.parent().clone();
        if tuple.is_empty() {
            return Err(Error::InvalidData("tuple must be nonempty".into()));
        }
        if let Some(&g) = tuple.iter().find(|&&g| g >= group.order()) {
            return Err(Error::InvalidData(format!("tuple entry {g} is not a group element")));
        }
        if **cocycle.group() != *subgroup.as_group() {
            return Err(Error::InvalidData("cocycle is not defined on the subgroup".into()));
        }
        cocycle.check()?;
        Ok(GSimpleData {
            group,
            subgroup,
            cocycle,
            tuple,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.cocycle
    }

    pub fn tuple(&self) -> &[usize] {
        &self.tuple
    }

    /// Every right coset of `H` contains some `g_i`.
    pub fn coset_condition(&self) -> bool {
        self.missing_coset().is_none()
    }

    // least element of the first right coset not met by the tuple
    fn missing_coset(&self) -> Option<usize> {
        let idx = coset_index(&self.subgroup);
        let mut hit = vec![false; self.subgroup.index()];
        for &g in &self.tuple {
            hit[idx[g]] = true;
        }
        let missing = hit.iter().position(|&h| !h)?;
        (0..self.group.order()).find(|&x| idx[x] == missing)
    }

    /// A word whose monomial vanishes on `build_gsimple(self)`.
    ///
    /// With `z₁, …, z_s` representatives of the cosets met by the tuple and
    /// `Hz` a missed coset, `w_i = (z_i w₁ ⋯ w_{i−1})⁻¹ z`. A nonzero product
    /// starting in coset `Hz_i` would reach `Hz_i w₁ ⋯ w_i = Hz` after `i`
    /// steps, and no basis element leaves that coset.
    pub fn degenerate_witness(&self) -> Result<Vec<usize>> {
        let z = self.missing_coset().ok_or(Error::CosetConditionHolds)?;
        let g = &self.group;
        let idx = coset_index(&self.subgroup);
        // stable sort by coset, then keep the first entry of each block
        let mut order: Vec<usize> = (0..self.tuple.len()).collect();
        order.sort_by_key(|&i| idx[self.tuple[i]]);
        let mut reps: Vec<usize> = Vec::new();
        let mut last = None;
        for i in order {
            let c = idx[self.tuple[i]];
            if last != Some(c) {
                reps.push(self.tuple[i]);
                last = Some(c);
            }
        }
        let mut word = Vec::with_capacity(reps.len());
        let mut prefix = g.identity();
        for &zi in &reps {
            let w = g.mul(g.inv(g.mul(zi, prefix)), z);
            word.push(w);
            prefix = g.mul(prefix, w);
        }
        Ok(word)
    }
}

/// `F^αH ⊗ M_r` on the basis `U_h ⊗ e_{ij}` (index `pos(h)·r² + i·r + j`),
/// graded by `deg(U_h ⊗ e_{ij}) = g_i⁻¹ h g_j`.
pub fn build_gsimple(d: &GSimpleData, field: &Arc<CycloField>) -> Result<GradedAlgebra> {
    let g = &d.group;
    let members = d.subgroup.members();
    let hg = d.cocycle.group();
    let r = d.tuple.len();
    let m = d.cocycle.modulus();
    if !field.modulus().is_multiple_of(m) {
        return Err(Error::ModulusMismatch {
            left: m,
            right: field.modulus(),
        });
    }
    let dim = members.len() * r * r;
    let idx = |h: usize, i: usize, j: usize| h * r * r + i * r + j;
    let mut labels = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    for &hm in members {
        for i in 0..r {
            for j in 0..r {
                labels.push(format!("U[{}]⊗e{}{}", g.label(hm), i + 1, j + 1));
                degrees.push(g.mul(g.mul(g.inv(d.tuple[i]), hm), d.tuple[j]));
            }
        }
    }
    let mut table = vec![SparseVec::new(); dim * dim];
    for h1 in 0..members.len() {
        for h2 in 0..members.len() {
            let h = hg.mul(h1, h2);
            let coeff = d.cocycle.value(h1, h2, field);
            for i in 0..r {
                for j in 0..r {
                    for l in 0..r {
                        table[idx(h1, i, j) * dim + idx(h2, j, l)] = SparseVec::unit(idx(h, i, l), coeff.clone());
                    }
                }
            }
        }
    }
    let e = hg.identity();
    let unit = SparseVec::from_pairs((0..r).map(|i| (idx(e, i, i), CycloScalar::one(field))));
    GradedAlgebra::new(field, g, labels, degrees, table, Some(unit))
}

/// `F^αG` with its fine grading; `U_g` has index `g`.
pub fn twisted_group_algebra(alpha: &TwoCocycle, field: &Arc<CycloField>) -> Result<GradedAlgebra> {
    alpha.check()?;
    let g = alpha.group();
    if !field.modulus().is_multiple_of(alpha.modulus()) {
        return Err(Error::ModulusMismatch {
            left: alpha.modulus(),
            right: field.modulus(),
        });
    }
    let n = g.order();
    let labels = (0..n).map(|x| format!("U[{}]", g.label(x))).collect();
    let table = (0..n * n)
        .map(|x| {
            let (a, b) = (x / n, x % n);
            SparseVec::unit(g.mul(a, b), alpha.value(a, b, field))
        })
        .collect();
    let unit = SparseVec::unit(g.identity(), CycloScalar::one(field));
    GradedAlgebra::new(field, g, labels, (0..n).collect(), table, Some(unit))
}

pub fn group_algebra(g: &Arc<FiniteGroup>, field: &Arc<CycloField>) -> GradedAlgebra {
    twisted_group_algebra(&TwoCocycle::trivial(g, 1), field).expect("trivial cocycle is valid")
}

/// `M_r` with the elementary grading `deg e_{ij} = g_i⁻¹ g_j`; `e_{ij}` has
/// index `i·r + j`.
pub fn elementary_matrix_algebra(group: &Arc<FiniteGroup>, tuple: &[usize], field: &Arc<CycloField>) -> Result<GradedAlgebra> {
    let h = Subgroup::trivial(group);
    let d = GSimpleData::new(h.clone(), TwoCocycle::trivial(&h.as_group(), 1), tuple.to_vec())?;
    let mut a = build_gsimple(&d, field)?;
    a.labels = (0..tuple.len())
        .flat_map(|i| (0..tuple.len()).map(move |j| format!("e{}{}", i + 1, j + 1)))
        .collect();
    Ok(a)
}

/// `M_d` graded by the trivial group.
pub fn matrix_algebra(d: usize, field: &Arc<CycloField>) -> GradedAlgebra {
    elementary_matrix_algebra(&FiniteGroup::cyclic(1), &vec![0; d], field).expect("trivial tuple is valid")
}

/// Upper-triangular `m×m` matrices whose diagonal is scalar; basis: the
/// identity (index 0) then `e_{ij}`, `i < j`, in row order.
pub fn upper_triangular_scalar_diag(group: &Arc<FiniteGroup>, tuple: &[usize], field: &Arc<CycloField>) -> Result<GradedAlgebra> {
    upper_triangular(group, tuple, field, false)
}

/// All upper-triangular `m×m` matrices; basis `e_{ij}`, `i ≤ j`, in row order.
pub fn upper_triangular_full(group: &Arc<FiniteGroup>, tuple: &[usize], field: &Arc<CycloField>) -> Result<GradedAlgebra> {
    upper_triangular(group, tuple, field, true)
}

fn upper_triangular(group: &Arc<FiniteGroup>, tuple: &[usize], field: &Arc<CycloField>, full: bool) -> Result<GradedAlgebra> {
    let m = tuple.len();
    if m == 0 {
        return Err(Error::InvalidData("tuple must be nonempty".into()));
    }
    if let Some(&g) = tuple.iter().find(|&&g| g >= group.order()) {
        return Err(Error::InvalidData(format!("tuple entry {g} is not a group element")));
    }
    // basis entries: None for the scalar identity, Some((i, j)) for e_ij
    let mut basis: Vec<Option<(usize, usize)>> = Vec::new();
    if !full {
        basis.push(None);
    }
    for i in 0..m {
        for j in i..m {
            if full || i < j {
                basis.push(Some((i, j)));
            }
        }
    }
    let pos: BTreeMap<(usize, usize), usize> = basis
        .iter()
        .enumerate()
        .filter_map(|(k, b)| b.map(|ij| (ij, k)))
        .collect();
    let one = CycloScalar::one(field);
    let dim = basis.len();
    let mut table = Vec::with_capacity(dim * dim);
    for a in &basis {
        for b in &basis {
            let v = match (a, b) {
                (None, None) => SparseVec::unit(0, one.clone()),
                (None, Some(ij)) | (Some(ij), None) => SparseVec::unit(pos[ij], one.clone()),
                (Some((i, j)), Some((k, l))) if j == k => SparseVec::unit(pos[&(*i, *l)], one.clone()),
                _ => SparseVec::new(),
            };
            table.push(v);
        }
    }
    let labels = basis
        .iter()
        .map(|b| match b {
            None => "1".to_string(),
            Some((i, j)) => format!("e{}{}", i + 1, j + 1),
        })
        .collect();
    let degrees = basis
        .iter()
        .map(|b| match b {
            None => group.identity(),
            Some((i, j)) => group.mul(group.inv(tuple[*i]), tuple[*j]),
        })
        .collect();
    let unit = if full {
        SparseVec::from_pairs((0..m).map(|i| (pos[&(i, i)], one.clone())))
    } else {
        SparseVec::unit(0, one.clone())
    };
    GradedAlgebra::new(field, group, labels, degrees, table, Some(unit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::field;
    use crate::groups::subgroups;
    use proptest::prelude::*;

    fn trivial_on(h: &Subgroup) -> TwoCocycle {
        TwoCocycle::trivial(&h.as_group(), 1)
    }

    fn gsimple(g: &Arc<FiniteGroup>, h: Subgroup, tuple: Vec<usize>) -> (GSimpleData, GradedAlgebra) {
        let c = trivial_on(&h);
        let d = GSimpleData::new(h, c, tuple).unwrap();
        let f = field(g.exponent() as u32);
        let a = build_gsimple(&d, &f).unwrap();
        (d, a)
    }

    #[test]
    fn gsimple_examples() {
        let c1 = FiniteGroup::cyclic(1);
        let (_, f) = gsimple(&c1, Subgroup::trivial(&c1), vec![0]);
        assert_eq!(f.dim(), 1);
        assert!(f.is_trivially_graded());

        let c2 = FiniteGroup::cyclic(2);
        let (_, m2) = gsimple(&c2, Subgroup::trivial(&c2), vec![0, 1]);
        assert_eq!(m2.dim(), 4);
        // e11, e12, e21, e22
        assert_eq!(m2.degrees(), &[0, 1, 1, 0]);
        assert!(m2.is_associative());

        let (_, fc2) = gsimple(&c2, Subgroup::whole(&c2), vec![0]);
        let direct = group_algebra(&c2, fc2.field());
        assert_eq!(fc2.table, direct.table);
        assert_eq!(fc2.degrees(), direct.degrees());
    }

    #[test]
    fn twisted_heisenberg_anticommutes() {
        let h = TwoCocycle::heisenberg(2, 1);
        let f = field(2);
        let a = twisted_group_algebra(&h, &f).unwrap();
        assert!(a.is_associative());
        // σ = 2, τ = 1
        let us = a.basis_vector(2);
        let ut = a.basis_vector(1);
        let st = a.mul(&us, &ut);
        let ts = a.mul(&ut, &us);
        assert_eq!(st, ts.scale(&-CycloScalar::one(&f)));
        let trivial = twisted_group_algebra(&TwoCocycle::trivial(h.group(), 2), &f).unwrap();
        assert_eq!(trivial.table, group_algebra(h.group(), &f).table);
    }

    #[test]
    fn upper_triangular_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let f = field(2);
        let a1 = upper_triangular_scalar_diag(&c2, &[0], &f).unwrap();
        assert_eq!(a1.dim(), 1);
        let a2 = upper_triangular_scalar_diag(&c2, &[0, 1], &f).unwrap();
        assert_eq!(a2.dim(), 2);
        let rad = a2.graded_radical().unwrap();
        assert_eq!(rad.dim(), 1);
        assert_eq!(a2.degree(1), 1);
        assert!(rad.contains(&a2.basis_vector(1)));

        let a5 = upper_triangular_scalar_diag(&c2, &[0, 1, 0, 1, 0], &f).unwrap();
        assert!(a5.is_associative());
        assert_eq!(a5.dim(), 11);
        assert!(!a5.component_product(&[1, 1]).is_zero());

        let ut2 = upper_triangular_full(&c2, &[0, 1], &f).unwrap();
        assert!(ut2.monomial_is_identity(&[1, 1]));
        assert!(!ut2.monomial_is_identity(&[0]));
        let rad = ut2.graded_radical().unwrap();
        assert_eq!(rad.dim(), 1);
        let q = ut2.semisimple_quotient().unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.graded_radical().unwrap().is_zero());
    }

    #[test]
    fn example_radical_dimension() {
        let c2 = FiniteGroup::cyclic(2);
        let f = field(2);
        let a = upper_triangular_scalar_diag(&c2, &[0, 1, 0, 1, 0], &f).unwrap();
        let rad = a.graded_radical().unwrap();
        assert_eq!(rad.dim(), 10);
        assert_eq!(a.semisimple_quotient().unwrap().dim(), 1);
    }

    #[test]
    fn tensor_products() {
        let c2 = FiniteGroup::cyclic(2);
        let f = field(2);
        let fc2 = group_algebra(&c2, &f);
        let one = matrix_algebra(1, &f);
        let same = fc2.tensor_with_trivially_graded(&one).unwrap();
        assert_eq!(same.table, fc2.table);
        let big = fc2.tensor_with_trivially_graded(&matrix_algebra(2, &f)).unwrap();
        assert_eq!(big.dim(), 8);
        assert_eq!(big.homogeneous_basis(0).len(), 4);
        assert_eq!(big.homogeneous_basis(1).len(), 4);
        assert!(big.is_associative());
        assert!(fc2.tensor_with_trivially_graded(&fc2).is_err());

        let h = twisted_group_algebra(&TwoCocycle::heisenberg(2, 1), &f).unwrap();
        let t = h.tensor_with_trivially_graded(&matrix_algebra(2, &f)).unwrap();
        assert_eq!(t.dim(), 16);
        assert!(t.is_associative());

        let m2 = matrix_algebra(2, &field(1));
        assert!(h.tensor_with_trivially_graded(&m2).is_err());
        let lifted = m2.extend_scalars(&f).unwrap();
        assert_eq!(h.tensor_with_trivially_graded(&lifted).unwrap().table, t.table);
        assert!(fc2.extend_scalars(&field(3)).is_err());
    }

    #[test]
    fn quotient_gradings() {
        let c4 = FiniteGroup::cyclic(4);
        let f = field(4);
        let a = group_algebra(&c4, &f);
        let same = a.induced_quotient_grading(&Subgroup::trivial(&c4)).unwrap();
        assert_eq!(same.group().order(), 4);
        let triv = a.induced_quotient_grading(&Subgroup::whole(&c4)).unwrap();
        assert!(triv.is_trivially_graded());
        let q = a.induced_quotient_grading(&Subgroup::generated(&c4, &[2])).unwrap();
        assert_eq!(q.group().order(), 2);
        assert_eq!(q.homogeneous_basis(0).len(), 2);
        assert!(q.is_strong());
        let s3 = FiniteGroup::symmetric(3);
        let fs3 = group_algebra(&s3, &field(6));
        assert_eq!(
            fs3.induced_quotient_grading(&Subgroup::generated(&s3, &[1])).unwrap_err(),
            Error::NotNormal
        );
    }

    #[test]
    fn components_and_products() {
        let s3 = FiniteGroup::symmetric(3);
        let a = group_algebra(&s3, &field(6));
        for g in 0..6 {
            assert_eq!(a.component(g).dim(), 1);
        }
        assert!(a.is_strong());
        let c2 = FiniteGroup::cyclic(2);
        let fc2 = group_algebra(&c2, &field(2));
        assert!(fc2.component_product(&[1, 1]).contains(&fc2.basis_vector(0)));
        let trivial = matrix_algebra(2, &field(1));
        assert!(trivial.is_strong());
    }

    #[test]
    fn strongness_of_missing_coset() {
        let c3 = FiniteGroup::cyclic(3);
        let (d, a) = gsimple(&c3, Subgroup::trivial(&c3), vec![0, 1]);
        assert!(!a.is_strong());
        assert!(!d.coset_condition());
        assert!(a.component_product(&[2, 2]).is_zero());
        assert_eq!(d.degenerate_witness().unwrap(), vec![2, 2]);
        assert!(a.monomial_is_identity(&[2, 2]));
    }

    #[test]
    fn coset_condition_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let (d, _) = gsimple(&c2, Subgroup::trivial(&c2), vec![0, 1]);
        assert!(d.coset_condition());
        assert_eq!(d.degenerate_witness(), Err(Error::CosetConditionHolds));
        let (d, a) = gsimple(&c2, Subgroup::trivial(&c2), vec![0, 0]);
        assert!(!d.coset_condition());
        assert_eq!(d.degenerate_witness().unwrap(), vec![1]);
        assert!(a.monomial_is_identity(&[1]));

        let s3 = FiniteGroup::symmetric(3);
        let a3 = subgroups(&s3).into_iter().find(|h| h.order() == 3).unwrap();
        let (d, a) = gsimple(&s3, a3, vec![0]);
        assert!(!d.coset_condition());
        let w = d.degenerate_witness().unwrap();
        assert_eq!(w.len(), 1);
        assert!(!d.subgroup().contains(w[0]));
        assert!(a.monomial_is_identity(&w));
        for g in 0..6 {
            assert_eq!(a.component(g).is_zero(), !d.subgroup().contains(g));
        }
    }

    #[test]
    fn radical_of_semisimple_is_zero() {
        let g = FiniteGroup::quaternion8();
        let a = group_algebra(&g, &field(4));
        assert!(a.graded_radical().unwrap().is_zero());
    }

    #[test]
    fn graded_simple_components_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let f = field(2);
        let fc2 = group_algebra(&c2, &f);
        let comps = fc2.graded_simple_components().unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].dim(), 2);
        let split = fc2.forget_grading().graded_simple_components().unwrap();
        assert_eq!(split.len(), 2);
        assert!(split.iter().all(|c| c.dim() == 1));

        let (_, m2) = gsimple(&c2, Subgroup::trivial(&c2), vec![0, 1]);
        let comps = m2.graded_simple_components().unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].is_graded_simple().unwrap());
        // cross-check: the ideal generated by each homogeneous basis element is everything
        assert!((0..comps[0].dim()).all(|i| comps[0].ideal_closure(&[comps[0].basis_vector(i)]).is_full()));
        assert!(!fc2.forget_grading().is_graded_simple().unwrap());
        assert!(fc2.is_graded_simple().unwrap());

        let ut2 = upper_triangular_full(&c2, &[0, 1], &f).unwrap();
        assert!(matches!(ut2.graded_simple_components(), Err(Error::NotSemisimple(1))));
    }

    #[test]
    fn unit_is_found() {
        let c2 = FiniteGroup::cyclic(2);
        let ut2 = upper_triangular_full(&c2, &[0, 1], &field(2)).unwrap();
        let mut bare = ut2.clone();
        bare.unit = None;
        assert_eq!(bare.find_unit(), ut2.unit().cloned());
        let q = ut2.semisimple_quotient().unwrap();
        assert!(q.is_unit(q.unit().unwrap()));
    }

    #[test]
    fn modes_agree() {
        let c3 = FiniteGroup::cyclic(3);
        let (_, a) = gsimple(&c3, Subgroup::trivial(&c3), vec![0, 1]);
        for w in [vec![2, 2], vec![1, 2], vec![0, 1, 2]] {
            assert_eq!(
                a.monomial_is_identity_with(&w, Mode::Sequential),
                a.monomial_is_identity_with(&w, Mode::Parallel)
            );
            assert_eq!(a.monomial_is_identity(&w), a.component_product(&w).is_zero());
        }
    }

    // Random BSZ data with trivial cocycle on small groups.
    fn small_groups() -> Vec<Arc<FiniteGroup>> {
        vec![
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::elementary_abelian(2, 2),
            FiniteGroup::symmetric(3),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn strong_iff_cosets_covered(gi in 0usize..5, hi in 0usize..16, raw in proptest::collection::vec(0usize..64, 1..=3)) {
            let g = &small_groups()[gi];
            let subs = subgroups(g);
            let h = subs[hi % subs.len()].clone();
            let tuple: Vec<usize> = raw.iter().map(|x| x % g.order()).collect();
            let (d, a) = gsimple(g, h, tuple);
            prop_assert!(a.is_associative());
            prop_assert!(a.grading_violation().is_none());
            prop_assert_eq!(d.coset_condition(), a.is_strong());
            if a.is_strong() {
                prop_assert!(a.is_connected());
            } else {
                let w = d.degenerate_witness().unwrap();
                prop_assert!(a.monomial_is_identity(&w));
                prop_assert!(a.component_product(&w).is_zero());
            }
        }

        #[test]
        fn quotient_of_radical_is_semisimple(m in 1usize..5, bits in proptest::collection::vec(0usize..2, 5)) {
            let c2 = FiniteGroup::cyclic(2);
            let f = field(2);
            let tuple = &bits[..m];
            for a in [upper_triangular_full(&c2, tuple, &f).unwrap(), upper_triangular_scalar_diag(&c2, tuple, &f).unwrap()] {
                let q = a.semisimple_quotient().unwrap();
                prop_assert!(q.graded_radical().unwrap().is_zero());
            }
        }
    }
}
