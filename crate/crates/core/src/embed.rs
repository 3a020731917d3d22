//! Graded embeddings `FG ↪ FH ⊗ M_k` (coset action), `FH ↪ F^αH ⊗ M_d`
//! (untwisting by a projective representation) and their composite, with
//! exhaustive verification.

use std::sync::Arc;

use crate::cocycles::TwoCocycle;
use crate::cyclo::{CycloField, CycloMatrix, CycloScalar, SparseVec, Subspace};
use crate::error::{Error, Result};
use crate::galg::{build_gsimple, group_algebra, matrix_algebra, twisted_group_algebra, GSimpleData, GradedAlgebra};
use crate::groups::{coset_index, FiniteGroup, Subgroup};
use crate::par::{self, Mode};

/// Linear map between graded algebras, recorded on the source basis.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub source: GradedAlgebra,
    pub target: GradedAlgebra,
    pub images: Vec<SparseVec>,
}

impl GradedMap {
    pub fn new(source: GradedAlgebra, target: GradedAlgebra, images: Vec<SparseVec>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for a source of dimension {}",
                images.len(),
                source.dim()
            )));
        }
        if images.iter().any(|v| v.iter().any(|(k, _)| k >= target.dim())) {
            return Err(Error::DimensionMismatch("image outside the target".into()));
        }
        Ok(GradedMap { source, target, images })
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.add_scaled(&self.images[i], c);
        }
        out
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GradedMap) -> GradedMap {
        GradedMap {
            source: self.source.clone(),
            target: next.target.clone(),
            images: self.images.iter().map(|v| next.apply(v)).collect(),
        }
    }
}

/// Outcome of [`verify_graded_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    pub multiplicative: bool,
    pub unital: bool,
    pub injective: bool,
    pub degree_preserving: bool,
    /// First basis pair on which multiplicativity fails.
    pub failing_pair: Option<(usize, usize)>,
}

impl MapReport {
    pub fn all(&self) -> bool {
        self.multiplicative && self.unital && self.injective && self.degree_preserving
    }
}

pub fn verify_graded_map(m: &GradedMap) -> MapReport {
    verify_graded_map_with(m, Mode::default())
}

pub fn verify_graded_map_with(m: &GradedMap, mode: Mode) -> MapReport {
    let n = m.source.dim();
    let failing_pair = par::find_first(mode, 0..n * n, |x| {
        let (i, j) = (x / n, x % n);
        let lhs = m.apply(m.source.product(i, j));
        let rhs = m.target.mul(&m.images[i], &m.images[j]);
        (lhs != rhs).then_some((i, j))
    });
    let unital = match (m.source.find_unit(), m.target.find_unit()) {
        (Some(u), Some(v)) => m.apply(&u) == v,
        _ => false,
    };
    let injective = Subspace::spanned_by(m.target.dim(), &m.images).dim() == n;
    let degree_preserving = *m.source.group() == *m.target.group()
        && (0..n).all(|i| {
            let g = m.source.degree(i);
            m.images[i].iter().all(|(k, _)| m.target.degree(k) == g)
        });
    MapReport {
        multiplicative: failing_pair.is_none(),
        unital,
        injective,
        degree_preserving,
        failing_pair,
    }
}

/// The identity map of an algebra.
pub fn identity_map(a: &GradedAlgebra) -> GradedMap {
    GradedMap {
        source: a.clone(),
        target: a.clone(),
        images: (0..a.dim()).map(|i| a.basis_vector(i)).collect(),
    }
}

/// Checks that `reps` is a right transversal of `h`: one element per right
/// coset.
pub fn check_transversal(h: &Subgroup, reps: &[usize]) -> Result<()> {
    let idx = coset_index(h);
    if reps.len() != h.index() {
        return Err(Error::NotTransversal(format!(
            "{} representatives for {} cosets",
            reps.len(),
            h.index()
        )));
    }
    let mut seen = vec![false; h.index()];
    for &w in reps {
        if w >= idx.len() {
            return Err(Error::NotTransversal(format!("{w} is not a group element")));
        }
        if std::mem::replace(&mut seen[idx[w]], true) {
            return Err(Error::NotTransversal(format!("two representatives in the coset of {w}")));
        }
    }
    Ok(())
}

/// `w_i g = h · w_j` with `h ∈ H`: returns `(h, j)`.
pub fn coset_factorization(h: &Subgroup, reps: &[usize], i: usize, g: usize) -> (usize, usize) {
    let grp = h.parent();
    let x = grp.mul(reps[i], g);
    reps.iter()
        .enumerate()
        .find_map(|(j, &w)| {
            let hh = grp.mul(x, grp.inv(w));
            h.contains(hh).then_some((hh, j))
        })
        .expect("representatives form a transversal")
}

/// `ψ(U_g) = Σ_i V_{h_{w_i,g}} ⊗ E_{i,j(i)}` into `FH ⊗ M_k` with the
/// elementary grading by `(w₁, …, w_k)`.
pub fn regular_coset_embedding(h: &Subgroup, reps: &[usize], field: &Arc<CycloField>) -> Result<GradedMap> {
    let g = h.parent();
    let trivial = TwoCocycle::trivial(&h.as_group(), 1);
    coset_embedding(g, h, &trivial, reps, field, None)
}

// Coset embedding into build_gsimple(H, α, reps), optionally tensored with a
// representation factor: for ρ, `V_h ⊗ E_ij` gains the factor ρ(V_h)^{-1 t}.
fn coset_embedding(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    alpha: &TwoCocycle,
    reps: &[usize],
    field: &Arc<CycloField>,
    rho: Option<&ProjectiveRep>,
) -> Result<GradedMap> {
    check_transversal(h, reps)?;
    let data = GSimpleData::new(h.clone(), alpha.clone(), reps.to_vec())?;
    let mut target = build_gsimple(&data, field)?;
    let factors = match rho {
        Some(r) => {
            target = target.tensor_with_trivially_graded(&matrix_algebra(r.dim(), field))?;
            Some(r.untwist_factors(false)?)
        }
        None => None,
    };
    let source = group_algebra(g, field);
    let k = reps.len();
    let d = rho.map_or(1, ProjectiveRep::dim);
    let one = CycloScalar::one(field);
    let mut images = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let mut pairs = Vec::new();
        for i in 0..k {
            let (hh, j) = coset_factorization(h, reps, i, x);
            let pos = h.position(hh).expect("factor lies in H");
            let base = pos * k * k + i * k + j;
            match &factors {
                None => pairs.push((base, one.clone())),
                Some(f) => {
                    let m = &f[pos];
                    for r in 0..d {
                        for c in 0..d {
                            pairs.push((base * d * d + r * d + c, m.get(r, c).clone()));
                        }
                    }
                }
            }
        }
        images.push(SparseVec::from_pairs(pairs));
    }
    GradedMap::new(source, target, images)
}

/// Matrices `ρ(V_h)` with `ρ(V_a)ρ(V_b) = α(a, b) ρ(V_{ab})` and `ρ(V_e) = 1`.
#[derive(Clone, Debug)]
pub struct ProjectiveRep {
    alpha: TwoCocycle,
    matrices: Vec<CycloMatrix>,
}

impl ProjectiveRep {
    pub fn new(alpha: TwoCocycle, matrices: Vec<CycloMatrix>) -> Result<Self> {
        let g = alpha.group().clone();
        if matrices.len() != g.order() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                g.order()
            )));
        }
        let d = matrices[0].rows();
        let field = matrices[0].field().clone();
        if d == 0 || matrices.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::InvalidRepresentation("matrices must be square of one size".into()));
        }
        if !field.modulus().is_multiple_of(alpha.modulus()) {
            return Err(Error::ModulusMismatch {
                left: alpha.modulus(),
                right: field.modulus(),
            });
        }
        if matrices[g.identity()] != CycloMatrix::identity(&field, d) {
            return Err(Error::InvalidRepresentation("ρ(V_e) is not the identity".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = matrices[a].mul(&matrices[b])?;
                let rhs = matrices[g.mul(a, b)].scale(&alpha.value(a, b, &field));
                if lhs != rhs {
                    return Err(Error::InvalidRepresentation(format!(
                        "ρ(V_{a})ρ(V_{b}) ≠ α({a},{b}) ρ(V_{a}{b})"
                    )));
                }
            }
        }
        Ok(ProjectiveRep { alpha, matrices })
    }

    /// Left action of `F^αH` on itself: column `b` of `ρ(V_a)` is `α(a,b)` at
    /// row `ab`.
    pub fn regular(alpha: &TwoCocycle, field: &Arc<CycloField>) -> Result<Self> {
        let g = alpha.group();
        let n = g.order();
        let matrices = (0..n)
            .map(|a| {
                let mut m = CycloMatrix::zeros(field, n, n);
                for b in 0..n {
                    m.set(g.mul(a, b), b, alpha.value(a, b, field));
                }
                m
            })
            .collect();
        Self::new(alpha.clone(), matrices)
    }

    /// For the Heisenberg cocycle on `C_p²`: `ρ(V_{(i,j)}) = S^i C^j` with the
    /// cyclic shift `S e_k = e_{k+1}` and the clock `C = diag(ζ_p^k)`, so that
    /// `CS = ζ_p SC`.
    pub fn clock_and_shift(p: u32, field: &Arc<CycloField>) -> Result<Self> {
        let alpha = TwoCocycle::heisenberg(p, 1);
        let n = p as usize;
        let mut shift = CycloMatrix::zeros(field, n, n);
        let mut clock = CycloMatrix::zeros(field, n, n);
        let zeta = |k: usize| CycloScalar::zeta(field, (k as u32 * (field.modulus() / p)) as i64);
        for k in 0..n {
            shift.set((k + 1) % n, k, CycloScalar::one(field));
            clock.set(k, k, zeta(k));
        }
        let pow = |m: &CycloMatrix, e: usize| -> CycloMatrix {
            (0..e).fold(CycloMatrix::identity(field, n), |acc, _| acc.mul(m).expect("square"))
        };
        let matrices = (0..n * n)
            .map(|x| pow(&shift, x / n).mul(&pow(&clock, x % n)).expect("square"))
            .collect();
        Self::new(alpha, matrices)
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn alpha(&self) -> &TwoCocycle {
        &self.alpha
    }

    pub fn matrix(&self, h: usize) -> &CycloMatrix {
        &self.matrices[h]
    }

    // ρ(V_h^{-1})^t = (ρ(V_h)^{-1})^t; the transpose can be dropped to build
    // the negative control
    fn untwist_factors(&self, drop_transpose: bool) -> Result<Vec<CycloMatrix>> {
        self.matrices
            .iter()
            .map(|m| {
                let inv = m.inverse()?;
                Ok(if drop_transpose { inv } else { inv.transpose() })
            })
            .collect()
    }
}

/// `ψ(U_h) = V_h ⊗ ρ(V_h^{-1})^t` into `F^αH ⊗ M_d`, `M_d` trivially graded.
pub fn untwist_embedding(rho: &ProjectiveRep, field: &Arc<CycloField>) -> Result<GradedMap> {
    untwist(rho, field, false)
}

/// The same formula with the transpose omitted; not multiplicative for
/// noncommuting `ρ(V_h)`. Kept for the negative control.
pub fn untwist_embedding_without_transpose(rho: &ProjectiveRep, field: &Arc<CycloField>) -> Result<GradedMap> {
    untwist(rho, field, true)
}

fn untwist(rho: &ProjectiveRep, field: &Arc<CycloField>, drop_transpose: bool) -> Result<GradedMap> {
    let h = rho.alpha.group();
    let d = rho.dim();
    let factors = rho.untwist_factors(drop_transpose)?;
    let target = twisted_group_algebra(&rho.alpha, field)?.tensor_with_trivially_graded(&matrix_algebra(d, field))?;
    let source = group_algebra(h, field);
    let images = (0..h.order())
        .map(|x| {
            let m = &factors[x];
            SparseVec::from_pairs(
                (0..d).flat_map(|r| (0..d).map(move |c| (x * d * d + r * d + c, m.get(r, c).clone()))),
            )
        })
        .collect();
    GradedMap::new(source, target, images)
}

/// `FG ↪ FH ⊗ M_k ↪ F^αH ⊗ M_d ⊗ M_k ≅ build_gsimple(H, α, reps) ⊗ M_d`.
/// `rho` is a projective representation of `F^αH` on `h.as_group()`.
pub fn chain_embedding(h: &Subgroup, reps: &[usize], rho: &ProjectiveRep, field: &Arc<CycloField>) -> Result<GradedMap> {
    if **rho.alpha.group() != *h.as_group() {
        return Err(Error::InvalidRepresentation("representation is not on the subgroup".into()));
    }
    coset_embedding(h.parent(), h, &rho.alpha, reps, field, Some(rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::field;
    use crate::groups::{coset_reps, subgroups};

    #[test]
    fn identity_and_zero_maps() {
        let s3 = FiniteGroup::symmetric(3);
        let a = group_algebra(&s3, &field(6));
        let r = verify_graded_map(&identity_map(&a));
        assert!(r.all());
        let zero = GradedMap::new(a.clone(), a.clone(), vec![SparseVec::new(); 6]).unwrap();
        let r = verify_graded_map(&zero);
        assert!(r.multiplicative);
        assert!(!r.unital);
        assert!(!r.injective);
    }

    #[test]
    fn regular_embeddings() {
        let s3 = FiniteGroup::symmetric(3);
        let f = field(6);
        let whole = Subgroup::whole(&s3);
        let m = regular_coset_embedding(&whole, &[0], &f).unwrap();
        assert!(verify_graded_map(&m).all());
        assert_eq!(m.target.dim(), 6);

        let trivial = Subgroup::trivial(&s3);
        let m = regular_coset_embedding(&trivial, &coset_reps(&trivial), &f).unwrap();
        assert_eq!(m.target.dim(), 36);
        assert!(verify_graded_map(&m).all());

        let a3 = subgroups(&s3).into_iter().find(|h| h.order() == 3).unwrap();
        let tau = (0..6).find(|&x| !a3.contains(x)).unwrap();
        let m = regular_coset_embedding(&a3, &[0, tau], &f).unwrap();
        let r = verify_graded_map(&m);
        assert!(r.all(), "{r:?}");
        assert!(matches!(
            regular_coset_embedding(&a3, &[0, a3.members()[1]], &f),
            Err(Error::NotTransversal(_))
        ));
    }

    #[test]
    fn coset_cocycle_coherence() {
        let s3 = FiniteGroup::symmetric(3);
        for h in subgroups(&s3) {
            let reps = coset_reps(&h);
            for i in 0..reps.len() {
                for g1 in 0..6 {
                    for g2 in 0..6 {
                        let (h1, j1) = coset_factorization(&h, &reps, i, g1);
                        let (h2, j2) = coset_factorization(&h, &reps, j1, g2);
                        let (h12, j12) = coset_factorization(&h, &reps, i, s3.mul(g1, g2));
                        assert_eq!(h12, s3.mul(h1, h2));
                        assert_eq!(j12, j2);
                        // the term's elementary degree is g
                        let deg = s3.mul(s3.mul(s3.inv(reps[i]), h1), reps[j1]);
                        assert_eq!(deg, g1);
                    }
                }
            }
        }
    }

    #[test]
    fn untwisting() {
        let c2 = FiniteGroup::cyclic(2);
        let f = field(2);
        let rho = ProjectiveRep::regular(&TwoCocycle::trivial(&c2, 1), &f).unwrap();
        assert!(verify_graded_map(&untwist_embedding(&rho, &f).unwrap()).all());

        for p in [2u32, 3] {
            let f = field(p);
            let rho = ProjectiveRep::clock_and_shift(p, &f).unwrap();
            assert_eq!(rho.dim(), p as usize);
            let m = untwist_embedding(&rho, &f).unwrap();
            assert!(verify_graded_map(&m).all());
            let bad = untwist_embedding_without_transpose(&rho, &f).unwrap();
            assert!(!verify_graded_map(&bad).multiplicative);
            let reg = ProjectiveRep::regular(rho.alpha(), &f).unwrap();
            assert!(verify_graded_map(&untwist_embedding(&reg, &f).unwrap()).all());
        }
    }

    #[test]
    fn explicit_two_by_two_assignment() {
        // σ ↦ diag(1, −1), τ ↦ swap, extended by ρ(V_{(i,j)}) = ρ(σ)^i ρ(τ)^j
        let f = field(2);
        let m =|rows: [[i64; 2]; 2]| {
            CycloMatrix::from_rows(
                &f,
                rows.iter().map(|r| r.iter().map(|&x| CycloScalar::from_int(&f, x)).collect()).collect(),
            )
            .unwrap()
        };
        let sigma = m([[1, 0], [0, -1]]);
        let tau = m([[0, 1], [1, 0]]);
        let id = CycloMatrix::identity(&f, 2);
        // indices: (0,0)=0, (0,1)=1 (τ), (1,0)=2 (σ), (1,1)=3
        let mats = vec![id, tau.clone(), sigma.clone(), sigma.mul(&tau).unwrap()];
        let rho = ProjectiveRep::new(TwoCocycle::heisenberg(2, 1), mats).unwrap();
        assert!(verify_graded_map(&untwist_embedding(&rho, &f).unwrap()).all());
    }

    #[test]
    fn bad_representation_rejected() {
        let f = field(2);
        let h = TwoCocycle::heisenberg(2, 1);
        let id = CycloMatrix::identity(&f, 2);
        let r = ProjectiveRep::new(h, vec![id.clone(), id.clone(), id.clone(), id]);
        assert!(matches!(r, Err(Error::InvalidRepresentation(_))));
    }

    #[test]
    fn chains() {
        let klein = FiniteGroup::elementary_abelian(2, 2);
        let f = field(2);
        let rho = ProjectiveRep::clock_and_shift(2, &f).unwrap();
        let m = chain_embedding(&Subgroup::whole(&klein), &[0], &rho, &f).unwrap();
        assert_eq!(m.target.dim(), 16);
        assert!(verify_graded_map(&m).all());

        let s3 = FiniteGroup::symmetric(3);
        let f = field(6);
        let a3 = subgroups(&s3).into_iter().find(|h| h.order() == 3).unwrap();
        let tau = (0..6).find(|&x| !a3.contains(x)).unwrap();
        let rho = ProjectiveRep::regular(&TwoCocycle::trivial(&a3.as_group(), 1), &f).unwrap();
        let m = chain_embedding(&a3, &[0, tau], &rho, &f).unwrap();
        assert!(verify_graded_map(&m).all());

        // H = G with trivial α and the one-dimensional representation is the
        // regular embedding itself
        let c3 = FiniteGroup::cyclic(3);
        let f = field(3);
        let triv = TwoCocycle::trivial(&c3, 1);
        let one_dim = ProjectiveRep::new(triv, vec![CycloMatrix::identity(&f, 1); 3]).unwrap();
        let chained = chain_embedding(&Subgroup::whole(&c3), &[0], &one_dim, &f).unwrap();
        let direct = regular_coset_embedding(&Subgroup::whole(&c3), &[0], &f).unwrap();
        assert_eq!(chained.images, direct.images);
    }

    #[test]
    fn modes_agree() {
        let s3 = FiniteGroup::symmetric(3);
        let f = field(6);
        let t = Subgroup::trivial(&s3);
        let m = regular_coset_embedding(&t, &coset_reps(&t), &f).unwrap();
        assert_eq!(verify_graded_map_with(&m, Mode::Sequential), verify_graded_map_with(&m, Mode::Parallel));
    }
}
