//! Polynomial-identity invariants of finite-dimensional algebras: Wedderburn
//! block degrees, PI degree, the Giambruno–Zaicev exponent and codimensions.

use std::collections::HashSet;

use itertools::Itertools;
use num_integer::Roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::{roots_in_field, CycloScalar, SparseVec, Subspace};
use crate::error::{Error, Result};
use crate::galg::{group_algebra, GradedAlgebra};
use crate::groups::{is_n_permutable, FiniteGroup, PermutabilityReport};
use crate::par::{self, Mode};

const SPLIT_ATTEMPTS: u64 = 12;

/// Primitive idempotents of the commutative semisimple subalgebra spanned by
/// `center` (which must contain the unit of `alg`).
///
/// A random element `c` of the span is chosen, its minimal polynomial computed
/// exactly and its roots `λ_i` found in the scalar field; the idempotents are
/// `e_i = Π_{j≠i} (c − λ_j)/(λ_i − λ_j)`. Every returned idempotent has been
/// checked exactly: `e_i² = e_i`, `e_i e_j = 0`, `Σ e_i = 1`, `e_i` central.
pub fn primitive_idempotents(alg: &GradedAlgebra, center: &[SparseVec]) -> Result<Vec<SparseVec>> {
    let unit = alg
        .unit()
        .cloned()
        .ok_or_else(|| Error::InvalidData("algebra has no identity element".into()))?;
    let k = center.len();
    if k <= 1 {
        return Ok(vec![unit]);
    }
    let f = alg.field();
    let mut last_failure = String::new();
    for attempt in 0..SPLIT_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9 + attempt);
        let spread = 3 + attempt as i64;
        let mut c = SparseVec::new();
        for z in center {
            let r = rng.random_range(-spread..=spread);
            c.add_scaled(z, &CycloScalar::from_int(f, r));
        }
        let poly = minimal_polynomial(alg, &unit, &c);
        let deg = poly.len() - 1;
        if deg < k {
            // c is not generic enough to separate the factors
            continue;
        }
        let roots = roots_in_field(&poly);
        if roots.len() < deg {
            last_failure = format!(
                "minimal polynomial of degree {deg} has only {} roots in Q(ζ_{})",
                roots.len(),
                f.modulus()
            );
            continue;
        }
        let idems = lagrange_idempotents(alg, &unit, &c, &roots)?;
        verify_idempotents(alg, &unit, &idems)?;
        return Ok(sort_idempotents(alg, idems));
    }
    Err(Error::SplittingFailure {
        block: 0,
        detail: if last_failure.is_empty() {
            "no separating central element found".into()
        } else {
            last_failure
        },
    })
}

/// Coefficients (lowest degree first, monic) of the minimal polynomial of `c`.
pub fn minimal_polynomial(alg: &GradedAlgebra, unit: &SparseVec, c: &SparseVec) -> Vec<CycloScalar> {
    let f = alg.field();
    let mut powers = vec![unit.clone()];
    loop {
        let next = alg.mul(powers.last().expect("nonempty"), c);
        if let Some(coeffs) = alg.express(&powers, &next) {
            let mut poly: Vec<CycloScalar> = coeffs.into_iter().map(|x| -x).collect();
            poly.push(CycloScalar::one(f));
            return poly;
        }
        powers.push(next);
    }
}

fn lagrange_idempotents(
    alg: &GradedAlgebra,
    unit: &SparseVec,
    c: &SparseVec,
    roots: &[CycloScalar],
) -> Result<Vec<SparseVec>> {
    let mut out = Vec::with_capacity(roots.len());
    for (i, li) in roots.iter().enumerate() {
        let mut e = unit.clone();
        for (j, lj) in roots.iter().enumerate() {
            if i == j {
                continue;
            }
            let factor = c.sub(&unit.scale(lj));
            let denom = (li - lj).inverse()?;
            e = alg.mul(&e, &factor).scale(&denom);
        }
        out.push(e);
    }
    Ok(out)
}

fn verify_idempotents(alg: &GradedAlgebra, unit: &SparseVec, idems: &[SparseVec]) -> Result<()> {
    let fail = |detail: &str| Error::SplittingFailure {
        block: 0,
        detail: detail.into(),
    };
    let mut sum = SparseVec::new();
    for (i, e) in idems.iter().enumerate() {
        if e.is_zero() || alg.mul(e, e) != *e {
            return Err(fail("candidate is not a nonzero idempotent"));
        }
        for f in &idems[i + 1..] {
            if !alg.mul(e, f).is_zero() || !alg.mul(f, e).is_zero() {
                return Err(fail("idempotents are not orthogonal"));
            }
        }
        for j in 0..alg.dim() {
            let b = alg.basis_vector(j);
            if alg.mul(e, &b) != alg.mul(&b, e) {
                return Err(fail("idempotent is not central"));
            }
        }
        sum = sum.add(e);
    }
    if sum != *unit {
        return Err(fail("idempotents do not sum to the identity"));
    }
    Ok(())
}

fn block_space(alg: &GradedAlgebra, e: &SparseVec) -> Subspace {
    let mut s = Subspace::zero(alg.dim());
    for j in 0..alg.dim() {
        s.insert(alg.mul_basis_right(e, j));
    }
    s
}

fn sort_idempotents(alg: &GradedAlgebra, idems: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut keyed: Vec<(usize, String, SparseVec)> = idems
        .into_iter()
        .map(|e| (block_space(alg, &e).dim(), format!("{e:?}"), e))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, _, e)| e).collect()
}

/// Block structure of a split semisimple algebra.
#[derive(Clone, Debug)]
pub struct WedderburnReport {
    /// Block degrees `d_i`, ascending.
    pub degrees: Vec<usize>,
    /// Central primitive idempotents, in the order of `degrees`.
    pub idempotents: Vec<SparseVec>,
    /// Every idempotent passed the exact checks.
    pub certified: bool,
}

impl WedderburnReport {
    pub fn blocks(&self) -> usize {
        self.degrees.len()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// Wedderburn block degrees of the ungraded algebra underlying `a`.
pub fn wedderburn_degrees(a: &GradedAlgebra) -> Result<WedderburnReport> {
    let alg = a.forget_grading();
    let rad = alg.graded_radical()?;
    if !rad.is_zero() {
        return Err(Error::NotSemisimple(rad.dim()));
    }
    let alg = alg.with_unit()?;
    let center = alg.center();
    let idempotents = primitive_idempotents(&alg, &center)?;
    let mut degrees = Vec::with_capacity(idempotents.len());
    for (block, e) in idempotents.iter().enumerate() {
        let dim = block_space(&alg, e).dim();
        let d = dim.sqrt();
        if d * d != dim {
            return Err(Error::SplittingFailure {
                block,
                detail: format!("block of dimension {dim} is not a full matrix algebra"),
            });
        }
        degrees.push(d);
    }
    Ok(WedderburnReport {
        degrees,
        idempotents,
        certified: true,
    })
}

/// PI degree of a split semisimple algebra: twice the largest block degree.
pub fn pi_degree_semisimple(a: &GradedAlgebra) -> Result<usize> {
    Ok(2 * wedderburn_degrees(a)?.max_degree())
}

/// `b(G)`, the largest block degree of `FG` over `Q(ζ_{exp G})`.
pub fn b_of_group(g: &std::sync::Arc<FiniteGroup>) -> Result<usize> {
    let f = crate::cyclo::field(g.exponent() as u32);
    Ok(wedderburn_degrees(&group_algebra(g, &f))?.max_degree())
}

/// `exp(FG) = b(G)²`.
pub fn exp_group_algebra(g: &std::sync::Arc<FiniteGroup>) -> Result<usize> {
    let b = b_of_group(g)?;
    Ok(b * b)
}

/// Exponent together with the chain of semisimple components realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentReport {
    pub exponent: usize,
    /// Indices into `component_dims`, in chain order.
    pub witness: Vec<usize>,
    /// Dimensions of the simple components of `A/J`.
    pub component_dims: Vec<usize>,
}

/// Giambruno–Zaicev exponent.
///
/// The central primitive idempotents of `A/J` are lifted to orthogonal
/// idempotents `ê_i` of `A`; the exponent is the largest `Σ dim B_{i_j}` over
/// chains of distinct indices with `ê_{i₁} A ê_{i₂} A ⋯ A ê_{i_k} ≠ 0`.
pub fn gz_exponent(a: &GradedAlgebra) -> Result<ExponentReport> {
    let alg = a.forget_grading();
    let rad = alg.graded_radical()?;
    let quot = alg.quotient_by(&rad);
    if quot.dim() == 0 {
        return Ok(ExponentReport {
            exponent: 0,
            witness: Vec::new(),
            component_dims: Vec::new(),
        });
    }
    let quot = quot.with_unit()?;
    let center = quot.center();
    let idems = primitive_idempotents(&quot, &center)?;
    let component_dims: Vec<usize> = idems.iter().map(|e| block_space(&quot, e).dim()).collect();

    // classes in A/J are represented by the non-pivot basis vectors of A
    let keep: Vec<usize> = {
        let pivots: HashSet<usize> = rad.pivots().collect();
        (0..alg.dim()).filter(|k| !pivots.contains(k)).collect()
    };
    let mut lifted: Vec<SparseVec> = Vec::with_capacity(idems.len());
    let mut taken = SparseVec::new();
    for e in &idems {
        let x = e.map_indices(|k| keep[k]);
        // (1 − E) x (1 − E) with E the sum of the idempotents lifted so far
        let ex = alg.mul(&taken, &x);
        let xe = alg.mul(&x, &taken);
        let exe = alg.mul(&ex, &taken);
        let corner = x.sub(&ex).sub(&xe).add(&exe);
        let lift = newton_lift(&alg, corner)?;
        taken = taken.add(&lift);
        lifted.push(lift);
    }

    let basis: Vec<SparseVec> = (0..alg.dim()).map(|i| alg.basis_vector(i)).collect();
    let mut best = (0usize, Vec::new());
    for start in 0..lifted.len() {
        let span = Subspace::spanned_by(alg.dim(), [&lifted[start]]);
        chain_search(&alg, &basis, &lifted, &component_dims, span, vec![start], &mut best);
    }
    Ok(ExponentReport {
        exponent: best.0,
        witness: best.1,
        component_dims,
    })
}

// e ← 3e² − 2e³ until e² = e; converges because e² − e is nilpotent.
fn newton_lift(alg: &GradedAlgebra, mut e: SparseVec) -> Result<SparseVec> {
    let f = alg.field();
    let three = CycloScalar::from_int(f, 3);
    let minus_two = CycloScalar::from_int(f, -2);
    for _ in 0..64 {
        let e2 = alg.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = alg.mul(&e2, &e);
        let mut next = e2.scale(&three);
        next.add_scaled(&e3, &minus_two);
        e = next;
    }
    Err(Error::InvalidData("idempotent lifting did not converge".into()))
}

fn chain_search(
    alg: &GradedAlgebra,
    basis: &[SparseVec],
    lifted: &[SparseVec],
    dims: &[usize],
    span: Subspace,
    chain: Vec<usize>,
    best: &mut (usize, Vec<usize>),
) {
    let total: usize = chain.iter().map(|&i| dims[i]).sum();
    if total > best.0 || (total == best.0 && chain.len() < best.1.len()) {
        *best = (total, chain.clone());
    }
    let remaining: usize = (0..lifted.len()).filter(|i| !chain.contains(i)).map(|i| dims[i]).sum();
    if total + remaining <= best.0 {
        return;
    }
    // S·A (including the identity, when A has one, via S itself)
    let mut sa = Subspace::zero(alg.dim());
    for s in span.basis() {
        if alg.unit().is_some() {
            sa.insert(s.clone());
        }
        for b in basis {
            sa.insert(alg.mul(s, b));
        }
    }
    for next in 0..lifted.len() {
        if chain.contains(&next) {
            continue;
        }
        let mut ext = Subspace::zero(alg.dim());
        for s in sa.basis() {
            ext.insert(alg.mul(s, &lifted[next]));
        }
        if ext.is_zero() {
            continue;
        }
        let mut c = chain.clone();
        c.push(next);
        chain_search(alg, basis, lifted, dims, ext, c, best);
    }
}

/// Limits on the codimension computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest `n` attempted.
    pub max_degree: usize,
    /// Largest number of basis tuples `dim^n` evaluated.
    pub max_tuples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 6,
            max_tuples: 10_000_000,
        }
    }
}

/// `c_n(A)`: the rank of the evaluation matrix of the `n!` multilinear
/// monomials on basis tuples.
pub fn codimension(a: &GradedAlgebra, n: usize, budget: Budget) -> Result<usize> {
    codimension_with(a, n, budget, Mode::default())
}

pub fn codimension_with(a: &GradedAlgebra, n: usize, budget: Budget, mode: Mode) -> Result<usize> {
    assert!(n >= 1, "codimension needs n >= 1");
    if n > budget.max_degree {
        return Err(Error::BudgetExceeded(format!("n = {n} exceeds the degree cap {}", budget.max_degree)));
    }
    let dim = a.dim();
    let tuples = (dim as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if tuples > budget.max_tuples {
        return Err(Error::BudgetExceeded(format!(
            "{dim}^{n} = {tuples} basis tuples exceeds the cap {}",
            budget.max_tuples
        )));
    }
    let full: usize = (1..=n).product();
    if dim == 0 {
        return Ok(0);
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let perm_index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut rows = Subspace::zero(full);
    let mut seen: HashSet<SparseVec> = HashSet::new();
    const CHUNK: u64 = 64;
    let chunks = tuples.div_ceil(CHUNK) as usize;
    // chunks are generated in parallel and consumed in order by one writer
    let batch = 64usize;
    let mut start = 0usize;
    while start < chunks {
        let end = (start + batch).min(chunks);
        let columns: Vec<Vec<SparseVec>> = par::map(mode, start..end, |c| {
            let lo = c as u64 * CHUNK;
            let hi = (lo + CHUNK).min(tuples);
            let mut out = Vec::new();
            for code in lo..hi {
                out.extend(tuple_columns(a, n, code, &perm_index));
            }
            out
        });
        for col in columns.into_iter().flatten() {
            let key = col.normalized();
            if seen.insert(key.clone()) {
                rows.insert(key);
                if rows.dim() == full {
                    return Ok(full);
                }
            }
        }
        start = end;
    }
    Ok(rows.dim())
}

// Columns (one per output coordinate) contributed by the basis tuple `code`:
// entry σ is the coefficient in b_{t_σ(1)} ⋯ b_{t_σ(n)}.
fn tuple_columns(
    a: &GradedAlgebra,
    n: usize,
    mut code: u64,
    perm_index: &std::collections::HashMap<Vec<usize>, usize>,
) -> Vec<SparseVec> {
    let dim = a.dim() as u64;
    let mut tuple = vec![0usize; n];
    for slot in tuple.iter_mut().rev() {
        *slot = (code % dim) as usize;
        code /= dim;
    }
    let mut by_coord: std::collections::BTreeMap<usize, Vec<(usize, CycloScalar)>> = Default::default();
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n];
    walk_prefixes(a, &tuple, None, &mut prefix, &mut used, &mut |perm, value| {
        let row = perm_index[perm];
        for (k, c) in value.iter() {
            by_coord.entry(k).or_default().push((row, c.clone()));
        }
    });
    by_coord.into_values().map(SparseVec::from_pairs).collect()
}

// DFS over permutation prefixes sharing partial products; zero prefixes are pruned.
fn walk_prefixes(
    a: &GradedAlgebra,
    tuple: &[usize],
    value: Option<&SparseVec>,
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    emit: &mut dyn FnMut(&Vec<usize>, &SparseVec),
) {
    if prefix.len() == tuple.len() {
        if let Some(v) = value {
            emit(prefix, v);
        }
        return;
    }
    for i in 0..tuple.len() {
        if used[i] {
            continue;
        }
        let next = match value {
            None => a.basis_vector(tuple[i]),
            Some(v) => a.mul_basis_right(v, tuple[i]),
        };
        if next.is_zero() {
            continue;
        }
        used[i] = true;
        prefix.push(i);
        walk_prefixes(a, tuple, Some(&next), prefix, used, emit);
        prefix.pop();
        used[i] = false;
    }
}

/// Least `n ≤ cap` with `c_n(A) < n!`, or `None` if every `n ≤ cap` is full.
pub fn min_identity_degree(a: &GradedAlgebra, cap: usize, budget: Budget) -> Result<Option<usize>> {
    let mut factorial = 1usize;
    for n in 1..=cap {
        factorial *= n;
        if codimension(a, n, budget)? < factorial {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Instance of "a multilinear identity of degree `n` on a strongly graded
/// algebra forces the grading group to be `n`-permutable".
#[derive(Clone, Debug)]
pub struct PermutabilityLink {
    pub n: usize,
    pub codimension: usize,
    pub permutability: PermutabilityReport,
}

pub fn permutability_from_identity(a: &GradedAlgebra, n: usize, budget: Budget) -> Result<PermutabilityLink> {
    let c = codimension(a, n, budget)?;
    let full: usize = (1..=n).product();
    if c >= full {
        return Err(Error::HypothesisUnverified(format!("no identity of degree {n}: c_{n} = {c} = {n}!")));
    }
    if !a.is_strong() {
        return Err(Error::HypothesisUnverified("grading is not strong".into()));
    }
    Ok(PermutabilityLink {
        n,
        codimension: c,
        permutability: is_n_permutable(a.group(), n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::TwoCocycle;
    use crate::cyclo::field;
    use crate::galg::{matrix_algebra, twisted_group_algebra, upper_triangular_full, upper_triangular_scalar_diag};
    use crate::groups::cocycle_from_extension;

    #[test]
    fn abelian_group_algebras_are_commutative_blocks() {
        for g in [FiniteGroup::cyclic(5), FiniteGroup::elementary_abelian(2, 2), FiniteGroup::cyclic(6)] {
            let f = field(g.exponent() as u32);
            let w = wedderburn_degrees(&group_algebra(&g, &f)).unwrap();
            assert_eq!(w.degrees, vec![1; g.order()]);
            assert!(w.certified);
            assert_eq!(exp_group_algebra(&g).unwrap(), 1);
        }
    }

    #[test]
    fn nonabelian_b_values() {
        assert_eq!(b_of_group(&FiniteGroup::symmetric(3)).unwrap(), 2);
        let f = field(6);
        let w = wedderburn_degrees(&group_algebra(&FiniteGroup::symmetric(3), &f)).unwrap();
        assert_eq!(w.degrees, vec![1, 1, 2]);
        assert_eq!(b_of_group(&FiniteGroup::quaternion8()).unwrap(), 2);
        assert_eq!(b_of_group(&FiniteGroup::dihedral(4)).unwrap(), 2);
    }

    #[test]
    fn a4_blocks() {
        let a4 = FiniteGroup::alternating(4);
        let f = field(6);
        let w = wedderburn_degrees(&group_algebra(&a4, &f)).unwrap();
        assert_eq!(w.degrees, vec![1, 1, 1, 3]);
        assert_eq!(pi_degree_semisimple(&group_algebra(&a4, &f)).unwrap(), 6);

        let sl = FiniteGroup::sl2(3);
        let z = sl.center();
        let gen = z.members().iter().copied().find(|&x| x != sl.identity()).unwrap();
        let (c, _) = cocycle_from_extension(&z, gen).unwrap();
        let t = twisted_group_algebra(&c, &f).unwrap();
        let w = wedderburn_degrees(&t).unwrap();
        assert_eq!(w.degrees, vec![2, 2, 2]);
        assert_eq!(pi_degree_semisimple(&t).unwrap(), 4);
    }

    #[test]
    fn split_over_too_small_field_fails() {
        // FC₃ over Q: x² + x + 1 has no rational roots
        let g = FiniteGroup::cyclic(3);
        let err = wedderburn_degrees(&group_algebra(&g, &field(1))).unwrap_err();
        assert!(matches!(err, Error::SplittingFailure { .. }));
    }

    #[test]
    fn exponents() {
        let f = field(1);
        for d in 1..=3 {
            let r = gz_exponent(&matrix_algebra(d, &f)).unwrap();
            assert_eq!(r.exponent, d * d);
        }
        let c1 = FiniteGroup::cyclic(1);
        for n in 1..=4 {
            let ut = upper_triangular_full(&c1, &vec![0; n], &f).unwrap();
            assert_eq!(gz_exponent(&ut).unwrap().exponent, n);
        }
        let c2 = FiniteGroup::cyclic(2);
        let a = upper_triangular_scalar_diag(&c2, &[0, 1, 0, 1, 0], &field(2)).unwrap();
        assert_eq!(gz_exponent(&a).unwrap().exponent, 1);
    }

    #[test]
    fn exponent_of_semisimple_is_max_block_squared() {
        let f = field(6);
        for g in [FiniteGroup::symmetric(3), FiniteGroup::cyclic(6)] {
            let a = group_algebra(&g, &f);
            let m = wedderburn_degrees(&a).unwrap().max_degree();
            assert_eq!(gz_exponent(&a).unwrap().exponent, m * m);
        }
        let h = twisted_group_algebra(&TwoCocycle::heisenberg(2, 1), &field(2)).unwrap();
        assert_eq!(gz_exponent(&h).unwrap().exponent, 4);
    }

    // Independent oracle: the evaluation matrix with integer entries, ranked
    // by fraction-free elimination. Basis products of matrix units and of the
    // one-dimensional algebra F are 0/1, so integer arithmetic is exact.
    fn oracle_codimension(dim: usize, prod: &dyn Fn(usize, usize) -> Option<usize>, n: usize) -> usize {
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let mut cols: Vec<Vec<i128>> = Vec::new();
        for code in 0..dim.pow(n as u32) {
            let mut c = code;
            let mut t = vec![0; n];
            for s in t.iter_mut().rev() {
                *s = c % dim;
                c /= dim;
            }
            for k in 0..dim {
                let col: Vec<i128> = perms
                    .iter()
                    .map(|p| {
                        let mut acc = Some(t[p[0]]);
                        for &i in &p[1..] {
                            acc = acc.and_then(|x| prod(x, t[i]));
                        }
                        i128::from(acc == Some(k))
                    })
                    .collect();
                cols.push(col);
            }
        }
        bareiss_rank(cols)
    }

    fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for k in c + 1..cols {
                    m[r][k] = (m[r][k] * m[rank][c] - m[rank][k] * m[r][c]) / prev;
                }
                m[r][c] = 0;
            }
            prev = m[rank][c];
            rank += 1;
        }
        rank
    }

    #[test]
    fn codimensions_match_oracle() {
        let f = field(1);
        let one = matrix_algebra(1, &f);
        for n in 1..=5 {
            assert_eq!(codimension(&one, n, Budget::default()).unwrap(), 1);
        }
        let m2 = matrix_algebra(2, &f);
        // e_ij with index 2i + j
        let unit_prod = |a: usize, b: usize| (a % 2 == b / 2).then_some((a / 2) * 2 + b % 2);
        for n in 1..=4 {
            assert_eq!(
                codimension(&m2, n, Budget::default()).unwrap(),
                oracle_codimension(4, &unit_prod, n),
                "n = {n}"
            );
        }
        assert_eq!(codimension(&m2, 3, Budget::default()).unwrap(), 6);
        assert!(codimension(&m2, 4, Budget::default()).unwrap() < 24);

        // UT₂: e11, e12, e22
        let ut2 = upper_triangular_full(&FiniteGroup::cyclic(1), &[0, 0], &f).unwrap();
        let ij = [(0, 0), (0, 1), (1, 1)];
        let ut_prod = |a: usize, b: usize| {
            let ((i, j), (k, l)) = (ij[a], ij[b]);
            (j == k).then(|| ij.iter().position(|&x| x == (i, l)).unwrap())
        };
        let seq: Vec<usize> = (1..=5).map(|n| codimension(&ut2, n, Budget::default()).unwrap()).collect();
        let oracle: Vec<usize> = (1..=5).map(|n| oracle_codimension(3, &ut_prod, n)).collect();
        assert_eq!(seq, oracle);
        // closed form 2^{n-1}(n-2) + 2
        assert_eq!(seq, vec![1, 2, 6, 18, 50]);
    }

    #[test]
    fn min_identity_degrees() {
        let f = field(1);
        assert_eq!(min_identity_degree(&matrix_algebra(1, &f), 4, Budget::default()).unwrap(), Some(2));
        assert_eq!(min_identity_degree(&matrix_algebra(2, &f), 5, Budget::default()).unwrap(), Some(4));
    }

    #[test]
    fn budget_is_enforced() {
        let m2 = matrix_algebra(2, &field(1));
        assert!(matches!(codimension(&m2, 7, Budget::default()), Err(Error::BudgetExceeded(_))));
        let tight = Budget {
            max_degree: 6,
            max_tuples: 100,
        };
        assert!(matches!(codimension(&m2, 4, tight), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn modes_agree() {
        let m2 = matrix_algebra(2, &field(1));
        for n in 2..=4 {
            assert_eq!(
                codimension_with(&m2, n, Budget::default(), Mode::Sequential).unwrap(),
                codimension_with(&m2, n, Budget::default(), Mode::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn permutability_link() {
        let c4 = FiniteGroup::cyclic(4);
        let a = group_algebra(&c4, &field(4));
        let link = permutability_from_identity(&a, 2, Budget::default()).unwrap();
        assert!(link.permutability.holds);

        let s3 = FiniteGroup::symmetric(3);
        let fs3 = group_algebra(&s3, &field(6));
        let d = min_identity_degree(&fs3, 4, Budget::default()).unwrap().unwrap();
        let link = permutability_from_identity(&fs3, d, Budget::default()).unwrap();
        assert!(link.permutability.holds);

        let c2 = FiniteGroup::cyclic(2);
        let ut = upper_triangular_full(&c2, &[0, 1], &field(2)).unwrap();
        assert!(matches!(
            permutability_from_identity(&ut, 3, Budget::default()),
            Err(Error::HypothesisUnverified(_))
        ));
    }
}
