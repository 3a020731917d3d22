//! Finite groups as Cayley tables.
//!
//! Every group is stored with its full multiplication table, so all predicates
//! (associativity, normality, permutability) are decided by exhaustive scans.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use itertools::Itertools;

use crate::cocycles::TwoCocycle;
use crate::error::{Error, Result};
use crate::par::{self, Mode};

/// A finite group given by its Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    // row-major: table[a * order + b] = a·b
    table: Vec<usize>,
    inverses: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl FiniteGroup {
    /// Validates a Cayley table: square, closed, associative, with identity
    /// and inverses.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Arc<Self>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if let Some(row) = table.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidGroup(format!("row {row} does not have {n} entries")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        Self::from_flat(n, flat, labels)
    }

    /// Group on `0..n` with product `mul`; validated like [`Self::from_table`].
    pub fn from_mul<F>(n: usize, mul: F, labels: Option<Vec<String>>) -> Result<Arc<Self>>
    where
        F: Fn(usize, usize) -> usize,
    {
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(Error::InvalidGroup(format!("{a}·{b} = {c} out of range")));
                }
                flat.push(c);
            }
        }
        Self::from_flat(n, flat, labels)
    }

    /// Closure of `generators` under `mul`, with the identity as element 0 and
    /// the rest in the order of discovery.
    pub fn from_generators<T, F, L>(identity: T, generators: &[T], mul: F, label: L) -> Result<Arc<Self>>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in generators {
                let x = mul(&elems[i], g);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            i += 1;
        }
        let labels = elems.iter().map(&label).collect();
        Self::from_mul(elems.len(), |a, b| index[&mul(&elems[a], &elems[b])], Some(labels))
    }

    fn from_flat(n: usize, table: Vec<usize>, labels: Option<Vec<String>>) -> Result<Arc<Self>> {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a * n + b] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            if table[inv * n + a] != identity {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
            inverses[a] = inv;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::InvalidGroup(format!("{} labels for {} elements", l.len(), n)));
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(Arc::new(FiniteGroup {
            order: n,
            table,
            inverses,
            identity,
            labels,
        }))
    }

    pub fn cyclic(n: usize) -> Arc<Self> {
        assert!(n >= 1, "cyclic group of order 0");
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        Self::from_mul(n, |a, b| (a + b) % n, Some(labels)).expect("cyclic group is valid")
    }

    /// `A × B`; the pair `(a, b)` has index `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Arc<Self> {
        let nb = b.order;
        let labels = (0..a.order * nb)
            .map(|i| format!("({},{})", a.labels[i / nb], b.labels[i % nb]))
            .collect();
        Self::from_mul(
            a.order * nb,
            |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb),
            Some(labels),
        )
        .expect("direct product of groups is a group")
    }

    /// `C_p^r`, coordinates read most significant first.
    pub fn elementary_abelian(p: usize, r: usize) -> Arc<Self> {
        let mut g = Self::cyclic(1);
        for _ in 0..r {
            g = Self::direct_product(&g, &Self::cyclic(p));
        }
        if r == 0 {
            return g;
        }
        // drop the leading trivial factor from labels
        let labels: Vec<String> = (0..g.order)
            .map(|mut i| {
                let mut digits = vec![0; r];
                for d in digits.iter_mut().rev() {
                    *d = i % p;
                    i /= p;
                }
                format!("({})", digits.iter().join(","))
            })
            .collect();
        Self::from_flat(g.order, g.table.clone(), Some(labels)).expect("relabelling preserves validity")
    }

    /// Permutations of `0..n` in lexicographic order (identity first);
    /// `(p·q)(i) = p(q(i))`.
    pub fn symmetric(n: usize) -> Arc<Self> {
        Self::permutation_group(n, |_| true)
    }

    /// Even permutations of `0..n`, same ordering as [`Self::symmetric`].
    pub fn alternating(n: usize) -> Arc<Self> {
        Self::permutation_group(n, |p| parity(p) == 0)
    }

    fn permutation_group(n: usize, keep: impl Fn(&[usize]) -> bool) -> Arc<Self> {
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).filter(|p| keep(p)).collect();
        let index: HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let labels = perms.iter().map(|p| format!("[{}]", p.iter().join(""))).collect();
        Self::from_mul(
            perms.len(),
            |a, b| {
                let c: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
                index[c.as_slice()]
            },
            Some(labels),
        )
        .expect("permutation group is valid")
    }

    /// Dihedral group of order `2n`; `r^k s^f` has index `f·n + k`.
    pub fn dihedral(n: usize) -> Arc<Self> {
        assert!(n >= 1, "dihedral group needs n >= 1");
        let labels = (0..2 * n)
            .map(|i| {
                let (f, k) = (i / n, i % n);
                match (k, f) {
                    (0, 0) => "e".to_string(),
                    (0, _) => "s".to_string(),
                    (_, 0) => format!("r^{k}"),
                    _ => format!("r^{k}s"),
                }
            })
            .collect();
        Self::from_mul(
            2 * n,
            |x, y| {
                let (f, a) = (x / n, x % n);
                let (g, b) = (y / n, y % n);
                let k = if f == 0 { (a + b) % n } else { (a + n - b) % n };
                ((f + g) % 2) * n + k
            },
            Some(labels),
        )
        .expect("dihedral group is valid")
    }

    /// `{±1, ±i, ±j, ±k}` in that order.
    pub fn quaternion8() -> Arc<Self> {
        // unit products: UNIT[a][b] = (sign, unit) for a, b in {1, i, j, k}
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_mul(
            8,
            |x, y| {
                let (u, su) = (x / 2, x % 2 == 1);
                let (v, sv) = (y / 2, y % 2 == 1);
                let (s, w) = UNIT[u][v];
                2 * w + usize::from(s ^ su ^ sv)
            },
            Some(labels),
        )
        .expect("quaternion group is valid")
    }

    /// `SL(2, p)` as 2×2 matrices over `Z/p`, identity first.
    pub fn sl2(p: usize) -> Arc<Self> {
        assert!(p >= 2, "SL(2, p) needs p >= 2");
        type M = [usize; 4];
        let mul = |x: &M, y: &M| -> M {
            [
                (x[0] * y[0] + x[1] * y[2]) % p,
                (x[0] * y[1] + x[1] * y[3]) % p,
                (x[2] * y[0] + x[3] * y[2]) % p,
                (x[2] * y[1] + x[3] * y[3]) % p,
            ]
        };
        let gens: [M; 2] = [[1, 1, 0, 1], [1, 0, 1, 1]];
        Self::from_generators([1, 0, 0, 1], &gens, mul, |m| {
            format!("[{} {};{} {}]", m[0], m[1], m[2], m[3])
        })
        .expect("SL(2, p) is a group")
    }

    /// The group on pairs `(z, g)`, `z ∈ Z/m`, with
    /// `(z₁,g₁)(z₂,g₂) = (z₁+z₂+a(g₁,g₂), g₁g₂)`; `(z, g)` has index `g·m + z`.
    pub fn central_extension(a: &TwoCocycle) -> Result<Arc<Self>> {
        a.check()?;
        let g = a.group();
        let m = a.modulus() as usize;
        let labels = (0..g.order * m)
            .map(|i| format!("({},{})", i % m, g.labels[i / m]))
            .collect();
        Self::from_mul(
            g.order * m,
            |x, y| {
                let (g1, z1) = (x / m, x % m);
                let (g2, z2) = (y / m, y % m);
                g.mul(g1, g2) * m + (z1 + z2 + a.exp(g1, g2) as usize) % m
            },
            Some(labels),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of the element with the given label.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn center(self: &Arc<Self>) -> Subgroup {
        let members = (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.commutes(a, b)))
            .collect();
        Subgroup {
            parent: self.clone(),
            members,
        }
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = vec![self.identity];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
            i += 1;
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// A small generating set, chosen greedily by decreasing element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in by_order {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }
}

fn parity(p: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

/// A subgroup, stored as the sorted set of its members in the parent.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl Subgroup {
    /// Checks closure and returns the subgroup with sorted members.
    pub fn new(parent: &Arc<FiniteGroup>, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.iter().any(|&x| x >= parent.order) {
            return Err(Error::NotSubgroup("element out of range".into()));
        }
        if !set.contains(&parent.identity) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("not closed: {a}·{b}")));
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            members: set.into_iter().collect(),
        })
    }

    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: parent.closure(gens),
        }
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::generated(parent, &[])
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: (0..parent.order).collect(),
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order / self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| g.commutes(a, b)))
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order).all(|x| {
            self.members
                .iter()
                .all(|&h| self.contains(g.mul(g.mul(g.inv(x), h), x)))
        })
    }

    pub fn is_central(&self) -> bool {
        let g = &self.parent;
        self.members
            .iter()
            .all(|&h| (0..g.order).all(|x| g.commutes(h, x)))
    }

    /// The subgroup as a group in its own right; element `i` of the result is
    /// `members()[i]` of the parent.
    pub fn as_group(&self) -> Arc<FiniteGroup> {
        let pos: HashMap<usize, usize> = self.members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let labels = self.members.iter().map(|&m| self.parent.labels[m].clone()).collect();
        FiniteGroup::from_mul(
            self.members.len(),
            |a, b| pos[&self.parent.mul(self.members[a], self.members[b])],
            Some(labels),
        )
        .expect("a subgroup is a group")
    }

    /// Position of a parent element within `members()`.
    pub fn position(&self, a: usize) -> Option<usize> {
        self.members.binary_search(&a).ok()
    }
}

/// Every subgroup of `g`, ordered by size then members.
///
/// Each subgroup is a join of cyclic subgroups, so closing the set of cyclic
/// subgroups under joins with a single cyclic subgroup reaches all of them.
pub fn subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let cyclic: BTreeSet<Vec<usize>> = (0..g.order()).map(|a| g.closure(&[a])).collect();
    let cyclic_gens: Vec<usize> = {
        let mut seen = BTreeSet::new();
        (0..g.order())
            .filter(|&a| seen.insert(g.closure(&[a])))
            .collect()
    };
    let mut found: BTreeSet<Vec<usize>> = cyclic.clone();
    let mut frontier: Vec<Vec<usize>> = cyclic.into_iter().collect();
    while let Some(h) = frontier.pop() {
        for &c in &cyclic_gens {
            if h.binary_search(&c).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(c);
            let join = g.closure(&gens);
            if found.insert(join.clone()) {
                frontier.push(join);
            }
        }
    }
    let mut all: Vec<Vec<usize>> = found.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.into_iter()
        .map(|members| Subgroup {
            parent: g.clone(),
            members,
        })
        .collect()
}

/// Subgroups of index at most `d`.
pub fn subgroups_up_to_index(g: &Arc<FiniteGroup>, d: usize) -> Vec<Subgroup> {
    subgroups(g).into_iter().filter(|h| h.index() <= d).collect()
}

/// An abelian subgroup of least index.
pub fn min_abelian_subgroup(g: &Arc<FiniteGroup>) -> Subgroup {
    subgroups(g)
        .into_iter()
        .rev()
        .find(Subgroup::is_abelian)
        .expect("the trivial subgroup is abelian")
}

/// `γ(G)`, the least index of an abelian subgroup.
pub fn min_abelian_index(g: &Arc<FiniteGroup>) -> usize {
    min_abelian_subgroup(g).index()
}

/// Right cosets `Hg`, ordered by least element; each coset is sorted.
pub fn right_cosets(h: &Subgroup) -> Vec<Vec<usize>> {
    let g = &h.parent;
    let mut assigned = vec![false; g.order];
    let mut cosets = Vec::new();
    for x in 0..g.order {
        if assigned[x] {
            continue;
        }
        let mut coset: Vec<usize> = h.members.iter().map(|&m| g.mul(m, x)).collect();
        coset.sort_unstable();
        for &y in &coset {
            assigned[y] = true;
        }
        cosets.push(coset);
    }
    cosets
}

/// One representative per right coset: the identity for `H` itself and the
/// least element otherwise.
pub fn coset_reps(h: &Subgroup) -> Vec<usize> {
    let e = h.parent.identity;
    right_cosets(h)
        .into_iter()
        .map(|c| if c.contains(&e) { e } else { c[0] })
        .collect()
}

/// Index of the right coset containing each element, in the order of
/// [`right_cosets`].
pub fn coset_index(h: &Subgroup) -> Vec<usize> {
    let mut idx = vec![0; h.parent.order];
    for (i, c) in right_cosets(h).iter().enumerate() {
        for &x in c {
            idx[x] = i;
        }
    }
    idx
}

/// `G/N` with the projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    pub projection: Vec<usize>,
}

pub fn quotient(n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let g = &n.parent;
    let cosets = right_cosets(n);
    let projection = coset_index(n);
    let labels = cosets
        .iter()
        .map(|c| {
            let rep = if c.contains(&g.identity) { g.identity } else { c[0] };
            format!("{}N", g.labels[rep])
        })
        .collect();
    let group = FiniteGroup::from_mul(
        cosets.len(),
        |a, b| projection[g.mul(cosets[a][0], cosets[b][0])],
        Some(labels),
    )?;
    Ok(Quotient { group, projection })
}

/// Outcome of a permutability scan; `witness` is the lexicographically first
/// tuple violating the condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutabilityReport {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

/// `P_n`: every `n`-tuple has a nontrivial permutation with the same product.
pub fn is_n_permutable(g: &FiniteGroup, n: usize) -> PermutabilityReport {
    is_n_permutable_with(g, n, Mode::default())
}

pub fn is_n_permutable_with(g: &FiniteGroup, n: usize, mode: Mode) -> PermutabilityReport {
    permutability_scan(g, n, mode, Condition::Permutable)
}

/// `Q_n`: every `n`-tuple has two distinct permutations with equal products.
pub fn is_n_rewritable(g: &FiniteGroup, n: usize) -> PermutabilityReport {
    is_n_rewritable_with(g, n, Mode::default())
}

pub fn is_n_rewritable_with(g: &FiniteGroup, n: usize, mode: Mode) -> PermutabilityReport {
    permutability_scan(g, n, mode, Condition::Rewritable)
}

#[derive(Clone, Copy)]
enum Condition {
    Permutable,
    Rewritable,
}

fn permutability_scan(g: &FiniteGroup, n: usize, mode: Mode, cond: Condition) -> PermutabilityReport {
    assert!(n >= 1, "permutability needs n >= 1");
    let order = g.order;
    // identity permutation first
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    // the first `split` coordinates are distributed over workers
    let split = n.min(2);
    let outer = order.pow(split as u32);
    let inner = order.pow((n - split) as u32);
    let witness = par::find_first(mode, 0..outer, |hi| {
        let mut tuple = vec![0; n];
        let mut products = Vec::with_capacity(perms.len());
        for lo in 0..inner {
            let mut code = hi * inner + lo;
            for slot in tuple.iter_mut().rev() {
                *slot = code % order;
                code /= order;
            }
            // a repeated entry gives a nontrivial permutation fixing the word
            if (1..n).any(|i| tuple[..i].contains(&tuple[i])) {
                continue;
            }
            let ok = match cond {
                Condition::Permutable => {
                    let base = g.product(tuple.iter().copied());
                    perms[1..]
                        .iter()
                        .any(|p| g.product(p.iter().map(|&i| tuple[i])) == base)
                }
                Condition::Rewritable => {
                    products.clear();
                    products.extend(perms.iter().map(|p| g.product(p.iter().map(|&i| tuple[i]))));
                    products.sort_unstable();
                    products.windows(2).any(|w| w[0] == w[1])
                }
            };
            if !ok {
                return Some(tuple);
            }
        }
        None
    });
    PermutabilityReport {
        holds: witness.is_none(),
        witness,
    }
}

/// An isomorphism `a → b` as an element map, if one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order != b.order {
        return None;
    }
    let profile = |g: &FiniteGroup| {
        let mut orders: Vec<usize> = (0..g.order).map(|x| g.element_order(x)).collect();
        orders.sort_unstable();
        orders
    };
    if profile(a) != profile(b) || a.is_abelian() != b.is_abelian() {
        return None;
    }
    let gens = a.generators();
    // each element of `a` as (prefix element, generator) reached by BFS
    let mut word: Vec<Option<(usize, usize)>> = vec![None; a.order];
    let mut visit = vec![a.identity];
    let mut seen = vec![false; a.order];
    seen[a.identity] = true;
    let mut i = 0;
    while i < visit.len() {
        let x = visit[i];
        for (gi, &gen) in gens.iter().enumerate() {
            let y = a.mul(x, gen);
            if !seen[y] {
                seen[y] = true;
                word[y] = Some((x, gi));
                visit.push(y);
            }
        }
        i += 1;
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&gen| {
            let o = a.element_order(gen);
            (0..b.order).filter(|&y| b.element_order(y) == o).collect()
        })
        .collect();
    candidates.iter().multi_cartesian_product().find_map(|images| {
        let mut map = vec![usize::MAX; a.order];
        map[a.identity] = b.identity;
        for &x in &visit[1..] {
            let (prev, gi) = word[x].expect("every non-identity element has a BFS parent");
            map[x] = b.mul(map[prev], *images[gi]);
        }
        let mut hit = vec![false; b.order];
        for &y in &map {
            if hit[y] {
                return None;
            }
            hit[y] = true;
        }
        let hom = (0..a.order).all(|x| (0..a.order).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])));
        hom.then_some(map)
    })
}

pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Built-in groups: every abelian group of order at most 12, S3, D4, Q8, A4
/// and the Heisenberg extensions of order 8 and 27.
pub fn catalog() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let c = FiniteGroup::cyclic;
    let heis = |p| FiniteGroup::central_extension(&TwoCocycle::heisenberg(p, 1)).expect("valid cocycle");
    vec![
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", FiniteGroup::elementary_abelian(2, 2)),
        ("C5", c(5)),
        ("C6", c(6)),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C2xC4", FiniteGroup::direct_product(&c(2), &c(4))),
        ("C2xC2xC2", FiniteGroup::elementary_abelian(2, 3)),
        ("C9", c(9)),
        ("C3xC3", FiniteGroup::elementary_abelian(3, 2)),
        ("C10", c(10)),
        ("C11", c(11)),
        ("C12", c(12)),
        ("C2xC6", FiniteGroup::direct_product(&c(2), &c(6))),
        ("S3", FiniteGroup::symmetric(3)),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion8()),
        ("A4", FiniteGroup::alternating(4)),
        ("Heis2", heis(2)),
        ("Heis3", heis(3)),
    ]
}

/// The cocycle of the central extension `1 → Z → E → E/Z → 1`.
///
/// `generator` is the element of `Z` identified with `1 ∈ Z/m`. The section
/// picks the least element of each coset and the identity for `Z` itself, so
/// `a(g, h)` is defined by `s(g)s(h) = z^{a(g,h)} s(gh)`.
pub fn cocycle_from_extension(z: &Subgroup, generator: usize) -> Result<(TwoCocycle, Quotient)> {
    if !z.is_central() {
        return Err(Error::NotCentral("subgroup is not central".into()));
    }
    let e = &z.parent;
    let m = z.order();
    if !z.contains(generator) || e.element_order(generator) != m {
        return Err(Error::NotCentral("subgroup is not cyclic on the given generator".into()));
    }
    let mut log = vec![usize::MAX; e.order];
    let mut x = e.identity;
    for k in 0..m {
        log[x] = k;
        x = e.mul(x, generator);
    }
    let q = quotient(z)?;
    let cosets = right_cosets(z);
    let section: Vec<usize> = cosets
        .iter()
        .map(|c| if c.contains(&e.identity) { e.identity } else { c[0] })
        .collect();
    let nq = q.group.order();
    let mut exps = vec![vec![0u32; nq]; nq];
    for g in 0..nq {
        for h in 0..nq {
            let gh = q.group.mul(g, h);
            let zval = e.mul(e.mul(section[g], section[h]), e.inv(section[gh]));
            exps[g][h] = log[zval] as u32;
        }
    }
    let cocycle = TwoCocycle::new(&q.group, m as u32, exps)?;
    Ok((cocycle, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Power-set oracle: all subsets closed under multiplication.
    fn subgroups_by_power_set(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
        let n = g.order();
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if !set.contains(&g.identity()) {
                continue;
            }
            if set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))))
            {
                out.insert(set);
            }
        }
        out
    }

    fn small_catalog() -> Vec<Arc<FiniteGroup>> {
        vec![
            FiniteGroup::cyclic(1),
            FiniteGroup::cyclic(4),
            FiniteGroup::cyclic(6),
            FiniteGroup::elementary_abelian(2, 2),
            FiniteGroup::elementary_abelian(2, 3),
            FiniteGroup::symmetric(3),
            FiniteGroup::dihedral(4),
            FiniteGroup::quaternion8(),
        ]
    }

    #[test]
    fn constructors() {
        assert_eq!(FiniteGroup::cyclic(1).order(), 1);
        let a4 = FiniteGroup::alternating(4);
        assert_eq!(a4.order(), 12);
        assert!(!a4.is_abelian());
        let klein = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(klein.exponent(), 2);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::sl2(3).order(), 24);
        assert_eq!(FiniteGroup::sl2(3).center().order(), 2);
        let q8 = FiniteGroup::quaternion8();
        assert_eq!(q8.center().members(), &[0, 1]);
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 4).count(), 6);
    }

    #[test]
    fn bad_tables_rejected() {
        // no identity
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![1, 0]], None).is_err());
        // latin square with identity but not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t, None), Err(Error::InvalidGroup(_))));
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]], None).is_err());
    }

    #[test]
    fn subgroup_enumeration_matches_power_set() {
        for g in small_catalog() {
            let ours: BTreeSet<Vec<usize>> = subgroups(&g).into_iter().map(|h| h.members).collect();
            assert_eq!(ours, subgroups_by_power_set(&g), "order {}", g.order());
        }
    }

    #[test]
    fn subgroups_by_index() {
        let c4 = FiniteGroup::cyclic(4);
        let s = subgroups_up_to_index(&c4, 1);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].order(), 4);

        let s3 = FiniteGroup::symmetric(3);
        let orders: Vec<usize> = subgroups_up_to_index(&s3, 2).iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![3, 6]);

        let a4 = FiniteGroup::alternating(4);
        let small = subgroups_up_to_index(&a4, 3);
        let orders: Vec<usize> = small.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![4, 12]);
        assert!(small[0].is_abelian() && small[0].is_normal());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(min_abelian_index(&FiniteGroup::cyclic(6)), 1);
        assert_eq!(min_abelian_index(&FiniteGroup::elementary_abelian(2, 3)), 1);
        assert_eq!(min_abelian_index(&FiniteGroup::symmetric(3)), 2);
        assert_eq!(min_abelian_index(&FiniteGroup::alternating(4)), 3);
        assert_eq!(min_abelian_index(&FiniteGroup::quaternion8()), 2);
    }

    #[test]
    fn cosets_partition() {
        let s3 = FiniteGroup::symmetric(3);
        let a3 = Subgroup::new(&s3, FiniteGroup::alternating(3).labels().iter().map(|l| s3.find_label(l).unwrap()))
            .unwrap();
        let cosets = right_cosets(&a3);
        assert_eq!(cosets.len(), 2);
        assert!(cosets.iter().all(|c| c.len() == 3));
        assert_eq!(right_cosets(&Subgroup::whole(&s3)).len(), 1);
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(right_cosets(&Subgroup::trivial(&c3)), vec![vec![0], vec![1], vec![2]]);
        for g in small_catalog() {
            for h in subgroups(&g) {
                let cs = right_cosets(&h);
                let mut all: Vec<usize> = cs.iter().flatten().copied().collect();
                all.sort_unstable();
                assert_eq!(all, (0..g.order()).collect::<Vec<_>>());
                assert!(cs.iter().all(|c| c.len() == h.order()));
                // Hx = Hy iff x y⁻¹ ∈ H
                for c in &cs {
                    assert!(c.iter().all(|&y| h.contains(g.mul(c[0], g.inv(y)))));
                }
            }
        }
    }

    #[test]
    fn quotients() {
        let c4 = FiniteGroup::cyclic(4);
        let q = quotient(&Subgroup::whole(&c4)).unwrap();
        assert_eq!(q.group.order(), 1);
        let q = quotient(&Subgroup::generated(&c4, &[2])).unwrap();
        assert!(is_isomorphic(&q.group, &FiniteGroup::cyclic(2)));
        let s3 = FiniteGroup::symmetric(3);
        let a3 = subgroups_up_to_index(&s3, 2).into_iter().find(|h| h.order() == 3).unwrap();
        let q = quotient(&a3).unwrap();
        assert!(is_isomorphic(&q.group, &FiniteGroup::cyclic(2)));
        let non_normal = Subgroup::generated(&s3, &[1]);
        assert_eq!(non_normal.order(), 2);
        assert_eq!(quotient(&non_normal).unwrap_err(), Error::NotNormal);
        for g in small_catalog() {
            for n in subgroups(&g).into_iter().filter(Subgroup::is_normal) {
                let q = quotient(&n).unwrap();
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        assert_eq!(q.projection[g.mul(a, b)], q.group.mul(q.projection[a], q.projection[b]));
                    }
                }
            }
        }
    }

    #[test]
    fn permutability_small() {
        for g in small_catalog() {
            assert_eq!(is_n_permutable(&g, 2).holds, g.is_abelian());
        }
        let s3 = FiniteGroup::symmetric(3);
        let p2 = is_n_permutable(&s3, 2);
        assert!(!p2.holds);
        let w = p2.witness.unwrap();
        assert!(!s3.commutes(w[0], w[1]));
        // brute-force oracle for S₃ with n = 3
        let oracle = (0..6).all(|a| {
            (0..6).all(|b| {
                (0..6).all(|c| {
                    let t = [a, b, c];
                    let base = s3.product(t);
                    (0..3usize).permutations(3).skip(1).any(|p| s3.product(p.iter().map(|&i| t[i])) == base)
                })
            })
        });
        assert_eq!(is_n_permutable(&s3, 3).holds, oracle);
    }

    #[test]
    fn permutability_monotone_and_implies_rewritable() {
        for g in small_catalog() {
            let mut prev = false;
            for n in 2..=4 {
                let p = is_n_permutable(&g, n).holds;
                let q = is_n_rewritable(&g, n).holds;
                assert!(!prev || p, "P_n not monotone at n = {n}");
                assert!(!p || q, "P_n without Q_n at n = {n}");
                prev = p;
            }
        }
    }

    #[test]
    fn modes_agree_on_witness() {
        let s3 = FiniteGroup::symmetric(3);
        for n in 2..=3 {
            assert_eq!(
                is_n_permutable_with(&s3, n, Mode::Sequential),
                is_n_permutable_with(&s3, n, Mode::Parallel)
            );
        }
    }

    #[test]
    fn isomorphism_search() {
        let d4 = FiniteGroup::dihedral(4);
        let q8 = FiniteGroup::quaternion8();
        assert!(!is_isomorphic(&d4, &q8));
        assert!(is_isomorphic(&FiniteGroup::symmetric(3), &FiniteGroup::dihedral(3)));
        assert!(is_isomorphic(&FiniteGroup::cyclic(6), &FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3))));
        assert!(!is_isomorphic(&FiniteGroup::cyclic(4), &FiniteGroup::elementary_abelian(2, 2)));
    }
}
