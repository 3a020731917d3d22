//! Normalized 2-cocycles with values in `m`-th roots of unity.
//!
//! A cocycle is stored by exponents: the field value of `α(g, h)` is
//! `ζ_m^{a(g,h)}`, and the cocycle identity is checked additively mod `m`.

use std::sync::Arc;

use crate::cyclo::{CycloField, CycloScalar};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    group: Arc<FiniteGroup>,
    modulus: u32,
    // row-major exponent table, entries in 0..modulus
    exps: Vec<u32>,
}

impl TwoCocycle {
    /// Raw exponent table, reduced mod `m` but otherwise unchecked.
    pub fn from_table(group: &Arc<FiniteGroup>, modulus: u32, exps: Vec<Vec<u32>>) -> Result<Self> {
        let n = group.order();
        if modulus == 0 {
            return Err(Error::InvalidData("cocycle modulus must be positive".into()));
        }
        if exps.len() != n || exps.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("cocycle table must be {n}×{n}")));
        }
        Ok(TwoCocycle {
            group: group.clone(),
            modulus,
            exps: exps.into_iter().flatten().map(|a| a % modulus).collect(),
        })
    }

    /// Validated cocycle, normalized by subtracting the constant `a(e, e)`.
    pub fn new(group: &Arc<FiniteGroup>, modulus: u32, exps: Vec<Vec<u32>>) -> Result<Self> {
        let raw = Self::from_table(group, modulus, exps)?;
        if let Some((g, h, k)) = raw.identity_violation() {
            return Err(Error::CocycleViolation { g, h, k });
        }
        Ok(raw.normalized())
    }

    fn from_fn(group: &Arc<FiniteGroup>, modulus: u32, f: impl Fn(usize, usize) -> u32) -> Self {
        let n = group.order();
        let exps = (0..n * n).map(|i| f(i / n, i % n) % modulus).collect();
        TwoCocycle {
            group: group.clone(),
            modulus,
            exps,
        }
    }

    pub fn trivial(group: &Arc<FiniteGroup>, modulus: u32) -> Self {
        Self::from_fn(group, modulus, |_, _| 0)
    }

    /// `(δb)(g, h) = b(g) + b(h) − b(gh)`; requires `b(e) = 0`.
    pub fn coboundary(group: &Arc<FiniteGroup>, modulus: u32, b: &[u32]) -> Result<Self> {
        if b.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "coboundary needs {} values, got {}",
                group.order(),
                b.len()
            )));
        }
        if !b[group.identity()].is_multiple_of(modulus) {
            return Err(Error::InvalidData("coboundary requires b(e) = 0".into()));
        }
        let m = modulus as u64;
        Ok(Self::from_fn(group, modulus, |g, h| {
            ((b[g] as u64 + b[h] as u64 + m - b[group.mul(g, h)] as u64 % m) % m) as u32
        }))
    }

    /// Pointwise product of values, i.e. sum of exponent tables.
    pub fn multiply(&self, other: &TwoCocycle) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        if self.group != other.group {
            return Err(Error::InvalidData("cocycles live on different groups".into()));
        }
        Ok(Self::from_fn(&self.group, self.modulus, |g, h| {
            self.exp(g, h) + other.exp(g, h)
        }))
    }

    /// The Heisenberg cocycle on `C_p^{2n}`: with coordinates
    /// `(i₁, j₁, …, i_n, j_n)`, `a(x, y) = Σ_k j_k(x)·i_k(y) mod p`.
    pub fn heisenberg(p: u32, n: usize) -> Self {
        let group = FiniteGroup::elementary_abelian(p as usize, 2 * n);
        let coords = |mut x: usize| {
            let mut c = vec![0u32; 2 * n];
            for slot in c.iter_mut().rev() {
                *slot = (x % p as usize) as u32;
                x /= p as usize;
            }
            c
        };
        Self::from_fn(&group, p, |x, y| {
            let (cx, cy) = (coords(x), coords(y));
            (0..n).map(|k| cx[2 * k + 1] * cy[2 * k]).sum::<u32>() % p
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn exp(&self, g: usize, h: usize) -> u32 {
        self.exps[g * self.group.order() + h]
    }

    /// `α(g, h)` in `Q(ζ_M)`; the modulus of `field` must be a multiple of `m`.
    pub fn value(&self, g: usize, h: usize, field: &Arc<CycloField>) -> CycloScalar {
        let big = field.modulus();
        assert!(big.is_multiple_of(self.modulus), "field Q(ζ_{big}) does not contain ζ_{}", self.modulus);
        CycloScalar::zeta(field, (self.exp(g, h) * (big / self.modulus)) as i64)
    }

    /// First triple where `a(g,h) + a(gh,k) = a(h,k) + a(g,hk)` fails.
    pub fn identity_violation(&self) -> Option<(usize, usize, usize)> {
        let g = &self.group;
        let n = g.order();
        let m = self.modulus;
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let lhs = (self.exp(a, b) + self.exp(ab, c)) % m;
                    let rhs = (self.exp(b, c) + self.exp(a, g.mul(b, c))) % m;
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First pair with `a(e, g) ≠ 0` or `a(g, e) ≠ 0`.
    pub fn normalization_violation(&self) -> Option<(usize, usize)> {
        let e = self.group.identity();
        (0..self.group.order()).find_map(|g| {
            if self.exp(e, g) != 0 {
                Some((e, g))
            } else if self.exp(g, e) != 0 {
                Some((g, e))
            } else {
                None
            }
        })
    }

    /// Both the cocycle identity and normalization.
    pub fn check(&self) -> Result<()> {
        if let Some((g, h)) = self.normalization_violation() {
            return Err(Error::NotNormalized { g, h });
        }
        if let Some((g, h, k)) = self.identity_violation() {
            return Err(Error::CocycleViolation { g, h, k });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// For a cocycle, `a(e, g) = a(g, e) = a(e, e)` for all `g`, so subtracting
    /// that constant (a coboundary) normalizes it.
    pub fn normalized(&self) -> Self {
        let e = self.group.identity();
        let c = self.exp(e, e);
        Self::from_fn(&self.group, self.modulus, |g, h| self.exp(g, h) + self.modulus - c)
    }

    /// Same values viewed in `Z/M` for a multiple `M` of the modulus.
    pub fn with_modulus(&self, big: u32) -> Result<Self> {
        if !big.is_multiple_of(self.modulus) {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: big,
            });
        }
        let f = big / self.modulus;
        Ok(Self::from_fn(&self.group, big, |g, h| self.exp(g, h) * f))
    }

    /// Restriction to a subgroup, on the group returned by
    /// [`Subgroup::as_group`].
    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        if h.parent() != &self.group {
            return Err(Error::NotSubgroup("subgroup of a different group".into()));
        }
        let sub = h.as_group();
        let mem = h.members();
        Ok(Self::from_fn(&sub, self.modulus, |a, b| self.exp(mem[a], mem[b])))
    }

    /// Transport along a group isomorphism `map: self.group → target`.
    pub fn transport(&self, target: &Arc<FiniteGroup>, map: &[usize]) -> Self {
        let mut inv = vec![0; map.len()];
        for (a, &b) in map.iter().enumerate() {
            inv[b] = a;
        }
        Self::from_fn(target, self.modulus, |x, y| self.exp(inv[x], inv[y]))
    }
}

/// Alternating form `μ(g, h) = a(g, h) − a(h, g)` on an abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    group: Arc<FiniteGroup>,
    modulus: u32,
    exps: Vec<u32>,
}

impl Bicharacter {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn exp(&self, g: usize, h: usize) -> u32 {
        self.exps[g * self.group.order() + h]
    }

    pub fn is_bilinear(&self) -> bool {
        let g = &self.group;
        let n = g.order();
        let m = self.modulus;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let ab = g.mul(a, b);
                    self.exp(ab, c) == (self.exp(a, c) + self.exp(b, c)) % m
                        && self.exp(c, ab) == (self.exp(c, a) + self.exp(c, b)) % m
                })
            })
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|a| (0..n).all(|b| (self.exp(a, b) + self.exp(b, a)).is_multiple_of(self.modulus)))
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&x| x == 0)
    }

    /// `{h : μ(h, g) = 0 for all g}`.
    pub fn radical(&self) -> Subgroup {
        let n = self.group.order();
        let members: Vec<usize> = (0..n).filter(|&h| (0..n).all(|g| self.exp(h, g) == 0)).collect();
        Subgroup::new(&self.group, members).expect("the radical of a bicharacter is a subgroup")
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().order() == 1
    }
}

pub fn bicharacter_mu(c: &TwoCocycle) -> Result<Bicharacter> {
    if !c.group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = c.group.order();
    let m = c.modulus;
    let exps = (0..n * n)
        .map(|i| {
            let (g, h) = (i / n, i % n);
            (c.exp(g, h) + m - c.exp(h, g)) % m
        })
        .collect();
    Ok(Bicharacter {
        group: c.group.clone(),
        modulus: m,
        exps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cocycle_from_extension, is_isomorphic, min_abelian_index};
    use proptest::prelude::*;

    #[test]
    fn validation() {
        let c2 = FiniteGroup::cyclic(2);
        assert!(TwoCocycle::trivial(&c2, 2).is_valid());
        assert!(TwoCocycle::heisenberg(2, 1).is_valid());
        assert!(TwoCocycle::heisenberg(3, 2).is_valid());
        let bad = TwoCocycle::from_table(&c2, 2, vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(bad.check(), Err(Error::NotNormalized { g: 0, h: 1 }));
        let c3 = FiniteGroup::cyclic(3);
        let bad = TwoCocycle::from_table(&c3, 3, vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]).unwrap();
        assert!(matches!(bad.check(), Err(Error::CocycleViolation { .. })));
    }

    #[test]
    fn normalization_removes_constant() {
        let c2 = FiniteGroup::cyclic(2);
        let c = TwoCocycle::new(&c2, 3, vec![vec![2, 2], vec![2, 2]]).unwrap();
        assert_eq!(c, TwoCocycle::trivial(&c2, 3));
    }

    #[test]
    fn heisenberg_bicharacter() {
        let h = TwoCocycle::heisenberg(2, 1);
        let mu = bicharacter_mu(&h).unwrap();
        // σ = (1,0) has index 2, τ = (0,1) has index 1
        assert_eq!(mu.exp(2, 1), 1);
        assert!(mu.is_bilinear() && mu.is_antisymmetric());
        for p in [2, 3, 5] {
            assert!(bicharacter_mu(&TwoCocycle::heisenberg(p, 1)).unwrap().is_nondegenerate());
        }
        assert!(bicharacter_mu(&TwoCocycle::heisenberg(2, 2)).unwrap().is_nondegenerate());
        assert!(bicharacter_mu(&TwoCocycle::heisenberg(3, 2)).unwrap().is_nondegenerate());
    }

    #[test]
    fn radical_with_extra_factor() {
        // Heisenberg on C_p² times a trivially paired C_p
        for p in [2u32, 3] {
            let h = TwoCocycle::heisenberg(p, 1);
            let g = FiniteGroup::direct_product(h.group(), &FiniteGroup::cyclic(p as usize));
            let pu = p as usize;
            let c = TwoCocycle::from_fn(&g, p, |x, y| h.exp(x / pu, y / pu));
            assert!(c.is_valid());
            let rad = bicharacter_mu(&c).unwrap().radical();
            // the extra factor: elements (0, z)
            assert_eq!(rad.members(), (0..pu).collect::<Vec<_>>().as_slice());
        }
    }

    #[test]
    fn trivial_bicharacter() {
        let g = FiniteGroup::elementary_abelian(2, 2);
        let mu = bicharacter_mu(&TwoCocycle::trivial(&g, 2)).unwrap();
        assert!(mu.is_zero());
        assert_eq!(mu.radical().order(), 4);
        assert_eq!(bicharacter_mu(&TwoCocycle::trivial(&FiniteGroup::symmetric(3), 2)), Err(Error::NotAbelian));
    }

    // Every cocycle on a cyclic group is symmetric: exhaustive over all tables
    // that pass validation, for small orders and moduli.
    #[test]
    fn cyclic_groups_have_zero_mu() {
        for n in 2..=6usize {
            let g = FiniteGroup::cyclic(n);
            let m = 2u32;
            // cocycles on C_n with values in Z/2: the normalized ones are spanned
            // by coboundaries and the carry cocycle a(i,j) = [i + j ≥ n]
            let carry = TwoCocycle::from_fn(&g, m, |i, j| u32::from(i + j >= n));
            assert!(carry.is_valid());
            assert!(bicharacter_mu(&carry).unwrap().is_zero());
            for bits in 0u32..(1 << (n - 1)) {
                let mut b = vec![0u32];
                b.extend((0..n - 1).map(|k| (bits >> k) & 1));
                let c = carry.multiply(&TwoCocycle::coboundary(&g, m, &b).unwrap()).unwrap();
                assert!(c.is_valid());
                assert!(bicharacter_mu(&c).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn heisenberg_extensions() {
        let c2 = FiniteGroup::cyclic(2);
        let e = FiniteGroup::central_extension(&TwoCocycle::trivial(&c2, 2)).unwrap();
        assert!(is_isomorphic(&e, &FiniteGroup::elementary_abelian(2, 2)));

        let h8 = FiniteGroup::central_extension(&TwoCocycle::heisenberg(2, 1)).unwrap();
        assert_eq!(h8.order(), 8);
        assert!(!h8.is_abelian());
        assert_eq!(h8.center().order(), 2);

        let h27 = FiniteGroup::central_extension(&TwoCocycle::heisenberg(3, 1)).unwrap();
        assert_eq!(h27.order(), 27);
        assert!(!h27.is_abelian());
        let z = h27.center();
        assert_eq!(z.order(), 3);
        assert_eq!(z.as_group().exponent(), 3);
        assert_eq!(min_abelian_index(&h27), 3);
    }

    #[test]
    fn extension_round_trip() {
        let q8 = FiniteGroup::quaternion8();
        let (c, q) = cocycle_from_extension(&q8.center(), 1).unwrap();
        assert!(c.is_valid());
        assert!(is_isomorphic(&q.group, &FiniteGroup::elementary_abelian(2, 2)));
        // same bicharacter as the Heisenberg cocycle, up to the identification
        let mu = bicharacter_mu(&c).unwrap();
        assert!(mu.is_nondegenerate());
        let rebuilt = FiniteGroup::central_extension(&c).unwrap();
        assert!(is_isomorphic(&rebuilt, &q8));

        let sl = FiniteGroup::sl2(3);
        let z = sl.center();
        let gen = z.members().iter().copied().find(|&x| x != sl.identity()).unwrap();
        let (c, q) = cocycle_from_extension(&z, gen).unwrap();
        assert!(is_isomorphic(&q.group, &FiniteGroup::alternating(4)));
        assert!(c.is_valid());
        assert!(is_isomorphic(&FiniteGroup::central_extension(&c).unwrap(), &sl));

        // split extension: the cocycle is a coboundary, here trivial
        let klein = FiniteGroup::elementary_abelian(2, 2);
        let z = crate::groups::Subgroup::generated(&klein, &[1]);
        let (c, _) = cocycle_from_extension(&z, 1).unwrap();
        assert!(c.exps.iter().all(|&x| x == 0));
    }

    #[test]
    fn extension_errors() {
        let s3 = FiniteGroup::symmetric(3);
        let h = crate::groups::Subgroup::generated(&s3, &[1]);
        assert!(matches!(cocycle_from_extension(&h, 1), Err(Error::NotCentral(_))));
    }

    fn heisenberg_case() -> impl Strategy<Value = (u32, Vec<u32>)> {
        prop_oneof![Just(2u32), Just(3u32)].prop_flat_map(|p| {
            let n = (p * p) as usize;
            (Just(p), proptest::collection::vec(0..p, n - 1))
        })
    }

    proptest! {
        #[test]
        fn mu_ignores_coboundaries((p, tail) in heisenberg_case()) {
            let h = TwoCocycle::heisenberg(p, 1);
            let mut b = vec![0];
            b.extend(tail);
            let db = TwoCocycle::coboundary(h.group(), p, &b).unwrap();
            prop_assert!(db.is_valid());
            let twisted = h.multiply(&db).unwrap();
            prop_assert!(twisted.is_valid());
            prop_assert_eq!(bicharacter_mu(&twisted).unwrap(), bicharacter_mu(&h).unwrap());
        }

        #[test]
        fn radical_is_subgroup((p, tail) in heisenberg_case(), scale in 0u32..3) {
            // scaled cocycles k·a have radical G when p | k
            let h = TwoCocycle::heisenberg(p, 1);
            let scaled = TwoCocycle::from_fn(h.group(), p, |x, y| h.exp(x, y) * scale);
            let mut b = vec![0];
            b.extend(tail);
            let c = scaled.multiply(&TwoCocycle::coboundary(h.group(), p, &b).unwrap()).unwrap();
            let rad = bicharacter_mu(&c).unwrap().radical();
            let g = c.group();
            for &x in rad.members() {
                for &y in rad.members() {
                    prop_assert!(rad.contains(g.mul(x, y)));
                }
            }
            prop_assert_eq!(rad.order() == 1, scale % p != 0);
        }
    }
}
