//! Turns a parsed [`Scenario`] into groups, cocycles and algebras.

use std::collections::HashMap;
use std::sync::Arc;

use gradpi_core::cocycles::TwoCocycle;
use gradpi_core::cyclo::{field, lcm, CycloField};
use gradpi_core::galg::{
    build_gsimple, group_algebra, matrix_algebra, twisted_group_algebra, upper_triangular_full,
    upper_triangular_scalar_diag, GSimpleData, GradedAlgebra,
};
use gradpi_core::groups::{catalog, cocycle_from_extension, find_isomorphism, FiniteGroup, Subgroup};
use thiserror::Error;

use crate::scenario::{AlgebraSpec, CocycleSpec, GroupSpec, Scenario, SubgroupSpec};

// Cayley tables and subgroup scans above this size are not practical here.
const MAX_ORDER: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct BuildError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct BuiltCocycle {
    pub cocycle: TwoCocycle,
    /// For Heisenberg cocycles: `p`, `n` and the map from the standard
    /// `C_p^{2n}` onto the declared group.
    pub heisenberg: Option<(u32, usize, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct BuiltAlgebra {
    pub algebra: GradedAlgebra,
    pub gsimple: Option<GSimpleData>,
}

#[derive(Clone, Debug, Default)]
pub struct Context {
    pub groups: HashMap<String, Arc<FiniteGroup>>,
    pub cocycles: HashMap<String, BuiltCocycle>,
    pub algebras: HashMap<String, BuiltAlgebra>,
}

/// Coefficient field for algebras over `g` twisted by a cocycle of modulus `m`.
pub fn field_for(g: &FiniteGroup, m: u32) -> Arc<CycloField> {
    field(lcm(g.exponent() as u32, m))
}

pub fn element(g: &FiniteGroup, x: usize) -> Result<usize, String> {
    if x >= g.order() {
        return Err(format!("element {x} out of range for a group of order {}", g.order()));
    }
    Ok(x)
}

pub fn subgroup(g: &Arc<FiniteGroup>, spec: &SubgroupSpec) -> Result<Subgroup, String> {
    Ok(match spec {
        SubgroupSpec::Whole => Subgroup::whole(g),
        SubgroupSpec::Trivial => Subgroup::trivial(g),
        SubgroupSpec::Generated(gens) => {
            let gens = gens.iter().map(|&x| element(g, x)).collect::<Result<Vec<_>, _>>()?;
            Subgroup::generated(g, &gens)
        }
    })
}

/// `c` moved onto `target` along the first isomorphism found, with the map.
pub fn transport_onto(c: &TwoCocycle, target: &Arc<FiniteGroup>) -> Result<(TwoCocycle, Vec<usize>), String> {
    let map = find_isomorphism(c.group(), target).ok_or("cocycle group is not isomorphic to the target group")?;
    Ok((c.transport(target, &map), map))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn build_group(spec: &GroupSpec, groups: &HashMap<String, Arc<FiniteGroup>>) -> Result<Arc<FiniteGroup>, String> {
    let check_perm = |n: usize| if n > 6 { Err(format!("degree {n} exceeds 6")) } else { Ok(()) };
    let small = |order: usize| {
        if order > MAX_ORDER {
            Err(format!("group of order {order} exceeds {MAX_ORDER}"))
        } else {
            Ok(())
        }
    };
    let g = match spec {
        GroupSpec::Cyclic(n) => {
            small(*n)?;
            FiniteGroup::cyclic(*n)
        }
        GroupSpec::Symmetric(n) => {
            check_perm(*n)?;
            FiniteGroup::symmetric(*n)
        }
        GroupSpec::Alternating(n) => {
            check_perm(*n)?;
            FiniteGroup::alternating(*n)
        }
        GroupSpec::Dihedral(n) => {
            small(2 * n)?;
            FiniteGroup::dihedral(*n)
        }
        GroupSpec::Quaternion => FiniteGroup::quaternion8(),
        GroupSpec::ElementaryAbelian(p, r) => {
            if p.checked_pow(*r as u32).is_none_or(|o| o > MAX_ORDER) {
                return Err(format!("order {p}^{r} is too large"));
            }
            FiniteGroup::elementary_abelian(*p, *r)
        }
        GroupSpec::Sl2(p) => {
            if !is_prime(*p) || *p > 11 {
                return Err(format!("SL(2, {p}) needs a prime p ≤ 11"));
            }
            FiniteGroup::sl2(*p)
        }
        GroupSpec::Heisenberg(p, n) => {
            let order = (*p as usize).checked_pow(2 * *n as u32 + 1);
            if !is_prime(*p as usize) || order.is_none_or(|o| o > MAX_ORDER) {
                return Err(format!("Heisenberg group for p={p}, n={n} is unsupported"));
            }
            FiniteGroup::central_extension(&TwoCocycle::heisenberg(*p, *n)).map_err(|e| e.to_string())?
        }
        GroupSpec::Product(a, b) => {
            small(groups[a].order() * groups[b].order())?;
            FiniteGroup::direct_product(&groups[a], &groups[b])
        }
        GroupSpec::Catalog(name) => catalog()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| format!("no catalog group named `{name}`"))?,
        GroupSpec::Table(rows) => FiniteGroup::from_table(rows.clone(), None).map_err(|e| e.to_string())?,
    };
    small(g.order())?;
    Ok(g)
}

fn build_cocycle(
    g: &Arc<FiniteGroup>,
    spec: &CocycleSpec,
    groups: &HashMap<String, Arc<FiniteGroup>>,
) -> Result<BuiltCocycle, String> {
    let plain = |cocycle| BuiltCocycle {
        cocycle,
        heisenberg: None,
    };
    Ok(match spec {
        CocycleSpec::Trivial { modulus } => plain(TwoCocycle::trivial(g, *modulus)),
        CocycleSpec::Heisenberg { p, n } => {
            let order = (*p as usize).checked_pow(2 * *n as u32);
            if !is_prime(*p as usize) || order.is_none_or(|o| o > MAX_ORDER) {
                return Err(format!("Heisenberg cocycle for p={p}, n={n} is unsupported"));
            }
            let (cocycle, map) = transport_onto(&TwoCocycle::heisenberg(*p, *n), g)?;
            BuiltCocycle {
                cocycle,
                heisenberg: Some((*p, *n, map)),
            }
        }
        CocycleSpec::Table { modulus, rows } => {
            plain(TwoCocycle::new(g, *modulus, rows.clone()).map_err(|e| e.to_string())?)
        }
        CocycleSpec::Extension { group, generator } => {
            let e = &groups[group];
            let z = e.center();
            let generator = match generator {
                Some(x) => element(e, *x)?,
                None => z
                    .members()
                    .iter()
                    .copied()
                    .find(|&x| e.element_order(x) == z.order())
                    .ok_or("center of the extension is not cyclic")?,
            };
            let (c, _) = cocycle_from_extension(&z, generator).map_err(|e| e.to_string())?;
            plain(transport_onto(&c, g)?.0)
        }
    })
}

fn tuple_in(g: &FiniteGroup, t: &[usize]) -> Result<Vec<usize>, String> {
    t.iter().map(|&x| element(g, x)).collect()
}

fn build_algebra(ctx: &Context, spec: &AlgebraSpec) -> Result<BuiltAlgebra, String> {
    let plain = |algebra| BuiltAlgebra {
        algebra,
        gsimple: None,
    };
    let err = |e: gradpi_core::Error| e.to_string();
    Ok(match spec {
        AlgebraSpec::GroupAlgebra { group } => {
            let g = &ctx.groups[group];
            plain(group_algebra(g, &field_for(g, 1)))
        }
        AlgebraSpec::Twisted { cocycle } => {
            let c = &ctx.cocycles[cocycle].cocycle;
            plain(twisted_group_algebra(c, &field_for(c.group(), c.modulus())).map_err(err)?)
        }
        AlgebraSpec::Matrix { d } => plain(matrix_algebra(*d, &field(1))),
        AlgebraSpec::GSimple {
            group,
            subgroup: s,
            cocycle,
            tuple,
        } => {
            let g = &ctx.groups[group];
            let h = subgroup(g, s)?;
            let hg = h.as_group();
            let alpha = match cocycle {
                Some(c) => transport_onto(&ctx.cocycles[c].cocycle, &hg)?.0,
                None => TwoCocycle::trivial(&hg, 1),
            };
            let f = field_for(g, alpha.modulus());
            let data = GSimpleData::new(h, alpha, tuple_in(g, tuple)?).map_err(err)?;
            BuiltAlgebra {
                algebra: build_gsimple(&data, &f).map_err(err)?,
                gsimple: Some(data),
            }
        }
        AlgebraSpec::UtScalar { group, tuple } => {
            let g = &ctx.groups[group];
            plain(upper_triangular_scalar_diag(g, &tuple_in(g, tuple)?, &field(1)).map_err(err)?)
        }
        AlgebraSpec::UtFull { group, tuple } => {
            let g = &ctx.groups[group];
            plain(upper_triangular_full(g, &tuple_in(g, tuple)?, &field(1)).map_err(err)?)
        }
        AlgebraSpec::TensorTrivial { left, right } => {
            let (a, b) = (&ctx.algebras[left].algebra, &ctx.algebras[right].algebra);
            let f = field(lcm(a.field().modulus(), b.field().modulus()));
            let (a, b) = (a.extend_scalars(&f).map_err(err)?, b.extend_scalars(&f).map_err(err)?);
            plain(a.tensor_with_trivially_graded(&b).map_err(err)?)
        }
        AlgebraSpec::QuotientGrading { algebra, normal } => {
            let a = &ctx.algebras[algebra].algebra;
            let n = subgroup(a.group(), normal)?;
            plain(a.induced_quotient_grading(&n).map_err(err)?)
        }
    })
}

impl Context {
    pub fn build(sc: &Scenario) -> Result<Context, BuildError> {
        let mut ctx = Context::default();
        let at = |key: String| {
            let line = sc.line_of(&key);
            move |message: String| BuildError {
                line,
                message: format!("{key}: {message}"),
            }
        };
        for (name, spec) in &sc.groups {
            let g = build_group(spec, &ctx.groups).map_err(at(format!("group {name}")))?;
            ctx.groups.insert(name.clone(), g);
        }
        for (name, decl) in &sc.cocycles {
            let g = &ctx.groups[&decl.group];
            let c = build_cocycle(g, &decl.spec, &ctx.groups).map_err(at(format!("cocycle {name}")))?;
            ctx.cocycles.insert(name.clone(), c);
        }
        for (name, spec) in &sc.algebras {
            let a = build_algebra(&ctx, spec).map_err(at(format!("algebra {name}")))?;
            ctx.algebras.insert(name.clone(), a);
        }
        Ok(ctx)
    }
}
