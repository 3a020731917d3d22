//! Running scenario checks into report records.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use gradpi_core::cocycles::TwoCocycle;
use gradpi_core::embed::{
    chain_embedding, regular_coset_embedding, untwist_embedding, verify_graded_map_with, GradedMap, ProjectiveRep,
};
use gradpi_core::galg::{build_gsimple, GSimpleData, GradedAlgebra};
use gradpi_core::groups::{
    coset_reps, is_n_permutable_with, is_n_rewritable_with, min_abelian_index, subgroups, FiniteGroup,
};
use gradpi_core::par::Mode;
use gradpi_core::structure::{
    codimension_with, exp_group_algebra, gz_exponent, min_identity_degree, pi_degree_semisimple,
    wedderburn_degrees, Budget,
};
use gradpi_core::{cyclo, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::build::{field_for, subgroup, transport_onto, BuiltAlgebra, Context};
use crate::scenario::{
    check_entries, CheckSpec, Construction, GradingProperty, Quantity, RhoSpec, Scenario, Variant,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "holds")]
    Holds,
    #[serde(rename = "fails")]
    Fails,
    #[serde(rename = "skipped:budget")]
    SkippedBudget,
    #[serde(rename = "error")]
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::SkippedBudget => "skipped:budget",
            Verdict::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub id: String,
    pub kind: String,
    pub inputs: BTreeMap<String, String>,
    pub lhs: Value,
    pub rhs: Value,
    pub verdict: Verdict,
    pub witness: Value,
    pub detail: String,
    pub wall_time_ms: f64,
}

#[derive(Clone, Copy, Debug)]
#[derive(Default)]
pub struct RunOptions {
    pub budget: Budget,
    pub mode: Mode,
    pub seed: u64,
}


// What a check computed, before timing and bookkeeping.
struct Outcome {
    lhs: Value,
    rhs: Value,
    holds: bool,
    witness: Value,
    detail: String,
}

enum Failure {
    Budget(String),
    Error(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(m) => Failure::Budget(m),
            other => Failure::Error(other.to_string()),
        }
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Error(e)
    }
}

type Res<T> = Result<T, Failure>;

fn labels(g: &FiniteGroup, xs: &[usize]) -> Value {
    json!(xs.iter().map(|&x| json!({"index": x, "label": g.label(x)})).collect::<Vec<_>>())
}

fn gsimple<'a>(a: &'a BuiltAlgebra, name: &str) -> Res<&'a GSimpleData> {
    a.gsimple
        .as_ref()
        .ok_or_else(|| Failure::Error(format!("algebra `{name}` is not a gsimple construction")))
}

fn grading(a: &BuiltAlgebra, name: &str, property: GradingProperty, expect: bool, opts: &RunOptions) -> Res<Outcome> {
    let alg = &a.algebra;
    let g = alg.group();
    let mut witness = Value::Null;
    let (observed, detail) = match property {
        GradingProperty::Connected => (alg.is_connected(), "every component nonzero".to_string()),
        GradingProperty::Strong => {
            let v = alg.strong_violation_with(opts.mode);
            if let Some((x, y)) = v {
                witness = labels(g, &[x, y]);
            }
            (v.is_none(), "A_g A_h = A_gh for all g, h".to_string())
        }
        GradingProperty::Coset => {
            let d = gsimple(a, name)?;
            (d.coset_condition(), "every right coset of H meets the tuple".to_string())
        }
        GradingProperty::Witness => {
            let d = gsimple(a, name)?;
            if d.coset_condition() {
                (
                    alg.strong_violation_with(opts.mode).is_none(),
                    "coset condition holds; no witness, grading strong".to_string(),
                )
            } else {
                let w = d.degenerate_witness()?;
                witness = labels(g, &w);
                (
                    alg.monomial_is_identity_with(&w, opts.mode),
                    "degenerate witness certified as a monomial identity".to_string(),
                )
            }
        }
    };
    Ok(Outcome {
        lhs: json!(observed),
        rhs: json!(expect),
        holds: observed == expect,
        witness,
        detail,
    })
}

fn is_semisimple(a: &GradedAlgebra) -> Res<bool> {
    Ok(a.forget_grading().graded_radical()?.is_zero())
}

fn pi_degree(a: &GradedAlgebra, opts: &RunOptions) -> Res<usize> {
    if is_semisimple(a)? {
        return Ok(pi_degree_semisimple(a)?);
    }
    min_identity_degree(a, opts.budget.max_degree, opts.budget)?.ok_or_else(|| {
        Failure::Budget(format!("no identity of degree ≤ {}", opts.budget.max_degree))
    })
}

fn exponent(a: &GradedAlgebra) -> Res<usize> {
    Ok(gz_exponent(a)?.exponent)
}

fn invariants(a: &GradedAlgebra, quantity: Quantity, expect: &[usize], opts: &RunOptions) -> Res<Outcome> {
    let (value, detail): (Vec<usize>, &str) = match quantity {
        Quantity::RadicalDim => (vec![a.forget_grading().graded_radical()?.dim()], "dim J(A)"),
        Quantity::Degrees => {
            let q = a.forget_grading().semisimple_quotient()?;
            (wedderburn_degrees(&q)?.degrees, "Wedderburn block degrees of A/J")
        }
        Quantity::Exponent => (vec![exponent(a)?], "exp(A)"),
        Quantity::PiDegree => (vec![pi_degree(a, opts)?], "PI degree"),
        Quantity::Codimensions(n) => {
            let mut c = Vec::with_capacity(n);
            for k in 1..=n {
                c.push(codimension_with(a, k, opts.budget, opts.mode)?);
            }
            (c, "c_1, ..., c_n")
        }
    };
    let show = |v: &[usize]| if v.len() == 1 && !matches!(quantity, Quantity::Degrees | Quantity::Codimensions(_)) {
        json!(v[0])
    } else {
        json!(v)
    };
    Ok(Outcome {
        lhs: show(&value),
        rhs: show(expect),
        holds: value == expect,
        witness: Value::Null,
        detail: detail.into(),
    })
}

fn representation(ctx: &Context, cocycle: &str, onto: &Arc<FiniteGroup>, rho: RhoSpec) -> Res<(ProjectiveRep, Arc<cyclo::CycloField>)> {
    let built = &ctx.cocycles[cocycle];
    let (alpha, map) = transport_onto(&built.cocycle, onto)?;
    let f = field_for(onto, alpha.modulus());
    let rep = match rho {
        RhoSpec::Regular => ProjectiveRep::regular(&alpha, &f)?,
        RhoSpec::ClockShift => {
            let Some((p, 1, std_map)) = &built.heisenberg else {
                return Err(Failure::Error("clock_shift needs a Heisenberg cocycle with n = 1".into()));
            };
            let std = ProjectiveRep::clock_and_shift(*p, &f)?;
            // standard C_p² → declared group → `onto`
            let n = onto.order();
            let mut matrices = vec![None; n];
            for (s, &x) in std_map.iter().enumerate() {
                matrices[map[x]] = Some(std.matrix(s).clone());
            }
            let matrices = matrices.into_iter().map(|m| m.expect("bijection")).collect();
            ProjectiveRep::new(alpha, matrices)?
        }
    };
    Ok((rep, f))
}

fn embedding(ctx: &Context, c: &Construction, opts: &RunOptions) -> Res<Outcome> {
    let reps_for = |h: &gradpi_core::groups::Subgroup, reps: &Option<Vec<usize>>| -> Res<Vec<usize>> {
        match reps {
            Some(r) => r
                .iter()
                .map(|&x| crate::build::element(h.parent(), x))
                .collect::<Result<_, _>>()
                .map_err(Failure::Error),
            None => Ok(coset_reps(h)),
        }
    };
    let map: GradedMap = match c {
        Construction::Regular { group, subgroup: s, reps } => {
            let g = &ctx.groups[group];
            let h = subgroup(g, s)?;
            regular_coset_embedding(&h, &reps_for(&h, reps)?, &field_for(g, 1))?
        }
        Construction::Untwist { cocycle, rho } => {
            let g = ctx.cocycles[cocycle].cocycle.group().clone();
            let (rep, f) = representation(ctx, cocycle, &g, *rho)?;
            untwist_embedding(&rep, &f)?
        }
        Construction::Chain {
            group,
            subgroup: s,
            reps,
            cocycle,
            rho,
        } => {
            let g = &ctx.groups[group];
            let h = subgroup(g, s)?;
            let (rep, _) = representation(ctx, cocycle, &h.as_group(), *rho)?;
            let f = field_for(g, rep.alpha().modulus());
            let rep = ProjectiveRep::new(rep.alpha().clone(), {
                let hg = h.as_group();
                (0..hg.order()).map(|x| embed_matrix(rep.matrix(x), &f)).collect::<Result<_, _>>()?
            })?;
            chain_embedding(&h, &reps_for(&h, reps)?, &rep, &f)?
        }
    };
    let r = verify_graded_map_with(&map, opts.mode);
    let witness = match r.failing_pair {
        Some((i, j)) => json!([map.source.label(i), map.source.label(j)]),
        None => Value::Null,
    };
    Ok(Outcome {
        lhs: json!({
            "multiplicative": r.multiplicative,
            "unital": r.unital,
            "injective": r.injective,
            "degree_preserving": r.degree_preserving,
        }),
        rhs: json!({
            "multiplicative": true,
            "unital": true,
            "injective": true,
            "degree_preserving": true,
        }),
        holds: r.all(),
        witness,
        detail: format!("dim {} into dim {}", map.source.dim(), map.target.dim()),
    })
}

// Re-expresses a matrix over a larger cyclotomic field.
fn embed_matrix(m: &cyclo::CycloMatrix, f: &Arc<cyclo::CycloField>) -> Result<cyclo::CycloMatrix, Error> {
    let rows = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).embed_into(f)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    cyclo::CycloMatrix::from_rows(f, rows)
}

fn compare(lhs: u128, rhs: u128, detail: String) -> Outcome {
    Outcome {
        lhs: json!(lhs as u64),
        rhs: if rhs <= u64::MAX as u128 { json!(rhs as u64) } else { json!(rhs.to_string()) },
        holds: lhs <= rhs,
        witness: Value::Null,
        detail,
    }
}

fn permutability(g: &FiniteGroup, n: usize, variant: Variant, expect: bool, opts: &RunOptions) -> Outcome {
    let run = |k: usize| match variant {
        Variant::Permutable => is_n_permutable_with(g, k, opts.mode),
        Variant::Rewritable => is_n_rewritable_with(g, k, opts.mode),
    };
    let report = run(n);
    let least = (2..n).find(|&k| run(k).holds).or(report.holds.then_some(n));
    let name = match variant {
        Variant::Permutable => "P",
        Variant::Rewritable => "Q",
    };
    let witness = match (&report.witness, report.holds) {
        (Some(w), false) => labels(g, w),
        _ => Value::Null,
    };
    Outcome {
        lhs: json!(report.holds),
        rhs: json!(expect),
        holds: report.holds == expect,
        witness,
        detail: match least {
            Some(k) => format!("{name}_{n} {}; least k ≤ {n} with {name}_k is {k}", if report.holds { "holds" } else { "fails" }),
            None => format!("{name}_k fails for every 2 ≤ k ≤ {n}"),
        },
    }
}

fn sweep(g: &Arc<FiniteGroup>, instances: usize, max_r: usize, seed: u64, opts: &RunOptions) -> Res<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subs = subgroups(g);
    let f = field_for(g, 2);
    let mut agree = 0;
    let mut witness = Value::Null;
    for k in 0..instances {
        let h = subs[rng.random_range(0..subs.len())].clone();
        let hg = h.as_group();
        let mut b: Vec<u32> = (0..hg.order()).map(|_| rng.random_range(0..2)).collect();
        b[hg.identity()] = 0;
        let alpha = TwoCocycle::coboundary(&hg, 2, &b)?;
        let r = rng.random_range(1..=max_r);
        let reps = coset_reps(&h);
        let tuple: Vec<usize> = if reps.len() <= r && rng.random_bool(0.5) {
            let mut t: Vec<usize> = reps
                .iter()
                .map(|&w| g.mul(h.members()[rng.random_range(0..h.order())], w))
                .collect();
            t.extend((t.len()..r).map(|_| rng.random_range(0..g.order())));
            t
        } else {
            (0..r).map(|_| rng.random_range(0..g.order())).collect()
        };
        let d = GSimpleData::new(h, alpha, tuple)?;
        let a = build_gsimple(&d, &f)?;
        let cc = d.coset_condition();
        let strong = a.strong_violation_with(opts.mode).is_none();
        let certified = cc || a.monomial_is_identity_with(&d.degenerate_witness()?, opts.mode);
        if cc == strong && certified {
            agree += 1;
        } else if witness.is_null() {
            witness = json!({"instance": k, "subgroup": d.subgroup().members(), "tuple": d.tuple()});
        }
    }
    Ok(Outcome {
        lhs: json!(agree),
        rhs: json!(instances),
        holds: agree == instances,
        witness,
        detail: "instances where coset condition ⇔ strong and witnesses are certified".into(),
    })
}

fn evaluate(ctx: &Context, spec: &CheckSpec, index: usize, opts: &RunOptions) -> Res<Outcome> {
    let alg = |name: &String| &ctx.algebras[name];
    match spec {
        CheckSpec::Grading {
            algebra,
            property,
            expect,
        } => grading(alg(algebra), algebra, *property, *expect, opts),
        CheckSpec::Invariants {
            algebra,
            quantity,
            expect,
        } => invariants(&alg(algebra).algebra, *quantity, expect, opts),
        CheckSpec::Embedding(c) => embedding(ctx, c, opts),
        CheckSpec::Corollary2 { group, algebra } => {
            let lhs = exp_group_algebra(&ctx.groups[group])?;
            let e = exponent(&alg(algebra).algebra)?;
            Ok(compare(lhs as u128, (e * e) as u128, format!("exp(FG) ≤ exp(A)² with exp(A) = {e}")))
        }
        CheckSpec::CorollaryPid { group, algebra } => {
            let a = &alg(algebra).algebra;
            if !is_semisimple(a)? {
                return Err(Failure::Error(format!("algebra `{algebra}` is not semisimple")));
            }
            let g = &ctx.groups[group];
            let d_fg = pi_degree_semisimple(&gradpi_core::galg::group_algebra(g, &field_for(g, 1)))?;
            let d_a = pi_degree_semisimple(a)?;
            let rhs = 2 * (d_a - 1) * (d_a - 1);
            Ok(compare(d_fg as u128, rhs as u128, format!("d(FG) ≤ 2(d(A) − 1)² with d(A) = {d_a}")))
        }
        CheckSpec::MainBound { group, algebra, k } => {
            let gamma = min_abelian_index(&ctx.groups[group]);
            let e = exponent(&alg(algebra).algebra)?;
            let rhs = (e as u128).checked_pow(*k).unwrap_or(u128::MAX);
            Ok(compare(gamma as u128, rhs, format!("γ(G) ≤ exp(A)^K with exp(A) = {e}, K = {k}")))
        }
        CheckSpec::Gamma { group, expect } => {
            let gamma = min_abelian_index(&ctx.groups[group]);
            let rhs = expect.unwrap_or(gamma);
            Ok(Outcome {
                lhs: json!(gamma),
                rhs: json!(rhs),
                holds: gamma == rhs,
                witness: Value::Null,
                detail: "least index of an abelian subgroup".into(),
            })
        }
        CheckSpec::Permutability {
            group,
            n,
            variant,
            expect,
        } => Ok(permutability(&ctx.groups[group], *n, *variant, *expect, opts)),
        CheckSpec::Sweep {
            group,
            instances,
            max_r,
        } => sweep(&ctx.groups[group], *instances, *max_r, opts.seed.wrapping_add(index as u64), opts),
    }
}

/// Runs check `index` of the scenario into one record.
pub fn run_check(ctx: &Context, sc: &Scenario, index: usize, opts: &RunOptions) -> Record {
    let decl = &sc.checks[index];
    let mut opts = *opts;
    if let Some(b) = decl.budget {
        opts.budget.max_tuples = b;
    }
    let start = Instant::now();
    let outcome = evaluate(ctx, &decl.spec, index, &opts);
    let wall_time_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    let mut inputs: BTreeMap<String, String> = check_entries(&decl.spec)
        .into_iter()
        .filter(|(k, _)| *k != "kind")
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    if let Some(b) = decl.budget {
        inputs.insert("budget".into(), b.to_string());
    }
    let base = |lhs, rhs, verdict, witness, detail| Record {
        id: sc.check_id(index),
        kind: decl.spec.kind().to_string(),
        inputs,
        lhs,
        rhs,
        verdict,
        witness,
        detail,
        wall_time_ms,
    };
    match outcome {
        Ok(o) => base(
            o.lhs,
            o.rhs,
            if o.holds { Verdict::Holds } else { Verdict::Fails },
            o.witness,
            o.detail,
        ),
        Err(Failure::Budget(m)) => base(Value::Null, Value::Null, Verdict::SkippedBudget, Value::Null, m),
        Err(Failure::Error(m)) => base(Value::Null, Value::Null, Verdict::Error, Value::Null, m),
    }
}

/// All checks in scenario order; independent checks run concurrently when
/// the mode is parallel.
pub fn run_all(ctx: &Context, sc: &Scenario, opts: &RunOptions) -> Vec<Record> {
    let n = sc.checks.len();
    #[cfg(feature = "parallel")]
    if opts.mode == Mode::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(|i| run_check(ctx, sc, i, opts)).collect();
    }
    (0..n).map(|i| run_check(ctx, sc, i, opts)).collect()
}
