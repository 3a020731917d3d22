//! Scenario files: a line-oriented sectioned format.
//!
//! ```text
//! # comment
//! [group A4]
//! kind = alternating 4
//!
//! [cocycle sl23]
//! group = A4
//! kind = extension SL23
//!
//! [algebra T]
//! kind = twisted sl23
//!
//! [check]
//! kind = invariants
//! algebra = T
//! quantity = degrees
//! expect = 2 2 2
//! ```
//!
//! Group elements are written as indices into the group's element list (see
//! `gradpi catalog`). Names must be declared before they are referenced.

use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Dihedral(usize),
    Quaternion,
    ElementaryAbelian(usize, usize),
    Sl2(usize),
    /// Central extension of `C_p^{2n}` by the Heisenberg cocycle.
    Heisenberg(u32, usize),
    Product(String, String),
    Catalog(String),
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleSpec {
    Trivial { modulus: u32 },
    /// Transported onto the declared group along the first isomorphism found.
    Heisenberg { p: u32, n: usize },
    Table { modulus: u32, rows: Vec<Vec<u32>> },
    /// The cocycle of `E → E/Z(E)`, transported onto the declared group.
    Extension { group: String, generator: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleDecl {
    pub group: String,
    pub spec: CocycleSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    Whole,
    Trivial,
    Generated(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    GroupAlgebra { group: String },
    Twisted { cocycle: String },
    /// `cocycle` must live on a group isomorphic to the subgroup.
    GSimple {
        group: String,
        subgroup: SubgroupSpec,
        cocycle: Option<String>,
        tuple: Vec<usize>,
    },
    Matrix { d: usize },
    UtScalar { group: String, tuple: Vec<usize> },
    UtFull { group: String, tuple: Vec<usize> },
    /// `left ⊗ right` with `right` trivially graded.
    TensorTrivial { left: String, right: String },
    /// Degrees pushed to `G/N` for a normal subgroup `N` of the algebra's group.
    QuotientGrading { algebra: String, normal: SubgroupSpec },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradingProperty {
    Connected,
    Strong,
    Coset,
    Witness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    RadicalDim,
    Degrees,
    Exponent,
    PiDegree,
    Codimensions(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoSpec {
    Regular,
    ClockShift,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Regular {
        group: String,
        subgroup: SubgroupSpec,
        reps: Option<Vec<usize>>,
    },
    Untwist {
        cocycle: String,
        rho: RhoSpec,
    },
    Chain {
        group: String,
        subgroup: SubgroupSpec,
        reps: Option<Vec<usize>>,
        cocycle: String,
        rho: RhoSpec,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Permutable,
    Rewritable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckSpec {
    Grading {
        algebra: String,
        property: GradingProperty,
        expect: bool,
    },
    Invariants {
        algebra: String,
        quantity: Quantity,
        expect: Vec<usize>,
    },
    Embedding(Construction),
    Corollary2 { group: String, algebra: String },
    CorollaryPid { group: String, algebra: String },
    MainBound { group: String, algebra: String, k: u32 },
    /// Least index of an abelian subgroup.
    Gamma { group: String, expect: Option<usize> },
    Permutability {
        group: String,
        n: usize,
        variant: Variant,
        expect: bool,
    },
    /// Coset condition ⇔ strong grading on random G-simple data.
    Sweep {
        group: String,
        instances: usize,
        max_r: usize,
    },
}

impl CheckSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            CheckSpec::Grading { .. } => "grading",
            CheckSpec::Invariants { .. } => "invariants",
            CheckSpec::Embedding(_) => "embedding",
            CheckSpec::Corollary2 { .. } => "corollary2",
            CheckSpec::CorollaryPid { .. } => "corollary_pid",
            CheckSpec::MainBound { .. } => "main_bound",
            CheckSpec::Gamma { .. } => "gamma",
            CheckSpec::Permutability { .. } => "permutability",
            CheckSpec::Sweep { .. } => "sweep",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckDecl {
    pub id: Option<String>,
    pub spec: CheckSpec,
    /// Overrides the run-wide cap on evaluated basis tuples.
    pub budget: Option<u64>,
}

/// A parsed and reference-checked scenario. Equality ignores source lines.
#[derive(Clone, Debug, Default)]
pub struct Scenario {
    pub groups: Vec<(String, GroupSpec)>,
    pub cocycles: Vec<(String, CocycleDecl)>,
    pub algebras: Vec<(String, AlgebraSpec)>,
    pub checks: Vec<CheckDecl>,
    /// Header line of each declaration, keyed by `"group G"`, `"check 3"`, ...
    pub lines: BTreeMap<String, usize>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.groups == other.groups
            && self.cocycles == other.cocycles
            && self.algebras == other.algebras
            && self.checks == other.checks
    }
}

impl Eq for Scenario {}

impl Scenario {
    pub fn line_of(&self, key: &str) -> usize {
        self.lines.get(key).copied().unwrap_or(0)
    }

    /// Stable identifier of check `i`.
    pub fn check_id(&self, i: usize) -> String {
        self.checks[i].id.clone().unwrap_or_else(|| format!("check-{}", i + 1))
    }
}

struct Entry {
    key: String,
    value: String,
    line: usize,
}

struct Section {
    kind: String,
    name: Option<String>,
    line: usize,
    entries: Vec<Entry>,
}

fn sections(text: &str) -> Result<Vec<Section>, ParseError> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(header) = body.strip_prefix('[') {
            let Some(header) = header.strip_suffix(']') else {
                return err(line, "unterminated section header");
            };
            let mut words = header.split_whitespace();
            let kind = words.next().unwrap_or("").to_string();
            let name = words.next().map(str::to_string);
            if words.next().is_some() {
                return err(line, "section header takes a kind and at most one name");
            }
            out.push(Section {
                kind,
                name,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return err(line, format!("expected `key = value`, found `{body}`"));
        };
        let Some(section) = out.last_mut() else {
            return err(line, "entry outside of any section");
        };
        section.entries.push(Entry {
            key: key.trim().to_string(),
            value: value.trim().to_string(),
            line,
        });
    }
    Ok(out)
}

// Keyed access to a section's entries; `finish` rejects leftovers.
struct Fields<'a> {
    section: &'a Section,
    used: Vec<bool>,
}

impl<'a> Fields<'a> {
    fn new(section: &'a Section) -> Self {
        Fields {
            section,
            used: vec![false; section.entries.len()],
        }
    }

    fn opt(&mut self, key: &str) -> Result<Option<(&'a str, usize)>, ParseError> {
        let mut found = None;
        for (i, e) in self.section.entries.iter().enumerate() {
            if e.key == key {
                if found.is_some() {
                    return err(e.line, format!("duplicate key `{key}`"));
                }
                self.used[i] = true;
                found = Some((e.value.as_str(), e.line));
            }
        }
        Ok(found)
    }

    fn req(&mut self, key: &str) -> Result<(&'a str, usize), ParseError> {
        match self.opt(key)? {
            Some(v) => Ok(v),
            None => err(self.section.line, format!("missing key `{key}`")),
        }
    }

    fn rows<T: FromStr>(&mut self, key: &str) -> Result<Vec<Vec<T>>, ParseError> {
        let mut rows = Vec::new();
        for (i, e) in self.section.entries.iter().enumerate() {
            if e.key == key {
                self.used[i] = true;
                rows.push(numbers(&e.value, e.line)?);
            }
        }
        Ok(rows)
    }

    fn finish(self) -> Result<(), ParseError> {
        match self.used.iter().position(|&u| !u) {
            Some(i) => {
                let e = &self.section.entries[i];
                err(e.line, format!("unknown key `{}` in [{}]", e.key, self.section.kind))
            }
            None => Ok(()),
        }
    }
}

fn number<T: FromStr>(word: &str, line: usize) -> Result<T, ParseError> {
    word.parse()
        .or_else(|_| err(line, format!("expected a nonnegative integer, found `{word}`")))
}

fn numbers<T: FromStr>(text: &str, line: usize) -> Result<Vec<T>, ParseError> {
    text.split_whitespace().map(|w| number(w, line)).collect()
}

fn positive(n: usize, what: &str, line: usize) -> Result<usize, ParseError> {
    if n == 0 {
        return err(line, format!("{what} must be positive"));
    }
    Ok(n)
}

fn boolean(word: &str, line: usize) -> Result<bool, ParseError> {
    match word {
        "true" | "holds" => Ok(true),
        "false" | "fails" => Ok(false),
        _ => err(line, format!("expected true/false, found `{word}`")),
    }
}

fn split_kind(value: &str) -> (&str, Vec<&str>) {
    let mut words = value.split_whitespace();
    let head = words.next().unwrap_or("");
    (head, words.collect())
}

fn arity(args: &[&str], n: usize, kind: &str, line: usize) -> Result<(), ParseError> {
    if args.len() != n {
        return err(line, format!("`{kind}` takes {n} argument(s), got {}", args.len()));
    }
    Ok(())
}

struct Names {
    groups: HashSet<String>,
    cocycles: HashSet<String>,
    algebras: HashSet<String>,
}

impl Names {
    fn group(&self, name: &str, line: usize) -> Result<String, ParseError> {
        if !self.groups.contains(name) {
            return err(line, format!("unresolved group `{name}`"));
        }
        Ok(name.to_string())
    }

    fn cocycle(&self, name: &str, line: usize) -> Result<String, ParseError> {
        if !self.cocycles.contains(name) {
            return err(line, format!("unresolved cocycle `{name}`"));
        }
        Ok(name.to_string())
    }

    fn algebra(&self, name: &str, line: usize) -> Result<String, ParseError> {
        if !self.algebras.contains(name) {
            return err(line, format!("unresolved algebra `{name}`"));
        }
        Ok(name.to_string())
    }
}

fn parse_group(f: &mut Fields, names: &Names) -> Result<GroupSpec, ParseError> {
    let (value, line) = f.req("kind")?;
    let (kind, args) = split_kind(value);
    let num = |i: usize| number::<usize>(args[i], line);
    let spec = match kind {
        "cyclic" | "symmetric" | "alternating" | "dihedral" | "sl2" => {
            arity(&args, 1, kind, line)?;
            let n = positive(num(0)?, "order parameter", line)?;
            match kind {
                "cyclic" => GroupSpec::Cyclic(n),
                "symmetric" => GroupSpec::Symmetric(n),
                "alternating" => GroupSpec::Alternating(n),
                "dihedral" => GroupSpec::Dihedral(n),
                _ => GroupSpec::Sl2(n),
            }
        }
        "quaternion" => {
            arity(&args, 0, kind, line)?;
            GroupSpec::Quaternion
        }
        "elementary_abelian" => {
            arity(&args, 2, kind, line)?;
            GroupSpec::ElementaryAbelian(positive(num(0)?, "p", line)?, num(1)?)
        }
        "heisenberg" => {
            arity(&args, 2, kind, line)?;
            GroupSpec::Heisenberg(number(args[0], line)?, positive(num(1)?, "n", line)?)
        }
        "product" => {
            arity(&args, 2, kind, line)?;
            GroupSpec::Product(names.group(args[0], line)?, names.group(args[1], line)?)
        }
        "catalog" => {
            arity(&args, 1, kind, line)?;
            GroupSpec::Catalog(args[0].to_string())
        }
        "table" => {
            arity(&args, 0, kind, line)?;
            let rows: Vec<Vec<usize>> = f.rows("row")?;
            if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
                return err(line, "malformed table: rows must form a square");
            }
            GroupSpec::Table(rows)
        }
        _ => return err(line, format!("unknown group kind `{kind}`")),
    };
    Ok(spec)
}

fn parse_cocycle(f: &mut Fields, names: &Names) -> Result<CocycleDecl, ParseError> {
    let (g, gline) = f.req("group")?;
    let group = names.group(g, gline)?;
    let (value, line) = f.req("kind")?;
    let (kind, args) = split_kind(value);
    let modulus = |f: &mut Fields| -> Result<u32, ParseError> {
        let (m, l) = f.req("modulus")?;
        Ok(positive(number::<usize>(m, l)?, "modulus", l)? as u32)
    };
    let spec = match kind {
        "trivial" => {
            arity(&args, 0, kind, line)?;
            CocycleSpec::Trivial { modulus: modulus(f)? }
        }
        "heisenberg" => {
            arity(&args, 2, kind, line)?;
            CocycleSpec::Heisenberg {
                p: number(args[0], line)?,
                n: positive(number(args[1], line)?, "n", line)?,
            }
        }
        "table" => {
            arity(&args, 0, kind, line)?;
            let modulus = modulus(f)?;
            let rows: Vec<Vec<u32>> = f.rows("row")?;
            if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
                return err(line, "malformed table: rows must form a square");
            }
            CocycleSpec::Table { modulus, rows }
        }
        "extension" => {
            arity(&args, 1, kind, line)?;
            let generator = match f.opt("generator")? {
                Some((v, l)) => Some(number(v, l)?),
                None => None,
            };
            CocycleSpec::Extension {
                group: names.group(args[0], line)?,
                generator,
            }
        }
        _ => return err(line, format!("unknown cocycle kind `{kind}`")),
    };
    Ok(CocycleDecl { group, spec })
}

fn parse_subgroup(value: &str, line: usize) -> Result<SubgroupSpec, ParseError> {
    let (kind, args) = split_kind(value);
    match kind {
        "whole" if args.is_empty() => Ok(SubgroupSpec::Whole),
        "trivial" if args.is_empty() => Ok(SubgroupSpec::Trivial),
        "gen" => Ok(SubgroupSpec::Generated(
            args.iter().map(|w| number(w, line)).collect::<Result<_, _>>()?,
        )),
        _ => err(line, format!("expected `whole`, `trivial` or `gen <elements>`, found `{value}`")),
    }
}

fn tuple(f: &mut Fields, key: &str) -> Result<Vec<usize>, ParseError> {
    let (v, l) = f.req(key)?;
    let t: Vec<usize> = numbers(v, l)?;
    if t.is_empty() {
        return err(l, format!("`{key}` must be nonempty"));
    }
    Ok(t)
}

fn parse_algebra(f: &mut Fields, names: &Names) -> Result<AlgebraSpec, ParseError> {
    let (value, line) = f.req("kind")?;
    let (kind, args) = split_kind(value);
    let group = |f: &mut Fields| -> Result<String, ParseError> {
        let (g, l) = f.req("group")?;
        names.group(g, l)
    };
    Ok(match kind {
        "group_algebra" => {
            arity(&args, 1, kind, line)?;
            AlgebraSpec::GroupAlgebra {
                group: names.group(args[0], line)?,
            }
        }
        "twisted" => {
            arity(&args, 1, kind, line)?;
            AlgebraSpec::Twisted {
                cocycle: names.cocycle(args[0], line)?,
            }
        }
        "matrix" => {
            arity(&args, 1, kind, line)?;
            AlgebraSpec::Matrix {
                d: positive(number(args[0], line)?, "matrix size", line)?,
            }
        }
        "gsimple" => {
            arity(&args, 0, kind, line)?;
            let group = group(f)?;
            let (s, sl) = f.req("subgroup")?;
            let subgroup = parse_subgroup(s, sl)?;
            let cocycle = match f.opt("cocycle")? {
                Some((c, l)) => Some(names.cocycle(c, l)?),
                None => None,
            };
            AlgebraSpec::GSimple {
                group,
                subgroup,
                cocycle,
                tuple: tuple(f, "tuple")?,
            }
        }
        "ut_scalar_diag" | "ut_full" => {
            arity(&args, 0, kind, line)?;
            let group = group(f)?;
            let tuple = tuple(f, "tuple")?;
            if kind == "ut_scalar_diag" {
                AlgebraSpec::UtScalar { group, tuple }
            } else {
                AlgebraSpec::UtFull { group, tuple }
            }
        }
        "tensor_trivial" => {
            arity(&args, 2, kind, line)?;
            AlgebraSpec::TensorTrivial {
                left: names.algebra(args[0], line)?,
                right: names.algebra(args[1], line)?,
            }
        }
        "quotient_grading" => {
            arity(&args, 1, kind, line)?;
            let algebra = names.algebra(args[0], line)?;
            let (s, sl) = f.req("normal")?;
            AlgebraSpec::QuotientGrading {
                algebra,
                normal: parse_subgroup(s, sl)?,
            }
        }
        _ => return err(line, format!("unknown algebra kind `{kind}`")),
    })
}

fn parse_rho(f: &mut Fields) -> Result<RhoSpec, ParseError> {
    match f.opt("rho")? {
        None | Some(("regular", _)) => Ok(RhoSpec::Regular),
        Some(("clock_shift", _)) => Ok(RhoSpec::ClockShift),
        Some((v, l)) => err(l, format!("unknown representation `{v}`")),
    }
}

fn parse_reps(f: &mut Fields) -> Result<Option<Vec<usize>>, ParseError> {
    match f.opt("reps")? {
        Some((v, l)) => Ok(Some(numbers(v, l)?)),
        None => Ok(None),
    }
}

fn parse_check(f: &mut Fields, names: &Names) -> Result<CheckSpec, ParseError> {
    let (kind, line) = f.req("kind")?;
    let algebra = |f: &mut Fields| -> Result<String, ParseError> {
        let (a, l) = f.req("algebra")?;
        names.algebra(a, l)
    };
    let group = |f: &mut Fields| -> Result<String, ParseError> {
        let (g, l) = f.req("group")?;
        names.group(g, l)
    };
    let expect_bool = |f: &mut Fields| -> Result<bool, ParseError> {
        match f.opt("expect")? {
            Some((v, l)) => boolean(v, l),
            None => Ok(true),
        }
    };
    Ok(match kind {
        "grading" => {
            let algebra = algebra(f)?;
            let (p, pl) = f.req("property")?;
            let property = match p {
                "connected" => GradingProperty::Connected,
                "strong" => GradingProperty::Strong,
                "coset" => GradingProperty::Coset,
                "witness" => GradingProperty::Witness,
                _ => return err(pl, format!("unknown grading property `{p}`")),
            };
            CheckSpec::Grading {
                algebra,
                property,
                expect: expect_bool(f)?,
            }
        }
        "invariants" => {
            let algebra = algebra(f)?;
            let (q, ql) = f.req("quantity")?;
            let quantity = match q {
                "radical_dim" => Quantity::RadicalDim,
                "degrees" => Quantity::Degrees,
                "exponent" => Quantity::Exponent,
                "pi_degree" => Quantity::PiDegree,
                "codimensions" => {
                    let (n, nl) = f.req("n")?;
                    Quantity::Codimensions(positive(number(n, nl)?, "n", nl)?)
                }
                _ => return err(ql, format!("unknown quantity `{q}`")),
            };
            let (e, el) = f.req("expect")?;
            CheckSpec::Invariants {
                algebra,
                quantity,
                expect: numbers(e, el)?,
            }
        }
        "embedding" => {
            let (c, cl) = f.req("construction")?;
            let cocycle = |f: &mut Fields| -> Result<String, ParseError> {
                let (a, l) = f.req("cocycle")?;
                names.cocycle(a, l)
            };
            let subgroup = |f: &mut Fields| -> Result<SubgroupSpec, ParseError> {
                let (s, l) = f.req("subgroup")?;
                parse_subgroup(s, l)
            };
            CheckSpec::Embedding(match c {
                "regular" => Construction::Regular {
                    group: group(f)?,
                    subgroup: subgroup(f)?,
                    reps: parse_reps(f)?,
                },
                "untwist" => Construction::Untwist {
                    cocycle: cocycle(f)?,
                    rho: parse_rho(f)?,
                },
                "chain" => Construction::Chain {
                    group: group(f)?,
                    subgroup: subgroup(f)?,
                    reps: parse_reps(f)?,
                    cocycle: cocycle(f)?,
                    rho: parse_rho(f)?,
                },
                _ => return err(cl, format!("unknown construction `{c}`")),
            })
        }
        "corollary2" => CheckSpec::Corollary2 {
            group: group(f)?,
            algebra: algebra(f)?,
        },
        "corollary_pid" => CheckSpec::CorollaryPid {
            group: group(f)?,
            algebra: algebra(f)?,
        },
        "main_bound" => {
            let (group, algebra) = (group(f)?, algebra(f)?);
            let (k, kl) = f.req("k")?;
            CheckSpec::MainBound {
                group,
                algebra,
                k: number(k, kl)?,
            }
        }
        "gamma" => CheckSpec::Gamma {
            group: group(f)?,
            expect: match f.opt("expect")? {
                Some((v, l)) => Some(number(v, l)?),
                None => None,
            },
        },
        "permutability" => {
            let group = group(f)?;
            let (n, nl) = f.req("n")?;
            let variant = match f.opt("variant")? {
                None | Some(("permutable", _)) => Variant::Permutable,
                Some(("rewritable", _)) => Variant::Rewritable,
                Some((v, l)) => return err(l, format!("unknown variant `{v}`")),
            };
            CheckSpec::Permutability {
                group,
                n: positive(number(n, nl)?, "n", nl)?,
                variant,
                expect: expect_bool(f)?,
            }
        }
        "sweep" => {
            let group = group(f)?;
            let (i, il) = f.req("instances")?;
            let max_r = match f.opt("max_r")? {
                Some((v, l)) => positive(number(v, l)?, "max_r", l)?,
                None => 4,
            };
            CheckSpec::Sweep {
                group,
                instances: number(i, il)?,
                max_r,
            }
        }
        _ => return err(line, format!("unknown check kind `{kind}`")),
    })
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    let mut sc = Scenario::default();
    let mut names = Names {
        groups: HashSet::new(),
        cocycles: HashSet::new(),
        algebras: HashSet::new(),
    };
    let mut check_ids = HashSet::new();
    for section in sections(text)? {
        let mut f = Fields::new(&section);
        let line = section.line;
        let named = |kind: &str| -> Result<String, ParseError> {
            match &section.name {
                Some(n) => Ok(n.clone()),
                None => err(line, format!("[{kind}] needs a name")),
            }
        };
        match section.kind.as_str() {
            "group" => {
                let name = named("group")?;
                let spec = parse_group(&mut f, &names)?;
                if !names.groups.insert(name.clone()) {
                    return err(line, format!("group `{name}` declared twice"));
                }
                sc.lines.insert(format!("group {name}"), line);
                sc.groups.push((name, spec));
            }
            "cocycle" => {
                let name = named("cocycle")?;
                let decl = parse_cocycle(&mut f, &names)?;
                if !names.cocycles.insert(name.clone()) {
                    return err(line, format!("cocycle `{name}` declared twice"));
                }
                sc.lines.insert(format!("cocycle {name}"), line);
                sc.cocycles.push((name, decl));
            }
            "algebra" => {
                let name = named("algebra")?;
                let spec = parse_algebra(&mut f, &names)?;
                if !names.algebras.insert(name.clone()) {
                    return err(line, format!("algebra `{name}` declared twice"));
                }
                sc.lines.insert(format!("algebra {name}"), line);
                sc.algebras.push((name, spec));
            }
            "check" => {
                let spec = parse_check(&mut f, &names)?;
                let budget = match f.opt("budget")? {
                    Some((v, l)) => Some(positive(number(v, l)?, "budget", l)? as u64),
                    None => None,
                };
                if let Some(id) = &section.name {
                    if !check_ids.insert(id.clone()) {
                        return err(line, format!("check `{id}` declared twice"));
                    }
                }
                sc.lines.insert(format!("check {}", sc.checks.len()), line);
                sc.checks.push(CheckDecl {
                    id: section.name.clone(),
                    spec,
                    budget,
                });
            }
            other => return err(line, format!("unknown section kind `{other}`")),
        }
        f.finish()?;
    }
    Ok(sc)
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn subgroup_text(s: &SubgroupSpec) -> String {
    match s {
        SubgroupSpec::Whole => "whole".into(),
        SubgroupSpec::Trivial => "trivial".into(),
        SubgroupSpec::Generated(g) if g.is_empty() => "gen".into(),
        SubgroupSpec::Generated(g) => format!("gen {}", join(g)),
    }
}

fn rho_text(r: RhoSpec) -> &'static str {
    match r {
        RhoSpec::Regular => "regular",
        RhoSpec::ClockShift => "clock_shift",
    }
}

/// The `key = value` lines of a check, in canonical order.
pub fn check_entries(spec: &CheckSpec) -> Vec<(&'static str, String)> {
    let mut e = vec![("kind", spec.kind().to_string())];
    match spec {
        CheckSpec::Grading {
            algebra,
            property,
            expect,
        } => {
            e.push(("algebra", algebra.clone()));
            let p = match property {
                GradingProperty::Connected => "connected",
                GradingProperty::Strong => "strong",
                GradingProperty::Coset => "coset",
                GradingProperty::Witness => "witness",
            };
            e.push(("property", p.into()));
            e.push(("expect", expect.to_string()));
        }
        CheckSpec::Invariants {
            algebra,
            quantity,
            expect,
        } => {
            e.push(("algebra", algebra.clone()));
            let q = match quantity {
                Quantity::RadicalDim => "radical_dim",
                Quantity::Degrees => "degrees",
                Quantity::Exponent => "exponent",
                Quantity::PiDegree => "pi_degree",
                Quantity::Codimensions(_) => "codimensions",
            };
            e.push(("quantity", q.into()));
            if let Quantity::Codimensions(n) = quantity {
                e.push(("n", n.to_string()));
            }
            e.push(("expect", join(expect)));
        }
        CheckSpec::Embedding(c) => match c {
            Construction::Regular { group, subgroup, reps } => {
                e.push(("construction", "regular".into()));
                e.push(("group", group.clone()));
                e.push(("subgroup", subgroup_text(subgroup)));
                if let Some(r) = reps {
                    e.push(("reps", join(r)));
                }
            }
            Construction::Untwist { cocycle, rho } => {
                e.push(("construction", "untwist".into()));
                e.push(("cocycle", cocycle.clone()));
                e.push(("rho", rho_text(*rho).into()));
            }
            Construction::Chain {
                group,
                subgroup,
                reps,
                cocycle,
                rho,
            } => {
                e.push(("construction", "chain".into()));
                e.push(("group", group.clone()));
                e.push(("subgroup", subgroup_text(subgroup)));
                if let Some(r) = reps {
                    e.push(("reps", join(r)));
                }
                e.push(("cocycle", cocycle.clone()));
                e.push(("rho", rho_text(*rho).into()));
            }
        },
        CheckSpec::Corollary2 { group, algebra } | CheckSpec::CorollaryPid { group, algebra } => {
            e.push(("group", group.clone()));
            e.push(("algebra", algebra.clone()));
        }
        CheckSpec::MainBound { group, algebra, k } => {
            e.push(("group", group.clone()));
            e.push(("algebra", algebra.clone()));
            e.push(("k", k.to_string()));
        }
        CheckSpec::Gamma { group, expect } => {
            e.push(("group", group.clone()));
            if let Some(x) = expect {
                e.push(("expect", x.to_string()));
            }
        }
        CheckSpec::Permutability {
            group,
            n,
            variant,
            expect,
        } => {
            e.push(("group", group.clone()));
            e.push(("n", n.to_string()));
            let v = match variant {
                Variant::Permutable => "permutable",
                Variant::Rewritable => "rewritable",
            };
            e.push(("variant", v.into()));
            e.push(("expect", expect.to_string()));
        }
        CheckSpec::Sweep {
            group,
            instances,
            max_r,
        } => {
            e.push(("group", group.clone()));
            e.push(("instances", instances.to_string()));
            e.push(("max_r", max_r.to_string()));
        }
    }
    e
}

/// Canonical text; `parse_scenario(&print_scenario(s)) == s`.
pub fn print_scenario(sc: &Scenario) -> String {
    let mut out = String::new();
    let mut block = |header: String, lines: Vec<(&str, String)>| {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&header);
        out.push('\n');
        for (k, v) in lines {
            let _ = writeln!(out, "{k} = {v}");
        }
    };
    for (name, spec) in &sc.groups {
        let mut lines = Vec::new();
        let kind = match spec {
            GroupSpec::Cyclic(n) => format!("cyclic {n}"),
            GroupSpec::Symmetric(n) => format!("symmetric {n}"),
            GroupSpec::Alternating(n) => format!("alternating {n}"),
            GroupSpec::Dihedral(n) => format!("dihedral {n}"),
            GroupSpec::Quaternion => "quaternion".into(),
            GroupSpec::ElementaryAbelian(p, r) => format!("elementary_abelian {p} {r}"),
            GroupSpec::Sl2(p) => format!("sl2 {p}"),
            GroupSpec::Heisenberg(p, n) => format!("heisenberg {p} {n}"),
            GroupSpec::Product(a, b) => format!("product {a} {b}"),
            GroupSpec::Catalog(c) => format!("catalog {c}"),
            GroupSpec::Table(rows) => {
                lines.extend(rows.iter().map(|r| ("row", join(r))));
                "table".into()
            }
        };
        lines.insert(0, ("kind", kind));
        block(format!("[group {name}]"), lines);
    }
    for (name, decl) in &sc.cocycles {
        let mut lines = vec![("group", decl.group.clone())];
        match &decl.spec {
            CocycleSpec::Trivial { modulus } => {
                lines.push(("kind", "trivial".into()));
                lines.push(("modulus", modulus.to_string()));
            }
            CocycleSpec::Heisenberg { p, n } => lines.push(("kind", format!("heisenberg {p} {n}"))),
            CocycleSpec::Table { modulus, rows } => {
                lines.push(("kind", "table".into()));
                lines.push(("modulus", modulus.to_string()));
                lines.extend(rows.iter().map(|r| ("row", join(r))));
            }
            CocycleSpec::Extension { group, generator } => {
                lines.push(("kind", format!("extension {group}")));
                if let Some(g) = generator {
                    lines.push(("generator", g.to_string()));
                }
            }
        }
        block(format!("[cocycle {name}]"), lines);
    }
    for (name, spec) in &sc.algebras {
        let lines = match spec {
            AlgebraSpec::GroupAlgebra { group } => vec![("kind", format!("group_algebra {group}"))],
            AlgebraSpec::Twisted { cocycle } => vec![("kind", format!("twisted {cocycle}"))],
            AlgebraSpec::Matrix { d } => vec![("kind", format!("matrix {d}"))],
            AlgebraSpec::GSimple {
                group,
                subgroup,
                cocycle,
                tuple,
            } => {
                let mut l = vec![
                    ("kind", "gsimple".to_string()),
                    ("group", group.clone()),
                    ("subgroup", subgroup_text(subgroup)),
                ];
                if let Some(c) = cocycle {
                    l.push(("cocycle", c.clone()));
                }
                l.push(("tuple", join(tuple)));
                l
            }
            AlgebraSpec::UtScalar { group, tuple } => vec![
                ("kind", "ut_scalar_diag".into()),
                ("group", group.clone()),
                ("tuple", join(tuple)),
            ],
            AlgebraSpec::UtFull { group, tuple } => vec![
                ("kind", "ut_full".into()),
                ("group", group.clone()),
                ("tuple", join(tuple)),
            ],
            AlgebraSpec::TensorTrivial { left, right } => vec![("kind", format!("tensor_trivial {left} {right}"))],
            AlgebraSpec::QuotientGrading { algebra, normal } => vec![
                ("kind", format!("quotient_grading {algebra}")),
                ("normal", subgroup_text(normal)),
            ],
        };
        block(format!("[algebra {name}]"), lines);
    }
    for c in &sc.checks {
        let header = match &c.id {
            Some(id) => format!("[check {id}]"),
            None => "[check]".into(),
        };
        let mut lines = check_entries(&c.spec);
        if let Some(b) = c.budget {
            lines.push(("budget", b.to_string()));
        }
        block(header, lines);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal() {
        let sc = parse_scenario("[group G]\nkind = cyclic 2\n\n[check]\nkind = gamma\ngroup = G\n").unwrap();
        assert_eq!(sc.groups, vec![("G".into(), GroupSpec::Cyclic(2))]);
        assert_eq!(sc.checks.len(), 1);
        assert_eq!(parse_scenario(&print_scenario(&sc)).unwrap(), sc);
    }

    #[test]
    fn positioned_errors() {
        let e = parse_scenario("[group G]\nkind = cyclic 2\n[algebra T]\nkind = twisted missing\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("unresolved cocycle `missing`"));
        let e = parse_scenario("[group G]\nkind = dodecahedral 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_scenario("[group G]\nkind = table\nrow = 0 1\nrow = 1\n").unwrap_err();
        assert!(e.message.contains("malformed table"));
        let e = parse_scenario("[group G]\nkind = cyclic 2\ncolour = red\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_scenario("kind = cyclic 2\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_scenario("[group G]\nkind = cyclic 2\n[check]\nkind = gamma\ngroup = G\nbudget = 0\n").unwrap_err();
        assert_eq!(e.line, 6);
    }

    #[test]
    fn comments_and_blank_lines() {
        let sc = parse_scenario("# header\n\n[group G] # the group\nkind = cyclic 3 # order three\n").unwrap();
        assert_eq!(sc.groups[0].1, GroupSpec::Cyclic(3));
    }
}
