//! Group constructors, the worked order-1260 example, the sweep corpus, and
//! the catalog manifest language (`name = constructor-expression`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::{SubgroupLattice, DEFAULT_LATTICE_CUTOFF};
use crate::perm::Permutation;
use crate::primes;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
    ElementaryAbelian,
}

fn gens(degree: usize, cycles: &[&str]) -> FiniteGroup {
    let gens = cycles
        .iter()
        .map(|c| Permutation::parse(degree, c).expect("valid literal"))
        .collect();
    FiniteGroup::from_generators(degree, gens).expect("valid literal")
}

/// Builds a classical family member. Parameters: `cyclic [n]`,
/// `dihedral [2n]` (n ≥ 3), `symmetric [n]`, `alternating [n]`,
/// `elementary_abelian [p, k]`.
pub fn construct(family: Family, params: &[u64]) -> Result<FiniteGroup> {
    let bad = |msg: &str| Err(Error::InvalidParams(format!("{family:?}: {msg}")));
    let one = |params: &[u64]| -> Result<u64> {
        match params {
            [n] if *n >= 1 => Ok(*n),
            _ => Err(Error::InvalidParams(format!(
                "{family:?} takes one positive parameter"
            ))),
        }
    };
    match family {
        Family::Cyclic => Ok(cyclic(one(params)? as usize)),
        Family::Dihedral => {
            let order = one(params)?;
            if order % 2 != 0 || order < 6 {
                return bad("order must be even and at least 6");
            }
            Ok(dihedral(order as usize / 2))
        }
        Family::Symmetric => Ok(symmetric(one(params)? as usize)),
        Family::Alternating => Ok(alternating(one(params)? as usize)),
        Family::ElementaryAbelian => match params {
            [p, k] if primes::is_prime(*p) && *k >= 1 => {
                Ok(elementary_abelian(*p as usize, *k as usize))
            }
            _ => bad("expects a prime and a positive rank"),
        },
    }
}

/// `C_n` on `n` points.
pub fn cyclic(n: usize) -> FiniteGroup {
    let cycle: Vec<u32> = (0..n as u32).collect();
    let g = Permutation::from_cycles(n, &[&cycle]).expect("cycle");
    FiniteGroup::from_generators(n, vec![g]).expect("degree")
}

/// The dihedral group of order `2n` acting on the `n` vertices of an `n`-gon.
pub fn dihedral(n: usize) -> FiniteGroup {
    let rot: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    FiniteGroup::from_generators(
        n,
        vec![
            Permutation::new(rot).expect("rotation"),
            Permutation::new(refl).expect("reflection"),
        ],
    )
    .expect("degree")
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n < 2 {
        return FiniteGroup::trivial(n.max(1));
    }
    let cycle: Vec<u32> = (0..n as u32).collect();
    FiniteGroup::from_generators(
        n,
        vec![
            Permutation::from_cycles(n, &[&[0, 1]]).expect("transposition"),
            Permutation::from_cycles(n, &[&cycle]).expect("cycle"),
        ],
    )
    .expect("degree")
}

/// `A_n`, generated by the 3-cycles `(0 1 i)`.
pub fn alternating(n: usize) -> FiniteGroup {
    let gens = (2..n as u32)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]).expect("3-cycle"))
        .collect();
    FiniteGroup::from_generators(n.max(1), gens).expect("degree")
}

/// `C_p^k` as `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: usize, k: usize) -> FiniteGroup {
    let degree = p * k;
    let gens = (0..k)
        .map(|j| {
            let cycle: Vec<u32> = (0..p as u32).map(|i| i + (j * p) as u32).collect();
            Permutation::from_cycles(degree, &[&cycle]).expect("cycle")
        })
        .collect();
    FiniteGroup::from_generators(degree, gens).expect("degree")
}

/// `C_7 ⋊ C_3 = ⟨(0 1 2 3 4 5 6), (1 2 4)(3 6 5)⟩`.
pub fn frobenius21() -> FiniteGroup {
    gens(7, &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"])
}

pub struct DirectProduct {
    pub group: FiniteGroup,
    /// The first factor, acting on points `0..deg(G)`.
    pub left: FiniteGroup,
    /// The second factor, acting on points `deg(G)..deg(G)+deg(H)`.
    pub right: FiniteGroup,
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> DirectProduct {
    let degree = g.degree() + h.degree();
    let left_gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| x.shifted(0, degree))
        .collect();
    let right_gens: Vec<Permutation> = h
        .generators()
        .iter()
        .map(|x| x.shifted(g.degree(), degree))
        .collect();
    let all = left_gens.iter().chain(&right_gens).cloned().collect();
    let group = FiniteGroup::from_generators(degree, all).expect("degree");
    let left = FiniteGroup::from_generators(degree, left_gens)
        .expect("degree")
        .with_parent(&group);
    let right = FiniteGroup::from_generators(degree, right_gens)
        .expect("degree")
        .with_parent(&group);
    DirectProduct { group, left, right }
}

/// The cast of the worked example on `G = (C_7 ⋊ C_3) × A_5`, on 12 points:
/// the Frobenius factor on `0..7`, `A_5` on `7..12`.
#[derive(Clone, Debug)]
pub struct Example12 {
    pub g: FiniteGroup,
    /// `A_4 ≤ A_5`, order 12.
    pub b: FiniteGroup,
    /// A Sylow 5-subgroup of `A_5`.
    pub a: FiniteGroup,
    pub c3: FiniteGroup,
    pub c7: FiniteGroup,
    pub a5: FiniteGroup,
    pub f21: FiniteGroup,
    /// `F21 × A`, order 105.
    pub t1: FiniteGroup,
    /// `C_7 A_5`, order 420.
    pub t2: FiniteGroup,
    /// `B C_3`, order 36.
    pub h: FiniteGroup,
    /// `A_5 C_3`, a Hall {2,3,5}-subgroup, order 180.
    pub a5c3: FiniteGroup,
}

pub fn example_1_2() -> Example12 {
    let g = direct_product(&frobenius21(), &alternating(5)).group;
    let sub = |cycles: &[&str]| gens(12, cycles).with_parent(&g);
    let c7 = "(0 1 2 3 4 5 6)";
    let c3 = "(1 2 4)(3 6 5)";
    let a5 = ["(7 8 9)", "(7 8 10)", "(7 8 11)"];
    let b = ["(7 8 9)", "(7 8)(9 10)"];
    let a = "(7 8 9 10 11)";
    Example12 {
        b: sub(&b),
        a: sub(&[a]),
        c3: sub(&[c3]),
        c7: sub(&[c7]),
        a5: sub(&a5),
        f21: sub(&[c7, c3]),
        t1: sub(&[c7, c3, a]),
        t2: sub(&[c7, a5[0], a5[1], a5[2]]),
        h: sub(&[b[0], b[1], c3]),
        a5c3: sub(&[a5[0], a5[1], a5[2], c3]),
        g,
    }
}

/// Representatives of the conjugacy classes of subgroups of `S_n`, in
/// lattice order (by order, then fingerprint).
pub fn symmetric_subgroup_classes(n: usize) -> Result<Vec<FiniteGroup>> {
    let s = symmetric(n);
    let lattice = SubgroupLattice::new(&s, DEFAULT_LATTICE_CUTOFF)?;
    Ok(lattice
        .classes()
        .iter()
        .map(|c| c[0])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|id| lattice.to_group(id))
        .collect())
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: FiniteGroup,
    pub expected_order: u64,
    pub tags: BTreeSet<String>,
}

impl CatalogEntry {
    pub fn new(
        name: impl Into<String>,
        group: FiniteGroup,
        expected_order: u64,
        tags: &[&str],
    ) -> Result<Self> {
        let name = name.into();
        let order = group.order();
        if order != expected_order {
            return Err(Error::InvalidParams(format!(
                "{name}: order {order}, expected {expected_order}"
            )));
        }
        Ok(CatalogEntry {
            name,
            group,
            expected_order,
            tags: tags.iter().map(|t| t.to_string()).collect(),
        })
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Base families (before products) with their expected orders.
fn families(max_order: u64) -> Vec<(Expr, u64)> {
    let mut out = Vec::new();
    for n in 2..=max_order {
        out.push((Expr::call("cyclic", vec![Expr::Int(n)]), n));
    }
    for n in 3..=max_order / 2 {
        out.push((Expr::call("dihedral", vec![Expr::Int(2 * n)]), 2 * n));
    }
    for n in 3.. {
        if factorial(n) > max_order {
            break;
        }
        out.push((Expr::call("symmetric", vec![Expr::Int(n)]), factorial(n)));
    }
    for n in 4.. {
        if factorial(n) / 2 > max_order {
            break;
        }
        out.push((
            Expr::call("alternating", vec![Expr::Int(n)]),
            factorial(n) / 2,
        ));
    }
    for p in (2..=max_order).filter(|&p| primes::is_prime(p)) {
        for k in 2..=MAX_ELEMENTARY_RANK {
            let order = p.pow(k as u32);
            if order > max_order {
                break;
            }
            out.push((
                Expr::call("elementary_abelian", vec![Expr::Int(p), Expr::Int(k)]),
                order,
            ));
        }
    }
    if max_order >= 21 {
        out.push((Expr::name("frobenius21"), 21));
    }
    out
}

/// Rank bound for elementary abelian families in the corpus; higher ranks
/// have subgroup lattices far beyond desk scale for the sweeps.
pub const MAX_ELEMENTARY_RANK: u64 = 4;

/// Elementary abelian factors of rank above two stay out of products.
fn product_factor_ok(e: &Expr) -> bool {
    match e {
        Expr::Call(f, args) if f == "elementary_abelian" => {
            matches!(args[1], Expr::Int(k) if k <= 2)
        }
        _ => true,
    }
}

/// The sweep population: classical families up to `max_order`, pairwise
/// direct products up to `max_order`, `F21`, the order-1260 example when
/// within bound, and class representatives of subgroups of `S_n`, `n ≤ 5`.
pub fn corpus(max_order: u64) -> Result<Vec<CatalogEntry>> {
    let base = families(max_order);
    let mut entries = Vec::new();
    for (expr, order) in &base {
        entries.push(CatalogEntry::new(
            expr.to_string(),
            expr.eval(&BTreeMap::new())?,
            *order,
            &tags_for(expr),
        )?);
    }
    for (i, (a, oa)) in base.iter().enumerate() {
        if !product_factor_ok(a) {
            continue;
        }
        for (b, ob) in &base[i..] {
            if oa * ob > max_order || !product_factor_ok(b) {
                continue;
            }
            let expr = Expr::call("product", vec![a.clone(), b.clone()]);
            entries.push(CatalogEntry::new(
                expr.to_string(),
                expr.eval(&BTreeMap::new())?,
                oa * ob,
                &["product"],
            )?);
        }
    }
    if max_order >= 1260 {
        let ex = example_1_2();
        entries.push(CatalogEntry::new(
            "g1260",
            ex.g,
            1260,
            &["example-1.2", "insoluble"],
        )?);
    }
    let reps = symmetric_subgroup_classes(5)?;
    for (k, g) in reps.into_iter().enumerate() {
        let order = g.order();
        if order <= max_order {
            let expr = Expr::call(
                "symmetric_subgroup",
                vec![Expr::Int(5), Expr::Int(k as u64)],
            );
            entries.push(CatalogEntry::new(
                expr.to_string(),
                g,
                order,
                &["s5-subgroup"],
            )?);
        }
    }
    Ok(entries)
}

fn tags_for(expr: &Expr) -> Vec<&'static str> {
    match expr {
        Expr::Call(f, _) => match f.as_str() {
            "cyclic" => vec!["cyclic", "abelian"],
            "dihedral" => vec!["dihedral"],
            "symmetric" => vec!["symmetric"],
            "alternating" => vec!["alternating"],
            "elementary_abelian" => vec!["abelian"],
            _ => vec![],
        },
        _ => vec!["frobenius"],
    }
}

/// Constructor expressions of the manifest language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Name(String),
    Call(String, Vec<Expr>),
}

impl Expr {
    fn call(f: &str, args: Vec<Expr>) -> Expr {
        Expr::Call(f.to_string(), args)
    }

    fn name(n: &str) -> Expr {
        Expr::Name(n.to_string())
    }

    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = ExprParser {
            src: text.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Evaluates against previously defined manifest names.
    pub fn eval(&self, env: &BTreeMap<String, FiniteGroup>) -> Result<FiniteGroup> {
        let ints = |args: &[Expr]| -> Result<Vec<u64>> {
            args.iter()
                .map(|a| match a {
                    Expr::Int(n) => Ok(*n),
                    other => Err(Error::InvalidParams(format!(
                        "expected integer, got {other}"
                    ))),
                })
                .collect()
        };
        match self {
            Expr::Int(n) => Err(Error::InvalidParams(format!("bare integer {n}"))),
            Expr::Name(n) => match n.as_str() {
                "frobenius21" => Ok(frobenius21()),
                _ => env
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::UnknownEntry(n.clone())),
            },
            Expr::Call(f, args) => match f.as_str() {
                "cyclic" => construct(Family::Cyclic, &ints(args)?),
                "dihedral" => construct(Family::Dihedral, &ints(args)?),
                "symmetric" => construct(Family::Symmetric, &ints(args)?),
                "alternating" => construct(Family::Alternating, &ints(args)?),
                "elementary_abelian" => construct(Family::ElementaryAbelian, &ints(args)?),
                "product" => match args.as_slice() {
                    [a, b] => Ok(direct_product(&a.eval(env)?, &b.eval(env)?).group),
                    _ => Err(Error::InvalidParams("product takes two groups".into())),
                },
                "symmetric_subgroup" => match ints(args)?.as_slice() {
                    [n, k] if *n <= 5 => symmetric_subgroup_classes(*n as usize)?
                        .into_iter()
                        .nth(*k as usize)
                        .ok_or_else(|| Error::InvalidParams(format!("no class {k} in S{n}"))),
                    _ => Err(Error::InvalidParams(
                        "symmetric_subgroup takes n <= 5 and a class index".into(),
                    )),
                },
                other => Err(Error::UnknownEntry(other.to_string())),
            },
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Name(n) => write!(f, "{n}"),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            line: 0,
            message: format!("{msg} at column {}", self.pos + 1),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            return text
                .parse()
                .map(Expr::Int)
                .map_err(|_| self.err("integer overflow"));
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name or integer"));
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .to_string();
        self.skip_ws();
        if self.pos < self.src.len() && self.src[self.pos] == b'(' {
            self.pos += 1;
            let mut args = Vec::new();
            loop {
                args.push(self.expr()?);
                self.skip_ws();
                match self.src.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected `,` or `)`")),
                }
            }
            Ok(Expr::Call(name, args))
        } else {
            Ok(Expr::Name(name))
        }
    }
}

/// A catalog manifest: ordered `name = expression` definitions.
#[derive(Clone, Debug, Default)]
pub struct Manifest {
    pub entries: Vec<(String, Expr)>,
}

/// Names every build knows about.
pub const BUILTIN_MANIFEST: &str = "\
# worked example and its pieces
g1260 = product(frobenius21, alternating(5))
f21 = frobenius21
a5 = alternating(5)
s3 = symmetric(3)
s4 = symmetric(4)
s5 = symmetric(5)
a4 = alternating(4)
d8 = dihedral(8)
v4 = elementary_abelian(2, 2)
";

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, expr) = line.split_once('=').ok_or(Error::Parse {
                line: i + 1,
                message: "expected `name = expression`".into(),
            })?;
            let expr = Expr::parse(expr).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse {
                    line: i + 1,
                    message,
                },
                other => other,
            })?;
            entries.push((name.trim().to_string(), expr));
        }
        Ok(Manifest { entries })
    }

    pub fn builtin() -> Manifest {
        Manifest::parse(BUILTIN_MANIFEST).expect("builtin manifest parses")
    }

    /// Evaluates every entry in order; later entries may name earlier ones.
    pub fn evaluate(&self) -> Result<BTreeMap<String, FiniteGroup>> {
        let mut env = BTreeMap::new();
        for (name, expr) in &self.entries {
            let g = expr.eval(&env)?;
            env.insert(name.clone(), g);
        }
        Ok(env)
    }

    /// Resolves a manifest name, or else a bare constructor expression.
    pub fn resolve(&self, name_or_expr: &str) -> Result<FiniteGroup> {
        let env = self.evaluate()?;
        if let Some(g) = env.get(name_or_expr.trim()) {
            return Ok(g.clone());
        }
        Expr::parse(name_or_expr)?.eval(&env)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(7).order(), 7);
        assert_eq!(cyclic(7).degree(), 7);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(dihedral(4).degree(), 4);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(elementary_abelian(3, 2).order(), 9);
        assert_eq!(cyclic(1).order(), 1);
        assert_eq!(alternating(3).order(), 3);
        assert!(construct(Family::Dihedral, &[7]).is_err());
        assert!(construct(Family::ElementaryAbelian, &[4, 2]).is_err());
        assert!(construct(Family::Cyclic, &[0]).is_err());
    }

    #[test]
    fn frobenius_group() {
        let f = frobenius21();
        assert_eq!(f.order(), 21);
        assert!(!f.is_abelian());
        let c7 = f.sylow_subgroup(7).unwrap();
        assert!(c7.is_normal_in(&f));
    }

    #[test]
    fn products() {
        let p = direct_product(&cyclic(2), &cyclic(3));
        assert_eq!(p.group.order(), 6);
        assert!(p.group.is_cyclic().unwrap());
        assert_eq!(p.group.degree(), 5);
        let t = direct_product(&cyclic(1), &alternating(4));
        assert_eq!(t.group.order(), 12);
        assert!(p.left.is_normal_in(&p.group));
    }

    #[test]
    fn example_cast_orders() {
        let ex = example_1_2();
        assert_eq!(ex.g.order(), 1260);
        assert_eq!(ex.b.order(), 12);
        assert_eq!(ex.a.order(), 5);
        assert_eq!(ex.t1.order(), 105);
        assert_eq!(ex.t2.order(), 420);
        assert_eq!(ex.h.order(), 36);
        assert_eq!(ex.a5c3.order(), 180);
        assert_eq!(ex.b.meet(&ex.t1).unwrap().order(), 1);
        assert!(ex.c7.is_normal_in(&ex.g));
    }

    #[test]
    fn manifest_language() {
        let m = Manifest::parse("# c\nx = cyclic(3)\ny = product(x, alternating(5))\n").unwrap();
        let env = m.evaluate().unwrap();
        assert_eq!(env["y"].order(), 180);
        let err = Manifest::parse("a = cyclic(3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert_eq!(Manifest::builtin().resolve("g1260").unwrap().order(), 1260);
        assert_eq!(
            Manifest::builtin()
                .resolve("product(s3, cyclic(2))")
                .unwrap()
                .order(),
            12
        );
        assert!(Manifest::builtin().resolve("nosuch").is_err());
        let e = Expr::parse("product(cyclic(2), elementary_abelian(3, 2))").unwrap();
        assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn corpus_membership() {
        let names = |c: Vec<CatalogEntry>| c.into_iter().map(|e| e.name).collect::<BTreeSet<_>>();
        let c24 = names(corpus(24).unwrap());
        assert!(c24.contains("symmetric(4)"));
        assert!(c24.contains("dihedral(8)"));
        let c60 = names(corpus(60).unwrap());
        assert!(c60.contains("alternating(5)"));
        assert!(!c60.contains("g1260"));
    }
}
