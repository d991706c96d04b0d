//! Symbolic space expressions.
//!
//! A [`SpaceExpr`] is a tree of atoms (spheres, suspended `CP^2`, two-cell
//! complexes, named pieces, Lie groups, mapping spaces, gauge groups) under
//! wedge, product, loop and suspension. [`SpaceExpr::normalize`] brings a tree
//! to canonical form: wedges and products flattened and sorted by the derived
//! total order, suspensions pushed into spheres and through wedges, loops and
//! suspensions merged, and two-cell complexes with null attaching class
//! replaced by the wedge of their cells. Equality of normalized trees is the
//! notion of "same decomposition" used throughout the crate.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::arith::{prime_factors, CyclicElem};
use crate::tables::StructureGroup;

/// Attaching class of a two-cell complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attach {
    /// A residue, stored with its modulus.
    Class(CyclicElem),
    /// A class known only by name, e.g. `J(xi)`.
    Named(String),
}

/// The named complexes `Z, Z', Z'', Z'''` carrying the top cell in the
/// `n = 6, 8` decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MooreKind {
    Z,
    ZPrime,
    ZDoublePrime,
    ZTriplePrime,
}

impl MooreKind {
    pub const ALL: [MooreKind; 4] = [
        MooreKind::Z,
        MooreKind::ZPrime,
        MooreKind::ZDoublePrime,
        MooreKind::ZTriplePrime,
    ];

    pub fn primes(self) -> usize {
        self as usize
    }
}

/// Variant order is the canonical order of factors and summands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceExpr {
    /// `G_class(base)`, the gauge group of the `group`-bundle labelled `class`.
    Gauge {
        base: Box<SpaceExpr>,
        group: StructureGroup,
        class: String,
    },
    Suspension(u32, Box<SpaceExpr>),
    /// `S^bottom` with one `top`-cell attached.
    TwoCell {
        bottom: u32,
        top: u32,
        attach: Attach,
    },
    /// A named piece with top cell in dimension `2n`.
    Moore {
        kind: MooreKind,
        n: u32,
    },
    /// Cofibre of the split-off spheres: `t` cells of dimension `n` and a
    /// `2n`-cell.
    Cofibre {
        n: u32,
        t: usize,
    },
    /// `Sigma^k CP^2`
    SuspCP2(u32),
    Sphere(u32),
    Loop(u32, Box<SpaceExpr>),
    /// Based mapping space `Map*(domain, codomain)`.
    Map {
        domain: Box<SpaceExpr>,
        codomain: Box<SpaceExpr>,
    },
    LieGroup(StructureGroup),
    Wedge(Vec<SpaceExpr>),
    Product(Vec<SpaceExpr>),
}

use SpaceExpr::*;

impl SpaceExpr {
    pub fn sphere(n: u32) -> Self {
        Sphere(n)
    }

    pub fn two_cell(bottom: u32, top: u32, attach: CyclicElem) -> Self {
        TwoCell {
            bottom,
            top,
            attach: Attach::Class(attach),
        }
    }

    pub fn group(g: StructureGroup) -> Self {
        LieGroup(g)
    }

    pub fn loops(k: u32, x: SpaceExpr) -> Self {
        Loop(k, Box::new(x))
    }

    pub fn suspend(k: u32, x: SpaceExpr) -> Self {
        Suspension(k, Box::new(x))
    }

    pub fn map(domain: SpaceExpr, codomain: SpaceExpr) -> Self {
        Map {
            domain: Box::new(domain),
            codomain: Box::new(codomain),
        }
    }

    pub fn gauge(base: SpaceExpr, group: StructureGroup, class: &str) -> Self {
        Gauge {
            base: Box::new(base),
            group,
            class: class.to_string(),
        }
    }

    /// Normalized wedge of `items`; `items` must be nonempty.
    pub fn wedge(items: Vec<SpaceExpr>) -> Self {
        assert!(!items.is_empty(), "empty wedge");
        Wedge(items).normalize()
    }

    /// Normalized product of `items`; `items` must be nonempty.
    pub fn product(items: Vec<SpaceExpr>) -> Self {
        assert!(!items.is_empty(), "empty product");
        Product(items).normalize()
    }

    pub fn is_atom(&self) -> bool {
        !matches!(self, Wedge(_) | Product(_) | Loop(..) | Suspension(..))
    }

    /// Immediate subtrees.
    pub fn children(&self) -> Vec<&SpaceExpr> {
        match self {
            Gauge { base, .. } => vec![base],
            Suspension(_, x) | Loop(_, x) => vec![x],
            Map { domain, codomain } => vec![domain, codomain],
            Wedge(xs) | Product(xs) => xs.iter().collect(),
            _ => Vec::new(),
        }
    }

    fn map_children(self, f: &impl Fn(SpaceExpr) -> SpaceExpr) -> SpaceExpr {
        match self {
            Gauge { base, group, class } => Gauge {
                base: Box::new(f(*base)),
                group,
                class,
            },
            Suspension(k, x) => Suspension(k, Box::new(f(*x))),
            Loop(k, x) => Loop(k, Box::new(f(*x))),
            Map { domain, codomain } => Map {
                domain: Box::new(f(*domain)),
                codomain: Box::new(f(*codomain)),
            },
            Wedge(xs) => Wedge(xs.into_iter().map(f).collect()),
            Product(xs) => Product(xs.into_iter().map(f).collect()),
            atom => atom,
        }
    }

    fn with_child(&self, i: usize, new: SpaceExpr) -> SpaceExpr {
        let mut out = self.clone();
        match &mut out {
            Gauge { base, .. } => **base = new,
            Suspension(_, x) | Loop(_, x) => **x = new,
            Map { domain, codomain } => {
                if i == 0 {
                    **domain = new
                } else {
                    **codomain = new
                }
            }
            Wedge(xs) | Product(xs) => xs[i] = new,
            _ => unreachable!("atoms have no children"),
        }
        out
    }

    /// Canonical form.
    pub fn normalize(self) -> SpaceExpr {
        self.map_children(&SpaceExpr::normalize).normalize_root()
    }

    // Assumes every child is already normalized.
    fn normalize_root(self) -> SpaceExpr {
        match self {
            TwoCell {
                bottom,
                top,
                attach: Attach::Class(c),
            } if c.is_zero() => Wedge(vec![Sphere(bottom), Sphere(top)]).normalize_root(),
            Suspension(0, x) | Loop(0, x) => *x,
            Suspension(k, x) => match *x {
                Sphere(n) => Sphere(n + k),
                SuspCP2(j) => SuspCP2(j + k),
                Suspension(j, y) => Suspension(k + j, y).normalize_root(),
                Wedge(xs) => Wedge(
                    xs.into_iter()
                        .map(|y| Suspension(k, Box::new(y)).normalize_root())
                        .collect(),
                )
                .normalize_root(),
                other => Suspension(k, Box::new(other)),
            },
            Loop(k, x) => match *x {
                Loop(j, y) => Loop(k + j, y),
                other => Loop(k, Box::new(other)),
            },
            Wedge(xs) => collect_assoc(xs, true),
            Product(xs) => collect_assoc(xs, false),
            other => other,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.clone().normalize() == *self
    }

    /// Every expression reachable by one rewrite at one position. Repeating
    /// until the list is empty reaches [`SpaceExpr::normalize`]'s output,
    /// whatever choices are made along the way.
    pub fn rewrite_steps(&self) -> Vec<SpaceExpr> {
        let mut out = self.root_steps();
        for (i, child) in self.children().into_iter().enumerate() {
            for step in child.rewrite_steps() {
                out.push(self.with_child(i, step));
            }
        }
        out
    }

    fn root_steps(&self) -> Vec<SpaceExpr> {
        let mut out = Vec::new();
        match self {
            TwoCell {
                bottom,
                top,
                attach: Attach::Class(c),
            } if c.is_zero() => out.push(Wedge(vec![Sphere(*bottom), Sphere(*top)])),
            Suspension(0, x) | Loop(0, x) => out.push((**x).clone()),
            Suspension(k, x) => match &**x {
                Sphere(n) => out.push(Sphere(n + k)),
                SuspCP2(j) => out.push(SuspCP2(j + k)),
                Suspension(j, y) => out.push(Suspension(k + j, y.clone())),
                Wedge(xs) => out.push(Wedge(
                    xs.iter()
                        .map(|y| Suspension(*k, Box::new(y.clone())))
                        .collect(),
                )),
                _ => {}
            },
            Loop(k, x) => {
                if let Loop(j, y) = &**x {
                    out.push(Loop(k + j, y.clone()));
                }
            }
            Wedge(xs) | Product(xs) => {
                let is_wedge = matches!(self, Wedge(_));
                let rebuild = |v: Vec<SpaceExpr>| if is_wedge { Wedge(v) } else { Product(v) };
                if xs.len() == 1 {
                    out.push(xs[0].clone());
                }
                for (i, x) in xs.iter().enumerate() {
                    let nested = match x {
                        Wedge(inner) if is_wedge => Some(inner),
                        Product(inner) if !is_wedge => Some(inner),
                        _ => None,
                    };
                    if let Some(inner) = nested {
                        let mut v = xs[..i].to_vec();
                        v.extend(inner.iter().cloned());
                        v.extend(xs[i + 1..].iter().cloned());
                        out.push(rebuild(v));
                    }
                }
                for i in 0..xs.len().saturating_sub(1) {
                    if xs[i] > xs[i + 1] {
                        let mut v = xs.clone();
                        v.swap(i, i + 1);
                        out.push(rebuild(v));
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Dimension of the top cell, for the spaces that are CW complexes.
    pub fn top_dim(&self) -> Option<u32> {
        match self {
            Sphere(n) => Some(*n),
            SuspCP2(k) => Some(k + 4),
            TwoCell { top, .. } => Some(*top),
            Moore { n, .. } | Cofibre { n, .. } => Some(2 * n),
            Suspension(k, x) => x.top_dim().map(|d| d + k),
            Wedge(xs) => xs
                .iter()
                .map(SpaceExpr::top_dim)
                .try_fold(0, |m, d| Some(m.max(d?))),
            _ => None,
        }
    }

    /// Number of positive-dimensional cells, for wedges of spheres, suspended
    /// `CP^2`s and two-cell complexes.
    pub fn cell_count(&self) -> Option<usize> {
        match self {
            Sphere(_) => Some(1),
            SuspCP2(_) | TwoCell { .. } => Some(2),
            Cofibre { t, .. } => Some(t + 1),
            Suspension(_, x) => x.cell_count(),
            Wedge(xs) => xs.iter().map(SpaceExpr::cell_count).sum(),
            _ => None,
        }
    }

    /// Factors of a product; an atom is its own single factor.
    pub fn factors(&self) -> &[SpaceExpr] {
        match self {
            Product(xs) => xs,
            other => std::slice::from_ref(other),
        }
    }

    /// Summands of a wedge; anything else is its own single summand.
    pub fn summands(&self) -> &[SpaceExpr] {
        match self {
            Wedge(xs) => xs,
            other => std::slice::from_ref(other),
        }
    }

    /// Structure groups named anywhere in the tree.
    pub fn groups(&self) -> BTreeSet<StructureGroup> {
        let mut out = BTreeSet::new();
        self.collect_groups(&mut out);
        out
    }

    fn collect_groups(&self, out: &mut BTreeSet<StructureGroup>) {
        match self {
            LieGroup(g) => {
                out.insert(*g);
            }
            Gauge { group, .. } => {
                out.insert(*group);
            }
            _ => {}
        }
        for c in self.children() {
            c.collect_groups(out);
        }
    }
}

fn collect_assoc(xs: Vec<SpaceExpr>, wedge: bool) -> SpaceExpr {
    let mut flat = Vec::with_capacity(xs.len());
    for x in xs {
        match x {
            Wedge(inner) if wedge => flat.extend(inner),
            Product(inner) if !wedge => flat.extend(inner),
            other => flat.push(other),
        }
    }
    flat.sort();
    if flat.len() == 1 {
        return flat.pop().expect("one element");
    }
    if wedge {
        Wedge(flat)
    } else {
        Product(flat)
    }
}

/// Inverts the primes in `primes`: a two-cell complex whose attaching class
/// has order built only from those primes splits into the wedge of its cells.
pub fn localize(expr: &SpaceExpr, primes: &[u64]) -> SpaceExpr {
    fn go(e: SpaceExpr, primes: &[u64]) -> SpaceExpr {
        match e {
            TwoCell {
                bottom,
                top,
                attach: Attach::Class(c),
            } if c.modulus() > 0 && becomes_trivial(c, primes) => {
                Wedge(vec![Sphere(bottom), Sphere(top)])
            }
            other => other.map_children(&|x| go(x, primes)),
        }
    }
    go(expr.clone(), primes).normalize()
}

fn becomes_trivial(c: CyclicElem, primes: &[u64]) -> bool {
    let d = c.modulus();
    let order = d / d.gcd(&(c.value() as u64));
    prime_factors(order).iter().all(|p| primes.contains(p))
}

/// `Map*(Y, G)` for a wedge summand `Y` split off the base of a gauge group.
pub fn split_factor(piece: &SpaceExpr, group: StructureGroup) -> SpaceExpr {
    match piece {
        Sphere(j) => SpaceExpr::loops(*j, LieGroup(group)),
        SuspCP2(0) => SpaceExpr::map(SuspCP2(0), LieGroup(group)),
        SuspCP2(j) => SpaceExpr::loops(*j, SpaceExpr::map(SuspCP2(0), LieGroup(group))),
        Suspension(k, x) => SpaceExpr::loops(*k, split_factor(x, group)),
        other => SpaceExpr::map(other.clone(), LieGroup(group)),
    }
}

/// Splits every gauge factor whose base is a wedge: the summand carrying the
/// unique top cell stays as the base and each other summand `Y` becomes a
/// factor `Map*(Y, G)`. Bases without a unique top summand are left alone.
pub fn split_gauge(expr: &SpaceExpr) -> SpaceExpr {
    let mut out = Vec::new();
    for f in expr.clone().normalize().factors() {
        match f {
            Gauge { base, group, class } => {
                let summands = base.summands();
                let tops: Vec<Option<u32>> = summands.iter().map(SpaceExpr::top_dim).collect();
                let max = tops.iter().flatten().max().copied();
                let top_idx: Vec<usize> = (0..summands.len())
                    .filter(|&i| tops[i].is_some() && tops[i] == max)
                    .collect();
                if summands.len() < 2 || top_idx.len() != 1 || tops.iter().any(Option::is_none) {
                    out.push(f.clone());
                    continue;
                }
                let keep = top_idx[0];
                out.push(SpaceExpr::gauge(summands[keep].clone(), *group, class));
                for (i, y) in summands.iter().enumerate() {
                    if i != keep {
                        out.push(split_factor(y, *group));
                    }
                }
            }
            other => out.push(other.clone()),
        }
    }
    SpaceExpr::product(out)
}

/// Output format for [`render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Latex,
}

impl std::str::FromStr for Format {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            _ => Err(crate::error::Error::invalid(format!(
                "unknown format `{s}`"
            ))),
        }
    }
}

pub fn render(expr: &SpaceExpr, format: Format) -> String {
    match format {
        Format::Text => text(expr, None),
        Format::Latex => latex(expr),
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Format::Text))
    }
}

/// The group a gauge factor may leave implicit: the unique structure group
/// named by the other factors of its product.
pub fn implicit_group(others: &[&SpaceExpr]) -> Option<StructureGroup> {
    let mut groups = BTreeSet::new();
    for o in others {
        groups.extend(o.groups());
    }
    (groups.len() == 1).then(|| *groups.iter().next().expect("one group"))
}

fn text(e: &SpaceExpr, implicit: Option<StructureGroup>) -> String {
    let operand = |x: &SpaceExpr| match x {
        Wedge(_) | Product(_) => format!("({})", text(x, None)),
        _ => text(x, None),
    };
    match e {
        Sphere(n) => format!("S^{n}"),
        SuspCP2(0) => "CP^2".into(),
        SuspCP2(k) => format!("SCP2^{k}"),
        TwoCell {
            bottom,
            top,
            attach,
        } => match attach {
            Attach::Class(c) => format!("TC({bottom},{top};{} mod {})", c.value(), c.modulus()),
            Attach::Named(s) => format!("TC({bottom},{top};{s})"),
        },
        Moore { kind, n } => format!("Z{}({n})", "'".repeat(kind.primes())),
        Cofibre { n, t } => format!("X({n};{t})"),
        LieGroup(g) => g.to_string(),
        Map { domain, codomain } => {
            format!("Map*({}, {})", text(domain, None), text(codomain, None))
        }
        Gauge { base, group, class } => {
            if implicit == Some(*group) {
                format!("G_{class}({})", text(base, None))
            } else {
                format!("G_{class}({}; {group})", text(base, None))
            }
        }
        Loop(k, x) => format!("Omega^{k} {}", operand(x)),
        Suspension(k, x) => format!("Sigma^{k} {}", operand(x)),
        Wedge(xs) => xs.iter().map(operand).collect::<Vec<_>>().join(" v "),
        Product(xs) => xs
            .iter()
            .enumerate()
            .map(|(i, x)| match x {
                Gauge { .. } => {
                    let others: Vec<&SpaceExpr> = xs
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, o)| o)
                        .collect();
                    text(x, implicit_group(&others))
                }
                _ => operand(x),
            })
            .collect::<Vec<_>>()
            .join(" x "),
    }
}

fn latex(e: &SpaceExpr) -> String {
    let operand = |x: &SpaceExpr| match x {
        Wedge(_) | Product(_) => format!("({})", latex(x)),
        _ => latex(x),
    };
    match e {
        Sphere(n) => format!("S^{{{n}}}"),
        SuspCP2(0) => r"\mathbb{C}P^{2}".into(),
        SuspCP2(k) => format!(r"\Sigma^{{{k}}}\mathbb{{C}}P^{{2}}"),
        TwoCell {
            bottom,
            top,
            attach,
        } => {
            let a = match attach {
                Attach::Class(c) => format!(r"{} \bmod {}", c.value(), c.modulus()),
                Attach::Named(s) => s.replace("xi", r"\xi"),
            };
            format!("S^{{{bottom}}} \\cup_{{{a}}} e^{{{top}}}")
        }
        Moore { kind, .. } => match kind.primes() {
            0 => "Z".into(),
            p => format!("Z^{{{}}}", r"\prime".repeat(p)),
        },
        Cofibre { t, .. } => format!("X_{{{t}}}"),
        LieGroup(g) => g.latex(),
        Map { domain, codomain } => format!(
            r"\mathrm{{Map}}^{{*}}({}, {})",
            latex(domain),
            latex(codomain)
        ),
        Gauge { base, class, .. } => {
            let class = if class == "alpha" {
                r"\alpha"
            } else {
                class.as_str()
            };
            format!(r"\mathcal{{G}}_{{{class}}}({})", latex(base))
        }
        Loop(k, x) => format!(r"\Omega^{{{k}}} {}", operand(x)),
        Suspension(k, x) => format!(r"\Sigma^{{{k}}} {}", operand(x)),
        Wedge(xs) => xs.iter().map(operand).collect::<Vec<_>>().join(r" \vee "),
        Product(xs) => xs.iter().map(operand).collect::<Vec<_>>().join(r" \times "),
    }
}
