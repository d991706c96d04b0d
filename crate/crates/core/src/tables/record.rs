//! Line-oriented table records.
//!
//! ```text
//! # space, params, degree, free_rank, torsion, validity, citation
//! E7,   -,   11,      1, -,       always,             Bott-Samelson (1958)
//! Sp,   r,   q%8=3,   1, -,       q-1<=4r,            Bott periodicity
//! S,    k=6, 12,      0, 2,       always,             Toda (1962)
//! S,    k,   k+7,     0, 240,     k>=9,               Toda (1962)
//! SCP2, k=6, 16,      0, 2 4 | 2 2 2, always,         ...
//! ```
//!
//! * `params` is `-`, a free parameter name (`r`), or a fixed binding (`k=6`).
//! * `degree` binds the variable `q`: an integer, an inclusive range `lo..hi`,
//!   a linear expression in the parameter (`k+7`), or a residue `q%8=3`.
//! * `torsion` is `-` or whitespace-separated cyclic orders; `|` separates
//!   alternatives when the group is only known up to a candidate set.
//! * `validity` is `always` or comparisons joined by `&&`; comparisons may be
//!   chained (`r>=q+2>=4`).
//! * `citation` is everything after the sixth comma.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::group::FGAbelianGroup;

pub(crate) type Bindings = BTreeMap<String, i64>;

/// `sum coeff * var + constant`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinExpr {
    terms: Vec<(i64, Option<String>)>,
}

impl LinExpr {
    fn parse(src: &str) -> std::result::Result<Self, String> {
        let src: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err("empty expression".into());
        }
        let mut terms = Vec::new();
        let mut rest = src.as_str();
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            terms.push(parse_term(&rest[..end], sign)?);
            if end == rest.len() {
                break;
            }
            sign = if rest.as_bytes()[end] == b'+' { 1 } else { -1 };
            rest = &rest[end + 1..];
        }
        Ok(LinExpr { terms })
    }

    fn eval(&self, env: &Bindings) -> Option<i64> {
        self.terms.iter().try_fold(0i64, |acc, (c, var)| {
            let v = match var {
                None => 1,
                Some(name) => *env.get(name)?,
            };
            Some(acc + c * v)
        })
    }

    fn vars(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().filter_map(|(_, v)| v.as_deref())
    }
}

fn parse_term(t: &str, sign: i64) -> std::result::Result<(i64, Option<String>), String> {
    if t.is_empty() {
        return Err("dangling operator".into());
    }
    let t = t.replace('*', "");
    let split = t.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(t.len());
    let (num, var) = t.split_at(split);
    let coeff = if num.is_empty() {
        1
    } else {
        num.parse::<i64>()
            .map_err(|_| format!("bad coefficient `{num}`"))?
    };
    if !var.is_empty() && !var.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(format!("bad variable `{var}`"));
    }
    Ok((sign * coeff, (!var.is_empty()).then(|| var.to_string())))
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, var)) in self.terms.iter().enumerate() {
            let (sign, mag) = if *c < 0 { ('-', -c) } else { ('+', *c) };
            if i > 0 || sign == '-' {
                write!(f, "{sign}")?;
            }
            match var {
                Some(v) if mag == 1 => write!(f, "{v}")?,
                Some(v) => write!(f, "{mag}{v}")?,
                None => write!(f, "{mag}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Le,
    Ge,
    Lt,
    Gt,
    Eq,
    Ne,
}

impl Cmp {
    fn holds(self, a: i64, b: i64) -> bool {
        match self {
            Cmp::Le => a <= b,
            Cmp::Ge => a >= b,
            Cmp::Lt => a < b,
            Cmp::Gt => a > b,
            Cmp::Eq => a == b,
            Cmp::Ne => a != b,
        }
    }
}

/// Conjunction of linear comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    source: String,
    clauses: Vec<(LinExpr, Cmp, LinExpr)>,
}

impl Predicate {
    fn parse(src: &str) -> std::result::Result<Self, String> {
        let source = src.trim().to_string();
        if source == "always" {
            return Ok(Predicate {
                source,
                clauses: Vec::new(),
            });
        }
        let mut clauses = Vec::new();
        for conj in source.split("&&") {
            let (exprs, cmps) = split_chain(conj)?;
            if cmps.is_empty() {
                return Err(format!("`{}` is not a comparison", conj.trim()));
            }
            let exprs = exprs
                .iter()
                .map(|e| LinExpr::parse(e))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            for (i, cmp) in cmps.into_iter().enumerate() {
                clauses.push((exprs[i].clone(), cmp, exprs[i + 1].clone()));
            }
        }
        Ok(Predicate { source, clauses })
    }

    fn eval(&self, env: &Bindings) -> Option<bool> {
        self.clauses.iter().try_fold(true, |acc, (l, c, r)| {
            Some(acc && c.holds(l.eval(env)?, r.eval(env)?))
        })
    }

    fn vars(&self) -> impl Iterator<Item = &str> {
        self.clauses
            .iter()
            .flat_map(|(l, _, r)| l.vars().chain(r.vars()))
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn split_chain(src: &str) -> std::result::Result<(Vec<String>, Vec<Cmp>), String> {
    const OPS: [(&str, Cmp); 6] = [
        ("<=", Cmp::Le),
        (">=", Cmp::Ge),
        ("!=", Cmp::Ne),
        ("<", Cmp::Lt),
        (">", Cmp::Gt),
        ("=", Cmp::Eq),
    ];
    let mut exprs = Vec::new();
    let mut cmps = Vec::new();
    let mut cur = String::new();
    let mut rest = src;
    'outer: while !rest.is_empty() {
        for (tok, cmp) in OPS {
            if let Some(r) = rest.strip_prefix(tok) {
                exprs.push(std::mem::take(&mut cur));
                cmps.push(cmp);
                rest = r;
                continue 'outer;
            }
        }
        let c = rest.chars().next().expect("nonempty");
        cur.push(c);
        rest = &rest[c.len_utf8()..];
    }
    exprs.push(cur);
    Ok((exprs, cmps))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamSpec {
    None,
    Free(String),
    Fixed(String, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreePattern {
    Exact(i64),
    Range(i64, i64),
    Expr(LinExpr),
    Residue { modulus: i64, residue: i64 },
}

impl fmt::Display for DegreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreePattern::Exact(d) => write!(f, "{d}"),
            DegreePattern::Range(lo, hi) => write!(f, "{lo}..{hi}"),
            DegreePattern::Expr(e) => write!(f, "{e}"),
            DegreePattern::Residue { modulus, residue } => write!(f, "q%{modulus}={residue}"),
        }
    }
}

/// Stored value of a table row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableValue {
    Group(FGAbelianGroup),
    Candidates(Vec<FGAbelianGroup>),
}

impl fmt::Display for TableValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableValue::Group(g) => write!(f, "{g}"),
            TableValue::Candidates(gs) => {
                let parts: Vec<String> = gs.iter().map(ToString::to_string).collect();
                write!(f, "one of {{{}}}", parts.join("; "))
            }
        }
    }
}

/// One row of a homotopy-group table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub space: String,
    pub params: ParamSpec,
    pub degree: DegreePattern,
    pub value: TableValue,
    pub validity: Predicate,
    pub citation: String,
    pub origin: String,
    pub line: usize,
}

impl TableEntry {
    /// Parses one non-comment line.
    pub fn parse(line: &str, origin: &str, line_no: usize) -> Result<TableEntry> {
        let fail = |message: String| Error::TableSyntax {
            origin: origin.to_string(),
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.splitn(7, ',').map(str::trim).collect();
        if fields.len() != 7 {
            return Err(fail(format!(
                "expected 7 comma-separated fields, found {}",
                fields.len()
            )));
        }
        let space = fields[0];
        if space.is_empty() || !space.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(fail(format!("bad space name `{space}`")));
        }
        let params = parse_params(fields[1]).map_err(fail)?;
        let degree = parse_degree(fields[2]).map_err(fail)?;
        let free_rank: u32 = fields[3]
            .parse()
            .map_err(|_| fail(format!("bad free rank `{}`", fields[3])))?;
        let value = parse_torsion(fields[4], free_rank).map_err(fail)?;
        let validity = Predicate::parse(fields[5]).map_err(fail)?;
        let citation = fields[6].to_string();
        if citation.is_empty() {
            return Err(fail("every row needs a citation".into()));
        }

        let mut known: Vec<&str> = vec!["q"];
        if let ParamSpec::Free(p) | ParamSpec::Fixed(p, _) = &params {
            known.push(p);
        }
        let degree_vars: Vec<&str> = match &degree {
            DegreePattern::Expr(e) => e.vars().collect(),
            _ => Vec::new(),
        };
        if let Some(v) = validity
            .vars()
            .chain(degree_vars.iter().copied())
            .find(|v| !known.contains(v))
        {
            return Err(fail(format!("unbound variable `{v}`")));
        }
        if degree_vars.contains(&"q") {
            return Err(fail("a degree expression cannot mention q".into()));
        }

        Ok(TableEntry {
            space: space.to_string(),
            params,
            degree,
            value,
            validity,
            citation,
            origin: origin.to_string(),
            line: line_no,
        })
    }

    /// Bindings if this row covers `(space, param, degree)`, and whether its
    /// validity predicate holds there.
    pub(crate) fn matches(&self, space: &str, param: Option<i64>, degree: i64) -> bool {
        if self.space != space {
            return false;
        }
        let mut env = Bindings::new();
        match (&self.params, param) {
            (ParamSpec::None, None) => {}
            (ParamSpec::Free(name), Some(p)) => {
                env.insert(name.clone(), p);
            }
            (ParamSpec::Fixed(name, v), Some(p)) if *v == p => {
                env.insert(name.clone(), p);
            }
            _ => return false,
        }
        let covers = match &self.degree {
            DegreePattern::Exact(d) => *d == degree,
            DegreePattern::Range(lo, hi) => (*lo..=*hi).contains(&degree),
            DegreePattern::Expr(e) => e.eval(&env) == Some(degree),
            DegreePattern::Residue { modulus, residue } => degree.rem_euclid(*modulus) == *residue,
        };
        if !covers {
            return false;
        }
        env.insert("q".to_string(), degree);
        // variables were checked at parse time, so evaluation is total
        self.validity.eval(&env).unwrap_or(false)
    }

    pub fn provenance(&self) -> String {
        format!("{} ({}:{})", self.citation, self.origin, self.line)
    }
}

fn parse_params(src: &str) -> std::result::Result<ParamSpec, String> {
    if src == "-" {
        return Ok(ParamSpec::None);
    }
    match src.split_once('=') {
        Some((name, value)) => {
            let value = value
                .trim()
                .parse()
                .map_err(|_| format!("bad parameter value in `{src}`"))?;
            Ok(ParamSpec::Fixed(name.trim().to_string(), value))
        }
        None if src.chars().all(|c| c.is_ascii_alphabetic()) && !src.is_empty() => {
            Ok(ParamSpec::Free(src.to_string()))
        }
        None => Err(format!("bad parameter spec `{src}`")),
    }
}

fn parse_degree(src: &str) -> std::result::Result<DegreePattern, String> {
    if let Ok(d) = src.parse() {
        return Ok(DegreePattern::Exact(d));
    }
    if let Some((lo, hi)) = src.split_once("..") {
        let lo = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad range `{src}`"))?;
        let hi = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad range `{src}`"))?;
        return Ok(DegreePattern::Range(lo, hi));
    }
    if let Some(rest) = src.strip_prefix("q%") {
        let (m, r) = rest
            .split_once('=')
            .ok_or_else(|| format!("bad residue pattern `{src}`"))?;
        let modulus: i64 = m
            .trim()
            .parse()
            .map_err(|_| format!("bad residue pattern `{src}`"))?;
        let residue: i64 = r
            .trim()
            .parse()
            .map_err(|_| format!("bad residue pattern `{src}`"))?;
        if modulus <= 0 || !(0..modulus).contains(&residue) {
            return Err(format!("bad residue pattern `{src}`"));
        }
        return Ok(DegreePattern::Residue { modulus, residue });
    }
    LinExpr::parse(src).map(DegreePattern::Expr)
}

fn parse_torsion(src: &str, free_rank: u32) -> std::result::Result<TableValue, String> {
    let one = |s: &str| -> std::result::Result<FGAbelianGroup, String> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(FGAbelianGroup::new(free_rank, &[]));
        }
        let orders = s
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| format!("bad torsion coefficient `{t}`"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if orders.iter().any(|&t| t < 2) {
            return Err(format!("torsion coefficients must be >= 2 in `{s}`"));
        }
        Ok(FGAbelianGroup::new(free_rank, &orders))
    };
    if src.contains('|') {
        let mut candidates = src
            .split('|')
            .map(one)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        candidates.dedup();
        Ok(TableValue::Candidates(candidates))
    } else {
        one(src).map(TableValue::Group)
    }
}
