//! Curated homotopy-group tables with provenance.
//!
//! Tables are plain data files (see [`record`] for the format). A default
//! set is compiled in; [`TableSet::load_dir`] reads `*.tbl` files from a
//! directory instead, so audits and extensions need no rebuild. Queries
//! outside every row's validity range are reported as
//! [`Error::NotTabulated`], never guessed.

mod group;
pub mod record;

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

pub use group::FGAbelianGroup;
pub use record::{TableEntry, TableValue};

use crate::error::{Error, Result};

const BUILTIN: &[(&str, &str)] = &[
    (
        "exceptional.tbl",
        include_str!("../../tables/exceptional.tbl"),
    ),
    ("bott.tbl", include_str!("../../tables/bott.tbl")),
    ("spheres.tbl", include_str!("../../tables/spheres.tbl")),
    (
        "suspended_cp2.tbl",
        include_str!("../../tables/suspended_cp2.tbl"),
    ),
];

/// Structure groups with tabulated homotopy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureGroup {
    E6,
    E7,
    E8,
    Sp(u32),
    Spin(u32),
}

impl StructureGroup {
    pub fn latex(&self) -> String {
        match self {
            StructureGroup::E6 => "E_{6}".into(),
            StructureGroup::E7 => "E_{7}".into(),
            StructureGroup::E8 => "E_{8}".into(),
            StructureGroup::Sp(r) => format!("Sp({r})"),
            StructureGroup::Spin(r) => format!("Spin({r})"),
        }
    }
}

impl fmt::Display for StructureGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureGroup::E6 => write!(f, "E6"),
            StructureGroup::E7 => write!(f, "E7"),
            StructureGroup::E8 => write!(f, "E8"),
            StructureGroup::Sp(r) => write!(f, "Sp({r})"),
            StructureGroup::Spin(r) => write!(f, "Spin({r})"),
        }
    }
}

impl FromStr for StructureGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rank = |inner: &str| {
            inner
                .strip_suffix(')')
                .and_then(|r| r.trim().parse::<u32>().ok())
                .filter(|&r| r >= 1)
                .ok_or_else(|| Error::invalid(format!("bad group rank in `{s}`")))
        };
        match s {
            "E6" => Ok(StructureGroup::E6),
            "E7" => Ok(StructureGroup::E7),
            "E8" => Ok(StructureGroup::E8),
            _ => {
                if let Some(inner) = s.strip_prefix("Spin(") {
                    Ok(StructureGroup::Spin(rank(inner)?))
                } else if let Some(inner) = s.strip_prefix("Sp(") {
                    Ok(StructureGroup::Sp(rank(inner)?))
                } else {
                    Err(Error::invalid(format!("unknown structure group `{s}`")))
                }
            }
        }
    }
}

/// A space whose homotopy groups may be looked up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Group(StructureGroup),
    Sphere(u32),
    /// `Sigma^k CP^2`
    SuspCP2(u32),
    SphereSpectrum,
}

impl Space {
    fn key(&self) -> (&'static str, Option<i64>) {
        match *self {
            Space::Group(StructureGroup::E6) => ("E6", None),
            Space::Group(StructureGroup::E7) => ("E7", None),
            Space::Group(StructureGroup::E8) => ("E8", None),
            Space::Group(StructureGroup::Sp(r)) => ("Sp", Some(r as i64)),
            Space::Group(StructureGroup::Spin(r)) => ("Spin", Some(r as i64)),
            Space::Sphere(k) => ("S", Some(k as i64)),
            Space::SuspCP2(k) => ("SCP2", Some(k as i64)),
            Space::SphereSpectrum => ("stable", None),
        }
    }
}

impl From<StructureGroup> for Space {
    fn from(g: StructureGroup) -> Self {
        Space::Group(g)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Group(g) => write!(f, "{g}"),
            Space::Sphere(k) => write!(f, "S^{k}"),
            Space::SuspCP2(k) => write!(f, "Sigma^{k} CP^2"),
            Space::SphereSpectrum => write!(f, "stable stems"),
        }
    }
}

/// A looked-up group together with the row it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupQueryResult {
    pub group: FGAbelianGroup,
    pub source: String,
}

#[derive(Debug, Clone, Default)]
pub struct TableSet {
    entries: Vec<TableEntry>,
}

impl TableSet {
    /// The compiled-in tables.
    pub fn builtin() -> &'static TableSet {
        static TABLES: OnceLock<TableSet> = OnceLock::new();
        TABLES.get_or_init(|| {
            let mut set = TableSet::default();
            for (name, text) in BUILTIN {
                set.extend(TableSet::parse(text, name).expect("built-in tables parse"));
            }
            set
        })
    }

    pub fn parse(text: &str, origin: &str) -> Result<TableSet> {
        let entries = text
            .lines()
            .enumerate()
            .filter(|(_, l)| {
                let l = l.trim();
                !l.is_empty() && !l.starts_with('#')
            })
            .map(|(i, l)| TableEntry::parse(l, origin, i + 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(TableSet { entries })
    }

    /// Reads every `*.tbl` file in `dir`, in file-name order.
    pub fn load_dir(dir: &Path) -> Result<TableSet> {
        let io = |e: std::io::Error| Error::TableSyntax {
            origin: dir.display().to_string(),
            line: 0,
            message: e.to_string(),
        };
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "tbl"))
            .collect();
        paths.sort();
        let mut set = TableSet::default();
        for path in paths {
            let text = std::fs::read_to_string(&path).map_err(io)?;
            set.extend(TableSet::parse(&text, &path.display().to_string())?);
        }
        Ok(set)
    }

    pub fn extend(&mut self, other: TableSet) {
        self.entries.extend(other.entries);
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    /// The stored value for `pi_degree(space)`, which may be a candidate set.
    pub fn lookup(&self, space: Space, degree: i64) -> Result<&TableEntry> {
        let (name, param) = space.key();
        let mut hits = self
            .entries
            .iter()
            .filter(|e| e.matches(name, param, degree));
        let first = hits.next().ok_or_else(|| Error::NotTabulated {
            space: space.to_string(),
            degree,
        })?;
        if let Some(other) = hits.find(|e| e.value != first.value) {
            return Err(Error::TableConflict {
                space: space.to_string(),
                degree,
                first: first.provenance(),
                second: other.provenance(),
            });
        }
        Ok(first)
    }

    /// `pi_degree(space)` as a single group.
    pub fn pi(&self, space: impl Into<Space>, degree: i64) -> Result<GroupQueryResult> {
        let space = space.into();
        let entry = self.lookup(space, degree)?;
        match &entry.value {
            TableValue::Group(g) => Ok(GroupQueryResult {
                group: g.clone(),
                source: entry.provenance(),
            }),
            TableValue::Candidates(c) => Err(Error::Undetermined {
                space: space.to_string(),
                degree,
                candidates: c.clone(),
                citation: entry.provenance(),
            }),
        }
    }

    /// Every group `pi_degree(space)` may be; a singleton when determined.
    pub fn pi_candidates(
        &self,
        space: impl Into<Space>,
        degree: i64,
    ) -> Result<Vec<FGAbelianGroup>> {
        let entry = self.lookup(space.into(), degree)?;
        Ok(match &entry.value {
            TableValue::Group(g) => vec![g.clone()],
            TableValue::Candidates(c) => c.clone(),
        })
    }

    /// First degree in `lo..=hi` with `pi_i(group)` nonzero after inverting
    /// `away`, or `None` if the whole range vanishes.
    pub fn first_nonvanishing(
        &self,
        group: StructureGroup,
        lo: i64,
        hi: i64,
        away: &[u64],
    ) -> Result<Option<i64>> {
        for i in lo..=hi {
            if !self.pi(group, i)?.group.localize_away(away).is_trivial() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// True iff `pi_i(group) = 0` for every `i` in `lo..=hi`.
    pub fn vanishing_range(&self, group: StructureGroup, lo: i64, hi: i64) -> Result<bool> {
        Ok(self.first_nonvanishing(group, lo, hi, &[])?.is_none())
    }

    /// `[M, BG]` for an `m`-dimensional `k`-connected closed manifold, valid
    /// when `pi_i(G) = 0` for `k <= i <= m-k-1`; it is then `pi_{m-1}(G)`.
    pub fn classify_bundles(
        &self,
        dimension: u32,
        connectivity: u32,
        group: StructureGroup,
        away: &[u64],
    ) -> Result<GroupQueryResult> {
        let (m, k) = (dimension as i64, connectivity as i64);
        if let Some(degree) = self.first_nonvanishing(group, k, m - k - 1, away)? {
            return Err(Error::HypothesisNotMet {
                hypothesis: format!(
                    "pi_i({group}) = 0 for {k} <= i <= {}, but pi_{degree}({group}) != 0",
                    m - k - 1
                ),
                degree: Some(degree),
                rule: {
                    let r = crate::decompose::Rule::BundleClassification;
                    format!("{r} [{}]", r.citation())
                },
            });
        }
        let mut res = self.pi(group, m - 1)?;
        res.group = res.group.localize_away(away);
        Ok(res)
    }
}

pub fn pi(tables: &TableSet, space: impl Into<Space>, degree: i64) -> Result<GroupQueryResult> {
    tables.pi(space, degree)
}

pub fn vanishing_range(tables: &TableSet, group: StructureGroup, lo: i64, hi: i64) -> Result<bool> {
    tables.vanishing_range(group, lo, hi)
}
