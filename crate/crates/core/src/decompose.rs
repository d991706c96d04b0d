//! Theorem dispatch: manifold data and a structure group in, suspension
//! splitting and gauge-group product decomposition out.
//!
//! Every decomposition is assembled the same way. The manifold is modelled
//! as a base complex carrying the top cell plus a list of summands that split
//! off after one suspension; the suspension is then `Sigma base v Sigma Y_1 v
//! ...` and the gauge group is `G(base) x Map*(Y_1, G) x ...`, with
//! `Map*(S^j, G) = Omega^j G`. The per-family functions only decide the base
//! and the summands.

use std::fmt;
use std::str::FromStr;

use crate::arith::{imj_modulus, is_prime, subgroup_generator, CyclicElem};
use crate::error::{Error, Result};
use crate::expr::{localize, split_gauge, Attach, MooreKind, SpaceExpr};
use crate::modmatrix::{AttachingMatrix, F2Matrix};
use crate::tables::{FGAbelianGroup, GroupQueryResult, StructureGroup, TableSet};

/// The result that justifies a decomposition or an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    BundleClassification,
    WallSuspension,
    WallGauge,
    WallLocalized,
    AlmostParallelizable,
    WallDimensionFour,
    ComplexGauge,
    SphereBundleSection,
    SphereBundleReducible,
    N2Skeleton,
    N2E7,
    N2E8,
    N2AwayFromTwo,
}

impl Rule {
    /// Literature the rule rests on.
    pub fn citation(self) -> &'static str {
        match self {
            Rule::BundleClassification => "obstruction theory",
            Rule::WallSuspension => "Wall (1962); Adams (1966); Quillen (1971)",
            Rule::WallGauge | Rule::WallLocalized | Rule::ComplexGauge => {
                "Theriault (2010); So (2016)"
            }
            Rule::AlmostParallelizable => "Wu formula; Milnor-Stasheff (1974)",
            Rule::WallDimensionFour => "Theriault (2010)",
            Rule::SphereBundleSection => "James-Whitehead (1954)",
            Rule::SphereBundleReducible => "James-Whitehead (1954); G. W. Whitehead (1950)",
            Rule::N2Skeleton => "So (2016)",
            Rule::N2E7 | Rule::N2E8 | Rule::N2AwayFromTwo => "Toda (1962); Mukai (1982)",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::BundleClassification => "bundle classification over highly connected manifolds",
            Rule::WallSuspension => "suspension splitting of (n-1)-connected 2n-manifolds",
            Rule::WallGauge => "gauge splitting over (n-1)-connected 2n-manifolds",
            Rule::WallLocalized => "gauge splitting over (n-1)-connected 2n-manifolds, localized",
            Rule::AlmostParallelizable => {
                "E8-gauge splitting over almost parallelizable 16-manifolds away from 15"
            }
            Rule::WallDimensionFour => "gauge groups over 4-manifolds",
            Rule::ComplexGauge => "gauge splitting over (n-1)-connected 2n-complexes",
            Rule::SphereBundleSection => "gauge splitting over sphere bundles with a cross section",
            Rule::SphereBundleReducible => "gauge splitting over reducible sphere bundles",
            Rule::N2Skeleton => "skeleton splitting of (n-2)-connected 2n-manifolds",
            Rule::N2E7 => "E7-gauge splitting over 4-connected 12-manifolds",
            Rule::N2E8 => "E8-gauge splitting over 6-connected 16-manifolds",
            Rule::N2AwayFromTwo => "gauge splitting over (n-2)-connected 2n-manifolds away from 2",
        };
        f.write_str(s)
    }
}

/// `(n-1)`-connected closed `2n`-manifold of rank `m`, described by the
/// values of `chi` on a basis of `H^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallType {
    pub n: u32,
    pub rank: usize,
    pub chi: Vec<CyclicElem>,
    pub almost_parallelizable: bool,
}

/// Sphere bundle `S^q -> E -> S^n` of an oriented `(q+1)`-plane bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereBundle {
    pub q: u32,
    pub n: u32,
    pub has_section: bool,
    /// `J(zeta) = 0`, i.e. the plane bundle is reducible.
    pub j_xi_trivial: bool,
    pub clutching_note: String,
}

/// Which summand the suspended top attaching map lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SigmaFCase {
    General,
    SuspendedCp2,
    LowSphere,
    /// `n = 8` only.
    HighSphere,
    Null,
}

impl SigmaFCase {
    pub const ALL: [SigmaFCase; 5] = [
        SigmaFCase::General,
        SigmaFCase::SuspendedCp2,
        SigmaFCase::LowSphere,
        SigmaFCase::HighSphere,
        SigmaFCase::Null,
    ];
}

impl fmt::Display for SigmaFCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaFCase::General => "general",
            SigmaFCase::SuspendedCp2 => "suspended_cp2",
            SigmaFCase::LowSphere => "low_sphere",
            SigmaFCase::HighSphere => "high_sphere",
            SigmaFCase::Null => "null",
        })
    }
}

impl FromStr for SigmaFCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SigmaFCase::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::invalid(format!("unknown sigma_f case `{s}`")))
    }
}

/// `(n-2)`-connected closed `2n`-manifold with `H^{n-1}` free of rank `m`
/// and `H^n = 0`; `c` is the mod 2 matrix of `Sq^2` on `H^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N2Type {
    pub n: u32,
    pub rank: usize,
    pub c: F2Matrix,
    pub sigma_f_case: SigmaFCase,
}

/// `m` spheres `S^n` with one `2n`-cell attached; `b` is the matrix of the
/// suspended attaching map, one row per sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralComplex {
    pub n: u32,
    pub rank: usize,
    pub b: AttachingMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldSpec {
    Wall(WallType),
    SphereBundle(SphereBundle),
    N2(N2Type),
    Complex(GeneralComplex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Splitting of the suspension of the base.
    pub suspension: SpaceExpr,
    /// Product decomposition of the gauge group; see [`Decomposition::gauge_factors`].
    pub gauge: SpaceExpr,
    pub rule: Rule,
    pub theorem_used: String,
    pub localized_away: Vec<u64>,
    /// The group classifying the bundles, when the tables determine it.
    pub bundle_classes: Option<GroupQueryResult>,
    /// Further identifications, e.g. `("E", S^q x S^n)`.
    pub equivalences: Vec<(String, SpaceExpr)>,
    /// Reduced attaching matrix with its row-operation log.
    pub reduction: Option<AttachingMatrix>,
    pub notes: Vec<String>,
}

impl Decomposition {
    /// Factors of the gauge product, the gauge atom first. A decomposition
    /// with nothing split off has the gauge atom as its only factor.
    pub fn gauge_factors(&self) -> &[SpaceExpr] {
        self.gauge.factors()
    }

    /// Number of `Omega^power` factors on the structure group itself.
    pub fn loop_count(&self, power: u32) -> usize {
        self.gauge_factors()
            .iter()
            .filter(|f| matches!(f, SpaceExpr::Loop(k, x) if *k == power && matches!(**x, SpaceExpr::LieGroup(_))))
            .count()
    }
}

fn citation(rule: Rule) -> String {
    format!("{rule} [{}]", rule.citation())
}

fn check_primes(away: &[u64]) -> Result<Vec<u64>> {
    if let Some(p) = away.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::invalid(format!("{p} is not a prime")));
    }
    let mut v = away.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn class_label(classes: Option<&GroupQueryResult>) -> &'static str {
    match classes {
        Some(r) if r.group == FGAbelianGroup::integers() => "k",
        _ => "alpha",
    }
}

/// `(Sigma base v Sigma Y_1 v ..., G(base) x Map*(Y_1, G) x ...)`
fn assemble(
    base: SpaceExpr,
    pieces: Vec<SpaceExpr>,
    group: StructureGroup,
    class: &str,
) -> (SpaceExpr, SpaceExpr) {
    let mut all = vec![base];
    all.extend(pieces);
    let wedge = SpaceExpr::wedge(all);
    let suspension = SpaceExpr::suspend(1, wedge.clone()).normalize();
    let gauge = split_gauge(&SpaceExpr::gauge(wedge, group, class));
    (suspension, gauge)
}

fn copies(x: SpaceExpr, count: usize) -> impl Iterator<Item = SpaceExpr> {
    std::iter::repeat_n(x, count)
}

/// Fails unless `pi_i(group)` vanishes, after inverting `away`, for every
/// listed degree. Degree 0 is skipped since the groups are connected.
fn require_vanishing(
    tables: &TableSet,
    group: StructureGroup,
    degrees: &[i64],
    away: &[u64],
    rule: Rule,
) -> Result<()> {
    for &i in degrees.iter().filter(|&&i| i >= 1) {
        if !tables.pi(group, i)?.group.localize_away(away).is_trivial() {
            return Err(Error::HypothesisNotMet {
                hypothesis: format!("pi_{i}({group}) = 0"),
                degree: Some(i),
                rule: citation(rule),
            });
        }
    }
    Ok(())
}

/// Least positive generator of the image of `chi` in `Z/d`, `d = |Im J|` in
/// degree `n - 1`; zero when the image is trivial.
pub fn index_e(m: &WallType) -> Result<CyclicElem> {
    let d = imj_modulus(m.n)?;
    if let Some(bad) = m.chi.iter().find(|c| c.modulus() != d) {
        return Err(Error::invalid(format!(
            "chi value {bad} must be taken mod |Im J| = {d} for n = {}",
            m.n
        )));
    }
    Ok(CyclicElem::new(subgroup_generator(&m.chi, d)? as i64, d))
}

fn check_wall(m: &WallType) -> Result<()> {
    if m.n < 2 {
        return Err(Error::invalid(format!("n = {} is below 2", m.n)));
    }
    if m.n == 2 {
        return Err(Error::Unsupported {
            reason: "n = 2 (simply connected 4-manifolds) is not handled here".into(),
            rule: citation(Rule::WallDimensionFour),
        });
    }
    if m.rank == 0 {
        return Err(Error::CaseInapplicable {
            reason: "rank 0".into(),
            rule: citation(Rule::WallGauge),
        });
    }
    if m.chi.len() != m.rank {
        return Err(Error::invalid(format!(
            "{} chi values for rank {}",
            m.chi.len(),
            m.rank
        )));
    }
    Ok(())
}

fn wall_pieces(m: &WallType, e: CyclicElem) -> (SpaceExpr, Vec<SpaceExpr>) {
    let base = SpaceExpr::two_cell(m.n, 2 * m.n, e).normalize();
    (base, copies(SpaceExpr::sphere(m.n), m.rank - 1).collect())
}

/// Splitting of `Sigma M`.
pub fn suspension_split_wall(m: &WallType) -> Result<SpaceExpr> {
    check_wall(m)?;
    let e = index_e(m)?;
    let (base, pieces) = wall_pieces(m, e);
    let mut all = vec![base];
    all.extend(pieces);
    Ok(SpaceExpr::suspend(1, SpaceExpr::wedge(all)).normalize())
}

fn wall_reduction(m: &WallType, d: u64) -> Result<AttachingMatrix> {
    let rows = m.chi.iter().map(|c| vec![c.value()]).collect();
    Ok(AttachingMatrix::new(vec![d], rows)?.reduce_restricted())
}

pub fn gauge_decompose_wall(
    m: &WallType,
    group: StructureGroup,
    away: &[u64],
    tables: &TableSet,
) -> Result<Decomposition> {
    check_wall(m)?;
    let away = check_primes(away)?;
    let e = index_e(m)?;
    let classes = tables.classify_bundles(2 * m.n, m.n - 1, group, &away)?;
    let class = class_label(Some(&classes));

    let (base, pieces) = wall_pieces(m, e);
    let parallel = m.almost_parallelizable
        && m.n == 8
        && group == StructureGroup::E8
        && away.contains(&3)
        && away.contains(&5);
    let (base, rule) = if parallel {
        (
            SpaceExpr::wedge(vec![SpaceExpr::sphere(8), SpaceExpr::sphere(16)]),
            Rule::AlmostParallelizable,
        )
    } else {
        let local = localize(&base, &away);
        let rule = if local != base {
            Rule::WallLocalized
        } else {
            Rule::WallGauge
        };
        (local, rule)
    };
    let (suspension, gauge) = assemble(base, pieces, group, class);
    Ok(Decomposition {
        suspension,
        gauge,
        rule,
        theorem_used: citation(rule),
        localized_away: away,
        bundle_classes: Some(classes),
        equivalences: Vec::new(),
        reduction: Some(wall_reduction(m, e.modulus())?),
        notes: Vec::new(),
    })
}

pub fn gauge_decompose_complex(
    z: &GeneralComplex,
    group: StructureGroup,
    away: &[u64],
    tables: &TableSet,
) -> Result<Decomposition> {
    let rule = Rule::ComplexGauge;
    if z.n < 2 {
        return Err(Error::invalid(format!("n = {} is below 2", z.n)));
    }
    if z.rank == 0 {
        return Err(Error::CaseInapplicable {
            reason: "rank 0".into(),
            rule: citation(rule),
        });
    }
    if z.b.rows() != z.rank {
        return Err(Error::invalid(format!(
            "attaching matrix has {} rows for rank {}",
            z.b.rows(),
            z.rank
        )));
    }
    let away = check_primes(away)?;
    let classes = tables.classify_bundles(2 * z.n, z.n - 1, group, &away)?;
    let reduced = z.b.reduce_restricted();
    let t = reduced.nonzero_column_count();
    if t >= z.rank {
        return Err(Error::NoSplitting {
            nonzero: t,
            rank: z.rank,
            rule: citation(rule),
        });
    }
    let base = if t == 0 {
        SpaceExpr::sphere(2 * z.n)
    } else {
        SpaceExpr::Cofibre { n: z.n, t }
    };
    let pieces = copies(SpaceExpr::sphere(z.n), z.rank - t).collect();
    let (suspension, gauge) = assemble(base, pieces, group, class_label(Some(&classes)));
    Ok(Decomposition {
        suspension,
        gauge,
        rule,
        theorem_used: citation(rule),
        localized_away: away,
        bundle_classes: Some(classes),
        equivalences: Vec::new(),
        reduction: Some(reduced),
        notes: Vec::new(),
    })
}

pub fn gauge_decompose_sphere_bundle(
    e: &SphereBundle,
    group: StructureGroup,
    away: &[u64],
    tables: &TableSet,
) -> Result<Decomposition> {
    if e.q < 1 || e.n < 1 {
        return Err(Error::invalid(format!(
            "need q, n >= 1, got q = {}, n = {}",
            e.q, e.n
        )));
    }
    let away = check_primes(away)?;
    let (q, n) = (e.q, e.n);
    let stable_range = n < 2 * q;
    let reducible = e.j_xi_trivial && stable_range;
    if !e.has_section && !reducible {
        return Err(Error::Unsupported {
            reason: format!(
                "no cross section, and the bundle is not known to be reducible with n <= 2q - 1 (q = {q}, n = {n})"
            ),
            rule: citation(Rule::SphereBundleSection),
        });
    }
    require_vanishing(
        tables,
        group,
        &[n as i64 - 1],
        &away,
        Rule::SphereBundleSection,
    )?;

    let mut notes = Vec::new();
    let mut equivalences = Vec::new();
    let mut use_product = false;
    if reducible {
        equivalences.push((
            "E".to_string(),
            SpaceExpr::product(vec![SpaceExpr::sphere(q), SpaceExpr::sphere(n)]),
        ));
        equivalences.push((
            "Th(E)".to_string(),
            SpaceExpr::wedge(vec![SpaceExpr::sphere(q + 1), SpaceExpr::sphere(q + n + 1)]),
        ));
        match require_vanishing(
            tables,
            group,
            &[q as i64 - 1],
            &away,
            Rule::SphereBundleReducible,
        ) {
            Ok(()) => use_product = true,
            Err(err @ (Error::HypothesisNotMet { .. } | Error::NotTabulated { .. })) => {
                notes.push(format!("product splitting not applied: {err}"));
            }
            Err(err) => return Err(err),
        }
    }
    if !e.clutching_note.is_empty() {
        notes.push(format!("clutching: {}", e.clutching_note));
    }

    let (rule, base, pieces) = if use_product {
        (
            Rule::SphereBundleReducible,
            SpaceExpr::sphere(q + n),
            vec![SpaceExpr::sphere(n), SpaceExpr::sphere(q)],
        )
    } else {
        let x = SpaceExpr::TwoCell {
            bottom: q,
            top: q + n,
            attach: Attach::Named("J(xi)".into()),
        };
        if !reducible {
            equivalences.push((
                "Th(E)".to_string(),
                SpaceExpr::suspend(1, x.clone()).normalize(),
            ));
        }
        (Rule::SphereBundleSection, x, vec![SpaceExpr::sphere(n)])
    };
    let (suspension, gauge) = assemble(base, pieces, group, "alpha");
    Ok(Decomposition {
        suspension,
        gauge,
        rule,
        theorem_used: citation(rule),
        localized_away: away,
        bundle_classes: None,
        equivalences,
        reduction: None,
        notes,
    })
}

fn check_n2(m: &N2Type) -> Result<()> {
    if m.n != 6 && m.n != 8 {
        return Err(Error::Unsupported {
            reason: format!("n = {} (only n = 6 and n = 8 are covered)", m.n),
            rule: citation(Rule::N2Skeleton),
        });
    }
    if m.rank == 0 {
        return Err(Error::CaseInapplicable {
            reason: "rank 0".into(),
            rule: citation(Rule::N2Skeleton),
        });
    }
    if m.c.size() != m.rank {
        return Err(Error::invalid(format!(
            "C is {0}x{0} for rank {1}",
            m.c.size(),
            m.rank
        )));
    }
    Ok(())
}

/// The `(n+1)`-skeleton: `c` copies of `Sigma^{n-3} CP^2` and `m - c` copies
/// each of `S^{n-1}` and `S^{n+1}`, with `c` the rank of `C`.
pub fn skeleton_split_n2(m: &N2Type) -> Result<SpaceExpr> {
    check_n2(m)?;
    let c = m.c.rank();
    let items: Vec<SpaceExpr> = copies(SpaceExpr::SuspCP2(m.n - 3), c)
        .chain(copies(SpaceExpr::sphere(m.n - 1), m.rank - c))
        .chain(copies(SpaceExpr::sphere(m.n + 1), m.rank - c))
        .collect();
    Ok(SpaceExpr::wedge(items))
}

pub fn gauge_decompose_n2(
    m: &N2Type,
    group: StructureGroup,
    away: &[u64],
    tables: &TableSet,
) -> Result<Decomposition> {
    check_n2(m)?;
    let rule = match (m.n, group) {
        (6, StructureGroup::E7) => Rule::N2E7,
        (8, StructureGroup::E8) => Rule::N2E8,
        _ => {
            return Err(Error::Unsupported {
                reason: format!(
                    "n = {} with {group} (covered: n = 6 with E7, n = 8 with E8)",
                    m.n
                ),
                rule: citation(Rule::N2Skeleton),
            })
        }
    };
    let away = check_primes(away)?;
    let classes = tables.classify_bundles(2 * m.n, m.n - 2, group, &away)?;
    let class = class_label(Some(&classes));
    let n = m.n;
    let (rank, c) = (m.rank as i64, m.c.rank() as i64);
    let cp2 = SpaceExpr::SuspCP2(n - 3);
    let low = SpaceExpr::sphere(n - 1);
    let high = SpaceExpr::sphere(n + 1);

    let (rule, base, counts) = if away.contains(&2) {
        (
            Rule::N2AwayFromTwo,
            SpaceExpr::sphere(2 * n),
            [0, rank, rank],
        )
    } else {
        let moore = |kind| SpaceExpr::Moore { kind, n };
        // pieces left out of the base: [Sigma^{n-3} CP^2, S^{n-1}, S^{n+1}]
        let (base, counts) = match (n, m.sigma_f_case) {
            (6, SigmaFCase::General) => (moore(MooreKind::Z), [c - 1, rank - c - 1, rank - c]),
            (6, SigmaFCase::SuspendedCp2) => {
                (moore(MooreKind::ZPrime), [c - 1, rank - c, rank - c])
            }
            (6, SigmaFCase::LowSphere) => {
                (moore(MooreKind::ZDoublePrime), [c, rank - c - 1, rank - c])
            }
            (6, SigmaFCase::Null) => (SpaceExpr::sphere(12), [c, rank - c, rank - c]),
            (8, SigmaFCase::General) => (moore(MooreKind::Z), [c - 4, rank - c - 3, rank - c - 1]),
            (8, SigmaFCase::SuspendedCp2) => {
                (moore(MooreKind::ZPrime), [c - 4, rank - c, rank - c])
            }
            (8, SigmaFCase::LowSphere) => {
                (moore(MooreKind::ZDoublePrime), [c, rank - c - 3, rank - c])
            }
            (8, SigmaFCase::HighSphere) => {
                (moore(MooreKind::ZTriplePrime), [c, rank - c, rank - c - 1])
            }
            (8, SigmaFCase::Null) => (SpaceExpr::sphere(16), [c, rank - c, rank - c]),
            (_, case) => {
                return Err(Error::CaseInapplicable {
                    reason: format!("sigma_f case `{case}` does not occur for n = {n}"),
                    rule: citation(rule),
                })
            }
        };
        if let Some(neg) = counts.iter().find(|&&k| k < 0) {
            return Err(Error::CaseInapplicable {
                reason: format!(
                    "case `{}` needs more cells than rank {rank} with c = {c} provides (a factor count is {neg})",
                    m.sigma_f_case
                ),
                rule: citation(rule),
            });
        }
        (rule, base, counts)
    };
    let pieces = copies(cp2, counts[0] as usize)
        .chain(copies(low, counts[1] as usize))
        .chain(copies(high, counts[2] as usize))
        .collect();
    let (suspension, gauge) = assemble(base, pieces, group, class);
    Ok(Decomposition {
        suspension,
        gauge,
        rule,
        theorem_used: citation(rule),
        localized_away: away,
        bundle_classes: Some(classes),
        equivalences: vec![("M_(n+1)".to_string(), skeleton_split_n2(m)?)],
        reduction: None,
        notes: Vec::new(),
    })
}

/// Dispatches on the manifold family.
pub fn decompose(
    spec: &ManifoldSpec,
    group: StructureGroup,
    away: &[u64],
    tables: &TableSet,
) -> Result<Decomposition> {
    match spec {
        ManifoldSpec::Wall(m) => gauge_decompose_wall(m, group, away, tables),
        ManifoldSpec::SphereBundle(e) => gauge_decompose_sphere_bundle(e, group, away, tables),
        ManifoldSpec::N2(m) => gauge_decompose_n2(m, group, away, tables),
        ManifoldSpec::Complex(z) => gauge_decompose_complex(z, group, away, tables),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wall(n: u32, chi: &[i64], d: u64) -> WallType {
        WallType {
            n,
            rank: chi.len(),
            chi: chi.iter().map(|&v| CyclicElem::new(v, d)).collect(),
            almost_parallelizable: false,
        }
    }

    #[test]
    fn index_e_examples() {
        assert_eq!(
            index_e(&wall(8, &[120, 80], 240)).unwrap(),
            CyclicElem::new(40, 240)
        );
        assert_eq!(index_e(&wall(8, &[0, 0], 240)).unwrap().value(), 0);
        assert_eq!(index_e(&wall(6, &[0, 0, 0], 1)).unwrap().value(), 0);
        assert!(index_e(&wall(8, &[1], 24)).is_err());
    }

    #[test]
    fn wall_suspension_examples() {
        assert_eq!(
            suspension_split_wall(&wall(5, &[0, 0, 0], 1))
                .unwrap()
                .to_string(),
            "S^6 v S^6 v S^6 v S^11"
        );
        assert_eq!(
            suspension_split_wall(&wall(8, &[0, 0], 240))
                .unwrap()
                .to_string(),
            "S^9 v S^9 v S^17"
        );
        assert_eq!(
            suspension_split_wall(&wall(8, &[120, 80], 240))
                .unwrap()
                .to_string(),
            "Sigma^1 TC(8,16;40 mod 240) v S^9"
        );
        assert!(matches!(
            suspension_split_wall(&wall(2, &[0], 1)),
            Err(Error::Unsupported { .. }) | Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn wall_gauge_e6() {
        let d = gauge_decompose_wall(
            &wall(5, &[0, 0, 0], 1),
            StructureGroup::E6,
            &[],
            TableSet::builtin(),
        )
        .unwrap();
        assert_eq!(
            d.gauge.to_string(),
            "G_k(S^10) x Omega^5 E6 x Omega^5 E6 x Omega^5 E6"
        );
        assert_eq!(d.rule, Rule::WallGauge);
    }

    #[test]
    fn wall_gauge_e6_n6_not_tabulated() {
        let r = gauge_decompose_wall(
            &wall(6, &[0], 1),
            StructureGroup::E6,
            &[],
            TableSet::builtin(),
        );
        assert!(
            matches!(r, Err(Error::NotTabulated { degree: 11, .. })),
            "{r:?}"
        );
    }

    #[test]
    fn non_prime_localization_rejected() {
        let r = gauge_decompose_wall(
            &wall(5, &[0], 1),
            StructureGroup::E6,
            &[4],
            TableSet::builtin(),
        );
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sigma_f_case_names() {
        for c in SigmaFCase::ALL {
            assert_eq!(c.to_string().parse::<SigmaFCase>().unwrap(), c);
        }
    }
}
