//! Job files: one TOML document per decomposition request.
//!
//! ```toml
//! kind = "wall"          # wall | sphere_bundle | n2 | complex
//! group = "E6"
//! localize_away = []     # optional
//! format = "text"        # optional, text | latex
//! n = 5
//! rank = 3
//! chi = [0, 0, 0]
//! ```

use std::collections::BTreeSet;

use gaugekit::arith::{imj_modulus, CyclicElem};
use gaugekit::{
    AttachingMatrix, Error, F2Matrix, Format, GeneralComplex, ManifoldSpec, N2Type, Result,
    SigmaFCase, SphereBundle, StructureGroup, WallType,
};
use serde::Deserialize;

const COMMON_KEYS: [&str; 4] = ["kind", "group", "localize_away", "format"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub spec: ManifoldSpec,
    pub group: StructureGroup,
    pub localize_away: Vec<u64>,
    pub format: Format,
}

#[derive(Deserialize)]
struct Common {
    group: String,
    #[serde(default)]
    localize_away: Vec<u64>,
    #[serde(default)]
    format: Option<String>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Kind {
    Wall {
        n: u32,
        rank: usize,
        chi: Vec<i64>,
        #[serde(default)]
        almost_parallelizable: bool,
    },
    SphereBundle {
        q: u32,
        n: u32,
        has_section: bool,
        j_xi_trivial: bool,
        #[serde(default)]
        clutching_note: String,
    },
    N2 {
        n: u32,
        rank: usize,
        c_matrix: Vec<Vec<u8>>,
        sigma_f_case: String,
    },
    Complex {
        n: u32,
        rank: usize,
        moduli: Vec<u64>,
        matrix: Vec<Vec<i64>>,
    },
}

impl Kind {
    fn keys(kind: &str) -> Option<&'static [&'static str]> {
        Some(match kind {
            "wall" => &["n", "rank", "chi", "almost_parallelizable"],
            "sphere_bundle" => &["q", "n", "has_section", "j_xi_trivial", "clutching_note"],
            "n2" => &["n", "rank", "c_matrix", "sigma_f_case"],
            "complex" => &["n", "rank", "moduli", "matrix"],
            _ => return None,
        })
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::invalid(msg.into())
}

/// Parses and validates a job; every failure is an `InvalidArgument`.
pub fn parse_job(text: &str) -> Result<Job> {
    let table: toml::Table = toml::from_str(text).map_err(|e| schema(format!("job file: {e}")))?;
    let kind = table
        .get("kind")
        .and_then(toml::Value::as_str)
        .ok_or_else(|| schema("job file: missing string field `kind`"))?;
    let allowed: BTreeSet<&str> = Kind::keys(kind)
        .ok_or_else(|| schema(format!("job file: unknown kind `{kind}`")))?
        .iter()
        .chain(COMMON_KEYS.iter())
        .copied()
        .collect();
    if let Some(extra) = table.keys().find(|k| !allowed.contains(k.as_str())) {
        return Err(schema(format!(
            "job file: unknown field `{extra}` for kind `{kind}`"
        )));
    }

    let common: Common = table
        .clone()
        .try_into()
        .map_err(|e| schema(format!("job file: {e}")))?;
    let body: Kind = table
        .try_into()
        .map_err(|e| schema(format!("job file: {e}")))?;

    let group: StructureGroup = common.group.parse()?;
    if let Some(p) = common
        .localize_away
        .iter()
        .find(|&&p| !gaugekit::arith::is_prime(p))
    {
        return Err(schema(format!("localize_away: {p} is not a prime")));
    }
    let format = match common.format {
        Some(f) => f.parse()?,
        None => Format::Text,
    };
    Ok(Job {
        spec: body.into_spec()?,
        group,
        localize_away: common.localize_away,
        format,
    })
}

impl Kind {
    fn into_spec(self) -> Result<ManifoldSpec> {
        Ok(match self {
            Kind::Wall {
                n,
                rank,
                chi,
                almost_parallelizable,
            } => {
                if n < 2 {
                    return Err(schema(format!("wall: n = {n} is below 2")));
                }
                let d = imj_modulus(n)?;
                if chi.len() != rank {
                    return Err(schema(format!(
                        "wall: {} chi values for rank {rank}",
                        chi.len()
                    )));
                }
                let chi = chi
                    .into_iter()
                    .map(|v| CyclicElem::checked(v, d))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|_| {
                        schema(format!("wall: chi values must lie in [0, {d}) for n = {n}"))
                    })?;
                ManifoldSpec::Wall(WallType {
                    n,
                    rank,
                    chi,
                    almost_parallelizable,
                })
            }
            Kind::SphereBundle {
                q,
                n,
                has_section,
                j_xi_trivial,
                clutching_note,
            } => {
                if q < 1 || n < 1 {
                    return Err(schema(format!(
                        "sphere_bundle: need q, n >= 1, got q = {q}, n = {n}"
                    )));
                }
                ManifoldSpec::SphereBundle(SphereBundle {
                    q,
                    n,
                    has_section,
                    j_xi_trivial,
                    clutching_note,
                })
            }
            Kind::N2 {
                n,
                rank,
                c_matrix,
                sigma_f_case,
            } => {
                let c = F2Matrix::from_ints(&c_matrix)?;
                if c.size() != rank {
                    return Err(schema(format!(
                        "n2: c_matrix is {0}x{0} for rank {rank}",
                        c.size()
                    )));
                }
                let sigma_f_case: SigmaFCase = sigma_f_case.parse()?;
                ManifoldSpec::N2(N2Type {
                    n,
                    rank,
                    c,
                    sigma_f_case,
                })
            }
            Kind::Complex {
                n,
                rank,
                moduli,
                matrix,
            } => {
                if matrix.len() != rank {
                    return Err(schema(format!(
                        "complex: {} matrix rows for rank {rank}",
                        matrix.len()
                    )));
                }
                let b = AttachingMatrix::new(moduli, matrix)?;
                ManifoldSpec::Complex(GeneralComplex { n, rank, b })
            }
        })
    }
}
