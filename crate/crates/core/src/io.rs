//! File formats: algebra JSON, group descriptors and series dumps.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bch::{cached_series, SeriesDumpRow, TruncationCertificate};
use crate::error::{Error, Result};
use crate::family::FamilyParams;
use crate::group::{Backend, GroupElement, UniformGroup};
use crate::lie::{JacobiReport, LieAlgebra, LieVector};
use crate::padic::{PAdic, PAdicContext};
use crate::presentation::digit_string;

/// A structure constant as written in a file: a plain integer or a p-adic
/// digit string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Digits(String),
}

impl Coord {
    pub fn to_padic(&self, ctx: PAdicContext) -> Result<PAdic> {
        Ok(match self {
            Coord::Int(n) => ctx.from_i64(*n),
            Coord::Digits(s) => ctx.parse(s)?,
        })
    }

    /// Small values are written as integers, everything else as digits.
    pub fn from_padic(x: &PAdic) -> Self {
        match x.to_symmetric_i128() {
            Some(n) if n.abs() < 1_000_000_000 => Coord::Int(n as i64),
            _ => Coord::Digits(digit_string(x, x.ctx().prec())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub coords: Vec<Coord>,
}

/// Structure constants of an algebra, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub p: u64,
    pub precision: u32,
    pub rank: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketRecord>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        let ctx = alg.ctx();
        Self {
            p: ctx.p(),
            precision: ctx.prec(),
            rank: alg.rank(),
            basis: alg.names().to_vec(),
            brackets: alg
                .nonzero_brackets()
                .into_iter()
                .map(|(i, j, v)| BracketRecord {
                    i,
                    j,
                    coords: v.coords().iter().map(Coord::from_padic).collect(),
                })
                .collect(),
        }
    }

    /// Validates antisymmetry and the Jacobi identity while loading.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let ctx = PAdicContext::new(self.p, self.precision)?;
        if self.basis.len() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                got: self.basis.len(),
            });
        }
        let brackets = self
            .brackets
            .iter()
            .map(|b| {
                let coords = b
                    .coords
                    .iter()
                    .map(|c| c.to_padic(ctx))
                    .collect::<Result<Vec<_>>>()?;
                Ok((b.i, b.j, LieVector::new(ctx, coords)))
            })
            .collect::<Result<Vec<_>>>()?;
        let alg = LieAlgebra::from_brackets(ctx, self.basis.clone(), &brackets)?;
        if let JacobiReport::Violation { triple, .. } = alg.jacobi_check() {
            return Err(Error::Jacobi(triple.0, triple.1, triple.2));
        }
        Ok(alg)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn save_algebra(path: &Path, alg: &LieAlgebra) -> Result<()> {
    write_json(path, &AlgebraFile::from_algebra(alg))
}

pub fn load_algebra(path: &Path) -> Result<LieAlgebra> {
    read_json::<AlgebraFile>(path)?.to_algebra()
}

/// An element in a named chart with digit-string coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub chart: Backend,
    pub coords: Vec<String>,
}

impl ElementRecord {
    pub fn from_element(g: &GroupElement) -> Self {
        let n = g.coords().ctx().prec();
        Self {
            chart: g.chart(),
            coords: g.coords().coords().iter().map(|c| digit_string(c, n)).collect(),
        }
    }

    pub fn to_element(&self, group: &UniformGroup) -> Result<GroupElement> {
        let ctx = group.ctx();
        let coords = self
            .coords
            .iter()
            .map(|s| Ok(ctx.parse(s)?))
            .collect::<Result<Vec<_>>>()?;
        let g = GroupElement::new(self.chart, LieVector::new(ctx, coords));
        // validates the chart and the length
        group.to_chart(&g, Backend::Bch)?;
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub k: usize,
    pub d: String,
}

/// A group: the algebra file it lives on plus law metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub algebra: PathBuf,
    pub scale: u32,
    pub backends: Vec<Backend>,
    pub truncation_degree: usize,
    pub certificate: TruncationCertificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRecord>,
    #[serde(default)]
    pub elements: Vec<ElementRecord>,
}

impl GroupDescriptor {
    pub fn new(group: &UniformGroup, algebra: PathBuf) -> Self {
        let mut backends = vec![Backend::Bch];
        if group.has_split() {
            backends.push(Backend::Split);
        }
        Self {
            algebra,
            scale: group.scale_exponent(),
            backends,
            truncation_degree: group.truncation_degree(),
            certificate: group.certificate().clone(),
            family: group.family_params().map(|f| FamilyRecord {
                k: f.k(),
                d: digit_string(&f.d(), f.ctx().prec()),
            }),
            elements: Vec::new(),
        }
    }

    /// Rebuilds the group; relative algebra paths resolve against `base`.
    pub fn load(&self, base: &Path) -> Result<UniformGroup> {
        let path = if self.algebra.is_absolute() {
            self.algebra.clone()
        } else {
            base.join(&self.algebra)
        };
        let alg = load_algebra(&path)?;
        let group = match &self.family {
            Some(f) => {
                let d = alg.ctx().parse(&f.d)?;
                let g = UniformGroup::family(&FamilyParams::new(f.k, d)?)?;
                let file = AlgebraFile::from_algebra(g.algebra());
                if file.brackets != AlgebraFile::from_algebra(&alg).brackets {
                    return Err(Error::Invalid(
                        "algebra file does not match the recorded family".into(),
                    ));
                }
                g
            }
            None => UniformGroup::from_algebra(alg, self.scale)?,
        };
        if group.truncation_degree() != self.truncation_degree {
            return Err(Error::Invalid(format!(
                "descriptor records truncation degree {}, the certificate gives {}",
                self.truncation_degree,
                group.truncation_degree()
            )));
        }
        Ok(group)
    }
}

/// The Dynkin-form series through `degree`, one row per term.
pub fn series_dump(degree: usize) -> Vec<SeriesDumpRow> {
    cached_series(degree).dump()
}
