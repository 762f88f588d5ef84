//! Field specification files, instance description files, and permutation
//! table export.
//!
//! Both file kinds are TOML. A field file holds the keys of [`TowerSpec`].
//! An instance file names a construction, refers to a field (a path relative
//! to the instance file, or an inline table) and lists the polynomials:
//!
//! ```toml
//! construction = "cor21"
//! field = { p = 2, n = 3, m = 3 }
//! l1 = [[0, 4]]        # (i, code) pairs: code * x^(p^i)
//! l2 = [[1, 1]]
//! gamma = 0
//! h = "0,2,0,1"        # codes low-to-high
//! ```

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{
    build_thm21, build_thm3, build_thm41, certify_thm41, cor21_instance, cor22_instance,
    cor23_instance, predicate_cor23, predicate_thm21, predicate_thm3, predicate_thm41,
    Construction, LinearTranslatorCert, SubfieldFn, SubfieldValuedFn, Thm21Instance, Thm21Term,
    Thm3Instance, Thm3Variant, Thm41Instance,
};
use crate::error::{ConstructError, FieldError, PolyError};
use crate::field::{Elem, FieldTower, TowerSpec};
use crate::oracle::{is_permutation, FieldMap, PermutationReport};
use crate::poly::{CoeffField, LinearizedPoly, SubfieldPoly};
use crate::symm::SymmetricKind;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

impl From<PolyError> for InstanceError {
    fn from(e: PolyError) -> Self {
        InstanceError::Parse(e.to_string())
    }
}

impl From<FieldError> for InstanceError {
    fn from(e: FieldError) -> Self {
        InstanceError::Parse(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, InstanceError> {
    std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn parse_tower_spec(text: &str) -> Result<TowerSpec, InstanceError> {
    toml::from_str(text).map_err(|e| InstanceError::Parse(e.to_string()))
}

/// Reads a field file; `size_limit` overrides the file's own limit.
pub fn load_tower(path: &Path, size_limit: Option<u64>) -> Result<FieldTower, InstanceError> {
    let mut spec = parse_tower_spec(&read(path)?)?;
    spec.size_limit = size_limit.or(spec.size_limit);
    Ok(spec.build()?)
}

pub fn tower_spec_to_toml(spec: &TowerSpec) -> String {
    toml::to_string(spec).expect("plain integers serialize")
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum FieldRef {
    Path(PathBuf),
    Inline(TowerSpec),
}

/// A linearized polynomial: `(i, code)` pairs, the text form
/// `"(0,4),(1,1)"`, or one of the names `x`, `tr`, `x^q`, `x^q-x`, `0`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum LinSpec {
    Pairs(Vec<(u32, u32)>),
    Text(String),
}

/// A polynomial as text `"2,1,1"` or a list of codes, low-to-high.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum PolySpec {
    Codes(Vec<u32>),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermSpec {
    l: LinSpec,
    #[serde(default)]
    gamma: u32,
    h: PolySpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    construction: String,
    field: FieldRef,
    b: Option<LinSpec>,
    terms: Option<Vec<TermSpec>>,
    j: Option<u64>,
    h: Option<PolySpec>,
    h_table: Option<Vec<u32>>,
    l: Option<LinSpec>,
    l1: Option<LinSpec>,
    l2: Option<LinSpec>,
    gamma: Option<u32>,
    f: Option<String>,
}

fn missing(key: &str) -> InstanceError {
    InstanceError::Parse(format!("missing key {key:?}"))
}

pub fn parse_linearized(tower: &FieldTower, text: &str) -> Result<LinearizedPoly, InstanceError> {
    Ok(match text.trim() {
        "0" => LinearizedPoly::zero(),
        "x" | "id" => LinearizedPoly::identity(),
        "tr" => LinearizedPoly::trace(tower),
        "x^q" => LinearizedPoly::frobenius_q(tower, 1),
        "x^q-x" => LinearizedPoly::frobenius_minus_identity(tower),
        other => LinearizedPoly::parse_pairs(tower, other)?,
    })
}

fn lin(tower: &FieldTower, spec: &LinSpec) -> Result<LinearizedPoly, InstanceError> {
    match spec {
        LinSpec::Pairs(pairs) => Ok(LinearizedPoly::new(
            tower,
            pairs.iter().map(|&(i, c)| (i, Elem(c))),
        )?),
        LinSpec::Text(t) => parse_linearized(tower, t),
    }
}

fn poly(
    tower: &FieldTower,
    spec: &PolySpec,
    field: CoeffField,
) -> Result<SubfieldPoly, InstanceError> {
    match spec {
        PolySpec::Codes(c) => Ok(SubfieldPoly::new(
            tower,
            c.iter().copied().map(Elem).collect(),
            field,
        )?),
        PolySpec::Text(t) => Ok(SubfieldPoly::parse(tower, t, field)?),
    }
}

fn elem(tower: &FieldTower, code: Option<u32>) -> Result<Elem, InstanceError> {
    Ok(tower.element(code.unwrap_or(0) as u64)?)
}

/// A parsed instance, ready to build.
#[derive(Debug, Clone)]
pub enum Instance {
    Thm21(Thm21Instance),
    Thm3(Thm3Instance),
    Thm41(Thm41Instance),
    /// Built through the sum construction, judged by the coefficient-sum
    /// criterion.
    Cor23 {
        inst: Thm21Instance,
        l: LinearizedPoly,
        gamma: Elem,
        h: SubfieldPoly,
    },
}

#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub construction: Construction,
    pub tower: FieldTower,
    pub instance: Instance,
}

/// Reads an instance file; a field path inside it is resolved against the
/// file's directory.
pub fn load_instance(
    path: &Path,
    size_limit: Option<u64>,
) -> Result<LoadedInstance, InstanceError> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_instance(&read(path)?, base, size_limit)
}

pub fn parse_instance(
    text: &str,
    base_dir: &Path,
    size_limit: Option<u64>,
) -> Result<LoadedInstance, InstanceError> {
    let file: InstanceFile =
        toml::from_str(text).map_err(|e| InstanceError::Parse(e.to_string()))?;
    let construction: Construction = file.construction.parse().map_err(InstanceError::Parse)?;
    let tower = match &file.field {
        FieldRef::Inline(spec) => {
            let mut spec = spec.clone();
            spec.size_limit = size_limit.or(spec.size_limit);
            spec.build()?
        }
        FieldRef::Path(p) => load_tower(&base_dir.join(p), size_limit)?,
    };
    let t = &tower;
    let h_base = || -> Result<SubfieldPoly, InstanceError> {
        poly(
            t,
            file.h.as_ref().ok_or_else(|| missing("h"))?,
            CoeffField::Base,
        )
    };
    let req_lin = |spec: &Option<LinSpec>, key: &str| -> Result<LinearizedPoly, InstanceError> {
        lin(t, spec.as_ref().ok_or_else(|| missing(key))?)
    };

    let instance =
        match construction {
            Construction::Thm21 => {
                let terms = file
                    .terms
                    .as_ref()
                    .ok_or_else(|| missing("terms"))?
                    .iter()
                    .map(|ts| {
                        Ok(Thm21Term {
                            l: lin(t, &ts.l)?,
                            gamma: elem(t, Some(ts.gamma))?,
                            h: poly(t, &ts.h, CoeffField::Ext)?,
                        })
                    })
                    .collect::<Result<Vec<_>, InstanceError>>()?;
                Instance::Thm21(Thm21Instance::new(terms, req_lin(&file.b, "b")?)?)
            }
            Construction::Thm31 | Construction::Thm32 => {
                let variant = if construction == Construction::Thm31 {
                    Thm3Variant::Lambda
                } else {
                    Thm3Variant::Mu
                };
                let j = file.j.ok_or_else(|| missing("j"))?;
                Instance::Thm3(Thm3Instance::new(t, variant, j, h_base()?)?)
            }
            Construction::Cor21 => Instance::Thm21(cor21_instance(
                t,
                req_lin(&file.l1, "l1")?,
                req_lin(&file.l2, "l2")?,
                elem(t, file.gamma)?,
                h_base()?,
            )?),
            Construction::Cor22 => {
                Instance::Thm21(cor22_instance(t, req_lin(&file.l, "l")?, h_base()?)?)
            }
            Construction::Cor23 => {
                let l = req_lin(&file.l, "l")?;
                let gamma = elem(t, file.gamma)?;
                let h = h_base()?;
                Instance::Cor23 {
                    inst: cor23_instance(t, l.clone(), gamma, h.clone())?,
                    l,
                    gamma,
                    h,
                }
            }
            Construction::Thm41 | Construction::Cor41 => {
                let (l1, l2) = if construction == Construction::Cor41 {
                    let l = req_lin(&file.l, "l")?;
                    (l.clone(), l)
                } else {
                    (req_lin(&file.l1, "l1")?, req_lin(&file.l2, "l2")?)
                };
                let h = match (&file.h_table, &file.h) {
                    (Some(table), _) => {
                        SubfieldFn::from_table(t, table.iter().copied().map(Elem).collect())?
                    }
                    (None, Some(_)) => SubfieldFn::from_poly(t, &h_base()?)?,
                    (None, None) => return Err(missing("h")),
                };
                let kind: SymmetricKind =
                    file.f.as_deref().unwrap_or("tr").parse().map_err(
                        |e: crate::error::SymmError| InstanceError::Parse(e.to_string()),
                    )?;
                let f = SubfieldValuedFn::from_kind(t, kind)?;
                Instance::Thm41(Thm41Instance::new(t, l1, l2, elem(t, file.gamma)?, h, f)?)
            }
        };
    Ok(LoadedInstance {
        construction,
        tower,
        instance,
    })
}

/// Predicate verdict next to the oracle verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub construction: String,
    pub field_size: u32,
    pub predicate: bool,
    pub oracle: PermutationReport,
    pub agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translator: Option<LinearTranslatorCert>,
}

impl LoadedInstance {
    /// The theorem's condition, evaluated without building the map.
    pub fn predicate(&self) -> Result<bool, ConstructError> {
        let t = &self.tower;
        match &self.instance {
            Instance::Thm21(inst) => predicate_thm21(t, inst),
            Instance::Thm3(inst) => Ok(predicate_thm3(t, inst)),
            Instance::Thm41(inst) => predicate_thm41(t, inst),
            Instance::Cor23 { l, gamma, h, .. } => predicate_cor23(t, l, *gamma, h),
        }
    }

    /// Runs `f` on the built map.
    pub fn with_map<R>(&self, f: impl FnOnce(&dyn FieldMap) -> R) -> Result<R, ConstructError> {
        let t = &self.tower;
        Ok(match &self.instance {
            Instance::Thm21(inst) | Instance::Cor23 { inst, .. } => f(&build_thm21(t, inst)?),
            Instance::Thm3(inst) => f(&build_thm3(t, inst)),
            Instance::Thm41(inst) => f(&build_thm41(t, inst)?),
        })
    }

    pub fn verify(&self) -> Result<VerifyReport, ConstructError> {
        let predicate = self.predicate()?;
        let oracle = self.with_map(|m| is_permutation(&self.tower, m))?;
        let translator = match &self.instance {
            Instance::Thm41(inst) => certify_thm41(&self.tower, inst)?,
            _ => None,
        };
        Ok(VerifyReport {
            construction: self.construction.to_string(),
            field_size: self.tower.size(),
            predicate,
            agreement: predicate == oracle.is_permutation,
            oracle,
            translator,
        })
    }

    /// `(input, output)` codes for every element, sorted by input.
    pub fn permutation_table(&self) -> Result<Vec<(u32, u32)>, ConstructError> {
        self.with_map(|m| permutation_table(&self.tower, m))
    }
}

pub fn permutation_table<M: FieldMap + ?Sized>(tower: &FieldTower, map: &M) -> Vec<(u32, u32)> {
    crate::oracle::tabulate(tower, map)
        .into_iter()
        .enumerate()
        .map(|(x, y)| (x as u32, y.0))
        .collect()
}

/// Writes the two-column CSV `input_code,output_code`.
pub fn write_csv<W: Write>(mut w: W, rows: &[(u32, u32)]) -> std::io::Result<()> {
    writeln!(w, "input_code,output_code")?;
    for (x, y) in rows {
        writeln!(w, "{x},{y}")?;
    }
    Ok(())
}
