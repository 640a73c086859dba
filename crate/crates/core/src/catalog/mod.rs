//! The strictly irreducible affine spherical spaces of the classification,
//! as parametrized templates in `data/catalog.json`.
//!
//! Complete entries carry the full basis of the extended weight semigroup.
//! Partial entries carry only the `T`-weights of three known basis
//! functions, which suffices to refute excellence but not to decide
//! almost-excellence.

pub mod expr;

use crate::ews::{dual_automorphism, predict_equidimensional, Block, BlockType, EquidimVerdict, ExtendedWeightSemigroup, SpaceRecord};
use crate::rootdata::{support_of, AmbientGroup, Series, SimpleFactor};
use crate::torusquot::{is_excellent_action, symmetry_check};
use expr::{eval, eval_bool, eval_weight, ExprError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::OnceLock;
use thiserror::Error;

pub type Params = BTreeMap<String, i64>;

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");
const LETTERS: [&str; 3] = ["pi", "phi", "psi"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("entry {entry} needs parameter {name}")]
    MissingParam { entry: String, name: String },
    #[error("entry {entry} has no parameter {name}")]
    UnknownParam { entry: String, name: String },
    #[error("parameter {name} = {value} is out of range, need {name} >= {min}")]
    OutOfRange { name: String, value: i64, min: i64 },
    #[error("entry {0} only stores partial data")]
    Partial(String),
    #[error("catalog data error in {entry}: {message}")]
    Data { entry: String, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceType {
    I,
    II,
    III,
    #[serde(rename = "example")]
    Example,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Completeness {
    Complete,
    Partial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordedVerdict {
    pub equidimensional: bool,
    pub excellent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub name: String,
    pub min: i64,
}

#[derive(Clone, Debug, Deserialize)]
struct FactorTemplate {
    series: Series,
    rank: String,
}

#[derive(Clone, Debug, Deserialize)]
struct AmbientVariant {
    when: Option<String>,
    factors: Vec<FactorTemplate>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Item {
    Loop {
        #[serde(rename = "for")]
        var: String,
        from: String,
        to: String,
        items: Vec<Item>,
    },
    Gen {
        when: Option<String>,
        lambda: String,
        chi: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug, Deserialize)]
struct TypeOverride {
    when: String,
    space_type: SpaceType,
}

#[derive(Clone, Debug, Deserialize)]
pub struct EntryTemplate {
    pub id: String,
    pub title: String,
    pub subgroup: String,
    pub params: Vec<ParamSpec>,
    ambient: Vec<AmbientVariant>,
    pub space_type: SpaceType,
    #[serde(default)]
    space_type_overrides: Vec<TypeOverride>,
    block_type: Option<BlockType>,
    pub completeness: Completeness,
    char_rank: usize,
    generators: Vec<Item>,
    pub recorded_verdict: RecordedVerdict,
    pub witness: Option<String>,
}

#[derive(Debug, Deserialize)]
struct CatalogFile {
    schema_version: u32,
    entries: Vec<EntryTemplate>,
}

fn catalog() -> &'static CatalogFile {
    static CATALOG: OnceLock<CatalogFile> = OnceLock::new();
    CATALOG.get_or_init(|| serde_json::from_str(CATALOG_JSON).expect("bundled catalog parses"))
}

/// Version of the bundled data file.
pub fn data_version() -> u32 {
    catalog().schema_version
}

pub fn entries() -> &'static [EntryTemplate] {
    &catalog().entries
}

pub fn entry(id: &str) -> Result<&'static EntryTemplate, CatalogError> {
    entries().iter().find(|e| e.id == id).ok_or_else(|| CatalogError::UnknownEntry(id.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryInfo {
    pub id: String,
    pub title: String,
    pub subgroup: String,
    pub params: Vec<ParamSpec>,
    pub space_type: SpaceType,
    pub completeness: Completeness,
    pub recorded_verdict: RecordedVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn list_entries() -> Vec<EntryInfo> {
    entries()
        .iter()
        .map(|e| EntryInfo {
            id: e.id.clone(),
            title: e.title.clone(),
            subgroup: e.subgroup.clone(),
            params: e.params.clone(),
            space_type: e.space_type,
            completeness: e.completeness,
            recorded_verdict: e.recorded_verdict,
            witness: e.witness.clone(),
        })
        .collect()
}

/// Every parameter at its minimum.
pub fn default_params(id: &str) -> Result<Params, CatalogError> {
    Ok(entry(id)?.params.iter().map(|p| (p.name.clone(), p.min)).collect())
}

/// All parameter tuples with each parameter between its minimum and
/// `max(min, bound)`.
pub fn sweep_params(id: &str, bound: i64) -> Result<Vec<Params>, CatalogError> {
    let mut out = vec![Params::new()];
    for p in &entry(id)?.params {
        let top = bound.max(p.min);
        out = out
            .into_iter()
            .flat_map(|base| {
                (p.min..=top).map(move |v| {
                    let mut next = base.clone();
                    next.insert(p.name.clone(), v);
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub id: String,
    pub params: Params,
    pub ambient: AmbientGroup,
    pub space_type: SpaceType,
    pub completeness: Completeness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semigroup: Option<ExtendedWeightSemigroup>,
    /// Weights of the stored basis functions of a partial entry.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub t_weights: Vec<Vec<i64>>,
    pub labels: Vec<String>,
    pub recorded_verdict: RecordedVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl EntryTemplate {
    fn data_err(&self, message: impl Into<String>) -> CatalogError {
        CatalogError::Data { entry: self.id.clone(), message: message.into() }
    }

    fn expr_err(&self, e: ExprError) -> CatalogError {
        self.data_err(e.to_string())
    }

    fn check_params(&self, params: &Params) -> Result<(), CatalogError> {
        if let Some(name) = params.keys().find(|k| !self.params.iter().any(|p| &&p.name == k)) {
            return Err(CatalogError::UnknownParam { entry: self.id.clone(), name: name.clone() });
        }
        for p in &self.params {
            let value = *params
                .get(&p.name)
                .ok_or_else(|| CatalogError::MissingParam { entry: self.id.clone(), name: p.name.clone() })?;
            if value < p.min {
                return Err(CatalogError::OutOfRange { name: p.name.clone(), value, min: p.min });
            }
        }
        Ok(())
    }

    fn ambient_for(&self, env: &Params) -> Result<AmbientGroup, CatalogError> {
        for v in &self.ambient {
            let applies = match &v.when {
                Some(c) => eval_bool(c, env).map_err(|e| self.expr_err(e))?,
                None => true,
            };
            if applies {
                let mut factors = Vec::new();
                for f in &v.factors {
                    let rank = eval(&f.rank, env).map_err(|e| self.expr_err(e))?;
                    let rank = usize::try_from(rank).map_err(|_| self.data_err("negative rank"))?;
                    factors.push(SimpleFactor::new(f.series, rank).map_err(|e| self.data_err(e.to_string()))?);
                }
                return AmbientGroup::new(factors).map_err(|e| self.data_err(e.to_string()));
            }
        }
        Err(self.data_err("no ambient variant applies"))
    }

    fn space_type_for(&self, env: &Params) -> Result<SpaceType, CatalogError> {
        for o in &self.space_type_overrides {
            if eval_bool(&o.when, env).map_err(|e| self.expr_err(e))? {
                return Ok(o.space_type);
            }
        }
        Ok(self.space_type)
    }

    fn expand(
        &self,
        items: &[Item],
        env: &mut Params,
        ambient: &AmbientGroup,
        out: &mut Vec<(Vec<i64>, Option<Vec<i64>>)>,
    ) -> Result<(), CatalogError> {
        for item in items {
            match item {
                Item::Loop { var, from, to, items } => {
                    let lo = eval(from, env).map_err(|e| self.expr_err(e))?;
                    let hi = eval(to, env).map_err(|e| self.expr_err(e))?;
                    for k in lo..=hi {
                        env.insert(var.clone(), k);
                        self.expand(items, env, ambient, out)?;
                    }
                    env.remove(var);
                }
                Item::Gen { when, lambda, chi } => {
                    if let Some(c) = when {
                        if !eval_bool(c, env).map_err(|e| self.expr_err(e))? {
                            continue;
                        }
                    }
                    let mut coords = vec![0; ambient.rank()];
                    let offsets = ambient.offsets();
                    for (f, idx, coef) in eval_weight(lambda, &LETTERS, env).map_err(|e| self.expr_err(e))? {
                        let factor = ambient
                            .factors()
                            .get(f)
                            .ok_or_else(|| self.data_err(format!("{lambda}: no factor {}", f + 1)))?;
                        if idx < 1 || idx as usize > factor.rank() || coef < 0 {
                            return Err(self.data_err(format!("{lambda}: index {idx} invalid for {factor}")));
                        }
                        coords[offsets[f] + idx as usize - 1] += coef;
                    }
                    let chi = match chi {
                        Some(exprs) => Some(
                            exprs
                                .iter()
                                .map(|c| eval(c, env).map_err(|e| self.expr_err(e)))
                                .collect::<Result<Vec<_>, _>>()?,
                        ),
                        None => None,
                    };
                    out.push((coords, chi));
                }
            }
        }
        Ok(())
    }

    pub fn instantiate(&self, params: &Params) -> Result<Instance, CatalogError> {
        self.check_params(params)?;
        let mut env = params.clone();
        let ambient = self.ambient_for(&env)?;
        let space_type = self.space_type_for(&env)?;
        let mut raw = Vec::new();
        self.expand(&self.generators, &mut env, &ambient, &mut raw)?;
        let labels = raw
            .iter()
            .map(|(l, chi)| {
                let w = crate::rootdata::DominantWeight::new(ambient.clone(), l.clone()).expect("built nonnegative");
                match chi {
                    Some(c) => format!("({}, {:?})", w.pretty(), c),
                    None => w.pretty(),
                }
            })
            .collect();
        let (semigroup, t_weights) = match self.completeness {
            Completeness::Complete => {
                let pairs = raw
                    .into_iter()
                    .map(|(l, chi)| chi.map(|c| (l, c)).ok_or_else(|| self.data_err("complete entry without chi")))
                    .collect::<Result<Vec<_>, _>>()?;
                let s = ExtendedWeightSemigroup::from_coords(ambient.clone(), self.char_rank, pairs)
                    .map_err(|e| self.data_err(e.to_string()))?;
                (Some(s), Vec::new())
            }
            Completeness::Partial => (None, raw.into_iter().map(|(l, _)| l).collect()),
        };
        Ok(Instance {
            id: self.id.clone(),
            params: params.clone(),
            ambient,
            space_type,
            completeness: self.completeness,
            semigroup,
            t_weights,
            labels,
            recorded_verdict: self.recorded_verdict,
            witness: self.witness.clone(),
        })
    }

    fn block_type_for(&self, space_type: SpaceType) -> Option<BlockType> {
        self.block_type.or(match space_type {
            SpaceType::I => Some(BlockType::I),
            SpaceType::II => Some(BlockType::II),
            SpaceType::III => Some(BlockType::III),
            SpaceType::Example => None,
        })
    }
}

pub fn instantiate(id: &str, params: &Params) -> Result<Instance, CatalogError> {
    entry(id)?.instantiate(params)
}

fn params_label(params: &Params) -> String {
    let parts: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(",")
}

/// A complete entry as a block of the product construction.
pub fn construction_block(id: &str, params: &Params) -> Result<Block, CatalogError> {
    let e = entry(id)?;
    let inst = e.instantiate(params)?;
    let semigroup = inst.semigroup.ok_or_else(|| CatalogError::Partial(id.to_string()))?;
    let block_type = e.block_type_for(inst.space_type).ok_or_else(|| e.data_err("no block type"))?;
    Ok(Block { block_type, semigroup, label: Some(format!("{id}({})", params_label(params))) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub id: String,
    pub params: Params,
    pub completeness: Completeness,
    pub passed: bool,
    pub recorded_verdict: RecordedVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y0_weights: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y0_symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y0_excellent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prediction: Option<EquidimVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality_closed: Option<bool>,
    /// Index pairs of stored weights whose supports meet (partial entries).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overlapping_pairs: Option<Vec<(usize, usize)>>,
    pub almost_excellent_decidable: bool,
    pub failures: Vec<String>,
}

/// Re-derives the verdicts of one instance and compares them with the
/// recorded ones. Disagreements are reported in `failures`, not as errors.
pub fn validate(id: &str, params: &Params) -> Result<ValidationReport, CatalogError> {
    let inst = instantiate(id, params)?;
    let mut report = ValidationReport {
        id: inst.id.clone(),
        params: inst.params.clone(),
        completeness: inst.completeness,
        passed: false,
        recorded_verdict: inst.recorded_verdict,
        y0_weights: None,
        y0_symmetric: None,
        y0_excellent: None,
        prediction: None,
        duality_closed: None,
        overlapping_pairs: None,
        almost_excellent_decidable: inst.completeness == Completeness::Complete,
        failures: Vec::new(),
    };
    let verdict = inst.recorded_verdict;
    match &inst.semigroup {
        Some(s) => {
            let y0 = crate::ews::y0_action(s);
            report.y0_weights = Some(y0.weights().to_vec());
            match symmetry_check(&y0) {
                Ok(dec) => {
                    report.y0_symmetric = Some(true);
                    report.y0_excellent = Some(is_excellent_action(&dec));
                }
                Err(a) => {
                    report.y0_symmetric = Some(false);
                    report.failures.push(format!("Y0 action is not symmetric: {a}"));
                }
            }
            let closed = dual_automorphism(s).same_generators(s);
            report.duality_closed = Some(closed);
            if !closed {
                report.failures.push("generator set is not closed under duality".into());
            }
            match predict_equidimensional(&SpaceRecord::from_extended(s.clone())) {
                Ok(p) => {
                    if p.equidimensional != verdict.equidimensional {
                        report.failures.push(format!(
                            "predicted equidimensional = {}, catalog says {}",
                            p.equidimensional, verdict.equidimensional
                        ));
                    }
                    if p.excellent != verdict.excellent {
                        report
                            .failures
                            .push(format!("predicted excellent = {}, catalog says {}", p.excellent, verdict.excellent));
                    }
                    report.prediction = Some(p);
                }
                Err(e) => report.failures.push(e.to_string()),
            }
        }
        None => {
            let supports: Vec<_> = inst.t_weights.iter().map(|w| support_of(w)).collect();
            let mut pairs = Vec::new();
            for i in 0..supports.len() {
                for j in (i + 1)..supports.len() {
                    if !supports[i].is_disjoint(&supports[j]) {
                        pairs.push((i, j));
                    }
                }
            }
            if inst.t_weights.iter().any(|w| w.iter().all(|&c| c == 0)) {
                report.failures.push("zero weight among stored basis functions".into());
            }
            if pairs.is_empty() {
                report.failures.push("stored weights have disjoint supports, excellence is not refuted".into());
            }
            if verdict.excellent {
                report.failures.push("partial entry recorded as excellent".into());
            }
            report.overlapping_pairs = Some(pairs);
        }
    }
    report.passed = report.failures.is_empty();
    Ok(report)
}

/// Validates every entry over its parameter sweep, in catalog order.
pub fn validate_all(bound: i64) -> Result<Vec<ValidationReport>, CatalogError> {
    let mut out = Vec::new();
    for e in entries() {
        for params in sweep_params(&e.id, bound)? {
            out.push(validate(&e.id, &params)?);
        }
    }
    Ok(out)
}
