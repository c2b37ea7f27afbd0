//! JSON input files. Rationals are strings such as `"-3/7"`.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use matder::algcore::{catalog, regular_bimodule, Algebra, Bimodule};
use matder::dercalc::LinearMap;
use matder::exactlin::{parse_rational, Matrix};
use matder::Rational;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub unit: Vec<String>,
    pub mult: Vec<MultEntry>,
}

/// `e_i . f_p` has coefficient `c` on `f_q`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeftEntry {
    pub i: usize,
    pub p: usize,
    pub q: usize,
    pub c: String,
}

/// `f_p . e_i` has coefficient `c` on `f_q`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RightEntry {
    pub p: usize,
    pub i: usize,
    pub q: usize,
    pub c: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub basis_labels: Option<Vec<String>>,
    pub left: Vec<LeftEntry>,
    pub right: Vec<RightEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Derivation,
    LinearMap,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub kind: MapKind,
    pub algebra: String,
    pub module: String,
    /// `module_dim` rows by `algebra_dim` columns; column `j` is the image of
    /// basis element `j`.
    pub matrix: Vec<Vec<String>>,
}

fn rational(text: &str, context: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("in {context}"))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

impl AlgebraFile {
    pub fn into_algebra(self) -> Result<Algebra> {
        if self.basis_labels.len() != self.dim {
            bail!("dim is {} but {} basis labels are given", self.dim, self.basis_labels.len());
        }
        if self.unit.len() != self.dim {
            bail!("dim is {} but the unit has {} coordinates", self.dim, self.unit.len());
        }
        let unit = self
            .unit
            .iter()
            .map(|c| rational(c, "unit"))
            .collect::<Result<Vec<_>>>()?;
        let mut triples = Vec::with_capacity(self.mult.len());
        for (n, e) in self.mult.iter().enumerate() {
            triples.push((e.i, e.j, e.k, rational(&e.c, &format!("mult entry {n}"))?));
        }
        Ok(Algebra::from_triples(self.name, self.basis_labels, unit, triples)?)
    }
}

impl ModuleFile {
    pub fn into_bimodule(self, algebra_dim: usize) -> Result<Bimodule> {
        if let Some(labels) = &self.basis_labels {
            if labels.len() != self.dim {
                bail!("dim is {} but {} basis labels are given", self.dim, labels.len());
            }
        }
        let mut left = Vec::with_capacity(self.left.len());
        for (n, e) in self.left.iter().enumerate() {
            left.push((e.i, e.p, e.q, rational(&e.c, &format!("left entry {n}"))?));
        }
        let mut right = Vec::with_capacity(self.right.len());
        for (n, e) in self.right.iter().enumerate() {
            right.push((e.p, e.i, e.q, rational(&e.c, &format!("right entry {n}"))?));
        }
        Ok(Bimodule::from_triples(self.name, algebra_dim, self.dim, left, right)?)
    }
}

impl MapFile {
    pub fn into_map(self, algebra_dim: usize, module_dim: usize) -> Result<LinearMap> {
        if self.matrix.len() != module_dim {
            bail!("map has {} rows but the module has dimension {module_dim}", self.matrix.len());
        }
        let mut rows = Vec::with_capacity(module_dim);
        for (r, row) in self.matrix.iter().enumerate() {
            if row.len() != algebra_dim {
                bail!(
                    "map row {r} has {} entries but the algebra has dimension {algebra_dim}",
                    row.len()
                );
            }
            rows.push(
                row.iter()
                    .map(|c| rational(c, &format!("map row {r}")))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        if rows.is_empty() {
            return Ok(LinearMap::zero(algebra_dim, 0));
        }
        Ok(LinearMap::new(Matrix::from_rows(rows)?))
    }
}

/// `catalog:NAME` or a path to an [`AlgebraFile`].
pub fn load_algebra(reference: &str) -> Result<Algebra> {
    if let Some(name) = reference.strip_prefix("catalog:") {
        return Ok(catalog(name)?.0);
    }
    read_json::<AlgebraFile>(Path::new(reference))?.into_algebra()
}

/// The regular bimodule unless a module file is given.
pub fn load_module(a: &Algebra, path: Option<&Path>) -> Result<Bimodule> {
    match path {
        None => Ok(regular_bimodule(a)),
        Some(p) => read_json::<ModuleFile>(p)?.into_bimodule(a.dim()),
    }
}

pub fn load_map_file(path: &Path) -> Result<MapFile> {
    read_json(path)
}
