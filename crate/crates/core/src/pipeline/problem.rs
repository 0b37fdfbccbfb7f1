//! Problem descriptions read from JSON.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::parse_rational;
use crate::error::{Error, Result};
use crate::lattice::{FiniteDiagonalGroup, TorsionVector};
use crate::qhpoly::{ExtendedGroup, QuasiPolynomial};
use crate::strata::{index_set_from_one_based, ChiOverrides};

pub const DEFAULT_TRUNCATION: u32 = 12;

fn default_truncation() -> u32 {
    DEFAULT_TRUNCATION
}

/// A problem as written by the user: a polynomial, a group choice, a
/// truncation depth and optional Euler characteristic overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub variables: Vec<String>,
    pub terms: Vec<TermSpec>,
    #[serde(default)]
    pub group: GroupSpec,
    #[serde(default = "default_truncation")]
    pub truncation: u32,
    #[serde(default, skip_serializing_if = "OverrideSpec::is_empty")]
    pub overrides: OverrideSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub exps: Vec<u32>,
    #[serde(default = "CoeffSpec::one")]
    pub coeff: CoeffSpec,
}

/// A coefficient given either as a JSON integer or as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    Integer(i64),
    Text(String),
}

impl CoeffSpec {
    fn one() -> Self {
        CoeffSpec::Integer(1)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupSpec {
    /// `G = G_f`.
    #[default]
    FullSymmetry,
    /// `G = <h>`, so that `Ḡ = C*`.
    MonodromyCyclic,
    /// The group generated by explicit elements, each a list of `"p/q"`
    /// coordinates.
    Generators { generators: Vec<Vec<String>> },
}

impl GroupSpec {
    pub fn label(&self) -> &'static str {
        match self {
            GroupSpec::FullSymmetry => "full-symmetry",
            GroupSpec::MonodromyCyclic => "monodromy-cyclic",
            GroupSpec::Generators { .. } => "generators",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chi_v: Vec<OverrideEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chi_y: Vec<OverrideEntry>,
}

impl OverrideSpec {
    pub fn is_empty(&self) -> bool {
        self.chi_v.is_empty() && self.chi_y.is_empty()
    }
}

/// One override; `set` lists 1-based coordinate indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideEntry {
    pub set: Vec<usize>,
    pub value: i64,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Checks the description and builds the polynomial and groups.
    pub fn resolve(&self) -> Result<Problem> {
        let n = self.variables.len();
        if n == 0 {
            return Err(Error::Parse("at least one variable is required".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exps.len() != n {
                return Err(Error::Parse(format!(
                    "term {:?} has {} exponents for {n} variables",
                    t.exps,
                    t.exps.len()
                )));
            }
            let c = match &t.coeff {
                CoeffSpec::Integer(v) => crate::arith::rat(*v, 1),
                CoeffSpec::Text(s) => parse_rational(s)?,
            };
            terms.push((t.exps.clone(), c));
        }
        if terms.iter().all(|(_, c)| c.is_zero()) {
            return Err(Error::EmptyPolynomial);
        }
        let poly = QuasiPolynomial::new(n, terms)?;
        let symmetry = poly.symmetry_group()?;
        let finite = match &self.group {
            GroupSpec::FullSymmetry => symmetry.clone(),
            GroupSpec::MonodromyCyclic => {
                FiniteDiagonalGroup::generated_by(n, &[poly.monodromy_element()])?
            }
            GroupSpec::Generators { generators } => {
                let gens = generators
                    .iter()
                    .map(|g| parse_element(g, n))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(bad) = gens.iter().find(|g| !poly.is_symmetry(g)) {
                    return Err(Error::NotASymmetry(bad.to_string()));
                }
                FiniteDiagonalGroup::generated_by(n, &gens)?
            }
        };
        let ext = ExtendedGroup::new(poly.weights().clone(), finite)?;
        Ok(Problem {
            name: self
                .name
                .clone()
                .unwrap_or_else(|| poly.format_with(&self.variables)),
            variables: self.variables.clone(),
            poly,
            group: self.group.clone(),
            symmetry,
            ext,
            truncation: self.truncation,
            overrides: self.chi_overrides(n)?,
        })
    }

    fn chi_overrides(&self, n: usize) -> Result<ChiOverrides> {
        let collect = |entries: &[OverrideEntry]| -> Result<BTreeMap<Vec<usize>, i64>> {
            let mut out = BTreeMap::new();
            for e in entries {
                let set = index_set_from_one_based(&e.set, n)?;
                if out.insert(set, e.value).is_some() {
                    return Err(Error::Parse(format!("duplicate override for {:?}", e.set)));
                }
            }
            Ok(out)
        };
        let chi_y = collect(&self.overrides.chi_y)?;
        if chi_y.contains_key(&Vec::new()) {
            return Err(Error::Parse(
                "chi_y overrides need a non-empty coordinate set".into(),
            ));
        }
        Ok(ChiOverrides {
            chi_v: collect(&self.overrides.chi_v)?,
            chi_y,
        })
    }
}

fn parse_element(coords: &[String], n: usize) -> Result<TorsionVector> {
    if coords.len() != n {
        return Err(Error::Parse(format!(
            "generator {coords:?} has {} coordinates for {n} variables",
            coords.len()
        )));
    }
    Ok(TorsionVector::new(
        coords
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<_>>()?,
    ))
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub name: String,
    pub variables: Vec<String>,
    pub poly: QuasiPolynomial,
    pub group: GroupSpec,
    /// `G_f`.
    pub symmetry: FiniteDiagonalGroup,
    /// `Ḡ = C*·G` for the selected `G`.
    pub ext: ExtendedGroup,
    pub truncation: u32,
    pub overrides: ChiOverrides,
}

impl Problem {
    pub fn group(&self) -> &FiniteDiagonalGroup {
        self.ext.finite_part()
    }

    pub fn is_monodromy_cyclic(&self) -> bool {
        let h = self.poly.monodromy_element();
        FiniteDiagonalGroup::generated_by(self.poly.dim(), &[h]).is_ok_and(|c| &c == self.group())
    }
}
