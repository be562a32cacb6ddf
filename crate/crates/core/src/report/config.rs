//! Run configuration: a TOML document describing a Hecke instance or a tower.
//!
//! ```toml
//! schema = 1
//! name = "omega-sign"
//! field = { conductor = 1 }
//! group = { kind = "cyclic", n = 4 }
//! normal = { members = [0, 2], values = ["1", "-1"] }
//! levels = [[0]]
//! ```
//!
//! Groups: `cyclic {n}`, `symmetric {n}`, `table {rows}`, `product {factors}`,
//! `semidirect {base, automorphism}` (the automorphism as the image list on `base`).
//! Towers: `cyclic {p, depth, twist?}` or `chain {levels, twist? = {automorphism, rho_t?}}`,
//! the chain living in `group`. Character values are `"p/q"`, `"zeta^k"`, `"-zeta^k"` or a
//! list of power-basis coefficients.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::rational::{parse_rational, Rational};
use crate::exact::{CyclotomicField, FieldAut, FieldElement};
use crate::group::{
    attach_unit_twist, cyclic_tower, validate_normal_character, FiniteGroup, GroupHom, NormalCharacter, RhoAction, Subgroup,
    TowerSpec, ValidationReport,
};
use crate::hecke::{HeckeError, HeckeInstance};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{location}: {message}")]
pub struct ConfigError {
    pub location: String,
    pub message: String,
}

impl ConfigError {
    pub fn at(location: impl Into<String>, message: impl ToString) -> Self {
        ConfigError { location: location.into(), message: message.to_string() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: u32,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub field: FieldConfig,
    #[serde(default)]
    pub group: Option<GroupConfig>,
    #[serde(default)]
    pub normal: Option<NormalConfig>,
    /// Galois exponent of `ρ(g)` per group element.
    #[serde(default)]
    pub rho: Option<Vec<i64>>,
    /// `μ(Q)`, default 1.
    #[serde(default)]
    pub measure: Option<String>,
    #[serde(default)]
    pub levels: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub tower: Option<TowerConfig>,
    /// Names of the verify checks to run; all when absent.
    #[serde(default)]
    pub suite: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub conductor: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig { conductor: 1 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupConfig {
    Cyclic { n: usize },
    Symmetric { n: usize },
    Table { rows: Vec<Vec<usize>> },
    Product { factors: Vec<GroupConfig> },
    Semidirect { base: Box<GroupConfig>, automorphism: Vec<usize> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ValueConfig {
    Text(String),
    Coefficients(Vec<String>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NormalConfig {
    pub members: Vec<usize>,
    pub values: Vec<ValueConfig>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TowerConfig {
    Cyclic { p: u64, depth: usize, #[serde(default)] twist: Option<i64> },
    Chain { levels: Vec<Vec<usize>>, #[serde(default)] twist: Option<ChainTwist> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ChainTwist {
    pub automorphism: Vec<usize>,
    #[serde(default)]
    pub rho_t: Option<i64>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let (l, c) = line_col(text, span.start);
                format!("line {l}, column {c}")
            }
            None => "config".to_string(),
        };
        ConfigError::at(location, e.message())
    })?;
    if cfg.schema != SCHEMA_VERSION {
        return Err(ConfigError::at("schema", format!("unsupported schema version {} (expected {SCHEMA_VERSION})", cfg.schema)));
    }
    Ok(cfg)
}

/// Command-line overrides applied on top of a configuration.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub conductor: Option<u64>,
    pub depth: Option<usize>,
}

/// A validated configuration, ready for the runners.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub config: RunConfig,
    pub group: FiniteGroup,
    pub field: CyclotomicField,
    pub omega: NormalCharacter,
    pub rho: RhoAction,
    pub mu_q: Rational,
    pub levels: Vec<Subgroup>,
    pub tower: Option<TowerSpec>,
    pub suite: Option<Vec<String>>,
}

impl Problem {
    pub fn validation(&self) -> ValidationReport {
        validate_normal_character(&self.omega, &self.rho)
    }

    pub fn instance(&self) -> Result<Arc<HeckeInstance>, HeckeError> {
        HeckeInstance::with_measure(self.omega.clone(), self.rho.clone(), self.mu_q.clone())
    }

    pub fn runs(&self, check: &str) -> bool {
        self.suite.as_ref().is_none_or(|s| s.iter().any(|c| c == check))
    }
}

fn build_group(cfg: &GroupConfig, at: &str) -> Result<FiniteGroup, ConfigError> {
    let err = |e: crate::group::GroupError| ConfigError::at(at, e);
    match cfg {
        GroupConfig::Cyclic { n } if *n >= 1 && *n <= crate::group::MAX_ORDER => Ok(FiniteGroup::cyclic(*n)),
        GroupConfig::Cyclic { n } => Err(ConfigError::at(at, format!("cyclic order {n} out of range"))),
        GroupConfig::Symmetric { n } if (1..=5).contains(n) => Ok(FiniteGroup::symmetric(*n).0),
        GroupConfig::Symmetric { n } => Err(ConfigError::at(at, format!("symmetric degree {n} out of range 1..=5"))),
        GroupConfig::Table { rows } => FiniteGroup::from_table("table", rows.clone()).map_err(err),
        GroupConfig::Product { factors } => {
            let mut it = factors.iter().enumerate();
            let (_, first) = it.next().ok_or_else(|| ConfigError::at(at, "a product needs factors"))?;
            let mut g = build_group(first, &format!("{at}.factors[0]"))?;
            for (i, f) in it {
                let h = build_group(f, &format!("{at}.factors[{i}]"))?;
                g = FiniteGroup::product(&g, &h).map_err(err)?;
            }
            Ok(g)
        }
        GroupConfig::Semidirect { base, automorphism } => {
            let b = build_group(base, &format!("{at}.base"))?;
            let aut = GroupHom::new(&b, &b, automorphism.clone())
                .ok()
                .filter(|h| h.is_bijective())
                .ok_or_else(|| ConfigError::at(format!("{at}.automorphism"), "not an automorphism of the base"))?;
            FiniteGroup::semidirect(&b, &aut).map_err(err)
        }
    }
}

pub fn parse_value(v: &ValueConfig, field: &CyclotomicField, at: &str) -> Result<FieldElement, ConfigError> {
    match v {
        ValueConfig::Coefficients(c) => FieldElement::from_strings(field, c).map_err(|e| ConfigError::at(at, e)),
        ValueConfig::Text(s) => {
            let t = s.trim();
            let (sign, rest) = match t.strip_prefix('-') {
                Some(r) => (-1, r.trim()),
                None => (1, t),
            };
            if let Some(k) = rest.strip_prefix("zeta^").or(if rest == "zeta" { Some("1") } else { None }) {
                let k: i64 = k.trim().parse().map_err(|_| ConfigError::at(at, format!("bad exponent in {s:?}")))?;
                let z = field.zeta_pow(k);
                Ok(if sign < 0 { -z } else { z })
            } else {
                let r = parse_rational(t).map_err(|e| ConfigError::at(at, e))?;
                Ok(field.from_rational(&r))
            }
        }
    }
}

fn subgroup(g: &FiniteGroup, members: &[usize], at: &str) -> Result<Subgroup, ConfigError> {
    if let Some(&x) = members.iter().find(|&&x| x >= g.order()) {
        return Err(ConfigError::at(at, format!("element {x} outside a group of order {}", g.order())));
    }
    Subgroup::new(g, members.iter().copied()).map_err(|e| ConfigError::at(at, e))
}

pub fn build_problem(cfg: &RunConfig, ov: &Overrides) -> Result<Problem, ConfigError> {
    let declared = CyclotomicField::new(cfg.field.conductor).map_err(|e| ConfigError::at("field.conductor", e))?;
    let field = match ov.conductor {
        Some(m) => CyclotomicField::new(m).map_err(|e| ConfigError::at("--field-conductor", e))?,
        None => declared.clone(),
    };
    let mu_q = match &cfg.measure {
        Some(s) => parse_rational(s).map_err(|e| ConfigError::at("measure", e))?,
        None => Rational::from_integer(1.into()),
    };
    let name = cfg.name.clone().unwrap_or_else(|| "config".into());
    let mut echo = cfg.clone();
    if let Some(m) = ov.conductor {
        echo.field.conductor = m;
    }

    if let Some(TowerConfig::Cyclic { p, depth, twist }) = &cfg.tower {
        if cfg.group.is_some() || cfg.normal.is_some() || cfg.rho.is_some() {
            return Err(ConfigError::at("tower", "a cyclic tower defines its own group; drop group/normal/rho"));
        }
        let depth = ov.depth.unwrap_or(*depth);
        if let Some(TowerConfig::Cyclic { depth: d, .. }) = &mut echo.tower {
            *d = depth;
        }
        let mut tower = cyclic_tower(*p, depth, &field).map_err(|e| ConfigError::at("tower", e))?;
        if let Some(u) = twist {
            tower = attach_unit_twist(&tower, *u).map_err(|e| ConfigError::at("tower.twist", e))?;
        }
        return Ok(Problem {
            name,
            config: echo,
            group: tower.group().clone(),
            field,
            omega: tower.omega().clone(),
            rho: tower.rho().clone(),
            mu_q,
            levels: tower.levels().to_vec(),
            tower: Some(tower),
            suite: cfg.suite.clone(),
        });
    }

    let gcfg = cfg.group.as_ref().ok_or_else(|| ConfigError::at("group", "missing group description"))?;
    let group = build_group(gcfg, "group")?;
    let (n, table) = match &cfg.normal {
        Some(nc) => {
            let n = subgroup(&group, &nc.members, "normal.members")?;
            if nc.values.len() != nc.members.len() {
                return Err(ConfigError::at("normal.values", "one value per member of N is required"));
            }
            let mut table = Vec::new();
            for (i, (x, v)) in nc.members.iter().zip(&nc.values).enumerate() {
                let at = format!("normal.values[{i}]");
                let val = parse_value(v, &declared, &at)?;
                let val = if field == declared { val } else { val.embed_into(&field).map_err(|e| ConfigError::at(&at, e))? };
                table.push((*x, val));
            }
            (n, table)
        }
        None => {
            let n = Subgroup::trivial(&group);
            (n, vec![(0, field.one())])
        }
    };
    let omega = NormalCharacter::new(&n, &field, &table).map_err(|e| ConfigError::at("normal", e))?;
    let rho = match &cfg.rho {
        Some(exps) if field != declared && exps.iter().any(|&k| k.rem_euclid(declared.conductor().max(1) as i64) != 1 % declared.conductor().max(1) as i64) => {
            return Err(ConfigError::at("rho", "a nontrivial Galois action cannot be moved to another field"));
        }
        Some(exps) if field == declared => {
            if exps.len() != group.order() {
                return Err(ConfigError::at("rho", format!("expected {} exponents", group.order())));
            }
            RhoAction::from_exponents(&group, &field, exps).map_err(|e| ConfigError::at("rho", e))?
        }
        _ => RhoAction::trivial(&group, &field),
    };
    let mut levels = Vec::new();
    for (i, l) in cfg.levels.iter().flatten().enumerate() {
        levels.push(subgroup(&group, l, &format!("levels[{i}]"))?);
    }
    let tower = match &cfg.tower {
        Some(TowerConfig::Chain { levels: chain, twist }) => {
            let ks = chain
                .iter()
                .enumerate()
                .map(|(i, l)| subgroup(&group, l, &format!("tower.levels[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let tw = match twist {
                Some(t) => {
                    let phi = GroupHom::new(&group, &group, t.automorphism.clone())
                        .ok()
                        .filter(|h| h.is_bijective())
                        .ok_or_else(|| ConfigError::at("tower.twist.automorphism", "not an automorphism"))?;
                    let a = FieldAut::new(&field, t.rho_t.unwrap_or(1)).map_err(|e| ConfigError::at("tower.twist.rho_t", e))?;
                    Some((phi, a))
                }
                None => None,
            };
            let t = TowerSpec::new(&group, ks, omega.clone(), rho.clone(), tw).map_err(|e| ConfigError::at("tower", e))?;
            let t = match ov.depth {
                Some(d) => t.truncate(d).map_err(|e| ConfigError::at("--depth", e))?,
                None => t,
            };
            if levels.is_empty() {
                levels = t.levels().to_vec();
            }
            Some(t)
        }
        _ => None,
    };
    if let Some(t) = &tower {
        return Ok(Problem {
            name,
            config: echo,
            group: t.group().clone(),
            field,
            omega: t.omega().clone(),
            rho: t.rho().clone(),
            mu_q,
            levels: t.levels().to_vec(),
            tower: Some(t.clone()),
            suite: cfg.suite.clone(),
        });
    }
    if levels.is_empty() {
        levels.push(Subgroup::trivial(&group));
    }
    Ok(Problem { name, config: echo, group, field, omega, rho, mu_q, levels, tower, suite: cfg.suite.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_locations() {
        let e = parse_config("schema = 1\ngroup = { kind = \"cyclic\", n = \"four\" }\n").unwrap_err();
        assert!(e.location.starts_with("line 2"), "{e}");
        let e = parse_config("schema = 7\n").unwrap_err();
        assert_eq!(e.location, "schema");
        let cfg = parse_config("schema = 1\ngroup = { kind = \"cyclic\", n = 4 }\nlevels = [[0, 3]]\n").unwrap();
        let e = build_problem(&cfg, &Overrides::default()).unwrap_err();
        assert_eq!(e.location, "levels[0]");
    }

    #[test]
    fn values() {
        let f = CyclotomicField::new(3).unwrap();
        let v = |s: &str| parse_value(&ValueConfig::Text(s.into()), &f, "x").unwrap();
        assert_eq!(v("zeta^2"), f.zeta_pow(2));
        assert_eq!(v("-zeta"), -f.zeta_pow(1));
        assert_eq!(v("-1/2"), f.from_rational(&crate::exact::rational::rat(-1, 2)));
        let c = parse_value(&ValueConfig::Coefficients(vec!["0".into(), "1".into()]), &f, "x").unwrap();
        assert_eq!(c, f.zeta_pow(1));
    }
}
