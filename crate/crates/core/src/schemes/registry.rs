//! By-name construction of schemes.
//!
//! Scenario files describe schemes as a `kind` plus optional parameters. Each
//! kind maps to a [`SchemeFactory`] in a [`SchemeRegistry`]; callers may
//! register extra kinds next to the built-in ones.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Level, Scheme};
use crate::error::{Error, Result};

/// Declarative scheme description as it appears in a scenario file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subbands: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_min_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<Level>>,
}

impl SchemeSpec {
    pub fn reuse1() -> Self {
        Self {
            kind: "reuse1".into(),
            ..Self::default()
        }
    }

    pub fn sfr2(gamma_db: f64) -> Self {
        Self {
            kind: "sfr2".into(),
            gamma_db: Some(gamma_db),
            ..Self::default()
        }
    }

    pub fn mlsfr(subbands: usize, gamma_min_db: f64) -> Self {
        Self {
            kind: "mlsfr".into(),
            subbands: Some(subbands),
            gamma_min_db: Some(gamma_min_db),
            ..Self::default()
        }
    }

    fn require<T: Copy>(&self, value: Option<T>, param: &'static str) -> Result<T> {
        value.ok_or_else(|| Error::MissingParameter {
            kind: self.kind.clone(),
            param,
        })
    }
}

pub trait SchemeFactory: Send + Sync {
    /// Registry key.
    fn kind(&self) -> &'static str;

    fn build(&self, spec: &SchemeSpec) -> Result<Scheme>;
}

struct Reuse1;

impl SchemeFactory for Reuse1 {
    fn kind(&self) -> &'static str {
        "reuse1"
    }

    fn build(&self, _spec: &SchemeSpec) -> Result<Scheme> {
        Ok(Scheme::reuse1())
    }
}

struct Sfr2;

impl SchemeFactory for Sfr2 {
    fn kind(&self) -> &'static str {
        "sfr2"
    }

    fn build(&self, spec: &SchemeSpec) -> Result<Scheme> {
        Scheme::sfr2(spec.require(spec.gamma_db, "gamma_db")?)
    }
}

struct MlSfr;

impl SchemeFactory for MlSfr {
    fn kind(&self) -> &'static str {
        "mlsfr"
    }

    fn build(&self, spec: &SchemeSpec) -> Result<Scheme> {
        Scheme::mlsfr(
            spec.require(spec.subbands, "subbands")?,
            spec.require(spec.gamma_min_db, "gamma_min_db")?,
        )
    }
}

/// Explicit level table, validated like any constructed scheme.
struct Custom;

impl SchemeFactory for Custom {
    fn kind(&self) -> &'static str {
        "custom"
    }

    fn build(&self, spec: &SchemeSpec) -> Result<Scheme> {
        let levels = spec.levels.clone().ok_or_else(|| Error::MissingParameter {
            kind: spec.kind.clone(),
            param: "levels",
        })?;
        Scheme::from_levels("custom", levels)
    }
}

pub struct SchemeRegistry {
    factories: BTreeMap<&'static str, Box<dyn SchemeFactory>>,
}

impl SchemeRegistry {
    pub fn empty() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    /// `reuse1`, `sfr2`, `mlsfr` and `custom`.
    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Reuse1));
        r.register(Box::new(Sfr2));
        r.register(Box::new(MlSfr));
        r.register(Box::new(Custom));
        r
    }

    /// Adds a factory, replacing any previous one with the same kind.
    pub fn register(&mut self, factory: Box<dyn SchemeFactory>) {
        self.factories.insert(factory.kind(), factory);
    }

    pub fn kinds(&self) -> Vec<&'static str> {
        self.factories.keys().copied().collect()
    }

    pub fn build(&self, spec: &SchemeSpec) -> Result<Scheme> {
        let factory = self
            .factories
            .get(spec.kind.as_str())
            .ok_or_else(|| Error::UnknownSchemeKind(spec.kind.clone()))?;
        let scheme = factory.build(spec)?;
        Ok(match &spec.name {
            Some(name) => scheme.with_name(name.clone()),
            None => scheme,
        })
    }
}

impl Default for SchemeRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}
