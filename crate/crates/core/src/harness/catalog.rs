use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{load_group, FiniteGroup, GroupSpec, Subgroup, DEFAULT_ORDER_CAP};

const EMBEDDED: &str = include_str!("catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub p: u64,
    pub group: GroupSpec,
    pub expected_admissible: bool,
    pub expected_n_order: usize,
    #[serde(default)]
    pub notes: String,
}

/// A catalog entry whose expectations were re-derived from the group.
#[derive(Debug, Clone)]
pub struct LoadedEntry {
    pub entry: CatalogEntry,
    pub group: Arc<FiniteGroup>,
    pub admissible: bool,
    /// `O_p(G)`.
    pub n: Subgroup,
}

impl LoadedEntry {
    pub fn p(&self) -> u64 {
        self.entry.p
    }

    pub fn require_admissible(&self) -> Result<()> {
        if self.admissible {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "{} is not admissible at p = {}",
                self.entry.name, self.entry.p
            )))
        }
    }
}

impl CatalogEntry {
    /// Builds the group and checks admissibility and `|O_p(G)|` against the
    /// recorded values.
    pub fn load(&self) -> Result<LoadedEntry> {
        if !crate::linalg::is_prime(self.p) {
            return Err(Error::Input(format!(
                "{}: p = {} is not prime",
                self.name, self.p
            )));
        }
        let mut spec = self.group.clone();
        if spec.name.is_empty() {
            spec.name = self.name.clone();
        }
        let group = Arc::new(load_group(&spec, DEFAULT_ORDER_CAP)?);
        let adm = group.is_admissible(self.p);
        if adm.admissible != self.expected_admissible || adm.n.order() != self.expected_n_order {
            return Err(Error::Input(format!(
                "{} at p = {}: derived admissible = {}, |O_p| = {}; catalog says {}, {}",
                self.name,
                self.p,
                adm.admissible,
                adm.n.order(),
                self.expected_admissible,
                self.expected_n_order
            )));
        }
        Ok(LoadedEntry {
            entry: self.clone(),
            group,
            admissible: adm.admissible,
            n: adm.n,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded catalog parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Catalog {
            entries: serde_json::from_str(text)?,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Entry by name; `p` disambiguates names listed at several primes.
    pub fn find(&self, name: &str, p: Option<u64>) -> Result<&CatalogEntry> {
        let mut hits = self
            .entries
            .iter()
            .filter(|e| e.name.eq_ignore_ascii_case(name) && p.is_none_or(|p| e.p == p));
        match (hits.next(), hits.next()) {
            (Some(e), None) => Ok(e),
            (None, _) => Err(Error::Input(match p {
                Some(p) => format!("no catalog entry {name} at p = {p}"),
                None => format!("no catalog entry {name}"),
            })),
            (Some(_), Some(_)) => Err(Error::Input(format!(
                "{name} is listed at several primes; pass -p"
            ))),
        }
    }

    pub fn admissible_entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.expected_admissible)
    }

    /// Loads every entry, failing on the first mismatch.
    pub fn validate(&self) -> Result<Vec<LoadedEntry>> {
        self.entries.iter().map(CatalogEntry::load).collect()
    }
}
