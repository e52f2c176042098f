use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Perm,
    Table,
}

/// Group-spec document: permutation generators (0-based images of
/// `0..degree`) or an explicit Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default)]
    pub name: String,
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
}

impl GroupSpec {
    pub fn perm(name: &str, degree: usize, generators: Vec<Vec<usize>>) -> Self {
        GroupSpec {
            name: name.to_string(),
            kind: GroupKind::Perm,
            degree: Some(degree),
            generators,
            cayley: None,
        }
    }
}

pub fn load_group(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    match spec.kind {
        GroupKind::Perm => {
            let degree = match spec.degree {
                Some(d) => d,
                None if spec.generators.is_empty() => 0,
                None => spec.generators[0].len(),
            };
            FiniteGroup::from_permutations(&spec.name, degree, &spec.generators, cap)
        }
        GroupKind::Table => {
            let table = spec
                .cayley
                .clone()
                .ok_or_else(|| Error::Input("table spec without \"cayley\"".into()))?;
            if table.len() > cap {
                return Err(Error::ClosureOverflow { cap });
            }
            FiniteGroup::from_table(&spec.name, table)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_perm_document() {
        let doc = r#"{ "name": "S3", "kind": "perm", "degree": 3,
                       "generators": [[1,0,2],[1,2,0]] }"#;
        let spec: GroupSpec = serde_json::from_str(doc).unwrap();
        assert_eq!(load_group(&spec, DEFAULT_ORDER_CAP).unwrap().order(), 6);
    }

    #[test]
    fn parses_table_document() {
        let doc = r#"{ "name": "C2", "kind": "table", "cayley": [[0,1],[1,0]] }"#;
        let spec: GroupSpec = serde_json::from_str(doc).unwrap();
        assert_eq!(load_group(&spec, DEFAULT_ORDER_CAP).unwrap().order(), 2);
    }

    #[test]
    fn table_without_cayley_is_input_error() {
        let spec = GroupSpec {
            name: "x".into(),
            kind: GroupKind::Table,
            degree: None,
            generators: vec![],
            cayley: None,
        };
        assert!(matches!(load_group(&spec, 10), Err(Error::Input(_))));
    }
}
