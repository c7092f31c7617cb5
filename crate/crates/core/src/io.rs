//! JSON file format for finite structures.
//!
//! ```json
//! {"universe":["a1","a2"],
//!  "relations":{"R":{"arity":2,"tuples":[["a1","a2"]]}},
//!  "constants":{"c1":"a1"}}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fo::{FinStructure, FoError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub arity: usize,
    pub tuples: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub universe: Vec<String>,
    #[serde(default)]
    pub relations: BTreeMap<String, RelationFile>,
    #[serde(default)]
    pub constants: BTreeMap<String, String>,
}

impl StructureFile {
    pub fn from_structure(m: &FinStructure) -> Self {
        let relations = m
            .signature()
            .relations()
            .map(|(name, arity)| {
                let tuples = m.relation_tuples(name).expect("relation of own signature");
                (name.to_string(), RelationFile { arity, tuples })
            })
            .collect();
        let constants = m
            .signature()
            .constants()
            .map(|c| (c.to_string(), m.constant_value(c).expect("interpreted").to_string()))
            .collect();
        StructureFile {
            universe: m.universe().to_vec(),
            relations,
            constants,
        }
    }

    pub fn to_structure(&self) -> Result<FinStructure, FoError> {
        FinStructure::new(
            self.universe.iter().cloned(),
            self.relations
                .iter()
                .map(|(n, r)| (n.clone(), r.arity, r.tuples.clone())),
            self.constants.iter().map(|(c, e)| (c.clone(), e.clone())),
        )
    }
}

pub fn structure_to_json(m: &FinStructure) -> serde_json::Value {
    serde_json::to_value(StructureFile::from_structure(m)).expect("serializable")
}
