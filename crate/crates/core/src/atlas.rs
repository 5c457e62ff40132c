//! The complete computed record for one Lie type, and its JSON form.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::root_system::{Component, RootSystem, TypeSpec, CARTAN_CONVENTION};
use crate::stratification::{coarse_poset, fine_poset, PosetRecord, StratPoset};
use crate::subsystem::{conjugacy_classes, enumerate_subsystems, Limits, Subsystem, SubsystemClass};
use crate::Error;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    pub cartan_convention: String,
    /// Unix seconds; left empty by the library so output is reproducible.
    /// Not covered by the checksum.
    pub timestamp: Option<u64>,
}

impl Default for Metadata {
    fn default() -> Self {
        Self {
            tool_version: TOOL_VERSION.to_string(),
            cartan_convention: CARTAN_CONVENTION.to_string(),
            timestamp: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Atlas {
    pub root_system: RootSystem,
    /// All root subsystems, sorted by mask.
    pub subsystems: Vec<Subsystem>,
    /// Class id of each subsystem.
    pub class_of: Vec<usize>,
    /// Conjugacy classes, indexed by class id.
    pub classes: Vec<SubsystemClass>,
    pub fine: StratPoset,
    pub coarse: StratPoset,
    pub metadata: Metadata,
}

impl Atlas {
    pub fn compute(spec: &TypeSpec, limits: &Limits) -> Result<Self, Error> {
        let root_system = RootSystem::new(spec)?;
        let subsystems = enumerate_subsystems(&root_system, limits)?;
        let partition = conjugacy_classes(&root_system, &subsystems);
        let fine = fine_poset(&root_system, &subsystems);
        let coarse = coarse_poset(&root_system, &partition.classes);
        Ok(Self {
            root_system,
            subsystems,
            class_of: partition.class_of,
            classes: partition.classes,
            fine,
            coarse,
            metadata: Metadata::default(),
        })
    }

    pub fn spec(&self) -> &TypeSpec {
        self.root_system.spec()
    }

    pub fn subsystem_index(&self, psi: &Subsystem) -> Option<usize> {
        self.subsystems.binary_search(psi).ok()
    }

    pub fn class(&self, class_id: usize) -> &SubsystemClass {
        &self.classes[class_id]
    }

    pub fn members(&self, class_id: usize) -> impl Iterator<Item = &Subsystem> {
        self.subsystems
            .iter()
            .zip(&self.class_of)
            .filter(move |(_, &c)| c == class_id)
            .map(|(s, _)| s)
    }

    /// `#k` suffix distinguishing classes that share a diagram label,
    /// numbered by class id starting at 1. `None` when the label is unique.
    pub fn duplicate_index(&self, class_id: usize) -> Option<usize> {
        let label = crate::stratification::node_label(&self.classes[class_id]);
        let same: Vec<usize> = self
            .classes
            .iter()
            .filter(|c| crate::stratification::node_label(c) == label)
            .map(|c| c.class_id)
            .collect();
        (same.len() > 1).then(|| same.iter().position(|&c| c == class_id).expect("present") + 1)
    }

    pub fn to_document(&self) -> AtlasDocument {
        let payload = self.payload();
        AtlasDocument {
            schema_version: SCHEMA_VERSION,
            checksum: payload.checksum(),
            spec: payload.spec,
            roots: payload.roots,
            subsystems: payload.subsystems,
            classes: payload.classes,
            fine_poset: payload.fine_poset,
            coarse_poset: payload.coarse_poset,
            metadata: self.metadata.clone(),
        }
    }

    pub fn checksum(&self) -> String {
        self.payload().checksum()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("atlas serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let doc: AtlasDocument = serde_json::from_str(text)?;
        Self::from_document(doc)
    }

    /// Rebuilds an atlas from a document after checking its schema version,
    /// checksum, and that its roots match a fresh construction of the type.
    pub fn from_document(doc: AtlasDocument) -> Result<Self, Error> {
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Corrupt(format!("unsupported schema_version {}", doc.schema_version)));
        }
        let payload = Payload {
            spec: doc.spec,
            roots: doc.roots,
            subsystems: doc.subsystems,
            classes: doc.classes,
            fine_poset: doc.fine_poset,
            coarse_poset: doc.coarse_poset,
        };
        let found = payload.checksum();
        if found != doc.checksum {
            return Err(Error::Checksum {
                expected: doc.checksum,
                found,
            });
        }
        let components = payload
            .spec
            .components
            .iter()
            .map(|c| Component::new(c.family, c.rank))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = TypeSpec::new(components);
        let root_system = RootSystem::new(&spec)?;
        if root_system.roots() != payload.roots.as_slice() {
            return Err(Error::Corrupt("root list does not match the type".into()));
        }
        let n_classes = payload.classes.len();
        if payload.classes.iter().enumerate().any(|(i, c)| c.class_id != i) {
            return Err(Error::Corrupt("class ids are not 0..n in order".into()));
        }
        let mut subsystems = Vec::with_capacity(payload.subsystems.len());
        let mut class_of = Vec::with_capacity(payload.subsystems.len());
        for rec in &payload.subsystems {
            if rec.class_id >= n_classes || rec.roots.iter().any(|&i| i >= root_system.len()) {
                return Err(Error::Corrupt("subsystem record out of range".into()));
            }
            subsystems.push(Subsystem::from_indices(rec.roots.iter().copied()));
            class_of.push(rec.class_id);
        }
        if subsystems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Corrupt("subsystems are not sorted and distinct".into()));
        }
        let fine = StratPoset::try_from(payload.fine_poset).map_err(|e| Error::Corrupt(e.to_string()))?;
        let coarse = StratPoset::try_from(payload.coarse_poset).map_err(|e| Error::Corrupt(e.to_string()))?;
        if fine.nodes.iter().any(|&i| i >= subsystems.len()) || coarse.nodes.iter().any(|&i| i >= n_classes) {
            return Err(Error::Corrupt("poset node out of range".into()));
        }
        Ok(Self {
            root_system,
            subsystems,
            class_of,
            classes: payload.classes,
            fine,
            coarse,
            metadata: doc.metadata,
        })
    }

    fn payload(&self) -> Payload {
        Payload {
            spec: SpecRecord {
                name: self.spec().to_string(),
                components: self.spec().components().to_vec(),
            },
            roots: self.root_system.roots().to_vec(),
            subsystems: self
                .subsystems
                .iter()
                .zip(&self.class_of)
                .map(|(s, &c)| SubsystemRecord {
                    roots: s.indices(),
                    class_id: c,
                })
                .collect(),
            classes: self.classes.clone(),
            fine_poset: self.fine.to_record(),
            coarse_poset: self.coarse.to_record(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub name: String,
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemRecord {
    /// Sorted root indices.
    pub roots: Vec<usize>,
    pub class_id: usize,
}

/// The mathematical part of an atlas, which is what the checksum covers.
#[derive(Serialize)]
struct Payload {
    spec: SpecRecord,
    roots: Vec<Vec<i64>>,
    subsystems: Vec<SubsystemRecord>,
    classes: Vec<SubsystemClass>,
    fine_poset: PosetRecord,
    coarse_poset: PosetRecord,
}

impl Payload {
    fn checksum(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("payload serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

/// On-disk JSON layout, `schema_version` 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasDocument {
    pub schema_version: u32,
    pub spec: SpecRecord,
    pub roots: Vec<Vec<i64>>,
    pub subsystems: Vec<SubsystemRecord>,
    pub classes: Vec<SubsystemClass>,
    pub fine_poset: PosetRecord,
    pub coarse_poset: PosetRecord,
    pub metadata: Metadata,
    pub checksum: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_keeps_checksum() {
        let atlas = Atlas::compute(&"B2".parse().unwrap(), &Limits::default()).unwrap();
        let text = atlas.to_json();
        let back = Atlas::from_json(&text).unwrap();
        assert_eq!(back.checksum(), atlas.checksum());
        assert_eq!(back.to_json(), text);
        assert_eq!(back.coarse, atlas.coarse);
        assert_eq!(back.fine, atlas.fine);
    }

    #[test]
    fn tampering_is_detected() {
        let atlas = Atlas::compute(&"A2".parse().unwrap(), &Limits::default()).unwrap();
        let mut doc = atlas.to_document();
        doc.classes[1].embedding_number += 1;
        assert!(matches!(Atlas::from_document(doc), Err(Error::Checksum { .. })));
        let mut doc = atlas.to_document();
        doc.schema_version = 2;
        assert!(matches!(Atlas::from_document(doc), Err(Error::Corrupt(_))));
    }

    #[test]
    fn serialization_is_deterministic() {
        let spec: TypeSpec = "G2".parse().unwrap();
        let a = Atlas::compute(&spec, &Limits::default()).unwrap().to_json();
        let b = Atlas::compute(&spec, &Limits::default()).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn timestamp_is_outside_checksum() {
        let mut atlas = Atlas::compute(&"A1".parse().unwrap(), &Limits::default()).unwrap();
        let before = atlas.checksum();
        atlas.metadata.timestamp = Some(1_700_000_000);
        assert_eq!(atlas.checksum(), before);
        assert!(Atlas::from_json(&atlas.to_json()).is_ok());
    }
}
