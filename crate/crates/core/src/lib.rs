//! Exact combinatorics of root subsystems and the stratifications they index.
//!
//! For a semisimple Lie type of moderate rank this crate enumerates all root
//! subsystems, groups them into Weyl-group conjugacy classes, computes Weyl
//! indices, embedding numbers and top-stratum dimensions, and builds the fine
//! (per subsystem) and coarse (per class) stratification posets with their
//! Hasse diagrams. A classifier maps support patterns of points to strata.
//!
//! ```
//! use strata_core::{Atlas, Limits};
//!
//! let atlas = Atlas::compute(&"G2".parse().unwrap(), &Limits::default()).unwrap();
//! let m: Vec<u128> = atlas.classes.iter().map(|c| c.embedding_number).collect();
//! assert_eq!(m, [1, 2, 9, 18, 18, 12]);
//! ```

pub mod atlas;
pub mod classifier;
pub mod corpus;
pub mod exact_linalg;
pub mod render;
pub mod root_system;
pub mod stratification;
pub mod subsystem;

pub use atlas::{Atlas, AtlasDocument, Metadata};
pub use classifier::{is_polystable, stratum_of, support_subsystem, PointSupport};
pub use corpus::{compare, ExpectedDiagram};
pub use root_system::{RootSystem, TypeLabel, TypeSpec};
pub use stratification::{consistency_check, node_label, ConsistencyReport, StratPoset};
pub use subsystem::{Limits, Subsystem, SubsystemClass};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Type(#[from] root_system::TypeError),
    #[error(transparent)]
    Capability(#[from] subsystem::CapabilityError),
    #[error(transparent)]
    Linalg(#[from] exact_linalg::LinalgError),
    #[error(transparent)]
    Classify(#[from] classifier::ClassifyError),
    #[error("invalid atlas JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("atlas checksum mismatch: recorded {expected}, computed {found}")]
    Checksum { expected: String, found: String },
    #[error("corrupt atlas: {0}")]
    Corrupt(String),
    #[error("corpus: {0}")]
    Corpus(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
