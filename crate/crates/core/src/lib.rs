//! Knapp–Stein R-groups for Levi subgroups of quasi-split special unitary
//! groups, computed from symbolic inducing data, together with the
//! character theory needed to classify elliptic constituents.

pub mod corpus;
pub mod cyclotomic;
pub mod datum;
pub mod elliptic;
pub mod error;
pub mod fixed_space;
pub mod finite_group;
pub mod fixtures;
pub mod mackey;
pub mod oracle;
pub mod report;
pub mod rgroup;
pub mod signed_weyl;
pub mod twist_labels;

pub use datum::{parse_datum, DatumDocument, DatumError, InducingDatum, ParseOptions, Violation};
pub use error::AnalysisError;
pub use rgroup::{analyze, RGroupAnalysis};
pub use signed_weyl::{Root, RootKind, SignedPermutation};
pub use twist_labels::{LabelAlgebra, PiTuple, Twist, TwistGroup};
