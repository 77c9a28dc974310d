//! Exact generic rigidity of graphs.
//!
//! The crate decides generic local and redundant rigidity of bar-joint
//! frameworks in `R^d` by exact rank computations over a prime field (or the
//! rationals), builds quadric rigidity matrices for joined graphs, recognizes
//! balanced joins, and constructs the known families of graphs that satisfy
//! Hendrickson's necessary conditions for global rigidity without being
//! generically globally rigid.
//!
//! Genericity is probabilistic: configurations are random field elements, so a
//! rank deficiency caused by an unlucky sample happens with probability at most
//! `deg / p` per trial. Every decision runs at least two independent trials and
//! treats disagreement as an error.

pub mod families;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod quadric;
pub mod report;
pub mod rigidity;

pub use field::{Field, FieldKind, Fp, Rational, F61};
pub use graph::{Edge, Graph, GraphError, JoinStructure};
pub use matrix::Matrix;
pub use report::{hendrickson_report, Engine, ReportOptions, RigidityReport};
pub use rigidity::{Configuration, GgrVerdict};
