//! Edge partitions of optimal 2-plane and 3-plane topological graphs.
//!
//! A k-plane graph is drawn with at most k crossings per edge. Optimal
//! 2-plane graphs fill every face of a pentangulation with a pentagram;
//! optimal 3-plane graphs fill every face of a hexangulation with eight
//! chords. This crate builds such graphs, splits their edges into classes
//! with planarity, forest and degree guarantees, and checks every claim with
//! independent verifiers.

pub mod embed;
pub mod exec;
pub mod generate;
pub mod orient;
pub mod partition;
pub mod topo;
pub mod verify;

pub use embed::{Dart, EmbedError, Face, FaceProfile, Faces, PlaneGraph};
pub use exec::Exec;
pub use topo::{TopoError, TopoGraph};
