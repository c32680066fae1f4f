//! Enumeration and verification of bobbin-lace grounds modelled as
//! 2-in/2-out digraphs embedded on a torus.
//!
//! The pieces, bottom up: [`geometry`] for the lattice and the crossing test,
//! [`path`] for lace paths, [`embedding`] for the embedding under
//! construction, [`canonical`] for labels and symmetry, [`validator`] for the
//! property checks, [`enumerator`] for the parallel search, plus [`braid`],
//! [`format`] and [`render`] for annotations and files.

pub mod braid;
pub mod canonical;
pub mod embedding;
pub mod enumerator;
pub mod error;
pub mod format;
pub mod geometry;
pub mod path;
pub mod render;
pub mod validator;

pub use canonical::{canonical_id, is_canonical, EmbeddingId, PruneRule, Transform, VertexLabel};
pub use embedding::GroundEmbedding;
pub use enumerator::{enumerate, Connectivity, SearchConfig, SearchResult};
pub use error::{LaceError, ParseError};
pub use geometry::{Arc, GridPos, Slot, StepVector, TorusDims};
pub use path::{generate_lace_paths, LacePath};
pub use validator::{full_report, PropertyReport};
