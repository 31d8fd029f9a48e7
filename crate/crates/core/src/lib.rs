//! Set gradings on split orthogonal Lie algebras `so(2n)` built from Steiner
//! systems `S(2,4,n)`, with exact checks of the set-grading property and of
//! group realizability through the abelianized universal group.

pub mod designs;
pub mod error;
pub mod gradings;
pub mod lattice;
pub mod liealg;
pub mod report;
pub mod rootsys;
pub mod unigroup;

pub use error::{Error, Result};
