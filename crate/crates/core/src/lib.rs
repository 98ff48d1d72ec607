//! Exact computations on rational homogeneous varieties G/P.
//!
//! Root data and Dynkin diagrams live in [`dynkin`], gradings of the Lie
//! algebra induced by a parabolic subgroup in [`parabolic`], lines and linear
//! spaces in [`linspaces`], representation data in [`reps`], prolongations of
//! quadric systems in [`prolong`] and the octonionic models in [`octonion`].

pub mod cli;
pub mod dynkin;
pub mod field;
pub mod linspaces;
pub mod octonion;
pub mod parabolic;
pub mod prolong;
pub mod reps;

mod error;

pub use error::{Error, Result};
