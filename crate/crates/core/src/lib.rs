//! Coxeter-sortable elements of finite Coxeter groups: c-sorting words,
//! c-alignment, the classical pattern-avoidance models, noncrossing
//! partitions and clusters, together with the counting identities that tie
//! them together.

pub mod alignment;
pub mod classical;
pub mod clusters;
pub mod element;
pub mod enumeration;
pub mod error;
pub mod group_spec;
pub mod linalg;
pub mod noncrossing;
pub mod root_system;
pub mod sorting;
pub mod verify;

pub use element::{Element, ReducedWord};
pub use error::{Error, Result};
pub use root_system::{CoxeterMatrix, CoxeterSystem, GroupType, SignedRoot};
pub use sorting::CoxeterElement;
