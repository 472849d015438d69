//! Symplectic root systems over F₂: decorations of graph nodes by vectors of a
//! symplectic F₂-space whose pairings reproduce the adjacency.
//!
//! The crate covers linear algebra over F₂ ([`gf2`]), symplectic spaces
//! ([`symplectic`]), graphs ([`graph`]), root systems with their quotients
//! ([`srs`]), one- and two-node extensions ([`extend`]), integral root systems
//! and the Weyl action ([`cartan`]), the 2-group realization ([`grp2`]) and
//! the property sweeps used by the command line tool ([`verify`]).

pub mod cartan;
pub mod extend;
pub mod gf2;
pub mod graph;
pub mod grp2;
pub mod srs;
pub mod symplectic;
pub mod verify;

use thiserror::Error;

pub use gf2::{BitMat, BitVec};
pub use graph::{DynkinFamily, Graph};
pub use srs::{Srs, SympMap};
pub use symplectic::{SpaceType, SympSpace};

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linear(#[from] gf2::Gf2Error),
    #[error(transparent)]
    Symplectic(#[from] symplectic::SymplecticError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Srs(#[from] srs::SrsError),
    #[error(transparent)]
    Extend(#[from] extend::ExtendError),
    #[error(transparent)]
    Cartan(#[from] cartan::CartanError),
    #[error(transparent)]
    Group(#[from] grp2::GroupError),
}
