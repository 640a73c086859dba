//! Spherical actions, extended weight semigroups and equidimensional
//! quotients.

pub mod catalog;
pub mod cli;
pub mod ews;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod monoidcone;
pub mod rootdata;
pub mod torusquot;
pub mod witness;
