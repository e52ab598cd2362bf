#![cfg_attr(not(test), no_std)]
extern crate alloc;
pub mod scalar;
pub mod abgroup;
pub mod search;
pub mod algebra;
pub mod action;
pub mod corpus;
pub mod equivariant;
pub mod duality;
pub mod obstruction;
pub mod tubular;
