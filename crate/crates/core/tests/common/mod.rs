//! Helpers shared by the integration tests.
#![allow(dead_code)]

pub mod graphs;
pub mod portals;
pub mod profiles;
pub mod search;
pub mod shacl;
