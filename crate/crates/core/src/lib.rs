//! Metadata toolkit for mobilityDCAT-AP: RDF handling, SHACL validation,
//! profiles, controlled vocabularies, legacy mapping and catalogue federation.

pub mod federation;
pub mod io;
pub mod mapping;
pub mod profile;
pub mod publish;
pub mod rdf;
pub mod shacl;
pub mod vocab;
