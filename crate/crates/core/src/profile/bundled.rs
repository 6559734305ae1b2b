//! The profiles shipped with the toolkit.

use std::sync::LazyLock;

use super::compile::{SchemeMode, compile_layered};
use super::document::load_profile;
use super::model::Profile;
use crate::shacl::ShapeSet;

const BASE_DOC: &str = include_str!("../../data/profiles/dcat-ap-base.profile");
const MINIMUM_DOC: &str = include_str!("../../data/profiles/mobilitydcat-ap.profile");

static BASE: LazyLock<Profile> = LazyLock::new(|| load_profile(BASE_DOC).expect("bundled base profile loads"));
static MINIMUM: LazyLock<Profile> = LazyLock::new(|| load_profile(MINIMUM_DOC).expect("bundled minimum profile loads"));

/// The DCAT-AP core fragment the mobility profile builds on.
pub fn base_fragment() -> &'static Profile {
    &BASE
}

/// The mobilityDCAT-AP minimum profile.
pub fn minimum_profile() -> &'static Profile {
    &MINIMUM
}

/// Shapes for the minimum profile layered over its base.
pub fn minimum_profile_shapes() -> ShapeSet {
    compile_layered(&[base_fragment(), minimum_profile()], SchemeMode::Native)
}
