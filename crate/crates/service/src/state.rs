use std::sync::{Arc, Mutex, RwLock};

use chrono::{DateTime, Utc};

use mdcat_core::federation::{FederatedCatalog, Fetcher, Harvester, SourcePortal, load_registry};
use mdcat_core::profile::{Profile, SchemeMode, base_fragment, check_extension, compile_layered, load_profile, minimum_profile};
use mdcat_core::shacl::{ShapeSet, mobility_shapes};
use mdcat_core::vocab::{Vocabularies, load_bundled_vocabularies};

use crate::ServiceError;
use crate::config::ServiceConfig;

/// Everything the handlers share. The catalog is swapped whole after each
/// harvest, so readers keep a consistent snapshot.
pub struct AppState {
    /// The active profile merged with its base.
    pub profile: Profile,
    pub shapes: ShapeSet,
    pub vocabularies: Vocabularies,
    catalog: RwLock<Arc<FederatedCatalog>>,
    sources: Mutex<Vec<SourcePortal>>,
}

impl AppState {
    /// The bundled profile, vocabularies and shapes, and an empty catalog.
    pub fn bundled() -> Result<Self, ServiceError> {
        Ok(AppState {
            profile: minimum_profile().effective(base_fragment()),
            shapes: mobility_shapes(),
            vocabularies: load_bundled_vocabularies().map_err(|e| ServiceError::Config(e.to_string()))?,
            catalog: RwLock::new(Arc::new(FederatedCatalog::new())),
            sources: Mutex::new(Vec::new()),
        })
    }

    pub fn from_config(config: &ServiceConfig) -> Result<Self, ServiceError> {
        let mut state = Self::bundled()?;
        if let Some(path) = &config.profile {
            let text = read(path)?;
            let profile = load_profile(&text).map_err(|e| ServiceError::Config(format!("{}: {e}", path.display())))?;
            let violations = check_extension(base_fragment(), &profile).map_err(|e| ServiceError::Config(e.to_string()))?;
            if let Some(v) = violations.first() {
                return Err(ServiceError::Config(format!("{} does not extend the base: {}", path.display(), v.detail)));
            }
            state.shapes = compile_layered(&[base_fragment(), &profile], SchemeMode::Native);
            state.profile = profile.effective(base_fragment());
        }
        if let Some(path) = &config.registry {
            let sources = load_registry(&read(path)?).map_err(|e| ServiceError::Config(e.to_string()))?;
            state.sources = Mutex::new(sources);
        }
        Ok(state)
    }

    pub fn catalog(&self) -> Arc<FederatedCatalog> {
        self.catalog.read().expect("catalog lock").clone()
    }

    pub fn replace_catalog(&self, catalog: FederatedCatalog) {
        *self.catalog.write().expect("catalog lock") = Arc::new(catalog);
    }

    pub fn sources(&self) -> Vec<SourcePortal> {
        self.sources.lock().expect("sources lock").clone()
    }

    /// Harvests every registered source once and publishes the merged
    /// catalog. Failing sources are reported and keep their old records.
    pub fn harvest(&self, fetcher: &dyn Fetcher, now: DateTime<Utc>) -> Vec<String> {
        let harvester = Harvester {
            shapes: &self.shapes,
            concepts: &self.vocabularies,
        };
        let mut next = (*self.catalog()).clone();
        let mut errors = Vec::new();
        let mut sources = self.sources.lock().expect("sources lock");
        for source in sources.iter_mut() {
            match harvester.harvest(source, fetcher, now) {
                Ok((records, updated)) => {
                    next.merge(records);
                    *source = updated;
                }
                Err(e) => errors.push(e.to_string()),
            }
        }
        drop(sources);
        self.replace_catalog(next);
        errors
    }
}

fn read(path: &std::path::Path) -> Result<String, ServiceError> {
    std::fs::read_to_string(path).map_err(|e| ServiceError::Config(format!("{}: {e}", path.display())))
}
