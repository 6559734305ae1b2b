use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::ServiceError;

/// Environment variable overriding the bind address.
pub const BIND_ENV: &str = "MDCAT_BIND";
pub const DEFAULT_BIND: &str = "127.0.0.1:8080";

/// The service's TOML configuration. Relative paths are resolved against the
/// file's directory.
///
/// ```toml
/// bind = "0.0.0.0:8080"
/// registry = "sources.json"
/// profile = "regional.profile"
/// harvest_timeout_secs = 30
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServiceConfig {
    pub bind: Option<String>,
    /// Source registry harvested at start.
    pub registry: Option<PathBuf>,
    /// A profile document extending the DCAT-AP base; the bundled
    /// mobilityDCAT-AP profile when absent.
    pub profile: Option<PathBuf>,
    pub harvest_timeout_secs: Option<u64>,
}

impl ServiceConfig {
    pub fn from_toml(text: &str, dir: &Path) -> Result<Self, ServiceError> {
        let mut config: ServiceConfig = toml::from_str(text).map_err(|e| ServiceError::Config(e.to_string()))?;
        for path in [&mut config.registry, &mut config.profile].into_iter().flatten() {
            if path.is_relative() {
                *path = dir.join(&*path);
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ServiceError> {
        let text = std::fs::read_to_string(path).map_err(|e| ServiceError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// `MDCAT_BIND`, then the file's `bind`, then 127.0.0.1:8080.
    pub fn bind_address(&self, env: Option<String>) -> Result<SocketAddr, ServiceError> {
        let text = env.or_else(|| self.bind.clone()).unwrap_or_else(|| DEFAULT_BIND.to_owned());
        text.parse().map_err(|_| ServiceError::Config(format!("bad bind address '{text}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_and_bind() {
        let c = ServiceConfig::from_toml("registry = \"sources.json\"\nprofile = \"/abs/p.profile\"\n", Path::new("/etc/mdcat")).unwrap();
        assert_eq!(c.registry.as_deref(), Some(Path::new("/etc/mdcat/sources.json")));
        assert_eq!(c.profile.as_deref(), Some(Path::new("/abs/p.profile")));
        assert_eq!(c.bind_address(None).unwrap().to_string(), DEFAULT_BIND);
        assert_eq!(c.bind_address(Some("0.0.0.0:9000".into())).unwrap().port(), 9000);
        assert!(c.bind_address(Some("nowhere".into())).is_err());
        assert!(ServiceConfig::from_toml("colour = 1", Path::new(".")).is_err());
    }
}
