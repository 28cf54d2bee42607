//! On-disk certificate and census cache. The directory is `$PAPER_KIT_CACHE`,
//! else `$XDG_CACHE_HOME/balkit`, else `~/.cache/balkit`.

use std::path::PathBuf;

use crate::enumerate::{self, Census, CensusOutcome, EnumerationSpec, Topology};
use crate::error::Result;
use crate::io::ComplexDocument;

pub const CACHE_ENV: &str = "PAPER_KIT_CACHE";

pub fn cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("balkit");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("balkit");
    }
    std::env::temp_dir().join("balkit-cache")
}

fn certificate_path(name: &str) -> PathBuf {
    cache_dir().join("certificates").join(format!("{name}.json"))
}

pub fn load_certificate(name: &str) -> Result<Option<ComplexDocument>> {
    let path = certificate_path(name);
    if !path.exists() {
        return Ok(None);
    }
    ComplexDocument::load(&path).map(Some)
}

pub fn store_certificate(name: &str, doc: &ComplexDocument) -> Result<PathBuf> {
    let path = certificate_path(name);
    std::fs::create_dir_all(path.parent().expect("certificate path has a parent"))?;
    doc.save(&path)?;
    Ok(path)
}

pub fn census_dir(spec: &EnumerationSpec) -> PathBuf {
    cache_dir().join("census").join(spec.hash())
}

/// Run the census for `spec` (enumeration or symmetric search as the spec
/// requires), or load and re-verify a decided one from the cache.
pub fn census_cached(spec: &EnumerationSpec) -> Result<Census> {
    let dir = census_dir(spec);
    if dir.join("index.json").exists() {
        match Census::read_dir(&dir) {
            Ok(c) => return Ok(c),
            Err(e) => log::warn!("ignoring cached census in {}: {e}", dir.display()),
        }
    }
    let census = run(spec)?;
    if !matches!(census.outcome, CensusOutcome::Undecided { .. }) {
        if let Err(e) = census.write_dir(&dir) {
            log::warn!("could not write census cache {}: {e}", dir.display());
        }
    }
    Ok(census)
}

pub fn run(spec: &EnumerationSpec) -> Result<Census> {
    if spec.symmetry.is_empty() && spec.topology == Topology::Sphere && !spec.first_only {
        enumerate::enumerate_balanced_spheres(spec)
    } else {
        enumerate::search_symmetric(spec)
    }
}
