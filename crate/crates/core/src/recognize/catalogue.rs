use super::spectrum;
use crate::lie_core::{build_algebra, casimir_on, LieError, RepSpace};
use crate::scalars::Q;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Compact simple algebras a Cartan-type stabilizer is matched against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub name: &'static str,
    pub dim: usize,
    pub rank: usize,
}

pub const CATALOGUE: &[CatalogueEntry] = &[
    CatalogueEntry { name: "su2", dim: 3, rank: 1 },
    CatalogueEntry { name: "su3", dim: 8, rank: 2 },
    // sp2 is isomorphic to so5
    CatalogueEntry { name: "so5", dim: 10, rank: 2 },
    CatalogueEntry { name: "g2", dim: 14, rank: 2 },
    CatalogueEntry { name: "su4", dim: 15, rank: 3 },
    CatalogueEntry { name: "so7", dim: 21, rank: 3 },
    CatalogueEntry { name: "sp3", dim: 21, rank: 3 },
    CatalogueEntry { name: "so8", dim: 28, rank: 4 },
];

pub fn catalogue_entry(name: &str) -> Option<&'static CatalogueEntry> {
    CATALOGUE.iter().find(|e| e.name == name)
}

type Spectrum = Vec<(Q, usize)>;

/// Casimir spectrum on `Lambda^2 g`, cached per entry.
pub(crate) fn spectrum_of(e: &CatalogueEntry) -> Result<Spectrum, LieError> {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, Spectrum>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(e.name) {
        return Ok(s.clone());
    }
    let g = build_algebra(e.name)?;
    let s = spectrum(&casimir_on(&g, RepSpace::Exterior(2))?)?;
    cache.lock().unwrap().insert(e.name, s.clone());
    Ok(s)
}
