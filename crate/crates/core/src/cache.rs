//! On-disk cache of intersection-lattice summaries.
//!
//! Entries are keyed by a SHA-256 of the canonical covector list, so two
//! arrangements that differ only in hyperplane order share an entry. Only the
//! data needed downstream is stored: per-codimension flat counts and Möbius
//! sums, from which `χ` is rebuilt.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arrangement::lattice::{IntersectionLattice, LatticeBounds};
use crate::arrangement::Arrangement;
use crate::charpoly::{charpoly_from_mobius_sums, CharPoly};
use crate::error::{Error, Result};
use crate::exec::Execution;

const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub version: u32,
    pub ambient_dim: usize,
    pub rows: Vec<Vec<i64>>,
    pub level_sizes: Vec<usize>,
    pub mobius_sums: Vec<String>,
}

impl LatticeSummary {
    pub fn from_lattice(a: &Arrangement, lattice: &IntersectionLattice) -> Self {
        LatticeSummary {
            version: FORMAT_VERSION,
            ambient_dim: a.ambient_dim(),
            rows: a.canonical_rows(),
            level_sizes: lattice.level_sizes(),
            mobius_sums: lattice.mobius_sums().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn charpoly(&self) -> Result<CharPoly> {
        let sums = self
            .mobius_sums
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| Error::Cache(format!("bad Möbius sum {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(charpoly_from_mobius_sums(self.ambient_dim, &sums))
    }
}

pub fn arrangement_key(a: &Arrangement) -> String {
    let mut hasher = Sha256::new();
    hasher.update(a.ambient_dim().to_le_bytes());
    for row in a.canonical_rows() {
        hasher.update((row.len() as u64).to_le_bytes());
        for x in row {
            hasher.update(x.to_le_bytes());
        }
    }
    hex::encode(hasher.finalize())
}

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

impl LatticeCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(LatticeCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("lattice-v{FORMAT_VERSION}-{key}.json"))
    }

    /// A stored summary for `a`. Unreadable or mismatched entries count as
    /// misses.
    pub fn get(&self, a: &Arrangement) -> Option<LatticeSummary> {
        let text = fs::read_to_string(self.path_for(&arrangement_key(a))).ok()?;
        let summary: LatticeSummary = serde_json::from_str(&text).ok()?;
        (summary.version == FORMAT_VERSION && summary.rows == a.canonical_rows()).then_some(summary)
    }

    pub fn put(&self, a: &Arrangement, summary: &LatticeSummary) -> Result<()> {
        let path = self.path_for(&arrangement_key(a));
        let text = serde_json::to_string(summary).map_err(|e| Error::Cache(e.to_string()))?;
        // Write then rename so concurrent readers never see a partial file.
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }

    /// `χ` through the lattice, reading and filling the cache.
    pub fn charpoly(&self, a: &Arrangement, bounds: &LatticeBounds, exec: Execution) -> Result<CharPoly> {
        if let Some(summary) = self.get(a) {
            return summary.charpoly();
        }
        let lattice = IntersectionLattice::build_with(a, bounds, exec)?;
        let summary = LatticeSummary::from_lattice(a, &lattice);
        self.put(a, &summary)?;
        summary.charpoly()
    }
}
