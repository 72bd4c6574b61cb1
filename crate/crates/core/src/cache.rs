//! On-disk cache for computed artifacts.
//!
//! Artifacts are JSON documents keyed by the canonical text of the system
//! plus an artifact kind; the key is hashed so file names stay short and
//! path-safe.  Everything is best-effort: a cold or unreadable cache only
//! costs recomputation, and a stale directory can be deleted wholesale.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// A cache rooted at `dir`, or a no-op cache when `dir` is `None`.
    pub fn new(dir: Option<&Path>) -> Cache {
        let dir = dir.map(Path::to_path_buf);
        if let Some(d) = &dir {
            let _ = fs::create_dir_all(d);
        }
        Cache { dir }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    fn path_for(&self, system: &str, kind: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut h = Sha256::new();
        h.update(system.as_bytes());
        h.update([0u8]);
        h.update(kind.as_bytes());
        let digest = h.finalize();
        let mut name = String::with_capacity(16 + kind.len() + 6);
        for byte in digest.iter().take(8) {
            name.push_str(&format!("{byte:02x}"));
        }
        // The kind is kept in the file name for human browsing; the hash
        // alone already distinguishes systems.
        name.push('-');
        name.push_str(kind);
        name.push_str(".json");
        Some(dir.join(name))
    }

    /// The cached JSON payload for this system and kind, if present.
    pub fn load(&self, system: &str, kind: &str) -> Option<String> {
        fs::read_to_string(self.path_for(system, kind)?).ok()
    }

    /// Stores a JSON payload; failures are deliberately swallowed.
    pub fn store(&self, system: &str, kind: &str, payload: &str) {
        if let Some(p) = self.path_for(system, kind) {
            let _ = fs::write(p, payload);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{brink_howlett, equivalent, minimize, Dfa};
    use crate::group::CoxeterGroup;
    use crate::roots::SmallRoots;
    use crate::system::CoxeterSystem;

    #[test]
    fn disabled_cache_is_silent() {
        let c = Cache::disabled();
        c.store("A2", "bh", "{}");
        assert!(c.load("A2", "bh").is_none());
    }

    #[test]
    fn round_trip_and_keying() {
        let tmp = tempfile::tempdir().unwrap();
        let c = Cache::new(Some(tmp.path()));
        c.store("rank 2; m 1 2 = 3", "bh", "{\"x\":1}");
        assert_eq!(c.load("rank 2; m 1 2 = 3", "bh").unwrap(), "{\"x\":1}");
        assert!(c.load("rank 2; m 1 2 = 4", "bh").is_none());
        assert!(c.load("rank 2; m 1 2 = 3", "minimal").is_none());
    }

    #[test]
    fn reloaded_automaton_is_equivalent_to_fresh() {
        let tmp = tempfile::tempdir().unwrap();
        let c = Cache::new(Some(tmp.path()));
        let sys = CoxeterSystem::parse("Atilde2").unwrap();
        let key = sys.to_string();
        let w = CoxeterGroup::new(sys);
        let sr = SmallRoots::compute(&w, 10_000).unwrap();
        let bh = brink_howlett(&sr, w.rank(), 10_000).unwrap();
        c.store(&key, "bh", &bh.dfa.to_json());

        let reloaded = Dfa::from_json(&c.load(&key, "bh").unwrap()).unwrap();
        assert!(equivalent(&reloaded, &bh.dfa));
        let (fresh_min, _) = minimize(&bh.dfa);
        let (cached_min, _) = minimize(&reloaded);
        assert!(equivalent(&fresh_min, &cached_min));
        assert_eq!(fresh_min.num_states(), cached_min.num_states());
    }
}
