//! Append-only cache of embedding searches, keyed by graph content.
//!
//! Each directory holds `embeddings.jsonl`, one `{"key", "outcome"}`
//! object per line. Keys hash the canonical form of the negative definite
//! graph, so mutants share entries. Only complete outcomes are stored.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::lattice::{canonical_form, find_embedding, Embedding, SearchConfig, SearchOutcome};
use crate::plumbing::StarGraph;

const FILE: &str = "embeddings.jsonl";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    outcome: SearchOutcome,
}

/// SHA-256 of the canonical graph's weights, as hex.
pub fn graph_key(g: &StarGraph) -> String {
    let (c, _) = canonical_form(g);
    let text = serde_json::json!({ "center": c.center_weight, "legs": c.legs }).to_string();
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub struct Cache {
    path: PathBuf,
    known: Mutex<HashMap<String, SearchOutcome>>,
    fresh: Mutex<Vec<Entry>>,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let path = dir.join(FILE);
        let mut known = HashMap::new();
        if path.exists() {
            for line in BufReader::new(fs::File::open(&path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let e: Entry = serde_json::from_str(&line)?;
                known.insert(e.key, e.outcome);
            }
        }
        Ok(Cache {
            path,
            known: Mutex::new(known),
            fresh: Mutex::new(Vec::new()),
        })
    }

    pub fn len(&self) -> usize {
        self.known.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cached outcome for `g`, searching on a miss. Witness rows are
    /// stored for the canonical form and permuted back for `g`.
    pub fn search(&self, g: &StarGraph, cfg: &SearchConfig) -> SearchOutcome {
        let key = graph_key(g);
        let (canon, original) = canonical_form(g);
        let hit = self.known.lock().unwrap().get(&key).cloned();
        let outcome = match hit {
            Some(o) => o,
            None => {
                let o = find_embedding(&canon, cfg);
                if !matches!(o, SearchOutcome::Inconclusive { .. }) {
                    self.known.lock().unwrap().insert(key.clone(), o.clone());
                    self.fresh.lock().unwrap().push(Entry {
                        key,
                        outcome: o.clone(),
                    });
                }
                o
            }
        };
        match outcome {
            SearchOutcome::Embedding { embedding, nodes } => {
                let mut rows = vec![Vec::new(); embedding.rows.len()];
                for (i, row) in embedding.rows.into_iter().enumerate() {
                    rows[original[i]] = row;
                }
                SearchOutcome::Embedding {
                    embedding: Embedding { rows },
                    nodes,
                }
            }
            other => other,
        }
    }

    /// Appends entries found since opening, sorted by key.
    pub fn flush(&self) -> Result<()> {
        let mut fresh = std::mem::take(&mut *self.fresh.lock().unwrap());
        if fresh.is_empty() {
            return Ok(());
        }
        fresh.sort_by(|a, b| a.key.cmp(&b.key));
        fresh.dedup_by(|a, b| a.key == b.key);
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        for e in fresh {
            serde_json::to_writer(&mut f, &e)?;
            f.write_all(b"\n")?;
        }
        Ok(())
    }
}
