//! Poset documents.
//!
//! ```json
//! {
//!   "version": 1,
//!   "events": [{"id": "p1", "chain": "P"}, {"id": "q1", "chain": "Q"}],
//!   "chains": {"P": ["p1"], "Q": ["q1"]},
//!   "influence": [["p1", "q1"]]
//! }
//! ```
//!
//! Ids are strings. Unknown top-level keys are ignored with a warning.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use influence_core::{CausalPoset, ChainId, EventId, PosetError};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const FORMAT_VERSION: u64 = 1;

const KNOWN_KEYS: [&str; 4] = ["version", "events", "chains", "influence"];

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed poset document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("poset document schema: {0}")]
    Schema(String),
    #[error("unsupported poset document version {found}; expected {FORMAT_VERSION}")]
    Version { found: u64 },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventEntry {
    pub id: String,
    pub chain: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub version: u64,
    pub events: Vec<EventEntry>,
    pub chains: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub influence: Vec<[String; 2]>,
}

impl PosetDocument {
    pub fn from_poset(poset: &CausalPoset) -> Self {
        let events = poset
            .events()
            .map(|(e, c)| EventEntry {
                id: e.to_string(),
                chain: c.to_string(),
            })
            .collect();
        let chains = poset
            .chain_ids()
            .map(|c| {
                let members = poset.chain(c).expect("listed chain").map(|e| e.to_string()).collect();
                (c.to_string(), members)
            })
            .collect();
        let influence = poset.influence_edges().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
        PosetDocument {
            version: FORMAT_VERSION,
            events,
            chains,
            influence,
        }
    }

    pub fn to_poset(&self) -> Result<CausalPoset, PosetError> {
        CausalPoset::build(
            self.events.iter().map(|e| (EventId::from(e.id.as_str()), ChainId::from(e.chain.as_str()))),
            self.chains.iter().map(|(c, ids)| {
                (ChainId::from(c.as_str()), ids.iter().map(|e| EventId::from(e.as_str())).collect())
            }),
            self.influence.iter().map(|[a, b]| (EventId::from(a.as_str()), EventId::from(b.as_str()))),
        )
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let value: Value = serde_json::from_str(text)?;
        let Value::Object(map) = &value else {
            return Err(DocumentError::Schema("top level must be an object".into()));
        };
        for key in map.keys().filter(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            log::warn!("ignoring unknown key {key:?} in poset document");
        }
        for key in ["version", "events", "chains"] {
            if !map.contains_key(key) {
                return Err(DocumentError::Schema(format!("missing required key {key:?}")));
            }
        }
        match map["version"].as_u64() {
            Some(FORMAT_VERSION) => {}
            Some(found) => return Err(DocumentError::Version { found }),
            None => return Err(DocumentError::Schema("version must be a nonnegative integer".into())),
        }
        let mut known = map.clone();
        known.retain(|k, _| KNOWN_KEYS.contains(&k.as_str()));
        Ok(serde_json::from_value(Value::Object(known))?)
    }

    pub fn to_json(&self) -> String {
        crate::canonical::to_string(&serde_json::to_value(self).expect("document serializes"))
    }
}

pub fn load(path: &Path) -> Result<CausalPoset, DocumentError> {
    let text = fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(PosetDocument::parse(&text)?.to_poset()?)
}

pub fn save(poset: &CausalPoset, path: &Path) -> std::io::Result<()> {
    fs::write(path, PosetDocument::from_poset(poset).to_json())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "version": 1,
        "events": [{"id": "p1", "chain": "P"}, {"id": "p2", "chain": "P"}, {"id": "q1", "chain": "Q"}],
        "chains": {"P": ["p1", "p2"], "Q": ["q1"]},
        "influence": [["p1", "q1"]],
        "comment": "ignored"
    }"#;

    #[test]
    fn parses_and_ignores_unknown_keys() {
        let doc = PosetDocument::parse(SAMPLE).unwrap();
        assert_eq!(doc.events.len(), 3);
        let poset = doc.to_poset().unwrap();
        assert_eq!(poset.len(), 3);
        assert!(poset.causal_leq(&EventId::from("p1"), &EventId::from("q1")).unwrap());
    }

    #[test]
    fn missing_chains_is_a_schema_error() {
        let text = r#"{"version": 1, "events": [], "influence": []}"#;
        assert!(matches!(PosetDocument::parse(text), Err(DocumentError::Schema(_))));
    }

    #[test]
    fn version_is_checked() {
        let text = r#"{"version": 2, "events": [], "chains": {}}"#;
        assert!(matches!(PosetDocument::parse(text), Err(DocumentError::Version { found: 2 })));
        assert!(matches!(PosetDocument::parse("[1]"), Err(DocumentError::Schema(_))));
        assert!(matches!(PosetDocument::parse("{"), Err(DocumentError::Parse(_))));
    }

    #[test]
    fn unresolved_ids_fail_to_build() {
        let text = r#"{"version": 1, "events": [{"id": "a", "chain": "A"}], "chains": {"A": ["a"]}, "influence": [["a", "b"]]}"#;
        let doc = PosetDocument::parse(text).unwrap();
        assert!(matches!(doc.to_poset(), Err(PosetError::UnknownEvent(_))));
    }

    #[test]
    fn round_trip_is_stable() {
        let poset = PosetDocument::parse(SAMPLE).unwrap().to_poset().unwrap();
        let text = PosetDocument::from_poset(&poset).to_json();
        let again = PosetDocument::parse(&text).unwrap().to_poset().unwrap();
        assert_eq!(poset, again);
        assert_eq!(PosetDocument::from_poset(&again).to_json(), text);
        assert!(!text.contains("comment"));
    }
}
