//! Graph and orientation documents.
//!
//! Either JSON (`{"vertices": 4, "edges": [[1, 4], [2, 4], [3, 4]]}`) or the
//! equivalent line format:
//!
//! ```text
//! vertices: 4
//! edges: [[1, 4], [2, 4], [3, 4]]
//! name: D4
//! ```
//!
//! Indices are 1-based. Orientation documents use `arrows` in place of `edges`.

use serde::Deserialize;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Deserialize)]
struct GraphDoc {
    vertices: usize,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    name: Option<String>,
}

#[derive(Deserialize)]
struct OrientationDoc {
    arrows: Vec<[usize; 2]>,
}

/// Turns the `key: value` line format into a JSON object.
fn lines_to_json(text: &str) -> Result<serde_json::Value> {
    let mut map = serde_json::Map::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `key: value`, got {line:?}")))?;
        let key = key.trim().to_string();
        let value = value.trim();
        let parsed = serde_json::from_str(value)
            .unwrap_or_else(|_| serde_json::Value::String(value.to_string()));
        map.insert(key, parsed);
    }
    Ok(serde_json::Value::Object(map))
}

fn parse_any<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let trimmed = text.trim_start();
    let value = if trimmed.starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        lines_to_json(text)?
    };
    serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))
}

fn to_zero_based(pairs: &[[usize; 2]], n: usize) -> Result<Vec<(usize, usize)>> {
    pairs
        .iter()
        .map(|&[a, b]| {
            if a == 0 || b == 0 || a > n || b > n {
                Err(Error::InvalidGraph(format!(
                    "vertex index out of 1..={n} in [{a}, {b}]"
                )))
            } else {
                Ok((a - 1, b - 1))
            }
        })
        .collect()
}

pub fn parse_graph_document(text: &str) -> Result<Graph> {
    let doc: GraphDoc = parse_any(text)?;
    let edges = to_zero_based(&doc.edges, doc.vertices)?;
    Graph::new(doc.vertices, edges, doc.name)
}

/// Returns 0-based directed arrows for a graph with `vertices` vertices.
pub fn parse_orientation_document(text: &str, vertices: usize) -> Result<Vec<(usize, usize)>> {
    let doc: OrientationDoc = parse_any(text)?;
    to_zero_based(&doc.arrows, vertices)
}
