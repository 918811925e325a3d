//! Instance file formats.
//!
//! Text format: the first line holds the vertex count and the edge count,
//! then one edge per line as three space-separated vertex indices. The
//! JSON format carries the same data plus optional generator metadata so
//! an instance records how it was made.

use crate::error::{Error, Result};
use crate::hypergraph::{Edge3, Hypergraph3};
use serde::{Deserialize, Serialize};

pub fn write_text(h: &Hypergraph3) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", h.n(), h.edge_count()));
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        out.push_str(&format!("{} {} {}\n", a, b, c));
    }
    out
}

pub fn parse_text(s: &str) -> Result<Hypergraph3> {
    let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(Error::Parse {
            line: ln + 1,
            msg: "header must be `<n> <edge count>`".into(),
        });
    }
    let n: usize = parts[0].parse().map_err(|_| Error::Parse {
        line: ln + 1,
        msg: format!("bad vertex count {:?}", parts[0]),
    })?;
    let count: usize = parts[1].parse().map_err(|_| Error::Parse {
        line: ln + 1,
        msg: format!("bad edge count {:?}", parts[1]),
    })?;
    let mut h = Hypergraph3::new(n);
    let mut read = 0usize;
    for (ln, line) in lines {
        let vs: std::result::Result<Vec<usize>, _> =
            line.split_whitespace().map(str::parse).collect();
        let vs = vs.map_err(|_| Error::Parse {
            line: ln + 1,
            msg: format!("bad edge line {:?}", line),
        })?;
        if vs.len() != 3 {
            return Err(Error::Parse {
                line: ln + 1,
                msg: format!("expected 3 vertices, got {}", vs.len()),
            });
        }
        let e = Edge3::new(vs[0], vs[1], vs[2]).map_err(|e| Error::Parse {
            line: ln + 1,
            msg: e.to_string(),
        })?;
        if e.max_vertex() >= n {
            return Err(Error::Parse {
                line: ln + 1,
                msg: format!("vertex {} out of range for n = {}", e.max_vertex(), n),
            });
        }
        if !h.add_edge(e) {
            return Err(Error::Parse {
                line: ln + 1,
                msg: format!("duplicate edge {:?}", e),
            });
        }
        read += 1;
    }
    if read != count {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header promises {} edges, found {}", count, read),
        });
    }
    Ok(h)
}

/// Where an instance came from, for reproducibility.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GeneratorInfo {
    pub name: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    n: usize,
    edges: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator: Option<GeneratorInfo>,
}

pub fn write_json(h: &Hypergraph3, generator: Option<GeneratorInfo>) -> String {
    let doc = InstanceJson {
        n: h.n(),
        edges: h.edges().iter().map(|e| e.vertices()).collect(),
        generator,
    };
    serde_json::to_string_pretty(&doc).expect("instance serialization cannot fail")
}

pub fn parse_json(s: &str) -> Result<(Hypergraph3, Option<GeneratorInfo>)> {
    let doc: InstanceJson = serde_json::from_str(s)?;
    let edges: Result<Vec<Edge3>> = doc
        .edges
        .iter()
        .map(|&[a, b, c]| Edge3::new(a, b, c))
        .collect();
    let h = Hypergraph3::from_edges(doc.n, edges?)?;
    Ok((h, doc.generator))
}

/// A vertex partition into classes plus an exceptional set, as used by the
/// cluster machinery. Stored as JSON.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PartitionFile {
    pub classes: Vec<Vec<usize>>,
    #[serde(default)]
    pub exceptional: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::make_complete;

    #[test]
    fn text_round_trip() {
        let h = make_complete(6);
        let s = write_text(&h);
        assert!(s.starts_with("6 20\n"));
        let back = parse_text(&s).unwrap();
        assert_eq!(back.n(), 6);
        assert_eq!(back.edges(), h.edges());
    }

    #[test]
    fn text_rejects_bad_input() {
        assert!(parse_text("").is_err());
        assert!(parse_text("4 1\n0 1 1\n").is_err());
        assert!(parse_text("4 2\n0 1 2\n2 1 0\n").is_err());
        assert!(parse_text("4 1\n0 1 5\n").is_err());
        assert!(parse_text("4 2\n0 1 2\n").is_err());
    }

    #[test]
    fn json_round_trip_with_metadata() {
        let h = make_complete(6);
        let gen = GeneratorInfo {
            name: "complete".into(),
            params: serde_json::json!({"n": 6}),
            seed: None,
        };
        let s = write_json(&h, Some(gen.clone()));
        let (back, meta) = parse_json(&s).unwrap();
        assert_eq!(back.edges(), h.edges());
        assert_eq!(meta, Some(gen));
    }
}
