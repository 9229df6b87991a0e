//! Text and JSON forms of complexes and cube points.
//!
//! Complex text form:
//!
//! ```text
//! hyperplanes: 2
//! -
//! 0
//! 0 1
//! ```
//!
//! one vertex per line as sorted ids, `-` for the basepoint. The JSON form is
//! `{"hyperplanes": 2, "vertices": [[], [0], [0, 1]]}`. Points are lines of
//! `id p/q` or a JSON object from id to `"p/q"`. Readers pick the JSON form
//! when the first non-blank character is `{`.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::{CubeComplex, HyperplaneId, Vertex};
use crate::error::{Error, Result};
use crate::geometry::CubePoint;
use crate::rational;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn is_json(input: &str) -> bool {
    input.trim_start().starts_with('{')
}

/// Hyperplane count and `(line, ids)` for each vertex.
type Listing = (usize, Vec<(usize, Vec<HyperplaneId>)>);

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    hyperplanes: usize,
    vertices: Vec<Vec<HyperplaneId>>,
}

/// Parses either form and validates the complex.
pub fn parse_complex(input: &str) -> Result<CubeComplex> {
    let (n, sets) = if is_json(input) { complex_json(input)? } else { complex_text(input)? };
    let mut seen = HashSet::new();
    for (line, set) in &sets {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        if let Some(&id) = sorted.iter().find(|&&id| id >= n) {
            return Err(parse_err(*line, format!("hyperplane id {id} out of range for {n} hyperplanes")));
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_err(*line, "repeated id within a vertex"));
        }
        if !seen.insert(sorted) {
            return Err(parse_err(*line, "duplicate vertex"));
        }
    }
    CubeComplex::new(n, sets.into_iter().map(|(_, s)| s))
}

fn complex_json(input: &str) -> Result<Listing> {
    let doc: ComplexJson = serde_json::from_str(input).map_err(|e| parse_err(e.line(), e.to_string()))?;
    // JSON vertices are numbered by position, counting from 1.
    Ok((doc.hyperplanes, doc.vertices.into_iter().enumerate().map(|(i, v)| (i + 1, v)).collect()))
}

fn complex_text(input: &str) -> Result<Listing> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "missing `hyperplanes: N` header"))?;
    let n = header
        .strip_prefix("hyperplanes:")
        .and_then(|rest| rest.trim().parse::<usize>().ok())
        .ok_or_else(|| parse_err(first, "expected `hyperplanes: N`"))?;
    let mut sets = Vec::new();
    for (line, text) in lines {
        let ids = if text == "-" {
            Vec::new()
        } else {
            text.split_whitespace()
                .map(|tok| tok.parse::<HyperplaneId>().map_err(|_| parse_err(line, format!("invalid id `{tok}`"))))
                .collect::<Result<Vec<_>>>()?
        };
        sets.push((line, ids));
    }
    Ok((n, sets))
}

pub fn complex_to_text(x: &CubeComplex) -> String {
    let mut out = format!("hyperplanes: {}\n", x.hyperplane_count());
    for v in x.vertices() {
        out.push_str(&vertex_line(v));
        out.push('\n');
    }
    out
}

fn vertex_line(v: &Vertex) -> String {
    if v.is_empty() {
        "-".to_string()
    } else {
        v.ids().map(|h| h.to_string()).collect::<Vec<_>>().join(" ")
    }
}

pub fn complex_to_json(x: &CubeComplex) -> String {
    let doc = ComplexJson { hyperplanes: x.hyperplane_count(), vertices: x.vertices().iter().map(Vertex::to_vec).collect() };
    serde_json::to_string_pretty(&doc).expect("complex serializes")
}

/// Parses either point form. Ids are not checked against any complex.
pub fn parse_point(input: &str) -> Result<CubePoint> {
    let coords = if is_json(input) {
        let doc: BTreeMap<String, String> = serde_json::from_str(input).map_err(|e| parse_err(e.line(), e.to_string()))?;
        doc.into_iter()
            .map(|(id, v)| {
                let id = id.trim().parse::<HyperplaneId>().map_err(|_| parse_err(0, format!("invalid id `{id}`")))?;
                Ok((id, rational::parse(&v)?))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let mut coords = Vec::new();
        for (i, l) in input.lines().enumerate() {
            let l = l.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let (id, v) = l.split_once(char::is_whitespace).ok_or_else(|| parse_err(i + 1, "expected `id p/q`"))?;
            let id = id.parse::<HyperplaneId>().map_err(|_| parse_err(i + 1, format!("invalid id `{id}`")))?;
            let v = rational::parse(v).map_err(|_| parse_err(i + 1, format!("invalid rational `{}`", v.trim())))?;
            coords.push((id, v));
        }
        coords
    };
    let mut seen = HashSet::new();
    if let Some((id, _)) = coords.iter().find(|(id, _)| !seen.insert(*id)) {
        return Err(parse_err(0, format!("hyperplane {id} given twice")));
    }
    CubePoint::new(coords)
}

pub fn point_to_text(p: &CubePoint) -> String {
    p.coords().map(|(h, v)| format!("{h} {}\n", rational::format(v))).collect()
}

pub fn point_to_json(p: &CubePoint) -> String {
    serde_json::to_string_pretty(p).expect("point serializes")
}
