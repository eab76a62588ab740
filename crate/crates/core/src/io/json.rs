//! Native graph format: `{"d": 2, "vertices": [[x, y], ...], "edges": [[i, j], ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GeometricGraph, Point};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    d: usize,
    vertices: Vec<Vec<f64>>,
    edges: Vec<[usize; 2]>,
}

pub fn read_json_graph(bytes: &[u8]) -> Result<GeometricGraph<f64>> {
    let doc: Document = serde_json::from_slice(bytes)?;
    if doc.d == 0 {
        return Err(Error::Parse("\"d\" must be at least 1".into()));
    }
    let vertices = doc
        .vertices
        .into_iter()
        .enumerate()
        .map(|(i, coords)| {
            if coords.len() != doc.d {
                return Err(Error::Parse(format!("vertex {i} has {} coordinates, expected {}", coords.len(), doc.d)));
            }
            Point::new(coords).map_err(|_| Error::Parse(format!("vertex {i} has a non-finite coordinate")))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = vertices.len();
    for &[a, b] in &doc.edges {
        if a >= n || b >= n {
            return Err(Error::Parse(format!("bad edge index in [{a}, {b}] for {n} vertices")));
        }
    }
    let edges = doc.edges.into_iter().map(|[a, b]| (a, b)).collect();
    GeometricGraph::new(doc.d, vertices, edges)
}

/// Serializes `g` in the native format. Vertex order is preserved and
/// coordinates are written in shortest round-trip form.
pub fn write_json_graph(g: &GeometricGraph<f64>) -> Vec<u8> {
    let doc = Document {
        d: g.dim(),
        vertices: g.vertices().iter().map(|p| p.coords().to_vec()).collect(),
        edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
    };
    let mut out = serde_json::to_vec(&doc).expect("graph documents always serialize");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_a_path() {
        let g = read_json_graph(br#"{"d":2,"vertices":[[0,0],[1,0]],"edges":[[0,1]]}"#).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.vertex(1).coords(), &[1.0, 0.0]);
    }

    #[test]
    fn reads_the_empty_graph() {
        let g = read_json_graph(br#"{"d":2,"vertices":[],"edges":[]}"#).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (0, 0));
    }

    #[test]
    fn rejects_bad_documents() {
        let err = read_json_graph(br#"{"d":2,"vertices":[[0,0],[1,0]],"edges":[[0,5]]}"#).unwrap_err();
        assert!(err.to_string().contains("bad edge index"));
        assert!(read_json_graph(br#"{"d":2,"vertices":[[0,0,1]],"edges":[]}"#).is_err());
        assert!(read_json_graph(br#"{"d":2,"vertices":[[0,0]],"edges":[[0,0]]}"#).is_err());
        assert!(read_json_graph(br#"{"d":2,"vertices":[[0,1e999]],"edges":[]}"#).is_err());
        assert!(read_json_graph(b"not json").is_err());
        assert!(read_json_graph(br#"{"d":2,"vertices":[]}"#).is_err());
    }

    #[test]
    fn edges_are_normalized() {
        let g = read_json_graph(br#"{"d":1,"vertices":[[0],[1],[2]],"edges":[[2,1],[1,0]]}"#).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(
            String::from_utf8(write_json_graph(&g)).unwrap(),
            "{\"d\":1,\"vertices\":[[0.0],[1.0],[2.0]],\"edges\":[[0,1],[1,2]]}\n"
        );
    }
}
