//! Read-only GXL support for the IAM letter graphs.

use std::collections::{BTreeSet, HashMap};

use roxmltree::{Document, Node, ParsingOptions};

use crate::error::{Error, Result};
use crate::geometry::{GeometricGraph, Point};

fn parse(text: &str) -> Result<Document<'_>> {
    let opts = ParsingOptions { allow_dtd: true, ..ParsingOptions::default() };
    Ok(Document::parse_with_options(text, opts)?)
}

fn utf8(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("document is not UTF-8: {e}")))
}

fn float_attr(node: Node<'_, '_>, name: &str, id: &str) -> Result<f64> {
    let attr = node
        .children()
        .find(|c| c.has_tag_name("attr") && c.attribute("name") == Some(name))
        .ok_or_else(|| Error::Parse(format!("node {id} has no \"{name}\" attribute")))?;
    let value = attr
        .children()
        .find(|c| c.is_element())
        .ok_or_else(|| Error::Parse(format!("node {id}: attribute \"{name}\" is empty")))?;
    if !value.has_tag_name("float") {
        return Err(Error::Parse(format!(
            "node {id}: attribute \"{name}\" is <{}>, expected <float>",
            value.tag_name().name()
        )));
    }
    let text = value.text().unwrap_or("").trim();
    let x: f64 = text
        .parse()
        .map_err(|_| Error::Parse(format!("node {id}: \"{text}\" is not a float")))?;
    if !x.is_finite() {
        return Err(Error::Parse(format!("node {id}: non-finite coordinate")));
    }
    Ok(x)
}

/// Parses the first `<graph>` of a GXL document into a planar-coordinate graph.
///
/// Vertices keep document order. Edges are undirected; a pair listed in both
/// directions is kept once.
pub fn read_gxl_letter(bytes: &[u8]) -> Result<GeometricGraph<f64>> {
    let doc = parse(utf8(bytes)?)?;
    let graph = doc
        .descendants()
        .find(|n| n.has_tag_name("graph"))
        .ok_or_else(|| Error::Parse("no <graph> element".into()))?;

    let mut index = HashMap::new();
    let mut vertices = Vec::new();
    for node in graph.children().filter(|n| n.has_tag_name("node")) {
        let id = node.attribute("id").ok_or_else(|| Error::Parse("<node> without id".into()))?;
        let x = float_attr(node, "x", id)?;
        let y = float_attr(node, "y", id)?;
        if index.insert(id.to_string(), vertices.len()).is_some() {
            return Err(Error::Parse(format!("duplicate node id {id}")));
        }
        vertices.push(Point::new(vec![x, y])?);
    }

    let mut edges = BTreeSet::new();
    for edge in graph.children().filter(|n| n.has_tag_name("edge")) {
        let end = |name: &str| -> Result<usize> {
            let id = edge
                .attribute(name)
                .ok_or_else(|| Error::Parse(format!("<edge> without \"{name}\"")))?;
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::Parse(format!("edge refers to unknown node {id}")))
        };
        let (a, b) = (end("from")?, end("to")?);
        edges.insert((a.min(b), a.max(b)));
    }
    GeometricGraph::new(2, vertices, edges.into_iter().collect())
}

/// Reads a `.cxl` class file: `(graph file name, class label)` pairs in
/// document order.
pub fn read_class_file(bytes: &[u8]) -> Result<Vec<(String, String)>> {
    let doc = parse(utf8(bytes)?)?;
    doc.descendants()
        .filter(|n| n.has_tag_name("print"))
        .map(|n| {
            let file = n.attribute("file").ok_or_else(|| Error::Parse("<print> without file".into()))?;
            let class = n.attribute("class").ok_or_else(|| Error::Parse("<print> without class".into()))?;
            Ok((file.to_string(), class.to_string()))
        })
        .collect()
}
