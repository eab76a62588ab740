//! Turns a planar drawing with crossing edges into a geometric graph by
//! inserting a vertex at every crossing.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{GeometricGraph, Point};
use crate::scalar::Scalar;
use crate::segment::{point_segment_distance, project, segment_contact, Contact};

/// Default distance tolerance for planarization and embedding checks.
pub const DEFAULT_EPS: f64 = 1e-9;

const MAX_PASSES: usize = 16;

/// Splits every edge at its crossings with other edges.
///
/// Original vertices keep their positions and indices. Each new crossing
/// vertex is appended after them in the order its first edge pair is
/// encountered (edge pairs in lexicographic order). Points within `eps` of an
/// existing vertex reuse that vertex instead. Edges that touch a vertex of
/// another edge are split there as well. Collinear overlapping edges are
/// rejected.
pub fn planarize<T: Scalar>(g: &GeometricGraph<T>, eps: T) -> Result<GeometricGraph<T>> {
    if g.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: g.dim() });
    }
    let mut current = g.clone();
    for _ in 0..MAX_PASSES {
        let (next, changed) = split_pass(&current, eps)?;
        current = next;
        if !changed {
            break;
        }
    }
    Ok(current)
}

/// Redirects edges of a vertex that coincides with an earlier vertex when
/// both carry edges.
fn merge_coincident<T: Scalar>(verts: &[[T; 2]], edges: &[(usize, usize)], eps: T) -> (Vec<(usize, usize)>, bool) {
    let n = verts.len();
    let mut degree = vec![0usize; n];
    for &(a, b) in edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let mut target: Vec<usize> = (0..n).collect();
    let mut changed = false;
    for j in 0..n {
        if degree[j] == 0 {
            continue;
        }
        if let Some(i) = (0..j).find(|&i| degree[i] > 0 && target[i] == i && dist(verts[i], verts[j]) <= eps) {
            target[j] = i;
            changed = true;
        }
    }
    if !changed {
        return (edges.to_vec(), false);
    }
    let merged: BTreeSet<_> = edges
        .iter()
        .map(|&(a, b)| (target[a], target[b]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    (merged.into_iter().collect(), true)
}

fn dist<T: Scalar>(a: [T; 2], b: [T; 2]) -> T {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn split_pass<T: Scalar>(g: &GeometricGraph<T>, eps: T) -> Result<(GeometricGraph<T>, bool)> {
    let mut verts: Vec<[T; 2]> = g.vertices().iter().map(|p| [p.coords()[0], p.coords()[1]]).collect();
    let (edges, mut changed) = merge_coincident(&verts, g.edges(), eps);
    let mut splits: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];

    for (x, &e) in edges.iter().enumerate() {
        for (y, &f) in edges.iter().enumerate().skip(x + 1) {
            let (a0, a1) = (verts[e.0], verts[e.1]);
            let (b0, b1) = (verts[f.0], verts[f.1]);
            let shared: Vec<usize> = [e.0, e.1].into_iter().filter(|&v| v == f.0 || v == f.1).collect();
            if shared.len() == 1 {
                let far_e = if e.0 == shared[0] { a1 } else { a0 };
                let far_f = if f.0 == shared[0] { b1 } else { b0 };
                if point_segment_distance(far_f, a0, a1) <= eps || point_segment_distance(far_e, b0, b1) <= eps {
                    return Err(Error::CollinearOverlap { first: e, second: f });
                }
                continue;
            }
            match segment_contact(a0, a1, b0, b1, eps) {
                Contact::Disjoint => {}
                Contact::Overlap => return Err(Error::CollinearOverlap { first: e, second: f }),
                Contact::Point { at, .. } => {
                    let v = resolve_vertex(&mut verts, [e.0, e.1, f.0, f.1], at, eps, &mut changed);
                    for (k, edge) in [(x, e), (y, f)] {
                        let (p0, p1) = (verts[edge.0], verts[edge.1]);
                        if v != edge.0 && v != edge.1 && dist(verts[v], p0) > eps && dist(verts[v], p1) > eps && !splits[k].contains(&v) {
                            splits[k].push(v);
                            changed = true;
                        }
                    }
                }
            }
        }
    }

    let mut out = BTreeSet::new();
    for (k, &(a, b)) in edges.iter().enumerate() {
        let (p0, p1) = (verts[a], verts[b]);
        let mut stops: Vec<(T, usize)> = splits[k].iter().map(|&v| (project(verts[v], p0, p1), v)).collect();
        stops.sort_by(|s, t| s.0.partial_cmp(&t.0).expect("finite parameters").then(s.1.cmp(&t.1)));
        let chain: Vec<usize> = std::iter::once(a).chain(stops.into_iter().map(|s| s.1)).chain(std::iter::once(b)).collect();
        for w in chain.windows(2) {
            if w[0] != w[1] {
                out.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
    }

    let vertices = verts.into_iter().map(|c| Point::new(c.to_vec())).collect::<Result<Vec<_>>>()?;
    let graph = GeometricGraph::new(2, vertices, out.into_iter().collect())?;
    Ok((graph, changed))
}

/// Index of the vertex representing the contact point `at`: an endpoint of
/// the two edges, else any existing vertex, else a new one.
fn resolve_vertex<T: Scalar>(verts: &mut Vec<[T; 2]>, ends: [usize; 4], at: [T; 2], eps: T, changed: &mut bool) -> usize {
    let nearest = |candidates: &mut dyn Iterator<Item = usize>, verts: &[[T; 2]]| {
        candidates
            .map(|v| (dist(verts[v], at), v))
            .filter(|(d, _)| *d <= eps)
            .min_by(|a, b| a.0.partial_cmp(&b.0).expect("finite distances").then(a.1.cmp(&b.1)))
            .map(|(_, v)| v)
    };
    if let Some(v) = nearest(&mut ends.into_iter(), verts) {
        return v;
    }
    if let Some(v) = nearest(&mut (0..verts.len()), verts) {
        return v;
    }
    verts.push(at);
    *changed = true;
    verts.len() - 1
}
