//! Ordered geometric graphs and the elementary operations on them.

use std::collections::BTreeSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::segment::{point_segment_distance, segment_contact, Contact};

/// A point of `R^d` with finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<T>(Vec<T>);

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidGraph("point must have at least one coordinate".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidGraph("non-finite coordinate".into()));
        }
        Ok(Point(coords))
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![T::zero(); dim])
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> T {
        self.0.iter().map(|&c| c * c).sum::<T>().sqrt()
    }

    /// Euclidean distance. Both points must share a dimension.
    pub fn distance(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<T>()
            .sqrt()
    }

    pub fn cast<U: Scalar>(&self) -> Point<U> {
        Point(self.0.iter().map(|c| U::of(c.as_f64())).collect())
    }

    pub(crate) fn xy(&self) -> [T; 2] {
        [self.0[0], self.0[1]]
    }
}

impl<T: Scalar> TryFrom<Vec<T>> for Point<T> {
    type Error = Error;

    fn try_from(coords: Vec<T>) -> Result<Self> {
        Point::new(coords)
    }
}

/// Positive vertex and edge cost coefficients `(C_V, C_E)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostParams<T> {
    c_v: T,
    c_e: T,
}

impl<T: Scalar> CostParams<T> {
    pub fn new(c_v: T, c_e: T) -> Result<Self> {
        let ok = |c: T| c.is_finite() && c > T::zero();
        if !ok(c_v) || !ok(c_e) {
            return Err(Error::InvalidCostParams { c_v: c_v.as_f64(), c_e: c_e.as_f64() });
        }
        Ok(CostParams { c_v, c_e })
    }

    pub fn c_v(&self) -> T {
        self.c_v
    }

    pub fn c_e(&self) -> T {
        self.c_e
    }
}

impl<T: Scalar> Default for CostParams<T> {
    /// `C_V = 4.5`, `C_E = 1`, the values used for letter retrieval.
    fn default() -> Self {
        CostParams { c_v: T::of(4.5), c_e: T::one() }
    }
}

/// Lengths of the edges incident to one vertex, indexed by the neighbour's position.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjLengthVector<T>(Vec<T>);

impl<T: Scalar> AdjLengthVector<T> {
    pub fn from_entries(entries: Vec<T>) -> Self {
        AdjLengthVector(entries)
    }

    pub fn entries(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn l1_norm(&self) -> T {
        self.0.iter().map(|v| v.abs()).sum()
    }
}

/// An undirected graph with straight-line edges between ordered vertices of `R^d`.
///
/// Vertex order is storage order and is significant for the Graph Mover's
/// Distance. Edges are stored as sorted `(i, j)` pairs with `i < j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricGraph<T> {
    dim: usize,
    vertices: Vec<Point<T>>,
    edges: Vec<(usize, usize)>,
}

impl<T: Scalar> GeometricGraph<T> {
    /// Builds a graph, rejecting structural defects (bad indices, self-loops,
    /// duplicate edges, mixed dimensions). Crossings are not checked here.
    pub fn new(dim: usize, vertices: Vec<Point<T>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidGraph("dimension must be at least 1".into()));
        }
        let g = Self::from_parts_unchecked(dim, vertices, edges);
        if let Some(v) = g.structural_violations().into_iter().next() {
            return Err(match v {
                Violation::EdgeIndexOutOfRange { index, .. } => {
                    Error::IndexOutOfRange { index, len: g.vertices.len() }
                }
                Violation::DimensionMismatch { found, .. } => {
                    Error::DimensionMismatch { expected: dim, found }
                }
                other => Error::InvalidGraph(other.to_string()),
            });
        }
        let mut g = g;
        g.edges.sort_unstable();
        Ok(g)
    }

    /// Builds a graph without validation. Edge pairs are still normalized to
    /// `i <= j`, keeping the order given. Use [`validate_graph`] to inspect it.
    pub fn from_parts_unchecked(dim: usize, vertices: Vec<Point<T>>, edges: Vec<(usize, usize)>) -> Self {
        let edges = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        GeometricGraph { dim, vertices, edges }
    }

    pub fn empty(dim: usize) -> Self {
        GeometricGraph { dim, vertices: Vec::new(), edges: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point<T> {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn edge_length(&self, (a, b): (usize, usize)) -> T {
        self.vertices[a].distance(&self.vertices[b])
    }

    pub fn total_edge_length(&self) -> T {
        self.edges.iter().map(|&e| self.edge_length(e)).sum()
    }

    /// Adjacency length vector `E_i` of vertex `i`.
    pub fn adj_length_vector(&self, i: usize) -> Result<AdjLengthVector<T>> {
        if i >= self.vertices.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.vertices.len() });
        }
        let mut row = vec![T::zero(); self.vertices.len()];
        for &(a, b) in &self.edges {
            if a == i {
                row[b] = self.edge_length((a, b));
            } else if b == i {
                row[a] = self.edge_length((a, b));
            }
        }
        Ok(AdjLengthVector(row))
    }

    /// All adjacency length vectors, one per vertex, in vertex order.
    pub fn adj_length_matrix(&self) -> Vec<AdjLengthVector<T>> {
        let n = self.vertices.len();
        let mut rows = vec![vec![T::zero(); n]; n];
        for &(a, b) in &self.edges {
            let len = self.edge_length((a, b));
            rows[a][b] = len;
            rows[b][a] = len;
        }
        rows.into_iter().map(AdjLengthVector).collect()
    }

    pub fn cast<U: Scalar>(&self) -> GeometricGraph<U> {
        GeometricGraph {
            dim: self.dim,
            vertices: self.vertices.iter().map(Point::cast).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Multiplies every coordinate by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        self.map_vertices(|p| Point(p.0.iter().map(|&c| c * factor).collect()))
    }

    /// Shifts every vertex by `t`; edges and lengths are unchanged.
    pub fn translate(&self, t: &Point<T>) -> Result<Self> {
        if t.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: t.dim() });
        }
        Ok(self.map_vertices(|p| Point(p.0.iter().zip(&t.0).map(|(&c, &s)| c + s).collect())))
    }

    /// Displaces each vertex independently by a vector drawn uniformly from
    /// the closed ball of radius `delta`. Deterministic in `seed`.
    pub fn perturb(&self, delta: T, seed: u64) -> Result<Self> {
        if delta.is_nan() || delta < T::zero() {
            return Err(Error::NegativeDelta(delta.as_f64()));
        }
        if delta == T::zero() {
            return Ok(self.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let unit = Uniform::new_inclusive(0.0f64, 1.0);
        let d = self.dim;
        let delta = delta.as_f64();
        Ok(self.map_vertices(|p| {
            let direction = loop {
                let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
                let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if len > 1e-12 {
                    break v.into_iter().map(|x| x / len).collect::<Vec<_>>();
                }
            };
            let radius = delta * unit.sample(&mut rng).powf(1.0 / d as f64);
            Point(
                p.0.iter()
                    .zip(&direction)
                    .map(|(&c, &u)| c + T::of(radius * u))
                    .collect(),
            )
        }))
    }

    fn map_vertices(&self, f: impl FnMut(&Point<T>) -> Point<T>) -> Self {
        GeometricGraph {
            dim: self.dim,
            vertices: self.vertices.iter().map(f).collect(),
            edges: self.edges.clone(),
        }
    }

    fn structural_violations(&self) -> Vec<Violation<T>> {
        let mut out = Vec::new();
        let n = self.vertices.len();
        for (i, p) in self.vertices.iter().enumerate() {
            if p.dim() != self.dim {
                out.push(Violation::DimensionMismatch { vertex: i, found: p.dim() });
            }
            if p.0.iter().any(|c| !c.is_finite()) {
                out.push(Violation::NonFiniteCoordinate { vertex: i });
            }
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.edges {
            if b >= n {
                out.push(Violation::EdgeIndexOutOfRange { edge: (a, b), index: b });
                continue;
            }
            if a == b {
                out.push(Violation::SelfLoop { vertex: a });
                continue;
            }
            if !seen.insert((a, b)) {
                out.push(Violation::DuplicateEdge { edge: (a, b) });
            }
        }
        out
    }
}

/// A defect found by [`validate_graph`].
#[derive(Clone, Debug, PartialEq)]
pub enum Violation<T> {
    EdgeIndexOutOfRange { edge: (usize, usize), index: usize },
    SelfLoop { vertex: usize },
    DuplicateEdge { edge: (usize, usize) },
    DimensionMismatch { vertex: usize, found: usize },
    NonFiniteCoordinate { vertex: usize },
    /// Two edges meet somewhere other than a shared endpoint.
    Crossing { first: (usize, usize), second: (usize, usize), at: [T; 2] },
    /// Two edges run along each other.
    Overlap { first: (usize, usize), second: (usize, usize) },
}

impl<T: fmt::Display> fmt::Display for Violation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeIndexOutOfRange { edge, index } => {
                write!(f, "bad edge index {index} in edge {edge:?}")
            }
            Violation::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Violation::DuplicateEdge { edge } => write!(f, "duplicate edge {edge:?}"),
            Violation::DimensionMismatch { vertex, found } => {
                write!(f, "vertex {vertex} has dimension {found}")
            }
            Violation::NonFiniteCoordinate { vertex } => {
                write!(f, "vertex {vertex} has a non-finite coordinate")
            }
            Violation::Crossing { first, second, at } => write!(
                f,
                "interior crossing at ({}, {}) between edges {first:?} and {second:?}",
                at[0], at[1]
            ),
            Violation::Overlap { first, second } => {
                write!(f, "collinear overlap between edges {first:?} and {second:?}")
            }
        }
    }
}

/// Lists every defect of `g`. An empty list means `g` is valid.
///
/// With `check_embedding` set and `g.dim() == 2`, edges closer than `eps`
/// anywhere other than a shared endpoint are reported as well.
pub fn validate_graph<T: Scalar>(g: &GeometricGraph<T>, check_embedding: bool, eps: T) -> Vec<Violation<T>> {
    let mut out = g.structural_violations();
    if !out.is_empty() || !check_embedding || g.dim != 2 {
        return out;
    }
    let segs: Vec<([T; 2], [T; 2])> = g
        .edges
        .iter()
        .map(|&(a, b)| (g.vertices[a].xy(), g.vertices[b].xy()))
        .collect();
    for (x, &e) in g.edges.iter().enumerate() {
        for (y, &f) in g.edges.iter().enumerate().skip(x + 1) {
            let (a0, a1) = segs[x];
            let (b0, b1) = segs[y];
            let shared = [e.0, e.1].iter().filter(|v| **v == f.0 || **v == f.1).count();
            if shared == 1 {
                // Adjacent edges may meet only at the common vertex.
                let far_e = if e.0 == f.0 || e.0 == f.1 { a1 } else { a0 };
                let far_f = if f.0 == e.0 || f.0 == e.1 { b1 } else { b0 };
                if point_segment_distance(far_f, a0, a1) <= eps || point_segment_distance(far_e, b0, b1) <= eps {
                    out.push(Violation::Overlap { first: e, second: f });
                }
                continue;
            }
            match segment_contact(a0, a1, b0, b1, eps) {
                Contact::Disjoint => {}
                Contact::Point { at, .. } => out.push(Violation::Crossing { first: e, second: f, at }),
                Contact::Overlap => out.push(Violation::Overlap { first: e, second: f }),
            }
        }
    }
    out
}

/// Symmetric Hausdorff distance between the vertex sets of `a` and `b`.
pub fn hausdorff_vertices<T: Scalar>(a: &GeometricGraph<T>, b: &GeometricGraph<T>) -> Result<T> {
    if a.vertices.is_empty() || b.vertices.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, found: b.dim });
    }
    let directed = |from: &[Point<T>], to: &[Point<T>]| {
        from.iter()
            .map(|p| to.iter().map(|q| p.distance(q)).fold(T::infinity(), T::min))
            .fold(T::zero(), T::max)
    };
    Ok(directed(&a.vertices, &b.vertices).max(directed(&b.vertices, &a.vertices)))
}
