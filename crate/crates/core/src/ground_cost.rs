//! Ground distances between the vertices of two ordered graphs, including the
//! dummy supplier (last row) and dummy consumer (last column).

use std::io::Write;

use crate::error::{Error, Result};
use crate::geometry::{AdjLengthVector, CostParams, GeometricGraph};
use crate::scalar::Scalar;

/// The `(m + 1) x (n + 1)` ground-cost matrix, stored row-major.
///
/// Row `m` is the dummy supplier and column `n` the dummy consumer.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundCostMatrix<T> {
    m: usize,
    n: usize,
    params: CostParams<T>,
    entries: Vec<T>,
}

impl<T: Scalar> GroundCostMatrix<T> {
    /// Real vertex count of the first graph.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Real vertex count of the second graph.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.m + 1
    }

    pub fn cols(&self) -> usize {
        self.n + 1
    }

    pub fn params(&self) -> CostParams<T> {
        self.params
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        assert!(i <= self.m && j <= self.n, "ground cost index ({i}, {j}) out of range");
        self.entries[i * (self.n + 1) + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * (self.n + 1)..(i + 1) * (self.n + 1)]
    }

    pub fn as_rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n + 1).map(<[T]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..=self.n {
            for i in 0..=self.m {
                entries.push(self.get(i, j));
            }
        }
        GroundCostMatrix { m: self.n, n: self.m, params: self.params, entries }
    }

    /// Writes the matrix as CSV: a `m,n,c_v,c_e` header line with its values,
    /// then one line per row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "m,n,c_v,c_e")?;
        writeln!(out, "{},{},{},{}", self.m, self.n, self.params.c_v(), self.params.c_e())?;
        for row in self.entries.chunks(self.n + 1) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// Cost of routing a vertex with adjacency lengths `vec` to a dummy: `C_E * ||vec||_1`.
pub fn deletion_cost<T: Scalar>(vec: &AdjLengthVector<T>, params: &CostParams<T>) -> T {
    params.c_e() * vec.l1_norm()
}

/// Builds the ground-cost matrix between `g` (suppliers) and `h` (consumers).
///
/// For real vertices, `d(i, j) = C_V |u_i - v_j| + C_E ||E^G_i - E^H_j||_1`
/// where both adjacency vectors are truncated to their first `min(m, n)`
/// entries. The dummy row and column hold the deletion costs; the corner is 0.
pub fn ground_cost_matrix<T: Scalar>(
    g: &GeometricGraph<T>,
    h: &GeometricGraph<T>,
    params: &CostParams<T>,
) -> Result<GroundCostMatrix<T>> {
    if g.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: h.dim() });
    }
    let (m, n) = (g.vertex_count(), h.vertex_count());
    let p = m.min(n);
    let eg = g.adj_length_matrix();
    let eh = h.adj_length_matrix();
    let (c_v, c_e) = (params.c_v(), params.c_e());

    let mut entries = Vec::with_capacity((m + 1) * (n + 1));
    for (u, row_g) in g.vertices().iter().zip(&eg) {
        let trunc_g = &row_g.entries()[..p];
        for (v, row_h) in h.vertices().iter().zip(&eh) {
            let trunc_h = &row_h.entries()[..p];
            let edge_term: T = trunc_g.iter().zip(trunc_h).map(|(&a, &b)| (a - b).abs()).sum();
            entries.push(c_v * u.distance(v) + c_e * edge_term);
        }
        entries.push(deletion_cost(row_g, params));
    }
    entries.extend(eh.iter().map(|row| deletion_cost(row, params)));
    entries.push(T::zero());

    Ok(GroundCostMatrix { m, n, params: *params, entries })
}
