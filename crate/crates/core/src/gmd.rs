//! Graph Mover's Distance between ordered geometric graphs.
//!
//! Every real vertex of `G` supplies one unit and the dummy supplier supplies
//! `n`; every real vertex of `H` demands one unit and the dummy consumer
//! demands `m`. The distance is the optimal transport cost over the ground
//! cost matrix.
//!
//! There is no separate vertex-deletion charge. Routing a vertex to a dummy
//! costs `C_E` times the total length of its incident edges, so an edge whose
//! endpoints are both deleted is paid for twice.

use crate::error::{Error, Result};
use crate::geometry::{CostParams, GeometricGraph};
use crate::ground_cost::{ground_cost_matrix, GroundCostMatrix};
use crate::scalar::Scalar;
use crate::transport::{solve_transport, Flow, TransportInstance};

/// Largest vertex count accepted by [`gmd_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct GmdResult<T> {
    pub value: T,
    pub flow: Flow<T>,
    pub matrix: GroundCostMatrix<T>,
}

/// The transportation instance whose optimum is the GMD of `g` and `h`.
pub fn gmd_instance<T: Scalar>(matrix: &GroundCostMatrix<T>) -> Result<TransportInstance<T>> {
    let (m, n) = (matrix.m(), matrix.n());
    let mut supplies = vec![T::one(); m];
    supplies.push(T::of(n as f64));
    let mut demands = vec![T::one(); n];
    demands.push(T::of(m as f64));
    TransportInstance::new(supplies, demands, matrix.as_rows())
}

pub fn gmd<T: Scalar>(g: &GeometricGraph<T>, h: &GeometricGraph<T>, params: &CostParams<T>) -> Result<GmdResult<T>> {
    let matrix = ground_cost_matrix(g, h, params)?;
    let flow = solve_transport(&gmd_instance(&matrix)?)?;
    Ok(GmdResult { value: flow.objective().max(T::zero()), flow, matrix })
}

/// GMD by exhaustive search over partial injections between the real
/// vertices. Independent of the transport solver; limited to
/// [`BRUTEFORCE_LIMIT`] vertices per graph.
///
/// With the unit weights above an optimal flow is integral, so it is a
/// partial injection plus deletions; the dummy-to-dummy cell costs nothing.
pub fn gmd_bruteforce<T: Scalar>(g: &GeometricGraph<T>, h: &GeometricGraph<T>, params: &CostParams<T>) -> Result<T> {
    let (m, n) = (g.vertex_count(), h.vertex_count());
    if m > BRUTEFORCE_LIMIT || n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge { m, n, limit: BRUTEFORCE_LIMIT });
    }
    let d = ground_cost_matrix(g, h, params)?;
    let mut used = vec![false; n];
    let mut best = T::infinity();
    search(&d, 0, T::zero(), &mut used, &mut best);
    Ok(best)
}

fn search<T: Scalar>(d: &GroundCostMatrix<T>, i: usize, acc: T, used: &mut [bool], best: &mut T) {
    let (m, n) = (d.m(), d.n());
    if i == m {
        let tail: T = (0..n).filter(|&j| !used[j]).map(|j| d.get(m, j)).sum();
        if acc + tail < *best {
            *best = acc + tail;
        }
        return;
    }
    search(d, i + 1, acc + d.get(i, n), used, best);
    for j in 0..n {
        if !used[j] {
            used[j] = true;
            search(d, i + 1, acc + d.get(i, j), used, best);
            used[j] = false;
        }
    }
}
