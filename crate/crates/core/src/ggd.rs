//! Exact geometric graph distance by exhaustive enumeration of inexact matchings.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::geometry::{CostParams, GeometricGraph};
use crate::scalar::Scalar;

/// Largest vertex count accepted by [`enumerate_matchings`] and [`ggd_exact`].
pub const EXACT_LIMIT: usize = 7;

/// A relation covering every vertex of both graphs exactly once, where `None`
/// stands for the dummy vertex (deletion).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InexactMatching {
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl InexactMatching {
    /// Builds a matching from the image of each vertex of `G` in `H`
    /// (`None` = deleted). Vertices of `H` without a preimage are deleted.
    pub fn from_forward(forward: Vec<Option<usize>>, n: usize) -> Result<Self> {
        let mut backward = vec![None; n];
        for (u, image) in forward.iter().enumerate() {
            if let Some(v) = *image {
                if v >= n {
                    return Err(Error::InvalidMatching(format!("vertex {u} maps to {v}, but H has {n} vertices")));
                }
                if let Some(prev) = backward[v].replace(u) {
                    return Err(Error::InvalidMatching(format!("vertices {prev} and {u} both map to {v}")));
                }
            }
        }
        Ok(InexactMatching { forward, backward })
    }

    /// Builds a matching from explicit pairs. Every real vertex on each side
    /// must occur exactly once; `(None, None)` pairs are ignored.
    pub fn from_pairs(pairs: &[(Option<usize>, Option<usize>)], m: usize, n: usize) -> Result<Self> {
        let mut forward: Vec<Option<Option<usize>>> = vec![None; m];
        let mut backward: Vec<Option<Option<usize>>> = vec![None; n];
        for &(u, v) in pairs {
            if let Some(u) = u {
                let slot = forward
                    .get_mut(u)
                    .ok_or_else(|| Error::InvalidMatching(format!("vertex {u} of G out of range")))?;
                if slot.replace(v).is_some() {
                    return Err(Error::InvalidMatching(format!("vertex {u} of G occurs twice")));
                }
            }
            if let Some(v) = v {
                let slot = backward
                    .get_mut(v)
                    .ok_or_else(|| Error::InvalidMatching(format!("vertex {v} of H out of range")))?;
                if slot.replace(u).is_some() {
                    return Err(Error::InvalidMatching(format!("vertex {v} of H occurs twice")));
                }
            }
        }
        let missing = |side: &str, idx: usize| Error::InvalidMatching(format!("vertex {idx} of {side} is not covered"));
        let forward = forward
            .into_iter()
            .enumerate()
            .map(|(u, x)| x.ok_or_else(|| missing("G", u)))
            .collect::<Result<Vec<_>>>()?;
        let backward = backward
            .into_iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| missing("H", v)))
            .collect::<Result<Vec<_>>>()?;
        let matching = InexactMatching::from_forward(forward, n)?;
        if matching.backward != backward {
            return Err(Error::InvalidMatching("pairs are inconsistent".into()));
        }
        Ok(matching)
    }

    /// The identity matching between two graphs of equal size.
    pub fn identity(m: usize) -> Self {
        let forward: Vec<_> = (0..m).map(Some).collect();
        InexactMatching { backward: forward.clone(), forward }
    }

    pub fn image(&self, u: usize) -> Option<usize> {
        self.forward[u]
    }

    pub fn preimage(&self, v: usize) -> Option<usize> {
        self.backward[v]
    }

    pub fn forward(&self) -> &[Option<usize>] {
        &self.forward
    }

    pub fn backward(&self) -> &[Option<usize>] {
        &self.backward
    }

    pub fn matched_count(&self) -> usize {
        self.forward.iter().flatten().count()
    }

    /// The same relation read from `H` to `G`.
    pub fn inverse(&self) -> Self {
        InexactMatching { forward: self.backward.clone(), backward: self.forward.clone() }
    }

    /// The relation as pairs, dummy included: matched pairs and deleted
    /// vertices of `G` first (in `G` order), then deleted vertices of `H`.
    pub fn pairs(&self) -> Vec<(Option<usize>, Option<usize>)> {
        let mut out: Vec<_> = self.forward.iter().enumerate().map(|(u, &v)| (Some(u), v)).collect();
        out.extend(
            self.backward
                .iter()
                .enumerate()
                .filter(|(_, u)| u.is_none())
                .map(|(v, _)| (None, Some(v))),
        );
        out
    }

    fn fits(&self, m: usize, n: usize) -> bool {
        self.forward.len() == m && self.backward.len() == n
    }
}

/// Number of inexact matchings between vertex sets of sizes `m` and `n`:
/// `sum_k C(m, k) C(n, k) k!`.
pub fn matching_count(m: usize, n: usize) -> u128 {
    let choose = |a: usize, b: usize| -> u128 { (0..b).fold(1u128, |acc, i| acc * (a - i) as u128 / (i + 1) as u128) };
    (0..=m.min(n))
        .map(|k| choose(m, k) * choose(n, k) * (1..=k as u128).product::<u128>())
        .sum()
}

fn check_size(m: usize, n: usize) -> Result<()> {
    if m > EXACT_LIMIT || n > EXACT_LIMIT {
        return Err(Error::TooLarge { m, n, limit: EXACT_LIMIT });
    }
    Ok(())
}

/// Every inexact matching between `g` and `h`, each exactly once.
///
/// Ordered by the number of matched pairs, then by the matched subset of `G`
/// (lexicographic), then by the tuple of images (lexicographic).
pub fn enumerate_matchings<T: Scalar>(
    g: &GeometricGraph<T>,
    h: &GeometricGraph<T>,
) -> Result<impl Iterator<Item = InexactMatching>> {
    let (m, n) = (g.vertex_count(), h.vertex_count());
    check_size(m, n)?;
    Ok(matchings_of_sizes(m, n))
}

fn matchings_of_sizes(m: usize, n: usize) -> impl Iterator<Item = InexactMatching> {
    (0..=m.min(n)).flat_map(move |k| {
        (0..m).combinations(k).flat_map(move |subset| {
            (0..n).permutations(k).map(move |images| {
                let mut forward = vec![None; m];
                let mut backward = vec![None; n];
                for (&u, &v) in subset.iter().zip(&images) {
                    forward[u] = Some(v);
                    backward[v] = Some(u);
                }
                InexactMatching { forward, backward }
            })
        })
    })
}

/// Cost of an inexact matching: vertex translations, edge translations and
/// edge deletions on both sides.
///
/// An edge of `G` counts as translated when both endpoints are matched and
/// their images span an edge of `H`; otherwise it is deleted. Edges of `H`
/// not hit this way are deleted as well. Deleting a vertex costs nothing by
/// itself.
pub fn matching_cost<T: Scalar>(
    g: &GeometricGraph<T>,
    h: &GeometricGraph<T>,
    pi: &InexactMatching,
    params: &CostParams<T>,
) -> Result<T> {
    if g.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: h.dim() });
    }
    if !pi.fits(g.vertex_count(), h.vertex_count()) {
        return Err(Error::InvalidMatching(format!(
            "matching covers {} x {} vertices, graphs have {} x {}",
            pi.forward.len(),
            pi.backward.len(),
            g.vertex_count(),
            h.vertex_count()
        )));
    }
    Ok(cost_unchecked(g, h, pi, params))
}

fn cost_unchecked<T: Scalar>(g: &GeometricGraph<T>, h: &GeometricGraph<T>, pi: &InexactMatching, params: &CostParams<T>) -> T {
    let (c_v, c_e) = (params.c_v(), params.c_e());
    let mut total = T::zero();
    for (u, image) in pi.forward.iter().enumerate() {
        if let Some(v) = *image {
            total += c_v * g.vertex(u).distance(h.vertex(v));
        }
    }
    for &(a, b) in g.edges() {
        let len = g.edge_length((a, b));
        match (pi.forward[a], pi.forward[b]) {
            (Some(x), Some(y)) if h.has_edge(x, y) => {
                total += c_e * (len - h.edge_length((x.min(y), x.max(y)))).abs();
            }
            _ => total += c_e * len,
        }
    }
    for &(x, y) in h.edges() {
        let kept = matches!((pi.backward[x], pi.backward[y]), (Some(a), Some(b)) if g.has_edge(a, b));
        if !kept {
            total += c_e * h.edge_length((x, y));
        }
    }
    total
}

/// Minimum matching cost over all inexact matchings, with the first
/// minimizer in enumeration order.
pub fn ggd_exact<T: Scalar>(
    g: &GeometricGraph<T>,
    h: &GeometricGraph<T>,
    params: &CostParams<T>,
) -> Result<(T, InexactMatching)> {
    if g.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: h.dim() });
    }
    let mut best: Option<(T, InexactMatching)> = None;
    for pi in enumerate_matchings(g, h)? {
        let cost = cost_unchecked(g, h, &pi, params);
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, pi));
        }
    }
    Ok(best.expect("the empty matching always exists"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn graph(coords: &[&[f64]], edges: &[(usize, usize)]) -> GeometricGraph<f64> {
        let dim = coords.first().map_or(1, |c| c.len());
        let verts = coords.iter().map(|c| Point::new(c.to_vec()).unwrap()).collect();
        GeometricGraph::new(dim, verts, edges.to_vec()).unwrap()
    }

    fn points(k: usize) -> GeometricGraph<f64> {
        let verts = (0..k).map(|i| Point::new(vec![i as f64]).unwrap()).collect();
        GeometricGraph::new(1, verts, vec![]).unwrap()
    }

    fn unit() -> CostParams<f64> {
        CostParams::new(1.0, 1.0).unwrap()
    }

    fn fig1() -> (GeometricGraph<f64>, GeometricGraph<f64>) {
        (
            graph(&[&[0.0], &[3.0], &[4.0]], &[(0, 1), (1, 2)]),
            graph(&[&[0.0], &[4.0]], &[(0, 1)]),
        )
    }

    fn fig2() -> (GeometricGraph<f64>, GeometricGraph<f64>) {
        (
            graph(&[&[0.0, 2.0], &[0.0, 0.0], &[2.0, 0.0]], &[(0, 2), (2, 1)]),
            graph(&[&[0.0, 2.0], &[0.0, 0.0], &[2.0, 0.0]], &[(2, 0), (0, 1)]),
        )
    }

    #[test]
    fn matching_counts() {
        assert_eq!(enumerate_matchings(&points(1), &points(1)).unwrap().count(), 2);
        assert_eq!(enumerate_matchings(&points(0), &points(0)).unwrap().count(), 1);
        assert_eq!(enumerate_matchings(&points(3), &points(2)).unwrap().count(), 13);
        assert_eq!(matching_count(3, 2), 13);
        assert_eq!(matching_count(7, 7), 130_922);
        assert!(matches!(enumerate_matchings(&points(8), &points(1)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn enumeration_is_distinct_and_ordered() {
        let all: Vec<_> = enumerate_matchings(&points(3), &points(3)).unwrap().collect();
        assert_eq!(all.len() as u128, matching_count(3, 3));
        let unique: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), all.len());
        assert!(all.windows(2).all(|w| w[0].matched_count() <= w[1].matched_count()));
        assert_eq!(all[0].matched_count(), 0);
        assert_eq!(all[1].forward(), &[Some(0), None, None]);
    }

    #[test]
    fn fig2_rewiring_matching() {
        let (g, h) = fig2();
        let pi = InexactMatching::from_pairs(
            &[(Some(0), Some(0)), (Some(2), Some(2)), (Some(1), None), (None, Some(1))],
            3,
            3,
        )
        .unwrap();
        assert_eq!(matching_cost(&g, &h, &pi, &unit()).unwrap(), 4.0);
        let (value, _) = ggd_exact(&g, &h, &unit()).unwrap();
        assert_eq!(value, 4.0);
    }

    #[test]
    fn fig1_matching_costs_three() {
        let (g, h) = fig1();
        let pi = InexactMatching::from_forward(vec![Some(0), Some(1), None], 2).unwrap();
        // C_V |3 - 4| + C_E |3 - 4| + C_E * 1 (deleted edge u2 u3).
        assert_eq!(matching_cost(&g, &h, &pi, &unit()).unwrap(), 3.0);
    }

    #[test]
    fn identity_on_equal_graphs_is_free() {
        let (g, _) = fig2();
        assert_eq!(matching_cost(&g, &g, &InexactMatching::identity(3), &unit()).unwrap(), 0.0);
        assert_eq!(ggd_exact(&g, &g, &unit()).unwrap().0, 0.0);
    }

    #[test]
    fn invalid_matchings_are_rejected() {
        assert!(InexactMatching::from_forward(vec![Some(0), Some(0)], 2).is_err());
        assert!(InexactMatching::from_forward(vec![Some(3)], 2).is_err());
        assert!(InexactMatching::from_pairs(&[(Some(0), Some(0))], 2, 1).is_err());
        assert!(InexactMatching::from_pairs(&[(Some(0), Some(0)), (Some(0), None)], 1, 1).is_err());
        let (g, h) = fig1();
        let wrong = InexactMatching::identity(3);
        assert!(matches!(matching_cost(&g, &h, &wrong, &unit()), Err(Error::InvalidMatching(_))));
    }

    #[test]
    fn pairs_round_trip() {
        let pi = InexactMatching::from_forward(vec![Some(1), None, Some(0)], 3).unwrap();
        let again = InexactMatching::from_pairs(&pi.pairs(), 3, 3).unwrap();
        assert_eq!(pi, again);
        assert_eq!(pi.inverse().inverse(), pi);
        assert_eq!(pi.inverse().image(1), Some(0));
    }
}
