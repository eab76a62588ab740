#![allow(dead_code)]

use std::path::PathBuf;

use gmd_core::io::read_json_graph;
use gmd_core::{CostParams, GeometricGraph, Point};
use proptest::prelude::*;

pub fn fixture(name: &str) -> GeometricGraph<f64> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    read_json_graph(&std::fs::read(&path).unwrap()).unwrap()
}

pub fn params(c_v: f64, c_e: f64) -> CostParams<f64> {
    CostParams::new(c_v, c_e).unwrap()
}

pub fn graph(coords: &[Vec<f64>], edges: &[(usize, usize)]) -> GeometricGraph<f64> {
    let dim = coords.first().map_or(2, Vec::len);
    let verts = coords.iter().map(|c| Point::new(c.clone()).unwrap()).collect();
    GeometricGraph::new(dim, verts, edges.to_vec()).unwrap()
}

fn assemble(coords: Vec<(f64, f64)>, mask: Vec<bool>) -> GeometricGraph<f64> {
    let n = coords.len();
    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    let edges = pairs.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e).collect::<Vec<_>>();
    let coords: Vec<Vec<f64>> = coords.into_iter().map(|(x, y)| vec![x, y]).collect();
    let verts = coords.into_iter().map(|c| Point::new(c).unwrap()).collect();
    GeometricGraph::new(2, verts, edges).unwrap()
}

/// Graphs in `[0, 10]^2` with `lo..=hi` vertices and arbitrary edges.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = GeometricGraph<f64>> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (prop::collection::vec((0.0..=10.0f64, 0.0..=10.0f64), n), prop::collection::vec(any::<bool>(), pairs))
            .prop_map(|(coords, mask)| assemble(coords, mask))
    })
}

/// Like [`arb_graph`] but with small integer coordinates, so sums and
/// differences are exact.
pub fn arb_int_graph(lo: usize, hi: usize) -> impl Strategy<Value = GeometricGraph<f64>> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (prop::collection::vec((0..=10i32, 0..=10i32), n), prop::collection::vec(any::<bool>(), pairs)).prop_map(
            |(coords, mask)| assemble(coords.into_iter().map(|(x, y)| (x as f64, y as f64)).collect(), mask),
        )
    })
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Minimum cost over every integral flow meeting the row and column sums,
/// by exhaustive enumeration.
pub fn transport_oracle(supplies: &[u32], demands: &[u32], costs: &[Vec<f64>]) -> f64 {
    fn go(cell: usize, rows: &mut [u32], cols: &mut [u32], costs: &[Vec<f64>], acc: f64, best: &mut f64) {
        let n = cols.len();
        if cell == rows.len() * n {
            if rows.iter().chain(cols.iter()).all(|&r| r == 0) {
                *best = best.min(acc);
            }
            return;
        }
        let (i, j) = (cell / n, cell % n);
        // The last cell of a row must empty that row.
        let range: Vec<u32> = if j + 1 == n {
            if rows[i] > cols[j] {
                return;
            }
            vec![rows[i]]
        } else {
            (0..=rows[i].min(cols[j])).collect()
        };
        for f in range {
            rows[i] -= f;
            cols[j] -= f;
            go(cell + 1, rows, cols, costs, acc + f as f64 * costs[i][j], best);
            rows[i] += f;
            cols[j] += f;
        }
    }
    let mut best = f64::INFINITY;
    if supplies.iter().sum::<u32>() == 0 {
        return 0.0;
    }
    go(0, &mut supplies.to_vec(), &mut demands.to_vec(), costs, 0.0, &mut best);
    best
}

fn dist(a: &Point<f64>, b: &Point<f64>) -> f64 {
    a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Cost of matching `g` onto `h` via `image` (one entry per vertex of `g`),
/// computed straight from coordinates.
pub fn edit_cost(g: &GeometricGraph<f64>, h: &GeometricGraph<f64>, image: &[Option<usize>], p: &CostParams<f64>) -> f64 {
    let mut pre = vec![None; h.vertex_count()];
    for (u, v) in image.iter().enumerate() {
        if let Some(v) = v {
            pre[*v] = Some(u);
        }
    }
    let mut cost = 0.0;
    for (u, v) in image.iter().enumerate() {
        if let Some(v) = v {
            cost += p.c_v() * dist(g.vertex(u), h.vertex(*v));
        }
    }
    for &(a, b) in g.edges() {
        let len = dist(g.vertex(a), g.vertex(b));
        match (image[a], image[b]) {
            (Some(x), Some(y)) if h.has_edge(x.min(y), x.max(y)) => {
                cost += p.c_e() * (len - dist(h.vertex(x), h.vertex(y))).abs();
            }
            _ => cost += p.c_e() * len,
        }
    }
    for &(x, y) in h.edges() {
        let kept = matches!((pre[x], pre[y]), (Some(a), Some(b)) if g.has_edge(a.min(b), a.max(b)));
        if !kept {
            cost += p.c_e() * dist(h.vertex(x), h.vertex(y));
        }
    }
    cost
}

/// Minimum [`edit_cost`] over all partial injections, with their count.
pub fn edit_oracle(g: &GeometricGraph<f64>, h: &GeometricGraph<f64>, p: &CostParams<f64>) -> (f64, usize) {
    fn go(
        u: usize,
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        g: &GeometricGraph<f64>,
        h: &GeometricGraph<f64>,
        p: &CostParams<f64>,
        out: &mut (f64, usize),
    ) {
        if u == g.vertex_count() {
            out.0 = out.0.min(edit_cost(g, h, image, p));
            out.1 += 1;
            return;
        }
        image.push(None);
        go(u + 1, image, used, g, h, p, out);
        image.pop();
        for v in 0..h.vertex_count() {
            if !used[v] {
                used[v] = true;
                image.push(Some(v));
                go(u + 1, image, used, g, h, p, out);
                image.pop();
                used[v] = false;
            }
        }
    }
    let mut out = (f64::INFINITY, 0);
    go(0, &mut Vec::new(), &mut vec![false; h.vertex_count()], g, h, p, &mut out);
    out
}
