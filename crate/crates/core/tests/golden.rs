//! Worked examples on the fixture graphs.

mod common;

use common::{edit_oracle, fixture, params};
use gmd_core::{ggd_exact, gmd, ground_cost_matrix, hausdorff_vertices, matching_count, };

/// Largest distance from a sample of `a`'s drawing to `b`'s drawing, both 1-D.
fn sampled_realization_gap(a: &gmd_core::GeometricGraph<f64>, b: &gmd_core::GeometricGraph<f64>) -> f64 {
    let on = |x: f64, g: &gmd_core::GeometricGraph<f64>| {
        g.edges()
            .iter()
            .map(|&(i, j)| {
                let (p, q) = (g.vertex(i).coords()[0], g.vertex(j).coords()[0]);
                let (lo, hi) = (p.min(q), p.max(q));
                (lo - x).max(x - hi).max(0.0)
            })
            .fold(f64::INFINITY, f64::min)
    };
    let mut worst: f64 = 0.0;
    for &(i, j) in a.edges() {
        let (p, q) = (a.vertex(i).coords()[0], a.vertex(j).coords()[0]);
        for s in 0..=100 {
            let x = p + (q - p) * s as f64 / 100.0;
            worst = worst.max(on(x, b));
        }
    }
    worst
}

#[test]
fn path_and_segment_share_a_drawing_but_not_a_ggd() {
    let (g, h) = (fixture("fig1_G.json"), fixture("fig1_H.json"));
    assert_eq!(sampled_realization_gap(&g, &h), 0.0);
    assert_eq!(sampled_realization_gap(&h, &g), 0.0);
    let p = params(1.0, 1.0);
    let (value, _) = ggd_exact(&g, &h, &p).unwrap();
    assert!(value > 0.0);
    assert!((value - 3.0).abs() < 1e-9);
    let (oracle, count) = edit_oracle(&g, &h, &p);
    assert_eq!(count as u128, matching_count(3, 2));
    assert!((oracle - value).abs() < 1e-9);
}

#[test]
fn path_and_segment_gmd_and_costs() {
    let (g, h) = (fixture("fig1_G.json"), fixture("fig1_H.json"));
    let p = params(1.0, 1.0);
    let m = ground_cost_matrix(&g, &h, &p).unwrap();
    assert_eq!(m.as_rows(), vec![vec![1.0, 11.0, 3.0], vec![10.0, 2.0, 4.0], vec![7.0, 5.0, 1.0], vec![4.0, 4.0, 0.0]]);
    assert!((gmd(&g, &h, &p).unwrap().value - 4.0).abs() < 1e-9);
}

#[test]
fn rewired_triangle_has_ggd_four_ce() {
    let (g, h) = (fixture("fig2_G.json"), fixture("fig2_H.json"));
    assert_eq!(hausdorff_vertices(&g, &h).unwrap(), 0.0);
    // Rewiring costs 4 C_E; moving the two outer vertices onto each other
    // instead costs 4 sqrt(2) C_V, which wins once C_E is large enough.
    for (c_v, c_e) in [(1.0, 1.0), (4.5, 1.0), (1.0, 1.4), (1.0, 2.5)] {
        let p = params(c_v, c_e);
        let (value, _) = ggd_exact(&g, &h, &p).unwrap();
        let expected = f64::min(4.0 * c_e, 4.0 * 2f64.sqrt() * c_v);
        assert!((value - expected).abs() < 1e-9, "{c_v} {c_e}: {value}");
        let (oracle, count) = edit_oracle(&g, &h, &p);
        assert_eq!(count, 34);
        assert!((oracle - value).abs() < 1e-9);
    }
}

#[test]
fn separability_counterexample() {
    let (g, h) = (fixture("fig3_G.json"), fixture("fig3_H.json"));
    for (c_v, c_e) in [(1.0, 1.0), (4.5, 1.0)] {
        let r = gmd(&g, &h, &params(c_v, c_e)).unwrap();
        assert!(r.value.abs() < 1e-9, "{}", r.value);
    }
    assert!(g != h);
    let (value, _) = ggd_exact(&g, &h, &params(1.0, 1.0)).unwrap();
    assert!(value > 0.0);
}
