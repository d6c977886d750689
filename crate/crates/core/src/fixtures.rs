//! Built-in example graphs. Edge `i` (0-based) carries the display label
//! `i + 1`, and the conventional order is `1 > 2 > .. > m`.

use crate::graph::LabelledGraph;

pub const NAMES: [&str; 5] = ["k3", "k4minus", "prism3", "k33", "fig2"];

fn build(n: usize, edges: &[(usize, usize)]) -> LabelledGraph {
    LabelledGraph::from_one_based(n, edges).expect("fixture edges are in range")
}

pub fn k3() -> LabelledGraph {
    build(3, &[(1, 2), (2, 3), (1, 3)])
}

/// K4 minus an edge; triangles `{1,2,5}` and `{3,4,5}`.
pub fn k4_minus() -> LabelledGraph {
    build(4, &[(1, 2), (2, 3), (1, 4), (3, 4), (1, 3)])
}

/// Triangular prism: triangles `{1,2,3}` and `{6,8,9}`.
pub fn prism3() -> LabelledGraph {
    build(
        6,
        &[(1, 3), (1, 2), (2, 3), (1, 4), (2, 5), (4, 5), (3, 6), (4, 6), (5, 6)],
    )
}

/// K3,3 with sides `v11 v21 v31` = 1 2 3 and `v12 v22 v32` = 4 5 6.
pub fn k33() -> LabelledGraph {
    build(
        6,
        &[(1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (1, 4), (3, 4), (3, 5), (3, 6)],
    )
}

/// Eight vertices, thirteen edges; realisation number 45.
pub fn fig2() -> LabelledGraph {
    build(
        8,
        &[
            (1, 4),
            (2, 5),
            (3, 6),
            (1, 2),
            (1, 3),
            (4, 5),
            (4, 6),
            (2, 7),
            (4, 7),
            (3, 7),
            (5, 8),
            (1, 8),
            (6, 8),
        ],
    )
}

pub fn by_name(name: &str) -> Option<LabelledGraph> {
    match name {
        "k3" => Some(k3()),
        "k4minus" => Some(k4_minus()),
        "prism3" => Some(prism3()),
        "k33" => Some(k33()),
        "fig2" => Some(fig2()),
        _ => None,
    }
}
