//! Geodesic polyhedra built by subdividing an icosahedron.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{normalize, Point3, TriangleMesh};

const ICOSAHEDRON_FACES: [[u32; 3]; 20] = [
    [0, 11, 5],
    [0, 5, 1],
    [0, 1, 7],
    [0, 7, 10],
    [0, 10, 11],
    [1, 5, 9],
    [5, 11, 4],
    [11, 10, 2],
    [10, 7, 6],
    [7, 1, 8],
    [3, 9, 4],
    [3, 4, 2],
    [3, 2, 6],
    [3, 6, 8],
    [3, 8, 9],
    [4, 9, 5],
    [2, 4, 11],
    [6, 2, 10],
    [8, 6, 7],
    [9, 8, 1],
];

fn icosahedron_vertices() -> [Point3; 12] {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ]
    .map(normalize)
}

/// Unit-radius geodesic polyhedron of the given frequency: every icosahedron
/// edge is split into `frequency` segments, each face into `frequency²`
/// triangles, and all new vertices are projected onto the unit sphere.
///
/// The result has `10f² + 2` vertices and `20f²` faces.
pub fn icosphere(frequency: u32) -> Result<TriangleMesh> {
    if frequency == 0 {
        return Err(Error::InvalidParameter(
            "icosphere frequency must be at least 1".into(),
        ));
    }
    let f = frequency;
    let corners = icosahedron_vertices();
    let mut vertices: Vec<Point3> = corners.to_vec();
    let mut edge_points: HashMap<(u32, u32, u32), u32> = HashMap::new();

    // Points on an edge are computed from the lower-indexed endpoint so that
    // both adjacent faces see bit-identical coordinates.
    let mut edge_vertex = |vertices: &mut Vec<Point3>, u: u32, v: u32, t: u32| -> u32 {
        if t == 0 {
            return u;
        }
        if t == f {
            return v;
        }
        let (a, b, t) = if u < v { (u, v, t) } else { (v, u, f - t) };
        *edge_points.entry((a, b, t)).or_insert_with(|| {
            let (pa, pb) = (corners[a as usize], corners[b as usize]);
            let w = t as f64 / f as f64;
            let p = [0, 1, 2].map(|i| pa[i] * (1.0 - w) + pb[i] * w);
            vertices.push(normalize(p));
            (vertices.len() - 1) as u32
        })
    };

    let mut faces = Vec::with_capacity(20 * (f * f) as usize);
    for &[a, b, c] in &ICOSAHEDRON_FACES {
        // Lattice point (r, s), 0 <= s <= r <= f, sits at
        // ((f - r) A + (r - s) B + s C) / f.
        let mut index = vec![vec![0u32; f as usize + 1]; f as usize + 1];
        for r in 0..=f {
            for s in 0..=r {
                let id = if r == 0 {
                    a
                } else if s == 0 {
                    edge_vertex(&mut vertices, a, b, r)
                } else if s == r {
                    edge_vertex(&mut vertices, a, c, r)
                } else if r == f {
                    edge_vertex(&mut vertices, b, c, s)
                } else {
                    let (pa, pb, pc) = (
                        corners[a as usize],
                        corners[b as usize],
                        corners[c as usize],
                    );
                    let (wa, wb, wc) = ((f - r) as f64, (r - s) as f64, s as f64);
                    let p = [0, 1, 2].map(|i| (wa * pa[i] + wb * pb[i] + wc * pc[i]) / f as f64);
                    vertices.push(normalize(p));
                    (vertices.len() - 1) as u32
                };
                index[r as usize][s as usize] = id;
            }
        }
        for r in 0..f as usize {
            for s in 0..=r {
                faces.push([index[r][s], index[r + 1][s], index[r + 1][s + 1]]);
                if s < r {
                    faces.push([index[r][s], index[r + 1][s + 1], index[r][s + 1]]);
                }
            }
        }
    }
    Ok(TriangleMesh::from_parts_unchecked(vertices, faces))
}
