use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::Point3;

/// Closed triangulated surface. Coordinates are in millimetres once the mesh
/// has been placed in a volume; faces are counter-clockwise seen from outside.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    vertices: Vec<Point3>,
    faces: Vec<[u32; 3]>,
}

impl TriangleMesh {
    /// Builds a mesh after checking that every face references three distinct,
    /// existing vertices.
    pub fn new(vertices: Vec<Point3>, faces: Vec<[u32; 3]>) -> Result<Self> {
        let n = vertices.len();
        for (k, f) in faces.iter().enumerate() {
            if f.iter().any(|&i| i as usize >= n) {
                return Err(Error::InvalidInput(format!(
                    "face {k} references a vertex beyond {n}"
                )));
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::InvalidInput(format!("face {k} repeats a vertex")));
            }
        }
        Ok(Self { vertices, faces })
    }

    pub(crate) fn from_parts_unchecked(vertices: Vec<Point3>, faces: Vec<[u32; 3]>) -> Self {
        Self { vertices, faces }
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[u32; 3]] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Replaces the vertex positions, keeping connectivity.
    pub(crate) fn with_vertices(&self, vertices: Vec<Point3>) -> Self {
        debug_assert_eq!(vertices.len(), self.vertices.len());
        Self {
            vertices,
            faces: self.faces.clone(),
        }
    }

    fn edge_uses(&self) -> HashMap<(u32, u32), u32> {
        let mut uses = HashMap::with_capacity(self.faces.len() * 3 / 2);
        for f in &self.faces {
            for e in 0..3 {
                let (a, b) = (f[e], f[(e + 1) % 3]);
                *uses.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        uses
    }

    /// Number of distinct undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edge_uses().len()
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    /// Checks that every undirected edge is shared by exactly two faces.
    pub fn check_watertight(&self) -> Result<()> {
        if self.faces.is_empty() {
            return Err(Error::Topology("mesh has no faces".into()));
        }
        let uses = self.edge_uses();
        let mut bad: Vec<_> = uses.iter().filter(|(_, &n)| n != 2).collect();
        if bad.is_empty() {
            return Ok(());
        }
        bad.sort();
        let ((a, b), n) = bad[0];
        Err(Error::Topology(format!(
            "{} edges are not shared by exactly two faces (edge {a}-{b} is used {n} times)",
            bad.len()
        )))
    }

    pub fn is_watertight(&self) -> bool {
        self.check_watertight().is_ok()
    }

    /// Mean of the vertex positions.
    pub fn centroid(&self) -> Point3 {
        let mut c = [0.0; 3];
        for v in &self.vertices {
            for i in 0..3 {
                c[i] += v[i];
            }
        }
        let n = self.vertices.len().max(1) as f64;
        c.map(|x| x / n)
    }

    /// Enclosed volume by the divergence theorem; positive for outward-facing
    /// orientation.
    pub fn signed_volume(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let [a, b, c] = f.map(|i| self.vertices[i as usize]);
                a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                    + a[2] * (b[0] * c[1] - b[1] * c[0])
            })
            .sum::<f64>()
            / 6.0
    }

    /// Axis-aligned bounds as `(min, max)`.
    pub fn bounds(&self) -> (Point3, Point3) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &self.vertices {
            for i in 0..3 {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        (lo, hi)
    }

    /// Euclidean norm of every vertex.
    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        self.vertices.iter().map(|v| crate::geometry::norm(*v))
    }

    /// A closed axis-aligned box with 12 outward-facing triangles.
    pub fn cuboid(min: Point3, max: Point3) -> Result<Self> {
        if (0..3).any(|i| !(max[i] > min[i])) {
            return Err(Error::InvalidParameter(
                "cuboid max must exceed min on every axis".into(),
            ));
        }
        let corner = |i: u32| {
            [
                if i & 1 == 0 { min[0] } else { max[0] },
                if i & 2 == 0 { min[1] } else { max[1] },
                if i & 4 == 0 { min[2] } else { max[2] },
            ]
        };
        let vertices = (0..8).map(corner).collect();
        let faces = vec![
            [0, 2, 1],
            [1, 2, 3],
            [4, 5, 6],
            [5, 7, 6],
            [0, 1, 4],
            [1, 5, 4],
            [2, 6, 3],
            [3, 6, 7],
            [0, 4, 2],
            [2, 4, 6],
            [1, 3, 5],
            [3, 7, 5],
        ];
        Ok(Self::from_parts_unchecked(vertices, faces))
    }
}
