//! ASCII PLY export for surface meshes.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::geometry::TriangleMesh;

/// Renders a mesh as an ASCII PLY document.
pub fn mesh_to_ply(mesh: &TriangleMesh) -> String {
    let mut s = String::new();
    s.push_str("ply\nformat ascii 1.0\n");
    let _ = writeln!(s, "element vertex {}", mesh.vertices().len());
    s.push_str("property double x\nproperty double y\nproperty double z\n");
    let _ = writeln!(s, "element face {}", mesh.faces().len());
    s.push_str("property list uchar int vertex_indices\nend_header\n");
    for v in mesh.vertices() {
        let _ = writeln!(s, "{} {} {}", v[0], v[1], v[2]);
    }
    for f in mesh.faces() {
        let _ = writeln!(s, "3 {} {} {}", f[0], f[1], f[2]);
    }
    s
}

pub fn write_ply(path: impl AsRef<Path>, mesh: &TriangleMesh) -> Result<()> {
    crate::io::write_atomically(path.as_ref(), mesh_to_ply(mesh).as_bytes())
}
