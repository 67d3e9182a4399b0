//! Cavity surface generation: geodesic spheres, noise perturbation and the
//! placement transform chain.

mod icosphere;
mod mesh;
mod noise;
mod transform;

pub use icosphere::icosphere;
pub use mesh::TriangleMesh;
pub use noise::{
    displacement, noise_value, ConstantDisplacement, Displacement, NoiseParams, SimplexNoise,
};
pub use transform::{
    apply_transform, ellipsoid_semiaxes, make_transform_chain, AffineTransform, EllipsoidAxes,
    VolumeMode,
};

use crate::error::{Error, Result};

pub type Point3 = [f64; 3];

#[cfg(test)]
pub(crate) fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn dot(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[cfg(test)]
pub(crate) fn cross(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm(a: Point3) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn normalize(a: Point3) -> Point3 {
    let n = norm(a);
    a.map(|x| x / n)
}

/// Moves every vertex along its direction from the origin by the displacement
/// sampled at that vertex: `v + d(v) · v / |v|`.
pub fn perturb_radially(mesh: &TriangleMesh, field: &dyn Displacement) -> Result<TriangleMesh> {
    let mut out = Vec::with_capacity(mesh.vertex_count());
    for (index, &v) in mesh.vertices().iter().enumerate() {
        let r = norm(v);
        if r == 0.0 || !r.is_finite() {
            return Err(Error::DegenerateDirection { index });
        }
        let d = field.displacement(v);
        out.push(v.map(|x| x + d * x / r));
    }
    Ok(mesh.with_vertices(out))
}
