use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point3, TriangleMesh};

/// Homogeneous 4×4 transform acting on column vectors, in millimetres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineTransform {
    m: [[f64; 4]; 4],
}

impl Default for AffineTransform {
    fn default() -> Self {
        Self::identity()
    }
}

impl AffineTransform {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { m }
    }

    /// Builds a transform from a matrix whose last row must be `(0, 0, 0, 1)`.
    pub fn from_matrix(m: [[f64; 4]; 4]) -> Result<Self> {
        if m[3] != [0.0, 0.0, 0.0, 1.0] {
            return Err(Error::InvalidTransform(
                "bottom row must be (0, 0, 0, 1)".into(),
            ));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &[[f64; 4]; 4] {
        &self.m
    }

    pub fn translation(t: Point3) -> Self {
        let mut a = Self::identity();
        for (row, v) in a.m.iter_mut().zip(t) {
            row[3] = v;
        }
        a
    }

    pub fn scaling(s: Point3) -> Self {
        let mut a = Self::identity();
        for (i, v) in s.into_iter().enumerate() {
            a.m[i][i] = v;
        }
        a
    }

    fn axis_rotation(axis: usize, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
        let mut a = Self::identity();
        a.m[u][u] = c;
        a.m[u][v] = -s;
        a.m[v][u] = s;
        a.m[v][v] = c;
        a
    }

    pub fn rotation_x(angle: f64) -> Self {
        Self::axis_rotation(0, angle)
    }

    pub fn rotation_y(angle: f64) -> Self {
        Self::axis_rotation(1, angle)
    }

    pub fn rotation_z(angle: f64) -> Self {
        Self::axis_rotation(2, angle)
    }

    /// `Rx(θx) ∘ Ry(θy) ∘ Rz(θz)`: the z rotation is applied first.
    pub fn rotation(angles: Point3) -> Self {
        Self::rotation_x(angles[0])
            .compose(&Self::rotation_y(angles[1]))
            .compose(&Self::rotation_z(angles[2]))
    }

    /// `self ∘ other`: applies `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..4).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Self { m }
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        let m = &self.m;
        [0, 1, 2].map(|i| m[i][0] * p[0] + m[i][1] * p[1] + m[i][2] * p[2] + m[i][3])
    }

    /// Determinant of the linear 3×3 block.
    pub fn determinant(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn is_invertible(&self) -> bool {
        let det = self.determinant();
        let scale = self.m[..3]
            .iter()
            .flat_map(|r| r[..3].iter())
            .fold(0.0f64, |acc, x| acc.max(x.abs()));
        det.is_finite() && det.abs() > 1e-12 * scale.powi(3).max(f64::MIN_POSITIVE)
    }
}

/// Maps every vertex through `transform`; faces are kept.
pub fn apply_transform(mesh: &TriangleMesh, transform: &AffineTransform) -> Result<TriangleMesh> {
    if !transform.is_invertible() {
        return Err(Error::InvalidTransform(format!(
            "singular transform (determinant {})",
            transform.determinant()
        )));
    }
    Ok(mesh.with_vertices(
        mesh.vertices()
            .iter()
            .map(|&v| transform.apply(v))
            .collect(),
    ))
}

/// How the ellipsoid base radius is derived from the volume parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VolumeMode {
    /// `r = (3v/4)^(1/3)`; the enclosed ellipsoid volume is then `π·v`.
    #[default]
    Paper,
    /// `r = (3v/(4π))^(1/3)`; the enclosed ellipsoid volume equals `v`.
    ExactVolume,
}

impl std::str::FromStr for VolumeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Self::Paper),
            "exact-volume" | "exact" => Ok(Self::ExactVolume),
            other => Err(Error::Config(format!(
                "unknown volume mode {other:?} (expected \"paper\" or \"exact-volume\")"
            ))),
        }
    }
}

/// Ellipsoid semi-axes in millimetres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidAxes {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl EllipsoidAxes {
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self> {
        if [r1, r2, r3].iter().any(|r| !(*r > 0.0 && r.is_finite())) {
            return Err(Error::InvalidParameter(format!(
                "semi-axes must be positive, got ({r1}, {r2}, {r3})"
            )));
        }
        Ok(Self { r1, r2, r3 })
    }

    pub fn as_array(&self) -> Point3 {
        [self.r1, self.r2, self.r3]
    }

    /// Analytic ellipsoid volume `4/3 π r1 r2 r3`.
    pub fn volume(&self) -> f64 {
        4.0 / 3.0 * std::f64::consts::PI * self.r1 * self.r2 * self.r3
    }
}

/// Semi-axes `(r, λr, r/λ)` for volume parameter `v` and elongation `λ >= 1`.
pub fn ellipsoid_semiaxes(volume: f64, lambda: f64, mode: VolumeMode) -> Result<EllipsoidAxes> {
    if !(volume > 0.0 && volume.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "volume parameter must be positive, got {volume}"
        )));
    }
    if !(lambda >= 1.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be >= 1, got {lambda}"
        )));
    }
    let r = match mode {
        VolumeMode::Paper => (3.0 * volume / 4.0).cbrt(),
        VolumeMode::ExactVolume => (3.0 * volume / (4.0 * std::f64::consts::PI)).cbrt(),
    };
    EllipsoidAxes::new(r, lambda * r, r / lambda)
}

/// `T(g) ∘ S(axes) ∘ R(angles) ∘ T(-c)`: recentres a surface with centroid
/// `centroid` at the origin, rotates, stretches and moves it to `target`.
pub fn make_transform_chain(
    centroid: Point3,
    angles: Point3,
    axes: &EllipsoidAxes,
    target: Point3,
) -> AffineTransform {
    AffineTransform::translation(target)
        .compose(&AffineTransform::scaling(axes.as_array()))
        .compose(&AffineTransform::rotation(angles))
        .compose(&AffineTransform::translation(centroid.map(|c| -c)))
}
