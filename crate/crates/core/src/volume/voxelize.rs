//! Scanline parity rasterization of closed triangle meshes.

use crate::error::Result;
use crate::geometry::TriangleMesh;
use crate::volume::{BinaryMask, Grid, Volume};

/// Marks the voxels whose centres lie inside a closed surface.
///
/// Rays are cast along +x through every voxel-centre row. A crossing point
/// that falls on an edge or vertex shared by several triangles is assigned
/// to exactly one of them with a top-left rule evaluated on canonically
/// ordered edges, so each surface crossing is counted once. Along the ray a
/// centre at `x` is inside when an odd number of crossings lie at or before
/// `x`. For an axis-aligned box this yields the half-open `[min, max)` on
/// every axis.
pub fn voxelize(mesh: &TriangleMesh, grid: &Grid) -> Result<BinaryMask> {
    mesh.check_watertight()?;
    let [nx, ny, nz] = grid.dims();
    let sp = grid.spacing();
    let org = grid.origin();
    let verts = mesh.vertices();

    let mut rows: Vec<Vec<f64>> = vec![Vec::new(); ny * nz];

    for face in mesh.faces() {
        let idx = face.map(|i| i as usize);
        let p = idx.map(|i| verts[i]);
        let yz = p.map(|v| [v[1], v[2]]);

        let area2 = (yz[1][0] - yz[0][0]) * (yz[2][1] - yz[0][1])
            - (yz[1][1] - yz[0][1]) * (yz[2][0] - yz[0][0]);
        if area2 == 0.0 || !area2.is_finite() {
            continue;
        }
        let orient = area2.signum();

        let ylo = yz.iter().map(|q| q[0]).fold(f64::INFINITY, f64::min);
        let yhi = yz.iter().map(|q| q[0]).fold(f64::NEG_INFINITY, f64::max);
        let zlo = yz.iter().map(|q| q[1]).fold(f64::INFINITY, f64::min);
        let zhi = yz.iter().map(|q| q[1]).fold(f64::NEG_INFINITY, f64::max);
        let Some((j0, j1)) = index_span(ylo, yhi, org[1], sp[1], ny) else {
            continue;
        };
        let Some((k0, k1)) = index_span(zlo, zhi, org[2], sp[2], nz) else {
            continue;
        };

        for k in k0..=k1 {
            let z = org[2] + k as f64 * sp[2];
            for j in j0..=j1 {
                let y = org[1] + j as f64 * sp[1];
                let mut w = [0.0; 3];
                let mut inside = true;
                for e in 0..3 {
                    // Edge e runs from corner e to corner e+1 and is weighed
                    // by the opposite corner.
                    let (a, b) = (e, (e + 1) % 3);
                    let (lo, hi, flip) = if idx[a] < idx[b] {
                        (yz[a], yz[b], 1.0)
                    } else {
                        (yz[b], yz[a], -1.0)
                    };
                    let canon = (hi[0] - lo[0]) * (z - lo[1]) - (hi[1] - lo[1]) * (y - lo[0]);
                    let val = canon * flip * orient;
                    let owned = if val > 0.0 {
                        true
                    } else if val < 0.0 {
                        false
                    } else {
                        let dir = [
                            (yz[b][0] - yz[a][0]) * orient,
                            (yz[b][1] - yz[a][1]) * orient,
                        ];
                        dir[1] < 0.0 || (dir[1] == 0.0 && dir[0] > 0.0)
                    };
                    if !owned {
                        inside = false;
                        break;
                    }
                    w[(e + 2) % 3] = val;
                }
                if !inside {
                    continue;
                }
                let total = w[0] + w[1] + w[2];
                if total <= 0.0 {
                    continue;
                }
                let x = (w[0] * p[0][0] + w[1] * p[1][0] + w[2] * p[2][0]) / total;
                rows[j + ny * k].push(x);
            }
        }
    }

    let mut data = vec![false; grid.len()];
    for (row, xs) in rows.iter_mut().enumerate() {
        if xs.len() < 2 {
            continue;
        }
        xs.sort_by(f64::total_cmp);
        let base = row * nx;
        for pair in xs.chunks_exact(2) {
            let start = ((pair[0] - org[0]) / sp[0]).ceil();
            let end = ((pair[1] - org[0]) / sp[0]).ceil();
            let start = start.max(0.0).min(nx as f64) as usize;
            let end = end.max(0.0).min(nx as f64) as usize;
            for cell in &mut data[base + start..base + end] {
                *cell = true;
            }
        }
    }
    Volume::new(*grid, data)
}

/// Inclusive range of voxel-centre indices with coordinate in `[lo, hi]`.
fn index_span(lo: f64, hi: f64, origin: f64, spacing: f64, n: usize) -> Option<(usize, usize)> {
    let a = ((lo - origin) / spacing).ceil().max(0.0);
    let b = ((hi - origin) / spacing).floor().min(n as f64 - 1.0);
    if !(a <= b) {
        return None;
    }
    Some((a as usize, b as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::geometry::{apply_transform, icosphere, AffineTransform};

    fn centred_grid(half: f64, spacing: f64) -> Grid {
        let n = (2.0 * half / spacing).round() as usize + 1;
        Grid::new([n; 3], [spacing; 3], [-half; 3]).unwrap()
    }

    #[test]
    fn unit_sphere_volume() {
        // A sphere only four voxels across is sensitive to where the lattice
        // sits, so check a generic phase and the mean over several phases.
        let mesh = icosphere(4).unwrap();
        let exact = 4.0 / 3.0 * std::f64::consts::PI;
        let phases = [
            [0.13, 0.37, 0.71],
            [0.5, 0.5, 0.5],
            [0.05, 0.61, 0.29],
            [0.83, 0.17, 0.44],
            [0.0, 0.0, 0.0],
            [0.25, 0.75, 0.9],
        ];
        let mut mean = 0.0;
        for (n, ph) in phases.iter().enumerate() {
            let grid = Grid::new([15; 3], [0.25; 3], ph.map(|p| -1.75 + 0.25 * p)).unwrap();
            let vol = voxelize(&mesh, &grid).unwrap().foreground_volume();
            if n == 0 {
                assert!((vol - exact).abs() / exact < 0.03, "volume {vol}");
            }
            mean += vol / phases.len() as f64;
        }
        assert!((mean - exact).abs() / exact < 0.03, "mean volume {mean}");
    }

    #[test]
    fn agrees_with_polyhedron_volume_on_fine_grid() {
        let mesh =
            apply_transform(&icosphere(3).unwrap(), &AffineTransform::scaling([10.0; 3])).unwrap();
        let mask = voxelize(&mesh, &centred_grid(12.0, 0.2)).unwrap();
        let rel = (mask.foreground_volume() - mesh.signed_volume()).abs() / mesh.signed_volume();
        assert!(rel < 0.01, "relative error {rel}");
    }

    #[test]
    fn mesh_outside_grid_gives_empty_mask() {
        let mesh = apply_transform(
            &icosphere(2).unwrap(),
            &AffineTransform::translation([100.0, 0.0, 0.0]),
        )
        .unwrap();
        let mask = voxelize(&mesh, &centred_grid(5.0, 1.0)).unwrap();
        assert!(mask.is_empty_mask());
    }

    #[test]
    fn cube_matches_centre_test_and_shifts_by_one_voxel() {
        let grid = Grid::new([20, 20, 20], [0.5; 3], [0.0; 3]).unwrap();
        let lo = [2.3, 1.7, 3.1];
        let hi = [6.2, 5.4, 7.9];
        let cube = TriangleMesh::cuboid(lo, hi).unwrap();
        let mask = voxelize(&cube, &grid).unwrap();
        for i in 0..grid.len() {
            let c = grid.voxel_to_world(grid.voxel_index(i));
            let expect = (0..3).all(|a| c[a] >= lo[a] && c[a] < hi[a]);
            assert_eq!(mask.data()[i], expect);
        }
        let shifted =
            apply_transform(&cube, &AffineTransform::translation([0.5, 0.0, 0.0])).unwrap();
        let moved = voxelize(&shifted, &grid).unwrap();
        for k in 0..20 {
            for j in 0..20 {
                for i in 1..20 {
                    assert_eq!(moved.get([i, j, k]), mask.get([i - 1, j, k]));
                }
            }
        }
    }

    #[test]
    fn vertices_on_voxel_centres_are_counted_once() {
        // Cube corners and edges sit exactly on voxel centres.
        let grid = Grid::new([10, 10, 10], [1.0; 3], [0.0; 3]).unwrap();
        let cube = TriangleMesh::cuboid([2.0, 2.0, 2.0], [6.0, 7.0, 5.0]).unwrap();
        let mask = voxelize(&cube, &grid).unwrap();
        assert_eq!(mask.count(), 4 * 5 * 3);
        for idx in mask.foreground() {
            assert!(
                (2..6).contains(&idx[0]) && (2..7).contains(&idx[1]) && (2..5).contains(&idx[2])
            );
        }
        let m = voxelize(
            &icosphere(3).unwrap(),
            &Grid::new([5; 3], [0.5; 3], [-1.0; 3]).unwrap(),
        )
        .unwrap();
        assert!(*m.get([2, 2, 2]));
    }

    #[test]
    fn open_mesh_is_rejected() {
        let m = TriangleMesh::new(
            vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            vec![[0, 1, 2]],
        )
        .unwrap();
        let grid = Grid::with_dims([4, 4, 4]).unwrap();
        assert!(matches!(voxelize(&m, &grid), Err(Error::Topology(_))));
    }
}
