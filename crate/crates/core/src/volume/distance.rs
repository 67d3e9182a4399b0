//! Exact Euclidean distance transforms (separable lower-envelope algorithm),
//! honouring anisotropic spacing.

use crate::error::{Error, Result};
use crate::volume::{BinaryMask, ScalarVolume, Volume};

/// Squared Euclidean distance from every voxel to the nearest `true` voxel of
/// `seeds`, with `spacing` giving the physical size of a unit step per axis.
/// Voxels get `f64::INFINITY` when there are no seeds.
pub(crate) fn squared_distance_to(dims: [usize; 3], seeds: &[bool], spacing: [f64; 3]) -> Vec<f64> {
    let [nx, ny, nz] = dims;
    let mut d: Vec<f64> = seeds
        .iter()
        .map(|&s| if s { 0.0 } else { f64::INFINITY })
        .collect();
    let strides = [1, nx, nx * ny];
    let n_max = nx.max(ny).max(nz);
    let mut line = vec![0.0; n_max];
    let mut out = vec![0.0; n_max];
    let mut scratch = Envelope::new(n_max);

    for axis in 0..3 {
        let n = dims[axis];
        let stride = strides[axis];
        let w = spacing[axis] * spacing[axis];
        let (oa, ob) = match axis {
            0 => ((ny, nx), (nz, nx * ny)),
            1 => ((nx, 1), (nz, nx * ny)),
            _ => ((nx, 1), (ny, nx)),
        };
        for b in 0..ob.0 {
            for a in 0..oa.0 {
                let base = a * oa.1 + b * ob.1;
                for t in 0..n {
                    line[t] = d[base + t * stride];
                }
                scratch.transform(&line[..n], w, &mut out[..n]);
                for t in 0..n {
                    d[base + t * stride] = out[t];
                }
            }
        }
    }
    d
}

struct Envelope {
    v: Vec<usize>,
    z: Vec<f64>,
}

impl Envelope {
    fn new(n: usize) -> Self {
        Self {
            v: vec![0; n],
            z: vec![0.0; n + 1],
        }
    }

    /// `out[q] = min_p w (q - p)² + f[p]`.
    fn transform(&mut self, f: &[f64], w: f64, out: &mut [f64]) {
        let n = f.len();
        let mut k: isize = -1;
        for q in 0..n {
            if f[q].is_infinite() {
                continue;
            }
            if k < 0 {
                k = 0;
                self.v[0] = q;
                self.z[0] = f64::NEG_INFINITY;
                self.z[1] = f64::INFINITY;
                continue;
            }
            loop {
                let p = self.v[k as usize];
                let s = ((f[q] + w * (q * q) as f64) - (f[p] + w * (p * p) as f64))
                    / (2.0 * w * (q as f64 - p as f64));
                if s <= self.z[k as usize] && k > 0 {
                    k -= 1;
                    continue;
                }
                if s <= self.z[k as usize] {
                    // k == 0 and the new parabola dominates from the left.
                    self.v[0] = q;
                    self.z[0] = f64::NEG_INFINITY;
                    self.z[1] = f64::INFINITY;
                    break;
                }
                k += 1;
                self.v[k as usize] = q;
                self.z[k as usize] = s;
                self.z[k as usize + 1] = f64::INFINITY;
                break;
            }
        }
        if k < 0 {
            out.fill(f64::INFINITY);
            return;
        }
        let mut j = 0usize;
        for (q, o) in out.iter_mut().enumerate() {
            while self.z[j + 1] < q as f64 {
                j += 1;
            }
            let p = self.v[j];
            let dq = q as f64 - p as f64;
            *o = w * dq * dq + f[p];
        }
    }
}

/// Signed Euclidean distance in millimetres to the mask boundary shell.
///
/// The shell is the set of foreground voxels with a 6-connected background
/// neighbour inside the grid; it has value 0. Background voxels are positive
/// (distance to the nearest foreground voxel) and the remaining foreground
/// voxels negative (distance to the shell). An empty mask yields `+∞`
/// everywhere; a mask without background is an error.
pub fn signed_distance(mask: &BinaryMask) -> Result<ScalarVolume> {
    Ok(signed_distance_f64(mask)?.map(|&d| d as f32))
}

pub(crate) fn signed_distance_f64(mask: &BinaryMask) -> Result<Volume<f64>> {
    let grid = *mask.grid();
    let fg = mask.data();
    if fg.iter().all(|&b| b) {
        return Err(Error::EmptySupport(
            "signed distance needs at least one background voxel".into(),
        ));
    }
    let dims = grid.dims();
    let spacing = grid.spacing();
    let shell = boundary_shell(mask);
    let to_fg = squared_distance_to(dims, fg, spacing);
    let to_shell = squared_distance_to(dims, &shell, spacing);
    let data = fg
        .iter()
        .zip(to_fg.iter().zip(&to_shell))
        .map(|(&inside, (&dout, &din))| if inside { -din.sqrt() } else { dout.sqrt() })
        .collect();
    Volume::new(grid, data)
}

fn boundary_shell(mask: &BinaryMask) -> Vec<bool> {
    let grid = mask.grid();
    let [nx, ny, nz] = grid.dims();
    let fg = mask.data();
    let mut shell = vec![false; fg.len()];
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                let idx = grid.linear_index([i, j, k]);
                if !fg[idx] {
                    continue;
                }
                let neighbours = [
                    (i > 0).then(|| idx - 1),
                    (i + 1 < nx).then(|| idx + 1),
                    (j > 0).then(|| idx - nx),
                    (j + 1 < ny).then(|| idx + nx),
                    (k > 0).then(|| idx - nx * ny),
                    (k + 1 < nz).then(|| idx + nx * ny),
                ];
                shell[idx] = neighbours.iter().flatten().any(|&n| !fg[n]);
            }
        }
    }
    shell
}
