//! Fractal 3D simplex noise and the radial displacement field built on it.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point3;

/// Octave count, persistence, spatial scale and shift of the fractal noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    pub octaves: u32,
    pub persistence: f64,
    pub scale: f64,
    pub shift: Point3,
}

impl NoiseParams {
    pub fn validate(&self) -> Result<()> {
        if self.octaves == 0 {
            return Err(Error::InvalidParameter("noise octaves must be >= 1".into()));
        }
        if !(self.persistence > 0.0 && self.persistence <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "noise persistence {} outside (0, 1]",
                self.persistence
            )));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "noise scale {} must be positive",
                self.scale
            )));
        }
        if self.shift.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidParameter("noise shift must be finite".into()));
        }
        Ok(())
    }

    /// 64-bit seed for the permutation table, derived from the shift bits.
    fn permutation_seed(&self) -> u64 {
        // FNV-1a over the IEEE bytes of the three components.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for c in self.shift {
            for b in c.to_bits().to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}

/// A scalar field `R³ → [-1, 1]` used to push mesh vertices along their
/// radial direction.
pub trait Displacement: Sync {
    fn displacement(&self, p: Point3) -> f64;
}

/// Uniform displacement, mostly useful for isolating the geometry from noise.
#[derive(Debug, Clone, Copy)]
pub struct ConstantDisplacement(pub f64);

impl Displacement for ConstantDisplacement {
    fn displacement(&self, _p: Point3) -> f64 {
        self.0
    }
}

const GRAD3: [[f64; 3]; 12] = [
    [1.0, 1.0, 0.0],
    [-1.0, 1.0, 0.0],
    [1.0, -1.0, 0.0],
    [-1.0, -1.0, 0.0],
    [1.0, 0.0, 1.0],
    [-1.0, 0.0, 1.0],
    [1.0, 0.0, -1.0],
    [-1.0, 0.0, -1.0],
    [0.0, 1.0, 1.0],
    [0.0, -1.0, 1.0],
    [0.0, 1.0, -1.0],
    [0.0, -1.0, -1.0],
];

/// Fractal simplex noise with a permutation table seeded from the shift.
#[derive(Debug, Clone)]
pub struct SimplexNoise {
    params: NoiseParams,
    perm: [u8; 512],
}

impl SimplexNoise {
    pub fn new(params: NoiseParams) -> Result<Self> {
        params.validate()?;
        let mut table: Vec<u8> = (0..=255).collect();
        table.shuffle(&mut ChaCha8Rng::seed_from_u64(params.permutation_seed()));
        let mut perm = [0u8; 512];
        for i in 0..512 {
            perm[i] = table[i & 255];
        }
        Ok(Self { params, perm })
    }

    pub fn params(&self) -> &NoiseParams {
        &self.params
    }

    /// Single-octave simplex noise, clamped to `[-1, 1]`.
    fn simplex(&self, x: f64, y: f64, z: f64) -> f64 {
        const F3: f64 = 1.0 / 3.0;
        const G3: f64 = 1.0 / 6.0;
        let perm = &self.perm;

        let s = (x + y + z) * F3;
        let i = (x + s).floor();
        let j = (y + s).floor();
        let k = (z + s).floor();
        let t = (i + j + k) * G3;
        let x0 = x - (i - t);
        let y0 = y - (j - t);
        let z0 = z - (k - t);

        // Which of the six tetrahedra of the skewed cube holds the point.
        let (i1, j1, k1, i2, j2, k2) = if x0 >= y0 {
            if y0 >= z0 {
                (1, 0, 0, 1, 1, 0)
            } else if x0 >= z0 {
                (1, 0, 0, 1, 0, 1)
            } else {
                (0, 0, 1, 1, 0, 1)
            }
        } else if y0 < z0 {
            (0, 0, 1, 0, 1, 1)
        } else if x0 < z0 {
            (0, 1, 0, 0, 1, 1)
        } else {
            (0, 1, 0, 1, 1, 0)
        };

        let offsets = [
            (x0, y0, z0),
            (
                x0 - i1 as f64 + G3,
                y0 - j1 as f64 + G3,
                z0 - k1 as f64 + G3,
            ),
            (
                x0 - i2 as f64 + 2.0 * G3,
                y0 - j2 as f64 + 2.0 * G3,
                z0 - k2 as f64 + 2.0 * G3,
            ),
            (
                x0 - 1.0 + 3.0 * G3,
                y0 - 1.0 + 3.0 * G3,
                z0 - 1.0 + 3.0 * G3,
            ),
        ];
        let ii = i.rem_euclid(256.0) as usize;
        let jj = j.rem_euclid(256.0) as usize;
        let kk = k.rem_euclid(256.0) as usize;
        let corners = [(0, 0, 0), (i1, j1, k1), (i2, j2, k2), (1, 1, 1)];

        let mut n = 0.0;
        for (&(dx, dy, dz), &(ci, cj, ck)) in offsets.iter().zip(&corners) {
            let t = 0.6 - dx * dx - dy * dy - dz * dz;
            if t > 0.0 {
                let gi =
                    perm[ii + ci + perm[jj + cj + perm[kk + ck] as usize] as usize] as usize % 12;
                let g = GRAD3[gi];
                let t2 = t * t;
                n += t2 * t2 * (g[0] * dx + g[1] * dy + g[2] * dz);
            }
        }
        (32.0 * n).clamp(-1.0, 1.0)
    }

    /// Normalized octave sum in `[0, 1]` at an already mapped point.
    fn fractal(&self, q: Point3) -> f64 {
        let mut total = 0.0;
        let mut weight_sum = 0.0;
        let mut amplitude = 1.0;
        let mut frequency = 1.0;
        for _ in 0..self.params.octaves {
            let raw = self.simplex(q[0] * frequency, q[1] * frequency, q[2] * frequency);
            total += amplitude * (raw + 1.0) / 2.0;
            weight_sum += amplitude;
            amplitude *= self.params.persistence;
            frequency *= 2.0;
        }
        (total / weight_sum).clamp(0.0, 1.0)
    }

    /// Noise value in `[0, 1]` at `p`, after shifting by the noise shift and
    /// dividing by the noise scale.
    pub fn value(&self, p: Point3) -> f64 {
        let NoiseParams { shift, scale, .. } = self.params;
        self.fractal([0, 1, 2].map(|i| (p[i] + shift[i]) / scale))
    }
}

impl Displacement for SimplexNoise {
    fn displacement(&self, p: Point3) -> f64 {
        2.0 * self.value(p) - 1.0
    }
}

/// One-off evaluation of the noise in `[0, 1]`. Prefer [`SimplexNoise`] when
/// sampling many points with the same parameters.
pub fn noise_value(p: Point3, params: &NoiseParams) -> Result<f64> {
    Ok(SimplexNoise::new(*params)?.value(p))
}

/// Radial displacement in `[-1, 1]`: twice the noise value minus one.
pub fn displacement(p: Point3, params: &NoiseParams) -> Result<f64> {
    Ok(SimplexNoise::new(*params)?.displacement(p))
}
