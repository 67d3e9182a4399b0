use crate::error::{Error, Result};
use crate::volume::{ScalarVolume, Volume};

/// Kernel half-width in standard deviations.
const TRUNCATE: f64 = 4.0;

fn kernel(sigma_vox: f64) -> Vec<f64> {
    let radius = (TRUNCATE * sigma_vox).ceil().max(1.0) as isize;
    let mut k: Vec<f64> = (-radius..=radius)
        .map(|x| (-0.5 * (x as f64 / sigma_vox).powi(2)).exp())
        .collect();
    let sum: f64 = k.iter().sum();
    k.iter_mut().for_each(|v| *v /= sum);
    k
}

/// Half-sample symmetric reflection: `... b a | a b c ... z | z y ...`.
fn reflect(i: isize, n: usize) -> usize {
    let n = n as isize;
    let period = 2 * n;
    let m = i.rem_euclid(period);
    (if m < n { m } else { period - 1 - m }) as usize
}

/// Separable Gaussian filter with standard deviations given in millimetres,
/// truncated at four standard deviations, with reflecting borders. The
/// output is clamped to the input's value range.
pub fn gaussian_smooth(volume: &ScalarVolume, sigmas_mm: [f64; 3]) -> Result<ScalarVolume> {
    if sigmas_mm.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
        return Err(Error::InvalidParameter(format!(
            "Gaussian sigmas must be positive, got {sigmas_mm:?}"
        )));
    }
    let grid = *volume.grid();
    let dims = grid.dims();
    let spacing = grid.spacing();
    let (lo, hi) = volume
        .data()
        .iter()
        .fold((f32::INFINITY, f32::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });

    let mut data: Vec<f64> = volume.data().iter().map(|&v| v as f64).collect();
    let strides = [1, dims[0], dims[0] * dims[1]];
    let mut line = Vec::new();
    for axis in 0..3 {
        let k = kernel(sigmas_mm[axis] / spacing[axis]);
        let radius = (k.len() / 2) as isize;
        let n = dims[axis];
        let stride = strides[axis];
        let others: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
        line.resize(n, 0.0);
        for b in 0..dims[others[1]] {
            for a in 0..dims[others[0]] {
                let base = a * strides[others[0]] + b * strides[others[1]];
                for t in 0..n {
                    line[t] = data[base + t * stride];
                }
                for t in 0..n {
                    let mut acc = 0.0;
                    for (o, w) in k.iter().enumerate() {
                        let src = reflect(t as isize + o as isize - radius, n);
                        acc += w * line[src];
                    }
                    data[base + t * stride] = acc;
                }
            }
        }
    }
    Volume::new(
        grid,
        data.into_iter().map(|v| (v as f32).clamp(lo, hi)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::volume::Grid;

    #[test]
    fn reflect_indices() {
        assert_eq!(reflect(-1, 4), 0);
        assert_eq!(reflect(-2, 4), 1);
        assert_eq!(reflect(4, 4), 3);
        assert_eq!(reflect(5, 4), 2);
        assert_eq!(reflect(9, 4), 1);
        assert_eq!(reflect(0, 1), 0);
        assert_eq!(reflect(-3, 1), 0);
    }

    #[test]
    fn constant_volume_is_unchanged() {
        let g = Grid::new([7, 5, 3], [1.0, 0.5, 2.0], [0.0; 3]).unwrap();
        let v = Volume::filled(g, 3.25f32);
        let s = gaussian_smooth(&v, [1.0, 2.0, 0.7]).unwrap();
        assert!(s.data().iter().all(|&x| (x - 3.25).abs() < 1e-6));
    }

    #[test]
    fn impulse_response_is_sampled_gaussian() {
        let g = Grid::with_dims([21; 3]).unwrap();
        let v = Volume::from_fn(g, |p| if p == [10, 10, 10] { 1.0f32 } else { 0.0 });
        let s = gaussian_smooth(&v, [1.0; 3]).unwrap();
        // Independent oracle: normalized sampled Gaussian over the full lattice.
        let z1: f64 = (-30..=30).map(|x: i32| (-0.5 * (x * x) as f64).exp()).sum();
        for k in 6..15usize {
            for j in 6..15usize {
                for i in 6..15usize {
                    let r2 = [i, j, k]
                        .iter()
                        .map(|&c| (c as f64 - 10.0).powi(2))
                        .sum::<f64>();
                    let expect = (-0.5 * r2).exp() / z1.powi(3);
                    let got = *s.get([i, j, k]) as f64;
                    if expect > 1e-6 {
                        assert!(
                            (got - expect).abs() / expect < 1e-3,
                            "{i},{j},{k}: {got} vs {expect}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mask_stays_in_unit_interval_and_saturates() {
        let g = Grid::with_dims([40, 40, 40]).unwrap();
        let m = Volume::from_fn(g, |[i, j, k]| {
            (10..30).contains(&i) && (10..30).contains(&j) && (10..30).contains(&k)
        });
        let s = gaussian_smooth(&m.to_scalar(), [1.0; 3]).unwrap();
        assert!(s.data().iter().all(|&x| (0.0..=1.0).contains(&x)));
        assert!((s.get([20, 20, 20]) - 1.0).abs() < 1e-4);
        assert!(s.get([2, 20, 20]).abs() < 1e-4);
    }

    #[test]
    fn interior_mass_is_preserved() {
        let g = Grid::with_dims([30, 30, 30]).unwrap();
        let v = Volume::from_fn(g, |[i, j, k]| {
            if (12..18).contains(&i) && (12..18).contains(&j) && (12..18).contains(&k) {
                ((i + 2 * j + 3 * k) % 5) as f32
            } else {
                0.0
            }
        });
        let s = gaussian_smooth(&v, [1.2, 0.8, 1.0]).unwrap();
        let a: f64 = v.data().iter().map(|&x| x as f64).sum();
        let b: f64 = s.data().iter().map(|&x| x as f64).sum();
        assert!((a - b).abs() / a < 1e-6);
    }

    #[test]
    fn rejects_non_positive_sigma() {
        let v = Volume::filled(Grid::with_dims([2, 2, 2]).unwrap(), 0.0f32);
        assert!(gaussian_smooth(&v, [1.0, 0.0, 1.0]).is_err());
    }
}
