// Fractal simplex noise as a radial displacement field.

use cavity_sim::geometry::{displacement, NoiseParams, SimplexNoise};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> cavity_sim::Result<(f64, f64, f64)> {
    let params = NoiseParams {
        octaves: 4,
        persistence: 0.5,
        scale: 3.0,
        shift: [10.0, 20.0, 30.0],
    };
    let noise = SimplexNoise::new(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    let n = 100_000;
    let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for _ in 0..n {
        let p = [0, 1, 2].map(|_| rng.random_range(-1.0..1.0));
        let d = 2.0 * noise.value(p) - 1.0;
        lo = lo.min(d);
        hi = hi.max(d);
        sum += d;
    }
    let mean = sum / n as f64;
    println!("displacement over {n} points: min {lo:.3}, max {hi:.3}, mean {mean:.4}");

    // A different shift gives an unrelated field.
    let shifted = NoiseParams {
        shift: [500.0, 20.0, 30.0],
        ..params
    };
    for p in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] {
        println!(
            "{p:?}: {:+.4} vs {:+.4}",
            displacement(p, &params)?,
            displacement(p, &shifted)?
        );
    }
    Ok((lo, hi, mean))
}

fn main() -> cavity_sim::Result<()> {
    run_example()?;
    Ok(())
}
