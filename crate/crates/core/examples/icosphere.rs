// Geodesic spheres and their noisy radial perturbation.
//
// Writes `sphere.ply` and `perturbed.ply` to the directory given as the
// first argument (default `target/example-output/icosphere`).

use std::path::{Path, PathBuf};

use cavity_sim::geometry::{icosphere, perturb_radially, NoiseParams, SimplexNoise};
use cavity_sim::io::write_ply;

pub fn run_example(out: &Path) -> cavity_sim::Result<(usize, f64, f64)> {
    for f in [1, 2, 4, 8, 16] {
        let s = icosphere(f)?;
        println!(
            "f = {f:2}: {:5} vertices, {:5} faces, {:5} edges, Euler {}",
            s.vertex_count(),
            s.face_count(),
            s.edge_count(),
            s.euler_characteristic()
        );
    }

    let sphere = icosphere(16)?;
    let noise = SimplexNoise::new(NoiseParams {
        octaves: 4,
        persistence: 0.5,
        scale: 3.0,
        shift: [417.0, 12.5, 903.0],
    })?;
    let perturbed = perturb_radially(&sphere, &noise)?;
    let (lo, hi) = perturbed
        .radii()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        });
    println!(
        "perturbed radii in [{lo:.3}, {hi:.3}], watertight: {}",
        perturbed.is_watertight()
    );

    std::fs::create_dir_all(out).map_err(|e| cavity_sim::Error::Io {
        path: out.into(),
        source: e,
    })?;
    write_ply(out.join("sphere.ply"), &sphere)?;
    write_ply(out.join("perturbed.ply"), &perturbed)?;
    Ok((perturbed.vertex_count(), lo, hi))
}

fn main() -> cavity_sim::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("target/example-output/icosphere"));
    run_example(&out)?;
    println!("meshes written to {}", out.display());
    Ok(())
}
