// Rasterizing a closed surface onto a voxel grid.

use std::f64::consts::PI;

use cavity_sim::geometry::{
    apply_transform, ellipsoid_semiaxes, icosphere, make_transform_chain, VolumeMode,
};
use cavity_sim::volume::{voxelize, Grid};

pub fn run_example() -> cavity_sim::Result<Vec<(f64, f64)>> {
    let grid = Grid::new([96, 96, 96], [0.5, 0.5, 0.5], [-23.75, -23.75, -23.75])?;
    let sphere = icosphere(16)?;
    let mut rows = Vec::new();
    for lambda in [1.0, 1.5, 2.0] {
        let axes = ellipsoid_semiaxes(4188.79, lambda, VolumeMode::ExactVolume)?;
        let chain = make_transform_chain([0.0; 3], [0.4, 0.2, 1.0], &axes, [0.3, -0.2, 0.1]);
        let surface = apply_transform(&sphere, &chain)?;
        let mask = voxelize(&surface, &grid)?;
        let voxels = mask.foreground_volume();
        let polyhedron = surface.signed_volume();
        println!(
            "lambda {lambda}: axes {:.2} x {:.2} x {:.2} mm, ellipsoid {:.0} mm3, polyhedron {polyhedron:.0} mm3, voxels {voxels:.0} mm3",
            axes.r1,
            axes.r2,
            axes.r3,
            4.0 / 3.0 * PI * axes.r1 * axes.r2 * axes.r3
        );
        rows.push((polyhedron, voxels));
    }
    Ok(rows)
}

fn main() -> cavity_sim::Result<()> {
    run_example()?;
    Ok(())
}
