// Dice overlap and shape-based averaging across raters.

use cavity_sim::metrics::{dice, leave_one_out_consensus, sba_consensus, RaterSet};
use cavity_sim::volume::{BinaryMask, Grid, Volume};

fn sphere(grid: Grid, centre: [f64; 3], radius: f64) -> BinaryMask {
    Volume::from_fn(grid, |p| {
        (0..3)
            .map(|a| (p[a] as f64 - centre[a]).powi(2))
            .sum::<f64>()
            <= radius * radius
    })
}

pub fn run_example() -> cavity_sim::Result<f64> {
    let grid = Grid::with_dims([40, 40, 40])?;
    let mut raters = RaterSet::new();
    raters.push("tight", sphere(grid, [20.0, 20.0, 20.0], 8.0))?;
    raters.push("loose", sphere(grid, [20.0, 20.0, 20.0], 12.0))?;
    raters.push("shifted", sphere(grid, [22.0, 20.0, 19.0], 10.0))?;

    let names = raters.names().to_vec();
    let masks = raters.masks();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            println!(
                "Dice({}, {}) = {:.3}",
                names[i],
                names[j],
                dice(&masks[i], &masks[j])?
            );
        }
    }

    let consensus = sba_consensus(&raters)?;
    println!("consensus: {} voxels", consensus.count());
    for (name, held_out) in names.iter().zip(leave_one_out_consensus(&raters)?) {
        let own = &masks[names.iter().position(|n| n == name).unwrap()];
        println!(
            "{name} vs consensus of the others: Dice {:.3}",
            dice(own, &held_out)?
        );
    }
    dice(&masks[2], &consensus)
}

fn main() -> cavity_sim::Result<()> {
    run_example()?;
    Ok(())
}
