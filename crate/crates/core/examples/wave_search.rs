// Classical light through the same box: direct illumination costs `n·κσ²`,
// recycling through the interferometer costs about `√n·κσ²`.

use unary_search::wave::{
    cost_scaling_table, direct_search, interferometric_search, DetectorModel, WaveConfig,
};
use unary_search::Result;

pub fn run_example() -> Result<()> {
    let detector = DetectorModel::default();
    let config = WaveConfig::default();

    let direct = direct_search(100, 42, &detector, &config)?;
    let recycled = interferometric_search(100, 42, &detector, &config)?;
    println!(
        "direct:          found {:?}, cost {:.3}",
        direct.found_slot, direct.integrated_cost
    );
    println!(
        "interferometric: found {:?}, cost {:.3} over {} passes",
        recycled.found_slot, recycled.integrated_cost, recycled.passes
    );

    let table = cost_scaling_table(&[4, 16, 64, 256, 1024], &detector)?;
    println!(
        "{:>6} {:>12} {:>12} {:>7}",
        "n", "direct", "recycled", "ratio"
    );
    for row in &table.rows {
        println!(
            "{:>6} {:>12.2} {:>12.2} {:>7.2}",
            row.n,
            row.direct_cost,
            row.interferometric_cost,
            row.ratio.unwrap_or(f64::NAN)
        );
    }
    if let Some(c) = table.sqrt_coefficient {
        println!("direct/recycled ratio fits {c:.3}·√n");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
