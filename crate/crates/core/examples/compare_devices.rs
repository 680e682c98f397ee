// Prices the five device classes side by side and prints the table as CSV.

use unary_search::report::{
    compare, render_table, resource_profile, CompareConfig, DeviceKind, Format,
};
use unary_search::Result;

pub fn run_example() -> Result<()> {
    let config = CompareConfig {
        trials: 2_000,
        ..CompareConfig::default()
    };
    let rows = compare(&[4, 16, 64], &config)?;
    print!("{}", render_table(&rows, Format::Csv)?);

    for kind in DeviceKind::ALL {
        let p = resource_profile(kind, 1024)?;
        println!(
            "{:<18} resources {:<10} consultations {:<10} at n = 1024: {} / {}",
            kind.as_str(),
            p.resources_order,
            p.consultations_order,
            p.resources_count,
            p.consultations_count
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
