// A single neutron finds the gold among 100 slots in seven passes.

use unary_search::grover::{optimal_iterations, run_search, Iterations, SearchConfig};
use unary_search::Result;

pub fn run_example() -> Result<()> {
    let n = 100;
    let target = 37;
    let schedule = optimal_iterations(n)?;
    println!(
        "n = {n}: {} passes, predicted success {:.6}",
        schedule.k, schedule.predicted_success
    );

    let config = SearchConfig {
        iterations: Iterations::Auto,
        seed: 7,
        bill_final_transit: false,
    };
    let outcome = run_search(n, target, &config)?;
    for point in &outcome.trace {
        println!(
            "  after {:>2} passes: P(target) = {:.6}",
            point.iteration, point.target_probability
        );
    }
    println!(
        "detector fired at slot {} ({}), {} transits billed",
        outcome.measured_slot,
        if outcome.success { "hit" } else { "miss" },
        outcome.transits
    );

    let hits = (0..1000u64)
        .filter_map(|seed| run_search(n, target, &SearchConfig { seed, ..config }).ok())
        .filter(|o| o.success)
        .count();
    println!("hits over 1000 seeded runs: {hits}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
