// One coin per slot: how many box transits until the gold is found?

use unary_search::oracle::{expected_classical_transits, run_classical_search, ClassicalStrategy};
use unary_search::Result;

pub fn run_example() -> Result<()> {
    let n = 100;
    let (slot, worst) = run_classical_search(n, n, ClassicalStrategy::Sequential, 0)?;
    println!(
        "sequential probe, gold in the last slot: found {slot} after {} transits",
        worst.transits
    );
    println!("bill: {}", worst.to_json());

    let total: u64 = (1..=n)
        .map(|target| {
            run_classical_search(
                n,
                target,
                ClassicalStrategy::RandomWithoutReplacement,
                target as u64,
            )
            .map(|(_, report)| report.transits)
        })
        .sum::<Result<u64>>()?;
    println!(
        "random order, one run per target: mean {:.2} transits (exact mean {:.2})",
        total as f64 / n as f64,
        expected_classical_transits(n)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
