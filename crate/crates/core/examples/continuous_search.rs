// Continuous-time search: the target probability climbs to one at
// `t* = π/(2Ex)`, and an RK4 integration agrees with the closed form.

use unary_search::continuous::ContinuousProblem;
use unary_search::Result;

pub fn run_example() -> Result<()> {
    let problem = ContinuousProblem::uniform(100, 5, 1.0)?;
    let peak = problem.time_to_peak()?;
    println!("x = {:.3}, t* = {peak:.6}", problem.x());

    for point in problem.series(peak, 6)? {
        println!(
            "  t = {:>9.4}  P = {:.6}",
            point.t, point.target_probability
        );
    }

    let rk4 = problem.evolve_oracle(peak, 1e-3)?;
    println!(
        "RK4 at t*: P = {:.9}, norm drift {:.1e}",
        rk4.state.probability(5)?,
        rk4.norm_drift
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
