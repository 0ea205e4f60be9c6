//! Solve the manufactured benchmark and report its max error M1.

use lfade::benchmarks::{example2_exact, example2_problem, max_error_over_history};
use lfade::solver::solve;

fn main() -> lfade::Result<()> {
    let problem = example2_problem(1.4, -0.5, 0.5, 0.01)?;
    let solution = solve(&problem, 6)?;
    let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let m1 = max_error_over_history(&solution, example2_exact, &grid)?;
    println!("M1 = {m1:.3e}");
    Ok(())
}
