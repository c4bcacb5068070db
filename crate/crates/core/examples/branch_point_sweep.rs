//! Capacity derivative at a branch point: two segments leaving 0 at angles
//! spreading from π/2 toward 0 and π. It stays between `max(b₁, b₂)` and
//! `b₁ + b₂` and approaches the sum.

use std::f64::consts::PI;

use loewner::experiments::branch_sweep;

fn main() -> loewner::Result<()> {
    let pairs: Vec<(f64, f64)> = [0.5, 0.4, 0.25, 0.1, 0.05].iter().map(|&a| (a * PI, (1.0 - a) * PI)).collect();
    let sweep = branch_sweep(&pairs, 1.0, 1.0)?;
    print!("{}", sweep.to_csv());
    println!("all bounds hold: {}", sweep.summary().pass);
    Ok(())
}
