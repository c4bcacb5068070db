//! Two far-apart slits grown jointly so that the total capacity is `s`, with
//! the first slit's own capacity prescribed. A kink in that prescription
//! shows up as a jump in `λ₁`.

use loewner::experiments::{joint_parametrization, kinked_reparam_demo};
use loewner::PolylineSlit;
use num_complex::Complex64;

fn main() -> loewner::Result<()> {
    let a = PolylineSlit::segment(-5.0, Complex64::new(-5.0, 1.2))?;
    let b = PolylineSlit::segment(5.0, Complex64::new(5.0, 1.2))?;
    let s: Vec<f64> = (0..=10).map(|k| 0.05 * f64::from(k)).collect();
    let u1: Vec<f64> = s.iter().map(|s| 0.3 * s).collect();
    let j = joint_parametrization(&a, &b, &u1, &s)?;
    print!("{}{}", j.to_csv(), j.lambda_csv());
    let k = kinked_reparam_demo(&a, &b, 0.1)?;
    println!("λ₁ jump at s = 1/2: {:.4} (slope change {:.4})", k.jump, k.slope_before - k.slope_after);
    Ok(())
}
