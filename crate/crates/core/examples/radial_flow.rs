//! Radial Loewner flow with a rotating driving point: the origin is fixed and
//! `g_T′(0) = e^T`.

use loewner::radial::{radial_solve_forward, RadialDrivingPath};
use num_complex::Complex64;

fn main() -> loewner::Result<()> {
    let t_end = 0.4;
    let path = RadialDrivingPath::from_angle_fn(t_end, 100, |t| 3.0 * t)?;
    let h = 1e-5;
    let d = (radial_solve_forward(&path, Complex64::new(h, 0.0))? - radial_solve_forward(&path, Complex64::new(-h, 0.0))?)
        / (2.0 * h);
    println!("|g'(0)| = {:.8}, e^T = {:.8}", d.norm(), t_end.exp());
    for r in [0.2, 0.5, 0.8] {
        let z = Complex64::new(-r, 0.0);
        let g = radial_solve_forward(&path, z)?;
        println!("g({z}) = {:.6}{:+.6}i  |g| = {:.6}", g.re, g.im, g.norm());
    }
    Ok(())
}
