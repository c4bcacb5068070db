//! Capacity added by a small piece of one slit, seen through the map of the
//! other, against the squared boundary derivative of that map.

use loewner::experiments::alpha_mu_lambda_check;
use loewner::PolylineSlit;
use num_complex::Complex64;

fn main() -> loewner::Result<()> {
    let a = PolylineSlit::segment(0.0, Complex64::new(0.0, 1.0))?;
    let b = PolylineSlit::segment(1.0, Complex64::new(1.0, 1.0))?;
    let r = alpha_mu_lambda_check(&a, &b, 0.0, &[1e-2, 1e-3, 1e-4])?;
    println!("α² = {:.8}", r.alpha * r.alpha);
    print!("{}", r.to_csv());
    Ok(())
}
