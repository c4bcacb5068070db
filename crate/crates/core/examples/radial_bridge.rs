//! Mapping radius of disk slits and the bridge `hcap ≈ 2·lmr` for small hulls
//! attached at 1.

use loewner::radial::{bridge_check, bridge_csv, lmr_of_boundary_slit};
use loewner::{Hull, PolylineSlit};
use num_complex::Complex64;

fn main() -> loewner::Result<()> {
    let one = Complex64::new(1.0, 0.0);
    let radial = PolylineSlit::disk(one, vec![Complex64::new(0.5, 0.0)])?;
    let lmr = lmr_of_boundary_slit(&radial)?;
    println!("lmr of [0.5, 1] = {:.12} (log(9/8) = {:.12})", lmr.value, (9.0f64 / 8.0).ln());
    let v = Hull::new(vec![
        PolylineSlit::disk(one, vec![Complex64::new(0.8, 0.15)])?,
        PolylineSlit::disk(one, vec![Complex64::new(0.8, -0.15)])?,
    ])?;
    print!("{}", bridge_csv(&bridge_check(&v, &[1e-1, 1e-2, 1e-3])?));
    Ok(())
}
