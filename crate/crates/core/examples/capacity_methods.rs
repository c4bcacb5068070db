//! The three capacity estimators on the vertical unit segment, whose
//! capacity is exactly 1/2.

use std::f64::consts::PI;

use loewner::capacity::{hcap_mc, hcap_zipper, segment_capacity};
use loewner::{Hull, PolylineSlit};
use num_complex::Complex64;

fn main() -> loewner::Result<()> {
    let hull = Hull::single(PolylineSlit::segment(0.0, Complex64::new(0.0, 1.0))?);
    println!("closed form  {}", segment_capacity(PI / 2.0, 1.0)?);
    let z = hcap_zipper(&hull)?;
    println!("zipper       {:.10} ± {:.1e}", z.value, z.err);
    let mc = hcap_mc(&hull, 200_000, 1)?;
    println!("monte carlo  {:.5} ± {:.1e} (one sigma)", mc.value, mc.err);
    Ok(())
}
