//! Weld a tilted segment into its driving function. For a straight slit at
//! angle `πa` the driving function is `U(t) = κ·√t` with a fixed `κ`.

use loewner::chordal::weld;
use loewner::PolylineSlit;
use num_complex::Complex64;

fn main() -> loewner::Result<()> {
    let slit = PolylineSlit::segment(0.0, Complex64::from_polar(1.0, 1.0))?;
    let (path, map) = weld(&slit, 1e-4)?;
    println!("capacity {:.8} in {} elementary maps", path.final_time(), map.len());
    println!("{:>10} {:>12} {:>12}", "t", "U(t)", "U(t)/sqrt(t)");
    for k in 1..=8 {
        let t = path.final_time() * f64::from(k) / 8.0;
        println!("{t:>10.6} {:>12.8} {:>12.8}", path.u_at(t), path.u_at(t) / t.sqrt());
    }
    Ok(())
}
