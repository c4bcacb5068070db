//! Trace the slits generated by a few driving functions.

use loewner::chordal::{trace, DrivingPath};

fn main() -> loewner::Result<()> {
    let cases: [(&str, fn(f64) -> f64); 3] =
        [("U = 0", |_| 0.0), ("U = 2t", |t| 2.0 * t), ("U = sin(6t)", |t| (6.0 * t).sin())];
    for (name, u) in cases {
        let path = DrivingPath::from_fn(0.5, 200, u)?;
        let slit = trace(&path, 1e-3)?;
        let tip = slit.tip();
        println!("{name:<12} tip {:+.6}{:+.6}i  length {:.6}  vertices {}", tip.re, tip.im, slit.length(), slit.vertices().len());
    }
    Ok(())
}
