//! Two vertical segments at distinct bases: `c(t)/t → b₁ + b₂` as `t → 0`.

use std::f64::consts::PI;

use loewner::capacity::SegmentSpec;
use loewner::experiments::{disjoint_sum_check, DisjointRow};

fn main() -> loewner::Result<()> {
    let s1 = SegmentSpec::new(PI / 2.0, 0.3, -1.0)?;
    let s2 = SegmentSpec::new(PI / 3.0, 0.7, 1.0)?;
    let rows = disjoint_sum_check(&s1, &s2, &[1.0, 0.1, 0.01, 0.001])?;
    print!("{}", DisjointRow::csv(&rows));
    Ok(())
}
