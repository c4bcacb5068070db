//! A self-similar slit and its mirror image whose union has a capacity that
//! is not linear in the half-plane parametrization of either slit.

use loewner::experiments::counterexample_capacity_table;

fn main() -> loewner::Result<()> {
    for eps in [0.0, 0.05] {
        let r = counterexample_capacity_table(eps, 8, None)?;
        println!("ε = {eps}");
        print!("{}", r.table.to_csv());
        println!("difference quotient over [t1, t2] = {:.6}", r.quotient);
        println!("self-similarity residuals {:?}\n", r.residuals);
    }
    Ok(())
}
