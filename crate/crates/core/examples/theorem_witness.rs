//! Explicit witness for the quadratic diversity bound: contract, pick a dense
//! vector, extend a grid and compare with the sparsity of the subspace.
//!
//!     cargo run --example theorem_witness

use ia_workbench::alignment::grid_span;
use ia_workbench::channel::{sample_instance, t_family};
use ia_workbench::rational::{frac, int, to_text};
use ia_workbench::verify::grid_witness;

fn main() -> ia_workbench::Result<()> {
    let inst = sample_instance(4, 10, 1, 16, 0)?;
    let fam = t_family(&inst, 1)?;
    let (t1, t2) = (fam.map(0), fam.map(1));
    // D = 4 in L = 10, so eps = 1/5 and widths may reach 4
    let v = grid_span(&vec![int(1); 10], &[t1, t2], &[1, 1])?;
    for n in 1..=v.dim() {
        let w = grid_witness(&v, t1, t2, n, &frac(1, 5), 10)?;
        println!(
            "N={n}: sp_N={} n1={} n2={} |x|={} grid dim {} law {} inequality {}",
            w.sp_n, w.n1, w.n2, w.x_support, w.grid_dim, w.grid_law_holds, w.inequality_holds
        );
    }
    let w = grid_witness(&v, t1, t2, 1, &frac(1, 5), 10)?;
    println!("eps = {}", to_text(&w.eps));
    Ok(())
}
