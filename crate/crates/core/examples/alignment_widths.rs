//! Extension, contraction and the alignment width of a subspace along a
//! diagonal map, including second-order widths.
//!
//!     cargo run --example alignment_widths

use ia_workbench::alignment::{alignment_width, contract, extend, second_order};
use ia_workbench::channel::{sample_instance, t_family};
use ia_workbench::Subspace;

fn main() -> ia_workbench::Result<()> {
    let inst = sample_instance(4, 6, 1, 16, 11)?;
    let fam = t_family(&inst, 1)?;
    let (t1, t2) = (fam.map(0), fam.map(1));
    let v = Subspace::from_int_rows(&[vec![1, 1, 1, 1, 1, 1], vec![0, 1, 2, 3, 4, 5], vec![1, 0, 0, 0, 0, 1]], 6)?;

    let r = alignment_width(&v, t1)?;
    println!(
        "dim V = {}, dim e V = {}, dim c V = {}, width {}",
        r.dim_before, r.dim_after_extend, r.dim_after_contract, r.width
    );
    for n in 0..=3 {
        println!("n={n}: dim e^n V = {}, dim c^n V = {}", extend(&v, t1, n)?.dim(), contract(&v, t1, n)?.dim());
    }

    // a coordinate subspace is perfectly aligned
    let axes = Subspace::coordinate(&[0, 3], 6)?;
    println!("coordinate subspace width: {}", alignment_width(&axes, t1)?.width);

    let so = second_order(&v, t1, t2)?;
    println!("second order: ext2 = {}, con2 = {}", so.ext2, so.con2);
    Ok(())
}
