//! Canonical subspaces over ℚ: sums, intersections and diagonal images.
//!
//!     cargo run --example subspace_calculus

use ia_workbench::rational::to_text;
use ia_workbench::{DiagMap, Subspace};

fn show(label: &str, v: &Subspace) {
    let rows: Vec<String> =
        v.basis().iter().map(|r| format!("({})", r.iter().map(to_text).collect::<Vec<_>>().join(", "))).collect();
    println!("{label:<12} dim {}  basis [{}]", v.dim(), rows.join(" "));
}

fn main() -> ia_workbench::Result<()> {
    let a = Subspace::from_int_rows(&[vec![1, 0, 0], vec![0, 1, 0]], 3)?;
    let b = Subspace::from_int_rows(&[vec![0, 1, 0], vec![0, 0, 1]], 3)?;
    show("A", &a);
    show("B", &b);
    show("A + B", &a.sum(&b)?);
    show("A ∩ B", &a.intersect(&b)?);

    // proportional rows collapse
    show("span{2,4;1,2}", &Subspace::from_int_rows(&[vec![2, 4], vec![1, 2]], 2)?);

    let line = Subspace::from_int_rows(&[vec![1, 1]], 2)?;
    let m = DiagMap::from_ints(&[2, 3], 1)?;
    show("diag(2,3)·L", &line.apply(&m)?);
    show("back", &line.apply(&m)?.apply(&m.inverse())?);

    // block lift: each period repeats the same gains
    let h = DiagMap::from_ints(&[5, 7], 2)?;
    println!("I_2 ⊗ diag(5,7) = diag({})", h.entries().iter().map(to_text).collect::<Vec<_>>().join(", "));
    Ok(())
}
