//! N-sparsity profiles, exact for T = 1 and certified brackets for block
//! subspaces.
//!
//!     cargo run --example sparsity_search

use ia_workbench::sparsity::{n_sparsity, sparsity_profile, support_dim};
use ia_workbench::Subspace;

fn main() -> ia_workbench::Result<()> {
    let v = Subspace::from_int_rows(&[vec![1, 0, 0], vec![0, 1, 1]], 3)?;
    println!("support dim {}", support_dim(&v, 3, 1)?);
    for r in sparsity_profile(&v, 3, 1)? {
        println!("sp_{} = {:?} on {:?}", r.n, r.value, r.witness_support);
    }
    println!("sp_3 = {:?}", n_sparsity(&v, 3, 3, 1)?.value);

    // T = 2, L = 4: coordinates ordered period-major
    let w = Subspace::from_int_rows(
        &[vec![1, 0, 0, 0, 1, 0, 0, 0], vec![0, 1, 1, 0, 0, 2, 0, 0], vec![0, 0, 0, 1, 0, 0, 0, 3]],
        8,
    )?;
    for r in sparsity_profile(&w, 4, 2)? {
        println!(
            "block sp_{}: {:?} (lower bound {:?}, exact {}) blocks {:?}",
            r.n, r.value, r.lower_bound, r.exact, r.period_blocks
        );
    }
    Ok(())
}
