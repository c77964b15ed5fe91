//! Walks a subspace through its map family, extending while the average
//! width stays under the thresholds.
//!
//!     cargo run --example adaptive_walk

use ia_workbench::alignment::{adaptive_walk, average_width, WalkMode};
use ia_workbench::channel::{sample_instance, t_family};
use ia_workbench::rational::{int, to_text};
use ia_workbench::Subspace;

fn main() -> ia_workbench::Result<()> {
    let inst = sample_instance(5, 6, 1, 16, 2)?;
    let fam = t_family(&inst, 1)?;
    let w = Subspace::from_int_rows(&[vec![1, 2, 0, 1, 0, 3], vec![0, 1, 1, 0, 2, 1], vec![1, 0, 0, 1, 1, 1]], 6)?;
    let avg = average_width(&w, &fam)?;
    println!("M = {}, avg width {}", fam.m(), to_text(&avg));

    let s: Vec<usize> = (0..fam.m()).collect();
    let a: Vec<_> = (1..=3).map(|i| &avg + int(i)).collect();
    for mode in [WalkMode::Extension, WalkMode::Contraction] {
        let r = adaptive_walk(&w, &fam, &s, &a, mode)?;
        println!(
            "{mode:?}: {:?} after {} steps, dim {} -> {}, delta {}, avg {} -> {}",
            r.case_tag,
            r.n_tilde,
            w.dim(),
            r.w_tilde.dim(),
            to_text(&r.delta),
            to_text(&r.avg_width_before),
            to_text(&r.avg_width_after)
        );
        println!(
            "  width guarantee {}, sparsity guarantee {}",
            r.width_guarantee_holds(&a),
            r.sparsity_guarantee_holds(&w, 6, 1)?
        );
    }
    Ok(())
}
