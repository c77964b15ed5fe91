//! Builds the orthogonal baseline and a random search scheme, then checks
//! the decoding condition and the two necessary conditions.
//!
//!     cargo run --example decoding_verification

use ia_workbench::channel::sample_instance;
use ia_workbench::rational::to_text;
use ia_workbench::verify::builders::{build_orthogonal_scheme, random_search};
use ia_workbench::verify::{check_sparsity_requirement, check_width_requirement, verify_decoding, Scheme};

fn report(name: &str, inst: &ia_workbench::channel::ChannelInstance, s: &Scheme) -> ia_workbench::Result<()> {
    let r = verify_decoding(inst, s)?;
    println!("{name}: dims {:?}, feasible {}, DoF {}", s.dims(), r.feasible, to_text(&r.dof));
    for rr in &r.per_receiver {
        println!(
            "  receiver {}: signal {}, interference {}, overlap {}",
            rr.receiver, rr.signal_dim, rr.interference_dim, rr.overlap_dim
        );
    }
    if r.feasible && r.uniform_dim.is_some() {
        let widths = check_width_requirement(inst, s)?;
        let sparse = check_sparsity_requirement(inst, s)?;
        println!(
            "  width checks {}/{} pass, sparsity checks {}/{} pass",
            widths.iter().filter(|c| c.pass).count(),
            widths.len(),
            sparse.iter().filter(|c| c.pass).count(),
            sparse.len()
        );
    }
    Ok(())
}

fn main() -> ia_workbench::Result<()> {
    let inst = sample_instance(4, 8, 1, 16, 3)?;
    report("orthogonal d=2", &inst, &build_orthogonal_scheme(4, 8, 1, 2)?)?;
    let found = random_search(&inst, 2, 20, 3)?;
    println!("search: {} trials, failures per receiver {:?}", found.trials, found.failures_per_receiver);
    if let Some(s) = &found.scheme {
        report("search d=2", &inst, s)?;
    }
    // too many dimensions: every receiver collides
    let found = random_search(&inst, 3, 5, 3)?;
    println!("d=3: found {}, failures {:?}", found.scheme.is_some(), found.failures_per_receiver);
    Ok(())
}
