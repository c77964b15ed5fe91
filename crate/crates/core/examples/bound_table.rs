//! Evaluates every degrees-of-freedom curve with exact or bracketed values.
//!
//!     cargo run --example bound_table

use ia_workbench::rational::{frac, int};
use ia_workbench::verify::bounds::lower_text;
use ia_workbench::verify::{check_consistency, eval_bounds};

fn main() -> ia_workbench::Result<()> {
    println!("{:>3} {:>4} {:>10} {:>24} {:>24}", "K", "L", "eq1", "thm1", "thm3");
    for (k, l) in [(3, 1), (3, 2), (3, 8), (4, 4), (4, 16), (5, 100)] {
        let t = eval_bounds(k, l, 1, None, &int(1))?;
        let short = |s: String| s.chars().take(22).collect::<String>();
        println!(
            "{k:>3} {l:>4} {:>10} {:>24} {:>24}",
            lower_text(&t.bresler_eq1),
            short(lower_text(&t.thm1)),
            short(lower_text(&t.thm3))
        );
    }
    let t = eval_bounds(4, 4, 1, Some(&frac(1, 10)), &int(1))?;
    println!("{}", serde_json::to_string_pretty(&t)?);
    let c = check_consistency(&frac(3, 2), &t);
    println!("DoF 3/2 at K=4 L=4: consistent {} against {:?}", c.consistent, c.applied);
    println!("DoF 2: violated {:?}", check_consistency(&int(2), &t).violated);
    Ok(())
}
