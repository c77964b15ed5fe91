//! Samples a channel, derives the cross-ratio maps and screens the draw for
//! accidental linear dependencies.
//!
//!     cargo run --example channel_genericity -- [K] [L] [seed]

use ia_workbench::channel::{check_lin_indep, genericity_defect, sample_generic, t_family};
use ia_workbench::rational::{int, to_text};

fn arg(i: usize, default: u64) -> u64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> ia_workbench::Result<()> {
    let (k, l, seed) = (arg(1, 4) as usize, arg(2, 6) as usize, arg(3, 0));
    let (inst, rejected) = sample_generic(k, l, 1, 16, seed, 10)?;
    println!("K={k} L={l}: seed {} accepted after {rejected} rejections", inst.seed());
    println!("screen: {:?}", genericity_defect(&inst)?);

    let fam = t_family(&inst, 1)?;
    println!("family of user 1 has M = {} maps", fam.m());
    for (idx, m) in fam.members.iter().enumerate() {
        let first = to_text(m.map.coefficient(0));
        println!("  T[{idx}] = T(1,{},{})  first entry {first}", m.j, m.k);
    }
    if fam.m() >= 2 {
        let ones = vec![int(1); l];
        let a: Vec<Vec<i64>> = (0..l as i64).map(|i| vec![i % 3, i / 3]).collect();
        let maps = [fam.map(0), fam.map(1)];
        println!("exponents {a:?} independent on all-ones: {}", check_lin_indep(&maps, &a, &ones)?);
    }
    Ok(())
}
