//! Three-user alignment chain loaded from a pattern file, measured at several
//! diversity orders and compared with the three-user optimum.
//!
//!     cargo run --example cadambe_jafar_k3

use std::path::Path;

use ia_workbench::channel::sample_instance;
use ia_workbench::rational::to_text;
use ia_workbench::verify::bounds::eq1;
use ia_workbench::verify::builders::{build_chain_scheme, ChainPattern};
use ia_workbench::verify::verify_decoding;

fn main() -> ia_workbench::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("patterns");
    for (file, l) in [("cj3_n1.json", 3), ("cj3_n2.json", 5), ("cj3_n1.json", 5)] {
        let pattern = ChainPattern::load(&dir.join(file))?;
        let inst = sample_instance(3, l, 1, 16, 1)?;
        let s = build_chain_scheme(&inst, &pattern)?;
        let r = verify_decoding(&inst, &s)?;
        println!(
            "{file} at L={l}: dims {:?}, feasible {}, DoF {} (optimum {})",
            s.dims(),
            r.feasible,
            to_text(&r.dof),
            to_text(&eq1(l))
        );
    }
    Ok(())
}
