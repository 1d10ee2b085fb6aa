//! Prints the excitation kernel and the delay slices of the inhibition bank.
//!
//! Usage: `cargo run --example kernel_dump -- [preset]` (default `set7`).

use dlgmd::{Kernels, ParameterSet};

fn main() -> dlgmd::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "set7".into());
    let params = ParameterSet::by_name(&name)?.validate()?;
    for w in params.warnings() {
        println!("warning: {w}");
    }
    let kernels = Kernels::from_params(&params)?;
    println!("excitation (sigma {}, sum {:.4}):", params.sigma_e, kernels.excitation.sum());
    println!("{}", kernels.excitation);
    println!("inhibition bank (sigma {}, d_max {}):", params.sigma_i, kernels.d_max());
    println!("{}", kernels.inhibition);
    Ok(())
}
