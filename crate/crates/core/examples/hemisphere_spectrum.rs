//! Exact Dirichlet spectrum of the hemisphere: λ_m = m(n+m-1), eigenspace
//! the sum of H^n_k over k = m-1, m-3, ...

use equibif::spectrum::{assemble_spectrum, Tolerances};
use equibif::Gamma;

fn main() -> equibif::Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(3);
    let s = assemble_spectrum(n, Gamma::Hemisphere, 60.0, None, &Tolerances::default())?;
    println!("n = {n}");
    for (k, r) in s.records.iter().enumerate() {
        println!(
            "λ_{:<2} = {:>3}  modes {:?}  mu {:>3}  nu {:>3}  {}",
            k + 1,
            r.lambda,
            r.gamma_set,
            r.mu,
            r.nu,
            r.eigenspace
        );
    }
    Ok(())
}
