//! Symmetry breaking at ±λ: proved when mode 0 is absent from the eigenspace.
//! On the hemisphere that is exactly the even-indexed eigenvalues; on a cap
//! the mode set decides.

use equibif::analyzer::symmetry_breaking;
use equibif::spectrum::{assemble_spectrum, Tolerances};
use equibif::{Gamma, Sign, SystemConfig};

fn main() -> equibif::Result<()> {
    let tol = Tolerances::default();
    for gamma in [Gamma::Hemisphere, "pi/3".parse()?] {
        let s = assemble_spectrum(3, gamma, 60.0, None, &tol)?;
        let config = SystemConfig::new(3, gamma, 1, 0)?;
        println!("gamma = {gamma}");
        for (k, r) in s.records.iter().enumerate() {
            let cert = symmetry_breaking(&config, &s, k + 1, Sign::Positive, &tol)?;
            println!(
                "  λ_{:<2} = {:>12}  modes {:?}  {:?}",
                k + 1,
                r.lambda,
                r.gamma_set,
                cert.verdict
            );
        }
    }
    Ok(())
}
