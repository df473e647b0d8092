//! What a bounded continuum C(±λ_{m0}) would need when the count on its own
//! side is even.

use equibif::analyzer::{bounded_necessary, Details};
use equibif::spectrum::{hemisphere_spectrum, Tolerances};
use equibif::{Gamma, Sign, Spectrum, SystemConfig};

fn main() -> equibif::Result<()> {
    let s = Spectrum {
        n: 2,
        gamma: Gamma::Hemisphere,
        records: hemisphere_spectrum(2, 4)?,
    };
    let tol = Tolerances::default();
    for (p_minus, p_plus, m0) in [(2, 3, 2), (2, 2, 2), (1, 2, 3), (2, 1, 1)] {
        let config = SystemConfig::hemisphere(2, p_minus, p_plus)?;
        let cert = bounded_necessary(&config, &s, m0, Sign::Positive, &tol)?;
        println!("p=({p_minus},{p_plus}) +λ_{m0}: {:?}", cert.verdict);
        if let Details::NecessaryConditions(d) = &cert.details {
            for note in &d.notes {
                println!("    note: {note}");
            }
            for c in &d.conditions {
                println!("    {} [{:?}]", c.statement, c.status);
            }
            if let Some(conclusion) = d.conclusion {
                println!("    => {conclusion:?}");
            }
        }
    }
    Ok(())
}
