//! Index sums over candidate return sets of a bounded continuum. A bounded
//! continuum needs a set whose sum is Θ.

use equibif::analyzer::{alternative_sum, parse_candidates, resolve_candidates};
use equibif::spectrum::hemisphere_spectrum;
use equibif::{Gamma, Spectrum, SystemConfig};

fn main() -> equibif::Result<()> {
    let config = SystemConfig::hemisphere(2, 1, 1)?;
    let s = Spectrum {
        n: 2,
        gamma: Gamma::Hemisphere,
        records: hemisphere_spectrum(2, 5)?,
    };
    for text in ["+1,-1", "+2,-2", "+1,+2,+3", "-1,-2,-3,-4", ""] {
        let cands = resolve_candidates(&parse_candidates(text)?, &config, &s)?;
        let (sum, theta) = alternative_sum(&cands, &config, &s)?;
        println!("{{{text}}}: sum = {sum}  Theta: {theta}");
    }
    Ok(())
}
