//! Certificate that C(±λ_{m0}) is unbounded on the hemisphere: no finite set
//! of signed eigenvalues containing the subject has index sum Θ.

use equibif::analyzer::{certify_unbounded, Details, DEFAULT_SUBSET_BUDGET};
use equibif::{Sign, SystemConfig};

fn main() -> equibif::Result<()> {
    let cases = [
        (2, 2, 2, 3, Sign::Positive),
        (2, 1, 2, 1, Sign::Positive),
        (2, 2, 2, 1, Sign::Positive),
        (3, 3, 1, 5, Sign::Negative),
    ];
    for (n, p_minus, p_plus, m0, sign) in cases {
        let config = SystemConfig::hemisphere(n, p_minus, p_plus)?;
        let cert = certify_unbounded(&config, m0, sign, 8, DEFAULT_SUBSET_BUDGET)?;
        cert.verify()?;
        print!(
            "n={n} p=({p_minus},{p_plus}) {}λ_{m0}: {:?}",
            sign.symbol(),
            cert.verdict
        );
        if let Details::Unbounded(d) = &cert.details {
            print!("  exhaustive {} structural {}", d.exhaustive, d.structural);
        }
        println!();
    }
    let config = SystemConfig::hemisphere(3, 2, 1)?;
    let cert = certify_unbounded(&config, 2, Sign::Positive, 4, DEFAULT_SUBSET_BUDGET)?;
    println!("{}", cert.to_json()?);
    Ok(())
}
