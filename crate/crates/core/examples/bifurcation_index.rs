//! Bifurcation indices at ±λ_{m0} on the hemisphere, by the ring product and
//! by the coordinate closed form, with the cone statements.

use equibif::index::{cone_predicates, index_closed_form, index_product, IndexRequest};
use equibif::spectrum::hemisphere_spectrum;
use equibif::{Gamma, Sign, Spectrum};

fn main() -> equibif::Result<()> {
    let n = 2;
    let s = Spectrum {
        n,
        gamma: Gamma::Hemisphere,
        records: hemisphere_spectrum(n, 6)?,
    };
    for (p_minus, p_plus) in [(1, 0), (2, 1), (3, 3)] {
        println!("p_minus = {p_minus}, p_plus = {p_plus}");
        for m0 in 1..=6 {
            for sign in [Sign::Positive, Sign::Negative] {
                let req = IndexRequest::new(m0, sign, p_minus, p_plus);
                let Ok(index) = index_product(&s, &req) else {
                    continue;
                };
                let closed = index_closed_form(&s, &req)?;
                let cone = cone_predicates(&s, &req)?;
                println!(
                    "  BIF({}λ_{m0}) = {:<22} closed form ok: {:<5} cone {}",
                    sign.symbol(),
                    index.to_string(),
                    closed.agrees_with(&index),
                    cone.actual
                );
            }
        }
    }
    Ok(())
}
